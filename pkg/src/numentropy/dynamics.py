"""Time evolution: dissipative decay cascades and unitary frequency quenches.

Decay runs integrate either the zero-temperature Lindblad equation or the
classical rate equations for level populations with fixed-step RK4. Unitary
runs propagate the density matrix exactly over each step with a piecewise
constant Hamiltonian expressed in the Fock basis of the initial frequency.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Literal, Optional, Sequence

import numpy as np

from . import fock
from .errors import ConfigurationError, DomainError, IntegrationError, NormalizationError, ShapeError, TruncationError
from .fock import DensityMatrix, FockSpace, LadderKind, LadderOperator, ObservableOperator

Model = Literal["lindblad-decay", "rate-decay", "unitary-quench", "unitary-ramp"]
MODELS = ("lindblad-decay", "rate-decay", "unitary-quench", "unitary-ramp")
DECAY_MODELS = ("lindblad-decay", "rate-decay")
UNITARY_MODELS = ("unitary-quench", "unitary-ramp")

STABILITY_LIMIT = 0.1
POSITIVITY_FAILURE = -1e-6
TAIL_MASS_LIMIT = 1e-10


@dataclass(frozen=True)
class Scenario:
    name: str
    model: Model
    levels: int
    dim: int
    t_final: float
    dt: float
    gamma: Optional[float] = None
    omega_initial: Optional[float] = None
    omega_final: Optional[float] = None
    ramp_time: float = 0.0
    initial_level: Optional[int] = None
    copies: int = 1
    sample_every: int = 1
    ladder: LadderKind = "oscillator"

    def __post_init__(self):
        if self.initial_level is None:
            object.__setattr__(self, "initial_level", self.levels)
        self._validate()

    def _validate(self):
        if self.model not in MODELS:
            raise ConfigurationError(f"unknown model {self.model!r}")
        if self.ladder not in ("oscillator", "uniform"):
            raise ConfigurationError(f"unknown ladder kind {self.ladder!r}")
        if self.levels < 0:
            raise ConfigurationError("levels must be nonnegative")
        if self.dim < self.levels + 1:
            raise ConfigurationError(f"dim={self.dim} violates dim >= levels + 1 (levels={self.levels})")
        if not 0 <= self.initial_level <= self.levels:
            raise ConfigurationError(f"initial_level={self.initial_level} must lie in 0..levels")
        if self.copies < 1:
            raise ConfigurationError("copies must be a positive integer")
        if self.sample_every < 1:
            raise ConfigurationError("sample_every must be a positive integer")
        if not (self.t_final > 0 and self.dt > 0):
            raise ConfigurationError("t_final and dt must be positive")
        if self.dt > self.t_final:
            raise ConfigurationError(f"dt={self.dt} exceeds t_final={self.t_final}")
        if self.ramp_time < 0:
            raise ConfigurationError("ramp_time must be nonnegative")
        if self.model in DECAY_MODELS:
            if self.gamma is None:
                raise ConfigurationError(f"model {self.model} requires gamma")
            if self.gamma < 0:
                raise ConfigurationError("gamma must be nonnegative")
        else:
            if self.omega_initial is None or self.omega_final is None:
                raise ConfigurationError(f"model {self.model} requires omega_initial and omega_final")
        for key in ("omega_initial", "omega_final"):
            value = getattr(self, key)
            if value is not None and value <= 0:
                raise ConfigurationError(f"{key} must be positive")
        if self.gamma is not None and self.dt * self.gamma > STABILITY_LIMIT:
            raise ConfigurationError(f"dt*gamma = {self.dt * self.gamma:g} exceeds {STABILITY_LIMIT}")
        omegas = [w for w in (self.omega_initial, self.omega_final) if w is not None]
        if omegas and self.dt * max(omegas) > STABILITY_LIMIT:
            raise ConfigurationError(f"dt*omega = {self.dt * max(omegas):g} exceeds {STABILITY_LIMIT}")

    @property
    def space(self) -> FockSpace:
        return FockSpace(self.levels, self.dim)

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_final / self.dt)))

    def replace(self, **changes) -> "Scenario":
        fields = asdict(self)
        fields.update(changes)
        if "levels" in changes and "initial_level" not in changes:
            fields["initial_level"] = None
        return Scenario(**fields)


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    n_expect: float
    entropy: float
    purity: float
    jensen_bound: float
    vn_entropy: float
    trace_error: float


COLUMNS = ("t", "n_expect", "entropy", "purity", "jensen_bound", "vn_entropy", "trace_error")


@dataclass
class Trajectory:
    """Column-oriented record of a run; one row per integrator step.

    Beyond the CSV columns it keeps diagnostics used by the checks:
    level populations, Hermiticity defect, smallest eigenvalue, energy.
    """

    scenario: Scenario
    t: np.ndarray
    n_expect: np.ndarray
    entropy: np.ndarray
    purity: np.ndarray
    jensen_bound: np.ndarray
    vn_entropy: np.ndarray
    trace_error: np.ndarray
    populations: np.ndarray
    hermiticity: np.ndarray
    min_eigenvalue: np.ndarray
    energy: np.ndarray
    final_state: np.ndarray
    max_tail_mass: float = 0.0
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.t)

    def sample(self, i: int) -> TrajectorySample:
        return TrajectorySample(*(float(getattr(self, c)[i]) for c in COLUMNS))

    @property
    def samples(self) -> list:
        return [self.sample(i) for i in range(len(self))]

    def columns(self) -> np.ndarray:
        return np.column_stack([getattr(self, c) for c in COLUMNS])


class _Recorder:
    def __init__(self, n: int, dim: int):
        self.rows = np.empty((n, len(COLUMNS)))
        self.populations = np.empty((n, dim))
        self.hermiticity = np.empty(n)
        self.min_eigenvalue = np.empty(n)
        self.energy = np.empty(n)
        self.i = 0

    def record(self, t, rho, n_op, s_op, h_op):
        evals = np.linalg.eigvalsh(rho)
        nonzero = evals[evals > 0]
        n_expect = _trace_real(rho, n_op)
        self.rows[self.i] = (
            t,
            n_expect,
            _trace_real(rho, s_op),
            float(np.sum(np.abs(rho) ** 2)),
            math.log(n_expect + 0.5) if n_expect > -0.5 else -math.inf,
            float(-np.sum(nonzero * np.log(nonzero))) + 0.0,
            abs(np.trace(rho).real - 1.0),
        )
        self.populations[self.i] = np.real(np.diag(rho))
        self.hermiticity[self.i] = fock.hermiticity_defect(rho)
        self.min_eigenvalue[self.i] = evals[0]
        self.energy[self.i] = _trace_real(rho, h_op)
        self.i += 1
        return evals[0]

    def trajectory(self, scenario, final_state, **extra) -> Trajectory:
        cols = {c: self.rows[: self.i, j].copy() for j, c in enumerate(COLUMNS)}
        return Trajectory(
            scenario=scenario,
            populations=self.populations[: self.i],
            hermiticity=self.hermiticity[: self.i],
            min_eigenvalue=self.min_eigenvalue[: self.i],
            energy=self.energy[: self.i],
            final_state=final_state,
            **cols,
            **extra,
        )


def _trace_real(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.real(np.sum(rho * op.T)))


def _hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _rk4_step(f: Callable, y: np.ndarray, dt: float) -> np.ndarray:
    # autonomous right-hand sides only
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def oscillator_hamiltonian(space: FockSpace, omega: float) -> ObservableOperator:
    """diag(omega (k + 1/2)) with hbar = 1."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    return ObservableOperator(np.diag(omega * (space.indices + 0.5)), space)


def _lindblad_generator(h: np.ndarray, collapse: np.ndarray, gamma: float) -> Callable:
    l_dag = collapse.conj().T
    l_sq = l_dag @ collapse

    def rhs(rho):
        out = -1j * (h @ rho - rho @ h)
        if gamma:
            out += gamma * (collapse @ rho @ l_dag - 0.5 * (l_sq @ rho + rho @ l_sq))
        return out

    return rhs


def lindblad_rhs(
    rho: DensityMatrix, h: ObservableOperator, collapse: LadderOperator, gamma: float
) -> np.ndarray:
    """-i[H, rho] + gamma (L rho L^+ - {L^+ L, rho}/2)."""
    dims = {rho.space.dim, h.space.dim, collapse.space.dim}
    if len(dims) != 1:
        raise ShapeError(f"mismatched dimensions {sorted(dims)}")
    if gamma < 0:
        raise DomainError("gamma must be nonnegative")
    return _lindblad_generator(np.asarray(h.entries), np.asarray(collapse.entries), gamma)(
        np.asarray(rho.entries)
    )


def _rate_coefficients(dim: int, kind: LadderKind) -> np.ndarray:
    k = np.arange(dim, dtype=float)
    if kind == "oscillator":
        return k
    if kind == "uniform":
        return (k > 0).astype(float)
    raise DomainError(f"unknown ladder kind {kind!r}")


def _rate_generator(dim: int, gamma: float, kind: LadderKind) -> Callable:
    out_rates = gamma * _rate_coefficients(dim, kind)

    def rhs(p):
        flux = out_rates * p
        dp = -flux
        dp[:-1] += flux[1:]
        return dp

    return rhs


def rate_rhs(pops: Sequence[float], gamma: float, kind: LadderKind = "oscillator") -> np.ndarray:
    """Population derivatives for a single-quantum downward cascade.

    Level k empties into k-1 at rate gamma*k (oscillator) or gamma (uniform).
    """
    p = np.asarray(pops, dtype=float)
    if abs(p.sum() - 1.0) > fock.TRACE_TOL:
        raise NormalizationError(f"populations sum to {p.sum()!r}, not 1")
    return _rate_generator(p.size, gamma, kind)(p)


def binomial_decay_populations(l: int, gamma: float, t: float) -> list:
    """Closed-form populations of oscillator decay from |l>: Binomial(l, exp(-gamma t))."""
    if l < 0 or gamma < 0 or t < 0:
        raise DomainError("need l >= 0, gamma >= 0, t >= 0")
    s = math.exp(-gamma * t)
    return [math.comb(l, k) * s**k * (1.0 - s) ** (l - k) for k in range(l + 1)]


def integrate_decay(scenario: Scenario) -> Trajectory:
    """Fixed-step RK4 integration of a decay cascade from a pure Fock state.

    Each step is re-Hermitized but never trace-renormalized; the drift is
    reported in the ``trace_error`` column.
    """
    if scenario.model not in DECAY_MODELS:
        raise ConfigurationError(f"integrate_decay cannot run model {scenario.model!r}")
    space = scenario.space
    d = space.dim
    n_op = np.asarray(fock.number_operator(space).entries)
    s_op = np.asarray(fock.entropy_operator(space).entries)
    if scenario.omega_initial is not None:
        h_op = np.asarray(oscillator_hamiltonian(space, scenario.omega_initial).entries)
    else:
        h_op = np.zeros((d, d), dtype=complex)

    rho = np.array(fock.fock_pure_density(space, scenario.initial_level).entries)
    n = scenario.n_steps
    rec = _Recorder(n + 1, d)
    rec.record(0.0, rho, n_op, s_op, h_op)

    if scenario.model == "lindblad-decay":
        collapse = np.asarray(fock.lowering_operator(space, scenario.ladder).entries)
        rhs = _lindblad_generator(h_op, collapse, scenario.gamma)
        for i in range(1, n + 1):
            rho = _hermitize(_rk4_step(rhs, rho, scenario.dt))
            lam_min = rec.record(i * scenario.dt, rho, n_op, s_op, h_op)
            if lam_min < POSITIVITY_FAILURE:
                raise IntegrationError(f"positivity lost at t={i * scenario.dt:g} (eigenvalue {lam_min:.3e})")
    else:
        rhs = _rate_generator(d, scenario.gamma, scenario.ladder)
        p = np.real(np.diag(rho)).copy()
        for i in range(1, n + 1):
            p = _rk4_step(rhs, p, scenario.dt)
            rho = np.diag(p).astype(complex)
            lam_min = rec.record(i * scenario.dt, rho, n_op, s_op, h_op)
            if lam_min < POSITIVITY_FAILURE:
                raise IntegrationError(f"negative population at t={i * scenario.dt:g} ({lam_min:.3e})")

    traj = rec.trajectory(scenario, rho)
    margin = float(traj.min_eigenvalue.min())
    if margin < -fock.PSD_TOL:
        traj.warnings.append(f"positivity margin {margin:.3e} below -{fock.PSD_TOL:g}")
    return traj


class QuadratureModel:
    """Oscillator H(omega) = p^2/2 + omega^2 x^2/2 in the Fock basis of ``omega_ref``.

    x^2 and p^2 are built from their exact ladder expansions, so each is the
    compression of the untruncated operator and stays positive definite.
    """

    def __init__(self, space: FockSpace, omega_ref: float):
        self.space = space
        self.omega_ref = omega_ref
        a = np.asarray(fock.lowering_operator(space, "oscillator").entries)
        ad = a.conj().T
        a2 = a @ a  # exact within the span: (a^2)_{k-2,k} = sqrt(k(k-1))
        ad2 = a2.conj().T
        two_n_plus_one = np.diag(2.0 * space.indices + 1.0).astype(complex)
        self.x2 = (a2 + ad2 + two_n_plus_one) / (2.0 * omega_ref)
        self.p2 = omega_ref * (two_n_plus_one - a2 - ad2) / 2.0
        self.x = (a + ad) / math.sqrt(2.0 * omega_ref)
        self.p = 1j * math.sqrt(omega_ref / 2.0) * (ad - a)

    def hamiltonian(self, omega: float) -> np.ndarray:
        return _hermitize(0.5 * self.p2 + 0.5 * omega**2 * self.x2)

    def number_and_entropy(self, omega: float) -> tuple:
        """Number operator H/omega - 1/2 and ln(H/omega) of the instantaneous oscillator."""
        scaled = self.hamiltonian(omega) / omega
        evals, vecs = np.linalg.eigh(scaled)
        log_op = (vecs * np.log(evals)) @ vecs.conj().T
        return scaled - 0.5 * np.eye(self.space.dim), _hermitize(log_op)

    def propagator(self, omega: float, dt: float) -> np.ndarray:
        evals, vecs = np.linalg.eigh(self.hamiltonian(omega))
        return (vecs * np.exp(-1j * evals * dt)) @ vecs.conj().T


def frequency_schedule(scenario: Scenario) -> Callable[[float], float]:
    """omega(t): sudden switch after t=0 for quenches, linear ramp otherwise."""
    w0, w1, tau = scenario.omega_initial, scenario.omega_final, scenario.ramp_time
    if scenario.model == "unitary-quench" or tau == 0:
        return lambda t: w0 if t <= 0 else w1
    return lambda t: w0 + (w1 - w0) * min(max(t / tau, 0.0), 1.0)


def quench_propagate(scenario: Scenario, strict: bool = True) -> Trajectory:
    """Unitary evolution through a frequency quench or linear ramp.

    Each step uses the Hamiltonian at the step midpoint and is propagated
    exactly. Observables use the number operator of the instantaneous
    frequency, so the t=0 row describes the unperturbed initial state.
    With ``strict`` a top-level population above the tail limit raises
    TruncationError; otherwise it is recorded as a warning.
    """
    if scenario.model not in UNITARY_MODELS:
        raise ConfigurationError(f"quench_propagate cannot run model {scenario.model!r}")
    space = scenario.space
    model = QuadratureModel(space, scenario.omega_initial)
    omega_at = frequency_schedule(scenario)
    dt, n = scenario.dt, scenario.n_steps

    rho = np.array(fock.fock_pure_density(space, scenario.initial_level).entries)
    rec = _Recorder(n + 1, space.dim)
    cache = {}

    def observables(omega):
        if omega not in cache:
            cache.clear()
            n_op, s_op = model.number_and_entropy(omega)
            cache[omega] = (n_op, s_op, model.hamiltonian(omega))
        return cache[omega]

    rec.record(0.0, rho, *observables(omega_at(0.0)))
    step_cache = {}
    max_tail = float(rho[-1, -1].real)
    for i in range(1, n + 1):
        w_mid = omega_at((i - 0.5) * dt)
        if w_mid not in step_cache:
            step_cache.clear()
            step_cache[w_mid] = model.propagator(w_mid, dt)
        u = step_cache[w_mid]
        rho = _hermitize(u @ rho @ u.conj().T)
        rec.record(i * dt, rho, *observables(omega_at(i * dt)))
        max_tail = max(max_tail, float(rho[-1, -1].real))

    traj = rec.trajectory(scenario, rho, max_tail_mass=max_tail)
    if max_tail > TAIL_MASS_LIMIT:
        msg = (
            f"population {max_tail:.3e} reached the top level {space.dim - 1}; "
            f"increase dim beyond {space.dim}"
        )
        if strict:
            raise TruncationError(msg)
        traj.warnings.append(msg)
    return traj


def run_dynamics(scenario: Scenario, strict: bool = True) -> Trajectory:
    if scenario.model in DECAY_MODELS:
        return integrate_decay(scenario)
    return quench_propagate(scenario, strict=strict)
