"""Built-in acceptance suite behind ``numentropy verify``.

Each criterion returns a :class:`CriterionResult`; the checks call the
library through module attributes so a patched operator is picked up.
"""

from __future__ import annotations

import math
import tempfile
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import analysis, dynamics, runner
from .dynamics import Scenario


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail}"


COUNTEREXAMPLE = Scenario(
    name="decay5", model="lindblad-decay", levels=5, dim=6, gamma=1.0, t_final=3.0, dt=1e-3
)
LONG_DECAY = COUNTEREXAMPLE.replace(name="decay5-long", t_final=20.0, dt=1e-2)
QUENCH_LEVELS = (0, 1, 2)
QUENCH_DIM = 40
QUENCH_T_FINAL = 5.0
RAMP_TIME = 200.0


def binomial_entropy(l: int, s: float) -> float:
    return sum(math.comb(l, k) * s**k * (1 - s) ** (l - k) * math.log(k + 0.5) for k in range(l + 1))


def quench_scenario(level: int, dt: float = 0.05) -> Scenario:
    return Scenario(
        name=f"quench-n{level}", model="unitary-quench", levels=level, dim=QUENCH_DIM,
        omega_initial=1.0, omega_final=2.0, t_final=QUENCH_T_FINAL, dt=dt,
    )


def ramp_scenario(level: int) -> Scenario:
    return Scenario(
        name=f"ramp-n{level}", model="unitary-ramp", levels=level, dim=QUENCH_DIM,
        omega_initial=1.0, omega_final=2.0, ramp_time=RAMP_TIME, t_final=RAMP_TIME, dt=0.05,
    )


def _fmt_worst(value: float, tol: float) -> str:
    return f"worst {value:.3e} (tol {tol:g})"


class AcceptanceSuite:
    def __init__(self, out_dir=None):
        self.out_dir = Path(out_dir) if out_dir is not None else None

    @cached_property
    def base(self):
        return dynamics.integrate_decay(COUNTEREXAMPLE)

    def criterion_1(self) -> CriterionResult:
        tr = self.base
        s0_err = abs(tr.entropy[0] - math.log(5.5))
        trend = analysis.monotonicity_verdict(tr.entropy, 1e-9)
        verdict = analysis.endpoint_verdict(tr, 1e-9)
        oracle = binomial_entropy(5, math.exp(-tr.t[-1]))
        sf_err = abs(tr.entropy[-1] - oracle)
        passed = (
            s0_err <= 1e-12
            and trend is analysis.Trend.NON_INCREASING
            and verdict.kind is analysis.VerdictKind.DECREASED
            and sf_err <= 1e-6
        )
        detail = (
            f"S(0)-ln5.5={s0_err:.1e}, trend {trend.value}, verdict {verdict.kind.value}, "
            f"S_f={tr.entropy[-1]:.10f} vs oracle {oracle:.10f} ({sf_err:.1e})"
        )
        return CriterionResult(1, "counterexample reproduction", passed, detail)

    def criterion_2(self) -> CriterionResult:
        tr = self.base
        err = float(np.max(np.abs(tr.n_expect - 5.0 * np.exp(-tr.t))))
        return CriterionResult(2, "<N> decay law 5 exp(-t)", err <= 1e-6, _fmt_worst(err, 1e-6))

    def criterion_3(self) -> CriterionResult:
        lind = self.base
        rate = dynamics.integrate_decay(COUNTEREXAMPLE.replace(model="rate-decay"))
        idx = np.unique(np.rint(np.linspace(0, len(lind) - 1, 50)).astype(int))
        worst = 0.0
        for i in idx:
            binom = np.array(dynamics.binomial_decay_populations(5, 1.0, float(lind.t[i])))
            a, b = lind.populations[i], rate.populations[i]
            worst = max(worst, np.abs(a - b).max(), np.abs(a - binom).max(), np.abs(b - binom).max())
        passed = worst <= 1e-6 and len(idx) == 50
        return CriterionResult(3, "Lindblad / rate / binomial agreement", passed,
                               f"{len(idx)} times, " + _fmt_worst(worst, 1e-6))

    def criterion_4(self) -> CriterionResult:
        tr = self.base
        gap1 = float(np.max(tr.entropy - tr.jensen_bound))
        gap2 = float(np.max(tr.jensen_bound - math.log(5.5)))
        passed = gap1 <= 1e-9 and gap2 <= 1e-9
        detail = f"max(S - ln(<N>+1/2)) = {gap1:.3e}, max(ln(<N>+1/2) - ln5.5) = {gap2:.3e}"
        return CriterionResult(4, "Jensen chain", passed, detail)

    def criterion_5(self) -> CriterionResult:
        rng = np.random.default_rng(20080302)
        failures = 0
        for _ in range(1000):
            size = int(rng.integers(1, 20))
            values = rng.normal(scale=10.0, size=size)
            weights = rng.exponential(size=size)
            weights[rng.random(size) < 0.2] = 0.0
            if weights.sum() == 0:
                weights[0] = 1.0
            failures += not analysis.mean_bounds_check(values, weights)
        common = 0.1 + 0.2
        degenerate = analysis.weighted_mean([common] * 7, [0.3, 0.1, 0.7, 0.9, 0.2, 0.5, 0.05])
        passed = failures == 0 and degenerate == common
        return CriterionResult(5, "weighted-mean bounds", passed,
                               f"{failures}/1000 violations, degenerate mean exact: {degenerate == common}")

    def criterion_6(self) -> CriterionResult:
        tr = self.base
        trace = float(tr.trace_error.max())
        herm = float(tr.hermiticity.max())
        lam = float(tr.min_eigenvalue.min())
        passed = trace <= 1e-9 and herm <= 1e-10 and lam >= -1e-9
        return CriterionResult(6, "conservation suite", passed,
                               f"trace err {trace:.1e}, hermiticity {herm:.1e}, min eigenvalue {lam:.1e}")

    def criterion_7(self) -> CriterionResult:
        tr = self.base
        long = dynamics.integrate_decay(LONG_DECAY)
        p0 = abs(tr.purity[0] - 1.0)
        lo = min(tr.purity.min(), long.purity.min())
        hi = max(tr.purity.max(), long.purity.max())
        p_end = float(long.purity[-1])
        passed = p0 <= 1e-12 and lo >= 1 / 6 - 1e-9 and hi <= 1 + 1e-9 and p_end >= 1 - 1e-6
        return CriterionResult(7, "purity bracket", passed,
                               f"|purity(0)-1|={p0:.1e}, range [{lo:.6f}, {hi:.6f}], purity(gt=20)={p_end:.10f}")

    def criterion_8(self) -> CriterionResult:
        parts, passed = [], True
        for n in QUENCH_LEVELS:
            # d=40 is fixed here; top-level mass is reported, not fatal
            coarse = dynamics.quench_propagate(quench_scenario(n), strict=False)
            fine = dynamics.quench_propagate(quench_scenario(n, dt=0.025), strict=False)
            nf = float(coarse.n_expect[-1])
            conv = abs(nf - float(fine.n_expect[-1]))
            verdict = analysis.endpoint_verdict(coarse)
            ramp = dynamics.quench_propagate(ramp_scenario(n), strict=False)
            drift = abs(float(ramp.n_expect[-1]) - n)
            ok = nf >= n - 1e-6 and conv <= 1e-6 and drift <= 1e-2
            passed &= ok
            parts.append(
                f"n={n}: N_f={nf:.6f} (halving {conv:.1e}, tail {coarse.max_tail_mass:.1e}, "
                f"entropy {verdict.kind.value}), ramp drift {drift:.1e}"
            )
        return CriterionResult(8, "unitary quench / ramp probe", passed, "; ".join(parts))

    def criterion_9(self) -> CriterionResult:
        with tempfile.TemporaryDirectory() as tmp:
            out_dir = self.out_dir or Path(tmp)
            a = runner.run_scenario(COUNTEREXAMPLE, out_dir / "decay5_a.csv").csv_path.read_bytes()
            b = runner.run_scenario(COUNTEREXAMPLE, out_dir / "decay5_b.csv").csv_path.read_bytes()
        header = a.split(b"\n", 1)[0].decode()
        passed = a == b and header == "t,n_expect,entropy,purity,jensen_bound,vn_entropy,trace_error"
        return CriterionResult(9, "determinism and CSV format", passed,
                               f"identical bytes: {a == b}, header {header!r}")

    def criteria(self):
        return [getattr(self, f"criterion_{i}") for i in range(1, 10)]

    def run(self) -> list:
        return [criterion() for criterion in self.criteria()]


def verify_builtin(out_dir=None, echo=print) -> int:
    """Run every criterion, print one line each; 0 if all pass, else 1.

    File errors from ``out_dir`` propagate as :class:`FileError`.
    """
    results = AcceptanceSuite(out_dir).run()
    for r in results:
        echo(r.line())
    failed = [r for r in results if not r.passed]
    if failed:
        echo("FAILED: " + ", ".join(f"{r.number}. {r.name}" for r in failed))
        return 1
    echo(f"all {len(results)} criteria passed")
    return 0
