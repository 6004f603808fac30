"""Number-operator entropy ln(N + 1/2) on truncated Fock spaces.

Simulates spontaneous decay cascades and unitary frequency quenches of a
single oscillator mode and tracks S(t) = Tr[rho(t) ln(N + 1/2)].
"""

__version__ = "0.1.0"

from .analysis import (
    Trend,
    Verdict,
    VerdictKind,
    endpoint_verdict,
    jensen_bound,
    mean_bounds_check,
    monotonicity_verdict,
    von_neumann_entropy,
    weighted_mean,
)
from .dynamics import (
    Scenario,
    Trajectory,
    TrajectorySample,
    binomial_decay_populations,
    integrate_decay,
    lindblad_rhs,
    oscillator_hamiltonian,
    quench_propagate,
    rate_rhs,
)
from .fock import (
    DensityMatrix,
    FockSpace,
    LadderOperator,
    ObservableOperator,
    density_from_populations,
    entropy_operator,
    expectation,
    fock_pure_density,
    lowering_operator,
    number_operator,
    purity,
)
from .runner import RunReport, run_scenario
from .scenario import parse_scenario, render_scenario
