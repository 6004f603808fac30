"""Entropy verdicts for sudden quenches and linear ramps of the oscillator frequency.

For each initial Fock level and final/initial frequency ratio, reports the
final quantum number and whether S = Tr[rho ln(N + 1/2)] went up or down.
"""

import argparse

from numentropy.analysis import endpoint_verdict
from numentropy.dynamics import Scenario, quench_propagate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, nargs="+", default=[0, 1, 2, 4])
    parser.add_argument("--ratios", type=float, nargs="+", default=[0.5, 0.8, 1.0, 1.5, 2.0])
    parser.add_argument("--ramp-times", type=float, nargs="+", default=[0.0, 2.0, 20.0, 200.0])
    parser.add_argument("--dim", type=int, default=80)
    args = parser.parse_args()

    print(f"{'n':>3s} {'w_f/w_i':>8s} {'ramp':>7s} {'<N>_f':>10s} {'S_i':>9s} {'S_f':>9s}  verdict")
    for n in args.levels:
        for ratio in args.ratios:
            for tau in args.ramp_times:
                dt = 0.1 / max(1.0, ratio)
                s = Scenario(name="probe", model="unitary-ramp" if tau else "unitary-quench", levels=n,
                             dim=args.dim, omega_initial=1.0, omega_final=ratio, ramp_time=tau,
                             t_final=max(tau, 5.0), dt=dt)
                tr = quench_propagate(s, strict=False)
                v = endpoint_verdict(tr)
                flag = "  (tail)" if tr.warnings else ""
                print(f"{n:3d} {ratio:8.2f} {tau:7.1f} {tr.n_expect[-1]:10.6f} {v.s_initial:9.5f} "
                      f"{v.s_final:9.5f}  {v.kind.value}{flag}")


if __name__ == "__main__":
    main()
