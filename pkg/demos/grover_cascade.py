"""Nested fixed-point search: the exact distance cascade and its query-based run.

The recursion applies alternating partial reflections around the current
state and the target.  Exactly executed, the distance to the target obeys
delta -> sech((2L+1) arcsech(delta)), a doubly exponential cascade.  The
query-based execution replaces each state reflection with a block of
density-matrix-exponentiation queries; its residual decays like 1/m in the
per-step query budget.
"""

from qdpsim import (
    grover_config_from_distance,
    grover_delta_sequence,
    grover_qdp_run,
    grover_recursion_spec,
    run_exact,
)


def main():
    delta0, alternations, n_steps = 0.6, 1, 3
    cfg = grover_config_from_distance(delta0, alternations, n_steps)

    print(f"== exact cascade (L={alternations}, delta0={delta0}) ==")
    record = run_exact(grover_recursion_spec(cfg), n_steps)
    deltas = grover_delta_sequence(delta0, alternations, n_steps)
    print(f"{'step':>4} {'simulated':>14} {'closed form':>14}")
    for n, (pt, d) in enumerate(zip(record.points, deltas)):
        print(f"{n:>4} {pt.distance_to_target:>14.6e} {d:>14.6e}")

    print("\n== query-based runs: residual vs per-step budget ==")
    cfg2 = grover_config_from_distance(delta0, alternations, 2)
    exact_d2 = grover_delta_sequence(delta0, alternations, 2)[2]
    print(f"{'m':>5} {'final distance':>16} {'residual':>12} {'residual*m':>12}")
    for m in (16, 32, 64, 128, 256):
        rec = grover_qdp_run(cfg2, m)
        res = rec.points[-1].distance_to_target - exact_d2
        print(f"{m:>5} {rec.points[-1].distance_to_target:>16.6e} {res:>12.3e} {res * m:>12.4f}")
    print("\nresidual*m is nearly constant: the query error scales as 1/m.")


if __name__ == "__main__":
    main()
