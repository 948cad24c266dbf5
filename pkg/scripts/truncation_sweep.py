"""Sweep the deformation strength and watch the truncated form converge.

For each q the table lists the domain ratio max|(1-q)*beta*E|, the sup-norm
distance of the order-2 (quadratic) truncation, and the smallest order whose
distance drops below a target accuracy.

    python scripts/truncation_sweep.py
    python scripts/truncation_sweep.py --beta 0.5 --target 1e-10
"""

from __future__ import annotations

import argparse

from qbg import QParams, convergence_domain_ratio, equivalence_report, make_spectrum


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--beta", type=float, default=1.0)
    parser.add_argument("--levels", type=int, default=6, help="levels 0..n-1")
    parser.add_argument("--max-order", type=int, default=14, dest="max_order")
    parser.add_argument("--target", type=float, default=1e-8)
    args = parser.parse_args()

    spectrum = make_spectrum(list(range(args.levels)), [1] * args.levels)
    qs = [0.999, 0.99, 0.98, 0.95, 0.9, 1.01, 1.05, 1.1]

    print(f"spectrum 0..{args.levels - 1}, beta={args.beta}, target={args.target:g}")
    print(f"{'q':>7} {'ratio':>8} {'d(order 2)':>12} {'order for target':>17}")
    for q in qs:
        params = QParams(q, args.beta)
        ratio = convergence_domain_ratio(spectrum, params)
        if ratio >= 1:
            print(f"{q:>7} {ratio:>8.3f} {'outside convergence domain':>30}")
            continue
        max_order = min(args.max_order, 20)
        result = equivalence_report(spectrum, params, max_order)
        d2 = result.sup_distances[1] if max_order >= 2 else float("nan")
        hit = next(
            (n for n, d in zip(result.orders, result.sup_distances) if d <= args.target),
            None,
        )
        hit_text = str(hit) if hit is not None else f"> {max_order}"
        print(f"{q:>7} {ratio:>8.3f} {d2:>12.3e} {hit_text:>17}")


if __name__ == "__main__":
    main()
