"""Compare gauge-orbit counts of small Hopf algebras for gauge fields F_p and F_{p^2}.

    python scripts/enumerate_orbits.py mu(2) k(V4) --p 2
"""

import argparse

from hopfkit.commutative import BudgetExceeded, enumerate_twists
from hopfkit.fixtures import presentation
from hopfkit.linalg import PrimeField


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="+", help="presentation names, e.g. mu(2), k(V4), trivial")
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=2)
    args = ap.parse_args()
    for name in args.names:
        h = presentation(name, PrimeField(args.p))
        for d in range(1, args.max_degree + 1):
            try:
                res = enumerate_twists(h, gauge_degree=d)
            except BudgetExceeded as exc:
                print(f"{name}: {exc}")
                break
            print(f"{name:<10} gauge over F_{args.p ** d:<4} twists {len(res.twists):>4}  "
                  f"orbits {res.orbit_count:>3}  normalized candidates {res.normalized}")


if __name__ == "__main__":
    main()
