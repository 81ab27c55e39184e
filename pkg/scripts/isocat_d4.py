"""Walk the isocategorical construction for D4 and both Klein-four subgroups.

Prints the chosen twist candidate, the cocycle b, the type of G_b and the
outcome of every coboundary shift.
"""

import argparse

from hopfkit.commutative import dihedral, find_isomorphism
from hopfkit.isocat import build_G_b, perturb, run_pipeline, verify_isocategorical
from hopfkit.linalg import PrimeField


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    args = ap.parse_args()
    f = PrimeField(args.p)
    G = dihedral(4)
    for sub in ([0, 2, 4, 6], [0, 2, 5, 7]):
        res = run_pipeline(G, sub, f)
        label = "{" + ", ".join(G.labels[a] for a in sub) + "}"
        if not res.passed:
            print(f"{label}: stopped at {res.failed_stage}: {res.stages}")
            continue
        o = res.artifacts["objects"]
        print(f"{label}: candidate {res.stages['twist']['candidate']}, b = {res.artifacts['btilde']}, "
              f"G_b ~ {res.stages['G_b']['isomorphism_type']}")
        e = o["embedding"]
        for a in e.A:
            t2 = perturb(e, o["characters"], o["tau"], [G.identity, a])
            g2 = build_G_b(e, t2.btilde)
            print(f"   shift by {G.labels[a]:<5} isomorphic {find_isomorphism(g2, o['G_b']) is not None}  "
                  f"verified {verify_isocategorical(e, o['J'], t2, g2, f).passed}")


if __name__ == "__main__":
    main()
