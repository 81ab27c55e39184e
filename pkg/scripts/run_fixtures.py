"""Run every bundled fixture and print one verdict line each.

    python scripts/run_fixtures.py [--topic examples] [--json]
"""

import argparse
import json
import sys

from hopfkit.fixtures import load_fixtures, run_fixture


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--topic")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    ok = True
    for fx in load_fixtures():
        if args.topic and fx.topic != args.topic:
            continue
        rep = run_fixture(fx)
        ok &= rep["passed"]
        if args.json:
            print(json.dumps(rep))
        else:
            print(f"{'PASS' if rep['passed'] else 'FAIL'}  {fx.name:<24} {rep['timings']['seconds']:>7.2f}s  "
                  f"{json.dumps(rep['values'])}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
