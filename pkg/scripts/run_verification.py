"""Cross-check the coloring theorems on the built-in diagrams.

    python scripts/run_verification.py --mod-lo 2 --mod-hi 9 --json out.json

Prints one line per check name with pass counts, then any failures.
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass, field, asdict

from goeritz import library
from goeritz.colorings import verify_theorems


@dataclass
class VerifyConfig:
    mod_lo: int = 2
    mod_hi: int = 9
    names: list = field(default_factory=library.names)
    cap: int | None = None
    json_out: str | None = None

    @property
    def moduli(self):
        return list(range(self.mod_lo, self.mod_hi + 1))


def run(cfg):
    rows = []
    t0 = time.perf_counter()
    for name in cfg.names:
        rows.extend(verify_theorems(library.load(name), cfg.moduli, name, cfg.cap))
    elapsed = time.perf_counter() - t0

    passed, total = Counter(), Counter()
    for r in rows:
        total[r.check] += 1
        passed[r.check] += r.ok
    for check in sorted(total):
        print(f"{check:<34} {passed[check]:>5}/{total[check]}")
    bad = [r for r in rows if not r.ok]
    for r in bad:
        print(f"FAIL {r.diagram} {r.check} m={r.m} {r.shading}: {r.expected} != {r.actual}")
    print(f"{len(rows) - len(bad)}/{len(rows)} checks passed in {elapsed:.2f}s")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": asdict(cfg), "results": [r.to_dict() for r in rows]}, fh, indent=2)
    return not bad


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--mod-lo", type=int, default=2)
    p.add_argument("--mod-hi", type=int, default=9)
    p.add_argument("--names", nargs="+")
    p.add_argument("--cap", type=int)
    p.add_argument("--json", dest="json_out")
    args = p.parse_args()
    cfg = VerifyConfig(args.mod_lo, args.mod_hi, args.names or library.names(), args.cap, args.json_out)
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
