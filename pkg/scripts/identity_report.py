"""Run the exact identity and generating-function suites and print a summary."""
import argparse
import json
import time
from dataclasses import dataclass

from invfac.identities import genfun_suite, identity_suite, spot_check


@dataclass
class ReportConfig:
    max_m: int = 10
    spot_points: int = 20
    json_out: str | None = None


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--json", dest="json_out", default=None, help="write the full report here")
    cfg = ReportConfig(**vars(p.parse_args()))
    t0 = time.perf_counter()
    cases = identity_suite(cfg.max_m) + genfun_suite()
    elapsed = time.perf_counter() - t0
    by_kind: dict = {}
    for c in cases:
        ok, total = by_kind.get(c.identity, (0, 0))
        by_kind[c.identity] = (ok + c.holds, total + 1)
    for kind, (ok, total) in sorted(by_kind.items()):
        print(f"{kind:14s} {ok}/{total} exact")
    spot = {m: spot_check(m) for m in range(cfg.max_m + 1)}
    fails = sum(sum(v.values()) for v in spot.values())
    print(f"numeric spot checks at {cfg.spot_points} rational points: {fails} failures")
    print(f"symbolic suites took {elapsed:.1f} s")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump([c.to_json() for c in cases], fh, sort_keys=True, indent=2)


if __name__ == "__main__":
    main()
