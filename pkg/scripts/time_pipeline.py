"""Time each pipeline stage on the curated instances.

Stages: building the involution, the pfaffian with its split into alt+ and
alt-, the metabolicity certificate, and the full invariant report.
"""

import argparse
import statistics
import sys
import time
from dataclasses import dataclass

from biquat.instances import curated
from biquat.pfaffian import is_metabolic, pfaffian_package
from biquat.report import build_report


@dataclass(frozen=True)
class TimingConfig:
    repeats: int = 3
    seed: int = 0


def _time(fn, repeats):
    samples = []
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn()
        samples.append(time.perf_counter() - start)
    return out, statistics.median(samples)


def run(config: TimingConfig) -> list[tuple[str, float, float, float, float]]:
    rows = []
    for inst in curated():
        sigma, t_build = _time(inst.build, config.repeats)
        pkg, t_pf = _time(lambda: pfaffian_package(sigma, seed=config.seed), config.repeats)
        _, t_met = _time(lambda: is_metabolic(pkg, seed=config.seed), config.repeats)
        _, t_rep = _time(lambda: build_report(sigma, seed=config.seed), config.repeats)
        rows.append((inst.name, t_build, t_pf, t_met, t_rep))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rows = run(TimingConfig(args.repeats, args.seed))
    print(f"{'instance':18s} {'build':>8s} {'pfaffian':>9s} {'metabolic':>10s} {'report':>8s}  (median seconds)")
    for name, *times in rows:
        print(f"{name:18s} " + " ".join(f"{t:>{w}.3f}" for t, w in zip(times, (8, 9, 10, 8))))
    return 0


if __name__ == "__main__":
    sys.exit(main())
