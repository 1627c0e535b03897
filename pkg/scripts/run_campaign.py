#!/usr/bin/env python3
"""
Long enumeration campaigns over lattice simplices

Runs the large searches for thin simplices that are neither trivially thin,
lattice pyramids, free joins nor resolved over their spanning sublattice:
1. dim 4, volume <= 21
2. dim 5, volume <= 20
3. dim 6, volume <= 16

Each campaign writes a resumable JSONL log under results_dir; rerunning the
script continues from the last completed volume.
"""
import argparse
import logging
import sys
from pathlib import Path

from app.config import settings
from app.services.classify_enum import question1_scan, read_log, write_enumeration_log

CAMPAIGNS = {
    "dim4": (4, 21),
    "dim5": (5, 20),
    "dim6": (6, 16),
}


def run_campaign(name: str, jobs: int, results_dir: Path) -> bool:
    """Run one campaign; True when it found no unresolved thin simplex."""
    dim, max_volume = CAMPAIGNS[name]
    path = results_dir / f"campaign_{name}.jsonl"
    print(f"\n=== {name}: dim {dim}, volume <= {max_volume} ===")
    summary = write_enumeration_log(path, dim, max_volume, jobs=jobs, resume=True)
    if summary.skipped_volumes:
        print(f"  resumed, skipped volumes {list(summary.skipped_volumes)}")
    scan = question1_scan(read_log(path).records)
    print(f"  {scan.total} records, {scan.thin} thin, {len(scan.counterexamples)} unresolved")
    for record in scan.counterexamples:
        print(f"  ! unresolved: volume {record.volume} hnf {[list(r) for r in record.hnf]}")
    return not scan.counterexamples


def main():
    parser = argparse.ArgumentParser(description="Long simplex enumeration campaigns")
    parser.add_argument("campaigns", nargs="*", help=f"Any of {sorted(CAMPAIGNS)} (default: all)")
    parser.add_argument("--jobs", type=int, default=settings.enum_jobs)
    parser.add_argument("--results-dir", type=Path, default=settings.results_dir)
    args = parser.parse_args()
    unknown = [c for c in args.campaigns if c not in CAMPAIGNS]
    if unknown:
        parser.error(f"unknown campaigns: {unknown}")
    campaigns = args.campaigns or list(CAMPAIGNS)

    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    results = {name: run_campaign(name, args.jobs, args.results_dir) for name in campaigns}

    print("\n" + "=" * 60)
    print("CAMPAIGN SUMMARY")
    print("=" * 60)
    for name, clean in results.items():
        print(f"  {name}: {'no unresolved records' if clean else 'UNRESOLVED RECORDS FOUND'}")
    sys.exit(0 if all(results.values()) else 1)


if __name__ == "__main__":
    main()
