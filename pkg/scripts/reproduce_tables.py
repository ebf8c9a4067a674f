#!/usr/bin/env python3
"""Reproduce the four reference tables on stdout.

Usage: python scripts/reproduce_tables.py [--max-N 6] [--max-K 6]
"""
import argparse

from kratzerqes.cli import main as cli_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-N", type=int, default=6)
    ap.add_argument("--max-K", type=int, default=6)
    args = ap.parse_args()

    print("== Table 1: secular roots (doubled coordinates) ==")
    cli_main(["tables", "--which", "1", "--N", str(min(args.max_N, 5))])
    print("== Table 2: real-branch coefficient vectors ==")
    cli_main(["tables", "--which", "2", "--N", str(args.max_N)])
    print("== Table 3: generalized Pascal triangle ==")
    cli_main(["tables", "--which", "3", "--K", str(args.max_K)])
    print("== Table 4: left null-vector pairs ==")
    cli_main(["tables", "--which", "4", "--N", str(min(args.max_N, 4))])


if __name__ == "__main__":
    main()
