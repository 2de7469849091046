"""Extend the exact k = 5 level tree well past level 8.

Every level keeps exactly two non-constant classes, and the constant
siblings split off at level m carry the value m - 2.

    python scripts/deep_level_tree.py --max-level 30 --dot tree.dot
"""

import argparse

from stirling2adic.levels import ExactPeriodic, build_level_tree, export_tree, level_summary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-level", type=int, default=24)
    ap.add_argument("--cap", type=int, default=256)
    ap.add_argument("--dot")
    args = ap.parse_args()

    tree = build_level_tree(5, args.max_level, ExactPeriodic(args.cap))
    print(level_summary(tree), end="")
    print()
    print(f"{'m':>3}  constant classes")
    for m in range(2, args.max_level + 1):
        consts = [(c, s.value) for c, s in tree.sorted_nodes() if c.m == m and s.is_constant]
        print(f"{m:>3}  " + ", ".join(f"{c.label}={v}" for c, v in consts))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_tree(tree, "dot"))


if __name__ == "__main__":
    main()
