"""Distribution of v_2(S(2^n+2, k+2)) - s_2(k) over the k with u(k) = 1.

Only the lower bound 0 is known in this case; this tabulates how far above
it the valuation actually sits, per n.

    python scripts/slack_distribution.py --n-max 10
"""

import argparse
from collections import Counter

from stirling2adic.exact import StirlingRowPair, vp
from stirling2adic.padic import s2_digits, u_index


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=10)
    args = ap.parse_args()

    stream = StirlingRowPair((1 << args.n_max) + 2)
    for n in range(1, args.n_max + 1):
        row = stream.advance_to((1 << n) + 2)
        slack = Counter(
            vp(row[k + 2], 2) - s2_digits(k)
            for k in range(1, (1 << n) + 1)
            if u_index(k) == 1
        )
        cells = "  ".join(f"{d}:{c}" for d, c in sorted(slack.items()))
        print(f"n={n:>2}  {cells}")


if __name__ == "__main__":
    main()
