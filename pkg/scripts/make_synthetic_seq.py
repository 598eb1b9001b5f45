#!/usr/bin/env python3
"""Generate a synthetic msnbc-shaped .seq file for benchmarks and demos.

The output mimics the real clickstream file's shape (17-category header,
989818 sessions whose length histogram matches the published per-length
user counts) but the page contents are sampled from a planted first-order
chain, so any prediction numbers measured on it are NOT the published ones.
Use it to exercise the pipeline at full scale when the real file is
unavailable.
"""

import argparse
import random
import sys

LENGTH_COUNTS = {
    1: 601384, 2: 214392, 3: 94711, 4: 43321, 5: 19692, 6: 8902, 7: 4008,
    8: 1688, 9: 737, 10: 297, 11: 142, 12: 238, 13: 143, 14: 74, 15: 67,
    16: 9, 17: 13,
}

CATEGORIES = (
    "frontpage news tech local opinion on-air misc weather health living "
    "business sports summary bbs travel msn-news msn-sports"
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", help="path of the .seq file to write")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--follow", type=float, default=0.85,
                        help="probability of following the planted chain")
    parser.add_argument("--scale", type=float, default=1.0,
                        help="scale factor on the per-length counts")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    lengths = []
    for length, count in LENGTH_COUNTS.items():
        lengths.extend([length] * max(0, round(count * args.scale)))
    rng.shuffle(lengths)

    n_pages = 17
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("% synthetic msnbc-shaped clickstream (planted chain; not real data)\n")
        fh.write(CATEGORIES + "\n")
        fh.write("% sequences:\n")
        for length in lengths:
            page = rng.randint(1, n_pages)
            pages = [page]
            for _ in range(length - 1):
                if rng.random() < args.follow:
                    page = page % n_pages + 1
                else:
                    page = rng.randint(1, n_pages)
                pages.append(page)
            fh.write(" ".join(map(str, pages)) + "\n")
    print(f"wrote {len(lengths)} sessions to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
