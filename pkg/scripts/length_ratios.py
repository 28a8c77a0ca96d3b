"""How fast len(C_{i+1}) / len(C_i) settles on the dominant eigenvalue."""

import argparse

from audioactive.core import jhc
from audioactive.spectral import decay_matrix, dominant_eigenvalue
from audioactive.table import derive_common_elements


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seed", default="1")
    p.add_argument("--days", type=int, default=60)
    args = p.parse_args()

    lam = dominant_eigenvalue(decay_matrix(derive_common_elements())).lam
    s, prev = args.seed, len(args.seed)
    for i in range(1, args.days + 1):
        s = jhc(s)
        print(f"{i:3d} {len(s):10d} {len(s) / prev:.9f} {len(s) / prev - lam:+.2e}")
        prev = len(s)


if __name__ == "__main__":
    main()
