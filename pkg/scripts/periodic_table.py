"""Print the derived elements with their decay products and abundances."""

import argparse

from audioactive.core import render
from audioactive.spectral import decay_matrix, dominant_eigenvalue
from audioactive.table import derive_common_elements


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--seed", default="1")
    args = p.parse_args()

    table = derive_common_elements(args.seed)
    res = dominant_eigenvalue(decay_matrix(table))
    print(f"{len(table)} elements, lambda = {res.lam:.12f}")
    for e, a in zip(table.elements, res.abundance):
        print(f"{e.id:3d} {a:12.3f}  {render(e.string):44s} -> {'.'.join(map(str, e.products))}")
    for k, t in enumerate(table.transuranic):
        print(f"transuranic family {k}: {t.literal()}")


if __name__ == "__main__":
    main()
