"""Run the proof search and write the certificate, logging each generation.

    python scripts/run_cosmo.py --L 8 --out cosmo_L8.json
    python scripts/run_cosmo.py --split-mode standalone
"""

import argparse
import logging
import time

from audioactive.cosmology import cosmo
from audioactive.table import derive_common_elements


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--L", type=int, default=8)
    p.add_argument("--cap-days", type=int, default=50)
    p.add_argument("--generation-cap", type=int, default=200)
    p.add_argument("--split-mode", choices=["context", "standalone"], default="context")
    p.add_argument("--check-top", action="store_true")
    p.add_argument("--out")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(relativeCreated)8.0fms %(message)s")

    t0 = time.time()
    cert = cosmo(
        derive_common_elements("1"),
        L=args.L,
        cap_days=args.cap_days,
        generation_cap=args.generation_cap,
        check_top=args.check_top,
        split_mode=args.split_mode,
    )
    for g in cert.generations:
        print(f"{g.i:3d} {g.count:7d} {g.max_longevity:3d} {g.argmax or ''}")
    print(f"status={cert.status} haltedAt={cert.halted_at} M={cert.M} N={cert.N} ({time.time() - t0:.0f}s)")
    if args.out:
        with open(args.out, "w") as f:
            f.write(cert.dumps() + "\n")


if __name__ == "__main__":
    main()
