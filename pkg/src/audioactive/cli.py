"""Command-line front end: say, split, table, lambda, abundance, longevity, cosmo."""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .core import AudioString, LengthCapExceeded, LiteralError, jhc, parse, render
from .cosmology import (
    DEFAULT_CAP_DAYS,
    DEFAULT_GENERATION_CAP,
    DEFAULT_L,
    LongevityCapExceeded,
    cosmo,
    longevity,
)
from .spectral import (
    NoConvergence,
    NotPrimitive,
    abundance_csv,
    char_poly,
    char_poly_text,
    decay_matrix,
    dominant_eigenvalue,
)
from .splitting import CycleNotFound, split_atoms
from .table import NoClosure, NoCycle, PeriodicTable, derive_common_elements

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNPROVEN = 3
EXIT_INTERNAL = 4

log = logging.getLogger("audioactive")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    L: int = DEFAULT_L
    cap_days: int = DEFAULT_CAP_DAYS
    generation_cap: int = DEFAULT_GENERATION_CAP
    seed: str = "1"
    format: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if min(self.L, self.cap_days, self.generation_cap) < 1:
            raise InputError("--L, --cap-days and --generation-cap must be >= 1")


def cache_dir() -> Path:
    env = os.environ.get("AUDIOACTIVE_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "audioactive"


def load_table(seed: AudioString) -> PeriodicTable:
    """The derived table for ``seed``, from the cache when seed and hash check out."""
    path = cache_dir() / f"table-{hashlib.sha256(seed.encode()).hexdigest()[:16]}.json"
    digest_path = path.with_suffix(".sha256")
    try:
        text = path.read_text()
        if hashlib.sha256(text.encode()).hexdigest() == digest_path.read_text().strip():
            table = PeriodicTable.from_json(json.loads(text))
            if table.seed == seed:
                return table
        log.info("stale table cache at %s", path)
    except (OSError, ValueError, KeyError):
        pass
    table = derive_common_elements(seed)
    text = table.dumps()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        digest_path.write_text(hashlib.sha256(text.encode()).hexdigest() + "\n")
    except OSError as exc:
        log.warning("could not write table cache: %s", exc)
    return table


def _literal(text: str) -> AudioString:
    try:
        return parse(text)
    except LiteralError as exc:
        raise InputError(str(exc)) from exc


def _csv(rows: List[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_say(args, cfg: RunConfig) -> str:
    s = _literal(args.string)
    if args.n < 0:
        raise InputError("n must be >= 0")
    terms = [s]
    for _ in range(args.n):
        terms.append(jhc(terms[-1]))
    lengths = [len(t) for t in terms]
    ratios = [None] + [b / a for a, b in zip(lengths, lengths[1:])]
    if cfg.format == "json":
        return json.dumps({"terms": [render(t) for t in terms], "lengths": lengths, "ratios": ratios}) + "\n"
    if cfg.format == "csv":
        rows = [["i", "length", "ratio", "term"]]
        rows += [[i, n, "" if r is None else repr(r), render(t)]
                 for i, (n, r, t) in enumerate(zip(lengths, ratios, terms))]
        return _csv(rows)
    table = [f"# {i} {n} {'-' if r is None else repr(r)}" for i, (n, r) in enumerate(zip(lengths, ratios))]
    return "\n".join(table + [render(t) for t in terms]) + "\n"


def cmd_split(args, cfg: RunConfig) -> str:
    atoms = [render(a) for a in split_atoms(_literal(args.string))]
    if cfg.format == "text":
        return "\n".join(atoms) + "\n"
    return json.dumps(atoms) + "\n"


def cmd_table(args, cfg: RunConfig) -> str:
    table = load_table(_literal(cfg.seed))
    if cfg.format == "csv":
        rows = [["id", "string", "products"]]
        rows += [[e.id, render(e.string), " ".join(map(str, e.products))] for e in table.elements]
        return _csv(rows)
    if cfg.format == "text":
        return "".join(f"{e.id}\t{render(e.string)}\t{' '.join(map(str, e.products))}\n" for e in table.elements)
    return table.dumps() + "\n"


def cmd_lambda(args, cfg: RunConfig) -> str:
    m = decay_matrix(load_table(_literal(cfg.seed)))
    res = dominant_eigenvalue(m)
    coeffs = char_poly(m)
    if cfg.format == "text":
        return f"lambda {res.lam!r}\nresidual {res.residual!r}\niterations {res.iterations}\n" + char_poly_text(coeffs)
    if cfg.format == "csv":
        return _csv([["power", "coefficient"]] + [[len(coeffs) - 1 - k, c] for k, c in enumerate(coeffs)])
    return json.dumps({
        "lambda": res.lam,
        "residual": res.residual,
        "iterations": res.iterations,
        "charPoly": coeffs,
    }) + "\n"


def cmd_abundance(args, cfg: RunConfig) -> str:
    table = load_table(_literal(cfg.seed))
    res = dominant_eigenvalue(decay_matrix(table))
    if cfg.format == "json":
        data = [{"id": e.id, "string": render(e.string), "abundance": round(float(a), 6)}
                for e, a in zip(table.elements, res.abundance)]
        data.sort(key=lambda d: (-d["abundance"], d["id"]))
        return json.dumps(data) + "\n"
    return abundance_csv(table, res)


def cmd_longevity(args, cfg: RunConfig) -> str:
    s = _literal(args.string)
    res = longevity(s, load_table(_literal(cfg.seed)), cfg.cap_days)
    compound = sorted((str(k), v) for k, v in res.final_compound.items())
    if cfg.format == "text":
        return f"{res.days}\n"
    if cfg.format == "csv":
        return _csv([["part", "count"]] + [list(kv) for kv in compound])
    return json.dumps({"string": render(s), "days": res.days, "compound": dict(compound)}) + "\n"


def cmd_cosmo(args, cfg: RunConfig) -> str:
    cert = cosmo(
        load_table(_literal(cfg.seed)),
        L=cfg.L,
        cap_days=cfg.cap_days,
        generation_cap=cfg.generation_cap,
        split_mode=args.split_mode,
        check_top=args.check_top,
        time_budget=args.time_budget,
        expected_halt=args.expect_halt,
    )
    args.exit_code = EXIT_OK if cert.status == "PROVEN" else EXIT_UNPROVEN
    if cfg.format == "csv":
        rows = [["i", "count", "maxLongevity"]] + [[g.i, g.count, g.max_longevity] for g in cert.generations]
        return _csv(rows)
    if cfg.format == "text":
        return f"status {cert.status}\nhaltedAt {cert.halted_at}\nM {cert.M}\nN {cert.N}\n"
    return cert.dumps() + "\n"


COMMANDS: Dict[str, Callable] = {
    "say": cmd_say,
    "split": cmd_split,
    "table": cmd_table,
    "lambda": cmd_lambda,
    "abundance": cmd_abundance,
    "longevity": cmd_longevity,
    "cosmo": cmd_cosmo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--L", type=int, default=DEFAULT_L, help="screening depth")
    common.add_argument("--cap-days", type=int, default=DEFAULT_CAP_DAYS)
    common.add_argument("--generation-cap", type=int, default=DEFAULT_GENERATION_CAP)
    common.add_argument("--seed", default="1", help="seed literal for the periodic table")
    common.add_argument("--format", choices=["json", "csv", "text"])
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="audioactive", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    say = sub.add_parser("say", parents=[common], help="print evolve(s, i) for i = 0..n")
    say.add_argument("string")
    say.add_argument("n", type=int)
    sub.add_parser("split", parents=[common], help="split a string into atoms").add_argument("string")
    sub.add_parser("table", parents=[common], help="derive the periodic table")
    sub.add_parser("lambda", parents=[common], help="Conway's constant and the characteristic polynomial")
    sub.add_parser("abundance", parents=[common], help="element abundances per million")
    sub.add_parser("longevity", parents=[common], help="days until a string is all elements").add_argument("string")
    c = sub.add_parser("cosmo", parents=[common], help="run the proof search")
    c.add_argument("--split-mode", choices=["context", "standalone"], default="context",
                   help="how candidates are tested for splits (standalone can drop real atom chunks)")
    c.add_argument("--check-top", action="store_true", help="also require the topmost ancestor to be grammatical")
    c.add_argument("--time-budget", type=float, help="stop unproven after this many seconds")
    c.add_argument("--expect-halt", type=int, help="flag the certificate if it halts at a different i")
    return p


DEFAULT_FORMAT = {"say": "text", "abundance": "csv", "lambda": "json"}


def _fail(code: int, kind: str, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    args.exit_code = EXIT_OK
    try:
        cfg = RunConfig(args.L, args.cap_days, args.generation_cap, args.seed,
                        args.format or DEFAULT_FORMAT.get(args.command, "json"), args.out)
        text = COMMANDS[args.command](args, cfg)
    except (InputError, LengthCapExceeded) as exc:
        return _fail(EXIT_INPUT, "input", exc)
    except LongevityCapExceeded as exc:
        return _fail(EXIT_UNPROVEN, "cap", exc)
    except (NoClosure, NoCycle, CycleNotFound, NotPrimitive, NoConvergence, AssertionError) as exc:
        return _fail(EXIT_INTERNAL, "invariant", exc)
    except ValueError as exc:
        return _fail(EXIT_INPUT, "input", exc)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
