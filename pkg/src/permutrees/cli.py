"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
guard tripped.  Machine output goes to standard output (or ``--output``);
notices and logs go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .decoration import Decoration, DecorationError, interior_decorations, normalize_decoration
from .formats import (
    corners_csv,
    corners_table,
    cubical_to_off,
    dumps,
    geometry_to_json,
    lattice_from_json,
    lattice_to_dot,
    lattice_to_json,
    vectors_csv,
)
from .geometry import build_cubical, build_polytope
from .lattice import DEFAULT_MAX_N, ResourceLimitError, enumerate_lattice
from .oracle import OracleBoundError
from .order import InvalidInversionSet, join, meet
from .pairs import InversionSet, parse_pairs

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

FORMATS = {
    "enumerate": ("json", "dot"),
    "meet": ("text",),
    "join": ("text",),
    "vectors": ("csv",),
    "geometry": ("json", "off"),
    "corners": ("json", "csv"),
    "verify": ("json",),
}

log = logging.getLogger("permutrees")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    delta: Decoration | None
    normalized: bool
    format: str
    output: Path | None
    max_n: int
    verbosity: int
    raw_delta: str | None = None
    left: list[tuple[int, int]] | None = None
    right: list[tuple[int, int]] | None = None
    all_n: int | None = None
    from_lattice: Path | None = None


def _pairs_arg(text: str) -> list[tuple[int, int]]:
    try:
        return parse_pairs(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permutrees", description="Permutree lattices and their realizations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help, delta_required=True):
        p = sub.add_parser(name, help=help)
        fmts = FORMATS[name]
        p.add_argument("--delta", required=delta_required, help="decoration word over n,d,u,b")
        p.add_argument("--format", choices=fmts, default=fmts[0])
        p.add_argument("-o", "--output", type=Path, help="write to this file instead of standard output")
        p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="refuse to enumerate beyond this n")
        p.add_argument("-v", "--verbose", action="count", default=0)
        return p

    add("enumerate", "lattice as JSON or DOT")
    for name in ("meet", "join"):
        p = add(name, f"{name} of two inversion sets")
        p.add_argument("--left", required=True, type=_pairs_arg, help="pairs such as 1-2,1-3")
        p.add_argument("--right", required=True, type=_pairs_arg)
    add("vectors", "CSV of inversion, cubic and vertex coordinates per node")
    p = add("geometry", "polytope and cubical realization", delta_required=False)
    p.add_argument("--from-lattice", type=Path, help="lattice JSON written by `enumerate`")
    add("corners", "corner of the stretched cube -> extremal node")
    p = add("verify", "run the oracle suite (--delta all sweeps every decoration of length --n)")
    p.add_argument("--n", type=int, dest="all_n")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    """Parse and validate; usage problems exit with code 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    delta, normalized = None, False
    if ns.delta is not None and not (ns.command == "verify" and ns.delta.lower() == "all"):
        try:
            delta, normalized = normalize_decoration(ns.delta)
        except DecorationError as e:
            parser.error(f"argument --delta: {e}")
    cfg = RunConfig(
        command=ns.command,
        delta=delta,
        normalized=normalized,
        format=ns.format,
        output=ns.output,
        max_n=ns.max_n,
        verbosity=ns.verbose,
        raw_delta=ns.delta,
        left=getattr(ns, "left", None),
        right=getattr(ns, "right", None),
        all_n=getattr(ns, "all_n", None),
        from_lattice=getattr(ns, "from_lattice", None),
    )
    if cfg.command == "verify":
        if delta is None and cfg.all_n is None:
            parser.error("argument --n: required with --delta all")
        if delta is not None and cfg.all_n is not None and cfg.all_n != delta.n:
            parser.error(f"argument --n: {cfg.all_n} does not match the length of --delta ({delta.n})")
        if cfg.all_n is not None and cfg.all_n < 1:
            parser.error("argument --n: must be positive")
    if cfg.command == "geometry" and delta is None and cfg.from_lattice is None:
        parser.error("argument --delta: required unless --from-lattice is given")
    if cfg.max_n < 1:
        parser.error("argument --max-n: must be positive")
    return cfg


def _inversion_set(flag: str, pairs, delta: Decoration) -> InversionSet:
    try:
        return InversionSet.from_pairs(delta.n, pairs)
    except ValueError as e:
        raise UsageError(f"argument {flag}: {e}") from None


def _notice(cfg: RunConfig, delta: Decoration, normalized: bool):
    if normalized:
        print(f"permutrees: note: decoration {cfg.raw_delta!r} normalized to {delta.word!r}", file=sys.stderr)


def _guard(cfg: RunConfig, n: int):
    if n > cfg.max_n:
        raise ResourceLimitError(f"n={n} exceeds --max-n {cfg.max_n}")


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns the exit code and the output text."""
    cmd = cfg.command
    if cmd == "verify":
        from .suite import verify_delta

        deltas = [cfg.delta] if cfg.delta is not None else interior_decorations(cfg.all_n)
        if cfg.delta is not None:
            _notice(cfg, cfg.delta, cfg.normalized)
        _guard(cfg, deltas[0].n)
        results = [verify_delta(d, enumerate_lattice(d, cfg.max_n)) for d in deltas]
        for r in results:
            log.info("%s %s", r["delta"], "pass" if r["passed"] else "FAIL")
        passed = all(r["passed"] for r in results)
        out = {"n": deltas[0].n, "decorations": len(results), "passed": passed, "results": results}
        return (EXIT_OK if passed else EXIT_FAIL), dumps(out)

    if cmd == "geometry" and cfg.from_lattice is not None:
        try:
            data = json.loads(cfg.from_lattice.read_text())
            L, normalized = lattice_from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise UsageError(f"argument --from-lattice: {e}") from None
        if cfg.delta is not None and cfg.delta != L.delta:
            raise UsageError(f"argument --delta: {cfg.delta.word} does not match the lattice ({L.delta.word})")
        _guard(cfg, L.n)
    else:
        delta, normalized = cfg.delta, cfg.normalized
        _notice(cfg, delta, normalized)
        _guard(cfg, delta.n)
        if cmd in ("meet", "join"):
            E1 = _inversion_set("--left", cfg.left, delta)
            E2 = _inversion_set("--right", cfg.right, delta)
            try:
                if cmd == "meet":
                    result = meet(E1, E2, delta)
                else:
                    result = join(E1, E2, delta)
            except InvalidInversionSet as e:
                flag = "--left" if str(e).startswith("left") else "--right"
                raise UsageError(f"argument {flag}: {e}") from None
            return EXIT_OK, result.format() + "\n"
        L = enumerate_lattice(delta, cfg.max_n)

    if cmd == "enumerate":
        if cfg.format == "dot":
            return EXIT_OK, lattice_to_dot(L)
        return EXIT_OK, dumps(lattice_to_json(L, normalized))
    if cmd == "vectors":
        return EXIT_OK, vectors_csv(L)
    if cmd == "corners":
        rows = corners_table(L)
        if cfg.format == "csv":
            return EXIT_OK, corners_csv(rows, L.n)
        return EXIT_OK, dumps({"delta": L.delta.word, "n": L.n, "normalized": normalized, "corners": rows})
    if cmd == "geometry":
        C = build_cubical(L)
        if cfg.format == "off":
            if L.n - 1 > 3:
                raise UsageError(f"argument --format: off needs n - 1 <= 3, got n = {L.n}")
            return EXIT_OK, cubical_to_off(C)
        return EXIT_OK, dumps(geometry_to_json(build_polytope(L), C, normalized))
    raise AssertionError(cmd)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    level = {0: logging.WARNING, 1: logging.INFO}.get(cfg.verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    try:
        code, text = run(cfg)
    except UsageError as e:
        print(f"permutrees {cfg.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, OracleBoundError) as e:
        print(f"permutrees {cfg.command}: resource guard: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
