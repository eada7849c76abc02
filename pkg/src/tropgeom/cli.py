"""Command-line front end.

Subcommands: count, diagrams, curve, reconstruct, free-energy, check.
Exit codes: 0 success, 1 usage or input-format problems, 2 capacity guard,
3 geometric failure.  Output is deterministic: identical invocations give
byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .curves import PlaneTropicalCurve, corner_locus
from .errors import (
    CapacityError,
    FormatError,
    MarkingError,
    PolynomialParseError,
    StretchError,
)
from .floor_diagrams import (
    MAX_DEGREE,
    MAX_GENUS,
    FloorDiagram,
    MarkedFloorDiagram,
    count_markings,
    enumerate_diagrams,
    enumerate_markings,
    gw_count,
    multiplicity,
    welschinger_count,
)
from .polynomials import TropicalPolynomial
from .reconstruction import PointConfiguration, reconstruct, stretched_config
from .semiring import EnergySpectrum, free_energy
from .svg import curve_svg


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; our contract says 1
        raise _UsageError(message)


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write_output(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> _Parser:
    parser = _Parser(prog="tropgeom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="curve count through 3d-1+g generic points")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("-g", "--genus", type=int, default=0)
    p.add_argument("--real", action="store_true", help="signed real count")
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE)

    p = sub.add_parser("diagrams", help="list floor diagrams (optionally marked)")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("-g", "--genus", type=int, default=0)
    p.add_argument("--marked", action="store_true")
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.add_argument("--out")
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE)

    p = sub.add_parser("curve", help="corner locus of a tropical polynomial file")
    p.add_argument("polynomial", help="text file with 'i j a_ij' lines")
    p.add_argument("--format", choices=["json", "svg"], default="json")
    p.add_argument("--out")

    p = sub.add_parser("reconstruct", help="curve through stretched points")
    p.add_argument("diagram", help="marked-diagram JSON file")
    p.add_argument("--config", help="point-configuration JSON file")
    p.add_argument("--seed", type=int, help="generate stretched points")
    p.add_argument("--format", choices=["svg", "json"], default="svg")
    p.add_argument("--out")

    p = sub.add_parser("free-energy", help="subtropical fold of an energy spectrum")
    p.add_argument("energies", help="comma-separated nondecreasing levels")
    p.add_argument("-T", "--temperature", type=float, required=True)

    p = sub.add_parser("check", help="balancing validator for curve JSON")
    p.add_argument("curve", help="curve JSON file")

    return parser


def _cmd_count(args) -> int:
    fn = welschinger_count if args.real else gw_count
    value = fn(args.degree, args.genus, max_degree=args.max_degree)
    print(value)
    return 0


def _cmd_diagrams(args) -> int:
    diagrams = enumerate_diagrams(args.degree, args.genus, max_degree=args.max_degree)
    if args.marked:
        records = []
        for diagram in diagrams:
            for marking in enumerate_markings(diagram):
                records.append((diagram, marking))
    else:
        records = [(diagram, None) for diagram in diagrams]

    if args.format == "json":
        payload = [d.to_json(marking=m) for d, m in records]
        _write_output(_dump_json(payload), args.out)
    elif args.format == "dot":
        chunks = [d.to_dot(name=f"D{k}") for k, (d, _) in enumerate(records)]
        _write_output("".join(chunks), args.out)
    else:
        lines = []
        for k, (diagram, marking) in enumerate(records):
            desc = (
                f"diagram {k}: degree={diagram.degree} genus={diagram.genus} "
                f"edges={list(diagram.edges)} markings={count_markings(diagram)} "
                f"multiplicity={multiplicity(diagram)}"
            )
            if marking is not None:
                desc += f" marking={list(marking)}"
            lines.append(desc)
        _write_output("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_curve(args) -> int:
    with open(args.polynomial, "r", encoding="utf-8") as fh:
        poly = TropicalPolynomial.from_text(fh.read())
    curve = corner_locus(poly)
    if curve.is_empty:
        print("warning: single dominant monomial, the corner locus is empty",
              file=sys.stderr)
    d = poly.degree()
    if d is not None:
        print(f"degree {d}", file=sys.stderr)
    if args.format == "json":
        _write_output(_dump_json(curve.to_json()), args.out)
    else:
        _write_output(curve_svg(curve), args.out)
    return 0


def _cmd_reconstruct(args) -> int:
    with open(args.diagram, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    diagram, marking = FloorDiagram.from_json(data)
    if marking is None:
        raise FormatError("diagram file carries no marking")
    md = MarkedFloorDiagram(diagram=diagram, marking=marking)
    n = 3 * diagram.degree - 1 + diagram.genus
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = PointConfiguration.from_json(json.load(fh))
    elif args.seed is not None:
        cfg = stretched_config(n, args.seed)
    else:
        raise _UsageError("reconstruct needs --config or --seed")
    curve = reconstruct(md, cfg)
    if args.format == "json":
        _write_output(_dump_json(curve.to_json()), args.out)
    else:
        _write_output(curve_svg(curve, points=cfg.points), args.out)
    return 0


def _cmd_free_energy(args) -> int:
    try:
        levels = tuple(float(tok) for tok in args.energies.split(",") if tok.strip())
    except ValueError as exc:
        raise _UsageError(f"bad energy list: {exc}") from exc
    spectrum = EnergySpectrum(levels=levels, temperature=args.temperature)
    value = free_energy(spectrum) + 0.0  # normalize -0.0
    print(f"{value:.12g}")
    return 0


def _cmd_check(args) -> int:
    with open(args.curve, "r", encoding="utf-8") as fh:
        curve = PlaneTropicalCurve.from_json(json.load(fh))
    violations = curve.check_balancing()
    if not violations:
        print("balanced")
        return 0
    for v in violations:
        print(f"vertex {v.vertex}: residue {v.residue}")
    return 3


_DISPATCH = {
    "count": _cmd_count,
    "diagrams": _cmd_diagrams,
    "curve": _cmd_curve,
    "reconstruct": _cmd_reconstruct,
    "free-energy": _cmd_free_energy,
    "check": _cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 2
    except (StretchError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        MarkingError,
        FormatError,
        PolynomialParseError,
        json.JSONDecodeError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
