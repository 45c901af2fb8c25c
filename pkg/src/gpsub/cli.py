"""Command-line interface.

Exit status: 0 when every check passes, 2 on a verification failure,
1 on malformed input (bad lattice spec, singular Gram matrix where duals are
needed, a non-positive-definite form without a charge box, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .combinatorics import (
    ChargeBoxRequired,
    character,
    charge_range,
    check_extraction,
    enumerate_basis,
    verify_character,
)
from .duality import check_commutant_corollary, check_duality
from .exactnum import format_rational, format_scalar, parse_rational, simplify
from .freegva import StraighteningError, format_element, format_monomial, parse_element, straighten
from .lattice import ConstraintViolation, LatticeSpecError, SingularGram, load_lattice
from .presentation import check_presentation_relations

__all__ = ["main", "build_parser"]

COMMANDS = (
    "character",
    "basis",
    "straighten",
    "verify-character",
    "check-duality",
    "check-presentation",
    "check-commutant",
    "check-extraction",
)


class InputError(Exception):
    pass


def _rational_list(text: str) -> tuple:
    try:
        return tuple(parse_rational(x) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _cutoff(text: str) -> Fraction:
    try:
        d = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad cutoff {text!r}") from exc
    if d < 0:
        raise argparse.ArgumentTypeError("cutoff must be nonnegative")
    return d


def _jobs(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", default="A1", help="JSON spec path or built-in name (A1..A8, rank1:p/q, [[p/q]], dual:NAME)")
    common.add_argument("--lambda", dest="lam", type=_rational_list, default=None,
                        help="shift in basis coordinates, e.g. 1/2 or 2/3,1/3")
    common.add_argument("--cutoff", type=_cutoff, default=Fraction(6), help="weight cutoff p/q")
    common.add_argument("--charge-box", type=_int_list, default=None, help="largest charge per letter, i1,...,il")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--jobs", type=_jobs, default=1, help="worker processes")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="gpsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("character", parents=[common], help="multigraded character as a truncated q-series")
    p = sub.add_parser("basis", parents=[common], help="list basis monomials bucket by bucket")
    p.add_argument("--charge", type=_int_list, default=None, help="restrict to one charge")
    p = sub.add_parser("straighten", parents=[common], help="normal form of a mode monomial expression")
    p.add_argument("expression", help='e.g. "a0(-1) a0(0)"; the leftmost letter acts first')
    sub.add_parser("verify-character", parents=[common], help="character vs basis count vs Fock rank")
    p = sub.add_parser("check-duality", parents=[common], help="dual-generator invariants vs principal subspace")
    p.add_argument("--orientation", choices=("lattice", "dual", "both"), default="lattice")
    sub.add_parser("check-presentation", parents=[common], help="defining relations in the Fock model")
    sub.add_parser("check-commutant", parents=[common], help="commutant of W_Q in V_Q for a root lattice Q")
    sub.add_parser("check-extraction", parents=[common], help="extraction operators on basis buckets")
    return parser


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _basis_payload(lattice, args) -> tuple:
    if args.charge is not None:
        if len(args.charge) != lattice.rank:
            raise InputError("--charge length must equal the lattice rank")
        charges = [args.charge]
    else:
        charges = charge_range(lattice, args.lam, args.cutoff, args.charge_box)
    buckets = []
    for c in charges:
        buckets.extend(enumerate_basis(lattice, args.lam, c, args.cutoff))
    buckets.sort(key=lambda b: (b.weight, b.charge))
    if args.format == "json":
        payload = [
            {
                "charge": list(b.charge),
                "weight": format_rational(b.weight),
                "members": [format_monomial(m, lattice) for m in b.members],
            }
            for b in buckets
        ]
        return json.dumps(payload, indent=2), True
    lines = []
    for b in buckets:
        lines.append(f"# charge {','.join(map(str, b.charge))} weight {format_rational(b.weight)}: {len(b)}")
        lines.extend(format_monomial(m, lattice) for m in b.members)
    return "\n".join(lines), True


def _straighten_payload(lattice, args) -> tuple:
    try:
        x = parse_element(args.expression, lattice)
    except (ValueError, KeyError, IndexError) as exc:
        raise InputError(str(exc)) from exc
    y = straighten(x, lattice)
    text = format_element(y, lattice)
    if args.format == "json":
        terms = [
            {"monomial": format_monomial(m, lattice), "coeff": format_scalar(simplify(c))}
            for m, c in sorted(y.items())
        ]
        return json.dumps({"input": args.expression, "normal_form": text, "terms": terms}, indent=2), True
    return text, True


def _reports_payload(reports, fmt) -> tuple:
    ok = all(r.passed for r in reports)
    if fmt == "json":
        body = [r.to_dict() for r in reports]
        return json.dumps(body[0] if len(body) == 1 else body, indent=2, sort_keys=True), ok
    return "\n".join(r.to_human() for r in reports), ok


def run(args) -> int:
    lattice = load_lattice(args.lattice)
    if args.lam is not None and len(args.lam) != lattice.rank:
        raise InputError(f"--lambda has {len(args.lam)} coordinates, lattice rank is {lattice.rank}")
    if args.charge_box is not None and len(args.charge_box) != lattice.rank:
        raise InputError("--charge-box length must equal the lattice rank")
    cmd = args.command
    if cmd == "character":
        series = character(lattice, args.lam, args.cutoff, args.charge_box)
        text, ok = (series.to_json() if args.format == "json" else series.to_human()), True
    elif cmd == "basis":
        text, ok = _basis_payload(lattice, args)
    elif cmd == "straighten":
        text, ok = _straighten_payload(lattice, args)
    elif cmd == "verify-character":
        rep = verify_character(lattice, args.lam, args.cutoff, args.charge_box, jobs=args.jobs)
        text, ok = _reports_payload([rep], args.format)
    elif cmd == "check-duality":
        targets = {"lattice": [lattice], "dual": [lattice.dual_lattice()],
                   "both": [lattice, lattice.dual_lattice()]}[args.orientation]
        reps = [check_duality(t, args.cutoff, jobs=args.jobs) for t in targets]
        text, ok = _reports_payload(reps, args.format)
    elif cmd == "check-presentation":
        text, ok = _reports_payload([check_presentation_relations(lattice)], args.format)
    elif cmd == "check-commutant":
        text, ok = _reports_payload([check_commutant_corollary(lattice, args.cutoff, jobs=args.jobs)], args.format)
    elif cmd == "check-extraction":
        text, ok = _reports_payload([check_extraction(lattice, args.cutoff, jobs=args.jobs)], args.format)
    else:  # pragma: no cover - argparse rejects unknown commands
        raise InputError(f"unknown command {cmd}")
    _emit(text, args.out)
    return 0 if ok else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return run(args)
    except (InputError, LatticeSpecError, ConstraintViolation, SingularGram, ChargeBoxRequired) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StraighteningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
