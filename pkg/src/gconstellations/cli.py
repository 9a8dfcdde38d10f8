"""Command line front end: problem-file ingestion and deterministic output.

A problem file is JSON with a group and a fan:

    {
      "group": {"cyclic": {"order": 8, "weights": [1, 2, 5]}},
      "fan": {
        "rays": [["1","0","0"], ..., ["5/8","2/8","1/8"]],
        "cones": [[1, 2, 7], ...]
      }
    }

General abelian groups use {"abelian": {"orders": [...], "weight_matrix":
[[...], ...]}}. Rationals are exact strings, ray indices are 1-based.

Exit codes: 0 success, 1 invalid input (JSON diagnostics on stdout),
2 mathematical check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import NoReturn, Optional, Sequence

from .family import (
    NormalizedEnumeration,
    ReductorSet,
    bounds_check,
    canonical_family,
    check_reductor,
    enumerate_normalized,
    equivalence_witness,
    lambda_shift,
    maximal_shift_family,
    quiver,
    quiver_to_dot,
    reductor_piece,
    reductor_set_from_json,
    reductor_set_to_json,
    reflect,
)
from .gdivisor import (
    CongruenceViolationError,
    GWeilDivisor,
    monomial_string,
    parse_character,
    weil_to_cartier,
)
from .group import Character, GroupData
from .toric import (
    Fan,
    build_lattice,
    discrepancy,
    junior_simplex,
    make_fan,
    validate_fan,
    x_valuation_on_X,
)


class InputError(Exception):
    """Invalid input; carries a JSON-serializable diagnostic payload."""

    def __init__(self, detail: str, **extra) -> None:
        super().__init__(detail)
        self.payload = {"detail": detail, **extra}


class MathCheckError(Exception):
    """A mathematical precondition or check failed; exits with code 2."""

    def __init__(self, detail: str, **extra) -> None:
        super().__init__(detail)
        self.payload = {"detail": detail, **extra}


class _Parser(argparse.ArgumentParser):
    # argparse would exit(2) on bad arguments; route through InputError so
    # all invalid input exits 1 with JSON diagnostics
    def error(self, message: str) -> NoReturn:
        raise InputError(f"argument error: {message}")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse_group(obj) -> GroupData:
    if not isinstance(obj, dict):
        raise InputError("problem file needs a 'group' object")
    try:
        if "cyclic" in obj:
            spec = obj["cyclic"]
            group = GroupData.cyclic(
                int(spec["order"]), [int(w) for w in spec["weights"]]
            )
        elif "abelian" in obj:
            spec = obj["abelian"]
            group = GroupData(
                tuple(int(d) for d in spec["orders"]),
                tuple(tuple(int(w) for w in row)
                      for row in spec["weight_matrix"]),
            )
        else:
            raise InputError("group must be given as 'cyclic' or 'abelian'")
        group.validate()
        return group
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid group: {exc}") from exc


def load_problem(path: str):
    """Parse and validate a problem file into (group, fan, report)."""
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise InputError("problem file must be a JSON object")
    group = _parse_group(obj.get("group"))
    fan_spec = obj.get("fan")
    if not isinstance(fan_spec, dict):
        raise InputError("problem file needs a 'fan' object")
    try:
        lattice = build_lattice(group)
        rays = [
            [Fraction(str(x)) for x in vec]
            for vec in fan_spec.get("rays", [])
        ]
        if any(len(vec) != group.dim for vec in rays):
            raise ValueError(f"every ray needs {group.dim} coordinates")
        cones = [list(map(int, c)) for c in fan_spec.get("cones", [])]
        fan = make_fan(lattice, rays, cones)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid fan: {exc}") from exc
    report = validate_fan(fan)
    if not report.passed:
        raise InputError("fan failed validation", report=report.to_json())
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return group, fan, report


def _load_set(path: str, fan: Fan, group: GroupData) -> ReductorSet:
    obj = _load_json(path)
    try:
        return reductor_set_from_json(obj, fan, group)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid reductor set in {path}: {exc}") from exc


def _parse_char_arg(raw: str, group: GroupData) -> Character:
    try:
        parts = [int(p) for p in raw.split(",")]
    except ValueError as exc:
        raise InputError(f"cannot parse character {raw!r}") from exc
    value = parts[0] if len(parts) == 1 and len(group.orders) == 1 else parts
    try:
        return parse_character(value, group)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _pick_cone(fan: Fan, index: int):
    if not 1 <= index <= len(fan.cones):
        raise InputError(
            f"cone index {index} out of range 1..{len(fan.cones)}"
        )
    return fan.cones[index - 1]


def _require_reductor(family: ReductorSet, fan: Fan, group: GroupData,
                      which: str = "set") -> None:
    report = check_reductor(family, fan, group)
    if not report.passed:
        raise MathCheckError(
            f"{which} is not a reductor set", report=report.to_json()
        )


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _vec_str(vec) -> str:
    return "(" + ", ".join(str(x) for x in vec) + ")"


def _set_table(family: ReductorSet, fan: Fan) -> str:
    header = ["chi"] + [ray.name for ray in fan.rays]
    rows = [header]
    for divisor in family.divisors:
        rows.append(
            [divisor.character.name]
            + [str(divisor.coefficient(r.label)) for r in fan.rays]
        )
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [
            cell.rjust(w) for cell, w in zip(row[1:], widths[1:])
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def cmd_info(args) -> int:
    group, fan, report = load_problem(args.input)
    lattice = fan.lattice
    junior = junior_simplex(lattice)
    valuations = [
        x_valuation_on_X(lattice, axis)
        for axis in range(1, group.dim + 1)
    ]
    if args.json:
        _emit({
            "group": {
                "order": group.order,
                "dim": group.dim,
                "cyclic_orders": list(group.orders),
                "weights": [list(row) for row in group.weights],
                "special_linear": group.is_special_linear,
            },
            "lattice": {
                "index": lattice.index,
                "basis": [[str(x) for x in row] for row in lattice.basis],
            },
            "junior_simplex": [[str(x) for x in v] for v in junior],
            "fan": {
                "rays": {
                    ray.name: [str(x) for x in ray.vector]
                    for ray in fan.rays
                },
                "cones": [list(c.labels) for c in fan.cones],
                "discrepancies": {
                    ray.name: str(discrepancy(ray.vector))
                    for ray in fan.rays
                },
                "crepant": report.crepant,
            },
            "axis_valuations": [str(v) for v in valuations],
            "validation": report.to_json(),
        })
        return 0
    print(f"group: |G| = {group.order}, n = {group.dim}, "
          f"factor orders {_vec_str(group.orders)}, "
          f"weights {[list(r) for r in group.weights]}")
    print(f"lattice index: {lattice.index}")
    print(f"junior points: {len(junior)}")
    for v in junior:
        print(f"  {_vec_str(v)}")
    print(f"rays: {len(fan.rays)}, maximal cones: {len(fan.cones)}")
    for ray in fan.rays:
        print(f"  {ray.name} = {_vec_str(ray.vector)}  "
              f"discrepancy {discrepancy(ray.vector)}")
    print(f"crepant: {str(report.crepant).lower()}")
    print("axis valuations: " + ", ".join(
        f"x{i + 1} -> {v}" for i, v in enumerate(valuations)
    ))
    coverage = {True: "verified", False: "FAILED", None: "not verified"}
    print(f"fan validation: {'passed' if report.passed else 'FAILED'} "
          f"(coverage {coverage[report.coverage]})")
    return 0


def _cmd_family(args, builder) -> int:
    group, fan, _ = load_problem(args.input)
    family = builder(fan, group)
    if args.json:
        _emit(reductor_set_to_json(family))
    else:
        print(_set_table(family, fan))
    return 0


def cmd_canonical(args) -> int:
    return _cmd_family(args, canonical_family)


def cmd_maxshift(args) -> int:
    return _cmd_family(args, maximal_shift_family)


def cmd_enumerate(args) -> int:
    group, fan, _ = load_problem(args.input)
    enumeration: NormalizedEnumeration = enumerate_normalized(fan, group)
    if args.count_only:
        print(enumeration.count)
        return 0
    if args.per_ray:
        _emit({
            "count": enumeration.count,
            "per_ray": [t.to_json() for t in enumeration.tables],
        })
        return 0
    for family in enumeration.sets(limit=args.limit):
        print(json.dumps(reductor_set_to_json(family)))
    return 0


def cmd_check(args) -> int:
    group, fan, _ = load_problem(args.input)
    family = _load_set(args.set, fan, group)
    reductor = check_reductor(family, fan, group)
    bounds = bounds_check(family, fan, group)
    payload = {
        "reductor": reductor.to_json(),
        "bounds": bounds.to_json(),
        "normalized": family.is_normalized,
    }
    # a non-normalized set only has to satisfy the reductor condition; the
    # shift envelope applies to normalized representatives
    failed = not reductor.passed or (
        family.is_normalized and not bounds.passed
    )
    payload["passed"] = not failed
    _emit(payload)
    return 2 if failed else 0


def cmd_piece(args) -> int:
    group, fan, _ = load_problem(args.input)
    family = _load_set(args.set, fan, group)
    _require_reductor(family, fan, group)
    cone = _pick_cone(fan, args.cone)
    try:
        piece = reductor_piece(family, cone, fan, group)
    except CongruenceViolationError as exc:
        raise MathCheckError(str(exc)) from exc
    _emit(piece.to_json())
    return 0


def cmd_quiver(args) -> int:
    group, fan, _ = load_problem(args.input)
    family = _load_set(args.set, fan, group)
    _require_reductor(family, fan, group)
    cone = _pick_cone(fan, args.cone)
    try:
        rep = quiver(family, cone, fan, group)
    except CongruenceViolationError as exc:
        raise MathCheckError(str(exc)) from exc
    if args.dot:
        sys.stdout.write(quiver_to_dot(rep))
    else:
        _emit(rep.to_json())
    return 0


def cmd_cartier(args) -> int:
    group, fan, _ = load_problem(args.input)
    character = _parse_char_arg(args.char, group)
    obj = _load_json(args.coeffs)
    if not isinstance(obj, dict):
        raise InputError("coefficient file must be a JSON object")
    try:
        divisor = GWeilDivisor.from_map(character, {
            int(str(key).lstrip("E")): Fraction(str(value))
            for key, value in obj.items()
        })
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid coefficients: {exc}") from exc
    unknown = set(divisor.support) - {r.label for r in fan.rays}
    if unknown:
        raise InputError(f"unknown ray labels {sorted(unknown)}")
    try:
        cartier = weil_to_cartier(divisor, fan, group)
    except CongruenceViolationError as exc:
        raise MathCheckError(str(exc)) from exc
    _emit({
        "char": character.to_json(),
        "per_cone": [
            {
                "cone": k,
                "rays": list(cone.labels),
                "exponent": list(m),
                "monomial": monomial_string(m),
            }
            for k, (cone, m) in enumerate(
                zip(fan.cones, cartier.exponents), start=1
            )
        ],
    })
    return 0


def cmd_shift(args) -> int:
    group, fan, _ = load_problem(args.input)
    family = _load_set(args.set, fan, group)
    lam = _parse_char_arg(args.lam, group)
    _require_reductor(family, fan, group)
    if not family.is_normalized:
        raise MathCheckError("shift expects a normalized set")
    _emit(reductor_set_to_json(lambda_shift(family, lam)))
    return 0


def cmd_reflect(args) -> int:
    group, fan, _ = load_problem(args.input)
    family = _load_set(args.set, fan, group)
    _require_reductor(family, fan, group)
    _emit(reductor_set_to_json(reflect(family)))
    return 0


def cmd_equiv(args) -> int:
    group, fan, _ = load_problem(args.input)
    if len(args.set) != 2:
        raise InputError("equiv needs exactly two --set files")
    first = _load_set(args.set[0], fan, group)
    second = _load_set(args.set[1], fan, group)
    _require_reductor(first, fan, group, which=args.set[0])
    _require_reductor(second, fan, group, which=args.set[1])
    result = equivalence_witness(first, second, fan, group)
    _emit(result.to_json())
    return 0 if result.equivalent else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gcon",
        description="Classify deformation families of the generic orbit on "
                    "a toric resolution of an abelian quotient singularity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--input", required=True,
                       help="problem file (JSON)")
        p.set_defaults(func=func)
        return p

    p = add("info", cmd_info, help="lattice, junior simplex, ramification")
    p.add_argument("--json", action="store_true")

    p = add("canonical", cmd_canonical,
            help="fractional-valuation family")
    p.add_argument("--json", action="store_true")

    p = add("maxshift", cmd_maxshift, help="maximal-shift family")
    p.add_argument("--json", action="store_true")

    p = add("enumerate", cmd_enumerate,
            help="stream all normalized reductor sets")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--per-ray", action="store_true", dest="per_ray")
    mode.add_argument("--count-only", action="store_true", dest="count_only")
    p.add_argument("--limit", type=int, default=None)

    p = add("check", cmd_check, help="reductor condition + shift bounds")
    p.add_argument("--set", required=True)

    p = add("piece", cmd_piece, help="chart monomial generators")
    p.add_argument("--cone", type=int, required=True)
    p.add_argument("--set", required=True)

    p = add("quiver", cmd_quiver, help="labeled McKay quiver on a chart")
    p.add_argument("--cone", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--dot", action="store_true")

    p = add("cartier", cmd_cartier, help="per-cone Laurent exponents")
    p.add_argument("--char", required=True)
    p.add_argument("--coeffs", required=True)

    p = add("shift", cmd_shift, help="tensor a normalized set by a character")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--set", required=True)

    p = add("reflect", cmd_reflect, help="dual family -D_{chi^-1}")
    p.add_argument("--set", required=True)

    p = add("equiv", cmd_equiv,
            help="common-difference witness between two sets")
    p.add_argument("--set", action="append", required=True,
                   help="give twice: --set A --set B")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": "invalid input", **exc.payload}, indent=2))
        return 1
    except MathCheckError as exc:
        print(json.dumps({"error": "check failed", **exc.payload}, indent=2))
        return 2


def console_main() -> NoReturn:
    sys.exit(main())
