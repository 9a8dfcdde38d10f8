"""Rational Weil divisors twisted by a character, and their Cartier form.

A chi-divisor assigns to each fan ray a rational coefficient congruent mod Z
to the fractional valuation of weight-chi monomials along that ray. On a
smooth toric chart such a divisor is cut out by a single Laurent monomial,
and the per-chart exponents glue along shared rays; converting back and
forth between the two presentations is exact linear algebra over the cone's
dual basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .exact import frac
from .group import Character, GroupData
from .toric import Fan, dual_basis, pairing


class CongruenceViolationError(ValueError):
    """Divisor coefficients incompatible with their character's valuations."""


class GluingViolationError(ValueError):
    """Per-cone exponents that disagree along a shared ray."""


def monomial_string(exponent: Sequence[int]) -> str:
    """Human form of a Laurent exponent: (1,1,-1) -> 'xy/z'.

    Uses x, y, z for up to three variables, x1..xn beyond that.
    """
    n = len(exponent)
    if n <= 3:
        names = ["x", "y", "z"][:n]
        joiner = ""
    else:
        names = [f"x{i}" for i in range(1, n + 1)]
        joiner = "*"

    def side(pairs: list[tuple[str, int]]) -> str:
        return joiner.join(
            name if e == 1 else f"{name}^{e}" for name, e in pairs
        )

    num = [(name, e) for name, e in zip(names, exponent) if e > 0]
    den = [(name, -e) for name, e in zip(names, exponent) if e < 0]
    if not num and not den:
        return "1"
    result = side(num) if num else "1"
    if den:
        result += "/" + side(den)
    return result


@dataclass(frozen=True)
class GWeilDivisor:
    """A character plus rational ray coefficients (zeros omitted).

    entries are (ray label, coefficient) pairs, sorted by label; the divisor
    is valid on a fan when each coefficient is congruent mod Z to the
    fractional valuation of its character along that ray.
    """

    character: Character
    entries: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for label, c in self.entries:
            if type(c) is not Fraction:
                c = Fraction(c)
            if c:
                cleaned.append((int(label), c))
        cleaned.sort()
        labels = [label for label, _ in cleaned]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate ray label in divisor")
        object.__setattr__(self, "entries", tuple(cleaned))

    @classmethod
    def from_map(cls, character: Character,
                 coeffs: Mapping[int, Fraction]) -> "GWeilDivisor":
        return cls(character, tuple(coeffs.items()))

    def coefficient(self, label: int) -> Fraction:
        for lab, c in self.entries:
            if lab == label:
                return c
        return Fraction(0)

    def as_map(self) -> dict[int, Fraction]:
        return dict(self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(label for label, _ in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "GWeilDivisor") -> "GWeilDivisor":
        coeffs = self.as_map()
        for label, c in other.entries:
            coeffs[label] = coeffs.get(label, Fraction(0)) + c
        return GWeilDivisor.from_map(self.character * other.character, coeffs)

    def __neg__(self) -> "GWeilDivisor":
        return GWeilDivisor(
            self.character.inverse(),
            tuple((label, -c) for label, c in self.entries),
        )

    def __sub__(self, other: "GWeilDivisor") -> "GWeilDivisor":
        coeffs = self.as_map()
        for label, c in other.entries:
            coeffs[label] = coeffs.get(label, Fraction(0)) - c
        return GWeilDivisor.from_map(
            self.character * other.character.inverse(), coeffs
        )


@dataclass(frozen=True)
class GCartierDivisor:
    """Per-cone Laurent exponents, aligned with the fan's cone order."""

    character: Character
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "exponents",
            tuple(tuple(int(x) for x in m) for m in self.exponents),
        )


@lru_cache(maxsize=None)
def frac_val(ray, char: Character, group: GroupData) -> Fraction:
    """Fractional valuation of weight-char monomials along the ray.

    Independent of the representative monomial: two weight-char exponents
    differ by an invariant one, which pairs integrally with lattice points.
    """
    return frac(pairing(ray, group.representative_monomial(char)))


def principal_divisor(m: Sequence[int], fan: Fan,
                      group: GroupData) -> GWeilDivisor:
    """The divisor of the monomial x^m on the fan's rays."""
    return GWeilDivisor.from_map(
        group.weight(m),
        {ray.label: pairing(ray, m) for ray in fan.rays},
    )


def congruence_violations(divisor: GWeilDivisor, fan: Fan,
                          group: GroupData) -> list[int]:
    """Labels of fan rays where coefficient - frac_val is not an integer."""
    bad = []
    for ray in fan.rays:
        delta = divisor.coefficient(ray.label) - frac_val(
            ray, divisor.character, group
        )
        if delta.denominator != 1:
            bad.append(ray.label)
    unknown = {label for label, _ in divisor.entries} - {
        r.label for r in fan.rays
    }
    bad.extend(sorted(unknown))
    return bad


def weil_to_cartier(divisor: GWeilDivisor, fan: Fan,
                    group: GroupData) -> GCartierDivisor:
    """Solve for the per-cone Laurent exponent realizing the coefficients.

    On a basic cone the exponent is the coefficient-weighted sum of the dual
    basis; it is integral exactly when the congruence invariant holds on the
    cone's rays.
    """
    exponents = []
    for k, cone in enumerate(fan.cones, start=1):
        duals = dual_basis(cone, fan.lattice)
        n = fan.dim
        m = [Fraction(0)] * n
        for ray, dual in zip(cone.rays, duals):
            c = divisor.coefficient(ray.label)
            if c:
                m = [a + c * d for a, d in zip(m, dual)]
        if any(x.denominator != 1 for x in m):
            bad = congruence_violations(divisor, fan, group)
            raise CongruenceViolationError(
                f"coefficients violate the congruence invariant on rays "
                f"{bad or cone.labels}; cone {k} exponent is non-integral"
            )
        exponent = tuple(int(x) for x in m)
        if group.weight(exponent) != divisor.character:
            raise CongruenceViolationError(
                f"cone {k} exponent {exponent} has weight "
                f"{group.weight(exponent).name}, expected "
                f"{divisor.character.name}"
            )
        exponents.append(exponent)
    return GCartierDivisor(divisor.character, tuple(exponents))


def gluing_violations(cartier: GCartierDivisor, fan: Fan) -> list[int]:
    """Ray labels whose valuation differs between two cones containing them."""
    bad = []
    for ray in fan.rays:
        values = {
            pairing(ray, cartier.exponents[k - 1])
            for k, _ in fan.cones_with_ray(ray.label)
        }
        if len(values) > 1:
            bad.append(ray.label)
    return bad


def cartier_to_weil(cartier: GCartierDivisor, fan: Fan,
                    group: GroupData) -> GWeilDivisor:
    """Read off ray coefficients from any cone containing each ray."""
    if len(cartier.exponents) != len(fan.cones):
        raise ValueError("one exponent per maximal cone required")
    for k, m in enumerate(cartier.exponents, start=1):
        if group.weight(m) != cartier.character:
            raise CongruenceViolationError(
                f"cone {k} exponent {m} does not have weight "
                f"{cartier.character.name}"
            )
    bad = gluing_violations(cartier, fan)
    if bad:
        raise GluingViolationError(
            f"exponents disagree along shared rays {bad}"
        )
    coeffs = {}
    for ray in fan.rays:
        containing = fan.cones_with_ray(ray.label)
        if containing:
            k, _ = containing[0]
            coeffs[ray.label] = pairing(ray, cartier.exponents[k - 1])
    return GWeilDivisor.from_map(cartier.character, coeffs)


def linear_equivalence_witness(
    a: GWeilDivisor, b: GWeilDivisor, fan: Fan, group: GroupData
) -> Optional[tuple[int, ...]]:
    """A monomial exponent m with div(x^m) = b - a on all fan rays, or None.

    The fan's rays span the ambient space, so the witness is unique if it
    exists: it is pinned down by the first cone's dual basis and then checked
    against every ray and the required weight.
    """
    target_char = b.character * a.character.inverse()
    diff = {
        ray.label: b.coefficient(ray.label) - a.coefficient(ray.label)
        for ray in fan.rays
    }
    cone = fan.cones[0]
    duals = dual_basis(cone, fan.lattice)
    m = [Fraction(0)] * fan.dim
    for ray, dual in zip(cone.rays, duals):
        c = diff[ray.label]
        if c:
            m = [x + c * d for x, d in zip(m, dual)]
    if any(x.denominator != 1 for x in m):
        return None
    candidate = tuple(int(x) for x in m)
    if group.weight(candidate) != target_char:
        return None
    for ray in fan.rays:
        if pairing(ray, candidate) != diff[ray.label]:
            return None
    return candidate


def divisor_to_json(divisor: GWeilDivisor) -> dict:
    return {
        "char": divisor.character.to_json(),
        "coeffs": {f"E{label}": str(c) for label, c in divisor.entries},
    }


def parse_character(raw, group: GroupData) -> Character:
    """Accept an int (cyclic groups) or a residue list."""
    if isinstance(raw, bool):
        raise ValueError("character must be an integer or residue list")
    if isinstance(raw, int):
        if len(group.orders) != 1:
            raise ValueError(
                "integer character shorthand only works for cyclic groups"
            )
        return group.character((raw,))
    if isinstance(raw, (list, tuple)):
        if len(raw) != len(group.orders):
            raise ValueError(
                f"character needs {len(group.orders)} residues, got {len(raw)}"
            )
        return group.character(tuple(int(x) for x in raw))
    raise ValueError(f"cannot parse character from {raw!r}")


def divisor_from_json(obj: Mapping, fan: Fan,
                      group: GroupData) -> GWeilDivisor:
    if not isinstance(obj, Mapping) or "char" not in obj:
        raise ValueError("divisor object needs 'char' and 'coeffs'")
    character = parse_character(obj["char"], group)
    known = {f"E{r.label}": r.label for r in fan.rays}
    coeffs = {}
    for key, value in dict(obj.get("coeffs", {})).items():
        if key not in known:
            raise ValueError(f"unknown ray label {key!r}")
        coeffs[known[key]] = Fraction(str(value))
    return GWeilDivisor.from_map(character, coeffs)
