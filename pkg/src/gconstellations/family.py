"""Families of G-constellations as reductor sets, and their classification.

A reductor set picks one chi-divisor per character such that multiplication
by any coordinate stays regular: q_{chi,i} + e_i(x_j) - q_{chi*w(x_j),i} >= 0
for every ray e_i and coordinate x_j. Checking the n coordinates suffices;
general monomials follow by telescoping.

The inequalities couple coefficients at a single ray only, so normalized
sets factor as a Cartesian product of finite per-ray tables. The canonical
family (fractional valuations) and the maximal-shift family (cheapest
weight-chi monomial per ray) are distinguished members; every normalized set
sits coefficientwise between the maximal shifts and their reflection, which
is what makes the tables finite.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterator, Mapping, Optional

from .gdivisor import (
    CongruenceViolationError,
    GWeilDivisor,
    congruence_violations,
    divisor_from_json,
    divisor_to_json,
    frac_val,
    linear_equivalence_witness,
    monomial_string,
)
from .group import Character, GroupData
from .toric import Cone, Fan, Ray, dual_basis, pairing


@dataclass(frozen=True)
class ReductorSet:
    """One chi-divisor per character, sorted by residue tuple."""

    divisors: tuple[GWeilDivisor, ...]

    @classmethod
    def from_divisors(cls, divisors) -> "ReductorSet":
        ordered = tuple(
            sorted(divisors, key=lambda d: d.character.residues)
        )
        return cls(ordered)

    def divisor(self, char: Character) -> GWeilDivisor:
        for d in self.divisors:
            if d.character == char:
                return d
        raise KeyError(f"no divisor for {char.name}")

    @property
    def characters(self) -> tuple[Character, ...]:
        return tuple(d.character for d in self.divisors)

    @property
    def is_normalized(self) -> bool:
        return all(
            not d.character.is_trivial or d.is_zero for d in self.divisors
        )


@dataclass(frozen=True)
class ReductorReport:
    """Outcome of check_reductor; empty tuples everywhere means a pass."""

    structure_errors: tuple[str, ...]
    congruence_violations: tuple[tuple[Character, int], ...]
    condition_violations: tuple[tuple[Character, int, int], ...]
    # condition triples are (character, coordinate index j (1-based), ray label)

    @property
    def passed(self) -> bool:
        return not (
            self.structure_errors
            or self.congruence_violations
            or self.condition_violations
        )

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "structure_errors": list(self.structure_errors),
            "congruence_violations": [
                {"char": c.to_json(), "ray": f"E{label}"}
                for c, label in self.congruence_violations
            ],
            "condition_violations": [
                {"char": c.to_json(), "coordinate": j, "ray": f"E{label}"}
                for c, j, label in self.condition_violations
            ],
        }


def check_reductor(family: ReductorSet, fan: Fan,
                   group: GroupData) -> ReductorReport:
    """Verify structure, congruences and the multiplication inequalities."""
    structure = []
    expected = group.characters()
    chars = list(family.characters)
    if chars != expected:
        structure.append(
            "need exactly one divisor per character, sorted by residues"
        )
        return ReductorReport(tuple(structure), (), ())

    congruence = []
    for divisor in family.divisors:
        for label in congruence_violations(divisor, fan, group):
            congruence.append((divisor.character, label))

    condition = []
    gens = [group.generator_character(j) for j in range(group.dim)]
    index_of = {c: i for i, c in enumerate(expected)}
    targets = [
        [index_of[char * gen] for gen in gens] for char in expected
    ]
    coeff_maps = [d.as_map() for d in family.divisors]
    zero = Fraction(0)
    for ray in fan.rays:
        label = ray.label
        costs = ray.vector
        q = [cm.get(label, zero) for cm in coeff_maps]
        for i, char in enumerate(expected):
            row = targets[i]
            for j in range(group.dim):
                if q[i] + costs[j] - q[row[j]] < 0:
                    condition.append((char, j + 1, label))
    return ReductorReport((), tuple(congruence), tuple(condition))


def canonical_family(fan: Fan, group: GroupData) -> ReductorSet:
    """The fractional-valuation family: D_chi = sum_i v(E_i, chi) E_i."""
    divisors = []
    for char in group.characters():
        coeffs = {
            ray.label: frac_val(ray, char, group) for ray in fan.rays
        }
        divisors.append(GWeilDivisor.from_map(char, coeffs))
    return ReductorSet(tuple(divisors))


@lru_cache(maxsize=None)
def maximal_shift_values(ray: Ray, group: GroupData) -> dict[Character, Fraction]:
    """Cheapest valuation along the ray of a regular monomial per weight.

    Single-source shortest paths on the character group: one step per
    coordinate x_j, landing on char * weight(x_j) at cost e_i(u_j) >= 0.
    """
    gens = [
        (group.generator_character(j), ray.vector[j])
        for j in range(group.dim)
    ]
    start = group.trivial_character
    dist: dict[Character, Fraction] = {start: Fraction(0)}
    heap: list[tuple[Fraction, tuple[int, ...], Character]] = [
        (Fraction(0), start.residues, start)
    ]
    while heap:
        d, _, char = heapq.heappop(heap)
        if d > dist[char]:
            continue
        for gen, cost in gens:
            nxt = char * gen
            nd = d + cost
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt.residues, nxt))
    return dist


def maximal_shift_family(fan: Fan, group: GroupData) -> ReductorSet:
    """The family of divisors of cheapest weight-chi monomials per ray."""
    per_ray = {
        ray.label: maximal_shift_values(ray, group) for ray in fan.rays
    }
    divisors = []
    for char in group.characters():
        coeffs = {
            ray.label: per_ray[ray.label][char] for ray in fan.rays
        }
        divisors.append(GWeilDivisor.from_map(char, coeffs))
    return ReductorSet(tuple(divisors))


@dataclass(frozen=True)
class PerRayTable:
    """All admissible coefficient rows at one ray, in lexicographic order."""

    ray_label: int
    characters: tuple[Character, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "ray": f"E{self.ray_label}",
            "characters": [c.to_json() for c in self.characters],
            "rows": [[str(q) for q in row] for row in self.rows],
        }


def enumerate_per_ray(ray: Ray, group: GroupData, fan: Optional[Fan] = None) -> PerRayTable:
    """Depth-first search over the finite per-ray coefficient grid.

    Candidates for q_chi run through the congruence class of the fractional
    valuation inside [-M(chi^-1), M(chi)] in unit steps; the trivial
    character is pinned to 0, which the bounds enforce on their own. Partial
    assignments are pruned against every inequality whose two endpoints are
    already assigned, and rows come out in lexicographic order.

    The fan argument is accepted for interface symmetry and ignored: the
    constraint system depends only on the ray vector and the group.
    """
    chars = group.characters()
    shifts = maximal_shift_values(ray, group)
    index_of = {c: i for i, c in enumerate(chars)}
    count = len(chars)

    candidates: list[list[Fraction]] = []
    for char in chars:
        high = shifts[char]
        low = -shifts[char.inverse()]
        span = high - low
        assert span.denominator == 1, "bounds must be congruent"
        candidates.append([low + k for k in range(int(span) + 1)])

    # edges (source index, target index, step cost), grouped by the larger
    # endpoint so each is checked as soon as both ends are assigned
    pending: list[list[tuple[int, int, Fraction]]] = [[] for _ in chars]
    for i, char in enumerate(chars):
        for j in range(group.dim):
            target = index_of[char * group.generator_character(j)]
            cost = ray.vector[j]
            pending[max(i, target)].append((i, target, cost))

    rows: list[tuple[Fraction, ...]] = []
    assignment: list[Fraction] = [Fraction(0)] * count

    def extend(position: int) -> None:
        if position == count:
            rows.append(tuple(assignment))
            return
        for value in candidates[position]:
            assignment[position] = value
            if all(
                assignment[s] + cost - assignment[t] >= 0
                for s, t, cost in pending[position]
            ):
                extend(position + 1)

    extend(0)
    return PerRayTable(ray.label, tuple(chars), tuple(rows))


@dataclass(frozen=True)
class NormalizedEnumeration:
    """Per-ray tables plus the total count; iterate to stream the sets."""

    fan: Fan
    group: GroupData
    tables: tuple[PerRayTable, ...]
    count: int

    def sets(self, limit: Optional[int] = None) -> Iterator[ReductorSet]:
        chars = self.group.characters()
        emitted = 0
        for combo in itertools.product(*(t.rows for t in self.tables)):
            if limit is not None and emitted >= limit:
                return
            divisors = []
            for c, char in enumerate(chars):
                coeffs = {
                    table.ray_label: row[c]
                    for table, row in zip(self.tables, combo)
                }
                divisors.append(GWeilDivisor.from_map(char, coeffs))
            emitted += 1
            yield ReductorSet(tuple(divisors))

    def __iter__(self) -> Iterator[ReductorSet]:
        return self.sets()


def enumerate_normalized(fan: Fan, group: GroupData) -> NormalizedEnumeration:
    """Complete classification: Cartesian product of the per-ray tables."""
    tables = tuple(enumerate_per_ray(ray, group) for ray in fan.rays)
    count = prod(len(t.rows) for t in tables)
    return NormalizedEnumeration(fan, group, tables, count)


def normalize(family: ReductorSet) -> ReductorSet:
    """Subtract the trivial-character divisor from every member."""
    base = next(d for d in family.divisors if d.character.is_trivial)
    if base.is_zero:
        return family
    return ReductorSet(tuple(d - base for d in family.divisors))


def lambda_shift(family: ReductorSet, lam: Character) -> ReductorSet:
    """Tensor the family by the lambda eigenspace: D'_{chi*lam} = D_chi - D_{lam^-1}."""
    if not family.is_normalized:
        raise ValueError("lambda_shift expects a normalized set")
    by_char = {d.character: d for d in family.divisors}
    lam_inv_char = lam.inverse()
    lam_inv = family.divisor(lam_inv_char)
    divisors = [
        by_char[char * lam_inv_char] - lam_inv
        for char in family.characters
    ]
    return ReductorSet.from_divisors(divisors)


def reflect(family: ReductorSet) -> ReductorSet:
    """The dual family D'_chi = -D_{chi^-1}; an involution."""
    by_char = {d.character: d for d in family.divisors}
    divisors = [
        -by_char[char.inverse()] for char in family.characters
    ]
    return ReductorSet.from_divisors(divisors)


@dataclass(frozen=True)
class BoundsReport:
    """Coefficientwise comparison against the maximal-shift envelope."""

    normalized: bool
    violations: tuple[tuple[Character, int, str], ...]
    # (character, ray label, which bound failed: 'upper' or 'lower')

    @property
    def passed(self) -> bool:
        return self.normalized and not self.violations

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "normalized": self.normalized,
            "violations": [
                {"char": c.to_json(), "ray": f"E{label}", "bound": side}
                for c, label, side in self.violations
            ],
        }


def bounds_check(family: ReductorSet, fan: Fan,
                 group: GroupData) -> BoundsReport:
    """Check M_chi >= D_chi >= -M_{chi^-1} coefficientwise (normalized sets)."""
    if not family.is_normalized:
        return BoundsReport(False, ())
    violations = []
    for ray in fan.rays:
        shifts = maximal_shift_values(ray, group)
        for divisor in family.divisors:
            q = divisor.coefficient(ray.label)
            char = divisor.character
            if q > shifts[char]:
                violations.append((char, ray.label, "upper"))
            if q < -shifts[char.inverse()]:
                violations.append((char, ray.label, "lower"))
    return BoundsReport(True, tuple(violations))


@dataclass(frozen=True)
class ReductorPiece:
    """Per-chart monomial generators of a family, one exponent per character."""

    cone: Cone
    characters: tuple[Character, ...]
    exponents: tuple[tuple[int, ...], ...]

    def exponent(self, char: Character) -> tuple[int, ...]:
        return self.exponents[self.characters.index(char)]

    def monomials(self) -> tuple[str, ...]:
        return tuple(monomial_string(m) for m in self.exponents)

    def to_json(self) -> dict:
        return {
            "cone": list(self.cone.labels),
            "generators": [
                {
                    "char": c.to_json(),
                    "exponent": list(m),
                    "monomial": monomial_string(m),
                }
                for c, m in zip(self.characters, self.exponents)
            ],
        }


def reductor_piece(family: ReductorSet, cone: Cone, fan: Fan,
                   group: GroupData) -> ReductorPiece:
    """Chart generators p_chi = sum of coefficient * dual basis over the cone."""
    duals = dual_basis(cone, fan.lattice)
    chars = []
    exponents = []
    for divisor in family.divisors:
        m = [Fraction(0)] * fan.dim
        for ray, dual in zip(cone.rays, duals):
            c = divisor.coefficient(ray.label)
            if c:
                m = [a + c * d for a, d in zip(m, dual)]
        if any(x.denominator != 1 for x in m):
            raise CongruenceViolationError(
                f"{divisor.character.name}: chart exponent is non-integral "
                f"on cone {cone.labels}"
            )
        exponent = tuple(int(x) for x in m)
        if group.weight(exponent) != divisor.character:
            raise CongruenceViolationError(
                f"chart exponent {exponent} has wrong weight for "
                f"{divisor.character.name}"
            )
        chars.append(divisor.character)
        exponents.append(exponent)
    return ReductorPiece(cone, tuple(chars), tuple(exponents))


@dataclass(frozen=True)
class QuiverArrow:
    source: Character
    target: Character
    coordinate: int            # 1-based index of the acting coordinate
    exponent: tuple[int, ...]  # Laurent exponent of the arrow label
    cone_coordinates: tuple[Fraction, ...]  # label in the cone's dual basis

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "coordinate": self.coordinate,
            "exponent": list(self.exponent),
            "monomial": monomial_string(self.exponent),
            "cone_coordinates": [str(c) for c in self.cone_coordinates],
        }


@dataclass(frozen=True)
class QuiverRep:
    """The McKay quiver of the family on one chart: |G| vertices, n arrows
    out of each, labeled by invariant monomials with nonnegative chart
    coordinates."""

    cone: Cone
    vertices: tuple[Character, ...]
    arrows: tuple[QuiverArrow, ...]

    def to_json(self) -> dict:
        return {
            "cone": list(self.cone.labels),
            "vertices": [c.to_json() for c in self.vertices],
            "arrows": [a.to_json() for a in self.arrows],
        }


def quiver(family: ReductorSet, cone: Cone, fan: Fan,
           group: GroupData) -> QuiverRep:
    """Arrows chi -> chi * weight(x_j) labeled p_chi + u_j - p_target."""
    piece = reductor_piece(family, cone, fan, group)
    arrows = []
    for char, exponent in zip(piece.characters, piece.exponents):
        for j in range(group.dim):
            gen = group.generator_character(j)
            target = char * gen
            target_exp = piece.exponent(target)
            label = tuple(
                e + int(i == j) - t
                for i, (e, t) in enumerate(zip(exponent, target_exp))
            )
            coords = tuple(pairing(ray, label) for ray in cone.rays)
            arrows.append(
                QuiverArrow(char, target, j + 1, label, coords)
            )
    return QuiverRep(cone, piece.characters, tuple(arrows))


def quiver_to_dot(rep: QuiverRep) -> str:
    """Deterministic DOT rendering, one digraph per chart."""
    lines = [
        "digraph mckay_quiver {",
        f'  label="chart {list(rep.cone.labels)}";',
        "  rankdir=LR;",
    ]
    for vertex in rep.vertices:
        lines.append(f'  "{vertex.name}";')
    coord_names = ["x", "y", "z"] if len(rep.cone.rays) <= 3 else None
    for arrow in rep.arrows:
        if coord_names:
            gen = coord_names[arrow.coordinate - 1]
        else:
            gen = f"x{arrow.coordinate}"
        coords = ",".join(str(c) for c in arrow.cone_coordinates)
        lines.append(
            f'  "{arrow.source.name}" -> "{arrow.target.name}" '
            f'[label="{gen}: {monomial_string(arrow.exponent)} ({coords})"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EquivalenceResult:
    """Common difference of two families, when one exists."""

    difference: Optional[GWeilDivisor]
    monomial: Optional[tuple[int, ...]]
    isomorphic: bool

    @property
    def equivalent(self) -> bool:
        return self.difference is not None

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "difference": (
                divisor_to_json(self.difference)
                if self.difference is not None else None
            ),
            "isomorphic": self.isomorphic,
            "monomial": list(self.monomial) if self.monomial else None,
        }


def equivalence_witness(a: ReductorSet, b: ReductorSet, fan: Fan,
                        group: GroupData) -> EquivalenceResult:
    """The two families differ by tensoring iff D'_chi - D_chi is constant.

    When the constant divisor is principal (monomial witness) the families
    are isomorphic as sheaves of modules, not just equivalent.
    """
    if a.characters != b.characters:
        raise ValueError("families live over different character groups")
    differences = [
        b.divisor(char) - a.divisor(char) for char in a.characters
    ]
    first = differences[0]
    if any(d.entries != first.entries for d in differences[1:]):
        return EquivalenceResult(None, None, False)
    zero = GWeilDivisor(group.trivial_character, ())
    witness = linear_equivalence_witness(zero, first, fan, group)
    return EquivalenceResult(first, witness, witness is not None)


def reductor_set_to_json(family: ReductorSet) -> dict:
    return {"divisors": [divisor_to_json(d) for d in family.divisors]}


def reductor_set_from_json(obj: Mapping, fan: Fan,
                           group: GroupData) -> ReductorSet:
    if not isinstance(obj, Mapping) or "divisors" not in obj:
        raise ValueError("reductor set object needs a 'divisors' list")
    divisors = [
        divisor_from_json(item, fan, group) for item in obj["divisors"]
    ]
    chars = [d.character for d in divisors]
    if len(set(chars)) != len(chars):
        raise ValueError("duplicate character in reductor set")
    return ReductorSet.from_divisors(divisors)
