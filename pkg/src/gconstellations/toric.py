"""Overlattices, fans of basic cones, dual bases and toric valuations.

The quotient construction embeds the dual of Z^n into an overlattice L with
index |G|. Exceptional divisor data lives on the rays of a fan of basic
cones inside the positive orthant of L; the valuation of a monomial x^m along
the divisor of a ray e is the plain dot product e(m).

Rays are stored in standard coordinates (denominators dividing |G|), so every
pairing is a direct dot product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .exact import (
    det,
    dot,
    frac,
    hermite_normal_form,
    invert,
    rational_lcm,
)
from .group import GroupData

Vector = tuple[Fraction, ...]


class NotBasicError(ValueError):
    """A cone whose rays do not form a lattice basis was used as a chart."""


def _vec(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class LatticeL:
    """An overlattice of the dual of Z^n, given by basis rows."""

    basis: tuple[Vector, ...]

    def __post_init__(self) -> None:
        basis = tuple(_vec(row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        d = det(basis)
        if d == 0:
            raise ValueError("lattice basis is singular")
        index = Fraction(1) / abs(d)
        if index.denominator != 1:
            raise ValueError(
                "basis does not generate an overlattice of the dual of Z^n "
                f"(1/|det| = {index} is not an integer)"
            )
        object.__setattr__(self, "_inverse", tuple(
            tuple(row) for row in invert(basis)
        ))
        object.__setattr__(self, "_index", int(index))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        """Index of the dual of Z^n inside this lattice (= |G|)."""
        return self._index  # type: ignore[attr-defined]

    @property
    def covolume(self) -> Fraction:
        return Fraction(1, self.index)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the basis rows."""
        inv = self._inverse  # type: ignore[attr-defined]
        w = _vec(v)
        return tuple(
            sum((w[i] * inv[i][j] for i in range(self.dim)), Fraction(0))
            for j in range(self.dim)
        )

    def contains(self, v: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def is_primitive(self, v: Sequence) -> bool:
        """True when v is in the lattice and no v/k (k >= 2) is."""
        coords = self.coordinates(v)
        if any(c.denominator != 1 for c in coords):
            return False
        return gcd(*(abs(int(c)) for c in coords)) == 1


def build_lattice(group: GroupData) -> LatticeL:
    """The overlattice generated by the dual of Z^n and the weight rows /d_j."""
    n = group.dim
    scale = lcm(*group.orders)
    generators = [[scale * int(i == j) for j in range(n)] for i in range(n)]
    for order, row in zip(group.orders, group.weights):
        generators.append([(scale // order) * w for w in row])
    reduced = hermite_normal_form(generators)
    if len(reduced) != n:
        raise ValueError("lattice generators do not span")  # unreachable
    lattice = LatticeL(tuple(
        tuple(Fraction(x, scale) for x in row) for row in reduced
    ))
    if lattice.index != group.order:
        raise ValueError(
            f"lattice index {lattice.index} != |G| = {group.order}; "
            "the weight map is not surjective"
        )
    return lattice


@dataclass(frozen=True)
class Ray:
    """A fan ray: primitive lattice generator of an exceptional divisor."""

    label: int
    vector: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", _vec(self.vector))

    @property
    def name(self) -> str:
        return f"E{self.label}"


@dataclass(frozen=True)
class Cone:
    """A simplicial cone spanned by n fan rays (a chart of the resolution)."""

    rays: tuple[Ray, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(r.label for r in self.rays)

    @property
    def matrix(self) -> tuple[Vector, ...]:
        return tuple(r.vector for r in self.rays)


@dataclass(frozen=True)
class Fan:
    """An overlattice together with rays and maximal basic cones."""

    lattice: LatticeL
    rays: tuple[Ray, ...]
    cones: tuple[Cone, ...]

    def __post_init__(self) -> None:
        labels = [r.label for r in self.rays]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate ray labels")
        known = {r.label: r for r in self.rays}
        for cone in self.cones:
            if len(cone.rays) != self.lattice.dim:
                raise ValueError(
                    f"cone {cone.labels} must have exactly "
                    f"{self.lattice.dim} rays"
                )
            for ray in cone.rays:
                if known.get(ray.label) != ray:
                    raise ValueError(f"cone uses unknown ray {ray.label}")

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def ray(self, label: int) -> Ray:
        for r in self.rays:
            if r.label == label:
                return r
        raise KeyError(f"no ray labeled {label}")

    def cones_with_ray(self, label: int) -> list[tuple[int, Cone]]:
        """(1-based cone index, cone) pairs containing the labeled ray."""
        return [
            (k + 1, cone)
            for k, cone in enumerate(self.cones)
            if label in cone.labels
        ]


def make_fan(
    lattice: LatticeL,
    ray_vectors: Sequence[Sequence],
    cone_indices: Sequence[Sequence[int]],
) -> Fan:
    """Assemble a Fan from raw vectors and 1-based ray index lists."""
    rays = tuple(
        Ray(i + 1, _vec(vec)) for i, vec in enumerate(ray_vectors)
    )
    by_label = {r.label: r for r in rays}
    cones = []
    for indices in cone_indices:
        try:
            cones.append(Cone(tuple(by_label[int(i)] for i in indices)))
        except KeyError as exc:
            raise ValueError(f"cone {list(indices)} references unknown ray "
                             f"{exc.args[0]}") from None
    return Fan(lattice, rays, tuple(cones))


def pairing(e, m: Sequence) -> Fraction:
    """Valuation of the monomial x^m along the divisor of ray e: the dot
    product e(m)."""
    vector = e.vector if isinstance(e, Ray) else e
    return dot(vector, m)


def dual_basis(cone: Cone, lattice: LatticeL) -> tuple[tuple[int, ...], ...]:
    """Integer vectors v_1..v_n with e_i(v_j) = delta_ij for the cone's rays.

    Exists exactly when the rays form a lattice basis (basic cone); then each
    v_j is an invariant-monomial exponent and the chart is smooth.
    """
    matrix = cone.matrix
    d = det(matrix)
    if abs(d) != lattice.covolume:
        raise NotBasicError(
            f"cone {cone.labels} is not basic: |det| = {abs(d)}, "
            f"expected {lattice.covolume}"
        )
    inverse = invert(matrix)
    duals = []
    for j in range(len(matrix)):
        column = [inverse[i][j] for i in range(len(matrix))]
        if any(c.denominator != 1 for c in column):
            raise NotBasicError(
                f"cone {cone.labels}: dual basis is not integral"
            )
        duals.append(tuple(int(c) for c in column))
    return tuple(duals)


def junior_simplex(lattice: LatticeL) -> tuple[Vector, ...]:
    """All lattice points with coordinates >= 0 summing to 1.

    Unit vectors come first, then the interior-wall points in ascending
    lexicographic order. These points index the crepant exceptional divisors.
    """
    n = lattice.dim
    units = [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    # close the basis rows under addition mod 1 to list L / dual(Z^n)
    seen: set[Vector] = {tuple(Fraction(0) for _ in range(n))}
    queue = [next(iter(seen))]
    gens = [tuple(frac(x) for x in row) for row in lattice.basis]
    while queue:
        current = queue.pop()
        for g in gens:
            candidate = tuple(frac(a + b) for a, b in zip(current, g))
            if candidate not in seen:
                seen.add(candidate)
                queue.append(candidate)
    interior = sorted(v for v in seen if sum(v) == 1)
    return tuple(units) + tuple(interior)


def discrepancy(v: Sequence) -> Fraction:
    """Coordinate sum minus 1; zero exactly on junior points."""
    return sum((Fraction(x) for x in v), Fraction(0)) - 1


def is_crepant(fan: Fan) -> bool:
    """True when the fan's rays are exactly the junior points."""
    return {r.vector for r in fan.rays} == set(junior_simplex(fan.lattice))


def x_valuation_on_X(lattice: LatticeL, axis: int) -> Fraction:
    """Valuation of the coordinate x_axis along the image of its hyperplane.

    axis is 1-based. Returns the least c > 0 with c * (unit vector) in the
    lattice; values below 1 witness ramification of the quotient map over
    that hyperplane.
    """
    if not 1 <= axis <= lattice.dim:
        raise ValueError(f"axis must be in 1..{lattice.dim}")
    inv = lattice._inverse  # type: ignore[attr-defined]
    row = inv[axis - 1]
    # c * row integral <=> c in the intersection of the groups (1/w)Z
    generators = [Fraction(w.denominator, abs(w.numerator)) for w in row if w]
    return rational_lcm(generators)


@dataclass(frozen=True)
class FanValidationReport:
    """Diagnostics from validate_fan; passed is the overall verdict."""

    ray_errors: tuple[str, ...]
    cone_determinants: tuple[Fraction, ...]
    nonbasic_cones: tuple[int, ...]           # 1-based cone indices
    face_violations: tuple[tuple[int, int], ...]  # 1-based cone index pairs
    crepant: bool
    coverage: Optional[bool]                  # None = not verified
    warnings: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return (
            not self.ray_errors
            and not self.nonbasic_cones
            and not self.face_violations
            and self.coverage is not False
        )

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "ray_errors": list(self.ray_errors),
            "cone_determinants": [str(d) for d in self.cone_determinants],
            "nonbasic_cones": list(self.nonbasic_cones),
            "face_violations": [list(p) for p in self.face_violations],
            "crepant": self.crepant,
            "coverage": self.coverage,
            "warnings": list(self.warnings),
        }


def _kernel_vector(rows: Sequence[Sequence[Fraction]],
                   n: int) -> Optional[tuple[Fraction, ...]]:
    """A spanning vector of the kernel of (n-1) functionals, or None if the
    kernel is not one-dimensional."""
    m = [list(row) for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for row_idx, c in enumerate(pivots):
        v[c] = -m[row_idx][free]
    return tuple(v)


def _cone_coords(inverse, v: Sequence[Fraction]) -> list[Fraction]:
    n = len(inverse)
    return [
        sum((v[i] * inverse[i][j] for i in range(n)), Fraction(0))
        for j in range(n)
    ]


def _faces_properly(cone_a: Cone, inv_a, cone_b: Cone, inv_b, n: int) -> bool:
    """Check that the two cones intersect exactly in their common face.

    Every extreme ray of the intersection is the kernel of n-1 of the 2n
    facet functionals; it must lie in the span of the shared rays.
    """
    shared = set(cone_a.labels) & set(cone_b.labels)
    functionals = [
        tuple(inv[i][j] for i in range(n))
        for inv in (inv_a, inv_b)
        for j in range(n)
    ]
    checked: set[tuple[Fraction, ...]] = set()
    for subset in itertools.combinations(functionals, n - 1):
        kv = _kernel_vector(subset, n)
        if kv is None:
            continue
        scale = next(x for x in kv if x)
        normalized = tuple(x / scale for x in kv)
        if normalized in checked:
            continue
        checked.add(normalized)
        for v in (normalized, tuple(-x for x in normalized)):
            coords_a = _cone_coords(inv_a, v)
            if any(c < 0 for c in coords_a):
                continue
            if any(c < 0 for c in _cone_coords(inv_b, v)):
                continue
            # v is in both cones; it must be a combination of shared rays
            for ray, coef in zip(cone_a.rays, coords_a):
                if coef != 0 and ray.label not in shared:
                    return False
    return True


def validate_fan(fan: Fan) -> FanValidationReport:
    """Diagnostic sweep: ray sanity, basic cones, face intersections,
    crepancy, and (for fans with all rays junior) support coverage."""
    lattice = fan.lattice
    n = fan.dim
    ray_errors = []
    for ray in fan.rays:
        if any(x < 0 for x in ray.vector):
            ray_errors.append(f"{ray.name} has a negative coordinate")
        elif not lattice.contains(ray.vector):
            ray_errors.append(f"{ray.name} is not a lattice point")
        elif not lattice.is_primitive(ray.vector):
            ray_errors.append(f"{ray.name} is not primitive in the lattice")
    used = {label for cone in fan.cones for label in cone.labels}
    warnings = [
        f"{ray.name} does not occur in any maximal cone"
        for ray in fan.rays if ray.label not in used
    ]

    determinants = []
    nonbasic = []
    inverses: dict[int, object] = {}
    for k, cone in enumerate(fan.cones, start=1):
        d = det(cone.matrix)
        determinants.append(d)
        if abs(d) != lattice.covolume:
            nonbasic.append(k)
        elif d != 0:
            inverses[k] = invert(cone.matrix)

    face_violations = []
    indexed = [k for k in range(1, len(fan.cones) + 1) if k in inverses]
    for a, b in itertools.combinations(indexed, 2):
        cone_a, cone_b = fan.cones[a - 1], fan.cones[b - 1]
        if not _faces_properly(cone_a, inverses[a], cone_b, inverses[b], n):
            face_violations.append((a, b))

    junior = set(junior_simplex(lattice))
    crepant = {r.vector for r in fan.rays} == junior
    all_rays_junior = all(r.vector in junior for r in fan.rays)
    coverage: Optional[bool]
    if ray_errors or nonbasic or face_violations:
        coverage = None
        warnings.append("support coverage not checked (earlier failures)")
    elif all_rays_junior:
        # each basic cone over junior rays covers 1/|G| of the simplex, and
        # face-correct cones do not overlap, so counting certifies coverage
        coverage = len(fan.cones) == lattice.index
    else:
        coverage = None
        warnings.append(
            "support coverage not verified (non-junior rays); "
            "the fan's support is trusted"
        )
    return FanValidationReport(
        ray_errors=tuple(ray_errors),
        cone_determinants=tuple(determinants),
        nonbasic_cones=tuple(nonbasic),
        face_violations=tuple(face_violations),
        crepant=crepant,
        coverage=coverage,
        warnings=tuple(warnings),
    )
