"""Acceptance gate: one test per release criterion.

Every test prints a single [ACCEPTANCE] line on success, so the -v log
doubles as the sign-off sheet. Criterion 5 pins the independently
published row tables for the running example verbatim; see the release
notes for its current status.
"""

import random
from fractions import Fraction as Q

from gconstellations import (
    bounds_check,
    canonical_family,
    check_reductor,
    dual_basis,
    enumerate_normalized,
    enumerate_per_ray,
    frac,
    frac_val,
    junior_simplex,
    lambda_shift,
    maximal_shift_family,
    maximal_shift_values,
    pairing,
    reductor_piece,
    reflect,
    validate_fan,
    weil_to_cartier,
    GWeilDivisor,
)


def _passed(n: int) -> None:
    print(f"[ACCEPTANCE] criterion {n}: PASS")


def _key(family):
    return tuple(d.entries for d in family.divisors)


def _cone(fan, labels):
    return next(c for c in fan.cones if set(c.labels) == set(labels))


def test_criterion_1_running_example_geometry(g8, fan8):
    junior = junior_simplex(fan8.lattice)
    assert len(junior) == 7
    assert (Q(2, 8), Q(4, 8), Q(2, 8)) in junior
    report = validate_fan(fan8)
    assert report.passed
    assert len(report.cone_determinants) == 8
    assert all(abs(d) == Q(1, 8) for d in report.cone_determinants)
    assert report.nonbasic_cones == ()
    _passed(1)


def test_criterion_2_dual_basis_golden(fan8):
    cone = _cone(fan8, (4, 5, 6))
    duals = {tuple(v) for v in dual_basis(cone, fan8.lattice)}
    assert duals == {(-2, 0, 2), (1, 2, -1), (2, -1, 0)}
    _passed(2)


def test_criterion_3_canonical_family_golden(g8, fan8):
    expected = {
        (0,): (0, 0, 0, 0),
        (1,): (Q(1, 8), Q(2, 8), Q(4, 8), Q(5, 8)),
        (2,): (Q(2, 8), Q(4, 8), 0, Q(2, 8)),
        (3,): (Q(3, 8), Q(6, 8), Q(4, 8), Q(7, 8)),
        (4,): (Q(4, 8), 0, 0, Q(4, 8)),
        (5,): (Q(5, 8), Q(2, 8), Q(4, 8), Q(1, 8)),
        (6,): (Q(6, 8), Q(4, 8), 0, Q(6, 8)),
        (7,): (Q(7, 8), Q(6, 8), Q(4, 8), Q(3, 8)),
    }
    fam = canonical_family(fan8, g8)
    actual = {
        d.character.residues: tuple(d.coefficient(k) for k in (4, 5, 6, 7))
        for d in fam.divisors
    }
    assert actual == expected
    _passed(3)


def test_criterion_4_maximal_shift_golden(g8, fan8):
    fam = maximal_shift_family(fan8, g8)
    expected = {
        (0,): (0, 0, 0, 0),
        (1,): (Q(1, 8), Q(2, 8), Q(4, 8), Q(5, 8)),
        (2,): (Q(2, 8), Q(4, 8), 0, Q(2, 8)),
        (3,): (Q(3, 8), Q(6, 8), Q(4, 8), Q(7, 8)),
        (4,): (Q(4, 8), Q(1), 0, Q(4, 8)),
        (5,): (Q(5, 8), Q(2, 8), Q(4, 8), Q(1, 8)),
        (6,): (Q(6, 8), Q(4, 8), 0, Q(6, 8)),
        (7,): (Q(7, 8), Q(6, 8), Q(4, 8), Q(3, 8)),
    }
    actual = {
        d.character.residues: tuple(d.coefficient(k) for k in (4, 5, 6, 7))
        for d in fam.divisors
    }
    assert actual == expected
    minima = [maximal_shift_values(fan8.ray(5), g8)[c]
              for c in g8.characters()]
    assert minima == [Q(v, 8) for v in (0, 2, 4, 6, 8, 2, 4, 6)]
    # shortest-path values against the direct minimum over a monomial box
    for ray in fan8.rays:
        shifts = maximal_shift_values(ray, g8)
        for char in g8.characters():
            oracle = min(pairing(ray, m)
                         for m in g8.monomials_of_weight(char, 8))
            assert shifts[char] == oracle
    _passed(4)


# The published running-example row tables, frozen verbatim (times 1/8).
PUBLISHED = {
    4: {
        (0, 1, 2, 3, 4, 5, 6, 7),
        (0, 1, 2, 3, 4, 5, 6, -1),
        (0, 1, 2, 3, 4, 5, -2, -1),
        (0, 1, 2, 3, 4, -3, -2, -1),
        (0, 1, 2, 3, -4, -3, -2, -1),
        (0, 1, 2, -5, -4, -3, -2, -1),
        (0, 1, -6, -5, -4, -3, -2, -1),
        (0, -7, -6, -5, -4, -3, -2, -1),
    },
    5: {
        (0, 2, 4, 6, 8, 2, 4, 6),
        (0, 2, 4, 6, 0, 2, 4, 6),
        (0, 2, 4, -2, 0, 2, 4, 6),
        (0, 2, 4, 6, 0, 2, 4, -2),
        (0, 2, 4, -2, 0, 2, 4, -2),
        (0, 2, -4, -2, 0, 2, 4, -2),
        (0, 2, 4, -2, 0, 2, -4, -2),
        (0, 2, -4, -2, 0, 2, -4, -2),
        (0, -6, -4, -2, 0, 2, -4, -2),
        (0, 2, -4, -2, 0, -6, -4, -2),
        (0, -6, -4, -2, 0, -6, -4, -2),
        (0, -6, -4, -2, -8, -6, -4, -2),
    },
    6: {
        (0, 4, 0, 4, 0, 4, 0, 4),
        (0, -4, 0, -4, 0, -4, 0, -4),
    },
    7: {
        (0, 5, 2, 7, 4, 1, 6, 3),
        (0, 5, 2, -1, 4, 1, 6, 3),
        (0, 5, 2, -1, 4, 1, -2, 3),
        (0, -3, 2, -1, 4, 1, -2, 3),
        (0, -3, 2, -1, -4, 1, -2, 3),
        (0, -3, 2, -1, -4, 1, -2, -5),
        (0, -3, -6, -1, -4, -7, -2, -5),
    },
}


def test_criterion_5_enumeration_golden(g8, fan8):
    for label in (4, 5, 6, 7):
        published = {tuple(Q(v, 8) for v in row) for row in PUBLISHED[label]}
        table = enumerate_per_ray(fan8.ray(label), g8)
        assert set(table.rows) == published, (
            f"E{label}: computed table has {len(table.rows)} rows, "
            f"published set has {len(published)}"
        )
    assert enumerate_normalized(fan8, g8).count == 8 * 12 * 2 * 7
    _passed(5)


def test_criterion_6_cartier_conversion(g8, fan8):
    divisor = GWeilDivisor.from_map(
        g8.character((6,)), {4: Q(7, 4), 5: Q(1, 2), 7: Q(-1, 4)})
    cartier = weil_to_cartier(divisor, fan8, g8)
    assert len(cartier.exponents) == 8
    for cone, exponent in zip(fan8.cones, cartier.exponents):
        if set(cone.labels) == {4, 5, 6}:
            assert exponent == (-3, 1, 3)
        # the datum must restrict consistently to every ray of the cone
        for ray in cone.rays:
            assert pairing(ray, exponent) == divisor.coefficient(ray.label)
    _passed(6)


def test_criterion_7_reductor_pieces(g8, fan8):
    fam = canonical_family(fan8, g8)
    high = reductor_piece(fam, _cone(fan8, (5, 6, 7)), fan8, g8)
    assert set(high.monomials()) == {
        "1", "x", "y", "xy", "x/z", "z", "xy/z", "yz"}
    low = reductor_piece(fam, _cone(fan8, (4, 5, 6)), fan8, g8)
    assert set(low.monomials()) == {
        "1", "x", "y", "xy", "z/x", "z", "yz/x", "yz"}
    _passed(7)


def test_criterion_8_ramification(g8, fan8, g3, fan3, g4, fan4):
    from gconstellations import x_valuation_on_X

    assert x_valuation_on_X(fan3.lattice, 1) == 1
    assert x_valuation_on_X(fan4.lattice, 1) == Q(1, 2)
    assert g8.is_special_linear
    for axis in (1, 2, 3):
        value = x_valuation_on_X(fan8.lattice, axis)
        assert value == 1
        assert value.denominator == 1
    _passed(8)


def test_criterion_9_property_suite(g8, fan8, g2, fan2, g3, fan3,
                                    g31, fan31):
    cases = [(g8, fan8), (g2, fan2), (g3, fan3), (g31, fan31)]
    for group, fan in cases:
        sets = list(enumerate_normalized(fan, group))
        keys = {_key(s) for s in sets}
        assert len(keys) == len(sets)
        for s in sets:
            assert check_reductor(s, fan, group).passed
            assert bounds_check(s, fan, group).passed
        for lam in group.characters():
            image = {_key(lambda_shift(s, lam)) for s in sets}
            assert image == keys
        mirrored = [reflect(s) for s in sets]
        assert {_key(m) for m in mirrored} == keys
        assert all(reflect(m) == s for m, s in zip(mirrored, sets))

    rng = random.Random(20250819)
    for _ in range(500):
        ray = rng.choice(fan8.rays)
        exponent = tuple(rng.randrange(-12, 13) for _ in range(3))
        char = g8.weight(exponent)
        assert frac_val(ray, char, g8) == frac(pairing(ray, exponent))
    _passed(9)
