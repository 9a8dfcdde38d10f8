"""Exact rational linear algebra kernel."""

import random
from fractions import Fraction

import pytest

from gconstellations.exact import (
    SingularMatrixError,
    det,
    dot,
    frac,
    hermite_normal_form,
    invert,
    mat_mul,
    rat,
    rational_lcm,
)


def test_rat_accepts_ints_strings_and_fractions():
    assert rat(3) == Fraction(3)
    assert rat("5/8") == Fraction(5, 8)
    assert rat(Fraction(-2, 4)) == Fraction(-1, 2)


def test_frac_is_fractional_part_in_unit_interval():
    assert frac(Fraction(7, 4)) == Fraction(3, 4)
    assert frac(Fraction(-1, 4)) == Fraction(3, 4)
    assert frac(Fraction(5)) == 0
    assert frac(Fraction(-9, 8)) == Fraction(7, 8)


def test_frac_idempotent_random():
    rng = random.Random(11)
    for _ in range(200):
        q = Fraction(rng.randint(-400, 400), rng.randint(1, 40))
        f = frac(q)
        assert 0 <= f < 1
        assert (q - f).denominator == 1
        assert frac(f) == f


def test_dot():
    assert dot((1, 2, 3), (4, 5, 6)) == 32
    assert dot((Fraction(1, 2), Fraction(1, 3)), (2, 3)) == 2


def test_det_small_goldens():
    assert det([[Fraction(1)]]) == 1
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    # row swap path: zero pivot forces an exchange
    assert det([[0, 2, 1], [1, 0, 0], [0, 0, 3]]) == -6
    assert det([[1, 2], [2, 4]]) == 0


def test_invert_golden():
    inv = invert([[Fraction(1, 4), Fraction(1, 2)], [0, 1]])
    assert inv == [[Fraction(4), Fraction(-2)], [Fraction(0), Fraction(1)]]


def test_invert_singular_raises():
    with pytest.raises(SingularMatrixError):
        invert([[1, 2], [2, 4]])


def test_invert_random_round_trip():
    rng = random.Random(7)
    done = 0
    while done < 120:
        n = rng.randint(1, 4)
        m = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5))
              for _ in range(n)] for _ in range(n)]
        d = det(m)
        if d == 0:
            with pytest.raises(SingularMatrixError):
                invert(m)
            continue
        inv = invert(m)
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        assert mat_mul(m, inv) == eye
        assert mat_mul(inv, m) == eye
        assert det(inv) == 1 / d
        done += 1


def test_hermite_normal_form_golden():
    # ZZ^2 + ZZ*(1,2)/4, scaled by 4
    rows = [[4, 0], [0, 4], [1, 2]]
    assert hermite_normal_form(rows) == [[1, 2], [0, 4]]


def test_hermite_normal_form_properties():
    rng = random.Random(23)
    for _ in range(80):
        k = rng.randint(1, 4)
        n = rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(k)]
        h = hermite_normal_form(rows)
        # staircase with positive pivots, entries above reduced
        pivots = []
        for row in h:
            assert any(row)
            j = next(i for i, x in enumerate(row) if x)
            assert row[j] > 0
            pivots.append(j)
        assert pivots == sorted(set(pivots))
        for a, row in enumerate(h):
            j = pivots[a]
            for above in h[:a]:
                assert 0 <= above[j] < row[j]


def test_hermite_preserves_row_lattice():
    # membership is invariant: every original row reduces to zero against HNF
    rows = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    h = hermite_normal_form(rows)

    def reduces_to_zero(vec):
        v = list(vec)
        for row in h:
            j = next(i for i, x in enumerate(row) if x)
            if v[j] % row[j] == 0:
                q = v[j] // row[j]
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    assert all(reduces_to_zero(r) for r in rows)
    assert not reduces_to_zero([1, 0, 0])


def test_rational_lcm():
    assert rational_lcm([Fraction(1, 2), Fraction(1, 3)]) == 1
    assert rational_lcm([Fraction(1, 2)]) == Fraction(1, 2)
    assert rational_lcm([Fraction(2, 3), Fraction(1, 2)]) == 2
    # result is the smallest positive element of the intersection
    vals = [Fraction(3, 4), Fraction(5, 6)]
    m = rational_lcm(vals)
    for v in vals:
        assert (m / v).denominator == 1
