"""Exact kernel tests against independent oracles (cofactor determinants, RREF, grid scans)."""
import json
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niep.exact import (
    ExactMatrix,
    FieldError,
    Poly,
    QuadExt,
    SingularMatrixError,
    isolate_real_roots,
    isolate_smallest_nonneg_root,
    matrix_poly_eval,
    poly_from_roots,
    poly_gcd,
    sqrt_of,
    squarefree_part,
    sturm_root_count,
)
from niep.exact.poly import is_squarefree
from niep.exact.scalars import fraction_str, scalar_from_json, scalar_to_json, to_fraction

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ints = st.integers(-9, 9)


def square(n, elems=small):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


# --- oracles -----------------------------------------------------------------


def cofactor_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def rref_rank(m):
    a = [list(map(Fraction, r)) for r in m]
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def grid_sign_changes(p: Poly, lo: float, hi: float, step: float = 1e-4) -> int:
    coeffs = [float(c) for c in reversed(p.coeffs)]
    xs = np.arange(lo + step * 0.3183, hi, step)
    ys = np.polyval(coeffs, xs)
    s = np.sign(ys)
    return int(np.sum(s[1:] * s[:-1] < 0))


# --- scalars -----------------------------------------------------------------

frac = st.builds(Fraction, st.integers(-200, 200), st.integers(1, 12))
quad = st.builds(lambda a, b: QuadExt(a, b, 6), frac, frac)


@settings(max_examples=1000)
@given(quad, quad)
def test_conjugation_is_ring_homomorphism(x, y):
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x * x.conjugate()).is_rational()
    assert x.norm() == (x * x.conjugate()).a


@given(quad, quad)
def test_quad_division_inverts_multiplication(x, y):
    if y:
        assert (x / y) * y == x


@given(quad)
def test_quad_sign_matches_float(x):
    # exact sign is authoritative; compare only where floats are unambiguous
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert (x.sign() == 0) == (x == 0)


def test_sqrt6_squares_to_six():
    r6 = sqrt_of(6)
    assert r6 * r6 == 6
    assert 2 < r6 < 3
    assert (r6 - Fraction(49, 20)).sign() == -1  # 2.45^2 = 6.0025


def test_sqrt6_ordering_exact():
    r6 = sqrt_of(6)
    assert r6 < Fraction(49, 20)
    assert r6 > Fraction(244, 100)


def test_quad_rejects_non_squarefree():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 4)
    with pytest.raises(ValueError):
        QuadExt(1, 1, 1)


def test_mixed_field_arithmetic_rejected():
    with pytest.raises(FieldError):
        QuadExt(1, 1, 6) + QuadExt(1, 1, 2)


def test_to_fraction_rejects_float_and_irrational():
    assert to_fraction("3/6") == Fraction(1, 2)
    with pytest.raises((TypeError, ValueError)):
        to_fraction(0.5)
    with pytest.raises(FieldError):
        to_fraction(sqrt_of(6))


def test_scalar_json_round_trip():
    for x in [Fraction(-7, 3), QuadExt(Fraction(1, 2), -3, 6)]:
        assert scalar_from_json(json.loads(json.dumps(scalar_to_json(x)))) == x
    assert fraction_str(Fraction(10, 4)) == "5/2"
    assert fraction_str(Fraction(-4, 2)) == "-2"


# --- polynomials -------------------------------------------------------------

polys = st.lists(small, min_size=1, max_size=6).map(Poly)


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.lists(ints, min_size=1, max_size=4), st.lists(ints, min_size=1, max_size=3))
def test_gcd_recovers_common_roots(common, extra):
    a = poly_from_roots(common + extra)
    b = poly_from_roots(common + [x + 100 for x in extra])
    g = poly_gcd(a, b)
    assert g.lc() == 1
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g.degree == len(common)


@given(st.lists(ints, min_size=1, max_size=6))
def test_squarefree_part_has_distinct_roots(roots):
    p = poly_from_roots(roots)
    s = squarefree_part(p)
    assert s.degree == len(set(roots))
    assert is_squarefree(s)
    assert is_squarefree(p) == (len(set(roots)) == len(roots))


def test_poly_from_conjugate_quadratic_roots():
    r6 = sqrt_of(6)
    p = poly_from_roots([1 + r6, 1 - r6])
    assert p == Poly([-5, -2, 1])
    with pytest.raises(FieldError):
        poly_from_roots([r6])


def test_poly_json_rejects_floats():
    assert Poly.from_json(["1/2", "0", "3"]) == Poly([Fraction(1, 2), 0, 3])
    with pytest.raises(FieldError):
        Poly.from_json([0.5])


# --- root isolation ----------------------------------------------------------

distinct_tenths = st.lists(st.integers(-60, 60), min_size=1, max_size=6, unique=True)


@settings(max_examples=50)
@given(distinct_tenths, st.integers(0, 3), st.lists(st.integers(-3, 3), max_size=2))
def test_sturm_matches_grid_scan(tenths, quad_c, repeats):
    roots = [Fraction(k, 10) for k in tenths]
    p = poly_from_roots(roots)
    for k in repeats:  # repeated roots must be counted once
        p = p * poly_from_roots([Fraction(tenths[abs(k) % len(tenths)], 10)]) ** 2
    if quad_c:
        p = p * Poly([quad_c, 0, 1])  # no real roots
    lo, hi = -7.0, 7.0
    oracle = grid_sign_changes(squarefree_part(p), lo, hi)
    assert oracle == len(roots)
    assert sturm_root_count(p, Fraction(lo), Fraction(hi)) == oracle
    ivs = isolate_real_roots(p, Fraction(1, 10**6))
    assert len(ivs) == len(roots)
    for iv, r in zip(ivs, sorted(roots)):
        assert iv.lo < r <= iv.hi
        assert iv.width <= Fraction(1, 10**6)


def test_sturm_counts_endpoint_roots_half_open():
    p = poly_from_roots([0, 1, 2])
    assert sturm_root_count(p, 0, 2) == 2  # (0, 2] holds 1 and 2
    assert sturm_root_count(p, -1, 0) == 1
    assert sturm_root_count(p, 0, 1) == 1


def test_isolate_irrational_root():
    p = Poly([-2, 0, 1])
    ivs = isolate_real_roots(p, Fraction(1, 10**12))
    assert len(ivs) == 2
    lo, hi = ivs[1].lo, ivs[1].hi
    assert lo * lo < 2 <= hi * hi


def test_smallest_nonneg_root():
    p = poly_from_roots([-3, Fraction(1, 3), 5])
    iv = isolate_smallest_nonneg_root(p, Fraction(1, 10**9))
    assert iv.lo < Fraction(1, 3) <= iv.hi
    assert isolate_smallest_nonneg_root(Poly([1, 0, 1])) is None
    z = isolate_smallest_nonneg_root(poly_from_roots([0, 2]))
    assert z.lo < 0 <= z.hi


# --- matrices ----------------------------------------------------------------


@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(square))
def test_det_matches_cofactor_expansion(rows):
    assert ExactMatrix(rows).det() == cofactor_det(rows)


@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(lambda n: square(n, st.integers(-2, 2).map(Fraction))))
def test_rank_matches_rref(rows):
    assert ExactMatrix(rows).rank() == rref_rank(rows)


@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(square))
def test_charpoly_is_det_of_xI_minus_A(rows):
    A = ExactMatrix(rows)
    cp = A.charpoly()
    n = A.n
    assert cp.degree == n and cp.lc() == 1
    assert cp[n - 1] == -A.trace()
    assert cp[0] == (-1) ** n * A.det()
    for x in (Fraction(-3), Fraction(1, 2), Fraction(7)):
        xi = [[(x if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
        assert cp(x) == cofactor_det(xi)


@settings(max_examples=25)
@given(st.integers(2, 4).flatmap(square), st.data())
def test_charpoly_permutation_invariant(rows, data):
    A = ExactMatrix(rows)
    perm = data.draw(st.permutations(range(A.n)))
    assert A.permute(perm).charpoly() == A.charpoly()


@settings(max_examples=40)
@given(st.integers(1, 5).flatmap(lambda n: square(n, st.integers(-2, 2).map(Fraction))))
def test_minpoly_divides_charpoly_and_annihilates(rows):
    A = ExactMatrix(rows)
    mp = A.minpoly()
    assert mp.lc() == 1
    assert (A.charpoly() % mp).is_zero()
    assert matrix_poly_eval(mp, A) == ExactMatrix.zeros(A.n)


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(square))
def test_inverse(rows):
    A = ExactMatrix(rows)
    if A.det() == 0:
        with pytest.raises(SingularMatrixError):
            A.inverse()
    else:
        assert A @ A.inverse() == ExactMatrix.identity(A.n)


def test_minpoly_of_scalar_and_jordan_block():
    assert ExactMatrix.identity(3).shift(1).minpoly() == Poly([-2, 1])
    J = ExactMatrix([[2, 1, 0], [0, 2, 1], [0, 0, 2]])
    assert J.minpoly() == poly_from_roots([2, 2, 2])


def test_quadratic_field_matrix():
    r6 = sqrt_of(6)
    A = ExactMatrix([[1, r6], [r6, 0]])
    assert A.d == 6
    assert A.charpoly() == Poly([-6, -1, 1])
    assert A.det() == -6
    assert A.rank() == 2
    B = ExactMatrix([[1, r6], [r6, 6]])
    assert B.rank() == 1


def test_matrix_json_round_trip():
    r6 = sqrt_of(6)
    for A in [ExactMatrix([[Fraction(1, 3), -2], [0, 5]]), ExactMatrix([[1, r6], [r6, 0]])]:
        text = json.dumps(A.to_json(), sort_keys=True)
        assert ExactMatrix.from_json(json.loads(text)) == A
    with pytest.raises((TypeError, ValueError)):
        ExactMatrix.from_json({"n": 1, "field": "rational", "entries": [[0.5]]})


def test_permutation_similarity_preserves_everything():
    A = ExactMatrix([[0, 1, 2], [3, 0, 1], [1, 1, 0]])
    for perm in permutations(range(3)):
        B = A.permute(perm)
        assert B.det() == A.det() and B.minpoly() == A.minpoly()
