"""Families, catalog, companion construction, thresholds, Guo deduction and the structured fit."""
import random
from fractions import Fraction as F

import numpy as np
import pytest

from niep.constructions import (
    CLOSED_FORMS,
    ConstructionError,
    MatrixFamily,
    catalog,
    catalog_entry,
    companion,
    decimal_agreement,
    family_lm_sigma_hat,
    family_nonneg_threshold,
    family_perturbed,
    guo_extend,
    suleimanova_companion,
)
from niep.exact import ExactMatrix, Poly, QuadExt, matrix_poly_eval
from niep.meehan import exact_residual, meehan_fit, residual, structured_matrix
from niep.spectra import Spectrum, power_sum
from niep.verification import is_irreducible, verify_spectrum

LM = family_lm_sigma_hat()
PT = family_perturbed()


def expanded_target(values):
    # independent of poly_from_roots: multiply linear factors coefficient-wise
    c = [F(1)]
    for r in values:
        c = [(c[i - 1] if i else 0) - r * (c[i] if i < len(c) else 0) for i in range(len(c) + 1)]
    return Poly(c)


def test_lm_entries_at_one():
    A = LM(1)
    assert (A[4, 0], A[4, 1], A[4, 2], A[4, 3], A[1, 0]) == (64, 16, 16, 8, 8)
    assert A.charpoly() == expanded_target([4, 2, -2, -2, -2])


def test_lm_negative_at_zero():
    assert LM(0)[4, 1] == F(-15, 4)


def test_perturbed_at_half():
    A = PT(F(1, 2))
    assert A.charpoly() == expanded_target([F(7, 2), F(5, 2), F(-19, 10), -2, F(-21, 10)])
    assert A.is_nonnegative()


def test_perturbed_negative_52_entry_at_two_fifths():
    assert PT(F(2, 5))[4, 1] < 0
    assert 10000 * F(2, 5) ** 4 + 779800 * F(2, 5) ** 2 == 125024


@pytest.mark.parametrize("fam", [LM, PT], ids=lambda f: f.name)
def test_family_spectrum_identity_in_t(fam):
    # charpoly matches the target at more points than its t-degree: identity in t
    for k in range(-12, 13):
        t = F(k, 7)
        assert fam(t).charpoly() == fam.target_poly(t)


@pytest.mark.parametrize("fam", [LM, PT], ids=lambda f: f.name)
def test_family_above_and_below_threshold(fam):
    thr = family_nonneg_threshold(fam, F(1, 10**6))
    rng = random.Random(7)
    for _ in range(20):
        t = thr.interval.hi + F(rng.randint(0, 2000), 1000)
        A = fam(t)
        assert A.is_nonnegative() and is_irreducible(A)
        assert A.charpoly() == expanded_target(fam.target_spectrum(t).values)
    for _ in range(5):
        t = thr.interval.lo * F(rng.randint(1, 999), 1000)
        assert not fam(t).is_nonnegative()


def test_lm_threshold_exact_oracle():
    # t0^2 = 16 sqrt6 - 39 exactly; compare squares in Q(sqrt 6)
    res = family_nonneg_threshold(LM)
    lo, hi = res.interval.lo, res.interval.hi
    t0sq = QuadExt(-39, 16, 6)
    assert 0 < lo and lo * lo < t0sq <= hi * hi
    assert res.interval.width <= F(1, 10**9)
    assert res.entry_witness == (4, 1)
    assert res.entry_poly.monic() == Poly([-15, 0, 78, 0, 1])
    assert res.closed_form_check["interval_contains_closed_form"]


def test_perturbed_threshold_exact_oracle():
    res = family_nonneg_threshold(PT)
    lo, hi = res.interval.lo, res.interval.hi
    t0sq = QuadExt(F(-3899, 100), F(6, 5), 1066)
    assert lo * lo < t0sq <= hi * hi
    assert res.entry_witness == (4, 1)
    assert res.entry_poly.scale(40000) == Poly([-148199, 0, 779800, 0, 10000])


def test_threshold_trivial_family():
    ident = MatrixFamily("ident", tuple(tuple(Poly([1 if i == j else 0]) for j in range(2)) for i in range(2)), ((1, 0), (1, 0)))
    res = family_nonneg_threshold(ident)
    assert res.interval.hi == 0 and res.entry_witness is None


def test_threshold_rejects_eventually_negative():
    bad = MatrixFamily("bad", ((Poly([1, -1]),),), ((1, -1),))
    with pytest.raises(ValueError):
        family_nonneg_threshold(bad)


def test_decimal_agreement():
    assert decimal_agreement(F("0.4379907"), "0.43799")["printed_digits_agree"]
    assert not decimal_agreement(F("0.43541534373"), "0.4354153419")["printed_digits_agree"]
    assert set(CLOSED_FORMS) == {"lm_sigma_hat", "perturbed"}


# --- catalog -----------------------------------------------------------------


def test_catalog_charpolys():
    cat = {e.name: e for e in catalog()}
    assert cat["SYM_SIGMA_HAT_T1"].matrix.charpoly() == Poly([-4, 0, 1]) * Poly([-16, -12, 0, 1])
    cp = cat["SYM_SIGMA_HAT_T1"].matrix.charpoly()
    assert cp == Poly([64, 48, -16, -16, 0, 1])
    for x in (0, 1, -1, 3):
        assert cp(x) == (x - 4) * (x - 2) * (x + 2) ** 3
    assert cat["SYM_SIGMA_T1"].matrix.charpoly() == Poly([-16, -12, 0, 1]) * Poly([-6, -1, 1])
    assert cat["SYM_SIGMA_T1"].matrix.d == 6
    assert cat["JORDAN_SIGMA_3_4"].matrix.charpoly() == expanded_target([F(15, 4), F(9, 4), -2, -2, -2])


def test_catalog_claims_and_traces():
    for e in catalog():
        rep = verify_spectrum(e.matrix, e.spectrum)
        assert rep.realizes
        assert (rep.symmetric, rep.irreducible, rep.diagonalizable) == (e.symmetric, e.irreducible, e.diagonalizable)
        P = ExactMatrix.identity(5, e.matrix.d)
        for k in range(1, 6):
            P = P @ e.matrix
            assert P.trace() == power_sum(e.spectrum, k)
    assert catalog_entry("jordan_sigma_3_4").name == "JORDAN_SIGMA_3_4"
    with pytest.raises(KeyError):
        catalog_entry("nope")


# --- companion ---------------------------------------------------------------


def test_companion_examples():
    A = suleimanova_companion(Spectrum([3, -1, -1, -1]))
    assert [A[3, j] for j in range(4)] == [3, 8, 6, 0]
    assert suleimanova_companion(Spectrum([1, -1])) == ExactMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        suleimanova_companion(Spectrum([1, -2]))


def test_companion_charpoly_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        p = Poly([F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))] + [1])
        assert companion(p).charpoly() == p


def test_suleimanova_companion_always_verified():
    rng = random.Random(11)
    for _ in range(40):
        neg = [-F(rng.randint(0, 8), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        pos = -sum(neg) + F(rng.randint(0, 5), 2)
        if pos <= 0:
            continue
        s = Spectrum([pos] + neg)
        A = suleimanova_companion(s)
        assert verify_spectrum(A, s).realizes


def test_construction_error_is_value_error():
    assert issubclass(ConstructionError, ValueError)


# --- Guo deduction -----------------------------------------------------------


def test_guo_extend():
    base = Spectrum([F(344, 100), F(256, 100), -2, -2, -2])
    assert guo_extend(base, F(44, 100), certified=True) == Spectrum([F(388, 100), 3, -2, -2, -2])
    assert guo_extend(base, 0, certified=True) == base
    with pytest.raises(ValueError):
        guo_extend(base, 1, certified=False)
    with pytest.raises(ValueError):
        guo_extend(base, -1, certified=True)


# --- structured fit ----------------------------------------------------------


def test_structured_matrix_charpoly_formula():
    rng = random.Random(5)
    for _ in range(10):
        t, p, q, w, h = (F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5))
        A = ExactMatrix([[t, 1, 0, 0, 0], [p, 0, 1, 0, 0], [0, q, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, w, h, 0]])
        expected = Poly([p * w - h * q * t, h * p + h * q + t * w, q * t + h * t - w, -(p + q + h), -t, 1])
        assert A.charpoly() == expected


def test_meehan_fit_above_boundary():
    fit = meehan_fit(0.6)
    assert fit.nonnegative and fit.residual < 1e-10
    assert residual(fit.params, fit.t) == fit.residual
    ev = np.sort(np.linalg.eigvals(structured_matrix(0.6, *fit.params)).real)
    assert np.allclose(ev, [-2, -2, -2, 3, 3.6], atol=1e-3)


def test_meehan_exact_residual_agrees():
    fit = meehan_fit(0.52)
    assert abs(float(exact_residual(fit)) - fit.residual) < 1e-9


def test_meehan_fit_rejects_nonpositive_t():
    with pytest.raises(ValueError):
        meehan_fit(0)


def test_minpoly_annihilates_family_samples():
    for fam in (LM, PT):
        for t in (F(1, 2), F(3, 4), F(1), F(5, 2)):
            A = fam(t)
            mp = A.minpoly()
            assert (A.charpoly() % mp).is_zero()
            assert matrix_poly_eval(mp, A) == ExactMatrix.zeros(5)
    for e in catalog():
        mp = e.matrix.minpoly()
        assert (e.matrix.charpoly() % mp).is_zero()
        assert matrix_poly_eval(mp, e.matrix) == ExactMatrix.zeros(5, e.matrix.d)
