"""Numeric fit of the structured form

    [[t, 1, 0, 0, 0],
     [p, 0, 1, 0, 0],
     [0, q, 0, 1, 0],
     [0, 0, 0, 0, 1],
     [0, 0, w, h, 0]]

to the spectrum (3+t, 3, -2, -2, -2). Its characteristic polynomial is

    x^5 - t x^4 - (p+q+h) x^3 + (qt + ht - w) x^2 + (hp + hq + tw) x + (pw - hqt),

so the trace matches for free and four coefficient equations remain in four unknowns.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact.matrix import ExactMatrix
from .exact.poly import poly_from_roots

SEEDS = (0.5, 2.0, 5.0, 10.0)
NONNEG_TOL = 1e-10
CONVERGED = 1e-12
SUCCESS = 1e-10


class ConvergenceError(RuntimeError):
    def __init__(self, t: float, best_residual: float):
        super().__init__(f"no converged fit at t={t} (best residual {best_residual:.3e})")
        self.t = t
        self.best_residual = best_residual


@dataclass(frozen=True)
class FitResult:
    t: float
    p: float
    q: float
    w: float
    h: float
    residual: float
    nonnegative: bool
    seed: tuple[float, ...]

    @property
    def params(self) -> np.ndarray:
        return np.array([self.p, self.q, self.w, self.h])

    def matrix(self) -> np.ndarray:
        return structured_matrix(self.t, *self.params)

    def to_json(self) -> dict:
        return {
            "t": f"{self.t:.17g}",
            "params": {k: f"{getattr(self, k):.17g}" for k in "pqwh"},
            "residual": f"{self.residual:.17g}",
            "residual_tolerance": f"{SUCCESS:.17g}",
            "nonnegative": self.nonnegative,
            "nonnegative_tolerance": f"{NONNEG_TOL:.17g}",
            "seed": [f"{s:.17g}" for s in self.seed],
        }


def structured_matrix(t, p, q, w, h) -> np.ndarray:
    return np.array(
        [
            [t, 1, 0, 0, 0],
            [p, 0, 1, 0, 0],
            [0, q, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 0, w, h, 0],
        ],
        dtype=float,
    )


def target_coeffs(t: float) -> np.ndarray:
    """[c3, c2, c1, c0] of (x - (3+t))(x - 3)(x + 2)^3."""
    return np.array([-15 - 3 * t, 6 * t - 10, 28 * t + 60, 24 * t + 72], dtype=float)


def _coeffs(V: np.ndarray, t: float) -> np.ndarray:
    p, q, w, h = V[..., 0], V[..., 1], V[..., 2], V[..., 3]
    return np.stack([-(p + q + h), q * t + h * t - w, h * p + h * q + t * w, p * w - h * q * t], axis=-1)


def _jacobian(V: np.ndarray, t: float) -> np.ndarray:
    p, q, w, h = V[..., 0], V[..., 1], V[..., 2], V[..., 3]
    one = np.ones_like(p)
    zero = np.zeros_like(p)
    rows = [
        [-one, -one, zero, -one],
        [zero, t * one, -one, t * one],
        [h, h, t * one, p + q],
        [w, -h * t, p, -q * t],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def residual(params, t: float) -> float:
    """max |coefficient mismatch| for the four non-trivial coefficients."""
    return float(np.max(np.abs(_coeffs(np.asarray(params, dtype=float), t) - target_coeffs(t))))


def _newton(V0: np.ndarray, t: float, max_iter: int = 200) -> np.ndarray:
    """Damped Newton on all seeds at once; step halving until the residual drops."""
    V = V0.copy()
    tgt = target_coeffs(t)

    def norm(X):
        return np.max(np.abs(_coeffs(X, t) - tgt), axis=-1)

    r = norm(V)
    for _ in range(max_iter):
        active = r >= CONVERGED
        if not active.any():
            break
        G = _coeffs(V, t) - tgt
        J = _jacobian(V, t)
        step = np.zeros_like(V)
        ok = np.abs(np.linalg.det(J)) > 1e-300
        idx = active & ok
        if idx.any():
            step[idx] = np.linalg.solve(J[idx], G[idx][..., None])[..., 0]
        lam = np.ones(len(V))
        accepted = ~idx
        for _ in range(40):
            trial = V - lam[:, None] * step
            rt = norm(trial)
            better = (rt < r) & ~accepted
            V[better] = trial[better]
            r[better] = rt[better]
            accepted |= better
            if accepted.all():
                break
            lam[~accepted] /= 2
    return V


def meehan_fit(t: float, attempts: int = 256) -> FitResult:
    """Multistart damped Newton; prefers nonnegative converged solutions, then lowest residual."""
    t = float(t)
    if not t > 0:
        raise ValueError("t must be positive")
    seeds = np.array(list(itertools.product(SEEDS, repeat=4))[:attempts], dtype=float)
    V = _newton(seeds, t)
    res = np.array([residual(v, t) for v in V])
    nonneg = np.min(V, axis=1) >= -NONNEG_TOL
    conv = res < SUCCESS
    if not conv.any():
        raise ConvergenceError(t, float(np.nanmin(res)))
    order = sorted(np.flatnonzero(conv), key=lambda i: (not nonneg[i], res[i], i))
    i = order[0]
    p, q, w, h = (float(x) for x in V[i])
    return FitResult(t, p, q, w, h, float(res[i]), bool(nonneg[i]), tuple(float(s) for s in seeds[i]))


def fit_flag(t: float, attempts: int = 256) -> bool:
    """True when a converged nonnegative fit exists at t."""
    try:
        return meehan_fit(t, attempts).nonnegative
    except ConvergenceError:
        return False


def meehan_boundary(lo: float = 0.50, hi: float = 0.53, tol: float = 1e-4, attempts: int = 256) -> tuple[float, float]:
    """Bisect the nonnegative-fit flag; requires flag(lo) False and flag(hi) True."""
    if fit_flag(lo, attempts) or not fit_flag(hi, attempts):
        raise ValueError("flag does not change sign on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if fit_flag(mid, attempts):
            hi = mid
        else:
            lo = mid
    return lo, hi


def exact_residual(fit: FitResult, grid: int = 10**12) -> Fraction:
    """Mismatch recomputed from an exact charpoly after rounding parameters to 1/grid."""
    def rat(x):
        return Fraction(round(x * grid), grid)

    t = Fraction(repr(fit.t))
    p, q, w, h = (rat(x) for x in fit.params)
    A = ExactMatrix(
        [
            [t, 1, 0, 0, 0],
            [p, 0, 1, 0, 0],
            [0, q, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 0, w, h, 0],
        ]
    )
    diff = A.charpoly() - poly_from_roots([3 + t, 3, -2, -2, -2])
    return max((abs(c) for c in diff.coeffs), default=Fraction(0))
