"""Certificate checks for candidate realizing matrices.

Exact checks (spectrum, nonnegativity, irreducibility, Jordan structure and the
two matrix identities) never touch floating point. The numeric helpers at the
bottom exist only to illustrate eigenvector sign patterns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact.matrix import ExactMatrix, SingularMatrixError
from .exact.poly import Poly, is_squarefree, poly_from_roots
from .exact.scalars import fraction_str, to_fraction
from .spectra import Spectrum


@dataclass(frozen=True)
class VerificationReport:
    charpoly_match: bool
    nonnegative: bool
    irreducible: bool
    symmetric: bool
    diagonalizable: bool
    details: dict = field(default_factory=dict)

    @property
    def realizes(self) -> bool:
        return self.charpoly_match and self.nonnegative

    def to_json(self) -> dict:
        return {
            "charpoly_match": self.charpoly_match,
            "nonnegative": self.nonnegative,
            "irreducible": self.irreducible,
            "symmetric": self.symmetric,
            "diagonalizable": self.diagonalizable,
            "details": self.details,
        }


@dataclass(frozen=True)
class JordanReport:
    eigenvalue: Fraction
    algebraic_multiplicity: int
    block_sizes: tuple[int, ...]
    rank_sequence: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "eigenvalue": fraction_str(self.eigenvalue),
            "algebraic_multiplicity": self.algebraic_multiplicity,
            "block_sizes": list(self.block_sizes),
            "rank_sequence": list(self.rank_sequence),
        }


def _pattern_strongly_connected(A: ExactMatrix) -> bool:
    n = A.n
    if n == 1:
        return True
    succ = [[j for j in range(n) if A[i, j]] for i in range(n)]
    pred = [[i for i in range(n) if A[i, j]] for j in range(n)]
    for adj in (succ, pred):
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != n:
            return False
    return True


def is_irreducible(A: ExactMatrix) -> bool:
    """Strong connectivity of the digraph i -> j whenever A[i, j] != 0."""
    if not A.is_nonnegative():
        raise ValueError("irreducibility is only defined here for nonnegative matrices")
    return _pattern_strongly_connected(A)


def is_diagonalizable(A: ExactMatrix) -> bool:
    """Squarefree minimal polynomial."""
    return is_squarefree(A.minpoly())


def verify_spectrum(A: ExactMatrix, sp: Spectrum) -> VerificationReport:
    if A.n != sp.n:
        raise ValueError(f"dimension mismatch: matrix is {A.n}x{A.n}, spectrum has {sp.n} values")
    cp = A.charpoly()
    target = poly_from_roots(sp.values)
    mp = A.minpoly()
    neg = A.negative_entries()
    details = {"charpoly": cp.to_json(), "minpoly": mp.to_json()}
    if cp != target:
        details["target_poly"] = target.to_json()
    if neg:
        details["negative_entries"] = [[i + 1, j + 1] for i, j in neg]
    return VerificationReport(
        charpoly_match=cp == target,
        nonnegative=not neg,
        irreducible=_pattern_strongly_connected(A),
        symmetric=A.is_symmetric(),
        diagonalizable=is_squarefree(mp),
        details=details,
    )


def jordan_structure(A: ExactMatrix, lam) -> JordanReport:
    """Jordan block sizes at a rational eigenvalue from ranks of (A - lam I)^k."""
    lam = to_fraction(lam)
    cp = A.charpoly()
    if cp(lam) != 0:
        raise ValueError(f"{lam} is not an eigenvalue")
    mult = 0
    q = cp
    lin = Poly([-lam, 1])
    while q.degree > 0 and q(lam) == 0:
        q = q // lin
        mult += 1
    N = A.shift(-lam)
    ranks = [A.n]
    P = ExactMatrix.identity(A.n, A.d)
    for _ in range(A.n):
        P = P @ N
        ranks.append(P.rank())
        if ranks[-1] == ranks[-2]:
            break
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    sizes: list[int] = []
    for k in range(1, len(at_least)):
        sizes += [k] * (at_least[k - 1] - at_least[k])
    return JordanReport(lam, mult, tuple(sorted(sizes, reverse=True)), tuple(ranks))


def rational_eigenvalues(A: ExactMatrix) -> list[Fraction]:
    """Distinct rational roots of the characteristic polynomial (rational root test)."""
    cp = A.charpoly()
    out = []
    ints = cp.integer_primitive()
    if not ints:
        return out
    lead, const = abs(ints[-1]), abs(ints[0])
    if const == 0:
        out.append(Fraction(0))
    cands = set()
    if const:
        for p in _divisors(const):
            for q in _divisors(lead):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
    out += [c for c in cands if cp(c) == 0]
    return sorted(set(out), reverse=True)


def _divisors(m: int) -> list[int]:
    small, large = [], []
    k = 1
    while k * k <= m:
        if m % k == 0:
            small.append(k)
            if k * k != m:
                large.append(m // k)
        k += 1
    return small + large[::-1]


def check_eq4_identity(A: ExactMatrix, t) -> bool:
    """A^3 + (18 - 2t^2) I == 4 A^2 + (3 + t^2) A, exactly."""
    t = to_fraction(t)
    A2 = A @ A
    lhs = (A2 @ A).shift(18 - 2 * t * t)
    rhs = A2 * Fraction(4) + A * (3 + t * t)
    return lhs == rhs


def eq4_polynomial(t) -> Poly:
    """(x - (3+t))(x - (3-t))(x + 2)."""
    t = to_fraction(t)
    return poly_from_roots([3 + t, 3 - t, -2])


def _mat_mul(X: list[list], Y: list[list], zero) -> list[list]:
    cols = list(zip(*Y)) if Y else []
    return [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in X]


def schur_complement(B: ExactMatrix, k: int) -> list[list]:
    """B22 - B21 B11^{-1} B12 for the leading k x k block."""
    n = B.n
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    top, bottom = list(range(k)), list(range(k, n))
    B11 = B.principal(top)
    try:
        B11inv = B11.inverse()
    except SingularMatrixError as e:
        raise ValueError(f"leading {k}x{k} block is singular (rank {e.rank})") from e
    zero = B.zero()
    B12, B21, B22 = B.block(top, bottom), B.block(bottom, top), B.block(bottom, bottom)
    prod = _mat_mul(_mat_mul(B21, [list(r) for r in B11inv.rows], zero), B12, zero)
    return [[a - b for a, b in zip(r, s)] for r, s in zip(B22, prod)]


def schur_rank_identity(B: ExactMatrix, k: int) -> bool:
    """Whether B22 == B21 B11^{-1} B12; forced true when rank(B) == k."""
    comp = schur_complement(B, k)
    holds = all(not x for r in comp for x in r)
    if B.rank() == k and not holds:
        raise AssertionError("rank(B) == rank(B11) but the Schur complement is nonzero")
    return holds


# --- numeric helpers ---------------------------------------------------------


def symmetric_eigen(A, tol: float = 1e-12, max_sweeps: int = 100) -> list[tuple[float, np.ndarray]]:
    """Cyclic Jacobi eigen-decomposition, eigenpairs sorted descending.

    Eigenvectors are unit-norm with their first non-negligible component positive.
    Sweeps stop once the off-diagonal norm is below tol (scaled by the Frobenius
    norm when that exceeds 1).
    """
    if isinstance(A, ExactMatrix):
        A = A.to_floats()
    a = np.array(A, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.max(np.abs(a - a.T), initial=0.0) > tol:
        raise ValueError("matrix is not symmetric within tolerance")
    a = (a + a.T) / 2
    v = np.eye(n)

    def off(m):
        return float(np.sqrt(np.sum((m - np.diag(np.diag(m))) ** 2)))

    stop = tol * max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if off(a) < stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                a = J.T @ a @ J
                v = v @ J
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(a)
    order = np.argsort(-vals, kind="stable")
    out = []
    for i in order:
        vec = v[:, i] / np.linalg.norm(v[:, i])
        lead = next((x for x in vec if abs(x) > 1e-12), 1.0)
        if lead < 0:
            vec = -vec
        out.append((float(vals[i]), vec))
    return out


@dataclass(frozen=True)
class SignPattern:
    positives: int
    negatives: int
    zeros: int
    tolerance: float

    def to_json(self) -> dict:
        return {
            "positives": self.positives,
            "negatives": self.negatives,
            "zeros": self.zeros,
            "tolerance": f"{self.tolerance:.17g}",
        }


def sign_pattern(v: Sequence[float], tol: float = 1e-9) -> SignPattern:
    arr = np.asarray(v, dtype=float)
    pos = int(np.sum(arr > tol))
    neg = int(np.sum(arr < -tol))
    return SignPattern(pos, neg, arr.size - pos - neg, tol)


def perron_vector(A, tol: float = 1e-12, max_iter: int = 100_000) -> tuple[float, np.ndarray]:
    """Power iteration on A + cI, c = 1 + max diagonal entry, from the all-ones vector."""
    if isinstance(A, ExactMatrix):
        if not A.is_nonnegative():
            raise ValueError("Perron vector requested for a matrix with negative entries")
        A = A.to_floats()
    a = np.array(A, dtype=float)
    n = a.shape[0]
    c = 1.0 + float(np.max(np.diag(a)))
    m = a + c * np.eye(n)
    x = np.ones(n) / np.sqrt(n)
    for _ in range(max_iter):
        y = m @ x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    else:
        raise RuntimeError("power iteration did not converge")
    return float(x @ a @ x), x
