"""Dense exact matrices over Q or a single Q(sqrt d)."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly
from .scalars import (
    FieldError,
    QuadExt,
    Scalar,
    coerce,
    field_of,
    scalar_from_json,
    scalar_to_json,
    sign,
    to_fraction,
)


class SingularMatrixError(ValueError):
    def __init__(self, rank: int, n: int):
        super().__init__(f"matrix is singular (rank {rank} < {n})")
        self.rank = rank


class ExactMatrix:
    """Immutable square matrix; all entries live in the same field (``d`` is None for Q)."""

    __slots__ = ("rows", "d")

    def __init__(self, rows: Iterable[Iterable], d: int | None = None):
        raw = [list(r) for r in rows]
        n = len(raw)
        if any(len(r) != n for r in raw):
            raise ValueError("matrix must be square")
        if d is None:
            for r in raw:
                for x in r:
                    fd = field_of(x)
                    if fd is not None and not (isinstance(x, QuadExt) and x.b == 0):
                        if d is not None and d != fd:
                            raise FieldError("entries from different quadratic fields")
                        d = fd
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "rows", tuple(tuple(coerce(x, d) for x in r) for r in raw))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"

    def zero(self) -> Scalar:
        return coerce(0, self.d)

    def one(self) -> Scalar:
        return coerce(1, self.d)

    @classmethod
    def identity(cls, n: int, d: int | None = None) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], d)

    @classmethod
    def zeros(cls, n: int, d: int | None = None) -> ExactMatrix:
        return cls([[0] * n for _ in range(n)], d)

    @classmethod
    def diag(cls, values: Sequence, d: int | None = None) -> ExactMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], d)

    def _join_field(self, other: ExactMatrix) -> int | None:
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise FieldError(f"mixing sqrt({self.d}) and sqrt({other.d}) matrices")

    def __add__(self, other):
        if isinstance(other, ExactMatrix):
            d = self._join_field(other)
            return ExactMatrix(
                [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)], d
            )
        return NotImplemented

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows], self.d)

    def __sub__(self, other):
        if isinstance(other, ExactMatrix):
            return self + (-other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        d = self.d if self.d is not None else field_of(other)
        return ExactMatrix([[a * other for a in r] for r in self.rows], d)

    __rmul__ = __mul__

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        d = self._join_field(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = coerce(0, d)
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, d)

    def __pow__(self, k: int) -> ExactMatrix:
        out = ExactMatrix.identity(self.n, self.d)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def shift(self, c) -> ExactMatrix:
        """self + c*I."""
        c = coerce(c, self.d)
        return ExactMatrix(
            [[a + c if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self.rows)],
            self.d,
        )

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.rows)), self.d)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def trace(self) -> Scalar:
        acc = self.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Scalar]]:
        """Rectangular sub-block as nested lists (blocks need not be square)."""
        return [[self.rows[i][j] for j in cols] for i in rows]

    def principal(self, idx: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.block(idx, idx), self.d)

    def permute(self, perm: Sequence[int]) -> ExactMatrix:
        """P^T A P with P the permutation matrix sending e_i to e_perm[i]."""
        return ExactMatrix([[self.rows[perm[i]][perm[j]] for j in range(self.n)] for i in range(self.n)], self.d)

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(self.n) for j in range(i))

    def is_nonnegative(self) -> bool:
        return all(sign(x) >= 0 for r in self.rows for x in r)

    def negative_entries(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j, x in enumerate(r) if sign(x) < 0]

    def is_rational(self) -> bool:
        return all(not isinstance(x, QuadExt) or x.b == 0 for r in self.rows for x in r)

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in r] for r in self.rows]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": "rational" if self.d is None else {"quad": self.d},
            "entries": [[scalar_to_json(x) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ExactMatrix:
        field = obj.get("field", "rational")
        d = None if field == "rational" else int(field["quad"])
        entries = [[scalar_from_json(x) for x in r] for r in obj["entries"]]
        m = cls(entries, d)
        if "n" in obj and int(obj["n"]) != m.n:
            raise ValueError(f"declared n={obj['n']} but got {m.n} rows")
        return m

    # --- elimination kernels -------------------------------------------------

    def det(self) -> Scalar:
        """Bareiss fraction-free determinant."""
        n = self.n
        if n == 0:
            return self.one()
        a = [list(r) for r in self.rows]
        s = 1
        prev = self.one()
        for k in range(n - 1):
            if not a[k][k]:
                p = next((i for i in range(k + 1, n) if a[i][k]), None)
                if p is None:
                    return self.zero()
                a[k], a[p] = a[p], a[k]
                s = -s
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            prev = a[k][k]
        return a[n - 1][n - 1] * s

    def rank(self) -> int:
        return _rank_rows([list(r) for r in self.rows], self.one())

    def inverse(self) -> ExactMatrix:
        n = self.n
        a = [list(r) + [self.one() if i == j else self.zero() for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                raise SingularMatrixError(self.rank(), n)
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return ExactMatrix([r[n:] for r in a], self.d)

    def charpoly(self) -> Poly:
        """det(xI - A) by the Faddeev-LeVerrier recursion."""
        n = self.n
        coeffs = [self.zero()] * (n + 1)
        coeffs[n] = self.one()
        AM = self
        c = self.zero()
        for k in range(1, n + 1):
            if k > 1:
                AM = self @ AM.shift(c)
            c = -AM.trace() / k
            coeffs[n - k] = c
        return Poly(_rational_coeffs(coeffs))

    def minpoly(self) -> Poly:
        """Least-degree monic annihilator from the first linear dependency among vec(A^k)."""
        n = self.n
        one = self.one()
        basis: list[tuple[list, list]] = []  # (reduced vector, combination over powers)
        P = ExactMatrix.identity(n, self.d)
        for k in range(n + 1):
            v = [x for r in P.rows for x in r]
            combo = [self.zero()] * (n + 1)
            combo[k] = one
            for bv, bc in basis:
                piv = next(i for i, x in enumerate(bv) if x)
                if v[piv]:
                    f = v[piv] / bv[piv]
                    v = [x - f * y for x, y in zip(v, bv)]
                    combo = [x - f * y for x, y in zip(combo, bc)]
            if not any(v):
                return Poly(_rational_coeffs(combo[: k + 1])).monic()
            # keep pivot columns distinct
            piv = next(i for i, x in enumerate(v) if x)
            for idx, (bv, bc) in enumerate(basis):
                if bv[piv]:
                    f = bv[piv] / v[piv]
                    basis[idx] = ([x - f * y for x, y in zip(bv, v)], [x - f * y for x, y in zip(bc, combo)])
            basis.append((v, combo))
            P = P @ self
        raise AssertionError("Cayley-Hamilton violated")


def _rank_rows(a: list[list], one) -> int:
    """Fraction-free elimination with full pivot search."""
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    prev = one
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev
            a[i][c] = a[i][c] * 0
        prev = a[r][c]
        r += 1
    return r


def _rational_coeffs(coeffs) -> list[Fraction]:
    out = []
    for c in coeffs:
        if isinstance(c, QuadExt):
            if c.b != 0:
                raise FieldError("polynomial coefficient left Q; only rational polynomials are supported")
            out.append(c.a)
        else:
            out.append(to_fraction(c))
    return out


def rank(A: ExactMatrix) -> int:
    return A.rank()


def inverse(A: ExactMatrix) -> ExactMatrix:
    return A.inverse()


def charpoly(A: ExactMatrix) -> Poly:
    return A.charpoly()


def minpoly(A: ExactMatrix) -> Poly:
    return A.minpoly()


def matrix_poly_eval(p: Poly, A: ExactMatrix) -> ExactMatrix:
    """p(A) by Horner's rule."""
    acc = ExactMatrix.zeros(A.n, A.d)
    for c in reversed(p.coeffs):
        acc = (acc @ A).shift(c)
    return acc


def rank_of_rows(rows: list[list], d: int | None = None) -> int:
    """Rank of a rectangular exact array."""
    if not rows:
        return 0
    a = [[coerce(x, d) for x in r] for r in rows]
    return _rank_rows(a, coerce(1, d))
