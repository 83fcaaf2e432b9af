"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Matrices are immutable row-major grids of Fractions.
Elimination is fraction-free: each row is scaled to integers first and the
integer matrix is reduced with Bareiss-style exact divisions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import NonMonicOrNonIntegral, SingularMatrix

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'a/b'")
    return Fraction(x)


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        grid = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("matrix dimensions must be at least 1x1")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("ragged rows")
        self._rows = grid
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return len(self._rows)

    def __eq__(self, other):
        if isinstance(other, RatMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"RatMatrix([{body}])"

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._rows))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose()._rows
        return RatMatrix(
            [sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
            for row in self._rows
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)
        )

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([c * x for x in row] for row in self._rows)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        return tuple(sum((a * as_rational(b) for a, b in zip(row, vec)), Fraction(0))
                     for row in self._rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix([self._rows[i][j] for j in cols] for i in rows)

    def principal(self) -> "RatMatrix":
        """Drop the first row and column."""
        return self.submatrix(range(1, self.nrows), range(1, self.ncols))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._rows for x in row)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    # Scale each row by the lcm of its denominators; row scaling preserves
    # the row space and the nullspace.
    out = []
    for row in rows:
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def _bareiss_gauss_jordan(a: list[list[int]], ncols_pivot: int) -> list[tuple[int, int]]:
    """In-place fraction-free Gauss-Jordan elimination.

    Pivots are searched among the first ``ncols_pivot`` columns only.  Every
    division performed is exact.  Returns the list of (row, column) pivots;
    after return, pivot rows have the common pivot value in their pivot
    column and zeros in every other pivot column.
    """
    nrows = len(a)
    if not nrows:
        return []
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols_pivot):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            # Exact by Sylvester's identity; earlier pivot rows are rescaled
            # too, so every pivot entry tracks the current leading minor.
            new = []
            for x, y in zip(row, prow):
                q, rem = divmod(piv * x - f * y, prev)
                if rem:
                    raise ArithmeticError("inexact fraction-free step")
                new.append(q)
            a[i] = new
        prev = piv
        pivots.append((r, c))
        r += 1
    return pivots


def rat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse; raises SingularMatrix when the rank is deficient."""
    if not m.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m.rows())]
    a = _integer_rows(aug)
    pivots = _bareiss_gauss_jordan(a, n)
    if len(pivots) < n:
        raise SingularMatrix(f"rank {len(pivots)} < {n}")
    inv = []
    for r, c in sorted(pivots, key=lambda rc: rc[1]):
        piv = a[r][c]
        inv.append([Fraction(x, piv) for x in a[r][n:]])
    result = RatMatrix(inv)
    if m @ result != RatMatrix.identity(n):
        raise ArithmeticError("inverse failed verification")
    return result


def rank(m: RatMatrix) -> int:
    a = _integer_rows(m.rows())
    return len(_bareiss_gauss_jordan(a, m.ncols))


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix given as nested lists (copied, not modified)."""
    a = [list(map(int, row)) for row in rows]
    if not a:
        return 0
    return len(_bareiss_gauss_jordan(a, len(a[0])))


MODULUS = 2_147_483_629  # prime below 2**31, so products fit in int64


def rank_mod_p(rows, p: int = MODULUS) -> int:
    """Rank over GF(p) of an integer matrix; a lower bound for its rational rank."""
    import numpy as np

    a = np.array(rows, dtype=object) % p
    a = a.astype(np.int64)
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        idx = np.nonzero(a[r + 1:, c])[0] + r + 1
        if len(idx):
            # entries stay below p, so each product is below p**2 < 2**63
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r]) % p) % p
        r += 1
    return r


def rational_nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} in reduced-echelon form, one vector per free column."""
    a = _integer_rows(m.rows())
    ncols = m.ncols
    pivots = _bareiss_gauss_jordan(a, ncols)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for c, r in pivot_cols.items():
            vec[c] = Fraction(-a[r][f], a[r][c])
        basis.append(tuple(vec))
    for vec in basis:
        if any(x != 0 for x in m.apply(vec)):
            raise ArithmeticError("nullspace vector failed verification")
    return basis


def char_poly(m: RatMatrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - M), degree-descending.

    Faddeev-LeVerrier recursion; all divisions are exact over the rationals.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [Fraction(1)]
    ident = RatMatrix.identity(n)
    mk = RatMatrix.zero(n, n)
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(c))
        c = -sum((mk[i, i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
    return coeffs


def poly_eval(poly: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in poly:
        acc = acc * x + c
    return acc


def _deflate(poly: list[int], r: int) -> list[int]:
    # Synthetic division by (x - r); caller guarantees the remainder is zero.
    out = [poly[0]]
    for c in poly[1:-1]:
        out.append(c + r * out[-1])
    return out


def integer_roots(poly: Sequence, bound: int | None = None) -> tuple[list[int], list[int]]:
    """Integer roots (with multiplicity) of a monic integer polynomial.

    Returns ``(roots, residual)`` where ``poly = prod(x - r) * residual`` and
    the residual has no integer root.  Roots are sorted ascending.

    Candidates are divisors of the lowest nonzero coefficient.  ``bound``
    optionally caps |root| (e.g. a known spectral radius), which keeps the
    divisor trial linear in the bound when the constant term is huge.
    """
    coeffs = [as_rational(c) for c in poly]
    if not coeffs or coeffs[0] != 1 or any(c.denominator != 1 for c in coeffs):
        raise NonMonicOrNonIntegral(f"polynomial {list(map(str, coeffs))} is not monic integral")
    p = [int(c) for c in coeffs]
    roots: list[int] = []
    while len(p) > 1 and p[-1] == 0:
        roots.append(0)
        p = p[:-1]
    while len(p) > 1:
        const = abs(p[-1])
        limit = const if bound is None else min(const, bound)
        found = None
        for cand in _divisor_candidates(const, limit):
            for r in (cand, -cand):
                if poly_eval(p, r) == 0:
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p = _deflate(p, found)
    return sorted(roots), p


def _divisor_candidates(const: int, limit: int):
    if limit < 1:
        return
    if const <= limit * limit:
        # Enumerate divisor pairs up to sqrt(const).
        small, large = [], []
        d = 1
        while d * d <= const:
            if const % d == 0:
                if d <= limit:
                    small.append(d)
                e = const // d
                if e != d and e <= limit:
                    large.append(e)
            d += 1
        yield from small
        yield from reversed(large)
    else:
        for d in range(1, limit + 1):
            if const % d == 0:
                yield d


def format_poly(poly: Sequence) -> str:
    deg = len(poly) - 1
    terms = []
    for i, c in enumerate(poly):
        c = as_rational(c)
        if c == 0:
            continue
        e = deg - i
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        if e == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else str(mag)
            body = coef + ("x" if e == 1 else f"x^{e}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
