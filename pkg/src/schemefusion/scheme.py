"""Symmetric association schemes: validation, eigenmatrices, Krein parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    BadDiagonal,
    InconsistentTriple,
    InputError,
    InternalMismatch,
    MissingClass,
    NonIntegralSpectrum,
    NotSymmetric,
    SchemeError,
    TooLarge,
)
from .exact import (
    RatMatrix,
    char_poly,
    integer_roots,
    rat_inverse,
    rational_nullspace,
)


class RelationTable:
    """A v x v table of relation indices; ``cells[x, y]`` is in 0..d.

    Only shape and range are checked here.  The scheme axioms are checked by
    :func:`validate_table`.
    """

    __slots__ = ("cells", "v", "d")

    def __init__(self, cells, d: int | None = None):
        arr = np.array(cells, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise InputError(f"relation table must be square, got shape {arr.shape}")
        if arr.min() < 0:
            raise InputError("negative relation index")
        top = int(arr.max())
        if d is None:
            d = top
        elif top > d:
            raise InputError(f"relation index {top} exceeds d={d}")
        arr.setflags(write=False)
        self.cells = arr
        self.v = int(arr.shape[0])
        self.d = int(d)

    def adjacency(self, i: int) -> np.ndarray:
        return (self.cells == i).astype(np.int64)

    def __eq__(self, other):
        if not isinstance(other, RelationTable):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.cells, other.cells)

    def __repr__(self):
        return f"RelationTable(v={self.v}, d={self.d})"


@dataclass(frozen=True)
class SchemeCore:
    """Validated scheme.  ``valencies[0] == 1``; ``p[h][i][j]`` for h,i,j in 0..d."""

    v: int
    d: int
    valencies: tuple[int, ...]
    p: tuple[tuple[tuple[int, ...], ...], ...]

    def intersection_matrix(self, i: int) -> RatMatrix:
        """B_i with (B_i)[h][j] = p^h_ij."""
        return RatMatrix([[self.p[h][i][j] for j in range(self.d + 1)]
                          for h in range(self.d + 1)])


@dataclass(frozen=True)
class SpectralData:
    P: RatMatrix
    Q: RatMatrix
    multiplicities: tuple[int, ...]
    krein: tuple
    integral: bool = True
    v: int = field(default=0)

    @property
    def d(self) -> int:
        return self.P.nrows - 1

    @property
    def valencies(self) -> tuple[Fraction, ...]:
        return self.P.row(0)

    def invariant_violations(self) -> list[str]:
        """Structural identities that must hold for every scheme."""
        out = []
        n = self.d + 1
        v = self.v
        if self.P @ self.Q != RatMatrix.identity(n).scale(v):
            out.append("PQ != vI")
        if any(self.P[j, 0] != 1 for j in range(n)):
            out.append("P column 0 not all ones")
        if any(self.Q[i, 0] != 1 for i in range(n)):
            out.append("Q column 0 not all ones")
        if sum(self.multiplicities) != v:
            out.append("sum of multiplicities != v")
        if any(m <= 0 for m in self.multiplicities):
            out.append("nonpositive multiplicity")
        if sum(self.P.row(0)) != v:
            out.append("sum of valencies != v")
        q = self.krein
        for h in range(n):
            for i in range(n):
                for j in range(n):
                    if q[h][i][j] < 0:
                        out.append(f"Krein q^{h}_{i}{j} < 0")
                    if q[h][i][j] != q[h][j][i]:
                        out.append(f"Krein q^{h}_{i}{j} not symmetric")
        for i in range(n):
            for j in range(n):
                want = self.multiplicities[i] if i == j else 0
                if q[0][i][j] != want:
                    out.append(f"q^0_{i}{j} != m_i delta_ij")
        return out


def validate_table(t: RelationTable) -> SchemeCore:
    """Check the scheme axioms and return the intersection numbers."""
    c = t.cells
    v, d = t.v, t.d
    if not np.array_equal(c, c.T):
        x, y = map(int, np.argwhere(c != c.T)[0])
        raise NotSymmetric(f"cell[{x}][{y}]={c[x, y]} but cell[{y}][{x}]={c[y, x]}")
    diag = np.diagonal(c)
    if np.any(diag != 0):
        x = int(np.flatnonzero(diag)[0])
        raise BadDiagonal(f"cell[{x}][{x}]={diag[x]}")
    off = c + np.eye(v, dtype=np.int64)
    if np.any(off == 0):
        x, y = map(int, np.argwhere(off == 0)[0])
        raise BadDiagonal(f"cell[{x}][{y}]=0 off the diagonal")
    present = set(np.unique(c).tolist())
    missing = [i for i in range(1, d + 1) if i not in present]
    if missing:
        raise MissingClass(f"relation indices {missing} never occur")

    adj = [t.adjacency(i) for i in range(d + 1)]
    # representative pair of each class
    reps = []
    for h in range(d + 1):
        x, y = np.argwhere(c == h)[0]
        reps.append((int(x), int(y)))
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(i, d + 1):
            if i == 0:
                prod = adj[j]
            else:
                prod = adj[i] @ adj[j]
            ref = prod[tuple(np.array(reps).T)]
            bad = prod != ref[c]
            if bad.any():
                x, y = map(int, np.argwhere(bad)[0])
                h = int(c[x, y])
                rx, ry = reps[h]
                raise InconsistentTriple(
                    h, i, j, ((rx, ry, int(ref[h])), (x, y, int(prod[x, y])))
                )
            p[:, i, j] = ref
            p[:, j, i] = ref
    valencies = tuple(int(p[0, i, i]) for i in range(d + 1))
    core = SchemeCore(
        v=v,
        d=d,
        valencies=valencies,
        p=tuple(tuple(tuple(int(x) for x in row) for row in mat) for mat in p),
    )
    _check_core(core)
    return core


def _check_core(core: SchemeCore) -> None:
    k, p = core.valencies, core.p
    if sum(k) != core.v:
        raise InternalMismatch("valencies do not sum to v")
    n = core.d + 1
    for h in range(n):
        for i in range(n):
            for j in range(n):
                if k[h] * p[h][i][j] != k[i] * p[i][h][j]:
                    raise InternalMismatch(f"k_h p^h_ij != k_i p^i_hj at {(h, i, j)}")


def _refine(spaces, op: RatMatrix, eigenvalues):
    """Split each subspace into its intersections with the eigenspaces of op."""
    n = op.nrows
    out = []
    for basis in spaces:
        if len(basis) == 1:
            out.append(basis)
            continue
        wmat = RatMatrix(zip(*basis))  # columns are the basis vectors
        pieces = []
        for theta in eigenvalues:
            shifted = op - RatMatrix.identity(n).scale(theta)
            coeffs = rational_nullspace(shifted @ wmat)
            if coeffs:
                pieces.append([wmat.apply(cvec) for cvec in coeffs])
        if sum(len(b) for b in pieces) != len(basis):
            raise InternalMismatch("intersection matrix is not diagonalizable")
        out.extend(pieces)
    return out


def eigenmatrix(core: SchemeCore) -> RatMatrix:
    """First eigenmatrix P from the intersection numbers.

    Rows are common left eigenvectors of the intersection matrices, found by
    splitting Q^(d+1) along the integer eigenspaces of B_1, ..., B_d in turn.
    Row 0 is the valency row; the other rows are in ascending lexicographic
    order.
    """
    n = core.d + 1
    spaces = [[tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]]
    for i in range(1, n):
        b = core.intersection_matrix(i)
        roots, residual = integer_roots(char_poly(b), bound=core.valencies[i])
        if len(residual) > 1:
            raise NonIntegralSpectrum(residual, relation=i)
        spaces = _refine(spaces, b.transpose(), sorted(set(roots)))
        if len(spaces) == n:
            break
    if len(spaces) != n:
        raise InternalMismatch("common eigenspaces are not one-dimensional")
    rows = []
    for (vec,) in spaces:
        if vec[0] == 0:
            raise InternalMismatch("eigenvector with zero first coordinate")
        rows.append(tuple(x / vec[0] for x in vec))
    trivial = tuple(Fraction(k) for k in core.valencies)
    if trivial not in rows:
        raise InternalMismatch("valency row missing from eigenvectors")
    rows.remove(trivial)
    rows.sort()
    return RatMatrix([trivial] + rows)


def krein_parameters(Q: RatMatrix, v: int):
    """q[h][i][j] from  sum_h Q[l][h] q^h_ij = Q[l][i] Q[l][j]  for all l."""
    n = Q.nrows
    qinv = rat_inverse(Q)
    q = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rhs = [Q[l, i] * Q[l, j] for l in range(n)]
            sol = qinv.apply(rhs)
            for h in range(n):
                q[h][i][j] = sol[h]
                q[h][j][i] = sol[h]
    return tuple(tuple(tuple(row) for row in mat) for mat in q)


def spectral_from_P(P: RatMatrix) -> SpectralData:
    """Q, multiplicities and Krein parameters of a given first eigenmatrix."""
    if not P.is_square:
        raise InputError("eigenmatrix must be square")
    total = sum(P.row(0))
    if total.denominator != 1:
        raise InputError("row 0 of P does not sum to an integer")
    v = int(total)
    Q = rat_inverse(P).scale(v)
    mult = []
    for x in Q.row(0):
        if x.denominator != 1 or x <= 0:
            raise SchemeError(f"multiplicity {x} is not a positive integer")
        mult.append(int(x))
    return SpectralData(
        P=P,
        Q=Q,
        multiplicities=tuple(mult),
        krein=krein_parameters(Q, v),
        integral=P.is_integral(),
        v=v,
    )


def spectrum(core: SchemeCore) -> SpectralData:
    return spectral_from_P(eigenmatrix(core))


def rowcol_check(M: RatMatrix, principal: bool = True) -> tuple[int, ...] | None:
    """Search for t rows with fewer than t non-constant columns.

    Returns the first violating row subset, or None.  With ``principal`` the
    search runs over the principal part (rows and columns 1..d).
    """
    start = 1 if principal else 0
    idx = list(range(start, M.nrows))
    cols = list(range(start, M.ncols))
    if len(idx) > 10:
        raise TooLarge(f"subset enumeration over {len(idx)} rows")
    for t in range(2, len(idx) + 1):
        for rows in combinations(idx, t):
            nonconst = sum(1 for c in cols if len({M[r, c] for r in rows}) > 1)
            if nonconst < t:
                return rows
    return None


def adjacency_products(core: SchemeCore, t: RelationTable) -> bool:
    """Brute-force check that A_i A_j == sum_h p^h_ij A_h for all i, j."""
    adj = [t.adjacency(i) for i in range(core.d + 1)]
    for i in range(core.d + 1):
        for j in range(core.d + 1):
            rebuilt = sum(core.p[h][i][j] * adj[h] for h in range(core.d + 1))
            if not np.array_equal(adj[i] @ adj[j], rebuilt):
                return False
    return True

