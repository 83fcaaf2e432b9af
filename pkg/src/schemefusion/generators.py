"""Constructions of example schemes as relation tables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod

import numpy as np

from .errors import BadSize, BadT, NotPrime
from .exact import RatMatrix
from .scheme import RelationTable, validate_table


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: tuple[int, ...]

    def name(self) -> str:
        return f"{self.kind}({','.join(map(str, self.params))})"


def complete(n: int) -> RelationTable:
    if n < 2:
        raise BadSize(f"complete graph needs n >= 2, got {n}")
    return RelationTable(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64), d=1)


def wreath(m: int, inner: RelationTable) -> RelationTable:
    """m copies of ``inner``; pairs in different copies get relation d_inner + 1."""
    if m < 2:
        raise BadSize(f"wreath needs m >= 2 copies, got {m}")
    validate_table(inner)
    vi, di = inner.v, inner.d
    cells = np.full((m * vi, m * vi), di + 1, dtype=np.int64)
    for c in range(m):
        s = slice(c * vi, (c + 1) * vi)
        cells[s, s] = inner.cells
    return RelationTable(cells, d=di + 1)


def wreath_chain(*ns: int) -> RelationTable:
    """K_{n1} wr K_{n2} wr ... wr K_{nr}.

    Vertices are tuples (x1, ..., xr); two distinct vertices are in relation i
    when their first differing coordinate is i.  Relation 1 is the coarsest
    (valency n_r...n_2 (n_1 - 1)) and relation r the innermost (n_r - 1).
    """
    if len(ns) < 2 or any(n < 2 for n in ns):
        raise BadSize(f"wreath chain needs r >= 2 factors each >= 2, got {ns}")
    verts = np.array(list(product(*(range(n) for n in ns))), dtype=np.int64)
    r = len(ns)
    differ = verts[:, None, :] != verts[None, :, :]
    # first differing coordinate (1-based), 0 on the diagonal
    first = np.where(differ.any(axis=2), differ.argmax(axis=2) + 1, 0)
    return RelationTable(first, d=r)


def wreath_chain_P(*ns: int) -> RatMatrix:
    """Closed-form first eigenmatrix of :func:`wreath_chain`."""
    r = len(ns)

    def tail(i):  # n_{i+1} * ... * n_r for 1-based i
        return prod(ns[i:])

    k = [1] + [tail(i) * (ns[i - 1] - 1) for i in range(1, r + 1)]
    rows = [k]
    for l in range(1, r + 1):
        row = [1]
        for i in range(1, r + 1):
            if i < l:
                row.append(0)
            elif i == l:
                row.append(-tail(i))
            else:
                row.append(k[i])
        rows.append(row)
    return RatMatrix(rows)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def latin_scheme(n: int, t: int) -> RelationTable:
    """Affine-plane scheme on Z_n x Z_n using t parallel classes of lines.

    Relation 1: same first coordinate.  Relation 2: same second coordinate.
    Relation 2 + s (s = 1..t-2): difference lies on the line y = s x.
    Relation t + 1: every remaining pair.
    """
    if not _is_prime(n):
        raise NotPrime(f"n={n} is not prime")
    if not 2 <= t <= n:
        raise BadT(f"need 2 <= t <= n, got t={t}, n={n}")
    xs, ys = np.divmod(np.arange(n * n), n)
    dx = (xs[None, :] - xs[:, None]) % n
    dy = (ys[None, :] - ys[:, None]) % n
    cells = np.full((n * n, n * n), t + 1, dtype=np.int64)
    cells[(dx == 0)] = 1
    cells[(dy == 0) & (dx != 0)] = 2
    for s in range(1, t - 1):
        cells[(dy == (s * dx) % n) & (dx != 0)] = 2 + s
    np.fill_diagonal(cells, 0)
    return RelationTable(cells, d=t + 1)


def johnson3(n: int) -> RelationTable:
    """Johnson scheme J(n, 3): relation = 3 - |intersection|."""
    if n < 7:
        raise BadSize(f"johnson3 needs n >= 7, got {n}")
    subsets = list(combinations(range(n), 3))
    masks = np.array([sum(1 << x for x in s) for s in subsets], dtype=np.int64)
    inter = masks[:, None] & masks[None, :]
    pop = np.zeros_like(inter)
    for b in range(n):
        pop += (inter >> b) & 1
    return RelationTable(3 - pop, d=3)


def johnson3_valencies(n: int) -> tuple[int, ...]:
    return tuple(comb(3, j) * comb(n - 3, j) for j in range(4))


def build(spec: GeneratorSpec) -> RelationTable:
    kind, ps = spec.kind, spec.params
    if kind == "complete":
        return complete(*ps)
    if kind == "chain":
        return wreath_chain(*ps)
    if kind == "latin":
        return latin_scheme(*ps)
    if kind == "johnson3":
        return johnson3(*ps)
    if kind == "wreath-latin":
        m, n, t = ps
        return wreath(m, latin_scheme(n, t))
    raise BadSize(f"unknown generator kind {kind!r}")
