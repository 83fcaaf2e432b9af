"""Fusions by the constant block-row-sum criterion, on P or on Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import BadPartition, InternalMismatch, NoFusion
from .exact import RatMatrix
from .scheme import RelationTable, SchemeCore, spectrum, validate_table


@dataclass(frozen=True)
class IndexPartition:
    """Partition of {1..d}; index 0 is always an implicit singleton part.

    Parts are sorted internally and ordered by their smallest element.
    """

    parts: tuple[tuple[int, ...], ...]

    def __init__(self, parts: Iterable[Iterable[int]], d: int | None = None):
        norm = [tuple(sorted(set(p))) for p in parts]
        if any(not p for p in norm):
            raise BadPartition("empty part")
        flat = [i for p in norm for i in p]
        if len(flat) != len(set(flat)):
            raise BadPartition("parts overlap")
        if 0 in flat:
            raise BadPartition("index 0 must not appear in a partition")
        top = d if d is not None else (max(flat) if flat else 0)
        if sorted(flat) != list(range(1, top + 1)):
            raise BadPartition(f"parts do not cover 1..{top}: {norm}")
        object.__setattr__(self, "parts", tuple(sorted(norm)))

    @property
    def d(self) -> int:
        return sum(len(p) for p in self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def label_map(self) -> dict[int, int]:
        """Original index -> 1-based part number (0 -> 0)."""
        out = {0: 0}
        for n, part in enumerate(self.parts, start=1):
            for i in part:
                out[i] = n
        return out

    def nontrivial(self) -> list[tuple[int, ...]]:
        return [p for p in self.parts if len(p) > 1]

    def is_discrete(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def __str__(self):
        return "|".join(",".join(map(str, p)) for p in self.parts)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "IndexPartition":
        """Parse ``"1,2|3"``."""
        try:
            parts = [[int(x) for x in chunk.split(",") if x.strip()]
                     for chunk in text.split("|")]
        except ValueError as exc:
            raise BadPartition(f"cannot parse partition {text!r}") from exc
        return cls(parts, d=d)

    @classmethod
    def discrete(cls, d: int) -> "IndexPartition":
        return cls([[i] for i in range(1, d + 1)], d=d)

    @classmethod
    def pair(cls, i: int, j: int, d: int) -> "IndexPartition":
        rest = [[h] for h in range(1, d + 1) if h not in (i, j)]
        return cls([[i, j]] + rest, d=d)


@dataclass(frozen=True)
class FusionOutcome:
    pi: IndexPartition
    rho: IndexPartition
    fusedP: RatMatrix
    fusedCore: SchemeCore | None = None


def block_sums(M: RatMatrix, pi: IndexPartition) -> list[tuple[Fraction, ...]]:
    """Row l -> (M[l,0], sum over each part of M[l, part])."""
    return [
        (row[0],) + tuple(sum((row[i] for i in part), Fraction(0)) for part in pi.parts)
        for row in M.rows()
    ]


def bm_check(M: RatMatrix, pi: IndexPartition) -> FusionOutcome:
    """Fuse the columns of an eigenmatrix along ``pi``.

    Works identically for P (columns = relations, rows = idempotents) and Q
    (columns = idempotents, rows = relations).  Raises NoFusion unless the
    block-sum vectors take exactly |pi| + 1 distinct values with row 0 alone.
    """
    d = M.ncols - 1
    if pi.d != d:
        raise BadPartition(f"partition covers 1..{pi.d} but the matrix has d={d}")
    sums = block_sums(M, pi)
    groups: dict[tuple, list[int]] = {}
    for l, vec in enumerate(sums):
        groups.setdefault(vec, []).append(l)
    expected = len(pi) + 1
    if len(groups) != expected or groups[sums[0]] != [0]:
        raise NoFusion(len(groups), expected)
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    rho = IndexPartition([rows for _, rows in ordered[1:]], d=d)
    fused = RatMatrix([vec for vec, _ in ordered])
    return FusionOutcome(pi=pi, rho=rho, fusedP=fused)


def fuses(M: RatMatrix, pi: IndexPartition) -> bool:
    try:
        bm_check(M, pi)
    except NoFusion:
        return False
    return True


def relabel(table: RelationTable, pi: IndexPartition) -> RelationTable:
    lut = np.zeros(table.d + 1, dtype=np.int64)
    for i, n in pi.label_map().items():
        lut[i] = n
    return RelationTable(lut[table.cells], d=len(pi))


def fuse_relations(table: RelationTable, pi: IndexPartition,
                   P: RatMatrix | None = None) -> tuple[RelationTable, FusionOutcome]:
    """Relabel the table along ``pi`` and re-validate the fused scheme.

    ``P`` is the source eigenmatrix; computed when omitted.
    """
    if P is None:
        P = spectrum(validate_table(table)).P
    outcome = bm_check(P, pi)
    fused_table = relabel(table, pi)
    core = validate_table(fused_table)
    direct = spectrum(core).P
    if _sorted_rows(direct) != _sorted_rows(outcome.fusedP):
        raise InternalMismatch("fused spectrum disagrees with block row sums")
    return fused_table, FusionOutcome(outcome.pi, outcome.rho, outcome.fusedP, core)


def _sorted_rows(M: RatMatrix):
    return sorted(M.rows())


def fusing_pairs(M: RatMatrix) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """All fusing pairs {i,j} with the dual pair they induce, sorted."""
    d = M.ncols - 1
    out = []
    for i, j in combinations(range(1, d + 1), 2):
        try:
            res = bm_check(M, IndexPartition.pair(i, j, d))
        except NoFusion:
            continue
        (dual,) = res.rho.nontrivial()
        out.append(((i, j), dual))
    return sorted(out)


def pair_bijection_check(P: RatMatrix, Q: RatMatrix) -> dict | None:
    """Fusing pairs of relations and of idempotents must correspond 1-1.

    Returns None on success, otherwise a witness dict.
    """
    rel = fusing_pairs(P)
    ide = fusing_pairs(Q)
    images = [dual for _, dual in rel]
    if len(set(images)) != len(images):
        return {"reason": "two relation pairs share a dual pair", "pairs": rel}
    if set(images) != {pair for pair, _ in ide}:
        return {"reason": "dual pairs differ from fusing idempotent pairs",
                "relations": rel, "idempotents": ide}
    back = dict(ide)
    for pair, dual in rel:
        if back[dual] != pair:
            return {"reason": "duality round trip fails", "pair": pair, "dual": dual}
    return None

