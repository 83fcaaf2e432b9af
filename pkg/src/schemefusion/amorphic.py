"""Amorphicity: canonical-form decider, brute-force oracle, implication audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import comb
from typing import Iterator

from .errors import NoFusion, TooManyClasses
from .exact import RatMatrix
from .fusegraph import fusing_graph, graph_profile
from .fusion import IndexPartition, bm_check
from .srg import idempotent_types, latin_kinds, relation_types

ORACLE_LIMIT = 8


@dataclass
class CanonicalResult:
    amorphic: bool
    row_order: tuple[int, ...] | None = None  # row placed at principal position c
    reason: str = ""

    def __bool__(self):
        return self.amorphic


@dataclass
class OracleResult:
    amorphic: bool
    failing: IndexPartition | None = None
    checked: int = 0
    fusing: int = 0

    def __bool__(self):
        return self.amorphic


@dataclass
class AmorphicVerdict:
    canonical: bool
    oracle: bool | None
    selfDual: bool | None
    perTheorem: list[dict] = field(default_factory=list)
    permutation: tuple[int, ...] | None = None


def canonical_check(M: RatMatrix) -> CanonicalResult:
    """Does the principal part have the single-distinguished-entry shape?

    Every principal column must take two values, one of them in exactly one
    row, and those distinguished rows must be distinct across columns.
    """
    d = M.ncols - 1
    if d <= 2:
        return CanonicalResult(True, tuple(range(1, d + 1)), "d <= 2")
    unique_row = []
    for c in range(1, d + 1):
        col = [M[l, c] for l in range(1, d + 1)]
        values = set(col)
        if len(values) != 2:
            return CanonicalResult(False, reason=f"column {c} takes {len(values)} values")
        singles = [x for x in values if col.count(x) == 1]
        if len(singles) != 1:
            return CanonicalResult(False, reason=f"column {c} has no unique entry")
        unique_row.append(col.index(singles[0]) + 1)
    if len(set(unique_row)) != d:
        return CanonicalResult(False, reason="distinguished rows collide")
    return CanonicalResult(True, tuple(unique_row))


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All restricted growth strings of length n, lexicographic order."""
    if n == 0:
        yield []
        return
    a = [0] * n
    while True:
        yield list(a)
        # rightmost position that can be incremented
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0


def set_partitions(d: int) -> Iterator[IndexPartition]:
    for rgs in restricted_growth_strings(d):
        blocks: dict[int, list[int]] = {}
        for idx, b in enumerate(rgs, start=1):
            blocks.setdefault(b, []).append(idx)
        yield IndexPartition(blocks.values(), d=d)


def brute_force_amorphic(M: RatMatrix, exhaustive: bool = False) -> OracleResult:
    """Try every partition of {1..d} with the block-row-sum criterion.

    Stops at the first failing partition unless ``exhaustive``; the reported
    failure is the first one in restricted-growth order either way.
    """
    d = M.ncols - 1
    if d > ORACLE_LIMIT:
        raise TooManyClasses(f"d={d} exceeds the oracle limit {ORACLE_LIMIT}")
    checked = fusing = 0
    first = None
    for pi in set_partitions(d):
        checked += 1
        try:
            bm_check(M, pi)
            fusing += 1
        except NoFusion:
            if first is None:
                first = pi
                if not exhaustive:
                    break
    return OracleResult(first is None, first, checked, fusing)


def self_duality_check(P: RatMatrix, Q: RatMatrix) -> tuple[int, ...] | None:
    """Find sigma fixing 0 with P[sigma(a), b] == Q[a, sigma(b)] for all a, b.

    Reindexing the idempotents by sigma permutes the rows of P and the
    columns of Q together.  Returns sigma (as a tuple, sigma[0] == 0) or None.
    """
    d = P.nrows - 1
    Prows = P.rows()
    Qrows = Q.rows()
    for perm in permutations(range(1, d + 1)):
        sigma = (0,) + perm
        ok = True
        for a in range(d + 1):
            pr, qr = Prows[sigma[a]], Qrows[a]
            if any(pr[b] != qr[sigma[b]] for b in range(d + 1)):
                ok = False
                break
        if ok:
            return sigma
    return None


def _untyped_count(types: dict, d: int) -> int:
    """Indices that are neither LS nor NLS strongly regular."""
    return sum(1 for i in range(1, d + 1) if not latin_kinds(types.get(i, ())))


def _same_type(types: dict, d: int) -> bool:
    kinds = [latin_kinds(types.get(i, ())) for i in range(1, d + 1)]
    return bool(set.intersection(*kinds)) if kinds else True


def implication_audit(P: RatMatrix, Q: RatMatrix, amorphic: bool,
                  rel_graph=None, ide_graph=None) -> list[dict]:
    """Evaluate each amorphicity criterion as hypothesis => conclusion.

    ``amorphic`` is the decided verdict.  Each row carries ``consistent =
    (not hypothesis) or conclusion``.
    """
    d = P.ncols - 1
    G = rel_graph or fusing_graph(P)
    H = ide_graph or fusing_graph(Q)
    gp, hp = graph_profile(G), graph_profile(H)
    rtypes, itypes = relation_types(P), idempotent_types(Q)
    all_pairs = comb(d, 2)

    rows = []

    def add(name, hyp, concl):
        rows.append({
            "name": name,
            "hypothesis": bool(hyp),
            "conclusion": bool(concl),
            "consistent": (not hyp) or bool(concl),
        })

    add("all-relation-pairs-fuse", gp["edgeCount"] == all_pairs, amorphic)
    add("at-most-one-untyped-relation", _untyped_count(rtypes, d) <= 1, amorphic)
    add("hamiltonian-relations-graph", d >= 3 and gp["hamiltonian"], amorphic)
    add("claw-at-four-classes", d == 4 and gp["hasClaw"], amorphic)
    add("connected-not-path", d >= 3 and gp["connected"] and not gp["isPath"], amorphic)
    add("edge-count-bound", d >= 3 and gp["edgeCount"] > comb(d - 1, 2), amorphic)
    add("all-idempotent-pairs-fuse", hp["edgeCount"] == all_pairs, amorphic)
    add("at-most-one-untyped-idempotent", _untyped_count(itypes, d) <= 1, amorphic)
    add("idempotents-connected-not-path",
        d >= 3 and hp["connected"] and not hp["isPath"], amorphic)
    # consequences of amorphicity
    add("amorphic-graphs-complete", amorphic,
        gp["edgeCount"] == all_pairs and hp["edgeCount"] == all_pairs)
    add("amorphic-relations-same-type", amorphic and d >= 3, _same_type(rtypes, d))
    add("amorphic-idempotents-same-type", amorphic and d >= 3, _same_type(itypes, d))
    add("equal-pair-counts", True, gp["edgeCount"] == hp["edgeCount"])
    return rows


def decide(P: RatMatrix, Q: RatMatrix, oracle: bool = True) -> AmorphicVerdict:
    """Both deciders, self-duality and the implication audit for one scheme."""
    d = P.ncols - 1
    canon = canonical_check(P)
    orc = None
    if oracle and d <= ORACLE_LIMIT:
        orc = brute_force_amorphic(P).amorphic
    amorphic = canon.amorphic if orc is None else orc
    # 2-class schemes count as amorphic but need not be formally self-dual
    gated = amorphic and d != 2
    sigma = self_duality_check(P, Q) if gated else None
    verdict = AmorphicVerdict(
        canonical=canon.amorphic,
        oracle=orc,
        selfDual=(sigma is not None) if gated else None,
        permutation=sigma,
    )
    verdict.perTheorem = implication_audit(P, Q, amorphic)
    return verdict
