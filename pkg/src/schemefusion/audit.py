"""Scheme catalog and the full verification battery behind ``verify-paper``."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, lcm
from pathlib import Path
from typing import Callable

import numpy as np

from . import generators as gen
from .amorphic import (
    ORACLE_LIMIT,
    brute_force_amorphic,
    canonical_check,
    self_duality_check,
    implication_audit,
)
from .errors import SchemeError
from .exact import RatMatrix, rank_mod_p
from .fusegraph import (
    FusingGraph,
    Label,
    fusing_graph,
    graph_profile,
    contraction_check,
)
from .fusion import IndexPartition, bm_check, fuse_relations, fusing_pairs, pair_bijection_check
from .io import format_rational, load
from .scheme import (
    RelationTable,
    SpectralData,
    adjacency_products,
    krein_parameters,
    rowcol_check,
    spectral_from_P,
    spectrum,
    validate_table,
)
from .srg import (
    LATIN,
    NEGATIVE_LATIN,
    SrIdempotent,
    classify_srg,
    column_values,
    complement,
    dual_railway,
    from_single_eigenvalue,
    idempotent_types,
    latin_kinds,
    railway,
    relation_types,
    smith_check,
    sr_detect,
    union,
)

REPORT_VERSION = 1
# fused tables are re-validated (fuse_relations) up to this v
TABLE_FUSE_LIMIT = 300


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    source: str
    make: Callable | None = None
    path: str | None = None
    kind: str | None = None
    params: tuple = ()

    def load(self):
        if self.path is not None:
            return load(self.path)
        return self.make()


def _gen_entry(kind: str, params: tuple) -> CatalogEntry:
    spec = gen.GeneratorSpec(kind, params)
    return CatalogEntry(
        id=f"{kind}-" + "-".join(map(str, params)),
        source=f"generated:{spec.name()}",
        make=_Maker(spec),
        kind=kind,
        params=params,
    )


class _Maker:
    # picklable callable for process pools
    def __init__(self, spec):
        self.spec = spec

    def __call__(self):
        return gen.build(self.spec)


def default_catalog(max_v: int = 300) -> list[CatalogEntry]:
    out = [_gen_entry("complete", (n,)) for n in range(2, 6)]
    for r in range(2, 6):
        for tup in product((2, 3), repeat=r):
            if np.prod(tup) <= max_v:
                out.append(_gen_entry("chain", tup))
    out += [_gen_entry("wreath-latin", (m, 3, 2)) for m in (2, 3)]
    out.append(_gen_entry("latin", (3, 2)))
    out += [_gen_entry("latin", (5, t)) for t in range(2, 6)]
    out.append(_gen_entry("johnson3", (7,)))
    return out


def directory_catalog(directory) -> list[CatalogEntry]:
    directory = Path(directory)
    files = sorted(p for p in directory.iterdir() if p.suffix in (".scheme", ".eigen"))
    return [CatalogEntry(id=p.stem, source=f"file:{p.name}", path=str(p)) for p in files]


class Checks:
    """Accumulates named pass/fail results for one scheme."""

    def __init__(self):
        self.items: list[dict] = []

    def add(self, name: str, ok: bool, detail=None):
        item = {"name": name, "ok": bool(ok)}
        if detail is not None and not ok:
            item["detail"] = detail
        self.items.append(item)
        return ok

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.items if not c["ok"]]


def _fmt_matrix(M: RatMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in M.rows()]


def _graph_json(G: FusingGraph) -> dict:
    prof = graph_profile(G)
    prof["edges"] = [[list(a), list(b)] for a, b in G.edge_list()]
    return prof


def _joint_multiplicity(spec: SpectralData, M: RatMatrix, i: int, j: int, x, y) -> int:
    return sum(spec.multiplicities[l] for l in range(1, M.nrows)
               if M[l, i] == x and M[l, j] == y)


def _check_railway(checks: Checks, spec: SpectralData, table: RelationTable | None):
    P, v = spec.P, spec.v
    sr = sr_detect(P)
    for i, j in combinations(sr, 2):
        a1, b1 = column_values(P, i)
        a2, b2 = column_values(P, j)
        name = f"railway[{i},{j}]"
        try:
            out = railway(v, P[0, i], a1, b1, P[0, j], a2, b2)
        except (ArithmeticError, SchemeError) as exc:
            checks.add(name, False, str(exc))
            continue
        combos = [(a1, a2), (a1, b2), (b1, a2), (b1, b2)]
        direct = [_joint_multiplicity(spec, P, i, j, x, y) for x, y in combos]
        formula = [m for _, m in out]
        ok = formula == direct
        if ok and table is not None:
            ok = _eigenspace_dims_match(table, spec, i, j, out)
        checks.add(name, ok, {"formula": [str(m) for m in formula],
                              "direct": direct})
        _check_mixed_types(checks, v, P, i, j, out)


def eigenspace_dimension(table: RelationTable, spec: SpectralData, cols, theta) -> int | None:
    """Exact dim ker(sum_{c in cols} A_c - theta I), certified from both sides.

    Upper bound: v - rank mod p of the shifted matrix (rank mod p never
    exceeds the rational rank).  Lower bound: the rank mod p of the scaled
    idempotent sum for the rows of P with that eigenvalue, after checking
    exactly that its columns lie in the kernel.  Returns None when the two
    bounds differ.
    """
    v = table.v
    a = sum(table.adjacency(c) for c in cols) - int(theta) * np.eye(v, dtype=np.int64)
    upper = v - rank_mod_p(a.tolist())
    P, Q = spec.P, spec.Q
    rows = [l for l in range(P.nrows) if sum(P[l, c] for c in cols) == theta]
    coeffs = [sum((Q[h, l] for l in rows), Fraction(0)) for h in range(Q.nrows)]
    scale = lcm(*(x.denominator for x in coeffs))
    x = sum(int(coeffs[h] * scale) * table.adjacency(h) for h in range(Q.nrows))
    if np.any(a @ x):
        return None
    lower = rank_mod_p(x.tolist()) if rows else 0
    return upper if lower == upper else None


def _eigenspace_dims_match(table: RelationTable, spec: SpectralData, i: int, j: int, out) -> bool:
    """Eigenspace dimensions of A_i + A_j from the table, against the formula."""
    k = spec.P[0, i] + spec.P[0, j]
    wanted: dict[Fraction, Fraction] = {k: Fraction(1)}
    for theta, m in out:
        wanted[theta] = wanted.get(theta, 0) + m
    for theta, m in wanted.items():
        if theta.denominator != 1 or eigenspace_dimension(table, spec, (i, j), theta) != m:
            return False
    return True


def _check_mixed_types(checks: Checks, v, P, i, j, out):
    rt = relation_types(P)
    ti, tj = rt.get(i, frozenset()), rt.get(j, frozenset())
    strict = {t.kind for t in ti if t.strict}, {t.kind for t in tj if t.strict}
    ms = [m for _, m in out]
    if (LATIN in strict[0] and NEGATIVE_LATIN in strict[1]) or \
            (NEGATIVE_LATIN in strict[0] and LATIN in strict[1]):
        checks.add(f"mixed-type-all-combinations[{i},{j}]", all(m > 0 for m in ms),
                   [str(m) for m in ms])
    shared = latin_kinds(ti) & latin_kinds(tj)
    a1, b1 = column_values(P, i)
    a2, b2 = column_values(P, j)
    combos = [(a1, a2), (a1, b2), (b1, a2), (b1, b2)]
    for kind in shared:
        # (a_i, a_j) is the nonnegative combination; (b_i, b_j) the negative one
        idx = 0 if kind == LATIN else 3
        x, y = combos[idx]
        if kind == LATIN and (x < 0 or y < 0) or kind == NEGATIVE_LATIN and (x >= 0 or y >= 0):
            continue
        checks.add(f"same-type-no-shared[{kind},{i},{j}]", ms[idx] == 0, str(ms[idx]))


def _check_dual_railway(checks: Checks, spec: SpectralData):
    Q, v = spec.Q, spec.v
    for c1, c2 in combinations(sr_detect(Q), 2):
        a1, b1 = column_values(Q, c1)
        a2, b2 = column_values(Q, c2)
        try:
            res = dual_railway(v, Q[0, c1], a1, b1, Q[0, c2], a2, b2, Q=Q, cols=(c1, c2))
        except SchemeError as exc:
            checks.add(f"dual-railway[{c1},{c2}]", False, str(exc))
            continue
        checks.add(f"dual-railway[{c1},{c2}]", not res["fails"], res["fails"])


def _check_smith(checks: Checks, spec: SpectralData):
    Q, v = spec.Q, spec.v
    d = Q.nrows - 1
    for j in sr_detect(Q):
        rest = [i for i in range(1, d + 1) if i != j]
        pi = IndexPartition([[j], rest], d=d)
        name = f"sr-idempotent[{j}]"
        try:
            fusedQ = bm_check(Q, pi).fusedP
        except SchemeError as exc:
            checks.add(name, False, f"2-class fusion missing: {exc}")
            continue
        jcol = 1 + pi.parts.index((j,))
        other = 3 - jcol
        Q2 = fusedQ.submatrix(range(3), [0, jcol, other])
        q = krein_parameters(Q2, v)
        a, b = column_values(Q, j)
        fails = smith_check(SrIdempotent(v, int(Q[0, j]), a, b), q[1][1][1], q[2][1][1])
        checks.add(name, not fails, fails)


def _check_types(checks: Checks, spec: SpectralData):
    """Complement/union closure and the single-eigenvalue type criterion."""
    P, Q, v = spec.P, spec.Q, spec.v
    d = P.nrows - 1
    rt = relation_types(P)
    for i, tags in rt.items():
        k = int(P[0, i])
        # complement has eigenvalues -1 - theta
        r, s = column_values(P, i)
        if k < v - 1 and d >= 2:
            comp_tags = classify_srg(v, v - 1 - k, -1 - s, -1 - r)
            for tag in tags:
                if tag.kind in (LATIN, NEGATIVE_LATIN):
                    _, ctag = complement(tag, v)
                    checks.add(f"complement-closure[{i},{tag.kind}]",
                               any(t.kind == ctag.kind and t.t == ctag.t for t in comp_tags),
                               str(ctag))
        for a in (r, s):
            try:
                tag = from_single_eigenvalue("relation", v, k, a)
            except SchemeError:
                continue
            checks.add(f"single-eigenvalue-type[{i}]",
                       any(t.kind == tag.kind and t.t == tag.t for t in tags), str(tag))
    for i, j in combinations(sorted(rt), 2):
        if P[0, i] + P[0, j] >= v - 1:
            continue
        for kind in latin_kinds(rt[i]) & latin_kinds(rt[j]):
            ti = next(t for t in rt[i] if t.kind == kind)
            tj = next(t for t in rt[j] if t.kind == kind)
            _, utag = union(ti, tj, v)
            col = {P[l, i] + P[l, j] for l in range(1, d + 1)}
            want = {Fraction(utag.n - utag.t), Fraction(-utag.t)}
            checks.add(f"union-closure[{i},{j},{kind}]", col == want,
                       {"got": sorted(map(str, col)), "want": sorted(map(str, want))})
    for j, tags in idempotent_types(Q).items():
        m = int(Q[0, j])
        for a in column_values(Q, j):
            try:
                tag = from_single_eigenvalue("idempotent", v, m, a)
            except SchemeError:
                continue
            checks.add(f"dual-single-eigenvalue-type[{j}]",
                       any(t.kind == tag.kind and t.t == tag.t for t in tags), str(tag))


def _check_contractions(checks: Checks, M: RatMatrix, label: str,
                  table: RelationTable | None = None):
    for (i, j), _ in fusing_pairs(M):
        res = contraction_check(M, i, j)
        checks.add(f"{label}-contraction[{i},{j}]", res["ok"], res.get("missing"))
        if table is not None and table.v <= TABLE_FUSE_LIMIT:
            try:
                fused_table, outcome = fuse_relations(table, IndexPartition.pair(i, j, M.ncols - 1), P=M)
                fused_P = spectrum(outcome.fusedCore).P
                g = fusing_graph(fused_P)
                mapping = {Label({n}): Label(part) for n, part in enumerate(outcome.pi.parts, 1)}
                res2 = contraction_check(M, i, j, fused=g.relabel(mapping))
                checks.add(f"{label}-contraction-table[{i},{j}]", res2["ok"], res2.get("missing"))
            except SchemeError as exc:
                checks.add(f"{label}-contraction-table[{i},{j}]", False, str(exc))


def _check_shape(checks: Checks, entry: CatalogEntry, spec: SpectralData, G, H):
    """Closed-form and graph-shape claims for the generated example families."""
    d = spec.d
    if entry.kind == "chain":
        checks.add("chain-closed-form-P", spec.P == gen.wreath_chain_P(*entry.params))
        path = [((i,), (i + 1,)) for i in range(1, d)]
        checks.add("chain-relations-graph-path", G.edge_list() == path)
        checks.add("chain-idempotents-graph-path", H.edge_list() == path)
    if entry.kind == "wreath-latin" and d >= 4:
        clique = [((i,), (j,)) for i, j in combinations(range(1, d), 2)]
        checks.add("wreath-relations-graph-clique-plus-vertex", G.edge_list() == clique)
        # idempotent of the across relation: the row with -v_inner in column d
        iso = [l for l in range(1, d + 1) if spec.P[l, d] < 0]
        ide_edges = H.edge_list()
        ok = len(iso) == 1 and all(iso[0] not in (a[0], b[0]) for a, b in ide_edges) \
            and len(ide_edges) == comb(d - 1, 2)
        checks.add("wreath-idempotents-graph-clique-plus-vertex", ok)


def analyze(entry: CatalogEntry, oracle: bool = True) -> dict:
    """Run every check on one catalog entry and return its report record."""
    record: dict = {"id": entry.id, "source": entry.source}
    checks = Checks()
    try:
        obj = entry.load()
        table = obj if isinstance(obj, RelationTable) else None
        if table is not None:
            core = validate_table(table)
            if table.v <= 50:
                checks.add("products-rebuild", adjacency_products(core, table))
            spec = spectrum(core)
        else:
            spec = spectral_from_P(obj)
    except SchemeError as exc:
        record.update({"status": "error", "errorType": type(exc).__name__, "error": str(exc)})
        return record

    P, Q, v, d = spec.P, spec.Q, spec.v, spec.d
    record.update({"status": "ok", "v": v, "d": d, "kind": "table" if table is not None else "eigen"})

    fails = spec.invariant_violations()
    checks.add("structural-identities", not fails, fails)
    if d <= 10:
        checks.add("rowcol-P", rowcol_check(P) is None, rowcol_check(P))
        checks.add("rowcol-Q", rowcol_check(Q) is None, rowcol_check(Q))

    G, H = fusing_graph(P), fusing_graph(Q)
    checks.add("pair-bijection", pair_bijection_check(P, Q) is None, pair_bijection_check(P, Q))
    _check_contractions(checks, P, "relations", table)
    _check_contractions(checks, Q, "idempotents")
    _check_railway(checks, spec, table)
    _check_dual_railway(checks, spec)
    _check_smith(checks, spec)
    _check_types(checks, spec)
    _check_shape(checks, entry, spec, G, H)

    canon = canonical_check(P)
    canon_q = canonical_check(Q)
    orc = brute_force_amorphic(P, exhaustive=True) if oracle and d <= ORACLE_LIMIT else None
    amorphic = canon.amorphic if orc is None else orc.amorphic
    checks.add("canonical-P-equals-canonical-Q", canon.amorphic == canon_q.amorphic)
    if orc is not None:
        checks.add("deciders-agree", canon.amorphic == orc.amorphic,
                   {"canonical": canon.amorphic, "oracle": orc.amorphic})
    # 2-class schemes count as amorphic but need not be formally self-dual
    self_dual_applies = amorphic and d != 2
    sigma = self_duality_check(P, Q) if self_dual_applies else None
    if self_dual_applies:
        checks.add("self-dual", sigma is not None)
    audit = implication_audit(P, Q, amorphic, G, H)
    for row in audit:
        checks.add(f"audit:{row['name']}", row["consistent"],
                   {"hypothesis": row["hypothesis"], "conclusion": row["conclusion"]})

    record.update({
        "P": _fmt_matrix(P),
        "multiplicities": list(spec.multiplicities),
        "verdicts": {
            "canonical": canon.amorphic,
            "oracle": None if orc is None else orc.amorphic,
            "oracleFailingPartition": None if orc is None or orc.failing is None else str(orc.failing),
            "partitionChecks": 0 if orc is None else orc.checked,
            "fusingPartitions": None if orc is None else orc.fusing,
            "selfDual": None if not self_dual_applies else sigma is not None,
            "permutation": None if sigma is None else list(sigma),
            "perTheorem": audit,
        },
        "graphs": {"relations": _graph_json(G), "idempotents": _graph_json(H)},
        "pairCounts": {"relations": len(G.edges), "idempotents": len(H.edges)},
        "types": {
            "relations": {str(i): sorted(map(str, t)) for i, t in relation_types(P).items()},
            "idempotents": {str(j): sorted(map(str, t)) for j, t in idempotent_types(Q).items()},
        },
        "checks": checks.items,
        "violations": len(checks.failures),
    })
    return record


def verify_paper(catalog: list[CatalogEntry], oracle: bool = True, jobs: int = 1) -> dict:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(analyze, catalog, [oracle] * len(catalog)))
    else:
        records = [analyze(e, oracle) for e in catalog]
    total = sum(len(r.get("checks", ())) for r in records)
    violations = sum(r.get("violations", 0) for r in records)
    summary = {
        "schemes": len(records),
        "errors": sum(1 for r in records if r["status"] == "error"),
        "totalChecks": total,
        "violations": violations,
        "partitionChecks": sum(r.get("verdicts", {}).get("partitionChecks", 0) for r in records),
        "failedChecks": sorted({c["name"].split("[")[0] for r in records
                                for c in r.get("checks", ()) if not c["ok"]}),
    }
    return {"reportVersion": REPORT_VERSION, "schemes": records, "summary": summary}
