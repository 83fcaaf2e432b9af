"""Fusing-relations / fusing-idempotents graphs and their predicates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotAnEdge, TooLarge
from .exact import RatMatrix
from .fusion import IndexPartition, bm_check, fusing_pairs

Label = frozenset

HAMILTON_LIMIT = 12


def _key(label) -> tuple[int, ...]:
    return tuple(sorted(label))


@dataclass(frozen=True)
class FusingGraph:
    vertices: tuple[frozenset, ...]
    edges: frozenset  # of frozenset({label_a, label_b})

    def __post_init__(self):
        seen = set()
        for lab in self.vertices:
            if not lab or seen & lab:
                raise ValueError("labels must be nonempty and disjoint")
            seen |= lab
        verts = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= verts:
                raise ValueError(f"bad edge {e}")

    @classmethod
    def build(cls, labels, edges) -> "FusingGraph":
        verts = tuple(sorted((Label(l) for l in labels), key=_key))
        es = frozenset(frozenset((Label(a), Label(b))) for a, b in edges)
        return cls(verts, es)

    def neighbors(self, lab) -> set:
        lab = Label(lab)
        return {next(iter(e - {lab})) for e in self.edges if lab in e}

    def degree(self, lab) -> int:
        return len(self.neighbors(lab))

    def has_edge(self, a, b) -> bool:
        return frozenset((Label(a), Label(b))) in self.edges

    def edge_list(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        out = []
        for e in self.edges:
            a, b = sorted((_key(x) for x in e))
            out.append((a, b))
        return sorted(out)

    def relabel(self, mapping) -> "FusingGraph":
        """Rename vertices; ``mapping`` sends old labels to new ones."""
        return FusingGraph.build(
            [mapping[v] for v in self.vertices],
            [(mapping[a], mapping[b]) for a, b in (tuple(e) for e in self.edges)],
        )


def fusing_graph(M: RatMatrix) -> FusingGraph:
    d = M.ncols - 1
    return FusingGraph.build(
        [{i} for i in range(1, d + 1)],
        [({i}, {j}) for (i, j), _ in fusing_pairs(M)],
    )


def contract(G: FusingGraph, i, j) -> FusingGraph:
    """Merge the endpoints of edge {i, j} into one vertex i|j."""
    a, b = Label(i), Label(j)
    if not G.has_edge(a, b):
        raise NotAnEdge(f"{_key(a)} - {_key(b)} is not an edge")
    merged = a | b
    mapping = {v: (merged if v in (a, b) else v) for v in G.vertices}
    verts = [v for v in G.vertices if v not in (a, b)] + [merged]
    edges = set()
    for e in G.edges:
        x, y = (mapping[v] for v in e)
        if x != y:
            edges.add((x, y))
    return FusingGraph.build(verts, edges)


def _connected(G: FusingGraph) -> bool:
    if not G.vertices:
        return True
    start = G.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        for w in G.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(G.vertices)


def _hamiltonian(G: FusingGraph) -> bool:
    n = len(G.vertices)
    if n <= 2:
        return False
    index = {v: k for k, v in enumerate(G.vertices)}
    nbr = [set() for _ in range(n)]
    for e in G.edges:
        a, b = (index[v] for v in e)
        nbr[a].add(b)
        nbr[b].add(a)
    if any(len(s) < 2 for s in nbr):
        return False
    path = [0]
    used = [False] * n
    used[0] = True

    def extend() -> bool:
        if len(path) == n:
            return 0 in nbr[path[-1]]
        for w in sorted(nbr[path[-1]]):
            if not used[w]:
                used[w] = True
                path.append(w)
                if extend():
                    return True
                path.pop()
                used[w] = False
        return False

    return extend()


def graph_profile(G: FusingGraph) -> dict:
    """Connectivity, path shape, max degree, claw, Hamiltonicity, edge count.

    ``hamiltonian`` is None beyond HAMILTON_LIMIT vertices.
    """
    degrees = [G.degree(v) for v in G.vertices]
    n = len(G.vertices)
    connected = _connected(G)
    max_deg = max(degrees, default=0)
    if n == 1:
        is_path = True
    else:
        is_path = connected and max_deg <= 2 and degrees.count(1) == 2
    ham = _hamiltonian(G) if n <= HAMILTON_LIMIT else None
    return {
        "connected": connected,
        "isPath": is_path,
        "maxDegree": max_deg,
        "hasClaw": max_deg >= 3,
        "hamiltonian": ham,
        "edgeCount": len(G.edges),
    }


def require_hamiltonian(G: FusingGraph) -> bool:
    if len(G.vertices) > HAMILTON_LIMIT:
        raise TooLarge(f"Hamiltonicity search limited to {HAMILTON_LIMIT} vertices")
    return _hamiltonian(G)


def has_claw_naive(G: FusingGraph) -> bool:
    """K_{1,3} subgraph search by enumeration (test oracle)."""
    for c in G.vertices:
        others = [v for v in G.vertices if v != c]
        for leaves in combinations(others, 3):
            if all(G.has_edge(c, x) for x in leaves):
                return True
    return False


def fused_graph(M: RatMatrix, i: int, j: int) -> FusingGraph:
    """Fusing graph of the scheme obtained by fusing {i, j}, on merged labels."""
    d = M.ncols - 1
    pi = IndexPartition.pair(i, j, d)
    fused = bm_check(M, pi).fusedP
    g = fusing_graph(fused)
    mapping = {Label({n}): Label(part) for n, part in enumerate(pi.parts, start=1)}
    return g.relabel(mapping)


def contraction_check(M: RatMatrix, i: int, j: int, fused: FusingGraph | None = None) -> dict:
    """Check that the contraction G/ij is a subgraph of the fused scheme's graph.

    ``fused`` may be supplied (e.g. computed from a re-validated table);
    otherwise it is derived from the block row sums of M.  Returns a dict with
    ``ok``, ``strict`` (proper containment) and ``missing`` edges.
    """
    G = fusing_graph(M)
    contracted = contract(G, {i}, {j})
    if fused is None:
        fused = fused_graph(M, i, j)
    if set(fused.vertices) != set(contracted.vertices):
        return {"ok": False, "strict": False, "missing": [], "reason": "vertex labels differ"}
    missing = [e for e in contracted.edge_list()
               if not fused.has_edge(set(e[0]), set(e[1]))]
    return {
        "ok": not missing,
        "strict": not missing and len(fused.edges) > len(contracted.edges),
        "missing": missing,
    }


def to_dot(G: FusingGraph, name: str = "fusing") -> str:
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lab = ",".join(map(str, _key(v)))
        lines.append(f'  "{lab}";')
    for a, b in G.edge_list():
        lines.append(f'  "{",".join(map(str, a))}" -- "{",".join(map(str, b))}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
