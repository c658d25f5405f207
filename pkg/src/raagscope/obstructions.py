"""Witnesses that a graph group contains a closed hyperbolic surface group.

Two witness shapes: an induced copy of a catalogued forbidden graph, or a
trail of complement-edge contractions ending at a graph with such a copy
(contraction embeds the smaller graph group into the larger one, so a hit
anywhere along the trail certifies the original graph).

The built-in catalog holds the long-cycle families plus three fixed graphs,
stored as their complements' edge lists. The fixed trio is transcribed data,
so building the catalog runs a self-test: the second graph must contract onto
the first and the third onto the second, and every entry must be non-chordal
with a triangle or a long induced cycle. A failed self-test is a build error.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .graphs import Graph, canonical_key, find_induced, is_isomorphic, standard_graph, verify_vertex_map
from .ops import co_contract_edge, complement
from .recognize import find_induced_cycle

KIND_INDUCED = "InducedForbidden"
KIND_TRAIL = "CoContractionTrail"

_CYCLE_RE = re.compile(r"^C(\d+)$")
_COCYCLE_RE = re.compile(r"^coC(\d+)$")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ForbiddenEntry:
    name: str
    graph: Graph
    provenance: str


@dataclass(frozen=True, eq=True)
class Obstruction:
    kind: str
    entry: str
    embedding: tuple[tuple[str, str], ...]
    trail: tuple[tuple[str, str], ...] = ()

    def embedding_map(self) -> dict[str, str]:
        return dict(self.embedding)


def _embedding(mapping: dict[str, str]) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(mapping.items()))


# ---------------------------------------------------------------------------
# fixed catalog graphs, stored as complement edge lists

_P18_COMPLEMENT = [
    ("t1", "t2"), ("t1", "t3"), ("t3", "t2"), ("t4", "t2"), ("t5", "t3"),
    ("t5", "t4"), ("t6", "t4"), ("t5", "t6"), ("t7", "t6"), ("t8", "t6"),
    ("t7", "t4"), ("t5", "t8"),
]
_P18_VERTICES = ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"]

# the pair {a,b} is the complement edge whose contraction lands on P1(8)
_Q19_COMPLEMENT = [
    ("t1", "t2"), ("t1", "t3"), ("t3", "t2"), ("t4", "t2"), ("t5", "t3"),
    ("t5", "t4"), ("b", "t4"), ("t5", "b"), ("a", "b"), ("t6", "b"),
    ("a", "t4"), ("t6", "t4"), ("t5", "a"), ("t7", "a"), ("t5", "t7"),
]
_Q19_VERTICES = ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "a", "b"]

# contracting the complement edge {c,d} lands on Q1(9)
_Q2X_COMPLEMENT = [
    ("t1", "t2"), ("t1", "t3"), ("t3", "t2"), ("t4", "t2"), ("t5", "t3"),
    ("t5", "t4"), ("d", "t4"), ("t5", "d"), ("t6", "d"), ("c", "d"),
    ("t6", "t4"), ("t5", "c"), ("t7", "t6"), ("t7", "t4"), ("t5", "t8"),
    ("t8", "c"), ("c", "t4"), ("t5", "t6"),
]
_Q2X_VERTICES = ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "c", "d"]


def _from_complement(vertices, comp_edges) -> Graph:
    return complement(Graph(vertices, comp_edges))


@lru_cache(maxsize=1)
def _fixed_entries() -> tuple[ForbiddenEntry, ...]:
    p18 = _from_complement(_P18_VERTICES, _P18_COMPLEMENT)
    q19 = _from_complement(_Q19_VERTICES, _Q19_COMPLEMENT)
    q2x = _from_complement(_Q2X_VERTICES, _Q2X_COMPLEMENT)
    # transcription self-test: the contraction chain must close up
    if is_isomorphic(co_contract_edge(q19, ("a", "b")), p18) is None:
        raise RuntimeError("catalog self-test failed: Q1(9) does not contract onto P1(8)")
    if is_isomorphic(co_contract_edge(q2x, ("c", "d")), q19) is None:
        raise RuntimeError("catalog self-test failed: Q2(10) does not contract onto Q1(9)")
    for name, g in (("P1(8)", p18), ("Q1(9)", q19), ("Q2(10)", q2x)):
        if find_induced_cycle(g, 4) is None:
            raise RuntimeError("catalog self-test failed: %s is chordal" % name)
        tri = find_induced_cycle(g, 3)
        if (tri is None or len(tri.vertices) != 3) and find_induced_cycle(g, 5) is None:
            raise RuntimeError("catalog self-test failed: %s is chordal bipartite" % name)
    return (
        ForbiddenEntry("P1(8)", p18,
                       "Crisp-Sageev-Sapir (2008): its graph group contains a closed "
                       "hyperbolic surface group"),
        ForbiddenEntry("Q1(9)", q19,
                       "co-contracts onto P1(8), so its graph group contains "
                       "A(P1(8))"),
        ForbiddenEntry("Q2(10)", q2x,
                       "co-contracts onto Q1(9), hence onto P1(8)"),
    )


def _scan_entries() -> tuple[ForbiddenEntry, ...]:
    # Only directly-justified graphs serve as induced-subgraph patterns.
    # Q1(9) and Q2(10) are forbidden *because* they contract onto P1(8), so
    # their honest certificate is a contraction trail; using them as patterns
    # would let them match themselves and shadow that trail.
    return _fixed_entries()[:1]


def builtin_catalog(max_cycle: int = 9) -> list[ForbiddenEntry]:
    """The shipped entries: cycles and cycle complements from 5 up to
    max_cycle (deduplicating the self-complementary 5-cycle), plus the fixed
    trio. Searches extend the cycle families dynamically past max_cycle."""
    entries: list[ForbiddenEntry] = []
    for n in range(5, max_cycle + 1):
        entries.append(ForbiddenEntry(
            "C%d" % n, standard_graph("cycle", n),
            "induced cycle of length >= 5 forces a hyperbolic surface subgroup"))
    for n in range(6, max_cycle + 1):
        entries.append(ForbiddenEntry(
            "coC%d" % n, complement(standard_graph("cycle", n)),
            "complement of a cycle of length >= 5 forces a hyperbolic surface subgroup"))
    entries.extend(_fixed_entries())
    return sorted(entries, key=lambda e: (e.graph.n, e.name))


def load_catalog(path: str) -> list[ForbiddenEntry]:
    """User catalog extensions: a JSON array of entries, each graph stored as
    its complement's edge list. Every entry must carry a provenance string."""
    with open(path, "rb") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise CatalogError("catalog file must hold a JSON array")
    out = []
    for item in data:
        try:
            name = item["name"]
            provenance = item["provenance"]
            vertices = item["vertices"]
            comp_edges = [tuple(e) for e in item["complement_edges"]]
        except (KeyError, TypeError) as exc:
            raise CatalogError("bad catalog entry: %s" % exc) from None
        if not provenance or not isinstance(provenance, str):
            raise CatalogError("catalog entry %r needs a provenance string" % (name,))
        if _CYCLE_RE.match(name) or _COCYCLE_RE.match(name):
            raise CatalogError("catalog entry name %r collides with the cycle families" % (name,))
        if name in {e.name for e in _fixed_entries()}:
            raise CatalogError("catalog entry name %r collides with a built-in entry" % (name,))
        graph = _from_complement(vertices, comp_edges)
        if graph.n < 5:
            raise CatalogError("catalog entry %r has fewer than 5 vertices; such graph "
                               "groups never contain hyperbolic surface groups" % (name,))
        out.append(ForbiddenEntry(name, graph, provenance))
    names = [e.name for e in out]
    if len(set(names)) != len(names):
        raise CatalogError("duplicate catalog entry name")
    return out


def entry_graph(name: str, extra: Sequence[ForbiddenEntry] = ()) -> Graph:
    """Resolve a catalog entry name to its graph; cycle families are generated."""
    m = _CYCLE_RE.match(name)
    if m:
        n = int(m.group(1))
        if n >= 5:
            return standard_graph("cycle", n)
    m = _COCYCLE_RE.match(name)
    if m:
        n = int(m.group(1))
        if n >= 5:
            return complement(standard_graph("cycle", n))
    for e in _fixed_entries():
        if e.name == name:
            return e.graph
    for e in extra:
        if e.name == name:
            return e.graph
    raise CatalogError("unknown catalog entry name %r" % (name,))


# ---------------------------------------------------------------------------
# searches


def find_forbidden_induced(g: Graph,
                           extra: Sequence[ForbiddenEntry] = ()) -> Optional[Obstruction]:
    """Scan catalog entries no larger than g in increasing size and return the
    first induced embedding.

    The unbounded cycle families are realized by shortest-induced-cycle
    searches in g and in its complement, which is equivalent to scanning every
    C_n / coC_n entry in size order.
    """
    n = g.n
    if n < 5:
        return None
    cyc = find_induced_cycle(g, 5)
    cocyc = find_induced_cycle(complement(g), 5)
    fixed = sorted([e for e in list(_scan_entries()) + list(extra) if e.graph.n <= n],
                   key=lambda e: (e.graph.n, e.name))
    for size in range(5, n + 1):
        if cyc is not None and len(cyc.vertices) == size:
            mapping = {"v%d" % (i + 1): cyc.vertices[i] for i in range(size)}
            return Obstruction(KIND_INDUCED, "C%d" % size, _embedding(mapping))
        if cocyc is not None and len(cocyc.vertices) == size and size >= 6:
            mapping = {"v%d" % (i + 1): cocyc.vertices[i] for i in range(size)}
            return Obstruction(KIND_INDUCED, "coC%d" % size, _embedding(mapping))
        for e in fixed:
            if e.graph.n != size:
                continue
            hit = find_induced(e.graph, g)
            if hit is not None:
                return Obstruction(KIND_INDUCED, e.name, _embedding(hit))
    return None


def find_cocontraction_witness(g: Graph, max_depth: int,
                               extra: Sequence[ForbiddenEntry] = ()) -> Optional[Obstruction]:
    """Breadth-first search over complement-edge contraction sequences of
    length at most max_depth, deduplicated by isomorphism class; first state
    containing a forbidden induced subgraph wins."""
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    seen = {canonical_key(g)}
    queue: deque[tuple[Graph, tuple[tuple[str, str], ...]]] = deque([(g, ())])
    while queue:
        current, trail = queue.popleft()
        hit = find_forbidden_induced(current, extra)
        if hit is not None:
            kind = KIND_TRAIL if trail else KIND_INDUCED
            return Obstruction(kind, hit.entry, hit.embedding, trail)
        if len(trail) >= max_depth:
            continue
        verts = current.vertices
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                u, v = verts[i], verts[j]
                if current.has_edge(u, v):
                    continue
                child = co_contract_edge(current, (u, v))
                key = canonical_key(child)
                if key in seen:
                    continue
                seen.add(key)
                queue.append((child, trail + ((u, v),)))
    return None


def verify_obstruction(g: Graph, o: Obstruction,
                       extra: Sequence[ForbiddenEntry] = ()) -> bool:
    """Independent certificate check: replay the trail, then re-validate the
    induced embedding against the named entry. Unknown entry names raise."""
    if o.kind not in (KIND_INDUCED, KIND_TRAIL):
        return False
    if (o.kind == KIND_INDUCED) != (len(o.trail) == 0):
        return False
    pattern = entry_graph(o.entry, extra)
    current = g
    for pair in o.trail:
        if len(pair) != 2:
            return False
        u, v = pair
        if not (current.has_vertex(u) and current.has_vertex(v)):
            return False
        if u == v or current.has_edge(u, v):
            return False
        current = co_contract_edge(current, (u, v))
    return verify_vertex_map(pattern, current, dict(o.embedding))


# ---------------------------------------------------------------------------
# serialization


def obstruction_to_json(o: Obstruction) -> dict:
    return {
        "kind": o.kind,
        "entry": o.entry,
        "embedding": {a: b for a, b in o.embedding},
        "trail": [list(p) for p in o.trail],
    }


def obstruction_from_json(obj: dict) -> Obstruction:
    try:
        return Obstruction(
            kind=obj["kind"],
            entry=obj["entry"],
            embedding=_embedding(dict(obj["embedding"])),
            trail=tuple((p[0], p[1]) for p in obj["trail"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise CatalogError("bad obstruction object: %s" % exc) from None
