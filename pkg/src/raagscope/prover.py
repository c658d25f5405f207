"""Derivations that a graph group has no hyperbolic surface subgroup.

A derivation is a proof tree over five closure rules: complete graphs are
leaves; joins, complete-graph amalgamations, bisimplicial-edge additions and
co-contractions combine or transform derived graphs. Membership in the
derived family implies there is no relative embedding of a compact hyperbolic
surface group, hence no closed hyperbolic surface subgroup.

The prover searches rules in a fixed order (complete base, amalgam split at
the first minimal clique separator, bisimplicial edge removal, join
decomposition) with memoization by isomorphism class. It never guesses
co-contraction preimages; that rule exists only in the checker, so externally
supplied derivations using it still validate.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from typing import Optional, Sequence

from .graphs import Graph, GraphError, canonical_form, graph_from_json, graph_to_json, is_isomorphic
from .obstructions import (
    ForbiddenEntry,
    Obstruction,
    find_cocontraction_witness,
    find_forbidden_induced,
    verify_obstruction,
)
from .ops import (
    CliqueSplit,
    co_contract,
    complement,
    connected_components,
    induced,
    is_bisimplicial_edge,
    is_complete,
    iter_clique_splits,
    join,
    remove_edge_interior,
    validate_clique_split,
)

RULE_COMPLETE = "CompleteBase"
RULE_JOIN = "JoinRule"
RULE_AMALGAM = "AmalgamRule"
RULE_BISIMP = "BisimplicialRule"
RULE_COCONTRACT = "CoContractRule"

NO_SURFACE = "no_surface_subgroup"
HAS_SURFACE = "has_surface_subgroup"
UNKNOWN = "unknown"

DEFAULT_BUDGET = 10000
DEFAULT_COCONTRACT_DEPTH = 2


class SoundnessError(RuntimeError):
    """Both certificate kinds verified for one graph, or a searcher emitted an
    invalid certificate. Signals a bug, never a valid state."""


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: Graph
    children: tuple["Derivation", ...] = ()
    separator: Optional[frozenset[str]] = None
    edge: Optional[tuple[str, str]] = None
    bipartition: Optional[tuple[frozenset[str], frozenset[str]]] = None
    contracted: Optional[frozenset[str]] = None

    def rules_used(self) -> set[str]:
        out = {self.rule}
        for ch in self.children:
            out |= ch.rules_used()
        return out


def _rename_graph(g: Graph, mapping: dict[str, str]) -> Graph:
    return Graph([mapping[v] for v in g.vertices],
                 [(mapping[u], mapping[v]) for u, v in g.edge_pairs])


def rename_derivation(d: Derivation, mapping: dict[str, str]) -> Derivation:
    return Derivation(
        rule=d.rule,
        conclusion=_rename_graph(d.conclusion, mapping),
        children=tuple(rename_derivation(ch, mapping) for ch in d.children),
        separator=frozenset(mapping[v] for v in d.separator) if d.separator is not None else None,
        edge=(mapping[d.edge[0]], mapping[d.edge[1]]) if d.edge is not None else None,
        bipartition=tuple(frozenset(mapping[v] for v in part) for part in d.bipartition)
        if d.bipartition is not None else None,
        contracted=frozenset(mapping[v] for v in d.contracted) if d.contracted is not None else None,
    )


# ---------------------------------------------------------------------------
# independent checker


def check_derivation(d: Derivation, g: Graph) -> bool:
    """Re-validate every node from first principles and match the root against
    g up to isomorphism. Shares only the elementary graph operations with the
    prover, none of its search logic."""
    try:
        if not _check_node(d):
            return False
    except (GraphError, TypeError):
        return False
    return is_isomorphic(d.conclusion, g) is not None


def _check_node(node: Derivation) -> bool:
    c = node.conclusion
    if node.rule == RULE_COMPLETE:
        if node.children:
            return False
        if not is_complete(c):
            return False
    elif node.rule == RULE_JOIN:
        if len(node.children) != 2 or node.bipartition is None:
            return False
        a, b = node.bipartition
        c0 = node.children[0].conclusion
        c1 = node.children[1].conclusion
        if set(c0.vertices) != set(a) or set(c1.vertices) != set(b):
            return False
        if join(c0, c1) != c:
            return False
    elif node.rule == RULE_AMALGAM:
        if len(node.children) != 2 or node.separator is None:
            return False
        split = CliqueSplit(node.children[0].conclusion,
                            node.children[1].conclusion, node.separator)
        if not validate_clique_split(c, split):
            return False
    elif node.rule == RULE_BISIMP:
        if len(node.children) != 1 or node.edge is None:
            return False
        e = tuple(node.edge)
        if len(e) != 2 or not c.has_edge(*e):
            return False
        if not is_bisimplicial_edge(c, e):
            return False
        if node.children[0].conclusion != remove_edge_interior(c, e):
            return False
    elif node.rule == RULE_COCONTRACT:
        if len(node.children) != 1 or node.contracted is None:
            return False
        child = node.children[0].conclusion
        if not node.contracted <= set(child.vertices):
            return False
        if co_contract(child, node.contracted) != c:
            return False
    else:
        return False
    return all(_check_node(ch) for ch in node.children)


# ---------------------------------------------------------------------------
# prover


@dataclass
class ProverReport:
    nodes_expanded: int = 0
    budget: int = DEFAULT_BUDGET
    budget_exhausted: bool = False
    rules_attempted: tuple[str, ...] = ()
    stuck: tuple[str, ...] = ()


class _BudgetExhausted(Exception):
    pass


class _Counter:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def tick(self) -> None:
        with self._lock:
            self.used += 1
            if self.used > self.limit:
                raise _BudgetExhausted


class _Search:
    def __init__(self, memo: dict, counter: _Counter, threads: int):
        self.memo = memo
        self.counter = counter
        self.threads = threads
        self.rules_attempted: set[str] = set()
        self.stuck: list[str] = []

    def run(self, h: Graph, depth: int = 0) -> Optional[Derivation]:
        key, order = canonical_form(h)
        hit = self.memo.get(key)
        if hit is not None:
            status, canon = hit
            if status != "ok":
                return None
            mapping = {"c%d" % i: order[i] for i in range(len(order))}
            return rename_derivation(canon, mapping)
        self.counter.tick()
        d = self._expand(h, depth)
        if d is None:
            self.memo[key] = ("fail", None)
            if len(self.stuck) < 32:
                self.stuck.append("no rule closed a graph with %d vertices, %d edges"
                                  % (h.n, h.m))
            return None
        mapping = {order[i]: "c%d" % i for i in range(len(order))}
        self.memo[key] = ("ok", rename_derivation(d, mapping))
        return d

    def _pair(self, left: Graph, right: Graph, depth: int):
        if depth == 0 and self.threads > 1:
            with ThreadPoolExecutor(max_workers=2) as pool:
                fl = pool.submit(self.run, left, depth + 1)
                fr = pool.submit(self.run, right, depth + 1)
                return fl.result(), fr.result()
        dl = self.run(left, depth + 1)
        dr = self.run(right, depth + 1) if dl is not None else None
        return dl, dr

    def _expand(self, h: Graph, depth: int) -> Optional[Derivation]:
        if is_complete(h):
            return Derivation(RULE_COMPLETE, h)
        split = next(iter_clique_splits(h), None)
        if split is not None:
            # first minimal separator only; no backtracking across separators
            self.rules_attempted.add(RULE_AMALGAM)
            dl, dr = self._pair(split.left, split.right, depth)
            if dl is not None and dr is not None:
                return Derivation(RULE_AMALGAM, h, (dl, dr), separator=split.separator)
        for e in h.edge_pairs:
            if not is_bisimplicial_edge(h, e):
                continue
            self.rules_attempted.add(RULE_BISIMP)
            child = self.run(remove_edge_interior(h, e), depth + 1)
            if child is not None:
                return Derivation(RULE_BISIMP, h, (child,), edge=e)
        comp_parts = connected_components(complement(h))
        if len(comp_parts) > 1:
            self.rules_attempted.add(RULE_JOIN)
            a = frozenset(comp_parts[0])
            b = frozenset(h.vertices) - a
            dl, dr = self._pair(induced(h, a), induced(h, b), depth)
            if dl is not None and dr is not None:
                return Derivation(RULE_JOIN, h, (dl, dr), bipartition=(a, b))
        return None


def _prove(g: Graph, budget: int = DEFAULT_BUDGET, threads: int = 1,
           cache: Optional[dict] = None) -> tuple[Optional[Derivation], ProverReport]:
    if budget < 1:
        raise ValueError("budget must be at least 1")
    memo = cache if cache is not None else {}
    counter = _Counter(budget)
    search = _Search(memo, counter, threads)
    exhausted = False
    try:
        d = search.run(g)
    except _BudgetExhausted:
        d = None
        exhausted = True
    report = ProverReport(
        nodes_expanded=counter.used,
        budget=budget,
        budget_exhausted=exhausted,
        rules_attempted=tuple(sorted(search.rules_attempted)),
        stuck=tuple(search.stuck),
    )
    return d, report


def prove_in_f(g: Graph, budget: int = DEFAULT_BUDGET, threads: int = 1,
               cache: Optional[dict] = None) -> Optional[Derivation]:
    """Search for a derivation concluding a graph isomorphic to g; None on
    exhaustion or budget. Absence of a derivation is not a negative result."""
    d, _ = _prove(g, budget, threads, cache)
    return d


# ---------------------------------------------------------------------------
# classification


@dataclass
class UnknownReport:
    nodes_expanded: int
    budget: int
    budget_exhausted: bool
    rules_attempted: tuple[str, ...]
    cocontract_depth: int
    stuck: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "budget": self.budget,
            "budget_exhausted": self.budget_exhausted,
            "rules_attempted": list(self.rules_attempted),
            "cocontract_depth": self.cocontract_depth,
            "stuck": list(self.stuck),
        }


@dataclass
class Verdict:
    status: str
    obstruction: Optional[Obstruction] = None
    derivation: Optional[Derivation] = None
    report: Optional[UnknownReport] = None


def classify(g: Graph, budget: int = DEFAULT_BUDGET,
             cocontract_depth: int = DEFAULT_COCONTRACT_DEPTH,
             catalog: Sequence[ForbiddenEntry] = (), threads: int = 1,
             cross_check: bool = False, cache: Optional[dict] = None,
             timings: Optional[dict] = None) -> Verdict:
    """Run the obstruction search and the derivation search, verify whichever
    certificates come back with the independent checkers, and pick a verdict.

    A graph may end up with neither certificate: membership of the derived
    family in the no-surface class is one-sided, so honest Unknowns are
    unavoidable. Holding both verified certificates at once is a bug and
    raises SoundnessError. The deeper co-contraction search runs only when no
    derivation was found, unless cross_check forces it.
    """
    t0 = perf_counter()
    obs = find_forbidden_induced(g, catalog)
    if obs is not None and not verify_obstruction(g, obs, catalog):
        raise SoundnessError("obstruction search emitted an invalid certificate")
    t1 = perf_counter()
    deriv, stats = _prove(g, budget, threads, cache)
    if deriv is not None and not check_derivation(deriv, g):
        raise SoundnessError("prover emitted an invalid derivation")
    t2 = perf_counter()
    if obs is None and cocontract_depth > 0 and (deriv is None or cross_check):
        obs = find_cocontraction_witness(g, cocontract_depth, catalog)
        if obs is not None and not verify_obstruction(g, obs, catalog):
            raise SoundnessError("co-contraction search emitted an invalid certificate")
    if timings is not None:
        t3 = perf_counter()
        timings["obstruction_scan"] = t1 - t0
        timings["prover"] = t2 - t1
        timings["cocontraction_search"] = t3 - t2
    if obs is not None and deriv is not None:
        raise SoundnessError("graph received both a verified derivation and a "
                             "verified obstruction")
    if obs is not None:
        return Verdict(HAS_SURFACE, obstruction=obs)
    if deriv is not None:
        return Verdict(NO_SURFACE, derivation=deriv)
    report = UnknownReport(
        nodes_expanded=stats.nodes_expanded,
        budget=budget,
        budget_exhausted=stats.budget_exhausted,
        rules_attempted=stats.rules_attempted,
        cocontract_depth=cocontract_depth,
        stuck=stats.stuck,
    )
    return Verdict(UNKNOWN, report=report)


# ---------------------------------------------------------------------------
# serialization


def derivation_to_json(d: Derivation) -> dict:
    out: dict = {"rule": d.rule, "graph": graph_to_json(d.conclusion)}
    if d.separator is not None:
        out["separator"] = sorted(d.separator)
    if d.edge is not None:
        out["edge"] = list(d.edge)
    if d.bipartition is not None:
        out["bipartition"] = [sorted(d.bipartition[0]), sorted(d.bipartition[1])]
    if d.contracted is not None:
        out["cocontract_set"] = sorted(d.contracted)
    out["children"] = [derivation_to_json(ch) for ch in d.children]
    return out


def derivation_from_json(obj: dict) -> Derivation:
    try:
        return Derivation(
            rule=obj["rule"],
            conclusion=graph_from_json(obj["graph"]),
            children=tuple(derivation_from_json(ch) for ch in obj.get("children", [])),
            separator=frozenset(obj["separator"]) if "separator" in obj else None,
            edge=tuple(obj["edge"]) if "edge" in obj else None,
            bipartition=tuple(frozenset(p) for p in obj["bipartition"])
            if "bipartition" in obj else None,
            contracted=frozenset(obj["cocontract_set"]) if "cocontract_set" in obj else None,
        )
    except (KeyError, TypeError) as exc:
        raise GraphError("bad derivation object: %s" % exc) from None
