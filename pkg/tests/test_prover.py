import json
import random

import pytest

from raagscope.generate import random_chordal, random_graph
from raagscope.graphs import Graph, new_graph, standard_graph
from raagscope.obstructions import entry_graph
from raagscope.ops import add_edge, co_contract, remove_edge_interior
from raagscope.prover import (
    HAS_SURFACE,
    NO_SURFACE,
    RULE_AMALGAM,
    RULE_BISIMP,
    RULE_COCONTRACT,
    RULE_COMPLETE,
    RULE_JOIN,
    UNKNOWN,
    Derivation,
    SoundnessError,
    check_derivation,
    classify,
    derivation_from_json,
    derivation_to_json,
    prove_in_f,
)

P3 = new_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_complete_graphs_are_leaves():
    for n in (1, 3, 7):
        g = standard_graph("complete", n)
        d = prove_in_f(g)
        assert d is not None and d.rule == RULE_COMPLETE and not d.children
        assert check_derivation(d, g)
    empty = Graph([], [])
    d = prove_in_f(empty)
    assert d is not None and d.rule == RULE_COMPLETE


def test_path_uses_amalgam_at_cut_vertex():
    d = prove_in_f(P3)
    assert d.rule == RULE_AMALGAM and d.separator == frozenset({"b"})
    assert {c.rule for c in d.children} == {RULE_COMPLETE}
    assert check_derivation(d, P3)


def test_c4_uses_bisimplicial_edge():
    c4 = standard_graph("cycle", 4)
    d = prove_in_f(c4)
    assert d.rule == RULE_BISIMP
    assert d.edge is not None and c4.has_edge(*d.edge)
    assert check_derivation(d, c4)


def test_chordal_graphs_use_only_base_and_amalgam():
    rng = random.Random(51)
    for _ in range(60):
        g = random_chordal(rng.randint(1, 8), rng)
        d = prove_in_f(g)
        assert d is not None
        assert d.rules_used() <= {RULE_COMPLETE, RULE_AMALGAM}
        assert check_derivation(d, g)


def test_join_rule_reachability_checker_side():
    # the checker accepts a hand-built join derivation for complete bipartite
    # graphs even though the prover prefers the bisimplicial route
    left = new_graph(["a1", "a2"], [])
    right = new_graph(["b1", "b2", "b3"], [])
    k23 = new_graph(["a1", "a2", "b1", "b2", "b3"],
                    [(a, b) for a in ("a1", "a2") for b in ("b1", "b2", "b3")])
    dl = prove_in_f(left)
    dr = prove_in_f(right)
    assert dl is not None and dr is not None
    assert dl.rules_used() <= {RULE_COMPLETE, RULE_AMALGAM}
    d = Derivation(RULE_JOIN, k23, (dl, dr),
                   bipartition=(frozenset(left.vertices), frozenset(right.vertices)))
    assert check_derivation(d, k23)


def test_checker_validates_cocontract_rule():
    c4 = standard_graph("cycle", 4)
    child = prove_in_f(c4)
    conclusion = co_contract(c4, {"v1", "v3"})
    node = Derivation(RULE_COCONTRACT, conclusion, (child,),
                      contracted=frozenset({"v1", "v3"}))
    assert check_derivation(node, conclusion)
    bad = Derivation(RULE_COCONTRACT, c4, (child,), contracted=frozenset({"v1", "v3"}))
    assert not check_derivation(bad, c4)


def test_checker_rejects_mutations():
    d = prove_in_f(P3)
    # non-clique separator
    bad = Derivation(d.rule, d.conclusion, d.children, separator=frozenset({"a", "c"}))
    assert not check_derivation(bad, P3)
    # wrong rule tag
    bad2 = Derivation(RULE_COMPLETE, d.conclusion, d.children, separator=d.separator)
    assert not check_derivation(bad2, P3)

    c4 = standard_graph("cycle", 4)
    dc4 = prove_in_f(c4)
    # cite an edge that is not bisimplicial in a doctored conclusion
    fake_conclusion = add_edge(c4, ("v1", "v3"))
    bad3 = Derivation(RULE_BISIMP, fake_conclusion, dc4.children, edge=("v1", "v3"))
    assert not check_derivation(bad3, fake_conclusion)
    # child mismatch: remove a different edge than cited
    other_edge = next(e for e in c4.edge_pairs if e != dc4.edge)
    bad4 = Derivation(RULE_BISIMP, c4,
                      (prove_in_f(remove_edge_interior(c4, other_edge)),),
                      edge=dc4.edge)
    assert not check_derivation(bad4, c4)


def test_checker_rejects_wrong_root():
    d = prove_in_f(P3)
    assert not check_derivation(d, standard_graph("complete", 3))


def test_prover_memoization_is_deterministic():
    g = random_chordal(7, random.Random(99))
    d1 = prove_in_f(g)
    d2 = prove_in_f(g)
    assert derivation_to_json(d1) == derivation_to_json(d2)
    shared = {}
    d3 = prove_in_f(g, cache=shared)
    d4 = prove_in_f(g, cache=shared)
    assert derivation_to_json(d3) == derivation_to_json(d4) == derivation_to_json(d1)


def test_prover_threads_match_sequential():
    g = random_chordal(8, random.Random(77))
    d1 = prove_in_f(g, threads=1)
    d2 = prove_in_f(g, threads=2)
    assert derivation_to_json(d1) == derivation_to_json(d2)


def test_budget_exhaustion_returns_none():
    g = entry_graph("Q1(9)")
    with pytest.raises(ValueError):
        prove_in_f(g, budget=0)
    assert prove_in_f(g, budget=1) is None


def test_classify_examples():
    v = classify(standard_graph("cycle", 5))
    assert v.status == HAS_SURFACE and v.obstruction.entry == "C5"
    v = classify(standard_graph("path", 4))
    assert v.status == NO_SURFACE
    assert v.derivation.rules_used() <= {RULE_COMPLETE, RULE_AMALGAM}
    v = classify(standard_graph("cycle", 4))
    assert v.status == NO_SURFACE and RULE_BISIMP in v.derivation.rules_used()


def test_classify_unknown_on_tiny_budget():
    g = entry_graph("Q1(9)")
    v = classify(g, budget=1, cocontract_depth=0)
    assert v.status == UNKNOWN
    assert v.report is not None
    assert v.obstruction is None and v.derivation is None
    # a decomposable graph genuinely runs out of budget at 1 node
    v2 = classify(P3, budget=1, cocontract_depth=0)
    assert v2.status == UNKNOWN and v2.report.budget_exhausted


def test_classify_cross_check_mode():
    rng = random.Random(52)
    for _ in range(20):
        g = random_graph(rng.randint(3, 7), rng.random(), rng)
        v1 = classify(g)
        v2 = classify(g, cross_check=True)
        assert v1.status == v2.status


def test_classify_join_graphs():
    # joins of discrete graphs land in the derived family
    k33 = new_graph(["a1", "a2", "a3", "b1", "b2", "b3"],
                    [(a, b) for a in ("a1", "a2", "a3") for b in ("b1", "b2", "b3")])
    v = classify(k33)
    assert v.status == NO_SURFACE
    assert RULE_BISIMP in v.derivation.rules_used()


def test_derivation_json_round_trip():
    for g in (P3, standard_graph("cycle", 4), standard_graph("complete", 4)):
        d = prove_in_f(g)
        back = derivation_from_json(json.loads(json.dumps(derivation_to_json(d))))
        assert back == d
        assert check_derivation(back, g)


def test_soundness_guard_trips_on_forged_cache():
    # poison the memo with a fake derivation for the pentagon; classify must
    # refuse to return it
    c5 = standard_graph("cycle", 5)
    fake = Derivation(RULE_COMPLETE, standard_graph("complete", 5))
    from raagscope.graphs import canonical_form

    key, order = canonical_form(c5)
    cache = {key: ("ok", Derivation(RULE_COMPLETE, Graph(
        ["c%d" % i for i in range(5)],
        [("c%d" % i, "c%d" % j) for i in range(5) for j in range(i + 1, 5)])))}
    with pytest.raises(SoundnessError):
        classify(c5, cache=cache)


def test_prover_handles_disconnected_graphs():
    g = Graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
    d = prove_in_f(g)
    assert d is not None and d.rule == RULE_AMALGAM and d.separator == frozenset()
    assert check_derivation(d, g)
