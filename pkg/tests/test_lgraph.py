import json

import pytest
from hypothesis import given, strategies as st

from conftest import el, zero_one_weights
from hookgraph.errors import AdmissibilityError, PreconditionError
from hookgraph.localize import kumar_smooth
from hookgraph.lgraph import (
    build_lgraph,
    constant_admissible,
    custom_admissible,
    enumerate_paths,
    export_dot,
    export_json,
    graph_from_json,
    graph_to_dict,
    hook_product,
    max_paths_and_skew_peterson,
    path_sum,
    path_weight,
    smooth_via_hook,
    standard_admissible,
)
from hookgraph.rootsys import parse_type
from hookgraph.symfrac import ff_inv_linform, ff_one, linform
from hookgraph.weyl import WeylElt, all_min_reps, bruhat_leq, interval, minuscule_elements, stabilizer_set

B3 = parse_type("B3")
A2 = parse_type("A2")
P13 = frozenset({1, 3})


def inv(*c):
    return ff_inv_linform(linform(c))


def test_standard_admissible():
    w = el(B3, "2 1 3 2")
    lam = standard_admissible(WeylElt.identity(B3), w, P13)
    assert set(lam.table.values()) == {(0, 1, 0)}
    w0 = el(A2, "1 2 1")
    assert set(standard_admissible(WeylElt.identity(A2), w0, set()).table.values()) == {(1, 1)}
    with pytest.raises(PreconditionError):
        standard_admissible(WeylElt.identity(A2), WeylElt.identity(A2), {1, 2})


def test_example_lambda_one():
    e, w0 = WeylElt.identity(A2), el(A2, "1 2 1")
    table = {x: (1, 0) for x in interval(e, w0, set())}
    table[el(A2, "2 1")] = (0, 1)
    g = build_lgraph(e, w0, set(), custom_admissible(table, e, w0, set()))
    assert len(g.edges) == 7 and {x.mult for x in g.edges} == {1}
    assert g.weight[el(A2, "2")] == linform((1, 1))
    assert g.weight[el(A2, "1 2")] == linform((0, 1))


def test_example_lambda_two():
    e, w0 = WeylElt.identity(A2), el(A2, "1 2 1")
    n1, n2 = 2, 3
    g = build_lgraph(e, w0, set(), constant_admissible((n1, n2), e, w0, set()))
    assert len(g.edges) == 9
    assert {x.mult for x in g.edges} == {n1, n2, n1 + n2}
    assert g.weight[el(A2, "1")] == linform((n2, n1 + n2))


def test_inadmissible_named():
    e, s2 = WeylElt.identity(A2), el(A2, "2")
    with pytest.raises(AdmissibilityError) as info:
        constant_admissible((1, 0), e, s2, set())
    assert info.value.element == e
    with pytest.raises(AdmissibilityError):
        constant_admissible((1, 0, 0), WeylElt.identity(B3), el(B3, "2 1 3 2"), P13)


def test_ig27_graph():
    w = el(B3, "2 1 3 2")
    g = build_lgraph(WeylElt.identity(B3), w, P13)
    weights = {str(x): g.weight[x] for x in g.vertices}
    assert weights == {
        "id": linform((1, 3, 2)),
        "s2": linform((1, 2, 2)),
        "s1s2": linform((0, 2, 2)),
        "s3s2": linform((1, 2, 0)),
        "s1s3s2": linform((0, 2, 0)),
        "s2s3s2": linform((1, 1, 0)),
        "s2s1s3s2": linform((0, 0, 0)),
    }
    assert len(g.edges) == 15
    doubles = sorted((str(e.src), str(e.dst)) for e in g.edges if e.mult == 2)
    assert doubles == [
        ("id", "s2s3s2"),
        ("s1s2", "s1s3s2"),
        ("s1s2", "s2s1s3s2"),
        ("s1s3s2", "s2s1s3s2"),
        ("s2", "s3s2"),
    ]


def test_example_one_path_list():
    v, w = el(B3, "3 2"), el(B3, "2 1 3 2")
    total = path_sum(build_lgraph(v, w, P13)).total
    a12, a2x2, a1p2a2 = inv(1, 1, 0), inv(0, 2, 0), inv(1, 2, 0)
    expected = 1 + a12 + 2 * a2x2 + a1p2a2 * a12 + 2 * a1p2a2 * a2x2
    assert total == expected
    assert total == hook_product(v, w, P13) == (1 + inv(0, 1, 0)) * (1 + inv(1, 1, 0))
    assert smooth_via_hook(v, w, P13).smooth


def test_example_two_path_list():
    v, w = el(B3, "2"), el(B3, "2 3 2")
    total = path_sum(build_lgraph(v, w, P13)).total
    expected = 1 + inv(0, 1, 0) + inv(0, 1, 2) + 2 * inv(0, 1, 2) * inv(0, 1, 0)
    assert total == expected
    hook = hook_product(v, w, P13)
    assert hook == (1 + inv(0, 1, 0)) * (1 + inv(0, 1, 2))
    verdict = smooth_via_hook(v, w, P13)
    assert not verdict.smooth and verdict.label == "singular"


def test_trivial_interval():
    w = el(B3, "2 1 3 2")
    g = build_lgraph(w, w, P13)
    assert g.vertices == [w] and g.edges == []
    assert path_sum(g).total == ff_one(3) == hook_product(w, w, P13)
    assert export_dot(g).count("->") == 0
    assert smooth_via_hook(w, w, P13).smooth


def test_singular_point_ig27():
    w = el(B3, "2 1 3 2")
    e = WeylElt.identity(B3)
    singular = [v for v in interval(e, w, P13) if not smooth_via_hook(v, w, P13).smooth]
    assert singular == [el(B3, "2")]


@pytest.mark.parametrize("name,P", [("A3", {1, 3}), ("A3", {2}), ("B3", {1, 3}), ("B3", {1, 2}), ("C3", {2, 3})])
def test_v_id_always_smooth(name, P):
    C = parse_type(name)
    e = WeylElt.identity(C)
    for w in all_min_reps(C, P):
        assert smooth_via_hook(e, w, P).smooth


def test_max_paths_examples():
    A3, A4 = parse_type("A3"), parse_type("A4")
    r = max_paths_and_skew_peterson(WeylElt.identity(A3), el(A3, "2 1 3 2"), {1, 3}, (0, 1, 0))
    assert r.smooth and r.max_paths == r.redcount == r.formula == 2 and r.max_path_identity and r.holds
    P = {1, 3, 4}
    top = max(all_min_reps(A4, P), key=len)
    assert top.length == 6
    r = max_paths_and_skew_peterson(WeylElt.identity(A4), top, P, (0, 1, 0, 0))
    assert r.max_paths == r.redcount == r.formula == 5 and r.holds


def test_max_paths_singular_fallback():
    D4 = parse_type("D4")
    pi = (0, 1, 0, 0)
    P = stabilizer_set(pi)
    found = 0
    for w in minuscule_elements(D4, pi):
        for v in interval(WeylElt.identity(D4), w, P):
            r = max_paths_and_skew_peterson(v, w, P, pi)
            assert r.holds
            if not r.smooth:
                assert r.method == "billey" and r.max_path_identity is None
                found += 1
    assert found > 0


def test_max_paths_preconditions():
    A3 = parse_type("A3")
    with pytest.raises(PreconditionError):
        max_paths_and_skew_peterson(WeylElt.identity(A3), el(A3, "2 1 3 2"), {1}, (0, 1, 0))
    with pytest.raises(PreconditionError):
        max_paths_and_skew_peterson(WeylElt.identity(A3), el(A3, "1 2 1"), {3}, (1, 1, 0))


def test_enumerated_paths_reproduce_sum():
    v, w = el(B3, "3 2"), el(B3, "2 1 3 2")
    g = build_lgraph(WeylElt.identity(B3), w, P13)

    total = 0
    for x in g.vertices:
        for p in enumerate_paths(g, start=x):
            total = total + path_weight(g, p)
    assert total == path_sum(g).total
    # the five terms of the sum: one path from each start in [v, w], w itself included
    h = build_lgraph(v, w, P13)
    assert sum(len(enumerate_paths(h, start=x)) for x in h.vertices) == 5


def test_export_dot_and_json():
    g = build_lgraph(WeylElt.identity(B3), el(B3, "2 1 3 2"), P13)
    dot = export_dot(g)
    assert dot.count("->") == 15 and dot.count("[label=") == 22
    assert '"id" [label="id / a1+3a2+2a3"]' in dot
    text = export_json(g)
    h = graph_from_json(text)
    assert graph_to_dict(h) == graph_to_dict(g) == json.loads(text)
    assert path_sum(h).total == path_sum(g).total


def test_include_zero_edges():
    e, w0 = WeylElt.identity(A2), el(A2, "1 2 1")
    table = {x: (1, 0) for x in interval(e, w0, set())}
    table[el(A2, "2 1")] = (0, 1)
    lam = custom_admissible(table, e, w0, set())
    kept = build_lgraph(e, w0, set(), lam)
    full = build_lgraph(e, w0, set(), lam, include_zero=True)
    zero = [x for x in full.edges if x.mult == 0]
    assert len(full.edges) == 9 and len(zero) == 2 and len(kept.edges) == 7
    assert path_sum(full).total == path_sum(kept).total


# -- properties ---------------------------------------------------------------------------------

PAIRS = []
for _name, _P in [("A3", frozenset()), ("A3", frozenset({1, 3})), ("B3", frozenset({1, 3})), ("B2", frozenset())]:
    _C = parse_type(_name)
    _reps = sorted(all_min_reps(_C, _P))
    PAIRS += [(v, w, _P) for w in _reps for v in _reps if v != w and bruhat_leq(v, w)]


@given(st.sampled_from(PAIRS), st.data())
def test_lambda_independence(pair, data):
    v, w, P = pair
    C = w.C
    free = [i for i in range(C.rank) if i + 1 not in P]
    coeff = st.integers(1, 3)

    def weight():
        lam = [0] * C.rank
        for i in free:
            lam[i] = data.draw(coeff)
        return tuple(lam)

    verts = interval(v, w, P)
    base = path_sum(build_lgraph(v, w, P)).total
    const = constant_admissible(weight(), v, w, P)
    table = custom_admissible({x: weight() for x in verts}, v, w, P)
    assert path_sum(build_lgraph(v, w, P, const)).total == base
    assert path_sum(build_lgraph(v, w, P, table)).total == base
    assert smooth_via_hook(v, w, P, table).smooth == kumar_smooth(v, w, P).smooth


@given(st.sampled_from(PAIRS))
def test_weight_recursion(pair):
    v, w, P = pair
    C = w.C
    free = [i for i in range(C.rank) if i + 1 not in P]
    pi = tuple(2 if i in free else 0 for i in range(C.rank))
    g = build_lgraph(v, w, P, constant_admissible(pi, v, w, P))
    for e in g.edges:
        assert e.mult > 0
        diff = tuple(a - b for a, b in zip(g.weight[e.src].coeffs, g.weight[e.dst].coeffs))
        assert diff == tuple(e.mult * b for b in e.beta)
        assert e.src.act(e.gamma) == e.beta
    for x in g.vertices:
        assert (g.weight[x].is_zero()) == (x == w)


@pytest.mark.parametrize("name", ["A3", "B3", "D4", "C3"])
def test_minuscule_graphs(name):
    C = parse_type(name)
    for pi in zero_one_weights(C.rank):
        P = stabilizer_set(pi)
        for w in minuscule_elements(C, pi):
            e = WeylElt.identity(C)
            g = build_lgraph(e, w, P, constant_admissible(pi, e, w, P))
            assert {x.mult for x in g.edges} <= {1}
            assert len({g.weight[x] for x in g.vertices}) == len(g.vertices)
