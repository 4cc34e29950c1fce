"""Lambda-Bruhat graphs on parabolic Bruhat intervals and their path sums."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import AdmissibilityError, InvariantError, PreconditionError
from .localize import Verdict, billey_loc, beta_sequence, height_specialize
from .rootsys import format_root, format_weight, is_positive, parse_type, weight_to_root
from .symfrac import FactoredFraction, LinForm, ff_inv_linform, ff_one, ff_zero, format_linform, linform
from .weyl import (
    WeylElt,
    bruhat_leq,
    count_reduced_words,
    interval,
    is_dominant,
    is_pi_minuscule,
    multiply,
    parabolic_roots,
    reflect_minrep,
    skew_set,
    sorted_roots,
    stabilizer_set,
    varpi_P,
    word_label,
)


@dataclass
class AdmissibleFn:
    P: frozenset
    v: WeylElt
    w: WeylElt
    table: dict
    kind: str = "custom"

    def __call__(self, x):
        return self.table[x]

    def describe(self):
        if self.kind in ("standard", "constant"):
            return f"{self.kind}:{format_weight(self.table[self.w])}"
        return "table"


def _validate(table, v, w, P, verts=None):
    C = w.C
    verts = interval(v, w, P) if verts is None else verts
    missing = [x for x in verts if x not in table]
    if missing:
        raise AdmissibilityError(min(missing), f"no weight assigned to {min(missing)}")
    for x in sorted(verts):
        lam = tuple(table[x])
        if len(lam) != C.rank:
            raise AdmissibilityError(x, f"weight at {x} has wrong length")
        if any(lam[i - 1] for i in P):
            raise AdmissibilityError(x, f"lambda at {x} = {format_weight(lam)} is not in X*(T)_P")
        if x != w and x.act(lam, "weight") == w.act(lam, "weight"):
            raise AdmissibilityError(x, f"inadmissible at {x}: x(lambda) = w(lambda) for lambda = {format_weight(lam)}")


def standard_admissible(v, w, P):
    P = frozenset(P)
    C = w.C
    if len(P) == C.rank:
        raise PreconditionError("P = G is not a proper parabolic context")
    lam = varpi_P(C, P)
    verts = interval(v, w, P)
    table = {x: lam for x in verts}
    _validate(table, v, w, P, verts)
    return AdmissibleFn(P, v, w, table, "standard")


def constant_admissible(pi, v, w, P):
    P = frozenset(P)
    pi = tuple(pi)
    verts = interval(v, w, P)
    table = {x: pi for x in verts}
    _validate(table, v, w, P, verts)
    return AdmissibleFn(P, v, w, table, "constant")


def custom_admissible(table, v, w, P):
    P = frozenset(P)
    verts = interval(v, w, P)
    table = {x: tuple(lam) for x, lam in table.items() if x in verts}
    _validate(table, v, w, P, verts)
    return AdmissibleFn(P, v, w, table, "custom")


@dataclass(frozen=True)
class Edge:
    src: WeylElt
    dst: WeylElt
    gamma: tuple
    beta: tuple
    mult: int


@dataclass
class LGraph:
    C: object
    P: frozenset
    v: WeylElt
    w: WeylElt
    lam: AdmissibleFn
    vertices: list
    edges: list
    weight: dict
    include_zero: bool = False
    _out: dict = field(default=None, repr=False, compare=False)

    def out_edges(self, x):
        if self._out is None:
            self._out = {y: [] for y in self.vertices}
            for e in self.edges:
                self._out[e.src].append(e)
        return self._out[x]


def build_lgraph(v, w, P, lam=None, include_zero=False):
    """Decorated Bruhat graph on [v, w]^P for the admissible function lam."""
    P = frozenset(P)
    C = w.C
    if lam is None:
        lam = standard_admissible(v, w, P)
    verts = interval(v, w, P)
    _validate(lam.table, v, w, P, verts)
    edges = []
    for x in sorted(verts):
        lx = lam(x)
        targets = set()
        for g, c in parabolic_roots(C, P):
            b = x.act(g)
            if not is_positive(b):
                continue
            y = reflect_minrep(x, g, P)
            if y not in verts:
                continue
            if y.length <= x.length or y in targets:
                raise InvariantError(f"bad edge {x} -> {y} via {format_root(g)}")
            targets.add(y)
            m = sum(p * q for p, q in zip(lx, c))
            if m or include_zero:
                edges.append(Edge(x, y, g, b, m))
    wl = {}
    for x in verts:
        lx = lam(x)
        d = tuple(a - b for a, b in zip(x.act(lx, "weight"), w.act(lx, "weight")))
        wl[x] = linform(weight_to_root(C, d))
    return LGraph(C, P, v, w, lam, sorted(verts), edges, wl, include_zero)


@dataclass
class PathSum:
    total: FactoredFraction
    per_vertex: dict


def path_sum(g):
    """F(w) = 1, F(x) = sum over x -> y of m / W(x) * F(y); total = sum of all F(x)."""
    n = g.C.rank
    F = {}
    for x in sorted(g.vertices, key=lambda t: -t.length):
        if x == g.w:
            F[x] = ff_one(n)
            continue
        acc = ff_zero(n)
        for e in g.out_edges(x):
            if e.mult:
                acc = acc + e.mult * F[e.dst]
        F[x] = acc * ff_inv_linform(g.weight[x]) if not acc.is_zero() else acc
    total = ff_zero(n)
    for x in g.vertices:
        total = total + F[x]
    return PathSum(total, F)


def enumerate_paths(g, start=None, maximal_only=False):
    """All directed paths from ``start`` (default v) to w, as lists of edges."""
    start = g.v if start is None else start
    target = g.w
    out = []

    def rec(x, path):
        if x == target:
            out.append(list(path))
            return
        for e in g.out_edges(x):
            if maximal_only and e.dst.length != x.length + 1:
                continue
            path.append(e)
            rec(e.dst, path)
            path.pop()

    rec(start, [])
    return out


def path_weight(g, path):
    n = g.C.rank
    out = ff_one(n)
    for e in path:
        out = out * e.mult * ff_inv_linform(g.weight[e.src])
    return out


def hook_product(v, w, P):
    n = w.C.rank
    out = ff_one(n)
    for b in sorted_roots(skew_set(v, w, P)):
        out = out * (1 + ff_inv_linform(linform(b)))
    return out


def smooth_via_hook(v, w, P, lam=None):
    g = build_lgraph(v, w, P, lam)
    lhs = path_sum(g).total
    rhs = hook_product(v, w, P)
    return Verdict(lhs == rhs, lhs, rhs, "hook")


@dataclass
class SkewPetersonReport:
    smooth: bool
    method: str
    max_paths: int
    formula: Fraction
    redcount: int
    max_path_identity: bool | None
    holds: bool


def max_paths_and_skew_peterson(v, w, P, pi):
    """Maximal paths v -> w versus #Red(w v^{-1}) and the skew Peterson formula."""
    P = frozenset(P)
    pi = tuple(pi)
    if not is_dominant(pi):
        raise PreconditionError("pi must be dominant")
    if stabilizer_set(pi) != P:
        raise PreconditionError("P must be the stabilizer of pi")
    if not (is_pi_minuscule(v, pi) and is_pi_minuscule(w, pi)):
        raise PreconditionError("v and w must both be pi-minuscule")
    if not bruhat_leq(v, w):
        raise PreconditionError(f"{v} is not below {w}")
    n = w.C.rank
    g = build_lgraph(v, w, P, constant_admissible(pi, v, w, P))
    smooth = path_sum(g).total == hook_product(v, w, P)
    paths = enumerate_paths(g, maximal_only=True)
    d = w.length - v.length
    red = count_reduced_words(multiply(w, v.inverse()))
    if smooth:
        S = skew_set(v, w, P)
        lhs = ff_zero(n)
        for p in paths:
            lhs = lhs + path_weight(g, p)
        rhs = ff_one(n)
        for b in S:
            rhs = rhs * ff_inv_linform(linform(b))
        ident = lhs == rhs
        formula = Fraction(factorial(d), prod(sum(b) for b in S))
        method = "hook"
    else:
        ident = None
        ratio = height_specialize(billey_loc(v, w, P)) / prod(sum(b) for b in beta_sequence(w).betas)
        formula = factorial(d) * ratio
        method = "billey"
    holds = formula == red == len(paths) and ident is not False
    return SkewPetersonReport(smooth, method, len(paths), formula, red, ident, holds)


# -- export -----------------------------------------------------------------------

def _vlabel(x):
    return word_label(x.word)


def export_dot(g):
    lines = ["digraph LGraph {", "  rankdir=BT;"]
    for x in g.vertices:
        lines.append(f'  "{_vlabel(x)}" [label="{_vlabel(x)} / {format_linform(g.weight[x])}"];')
    for e in g.edges:
        lines.append(f'  "{_vlabel(e.src)}" -> "{_vlabel(e.dst)}" [label="m={e.mult}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g):
    return {
        "type": g.C.name,
        "P": sorted(g.P),
        "v": list(g.v.word),
        "w": list(g.w.word),
        "lambda_kind": g.lam.kind,
        "include_zero": g.include_zero,
        "vertices": [
            {
                "word": list(x.word),
                "label": _vlabel(x),
                "lambda": list(g.lam(x)),
                "weight": list(g.weight[x].coeffs),
                "weight_str": format_linform(g.weight[x]),
            }
            for x in g.vertices
        ],
        "edges": [
            {"src": list(e.src.word), "dst": list(e.dst.word), "gamma": list(e.gamma), "beta": list(e.beta), "mult": e.mult}
            for e in g.edges
        ],
    }


def export_json(g):
    return json.dumps(graph_to_dict(g), indent=2, sort_keys=True)


def graph_from_json(text):
    d = json.loads(text) if isinstance(text, str) else text
    C = parse_type(d["type"])
    P = frozenset(d["P"])
    el = lambda word: WeylElt.from_word(C, word)  # noqa: E731
    v, w = el(d["v"]), el(d["w"])
    table = {el(x["word"]): tuple(x["lambda"]) for x in d["vertices"]}
    lam = AdmissibleFn(P, v, w, table, d["lambda_kind"])
    verts = sorted(table)
    weight = {el(x["word"]): LinForm(tuple(x["weight"])) for x in d["vertices"]}
    edges = [Edge(el(e["src"]), el(e["dst"]), tuple(e["gamma"]), tuple(e["beta"]), e["mult"]) for e in d["edges"]]
    return LGraph(C, P, v, w, lam, verts, edges, weight, d["include_zero"])
