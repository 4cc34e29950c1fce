"""Heaps of reduced words, excited diagrams and dominant minuscule elements.

Heap elements are the positions 0..l-1 of the word.  Position j lies below
position k when j < k and the two letters do not commute (then closed
transitively), so later letters sit higher.  Diagrams are frozensets of
positions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .errors import InvariantError, PreconditionError
from .lgraph import build_lgraph, constant_admissible, smooth_via_hook
from .localize import billey_loc, kumar_smooth, phi_evaluate
from .rootsys import is_negative, unit
from .weyl import (
    WeylElt,
    beta_roots,
    bruhat_leq,
    count_reduced_words,
    interval,
    is_dominant,
    is_min_rep,
    is_pi_minuscule,
    multiply,
    skew_set,
    inversion_reflections,
    stabilizer_set,
    word_label,
)


def _commute(C, i, j):
    return i == j or C.cartan[i - 1][j - 1] == 0


@dataclass
class Heap:
    C: object
    word: tuple
    below: list          # below[k]: bitmask of positions strictly below k
    covers: list         # (j, k) with p_j covered by p_k
    above: list = field(default_factory=list)

    def __len__(self):
        return len(self.word)

    def color(self, p):
        return self.word[p]

    def less(self, j, k):
        return bool(self.below[k] >> j & 1)

    def leq(self, j, k):
        return j == k or self.less(j, k)

    def maximal(self):
        return [p for p in range(len(self.word)) if not self.above[p]]

    def is_filter(self, D):
        return all(q in D for p in D for q in _bits(self.above[p]))

    def support(self):
        return sorted(set(self.word))


def _bits(mask):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def heap_of_word(C, word):
    word = tuple(word)
    if WeylElt.from_word(C, word).length != len(word):
        raise PreconditionError(f"word {word_label(word)} is not reduced")
    n = len(word)
    below = [0] * n
    direct = [[] for _ in range(n)]
    for k in range(n):
        m = 0
        for j in range(k):
            if not _commute(C, word[j], word[k]):
                direct[k].append(j)
                m |= below[j] | (1 << j)
        below[k] = m
    covers = []
    for k in range(n):
        for j in direct[k]:
            if not any(below[z] >> j & 1 for z in direct[k] if z != j):
                covers.append((j, k))
    above = [0] * n
    for k in range(n):
        for j in _bits(below[k]):
            above[j] |= 1 << k
    return Heap(C, word, below, covers, above)


def heap_to_dot(h, diagram=()):
    lines = ["digraph Heap {", "  rankdir=BT;"]
    for p in range(len(h)):
        style = ', style=filled, fillcolor="#f4a0a0"' if p in diagram else ""
        lines.append(f'  p{p + 1} [label="p{p + 1}:{h.color(p)}"{style}];')
    for j, k in h.covers:
        lines.append(f"  p{j + 1} -> p{k + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def filter_of(v, w, pi=None, heap=None):
    """The order filter of H(w) spelling v as a final subexpression."""
    C = w.C
    h = heap_of_word(C, w.word) if heap is None else heap
    if WeylElt.from_word(C, h.word) != w:
        raise PreconditionError("heap word does not spell w")
    if not bruhat_leq(v, w):
        raise PreconditionError(f"{v} is not below {w}")
    if pi is not None and not (is_pi_minuscule(v, pi) and is_pi_minuscule(w, pi)):
        raise PreconditionError("v and w must both be pi-minuscule")

    def right_descent(x, i):
        return is_negative(x.act(unit(C.rank, i - 1)))

    def search(cur, F):
        if cur.length == 0:
            return F
        for p in range(len(h) - 1, -1, -1):
            if p in F or any(q not in F for q in _bits(h.above[p])):
                continue
            i = h.color(p)
            if right_descent(cur, i):
                got = search(cur.rmul(i), F | {p})
                if got is not None:
                    return got
        return None

    F = search(v, frozenset())
    if F is None:
        raise PreconditionError(f"{v} is not a final subexpression of {word_label(h.word)}")
    return F


def elementary_excitations(D, h):
    """All D' with D excited to D' in one step."""
    C = h.C
    out = []
    for q in sorted(D):
        c = h.color(q)
        prev = [p for p in _bits(h.below[q]) if h.color(p) == c]
        if not prev:
            continue
        p = max(prev)  # same-coloured elements form a chain
        if p in D:
            continue
        if not any(
            h.leq(p, u) and h.leq(u, q) and h.color(u) != c and C.cartan[c - 1][h.color(u) - 1]
            for u in D
        ):
            out.append((D - {q}) | {p})
    return out


def excited_diagrams(F, h):
    F = frozenset(F)
    seen = {F}
    todo = deque([F])
    while todo:
        D = todo.popleft()
        for E in elementary_excitations(D, h):
            if E not in seen:
                seen.add(E)
                todo.append(E)
    return seen


def multiplicity(v, w, pi, heap=None, check=True):
    C = w.C
    if not C.simply_laced:
        raise PreconditionError(f"{C.name} is not simply-laced; use kumar_smooth instead")
    if not is_pi_minuscule(w, pi):
        raise PreconditionError("w must be pi-minuscule")
    P = stabilizer_set(pi)
    if not is_min_rep(v, P):
        raise PreconditionError(f"{v} is not a minimal coset representative")
    h = heap_of_word(C, w.word) if heap is None else heap
    F = filter_of(v, w, None, h)
    count = len(excited_diagrams(F, h))
    if check:
        other = phi_evaluate(billey_loc(v, w, P), w, pi)
        if other != count:
            raise InvariantError(f"excited diagrams give {count}, phi(billey) gives {other}")
    return count


@dataclass
class DominantMinuscule:
    ok: bool
    pi: tuple | None
    degenerate: bool = False


def is_dominant_minuscule(C, word):
    """Stembridge's criterion on a reduced word; returns pi' when it holds."""
    word = tuple(word)
    if not word:
        return DominantMinuscule(True, (0,) * C.rank, True)
    h = heap_of_word(C, word)
    L = C.root_lengths
    a = C.cartan
    n = len(word)

    def noncomm(i, j):
        return i != j and a[i - 1][j - 1] != 0

    for i in set(word):
        occ = [k for k in range(n) if word[k] == i]
        for s, t in zip(occ, occ[1:]):
            mid = [word[k] for k in range(s + 1, t) if noncomm(i, word[k])]
            two = len(mid) == 2 and all(L[j - 1] <= L[i - 1] for j in mid)
            one = len(mid) == 1 and a[i - 1][mid[0] - 1] == -2
            if not (two or one):
                return DominantMinuscule(False, None)
        after = [word[k] for k in range(occ[-1] + 1, n) if noncomm(i, word[k])]
        if len(after) > 1 or any(L[j - 1] > L[i - 1] for j in after):
            return DominantMinuscule(False, None)
    pi = [0] * C.rank
    for p in h.maximal():
        pi[h.color(p) - 1] += 1
    pi = tuple(pi)
    if not is_pi_minuscule(WeylElt.from_word(C, word), pi):
        raise InvariantError(f"criterion holds but {word_label(word)} is not pi'-minuscule")
    return DominantMinuscule(True, pi)


@dataclass
class SkewRedCount:
    value: int
    terms: list
    diagrams: int
    oracle: int


def skew_red_count(v, w, pi, heap=None):
    """#Red(w v^{-1}) through the excited-diagram sum of height products."""
    C = w.C
    if not is_pi_minuscule(w, pi):
        raise PreconditionError("w must be pi-minuscule")
    h = heap_of_word(C, w.word) if heap is None else heap
    F = filter_of(v, w, None, h)
    hts = [sum(b) for b in beta_roots(C, h.word)]
    terms = []
    for D in sorted(excited_diagrams(F, h), key=sorted):
        terms.append(Fraction(1, prod(hts[p] for p in range(len(h)) if p not in D)))
    total = factorial(w.length - v.length) * sum(terms)
    if total.denominator != 1:
        raise InvariantError(f"skew count {total} is not an integer")
    oracle = count_reduced_words(multiply(w, v.inverse()))
    return SkewRedCount(int(total), terms, len(terms), oracle)


@dataclass
class SmoothnessReport:
    hook: bool
    kumar: bool
    excited: int
    dominant_minuscule: bool
    pi_prime: tuple | None
    skew_sets_match: bool | None = None
    graph_isomorphic: bool | None = None

    @property
    def smooth(self):
        return self.kumar

    @property
    def agree(self):
        return self.hook == self.kumar == (self.excited == 1) == self.dominant_minuscule


def graph_isomorphism(v, w, P, pi, pi2):
    """Check z -> z v^{-1} maps the pi-graph on [v, w]^P onto the pi2-graph on [id, w v^{-1}]^{P'}."""
    C = w.C
    vinv = v.inverse()
    P2 = stabilizer_set(pi2)
    wv = multiply(w, vinv)
    e = WeylElt.identity(C)
    g1 = build_lgraph(v, w, P, constant_admissible(pi, v, w, P))
    g2 = build_lgraph(e, wv, P2, constant_admissible(pi2, e, wv, P2))
    f = {z: multiply(z, vinv) for z in g1.vertices}
    if set(f.values()) != set(g2.vertices) or len(set(f.values())) != len(g1.vertices):
        return False
    for z in g1.vertices:
        if g1.weight[z] != g2.weight[f[z]]:
            return False
    e1 = {(f[x.src], f[x.dst], x.beta, x.mult) for x in g1.edges}
    e2 = {(x.src, x.dst, x.beta, x.mult) for x in g2.edges}
    return e1 == e2


def smoothness_equiv(v, w, pi):
    C = w.C
    pi = tuple(pi)
    if not C.simply_laced:
        raise PreconditionError(f"{C.name} is not simply-laced")
    if not is_dominant(pi) or not is_pi_minuscule(w, pi):
        raise PreconditionError("w must be pi-minuscule for dominant pi")
    P = stabilizer_set(pi)
    if not is_min_rep(v, P) or not bruhat_leq(v, w):
        raise PreconditionError("v must be a minimal representative below w")
    hook = smooth_via_hook(v, w, P, constant_admissible(pi, v, w, P)).smooth
    kum = kumar_smooth(v, w, P).smooth
    h = heap_of_word(C, w.word)
    count = len(excited_diagrams(filter_of(v, w, None, h), h))
    wv = multiply(w, v.inverse())
    dm = is_dominant_minuscule(C, wv.word)
    rep = SmoothnessReport(hook, kum, count, dm.ok, dm.pi)
    if not rep.agree:
        raise InvariantError(f"smoothness criteria disagree for v={v}, w={w}: {rep}")
    if rep.smooth:
        vinv = v.inverse()
        rep.skew_sets_match = all(
            skew_set(v, z, P) == inversion_reflections(multiply(z, vinv)) for z in interval(v, w, P)
        )
        rep.graph_isomorphic = graph_isomorphism(v, w, P, pi, dm.pi)
    return rep
