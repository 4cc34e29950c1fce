"""Weyl group elements, Bruhat order, parabolic quotients and minuscule elements.

An element is identified by the image w(rho) of rho = sum of fundamental
weights, which is regular, so the representation is faithful.  Words are
tuples of 1-based simple reflection indices; ``s_{i_1} ... s_{i_l}`` acts on a
vector as the composite ``s_{i_1} o ... o s_{i_l}``.
"""
from __future__ import annotations

import re
import warnings
from collections import deque
from itertools import combinations

from .errors import ParseError, PreconditionError
from .rootsys import (
    format_weight,
    is_negative,
    root_to_weight,
    s_root,
    s_weight,
    unit,
)


class WeylElt:
    __slots__ = ("C", "rho", "_word")

    def __init__(self, C, rho, word=None):
        self.C = C
        self.rho = tuple(rho)
        self._word = word

    @classmethod
    def identity(cls, C):
        return cls(C, C.rho, ())

    @classmethod
    def from_word(cls, C, word):
        mu = C.rho
        for i in reversed(tuple(word)):
            if not 1 <= i <= C.rank:
                raise ParseError(f"letter {i} out of range for {C.name}")
            mu = s_weight(C, i - 1, mu)
        return cls(C, mu)

    @property
    def word(self):
        """Canonical reduced word: repeatedly strip the smallest left descent."""
        if self._word is None:
            C, mu, out = self.C, self.rho, []
            while True:
                i = next((k for k, m in enumerate(mu) if m < 0), None)
                if i is None:
                    break
                out.append(i + 1)
                mu = s_weight(C, i, mu)
            self._word = tuple(out)
        return self._word

    def __len__(self):
        return len(self.word)

    @property
    def length(self):
        return len(self.word)

    def is_identity(self):
        return min(self.rho) > 0

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.rho == other.rho and self.C is other.C

    def __hash__(self):
        return hash(self.rho)

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __repr__(self):
        return f"WeylElt({self.C.name}, {format_word(self.word)!r})"

    def __str__(self):
        return word_label(self.word)

    def __mul__(self, other):
        return multiply(self, other)

    def act(self, x, kind="root"):
        f = s_root if kind == "root" else s_weight
        C = self.C
        for i in reversed(self.word):
            x = f(C, i - 1, x)
        return x

    def left_descents(self):
        return [i + 1 for i, m in enumerate(self.rho) if m < 0]

    def right_descents(self):
        return [i for i in range(1, self.C.rank + 1) if is_negative(self.act(unit(self.C.rank, i - 1)))]

    def lmul(self, i):
        """s_i * self."""
        return WeylElt(self.C, s_weight(self.C, i - 1, self.rho))

    def rmul(self, i):
        """self * s_i."""
        C = self.C
        b = root_to_weight(C, self.act(unit(C.rank, i - 1)))
        return WeylElt(C, tuple(r - t for r, t in zip(self.rho, b)))

    def inverse(self):
        return WeylElt.from_word(self.C, tuple(reversed(self.word)))


def act_on(w, x, kind="root"):
    return w.act(x, kind)


def multiply(u, v):
    if u.C is not v.C:
        raise ValueError("elements of different root systems")
    mu, C = v.rho, u.C
    for i in reversed(u.word):
        mu = s_weight(C, i - 1, mu)
    return WeylElt(C, mu)


def inverse(w):
    return w.inverse()


def length(w):
    return w.length


def inversion_count(w):
    """#{beta > 0 : w(beta) < 0}, computed without the word."""
    C = w.C
    inv = w.inverse()
    return sum(1 for c in C.coroots if sum(p * q for p, q in zip(inv.rho, c)) < 0)


# -- parsing -----------------------------------------------------------------

def parse_word(s, C=None):
    """Parse "2 1 3 2", "2,1,3,2", "s2s1s3s2" or "" into a tuple of indices."""
    if isinstance(s, (list, tuple)):
        word = tuple(int(t) for t in s)
    else:
        t = str(s).strip()
        if t in ("", "id", "e"):
            word = ()
        elif re.fullmatch(r"(s\d+)+", t.replace(" ", "")):
            word = tuple(int(x) for x in re.findall(r"s(\d+)", t))
        elif re.fullmatch(r"\d+([\s,]+\d+)*", t):
            word = tuple(int(x) for x in re.split(r"[\s,]+", t))
        else:
            raise ParseError(f"cannot parse word {s!r}")
    if C is not None:
        for i in word:
            if not 1 <= i <= C.rank:
                raise ParseError(f"letter {i} out of range for {C.name}")
    return word


def parse_element(C, s):
    return WeylElt.from_word(C, parse_word(s, C))


def format_word(word):
    return " ".join(str(i) for i in word)


def word_label(word):
    return "".join(f"s{i}" for i in word) or "id"


def parse_parabolic(s, C=None):
    """Parse "P={1,3}", "{1,3}", "1,3" or "" into a frozenset of indices."""
    if isinstance(s, (set, frozenset, list, tuple)):
        P = frozenset(int(i) for i in s)
    else:
        t = str(s).strip()
        t = re.sub(r"^P\s*=\s*", "", t).strip()
        if t.startswith("{") and t.endswith("}"):
            t = t[1:-1]
        t = t.strip()
        if t in ("", "B"):
            P = frozenset()
        elif re.fullmatch(r"\d+([\s,]+\d+)*", t):
            P = frozenset(int(x) for x in re.split(r"[\s,]+", t))
        else:
            raise ParseError(f"cannot parse parabolic set {s!r}")
    if C is not None:
        bad = [i for i in P if not 1 <= i <= C.rank]
        if bad:
            raise ParseError(f"parabolic indices {sorted(bad)} out of range for {C.name}")
    return P


def varpi_P(C, P):
    return tuple(0 if i + 1 in P else 1 for i in range(C.rank))


def in_root_subsystem(beta, P):
    return all(c == 0 or i + 1 in P for i, c in enumerate(beta))


def parabolic_roots(C, P):
    """R^+ minus R_P^+ with coroots, in the standard order."""
    key = ("nonP", frozenset(P))
    cache = C.caches
    if key not in cache:
        cache[key] = [(r, c) for r, c in zip(C.roots, C.coroots) if not in_root_subsystem(r, P)]
    return cache[key]


def stabilizer_set(pi):
    """Delta_P with W_P = Stab(pi) for dominant pi."""
    return frozenset(i + 1 for i, c in enumerate(pi) if c == 0)


# -- Bruhat order --------------------------------------------------------------

def bruhat_leq(v, w):
    C = v.C
    cache = C.caches.setdefault("bruhat", {})
    key = (v.rho, w.rho)
    hit = cache.get(key)
    if hit is not None:
        return hit
    lv, lw = v.length, w.length
    mv, mw = v.rho, w.rho
    ans = None
    while ans is None:
        if lv > lw:
            ans = False
        elif lv == lw:
            ans = mv == mw
        elif lv == 0:
            ans = True
        else:
            i = next(k for k, m in enumerate(mw) if m < 0)
            if mv[i] < 0:
                mv = s_weight(C, i, mv)
                lv -= 1
            mw = s_weight(C, i, mw)
            lw -= 1
    cache[key] = ans
    return ans


def bruhat_leq_subword(v, w):
    """Subword characterisation; slow, used as a test oracle."""
    target, word = v.rho, w.word
    lv = v.length
    for pos in combinations(range(len(word)), lv):
        if WeylElt.from_word(v.C, [word[k] for k in pos]).rho == target:
            return True
    return False


def weak_leq(u, w):
    """Left weak order: l(w u^{-1}) = l(w) - l(u)."""
    return multiply(w, u.inverse()).length == w.length - u.length


# -- cosets ---------------------------------------------------------------------

def coset_weight(w, P):
    """w(varpi_P); determines the coset w W_P."""
    return w.act(varpi_P(w.C, P), "weight")


def minrep_from_weight(C, mu):
    """Minimal u with u(varpi_P) = mu, for mu in the orbit of varpi_P."""
    word = []
    while True:
        i = next((k for k, m in enumerate(mu) if m < 0), None)
        if i is None:
            break
        word.append(i + 1)
        mu = s_weight(C, i, mu)
    return WeylElt.from_word(C, word)


def min_coset_rep(w, P):
    P = frozenset(P)
    if not P:
        return w
    return minrep_from_weight(w.C, coset_weight(w, P))


def min_coset_rep_strip(w, P):
    """Right-multiply by s_i, i in P, while w(alpha_i) < 0."""
    C = w.C
    while True:
        i = next((i for i in sorted(P) if is_negative(w.act(unit(C.rank, i - 1)))), None)
        if i is None:
            return w
        w = w.rmul(i)


def is_min_rep(w, P):
    C = w.C
    return all(not is_negative(w.act(unit(C.rank, i - 1))) for i in P)


def reflect_minrep(x, alpha, P):
    """minrep(x s_alpha) for a positive root alpha, via the coset weight."""
    C = x.C
    vp = varpi_P(C, P)
    c = C.coroot_of[alpha]
    k = sum(vp[i] * c[i] for i in range(C.rank))
    mu = x.act(vp, "weight")
    xw = root_to_weight(C, x.act(alpha))
    return minrep_from_weight(C, tuple(m - k * t for m, t in zip(mu, xw)))


def _neighbors(x, P, down):
    C = x.C
    vp = varpi_P(C, P)
    mu = x.act(vp, "weight")
    out = []
    for a, c in parabolic_roots(C, P):
        xa = x.act(a)
        if is_negative(xa) != down:
            continue
        k = sum(vp[i] * c[i] for i in range(C.rank))
        xw = root_to_weight(C, xa)
        out.append((a, minrep_from_weight(C, tuple(m - k * t for m, t in zip(mu, xw)))))
    return out


def lower_neighbors(x, P):
    """Pairs (alpha, minrep(x s_alpha)) with x(alpha) < 0, alpha in R^+ minus R_P^+."""
    return _neighbors(x, frozenset(P), True)


def upper_neighbors(x, P):
    """Pairs (alpha, minrep(x s_alpha)) with x(alpha) > 0, alpha in R^+ minus R_P^+."""
    return _neighbors(x, frozenset(P), False)


def interval(v, w, P):
    """[v, w]^P as a set of minimal coset representatives."""
    P = frozenset(P)
    if not bruhat_leq(v, w):
        raise PreconditionError(f"empty interval: {v} is not below {w}")
    seen = {w}
    todo = deque([w])
    while todo:
        x = todo.popleft()
        for _, y in lower_neighbors(x, P):
            if y not in seen and bruhat_leq(v, y):
                seen.add(y)
                todo.append(y)
    return seen


def all_min_reps(C, P):
    """W^P via BFS upward from the identity; only for small groups."""
    P = frozenset(P)
    e = WeylElt.identity(C)
    seen = {e}
    layer = [e]
    while layer:
        nxt = []
        for x in layer:
            for i in range(1, C.rank + 1):
                y = x.lmul(i)
                if y.length > x.length and y not in seen and is_min_rep(y, P):
                    seen.add(y)
                    nxt.append(y)
        layer = nxt
    return seen


def all_elements(C):
    return all_min_reps(C, frozenset())


# -- inversion sets ---------------------------------------------------------------

def beta_roots(C, word):
    """beta_j = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j})."""
    out = []
    for j, i in enumerate(word):
        b = unit(C.rank, i - 1)
        for k in reversed(word[:j]):
            b = s_root(C, k - 1, b)
        out.append(b)
    return out


def inversion_reflections(w):
    """S(w) = {beta > 0 : w^{-1}(beta) < 0}."""
    inv = w.inverse()
    return frozenset(b for b in w.C.roots if is_negative(inv.act(b)))


def skew_set(v, w, P):
    """S(w/v) in the coset reading: beta = -w(alpha) with v <= minrep(s_beta w)."""
    out = set()
    for a, y in lower_neighbors(w, P):
        if bruhat_leq(v, y):
            out.add(tuple(-t for t in w.act(a)))
    return frozenset(out)


def sorted_roots(roots):
    return sorted(roots, key=lambda r: (sum(r), r))


def reflection(C, beta):
    cor = C.coroot_of.get(tuple(beta))
    if cor is None:
        raise ValueError(f"{beta} is not a positive root of {C.name}")
    k = sum(cor)
    bw = root_to_weight(C, beta)
    return WeylElt(C, tuple(r - k * t for r, t in zip(C.rho, bw)))


# -- reduced words --------------------------------------------------------------

def reduced_words(w):
    """All reduced words, by DFS over left descents."""
    C = w.C

    def rec(mu):
        desc = [i for i, m in enumerate(mu) if m < 0]
        if not desc:
            yield ()
            return
        for i in desc:
            for rest in rec(s_weight(C, i, mu)):
                yield (i + 1,) + rest

    return list(rec(w.rho))


def count_reduced_words(w):
    """#Red(w) by dynamic programming over left descents."""
    C = w.C
    memo = C.caches.setdefault("redcount", {})
    stack = [w.rho]
    while stack:
        mu = stack[-1]
        if mu in memo:
            stack.pop()
            continue
        desc = [i for i, m in enumerate(mu) if m < 0]
        if not desc:
            memo[mu] = 1
            stack.pop()
            continue
        kids = [s_weight(C, i, mu) for i in desc]
        todo = [k for k in kids if k not in memo]
        if todo:
            stack.extend(todo)
        else:
            memo[mu] = sum(memo[k] for k in kids)
            stack.pop()
    return memo[w.rho]


# -- minuscule machinery ------------------------------------------------------------

def is_dominant(mu):
    return min(mu) >= 0


def is_pi_minuscule(w, pi):
    pi = tuple(pi)
    if not is_dominant(pi):
        warnings.warn(f"pi = {format_weight(pi)} is not dominant", stacklevel=2)
    C, mu = w.C, pi
    for i in reversed(w.word):
        if mu[i - 1] != 1:
            return False
        mu = s_weight(C, i - 1, mu)
    return True


def is_pi_minuscule_by_roots(w, pi):
    """<pi, gamma^vee> = 1 for every gamma > 0 with w(gamma) < 0."""
    C = w.C
    for g, c in zip(C.roots, C.coroots):
        if is_negative(w.act(g)) and sum(p * q for p, q in zip(pi, c)) != 1:
            return False
    return True


def minuscule_elements(C, pi):
    """All pi-minuscule elements for dominant pi, by BFS from the identity."""
    pi = tuple(pi)
    if not is_dominant(pi):
        raise PreconditionError("pi must be dominant")
    e = WeylElt.identity(C)
    out = [e]
    layer = {e.rho: (e, pi)}
    while layer:
        nxt = {}
        for x, mu in layer.values():
            for i in range(C.rank):
                if mu[i] == 1:
                    y = WeylElt(C, s_weight(C, i, x.rho))
                    if y.rho not in nxt:
                        nxt[y.rho] = (y, s_weight(C, i, mu))
        out.extend(y for y, _ in nxt.values())
        layer = nxt
    return out


def predominant_check(C, lam):
    """<lam, beta^vee> >= -1 for every positive root beta."""
    return all(sum(p * q for p, q in zip(lam, c)) >= -1 for c in C.coroots)


is_predominant = predominant_check


def diagram_D(C, lam):
    return frozenset(r for r, c in zip(C.roots, C.coroots) if sum(p * q for p, q in zip(lam, c)) == -1)


def lambda_steps(C, lam):
    """Roots beta with <lam, beta^vee> = -1, i.e. the allowed steps lam -> lam + beta."""
    out = []
    for r, c in zip(C.roots, C.coroots):
        if sum(p * q for p, q in zip(lam, c)) == -1:
            out.append(r)
    return out


def lambda_paths(C, lam, max_len=None):
    """All lambda-paths (as tuples of roots) starting at lam, including the empty one."""
    lam = tuple(lam)
    if not is_predominant(C, lam):
        raise PreconditionError(f"{format_weight(lam)} is not pre-dominant")
    out = []

    def rec(mu, path):
        out.append(tuple(path))
        if max_len is not None and len(path) >= max_len:
            return
        for b in lambda_steps(C, mu):
            bw = root_to_weight(C, b)
            path.append(b)
            rec(tuple(m + t for m, t in zip(mu, bw)), path)
            path.pop()

    rec(lam, [])
    return out


def maximal_lambda_paths(C, lam):
    d = len(diagram_D(C, lam))
    return [p for p in lambda_paths(C, lam, d) if len(p) == d]


def mpath_to_minuscule(C, lam):
    """(pi, w) with lam = w(pi), w pi-minuscule, read off one maximal lambda-path."""
    lam = tuple(lam)
    if not is_predominant(C, lam):
        raise PreconditionError(f"{format_weight(lam)} is not pre-dominant")
    word, mu = [], lam
    while True:
        i = next((k for k in range(C.rank) if mu[k] == -1), None)
        if i is None:
            break
        word.append(i + 1)
        mu = s_weight(C, i, mu)
    w = WeylElt.from_word(C, word)
    return w.inverse().act(lam, "weight"), w


def weak_strong_interval_check(u, w, pi, check_hypotheses=True):
    """True iff [u, w]^pi is the same set in the weak and the strong order."""
    pi = tuple(pi)
    P = stabilizer_set(pi)
    if check_hypotheses:
        if not (is_dominant(pi) and is_pi_minuscule(u, pi) and is_pi_minuscule(w, pi) and bruhat_leq(u, w)):
            raise PreconditionError("weak_strong_interval_check needs u <= w, both pi-minuscule")
    strong = interval(u, w, P)
    weak = {x for x in strong if weak_leq(u, x) and weak_leq(x, w)}
    return weak == strong
