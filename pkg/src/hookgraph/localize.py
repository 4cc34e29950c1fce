"""Localization formulas driven by subwords of a fixed reduced word.

All dynamic programs walk the reduced word from right to left.  The state
is either a group element (Billey's formula, reduced subwords only) or a
coset, stored as the weight ``x(varpi_P)`` (SM classes, all subwords).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .errors import InvariantError, PreconditionError
from .rootsys import format_weight, s_weight, weight_to_root
from .symfrac import FactoredFraction, LinForm, Poly, ff_eval, ff_inv_linform, ff_one, ff_zero, linform
from .weyl import (
    WeylElt,
    bruhat_leq,
    coset_weight,
    lower_neighbors,
    minrep_from_weight,
    parabolic_roots,
    reflect_minrep,
    upper_neighbors,
    beta_roots,
    inversion_reflections,
    varpi_P,
)


@dataclass(frozen=True)
class BetaSequence:
    word: tuple
    betas: tuple


@dataclass(frozen=True)
class WeightSets:
    tangent: tuple
    tangent_v: tuple
    normal_v: tuple


@dataclass
class Verdict:
    smooth: bool
    lhs: object
    rhs: object
    method: str

    @property
    def label(self):
        return "smooth" if self.smooth else "singular"


def root_poly(beta):
    return Poly.linear(beta)


def prod_roots(n, roots):
    p = Poly.const(n, 1)
    for b in roots:
        p = p * root_poly(b)
    return p


def beta_sequence(w):
    betas = tuple(beta_roots(w.C, w.word))
    if len(set(betas)) != len(betas) or set(betas) != inversion_reflections(w):
        raise InvariantError(f"beta sequence of {w} does not match S(w)")
    return BetaSequence(w.word, betas)


def _check_leq(v, w):
    if not bruhat_leq(v, w):
        raise PreconditionError(f"{v} is not below {w}")


def billey_loc(v, w, P=frozenset()):
    """[Y(v)]|_w: sum over reduced subwords of w's word spelling v of prod beta_j."""
    C, n = w.C, w.C.rank
    if not bruhat_leq(v, w):
        return Poly(n)
    seq = beta_sequence(w)
    states = {C.rho: Poly.const(n, 1)}
    target = v.rho
    for j in range(len(seq.word) - 1, -1, -1):
        i = seq.word[j] - 1
        bp = root_poly(seq.betas[j])
        new = dict(states)
        for mu, p in states.items():
            if mu[i] <= 0:
                continue
            nu = s_weight(C, i, mu)
            if not bruhat_leq(WeylElt(C, nu), v):
                continue
            q = p * bp
            new[nu] = new[nu] + q if nu in new else q
        states = new
    return states.get(target, Poly(n))


def billey_subwords(v, w):
    """Index sets of reduced subwords of w's canonical word that spell v."""
    C = w.C
    word = w.word
    out = []

    def rec(j, mu, chosen):
        if j < 0:
            if mu == v.rho:
                out.append(tuple(reversed(chosen)))
            return
        rec(j - 1, mu, chosen)
        i = word[j] - 1
        if mu[i] > 0:
            nu = s_weight(C, i, mu)
            if bruhat_leq(WeylElt(C, nu), v):
                chosen.append(j)
                rec(j - 1, nu, chosen)
                chosen.pop()

    rec(len(word) - 1, C.rho, [])
    return out


def _coset_subword_sums(w, P):
    """Map coset weight -> sum over all subwords of w's word landing there of prod beta_j."""
    C, n = w.C, w.C.rank
    seq = beta_sequence(w)
    states = {varpi_P(C, P): Poly.const(n, 1)}
    for j in range(len(seq.word) - 1, -1, -1):
        i = seq.word[j] - 1
        bp = root_poly(seq.betas[j])
        new = dict(states)
        for mu, p in states.items():
            nu = s_weight(C, i, mu)
            q = p * bp
            new[nu] = new[nu] + q if nu in new else q
        states = new
    return states, seq


def _one_plus_prod(n, betas):
    out = ff_one(n)
    for b in betas:
        out = out * ff_inv_linform(LinForm(tuple(b), 1))
    return out


def sm_cell_loc(u, v, P=frozenset()):
    """s_M(Y(u)°)|_v."""
    P = frozenset(P)
    n = v.C.rank
    if not bruhat_leq(u, v):
        return ff_zero(n)
    states, seq = _coset_subword_sums(v, P)
    num = states.get(coset_weight(u, P), Poly(n))
    return FactoredFraction.from_poly(num) * _one_plus_prod(n, seq.betas)


def sm_variety_loc(v, w, P=frozenset()):
    """s_M(Y(v))|_w, the sum of the cell localizations over u >= v."""
    P = frozenset(P)
    C, n = w.C, w.C.rank
    if not bruhat_leq(v, w):
        return ff_zero(n)
    states, seq = _coset_subword_sums(w, P)
    num = Poly(n)
    for mu, p in states.items():
        if bruhat_leq(v, minrep_from_weight(C, mu)):
            num = num + p
    return FactoredFraction.from_poly(num) * _one_plus_prod(n, seq.betas)


def eq_mult_richardson(v, w, P=frozenset()):
    """s_M(Y(v))|_w / s_M(Y(w))|_w as a subword sum over prod beta_j."""
    P = frozenset(P)
    C, n = w.C, w.C.rank
    _check_leq(v, w)
    states, seq = _coset_subword_sums(w, P)
    num = Poly(n)
    for mu, p in states.items():
        if bruhat_leq(v, minrep_from_weight(C, mu)):
            num = num + p
    den = ff_one(n)
    for b in seq.betas:
        den = den * ff_inv_linform(linform(b))
    return FactoredFraction.from_poly(num) * den


def weight_sets(v, w, P=frozenset()):
    P = frozenset(P)
    _check_leq(v, w)
    C = w.C
    tangent, tv, nv = [], [], []
    for a, _ in parabolic_roots(C, P):
        beta = tuple(-t for t in w.act(a))
        tangent.append(beta)
        (tv if bruhat_leq(v, reflect_minrep(w, a, P)) else nv).append(beta)
    return WeightSets(tuple(tangent), tuple(tv), tuple(nv))


def kumar_smooth(v, w, P=frozenset()):
    """[Y(v)]|_w equals the product of the normal weights iff Y(v) is smooth at w."""
    ws = weight_sets(v, w, P)
    lhs = billey_loc(v, w, P)
    rhs = prod_roots(w.C.rank, ws.normal_v)
    return Verdict(lhs == rhs, lhs, rhs, "kumar")


# -- Chevalley formula and SMLR coefficients --------------------------------------

@dataclass
class ChevalleyRow:
    """c_1(L_lambda) . s_M(Y(w)°) = diagonal * [w] + sum_u off[u] * [u]."""

    lam: tuple
    w: WeylElt
    diagonal: tuple
    off: dict = field(default_factory=dict)

    def diagonal_roots(self):
        return weight_to_root(self.w.C, self.diagonal, exact=False)

    def __getitem__(self, u):
        if u == self.w:
            return self.diagonal
        return self.off.get(u, 0)


def _in_levi_dual(lam, P):
    return all(lam[i - 1] == 0 for i in P)


def chevalley_coeffs(lam, w, P=frozenset()):
    P = frozenset(P)
    lam = tuple(lam)
    if not _in_levi_dual(lam, P):
        raise PreconditionError(f"{format_weight(lam)} is not in X*(T)_P")
    C = w.C
    off = {}
    for a, u in upper_neighbors(w, P):
        m = sum(p * q for p, q in zip(lam, C.coroot_of[a]))
        if m:
            off[u] = off.get(u, 0) - m
    off = {u: c for u, c in off.items() if c}
    for u in off:
        if not bruhat_leq(w, u) or u == w:
            raise InvariantError(f"Chevalley coefficient at {u} not above {w}")
    return ChevalleyRow(lam, w, w.act(lam, "weight"), off)


def lambda_candidates(C, P, limit=2):
    P = frozenset(P)
    free = [i for i in range(C.rank) if i + 1 not in P]
    out = []
    for i in free:
        out.append(tuple(int(k == i) for k in range(C.rank)))
    out.append(varpi_P(C, P))
    combos = []
    for coeffs in iproduct(range(limit + 1), repeat=len(free)):
        if any(coeffs):
            lam = [0] * C.rank
            for i, c in zip(free, coeffs):
                lam[i] = c
            combos.append(tuple(lam))
    combos.sort(key=lambda t: (sum(t), t))
    for lam in combos:
        if lam not in out:
            out.append(lam)
    return out


class SmlrSolver:
    """Memoized recursion for d^w_{u,v}.

    ``offset`` rotates the list of candidate weights so that tests can check
    that the result does not depend on the choice of lambda.
    """

    def __init__(self, C, P=frozenset(), offset=0, candidates=None):
        self.C = C
        self.P = frozenset(P)
        cands = list(candidates or lambda_candidates(C, self.P))
        k = offset % len(cands)
        self.candidates = cands[k:] + cands[:k]
        self.memo = {}
        self._rows = {}
        self._cells = {}

    def choose(self, u, w):
        for lam in self.candidates:
            if w.act(lam, "weight") != u.act(lam, "weight"):
                return lam
        raise InvariantError(f"no lambda separates {u} and {w}")

    def row(self, lam, x):
        key = (lam, x)
        if key not in self._rows:
            self._rows[key] = chevalley_coeffs(lam, x, self.P)
        return self._rows[key]

    def cell(self, u, v):
        key = (u, v)
        if key not in self._cells:
            self._cells[key] = sm_cell_loc(u, v, self.P)
        return self._cells[key]

    def d(self, u, v, w):
        key = (u.rho, v.rho, w.rho)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        n = self.C.rank
        if not (bruhat_leq(u, w) and bruhat_leq(v, w)):
            val = ff_zero(n)
        elif u == w:
            val = self.cell(v, u)
        else:
            lam = self.choose(u, w)
            diff = weight_to_root(self.C, tuple(a - b for a, b in zip(w.act(lam, "weight"), u.act(lam, "weight"))))
            total = ff_zero(n)
            for x, c in self.row(lam, u).off.items():
                if bruhat_leq(x, w):
                    total = total + c * self.d(x, v, w)
            for _, y in lower_neighbors(w, self.P):
                if not bruhat_leq(u, y):
                    continue
                c = self.row(lam, y).off.get(w, 0)
                if c:
                    total = total - c * self.d(u, v, y)
            val = total / linform(diff)
        self.memo[key] = val
        return val


def smlr(u, v, w, P=frozenset(), offset=0):
    return SmlrSolver(w.C, P, offset).d(u, v, w)


def smlr_table(elements, P=frozenset(), offset=0):
    """All d^w_{u,v} for u, v, w in the given list of minimal representatives."""
    elements = sorted(elements)
    if not elements:
        return {}
    solver = SmlrSolver(elements[0].C, P, offset)
    return {(u, v, w): solver.d(u, v, w) for u in elements for v in elements for w in elements}


def check_smlr_localization(table, elements, P=frozenset()):
    """Every fixed point z: sum_w d^w_{u,v} s_M(Y(w)°)|_z = s_M(Y(u)°)|_z s_M(Y(v)°)|_z."""
    elements = sorted(elements)
    cells = {(a, z): sm_cell_loc(a, z, P) for a in elements for z in elements}
    bad = []
    for u in elements:
        for v in elements:
            for z in elements:
                lhs = ff_zero(z.C.rank)
                for w in elements:
                    d = table[(u, v, w)]
                    if not d.is_zero():
                        lhs = lhs + d * cells[(w, z)]
                if lhs != cells[(u, z)] * cells[(v, z)]:
                    bad.append((u, v, z))
    return bad


def phi_evaluate(p, w, pi):
    """Evaluate p at alpha_i -> <-w(pi), alpha_i^vee> (simply-laced only)."""
    C = w.C
    if not C.simply_laced:
        raise PreconditionError(f"phi_evaluate needs a simply-laced type, got {C.name}")
    point = [-t for t in w.act(tuple(pi), "weight")]
    if isinstance(p, FactoredFraction):
        return ff_eval(p, point)
    if isinstance(p, LinForm):
        return Fraction(p.eval(point))
    return Fraction(p.eval(point))


def height_specialize(p):
    """Evaluate at alpha_i -> 1."""
    n = p.n
    if isinstance(p, FactoredFraction):
        return ff_eval(p, [1] * n)
    return Fraction(p.eval([1] * n))
