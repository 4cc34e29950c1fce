"""Exact polynomials in the simple-root variables and fractions over linear forms.

A ``FactoredFraction`` is ``num / (d * prod L_k^e_k)`` with ``num`` an integer
polynomial, ``d`` a positive integer and the ``L_k`` primitive linear forms
(affine forms are allowed, which the SM localizations need).  Cancellation
is done only by exact trial division of ``num`` by the ``L_k``; since every
denominator that occurs is a product of linear forms, this keeps the
representation unique.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import PoleError


class Poly:
    """Sparse integer polynomial: a dict exponent-tuple -> nonzero int."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c}) if c else cls(n)

    @classmethod
    def var(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs, const=0):
        n = len(coeffs)
        t = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                t[tuple(e)] = c
        if const:
            t[(0,) * n] = const
        return cls(n, t)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.n, other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        out = Poly(self.n)
        out.terms = t
        return out

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.n, {e: c * other for e, c in self.terms.items()}) if other else Poly(self.n)
        if not isinstance(other, Poly):
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.n, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def exact_div_int(self, k):
        return Poly(self.n, {e: c // k for e, c in self.terms.items()})

    def eval(self, point):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x**k
            total += t
        return total

    def div_linform(self, L):
        """Exact quotient by the linear form L, or None if L does not divide."""
        k = L.pivot
        c = L.coeffs[k]
        n = self.n
        others = [(j, a) for j, a in enumerate(L.coeffs) if a and j != k]
        # bucket terms by the exponent of the pivot variable; dividing out the
        # top bucket only ever spills into the bucket one below
        buckets = {}
        for e, cf in self.terms.items():
            buckets.setdefault(e[k], {})[e] = cf
        q = {}
        for D in range(max(buckets, default=0), 0, -1):
            top = buckets.pop(D, None)
            if not top:
                continue
            low = buckets.setdefault(D - 1, {})
            for e, cf in top.items():
                qq, r = divmod(cf, c)
                if r:
                    return None
                qe = e[:k] + (D - 1,) + e[k + 1:]
                q[qe] = qq
                for j, a in others:
                    te = qe[:j] + (qe[j] + 1,) + qe[j + 1:]
                    v = low.get(te, 0) - qq * a
                    if v:
                        low[te] = v
                    else:
                        low.pop(te, None)
                if L.const:
                    v = low.get(qe, 0) - qq * L.const
                    if v:
                        low[qe] = v
                    else:
                        low.pop(qe, None)
        if buckets.get(0):
            return None
        out = Poly(n)
        out.terms = q
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def to_json(self):
        return [
            {"exp": {f"a{i + 1}": k for i, k in enumerate(e) if k}, "coef": c}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, n, data):
        t = {}
        for item in data:
            e = [0] * n
            for name, k in item["exp"].items():
                e[int(name[1:]) - 1] = k
            t[tuple(e)] = item["coef"]
        return cls(n, t)


def _mono(e):
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"a{i + 1}")
        elif k:
            parts.append(f"a{i + 1}^{k}")
    return "*".join(parts)


def format_poly(p):
    if not p.terms:
        return "0"
    out = ""
    for e, c in p.sorted_terms():
        m = _mono(e)
        if not m:
            s = str(abs(c))
        elif abs(c) == 1:
            s = m
        else:
            s = f"{abs(c)}*{m}"
        if not out:
            out = ("-" if c < 0 else "") + s
        else:
            out += (" - " if c < 0 else " + ") + s
    return out


@dataclass(frozen=True, order=True)
class LinForm:
    """sum_i coeffs[i] * a_i + const."""

    coeffs: tuple
    const: int = 0

    @property
    def n(self):
        return len(self.coeffs)

    @property
    def pivot(self):
        return next(i for i, c in enumerate(self.coeffs) if c)

    def is_zero(self):
        return not any(self.coeffs) and not self.const

    def is_constant(self):
        return not any(self.coeffs)

    def primitive(self):
        """(unit, L') with self = unit * L', L' primitive with positive leading coefficient."""
        g = gcd(*self.coeffs, self.const)
        lead = next((c for c in self.coeffs if c), self.const)
        if lead < 0:
            g = -g
        return g, LinForm(tuple(c // g for c in self.coeffs), self.const // g)

    def to_poly(self):
        return Poly.linear(self.coeffs, self.const)

    def eval(self, point):
        return sum(c * x for c, x in zip(self.coeffs, point)) + self.const

    def __str__(self):
        return format_linform(self)


def format_linform(L):
    parts = []
    for i, c in enumerate(L.coeffs):
        if c:
            m = f"a{i + 1}"
            parts.append(m if c == 1 else "-" + m if c == -1 else f"{c}{m}")
    if L.const or not parts:
        parts.append(str(L.const))
    out = parts[0]
    for s in parts[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def linform(coeffs, const=0):
    return LinForm(tuple(coeffs), const)


class FactoredFraction:
    __slots__ = ("num", "scale", "den")

    def __init__(self, num, scale=1, den=()):
        # callers go through _make; this stores an already normal form
        self.num = num
        self.scale = scale
        self.den = den

    @property
    def n(self):
        return self.num.n

    @classmethod
    def from_int(cls, n, c):
        return cls(Poly.const(n, c))

    @classmethod
    def from_fraction(cls, n, q):
        q = Fraction(q)
        return _make(Poly.const(n, q.numerator), q.denominator, {})

    @classmethod
    def from_poly(cls, p):
        return _make(p, 1, {})

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = FactoredFraction.from_int(self.n, other)
        if not isinstance(other, FactoredFraction):
            return NotImplemented
        return ff_equal(self, other)

    def __hash__(self):
        return hash((self.num, self.scale, self.den))

    def __add__(self, other):
        return ff_add(self, _coerce(other, self.n))

    __radd__ = __add__

    def __neg__(self):
        return FactoredFraction(-self.num, self.scale, self.den)

    def __sub__(self, other):
        return ff_add(self, -_coerce(other, self.n))

    def __rsub__(self, other):
        return ff_add(-self, _coerce(other, self.n))

    def __mul__(self, other):
        return ff_mul(self, _coerce(other, self.n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LinForm):
            return ff_mul(self, ff_inv_linform(other))
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return ff_mul(self, FactoredFraction.from_fraction(self.n, 1 / q))
        if isinstance(other, FactoredFraction):
            return ff_div(self, other)
        return NotImplemented

    def __str__(self):
        return format_ff(self)

    def __repr__(self):
        return f"FactoredFraction({format_ff(self)!r})"

    def to_json(self):
        return {
            "num": self.num.to_json(),
            "scale": self.scale,
            "den": [
                {"form": {f"a{i + 1}": c for i, c in enumerate(L.coeffs) if c}, "const": L.const, "mult": e}
                for L, e in self.den
            ],
        }

    @classmethod
    def from_json(cls, n, data):
        den = {}
        for item in data["den"]:
            co = [0] * n
            for name, c in item["form"].items():
                co[int(name[1:]) - 1] = c
            den[LinForm(tuple(co), item["const"])] = item["mult"]
        return _make(Poly.from_json(n, data["num"]), data["scale"], den)


def _coerce(x, n):
    if isinstance(x, FactoredFraction):
        return x
    if isinstance(x, (int, Fraction)):
        return FactoredFraction.from_fraction(n, x)
    if isinstance(x, Poly):
        return FactoredFraction.from_poly(x)
    if isinstance(x, LinForm):
        return ff_of_linform(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to FactoredFraction")


def _make(num, scale, den):
    """Normalize num / (scale * prod L^e); den maps primitive LinForm -> exponent."""
    n = num.n
    if num.is_zero():
        return FactoredFraction(Poly(n), 1, ())
    if scale < 0:
        num, scale = -num, -scale
    out = []
    for L in sorted(den):
        e = den[L]
        while e > 0:
            q = num.div_linform(L)
            if q is None:
                break
            num = q
            e -= 1
        if e > 0:
            out.append((L, e))
    g = gcd(num.content(), scale)
    if g > 1:
        num = num.exact_div_int(g)
        scale //= g
    return FactoredFraction(num, scale, tuple(out))


def ff_zero(n):
    return FactoredFraction(Poly(n), 1, ())


def ff_one(n):
    return FactoredFraction.from_int(n, 1)


def ff_of_linform(L):
    return FactoredFraction(L.to_poly())


def ff_inv_linform(L):
    if L.is_zero():
        raise ZeroDivisionError("inverting the zero linear form")
    if L.is_constant():
        return FactoredFraction.from_fraction(L.n, Fraction(1, L.const))
    u, P = L.primitive()
    return _make(Poly.const(L.n, 1), u, {P: 1})


def ff_add(a, b):
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    da, db = dict(a.den), dict(b.den)
    keys = set(da) | set(db)
    den = {L: max(da.get(L, 0), db.get(L, 0)) for L in keys}
    m = lcm(a.scale, b.scale)
    na = a.num * (m // a.scale)
    for L in keys:
        k = den[L] - da.get(L, 0)
        if k:
            na = na * (L.to_poly() ** k)
    nb = b.num * (m // b.scale)
    for L in keys:
        k = den[L] - db.get(L, 0)
        if k:
            nb = nb * (L.to_poly() ** k)
    return _make(na + nb, m, den)


def ff_mul(a, b):
    if a.is_zero() or b.is_zero():
        return ff_zero(a.n)
    den = dict(a.den)
    for L, e in b.den:
        den[L] = den.get(L, 0) + e
    return _make(a.num * b.num, a.scale * b.scale, den)


def ff_div(a, b):
    """a / b for b with a constant numerator (e.g. a reciprocal of linear forms)."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero fraction")
    if b.num.degree() != 0:
        raise ValueError("division by a fraction with non-constant numerator is not supported")
    c = b.num.terms[(0,) * a.n]
    p = Poly.const(a.n, b.scale)
    for L, e in b.den:
        p = p * (L.to_poly() ** e)
    return _make(a.num * p, a.scale * c, dict(a.den))


def ff_prod(items, n):
    out = ff_one(n)
    for x in items:
        out = out * x
    return out


def ff_equal(a, b):
    """Exact equality by cross-multiplying over the common denominator."""
    if a.n != b.n:
        return False
    return ff_add(a, -b).is_zero()


def ff_eval(a, point):
    point = [Fraction(x) for x in point]
    den = Fraction(a.scale)
    for L, e in a.den:
        v = L.eval(point)
        if v == 0:
            raise PoleError(f"pole of {format_linform(L)} at {point}")
        den *= v**e
    return a.num.eval(point) / den


def ff_probably_equal(a, b, trials=4, rng=None, bound=10**6):
    """Random-point pre-filter.  False is definitive, True is only likely."""
    rng = rng or random.Random(0)
    done = 0
    attempts = 0
    while done < trials and attempts < 20 * trials:
        attempts += 1
        pt = [rng.randint(-bound, bound) for _ in range(a.n)]
        try:
            x, y = ff_eval(a, pt), ff_eval(b, pt)
        except PoleError:
            continue
        if x != y:
            return False
        done += 1
    return True


def format_ff(a):
    num = format_poly(a.num)
    if not a.den and a.scale == 1:
        return num
    if len(a.num.terms) > 1:
        num = f"({num})"
    parts = []
    if a.scale != 1:
        parts.append(str(a.scale))
    for L, e in a.den:
        parts.append(f"({format_linform(L)})" + (f"^{e}" if e > 1 else ""))
    return f"{num} / " + " ".join(parts)
