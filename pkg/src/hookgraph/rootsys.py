"""Finite root systems in simple-root / fundamental-weight coordinates.

Roots are integer tuples in the basis of simple roots, weights are integer
tuples in the basis of fundamental weights, coroots are integer tuples in
the basis of simple coroots.  Simple-root indices are 1-based wherever they
appear in the public API (words, parabolic sets, printed labels).

The Cartan matrix is stored as ``cartan[i][j] = <alpha_j, alpha_i^vee>`` so
that ``alpha_j = sum_i cartan[i][j] * varpi_i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from .errors import CartanError, ParseError

RootVec = tuple
WeightVec = tuple
CorootVec = tuple

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _cartan_rows(series, n):
    if series == "A":
        return _chain(n)
    if series == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a
    if series == "C":
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a
    if series == "D":
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if series == "E":
        # Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(1, 3), (3, 4), (2, 4)] + [(k, k + 1) for k in range(4, n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    if series == "F":
        a = _chain(4)
        a[2][1] = -2
        return a
    if series == "G":
        # alpha_1 short, alpha_2 long
        return [[2, -3], [-1, 2]]
    raise CartanError(f"unknown series {series!r}")


def _valid(series, n):
    if series in _MIN_RANK:
        return n >= _MIN_RANK[series]
    return (series, n) in {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    cartan: tuple
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.series, self.rank, self.cartan)))

    def __hash__(self):
        return self._hash

    @property
    def name(self):
        return f"{self.series}{self.rank}"

    def __repr__(self):
        return f"CartanDatum({self.name})"

    @cached_property
    def _root_table(self):
        return _close_roots(self)

    @property
    def roots(self):
        return self._root_table[0]

    @property
    def coroots(self):
        return self._root_table[1]

    @cached_property
    def root_index(self):
        return {r: k for k, r in enumerate(self.roots)}

    @cached_property
    def coroot_of(self):
        return dict(zip(self.roots, self.coroots))

    @cached_property
    def simple_roots(self):
        return [unit(self.rank, i) for i in range(self.rank)]

    @cached_property
    def rho(self):
        return (1,) * self.rank

    @cached_property
    def root_lengths(self):
        """Squared lengths of the simple roots, scaled to coprime integers."""
        n = self.rank
        a = self.cartan
        d = [None] * n
        d[0] = Fraction(1)
        todo = [0]
        while todo:
            i = todo.pop()
            for j in range(n):
                if j != i and a[i][j] and d[j] is None:
                    # a[i][j] / a[j][i] = |alpha_j|^2 / |alpha_i|^2
                    d[j] = d[i] * Fraction(a[i][j], a[j][i])
                    todo.append(j)
        m = lcm(*(x.denominator for x in d))
        return tuple(int(x * m) for x in d)

    @property
    def simply_laced(self):
        return self.series in ("A", "D", "E")

    @cached_property
    def _inverse(self):
        return _rational_inverse(self.cartan)

    @cached_property
    def caches(self):
        """Per-datum memo tables (not thread-safe; see README)."""
        return {}


def build_cartan(series, rank) -> CartanDatum:
    series = str(series).upper()
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise CartanError(f"rank must be an integer, got {rank!r}") from None
    if series not in "ABCDEFG" or len(series) != 1:
        raise CartanError(f"unknown series {series!r}")
    if rank < 1 or not _valid(series, rank):
        raise CartanError(f"{series}{rank} is not a valid finite type")
    rows = _cartan_rows(series, rank)
    key = (series, rank)
    if key not in _DATA:
        _DATA[key] = CartanDatum(series, rank, tuple(tuple(r) for r in rows))
    return _DATA[key]


_DATA: dict = {}


def parse_type(s) -> CartanDatum:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(s))
    if not m:
        raise CartanError(f"cannot parse root system {s!r}")
    return build_cartan(m.group(1), int(m.group(2)))


def unit(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


def _close_roots(C):
    n, a = C.rank, C.cartan
    start = [(unit(n, i), unit(n, i)) for i in range(n)]
    coroot = dict(start)
    todo = list(start)
    while todo:
        r, c = todo.pop()
        for i in range(n):
            p = sum(a[i][j] * r[j] for j in range(n))
            if p == 0:
                continue
            r2 = list(r)
            r2[i] -= p
            r2 = tuple(r2)
            if min(r2) < 0:
                continue
            q = sum(c[k] * a[k][i] for k in range(n))
            c2 = list(c)
            c2[i] -= q
            c2 = tuple(c2)
            if r2 in coroot:
                if coroot[r2] != c2:
                    raise AssertionError(f"coroot mismatch at {r2}")
                continue
            coroot[r2] = c2
            todo.append((r2, c2))
    roots = sorted(coroot, key=lambda r: (sum(r), r))
    return roots, [coroot[r] for r in roots]


def positive_roots(C: CartanDatum):
    """List of (root, coroot) pairs sorted by height, then lexicographically."""
    return list(zip(C.roots, C.coroots))


def height(beta) -> int:
    return sum(beta)


def is_positive(x):
    return any(x) and min(x) >= 0


def is_negative(x):
    return any(x) and max(x) <= 0


def root_to_weight(C, r):
    a, n = C.cartan, C.rank
    return tuple(sum(a[i][j] * r[j] for j in range(n)) for i in range(n))


def _rational_inverse(rows):
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == k)) for k in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def weight_to_root(C, mu, exact=True):
    """Express a weight in the simple-root basis.

    Returns an integer tuple when the result is integral (always the case
    for elements of the root lattice).  With ``exact=False`` a rational
    tuple is returned without the integrality requirement.
    """
    inv, n = C._inverse, C.rank
    r = tuple(sum(inv[i][j] * mu[j] for j in range(n)) for i in range(n))
    if all(x.denominator == 1 for x in r):
        return tuple(int(x) for x in r)
    if exact:
        raise ValueError(f"weight {mu} is not in the root lattice")
    return r


def _check_rank(C, *vecs):
    for v in vecs:
        if len(v) != C.rank:
            raise ValueError(f"rank mismatch: expected length {C.rank}, got {len(v)}")


def pairing(C, x, coroot, kind="weight"):
    """<x, beta^vee> for x a weight (default) or a root."""
    _check_rank(C, x, coroot)
    if kind == "root":
        x = root_to_weight(C, x)
    elif kind != "weight":
        raise ValueError(f"unknown vector kind {kind!r}")
    return sum(p * q for p, q in zip(x, coroot))


def reflect(C, x, beta, kind="root"):
    """s_beta(x) = x - <x, beta^vee> beta, for x a root or a weight."""
    _check_rank(C, x, beta)
    b = beta if is_positive(beta) else tuple(-t for t in beta)
    cor = C.coroot_of.get(b)
    if cor is None:
        raise ValueError(f"{format_root(beta)} is not a root of {C.name}")
    p = pairing(C, x, cor, kind)
    if kind == "root":
        return tuple(xi - p * bi for xi, bi in zip(x, beta))
    bw = root_to_weight(C, beta)
    return tuple(xi - p * bi for xi, bi in zip(x, bw))


def s_root(C, i, r):
    """Simple reflection s_i (0-based i) on a root-coordinate vector."""
    row = C.cartan[i]
    p = 0
    for j, t in enumerate(r):
        if t:
            p += row[j] * t
    if not p:
        return r
    r = list(r)
    r[i] -= p
    return tuple(r)


def s_weight(C, i, mu):
    """Simple reflection s_i (0-based i) on a weight-coordinate vector."""
    m = mu[i]
    if not m:
        return mu
    a = C.cartan
    return tuple(mu[k] - m * a[k][i] for k in range(len(mu)))


def _format(vec, sym):
    parts = []
    for i, c in enumerate(vec):
        if c == 0:
            continue
        mono = f"{sym}{i + 1}"
        if c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}{mono}"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def format_root(r):
    return _format(r, "a")


def format_weight(mu):
    return _format(mu, "w")


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*([a-zA-Z]+)\s*(\d+)")


def _parse_linear(s, n, syms):
    s = s.strip().replace(" ", "")
    if s in ("", "0"):
        return (0,) * n
    if re.fullmatch(r"-?\d+(,-?\d+)*", s):
        v = tuple(int(t) for t in s.split(","))
        if len(v) != n:
            raise ParseError(f"expected {n} coordinates in {s!r}")
        return v
    v = [0] * n
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos or m.group(3).lower() not in syms:
            raise ParseError(f"cannot parse {s!r}")
        pos = m.end()
        i = int(m.group(4))
        if not 1 <= i <= n:
            raise ParseError(f"index {i} out of range in {s!r}")
        c = int(m.group(2)) if m.group(2) else 1
        v[i - 1] += -c if m.group(1) == "-" else c
    if pos != len(s):
        raise ParseError(f"cannot parse {s!r}")
    return tuple(v)


def parse_weight(s, n):
    """Parse "w1+3w2" or "1,0,1" into fundamental-weight coordinates."""
    return _parse_linear(s, n, ("w", "varpi", "omega"))


def parse_root(s, n):
    return _parse_linear(s, n, ("a", "alpha"))
