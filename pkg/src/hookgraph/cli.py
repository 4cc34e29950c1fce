"""Command-line entry point.

Every command prints a deterministic report.  JSON output has the shape
``{"command": ..., "spec": {...}, "result": {...}}`` and validates against
``schemas/output.schema.json`` shipped inside the package.

Exit codes: 0 ok, 2 parse or job-spec error, 3 precondition violated,
4 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial, prod
from pathlib import Path

from .errors import HookgraphError, ParseError, PreconditionError
from .heaps import (
    excited_diagrams,
    filter_of,
    heap_of_word,
    heap_to_dot,
    is_dominant_minuscule,
    skew_red_count,
)
from .lgraph import (
    build_lgraph,
    constant_admissible,
    custom_admissible,
    export_dot,
    graph_to_dict,
    hook_product,
    path_sum,
    standard_admissible,
)
from .localize import (
    SmlrSolver,
    beta_sequence,
    billey_loc,
    billey_subwords,
    check_smlr_localization,
    eq_mult_richardson,
    kumar_smooth,
    phi_evaluate,
    prod_roots,
    sm_cell_loc,
    sm_variety_loc,
)
from .rootsys import format_weight, parse_type, parse_weight
from .symfrac import Poly, format_ff, format_poly
from .weyl import (
    WeylElt,
    all_min_reps,
    bruhat_leq,
    count_reduced_words,
    is_min_rep,
    is_pi_minuscule,
    multiply,
    parse_parabolic,
    parse_word,
    stabilizer_set,
    word_label,
)

COMMANDS = ("graph", "verify", "billey", "smloc", "eqmult", "smlr", "heap", "redcount")
FORMATS = ("text", "json", "dot")
ORACLE_MAX_LEN = 12


@dataclass
class JobSpec:
    command: str
    type: str
    p: list = field(default_factory=list)
    v: list = field(default_factory=list)
    w: list = field(default_factory=list)
    lam: str = "standard"
    fmt: str = "text"

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text) if isinstance(text, str) else dict(text)
        return cls(d["command"], d["type"], list(d["p"]), list(d["v"]), list(d["w"]), d["lam"], d["fmt"])

    def validate(self):
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise ParseError(f"unknown format {self.fmt!r}")
        C = parse_type(self.type)
        parse_parabolic(self.p, C)
        parse_word(self.v, C)
        parse_word(self.w, C)
        kind = self.lam.split(":", 1)[0]
        if kind not in ("standard", "constant", "table"):
            raise ParseError(f"bad lambda spec {self.lam!r}")
        return C


# -- helpers ------------------------------------------------------------------------

def _elt(x):
    return {"word": list(x.word), "label": word_label(x.word)}


def _poly(p):
    return {"str": format_poly(p), "terms": p.to_json()}


def _ff(f):
    return {"str": format_ff(f), "data": f.to_json()}


def _frac(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _load_table(path, C):
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise ParseError(f"cannot read lambda table {path}: {e}") from e
    items = raw.items() if isinstance(raw, dict) else ((r["word"], r["lambda"]) for r in raw)
    table = {}
    for key, val in items:
        x = WeylElt.from_word(C, parse_word(key, C))
        lam = tuple(val) if isinstance(val, list) else parse_weight(str(val), C.rank)
        if len(lam) != C.rank:
            raise ParseError(f"weight for {key!r} has length {len(lam)}, expected {C.rank}")
        table[x] = lam
    return table


def make_lambda(spec, v, w, P):
    C = w.C
    kind, _, arg = spec.partition(":")
    if kind == "standard":
        return standard_admissible(v, w, P)
    if kind == "constant":
        if not arg:
            raise ParseError("constant lambda needs a weight, e.g. constant:w2")
        return constant_admissible(parse_weight(arg, C.rank), v, w, P)
    if kind == "table":
        return custom_admissible(_load_table(arg, C), v, w, P)
    raise ParseError(f"bad lambda spec {spec!r}")


def _infer_pi(C, w, given):
    """Use --pi when given, else the colours of the maximal heap elements of w."""
    if given:
        pi = parse_weight(given, C.rank)
    else:
        h = heap_of_word(C, w.word)
        pi = [0] * C.rank
        for p in h.maximal():
            pi[h.color(p) - 1] = 1
        pi = tuple(pi)
    if not is_pi_minuscule(w, pi):
        raise PreconditionError(f"{w} is not {format_weight(pi)}-minuscule")
    return pi


# -- commands -------------------------------------------------------------------------

def _identity_report(g, v, w, P):
    lhs = path_sum(g).total
    rhs = hook_product(v, w, P)
    kum = kumar_smooth(v, w, P)
    equal = lhs == rhs
    return {
        "lhs": _ff(lhs),
        "rhs": _ff(rhs),
        "equal": equal,
        "verdict": "smooth" if equal else "singular",
        "kumar": kum.smooth,
        "agree": equal == kum.smooth,
    }, lhs


def cmd_graph(ns, C, P, v, w):
    g = build_lgraph(v, w, P, make_lambda(ns.lam, v, w, P), include_zero=ns.include_zero)
    ident, _ = _identity_report(g, v, w, P)
    d = graph_to_dict(g)
    result = {"vertices": d["vertices"], "edges": d["edges"], "lambda": g.lam.describe(), **ident}
    lines = [f"interval [{v}, {w}]^P  P={{{','.join(map(str, sorted(P)))}}}  lambda={g.lam.describe()}"]
    lines.append(f"{len(g.vertices)} vertices, {len(g.edges)} edges")
    for x in d["vertices"]:
        lines.append(f"  W({x['label']}) = {x['weight_str']}")
    for e in g.edges:
        lines.append(f"  {e.src} -> {e.dst}  m={e.mult}")
    lines += [f"lhs: {ident['lhs']['str']}", f"rhs: {ident['rhs']['str']}", f"verdict: {ident['verdict']}"]
    return result, "\n".join(lines), export_dot(g)


def _verify_one(ns, v, w, P):
    g = build_lgraph(v, w, P, make_lambda(ns.lam, v, w, P))
    rep, lhs = _identity_report(g, v, w, P)
    if ns.oracle:
        rep["eqmult_equal"] = lhs == eq_mult_richardson(v, w, P)
    return rep


def cmd_verify(ns, C, P, v, w):
    if ns.batch is None:
        rep = _verify_one(ns, v, w, P)
        lines = [
            f"lhs: {rep['lhs']['str']}",
            f"rhs: {rep['rhs']['str']}",
            f"equal: {str(rep['equal']).lower()}",
            f"verdict: {rep['verdict']}",
            f"kumar: {'smooth' if rep['kumar'] else 'singular'}",
        ]
        if "eqmult_equal" in rep:
            lines.append(f"path sum = equivariant multiplicity: {str(rep['eqmult_equal']).lower()}")
        return rep, "\n".join(lines), None
    if ns.lam.startswith("table"):
        raise ParseError("--batch needs a standard or constant lambda")
    reps = sorted(all_min_reps(C, P))
    rows = []
    for w2 in reps:
        for v2 in reps:
            if v2 != w2 and bruhat_leq(v2, w2):
                r = _verify_one(ns, v2, w2, P)
                row = {"v": _elt(v2), "w": _elt(w2), "equal": r["equal"], "kumar": r["kumar"], "agree": r["agree"]}
                if "eqmult_equal" in r:
                    row["eqmult_equal"] = r["eqmult_equal"]
                rows.append(row)
    ok = all(r["agree"] and r.get("eqmult_equal", True) for r in rows)
    result = {"pairs": rows, "count": len(rows), "smooth": sum(r["equal"] for r in rows), "all_agree": ok}
    lines = [f"{'v':>14} {'w':>20}  hook    kumar"]
    for r in rows:
        lines.append(
            f"{r['v']['label']:>14} {r['w']['label']:>20}  {'smooth  ' if r['equal'] else 'singular'} "
            f"{'smooth' if r['kumar'] else 'singular'}"
        )
    lines.append(f"{len(rows)} pairs, {result['smooth']} smooth, all agree: {str(ok).lower()}")
    return result, "\n".join(lines), None


def cmd_billey(ns, C, P, v, w):
    p = billey_loc(v, w, P)
    ws = kumar_smooth(v, w, P)
    result = {"billey": _poly(p), "normal_product": _poly(ws.rhs), "smooth": ws.smooth}
    lines = [f"[Y({v})]|_{w} = {format_poly(p)}", f"product of normal weights = {format_poly(ws.rhs)}"]
    if ns.oracle:
        betas = beta_sequence(w).betas
        brute = Poly(C.rank)
        for idx in billey_subwords(v, w):
            brute = brute + prod_roots(C.rank, [betas[j] for j in idx])
        result["oracle_equal"] = brute == p
        lines.append(f"subword enumeration agrees: {str(brute == p).lower()}")
    return result, "\n".join(lines), None


def cmd_smloc(ns, C, P, v, w):
    cell = sm_cell_loc(v, w, P)
    var = sm_variety_loc(v, w, P)
    result = {"cell": _ff(cell), "variety": _ff(var)}
    lines = [f"s_M(Y({v})°)|_{w} = {format_ff(cell)}", f"s_M(Y({v}))|_{w} = {format_ff(var)}"]
    return result, "\n".join(lines), None


def cmd_eqmult(ns, C, P, v, w):
    e = eq_mult_richardson(v, w, P)
    result = {"eqmult": _ff(e)}
    lines = [f"e_{w}[Y({v})] = {format_ff(e)}"]
    if ns.oracle:
        total = path_sum(build_lgraph(v, w, P, make_lambda(ns.lam, v, w, P))).total
        result["path_sum_equal"] = total == e
        lines.append(f"path sum agrees: {str(total == e).lower()}")
    return result, "\n".join(lines), None


def cmd_smlr(ns, C, P, v, w):
    if ns.u is not None:
        u = WeylElt.from_word(C, parse_word(ns.u, C))
        for x in (u, v, w):
            if not is_min_rep(x, P):
                raise PreconditionError(f"{x} is not a minimal coset representative")
        d = SmlrSolver(C, P).d(u, v, w)
        result = {"u": _elt(u), "v": _elt(v), "w": _elt(w), "d": _ff(d)}
        return result, f"d^{w}_{{{u},{v}}} = {format_ff(d)}", None
    elements = sorted(all_min_reps(C, P))
    solver = SmlrSolver(C, P)
    table = {(a, b, c): solver.d(a, b, c) for a in elements for b in elements for c in elements}
    bad = check_smlr_localization(table, elements, P)
    entries = [
        {"u": _elt(a), "v": _elt(b), "w": _elt(c), "d": format_ff(val)}
        for (a, b, c), val in table.items()
        if not val.is_zero()
    ]
    result = {"entries": entries, "size": len(table), "verified": not bad}
    if ns.oracle:
        other = SmlrSolver(C, P, offset=1)
        result["lambda_invariant"] = all(other.d(a, b, c) == val for (a, b, c), val in table.items())
    lines = [f"d^{e['w']['label']}_{{{e['u']['label']},{e['v']['label']}}} = {e['d']}" for e in entries]
    lines.append(f"{len(table)} coefficients, localization identity holds: {str(not bad).lower()}")
    if "lambda_invariant" in result:
        lines.append(f"independent of lambda: {str(result['lambda_invariant']).lower()}")
    return result, "\n".join(lines), None


def cmd_heap(ns, C, P, v, w):
    h = heap_of_word(C, w.word)
    dm = is_dominant_minuscule(C, w.word)
    result = {
        "word": list(w.word),
        "elements": [{"index": p + 1, "color": h.color(p)} for p in range(len(h))],
        "covers": [[j + 1, k + 1] for j, k in h.covers],
        "maximal": [p + 1 for p in h.maximal()],
        "dominant_minuscule": dm.ok,
        "pi_prime": list(dm.pi) if dm.pi is not None else None,
    }
    lines = [f"heap of {word_label(w.word)}: {len(h)} elements, {len(h.covers)} covers"]
    lines.append("covers: " + " ".join(f"p{j + 1}<p{k + 1}" for j, k in h.covers))
    lines.append(f"dominant minuscule: {str(dm.ok).lower()}" + (f" (pi' = {format_weight(dm.pi)})" if dm.ok else ""))
    F = ()
    if ns.filter is not None:
        fv = WeylElt.from_word(C, parse_word(ns.filter, C))
        pi = _infer_pi(C, w, ns.pi)
        F = filter_of(fv, w, pi, h)
        E = sorted((sorted(D) for D in excited_diagrams(F, h)))
        result["filter"] = [p + 1 for p in sorted(F)]
        result["excited_count"] = len(E)
        lines.append(f"filter: {' '.join(f'p{p + 1}' for p in sorted(F))}")
        lines.append(f"excited diagrams: {len(E)}")
        if ns.list_excited:
            result["excited"] = [[p + 1 for p in D] for D in E]
            for D in E:
                lines.append("  {" + ", ".join(f"p{p + 1}" for p in D) + "}")
        if ns.oracle and C.simply_laced:
            other = phi_evaluate(billey_loc(fv, w, stabilizer_set(pi)), w, pi)
            result["oracle_equal"] = other == len(E)
            lines.append(f"phi(billey) = {other}")
    return result, "\n".join(lines), heap_to_dot(h, F)


def cmd_redcount(ns, C, P, v, w):
    pi = _infer_pi(C, w, ns.pi)
    if not bruhat_leq(v, w):
        raise PreconditionError(f"{v} is not below {w}")
    s = skew_red_count(v, w, pi)
    wv = multiply(w, v.inverse())
    result = {"element": _elt(wv), "pi": list(pi), "skew_formula": s.value, "diagrams": s.diagrams}
    noun = "diagram" if s.diagrams == 1 else "diagrams"
    lines = [f"#Red({wv}) by the excited-diagram sum: {s.value} ({s.diagrams} {noun})"]
    dm = is_dominant_minuscule(C, wv.word)
    if dm.ok and wv.length:
        hts = [sum(b) for b in beta_sequence(wv).betas]
        peterson = Fraction(factorial(wv.length), prod(hts))
        result["hook_formula"] = _frac(peterson)
        lines.append(f"#Red({wv}) by the hook-length formula: {_frac(peterson)}")
    if wv.length <= ORACLE_MAX_LEN or ns.oracle:
        result["oracle"] = count_reduced_words(wv)
        lines.append(f"#Red({wv}) by direct count: {result['oracle']}")
    return result, "\n".join(lines), None


HANDLERS = {
    "graph": cmd_graph,
    "verify": cmd_verify,
    "billey": cmd_billey,
    "smloc": cmd_smloc,
    "eqmult": cmd_eqmult,
    "smlr": cmd_smlr,
    "heap": cmd_heap,
    "redcount": cmd_redcount,
}


# -- argument parsing -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    ap = _Parser(prog="hookgraph", description="Lambda-Bruhat graphs, localizations and heaps.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--type", help="root system, e.g. B3 (heap: defaults to A_n, n the largest letter)")
        sp.add_argument("--p", default="", help="included simple roots of P, e.g. 1,3")
        sp.add_argument("--v", default="", help="word of v, e.g. \"2 1\"")
        sp.add_argument("--w", default="", help="word of w")
        sp.add_argument("--lambda", dest="lam", default="standard", help="standard | constant:<weight> | table:<file>")
        sp.add_argument("--format", dest="fmt", default="text", choices=FORMATS)
        sp.add_argument("--oracle", action="store_true", help="run brute-force cross-checks")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--dot", help="also write DOT to this file")
        if name == "verify":
            sp.add_argument("--batch", nargs="?", const="", default=None, metavar="TYPE")
        if name == "graph":
            sp.add_argument("--include-zero", action="store_true")
        if name == "smlr":
            sp.add_argument("--u", help="word of u; omit for the full table")
        if name in ("heap", "redcount"):
            sp.add_argument("--pi", help="dominant weight, e.g. w2+w7")
        if name == "heap":
            sp.add_argument("--word", help="alias of --w")
            sp.add_argument("--filter", help="word of v")
            sp.add_argument("--list-excited", action="store_true")
    return ap


def _resolve(ns):
    if getattr(ns, "word", None):
        ns.w = ns.word
    if getattr(ns, "batch", None):
        ns.type = ns.batch
    if ns.type is None:
        if ns.command != "heap":
            raise ParseError("--type is required")
        letters = parse_word(ns.w)
        ns.type = f"A{max(letters, default=1)}"
    spec = JobSpec(ns.command, ns.type, sorted(parse_parabolic(ns.p)), list(parse_word(ns.v)), list(parse_word(ns.w)), ns.lam, ns.fmt)
    C = spec.validate()
    if ns.fmt == "dot" and ns.command not in ("graph", "heap"):
        raise ParseError(f"--format dot is not available for {ns.command}")
    return spec, C


def run(argv):
    """Run one command; returns (exit code, stdout text, stderr text)."""
    try:
        ns = build_parser().parse_args(argv)
        spec, C = _resolve(ns)
        P = frozenset(spec.p)
        v = WeylElt.from_word(C, spec.v)
        w = WeylElt.from_word(C, spec.w)
        result, text, dot = HANDLERS[spec.command](ns, C, P, v, w)
    except HookgraphError as e:
        return e.exit_code, "", f"error: {e}\n"
    if ns.fmt == "json":
        out = json.dumps({"command": spec.command, "spec": json.loads(spec.to_json()), "result": result}, indent=2, sort_keys=True) + "\n"
    elif ns.fmt == "dot":
        out = dot
    else:
        out = text + "\n"
    if ns.dot and dot is not None:
        Path(ns.dot).write_text(dot)
    if ns.out:
        Path(ns.out).write_text(out)
        out = ""
    return 0, out, ""


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
