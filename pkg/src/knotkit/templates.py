"""Parametric quotient-link family templates.

A template is data: a tangle expression with parametric twist boxes and at
most one filling slot, an affine slope map from surgery slopes to filling
fractions, and a checkpoint list.  Templates live in text files (one per
family) under ``data/templates`` and are only trusted once
``validate_template`` has passed every checkpoint; the sweep driver refuses
unvalidated templates.

Expression DSL (prefix, s-expressions), e.g.::

    (N (hsum (R 2/3) (vtw q (R 1/0)) (slot)))

Leaves: ``(R p/q)``; ``(slot)``.  Operators: ``hsum``, ``vstack``, ``rot``,
``mir``, ``(htw <count> e)``, ``(vtw <count> e)``, ``N``, ``D``.  Twist
counts and checkpoint payloads may be affine expressions in the parameters,
like ``2*q+1`` or ``2/(2*q-5)``.

Slope map: ``fill`` computes r' = c_alpha * alpha + c0 + sum_i c_i * p_i and
inserts R(-r') into the slot, following the branched-cover convention that
r/s filling downstairs is -r/s surgery upstairs.  Checkpoints record the
*filling* fraction r = -r' (the quantity the identities are stated in).
"""

from __future__ import annotations

import os
import re

from .diagram import Diagram
from .rationals import Frac, parse_frac
from . import tangle as tg
from .polyinv import determinant, jones
from .khov import khovanov
from .classify import InvariantRecord, battery_match, DEFAULT_CAPS
from .tangle import montesinos_link, two_bridge
from .sfs import SeifertDescriptor, parse_descriptor, h1_order, normalize


class TemplateError(ValueError):
    pass


# -- tiny affine expression evaluator ------------------------------------------


def affine_eval(expr: str, params: dict) -> int:
    """Evaluate an affine integer expression like '4*q+7' or '-m'."""
    total = 0
    expr = expr.replace(" ", "")
    if not expr:
        raise TemplateError("empty affine expression")
    for term in re.findall(r"[+-]?[^+-]+", expr):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        if "*" in term:
            coeff, sym = term.split("*")
            total += sign * int(coeff) * _param(params, sym)
        elif term.isdigit():
            total += sign * int(term)
        else:
            total += sign * _param(params, term)
    return total


def _param(params, sym):
    if sym not in params:
        raise TemplateError("unbound parameter %r" % sym)
    return int(params[sym])


def frac_eval(expr: str, params: dict) -> Frac:
    """Evaluate 'num/den' with affine parts, e.g. '2/(2*q-5)' or '-1'."""
    expr = expr.strip()
    m = re.fullmatch(r"([^/]+)(?:/(.+))?", expr)
    if not m:
        raise TemplateError("cannot parse fraction %r" % expr)
    num = affine_eval(m.group(1).strip("()"), params)
    den = affine_eval(m.group(2).strip("()"), params) if m.group(2) else 1
    return Frac(num, den)


# -- expression trees ------------------------------------------------------------


def parse_sexpr(text: str):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise TemplateError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            out = []
            while tokens[pos] != ")":
                out.append(read())
            pos += 1
            return tuple(out)
        if tok == ")":
            raise TemplateError("unbalanced )")
        return tok

    expr = read()
    if pos != len(tokens):
        raise TemplateError("trailing tokens in expression")
    return expr


def print_sexpr(expr) -> str:
    if isinstance(expr, tuple):
        return "(" + " ".join(print_sexpr(e) for e in expr) + ")"
    return str(expr)


def count_slots(expr) -> int:
    if not isinstance(expr, tuple):
        return 0
    if expr[0] == "slot":
        return 1
    return sum(count_slots(e) for e in expr[1:])


def eval_expr(expr, params: dict, fill_frac=None):
    """Evaluate a parsed expression to a Tangle or (after N/D) a Diagram."""
    op = expr[0]
    if op == "R":
        return tg.rational_tangle(frac_eval(expr[1], params))
    if op == "slot":
        if fill_frac is None:
            raise TemplateError("expression has an unfilled slot")
        return tg.rational_tangle(fill_frac)
    if op == "htw":
        return tg.twist_east(eval_expr(expr[2], params, fill_frac),
                             affine_eval(expr[1], params))
    if op == "vtw":
        return tg.twist_south(eval_expr(expr[2], params, fill_frac),
                              affine_eval(expr[1], params))
    if op == "rot":
        return tg.rot90(eval_expr(expr[1], params, fill_frac))
    if op == "mir":
        return tg.tangle_mirror(eval_expr(expr[1], params, fill_frac))
    if op == "hsum":
        t = eval_expr(expr[1], params, fill_frac)
        for e in expr[2:]:
            t = tg.hsum(t, eval_expr(e, params, fill_frac))
        return t
    if op == "vstack":
        t = eval_expr(expr[1], params, fill_frac)
        for e in expr[2:]:
            t = tg.vstack(t, eval_expr(e, params, fill_frac))
        return t
    if op == "N":
        return tg.numerator_closure(eval_expr(expr[1], params, fill_frac))
    if op == "D":
        return tg.denominator_closure(eval_expr(expr[1], params, fill_frac))
    raise TemplateError("unknown operator %r" % (op,))


# -- checkpoints and templates -----------------------------------------------------


class Checkpoint:
    """An identity the filled template must satisfy at one filling slope."""

    def __init__(self, filling: str, kind: str, payload: str):
        self.filling = filling  # fraction expression in the parameters
        self.kind = kind  # montesinos | twobridge | unknot | det | sfs | splitsum
        self.payload = payload

    def __repr__(self):
        return "Checkpoint(%s @ %s: %s)" % (self.kind, self.filling, self.payload)


class FamilyTemplate:
    def __init__(self, name, params, expr, slope_coeffs, window, checkpoints,
                 det_law=None, notes=()):
        self.name = name
        self.params = params  # list of (symbol, lo, hi)
        self.expr = expr
        # slope map r' = c_alpha*alpha + c0 + sum c_sym*sym; fill inserts R(-r')
        self.slope_coeffs = slope_coeffs  # (c_alpha, expr-string for the rest)
        self.window = window  # (lo, hi) in paper filling coordinates r = -r'
        self.checkpoints = checkpoints
        self.det_law = det_law  # None or an affine expr: det == |that|
        self.notes = tuple(notes)
        if count_slots(expr) > 1:
            raise TemplateError("template %s has more than one slot" % name)

    def param_names(self):
        return [s for (s, _lo, _hi) in self.params]

    def param_box(self):
        import itertools

        names = self.param_names()
        ranges = [range(lo, hi + 1) for (_s, lo, hi) in self.params]
        for combo in itertools.product(*ranges):
            yield dict(zip(names, combo))

    def slope_to_filling(self, alpha: Frac, params) -> Frac:
        """Paper filling fraction r = -r'(alpha)."""
        c_alpha, rest = self.slope_coeffs
        off = affine_eval(rest, params) if rest else 0
        num = -(c_alpha * alpha.num + off * alpha.den)
        return Frac(num, alpha.den)

    def filling_to_slope(self, r: Frac, params) -> Frac:
        c_alpha, rest = self.slope_coeffs
        off = affine_eval(rest, params) if rest else 0
        # r = -(c_alpha*alpha + off)  =>  alpha = (-r - off)/c_alpha
        num = -r.num - off * r.den
        if c_alpha == 1:
            return Frac(num, r.den)
        if c_alpha == -1:
            return Frac(-num, r.den)
        raise TemplateError("slope map coefficient must be +-1")

    def anchor_slope(self, params) -> Frac:
        """The surgery slope whose filling fraction is 0 (toroidal anchor)."""
        return self.filling_to_slope(Frac(0), params)

    def fill_at_filling(self, r: Frac, params) -> Diagram:
        d = eval_expr(self.expr, params, fill_frac=r)
        if not isinstance(d, Diagram):
            raise TemplateError("template expression must end in a closure")
        return d

    def fill(self, alpha: Frac, params) -> Diagram:
        """Diagram whose double branched cover is the alpha-surgery."""
        return self.fill_at_filling(self.slope_to_filling(alpha, params), params)


# -- template file parsing -----------------------------------------------------------


def parse_template(text: str) -> FamilyTemplate:
    name = None
    params = []
    expr = None
    slope = None
    window = None
    checkpoints = []
    det_law = None
    notes = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "template":
            name = rest
        elif head == "param":
            sym, lo, hi = rest.split()
            params.append((sym, int(lo), int(hi)))
        elif head == "expr":
            expr = parse_sexpr(rest)
        elif head == "slopemap":
            c_alpha, _, off = rest.partition(" ")
            slope = (int(c_alpha), off.strip())
        elif head == "window":
            lo, hi = rest.split()
            window = (int(lo), int(hi))
        elif head == "detlaw":
            det_law = rest
        elif head == "checkpoint":
            filling, kind, _, payload = rest.split(None, 2)[0], rest.split(None, 2)[1], None, \
                (rest.split(None, 2)[2] if len(rest.split(None, 2)) > 2 else "")
            checkpoints.append(Checkpoint(filling, kind, payload))
        elif head == "note":
            notes.append(rest)
        else:
            raise TemplateError("unknown template directive %r" % head)
    if name is None or expr is None or slope is None:
        raise TemplateError("template needs name, expr and slopemap")
    if window is None:
        window = (-8, 8)
    return FamilyTemplate(name, params, expr, slope, window, checkpoints, det_law, notes)


def load_template(path) -> FamilyTemplate:
    with open(path) as fh:
        return parse_template(fh.read())


def load_templates(directory):
    out = []
    for fn in sorted(os.listdir(directory)):
        if fn.endswith(".tmpl"):
            out.append(load_template(os.path.join(directory, fn)))
    return out


def builtin_template_dir():
    return os.path.join(os.path.dirname(__file__), "data", "templates")


# -- validation ------------------------------------------------------------------


def _check_one(tmpl: FamilyTemplate, cp: Checkpoint, params, caps) -> tuple:
    r = frac_eval(cp.filling, params)
    d = tmpl.fill_at_filling(r, params)
    rec = InvariantRecord(d, caps)
    if cp.kind == "det":
        want = abs(affine_eval(cp.payload, params))
        got = rec.det
        return got == want, "det=%d (want %d)" % (got, want)
    if cp.kind == "unknot":
        ok = rec.det == 1 and rec.jones == jones(Diagram([], [], 1)) \
            and rec.kh == khovanov(Diagram([], [], 1))
        return ok, "unknot battery" if ok else "not unknot-trivial"
    if cp.kind == "montesinos":
        b_str, _, fr_str = cp.payload.partition(";")
        b = affine_eval(b_str, params)
        fracs = [frac_eval(f, params) for f in fr_str.split(",")]
        cand = InvariantRecord(montesinos_link(b, fracs), caps)
        ok, disc = battery_match(rec, cand, "kh")
        return ok, ("matches K[%s]" % cp.payload) if ok else ("differs at %s" % disc)
    if cp.kind == "twobridge":
        f = frac_eval(cp.payload, params)
        cand = InvariantRecord(two_bridge(f), caps)
        ok, disc = battery_match(rec, cand, "kh")
        return ok, ("matches 2-bridge %r" % f) if ok else ("differs at %s" % disc)
    if cp.kind == "sfs":
        desc = parse_descriptor(cp.payload)
        want = h1_order(desc)
        ok = rec.det == want
        return ok, "det %d vs |H1|=%d of %s" % (rec.det, want, cp.payload)
    raise TemplateError("unknown checkpoint kind %r" % cp.kind)


def validate_template(tmpl: FamilyTemplate, caps=DEFAULT_CAPS, det_window=None):
    """Run every checkpoint over the whole parameter box; returns a report.

    report: list of (param dict, description, passed, detail).  The template
    passes iff every entry passed.
    """
    report = []
    for params in tmpl.param_box():
        for cp in tmpl.checkpoints:
            try:
                ok, detail = _check_one(tmpl, cp, params, caps)
            except Exception as exc:
                ok, detail = False, "error: %s" % exc
            report.append((dict(params), repr(cp), ok, detail))
        if tmpl.det_law is not None:
            lo, hi = det_window if det_window is not None else tmpl.window
            for r in range(lo, hi + 1):
                want = abs(affine_eval(tmpl.det_law, dict(params, r=r)))
                try:
                    got = determinant(tmpl.fill_at_filling(Frac(r), params))
                    ok = got == want
                    detail = "det(r=%d)=%d want %d" % (r, got, want)
                except Exception as exc:
                    ok, detail = False, "error at r=%d: %s" % (r, exc)
                report.append((dict(params), "detlaw", ok, detail))
    return report


def template_passes(report) -> bool:
    return all(ok for (_p, _c, ok, _d) in report)
