"""File formats: ideal text and JSON, poset JSON and DOT, report JSON
and CSV.

The ideal text format is the interchange surface with external computer
algebra systems: first line `vars: π, a0_1, ...`, then one polynomial
per line in fully expanded form with explicit `*` and `^`.  Rendering is
canonical (terms sorted degree-reverse-lexicographically, descending),
so equal polynomials always produce equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

from .charts import PolyIdealSpec
from .errors import DomainError
from .polynomials import QQ, Poly, _drl_key, int_polys_from

REPORT_FIELDS = (
    "ideal",
    "field",
    "flat",
    "dim_special",
    "dim_generic",
    "radical_cert",
    "wall_ms",
    "affine_dim",
    "dim_chart_special",
    "dim_chart_generic",
    "expected_dim",
    "status",
)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        n, d = abs(c.numerator), c.denominator
        return f"{n}/{d}"
    return str(abs(int(c)))


def _coeff_is_one(c) -> bool:
    return c == 1 or c == -1


def render_polynomial(poly, variables) -> str:
    """Canonical expanded form; `poly` is a Poly or a frozen term tuple."""
    terms = poly.terms if isinstance(poly, Poly) else dict(poly)
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda t: _drl_key(t[0]), reverse=True)
    parts = []
    for e, c in items:
        mono = "*".join(
            v if x == 1 else f"{v}^{x}" for v, x in zip(variables, e) if x > 0
        )
        if not mono:
            body = _coeff_str(c)
        elif _coeff_is_one(c):
            body = mono
        else:
            body = f"{_coeff_str(c)}*{mono}"
        neg = c < 0
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def render_ideal_text(variables, generators) -> str:
    lines = ["vars: " + ", ".join(variables)]
    lines.extend(render_polynomial(g, variables) for g in generators)
    return "\n".join(lines) + "\n"


def ideal_to_text(spec: PolyIdealSpec) -> str:
    return render_ideal_text(spec.variables, spec.generators)


def ideal_to_json(spec: PolyIdealSpec) -> str:
    doc = {
        "vars": list(spec.variables),
        "gens": [render_polynomial(g, spec.variables) for g in spec.generators],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


_TOKEN = re.compile(r"\s*(\d+(?:/\d+)?|[+\-*^()]|[^\s+\-*^()]+)")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        out.append(m.group(1))
        pos = m.end()
    if text[pos:].strip():
        raise DomainError(f"cannot tokenize {text[pos:]!r}")
    return out


class _Parser:
    """expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := atom ['^' int]; atom := number | name | '(' expr ')'."""

    def __init__(self, tokens: list[str], names: dict[str, int], nvars: int):
        self.toks = tokens
        self.i = 0
        self.names = names
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise DomainError("unexpected end of polynomial")
        self.i += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        elif self.peek() == "+":
            self.take()
        acc = self.term().scale(QQ.from_int(sign))
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise DomainError(f"exponent must be an integer, got {tok!r}")
            return base ** int(tok)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise DomainError("unbalanced parentheses")
            return inner
        if re.fullmatch(r"\d+(?:/\d+)?", tok):
            return Poly.const(QQ, self.nvars, Fraction(tok))
        idx = self.names.get(tok)
        if idx is None:
            raise DomainError(f"undeclared variable {tok!r}")
        return Poly.variable(QQ, self.nvars, idx)


def parse_polynomial(text: str, variables) -> Poly:
    names = {v: i for i, v in enumerate(variables)}
    parser = _Parser(_tokenize(text), names, len(variables))
    p = parser.expr()
    if parser.peek() is not None:
        raise DomainError(f"trailing input {parser.peek()!r}")
    return p


def parse_ideal_text(text: str) -> PolyIdealSpec:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("vars:"):
        raise DomainError("ideal file must start with a vars: line")
    variables = tuple(v.strip() for v in lines[0][len("vars:"):].split(",") if v.strip())
    if not variables:
        raise DomainError("empty variable list")
    polys = [parse_polynomial(ln, variables) for ln in lines[1:]]
    gens = tuple(int_polys_from(polys))
    return PolyIdealSpec(variables, gens, raw_count=len(gens))


def ideal_from_json(text: str) -> PolyIdealSpec:
    doc = json.loads(text)
    variables = tuple(doc["vars"])
    polys = [parse_polynomial(g, variables) for g in doc["gens"]]
    gens = tuple(int_polys_from(polys))
    return PolyIdealSpec(variables, gens, raw_count=len(gens))


def poset_to_dict(poset) -> dict:
    from .alcoves import profile_of

    return {
        "n": poset.n,
        "r": poset.r,
        "nodes": [
            {
                "id": i,
                "profile": [list(row) for row in profile_of(a).rows],
                "length": l,
            }
            for i, (a, l) in enumerate(poset.nodes)
        ],
        "covers": sorted([lo, hi] for lo, hi in poset.covers),
        "bottom": poset.bottom,
        "tops": list(poset.tops),
    }


def poset_to_json(poset) -> str:
    return json.dumps(poset_to_dict(poset), ensure_ascii=False, indent=2) + "\n"


def poset_to_dot(poset) -> str:
    lines = ["digraph strata {", "  rankdir=BT;"]
    for i, (_, l) in enumerate(poset.nodes):
        lines.append(f'  n{i} [label="l={l}"];')
    for lo, hi in sorted(poset.covers):
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def alcoves_to_dict(n: int, r: int, alcoves, lengths) -> dict:
    from .alcoves import profile_of

    return {
        "n": n,
        "r": r,
        "count": len(alcoves),
        "alcoves": [
            {
                "id": i,
                "rows": [list(row) for row in a.rows],
                "profile": [list(row) for row in profile_of(a).rows],
                "length": l,
            }
            for i, (a, l) in enumerate(zip(alcoves, lengths))
        ],
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def report_to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for chart in report["charts"]:
        writer.writerow({k: chart.get(k, "") for k in REPORT_FIELDS})
    return buf.getvalue()
