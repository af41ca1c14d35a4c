"""Deterministic exact Groebner engine.

Buchberger with the classical product and chain criteria and normal
pair selection (smallest lcm first).  Bases are interreduced, monic and
sorted, so the output is the canonical reduced basis of the ideal for
the given order; reruns are byte-reproducible.

Built on it: elimination, single ideal quotients (I : f) via the
auxiliary-variable intersection, equality of ideals by mutual normal
forms, pi-torsion flatness, specialization at pi = 0, combinatorial
Krull dimension of the initial ideal, and a sufficient squarefree
criterion certifying radicality.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .charts import PolyIdealSpec
from .errors import ComputationError, DomainError
from .polynomials import (
    DEGREVLEX,
    LEX,
    PI_NAME,
    FrozenPoly,
    MonomialOrder,
    Poly,
    QQ,
    elimination_order,
    int_polys_from,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)

MAX_DIMENSION_VARS = 24


@dataclass(frozen=True)
class GroebnerBasis:
    variables: tuple[str, ...]
    order: MonomialOrder
    field_tag: str
    elements: tuple[Poly, ...]

    def __len__(self):
        return len(self.elements)


def _reduce_term_inplace(pterms: dict, e, c, g: Poly, eg, dom) -> None:
    """pterms -= (c / lc(g)) * x^(e-eg) * g; cancels the term at e exactly."""
    shift = monomial_div(e, eg)
    factor = dom.mul(c, dom.inv(g.terms[eg]))
    zero = dom.zero
    for ge, gc in g.terms.items():
        te = tuple(a + b for a, b in zip(ge, shift))
        v = dom.sub(pterms.get(te, zero), dom.mul(factor, gc))
        if v == zero:
            pterms.pop(te, None)
        else:
            pterms[te] = v


def normal_form_poly(f: Poly, basis: list[Poly], order: MonomialOrder) -> Poly:
    """Fully reduce f modulo basis: no term of the result is divisible
    by any basis leading monomial."""
    dom = f.dom
    lead = [(g.leading(order)[0], g) for g in basis if not g.is_zero()]
    pterms = dict(f.terms)
    remainder: dict = {}
    key = order.key
    while pterms:
        e = max(pterms, key=key)
        c = pterms.pop(e)
        hit = None
        for eg, g in lead:
            if monomial_divides(eg, e):
                hit = (eg, g)
                break
        if hit is None:
            remainder[e] = c
        else:
            pterms[e] = c
            _reduce_term_inplace(pterms, e, c, hit[1], hit[0], dom)
    out = Poly(dom, f.nvars)
    out.terms = remainder
    return out


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    l = monomial_lcm(ef, eg)
    dom = f.dom
    return f.term_mul(dom.inv(cf), monomial_div(l, ef)) - g.term_mul(
        dom.inv(cg), monomial_div(l, eg)
    )


def buchberger_polys(gens: list[Poly], order: MonomialOrder) -> list[Poly]:
    """Reduced Groebner basis of the given polynomials, monic, sorted by
    ascending leading monomial.  Empty input gives an empty basis."""
    G: list[Poly] = []
    seen = set()
    for g in gens:
        if g.is_zero():
            continue
        g = g.monic(order)
        fz = g.freeze()
        if fz not in seen:
            seen.add(fz)
            G.append(g)
    if not G:
        return []
    dom = G[0].dom
    if not dom.is_field:
        raise DomainError("Groebner reduction needs field coefficients")
    lms = [g.leading(order)[0] for g in G]
    key = order.key
    pending: dict[tuple[int, int], tuple] = {}
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            pending[(i, j)] = key(monomial_lcm(lms[i], lms[j]))

    while pending:
        (i, j) = min(pending, key=lambda ij: (pending[ij], ij))
        del pending[(i, j)]
        lcm_ij = monomial_lcm(lms[i], lms[j])
        if lcm_ij == tuple(a + b for a, b in zip(lms[i], lms[j])):
            continue  # coprime leading monomials: S-poly reduces to 0
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not monomial_divides(lms[k], lcm_ij):
                continue
            p1 = (i, k) if i < k else (k, i)
            p2 = (j, k) if j < k else (k, j)
            if p1 not in pending and p2 not in pending:
                skip = True  # chain criterion: both companion pairs handled
                break
        if skip:
            continue
        r = normal_form_poly(s_polynomial(G[i], G[j], order), G, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        G.append(r)
        lms.append(r.leading(order)[0])
        t = len(G) - 1
        for a in range(t):
            pending[(a, t)] = key(monomial_lcm(lms[a], lms[t]))
    return _interreduce(G, order)


def _interreduce(G: list[Poly], order: MonomialOrder) -> list[Poly]:
    G = [g for g in G if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        out: list[Poly] = []
        for idx, g in enumerate(G):
            rest = out + G[idx + 1 :]
            r = normal_form_poly(g, rest, order) if rest else g
            if r.is_zero():
                changed = True
                continue
            r = r.monic(order)
            if r != g:
                changed = True
            out.append(r)
        G = out
    return sorted(G, key=lambda p: order.key(p.leading(order)[0]))


def _materialize(spec: PolyIdealSpec, field) -> list[Poly]:
    nv = len(spec.variables)
    return [Poly.from_frozen(g, field, nv) for g in spec.generators]


def buchberger(spec: PolyIdealSpec, order: MonomialOrder = DEGREVLEX, field=QQ) -> GroebnerBasis:
    if not field.is_field:
        raise DomainError("coefficient domain must be a field")
    basis = buchberger_polys(_materialize(spec, field), order)
    return GroebnerBasis(spec.variables, order, field.tag, tuple(basis))


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    if f.nvars != len(G.variables):
        raise DomainError("arity mismatch between polynomial and basis")
    return normal_form_poly(f, list(G.elements), G.order)


def basis_contains(G: GroebnerBasis, f: Poly) -> bool:
    return normal_form(f, G).is_zero()


def is_unit_basis(G: GroebnerBasis) -> bool:
    return any(g.is_constant() and not g.is_zero() for g in G.elements)


def eliminate(G: GroebnerBasis, k: int) -> list[Poly]:
    """Generators of the elimination ideal killing the first k variables,
    re-indexed to the remaining variables.  G must come from an order
    that eliminates those variables (block of size k, or lex)."""
    if not (0 < k < len(G.variables)):
        raise DomainError("elimination block out of range")
    if not (G.order.kind == "lex" or (G.order.kind == "block" and G.order.block == k)):
        raise DomainError("basis order does not eliminate the first variables")
    dom = None
    out = []
    for g in G.elements:
        if all(all(x == 0 for x in e[:k]) for e in g.terms):
            dom = g.dom
            p = Poly(dom, len(G.variables) - k)
            p.terms = {e[k:]: c for e, c in g.terms.items()}
            out.append(p)
    return out


def _exact_divide(h: Poly, f: Poly, order: MonomialOrder) -> Poly:
    """h / f when the division is exact; ComputationError otherwise."""
    dom = h.dom
    q = Poly.zero(dom, h.nvars)
    p = h.copy()
    ef, cf = f.leading(order)
    inv_cf = dom.inv(cf)
    key = order.key
    while p.terms:
        e = max(p.terms, key=key)
        if not monomial_divides(ef, e):
            raise ComputationError("division residue is nonzero")
        c = dom.mul(p.terms[e], inv_cf)
        shift = monomial_div(e, ef)
        q = q + Poly(dom, h.nvars, {shift: c})
        p = p - f.term_mul(c, shift)
    return q


def ideal_quotient(spec: PolyIdealSpec, f: Poly, field) -> PolyIdealSpec:
    """(I : f), via I cap (f) computed with an auxiliary variable t:
    eliminate t from t*I + (1-t)*(f), then divide each generator by f."""
    if f.is_zero():
        raise DomainError("quotient by the zero polynomial")
    nv = len(spec.variables)
    if f.nvars != nv:
        raise DomainError("arity mismatch")
    aug_vars = ("_t",) + spec.variables
    lift = lambda p: _prefix_var(p, field)
    t = Poly.variable(field, nv + 1, 0)
    one = Poly.const(field, nv + 1, field.one)
    f_lift = lift(f.convert(field))
    J = [t * lift(g) for g in _materialize(spec, field)]
    J.append((one - t) * f_lift)
    G = buchberger_polys(J, elimination_order(1))
    GB = GroebnerBasis(aug_vars, elimination_order(1), field.tag, tuple(G))
    intersection = eliminate(GB, 1)
    quotients = [_exact_divide(h, f.convert(field), DEGREVLEX) for h in intersection]
    gens = _dedupe(int_polys_from(quotients))
    return PolyIdealSpec(spec.variables, tuple(gens), raw_count=len(intersection))


def _prefix_var(p: Poly, field) -> Poly:
    out = Poly(field, p.nvars + 1)
    out.terms = {(0,) + e: c for e, c in p.terms.items()}
    return out


def _dedupe(frozen_list: list[FrozenPoly]) -> list[FrozenPoly]:
    seen = set()
    out = []
    for f in frozen_list:
        if f and f not in seen:
            seen.add(f)
            out.append(f)
    return out


def ideals_equal(a: PolyIdealSpec, b: PolyIdealSpec, field, order: MonomialOrder = DEGREVLEX) -> bool:
    if a.variables != b.variables:
        raise DomainError("ideals live in different variable lists")
    Ga = buchberger(a, order, field)
    Gb = buchberger(b, order, field)
    for g in _materialize(a, field):
        if not normal_form(g, Gb).is_zero():
            return False
    for g in _materialize(b, field):
        if not normal_form(g, Ga).is_zero():
            return False
    return True


def _pi_index(spec: PolyIdealSpec) -> int:
    try:
        return spec.variables.index(PI_NAME)
    except ValueError:
        raise DomainError("ideal has no pi variable") from None


def pi_polynomial(spec: PolyIdealSpec, field) -> Poly:
    return Poly.variable(field, len(spec.variables), _pi_index(spec))


def flatness_check(spec: PolyIdealSpec, field) -> bool:
    """True iff pi is a nonzerodivisor mod I, i.e. (I : pi) = I: the
    chart is flat over the base discrete valuation ring."""
    quotient = ideal_quotient(spec, pi_polynomial(spec, field), field)
    return ideals_equal(quotient, spec, field)


def saturate_pi(spec: PolyIdealSpec, field, max_steps: int = 64) -> PolyIdealSpec:
    """(I : pi^infinity) by iterating single quotients until stable."""
    current = spec
    for _ in range(max_steps):
        nxt = ideal_quotient(current, pi_polynomial(current, field), field)
        if ideals_equal(nxt, current, field):
            return current
        current = nxt
    raise ComputationError("saturation did not stabilize")


def specialize_pi(spec: PolyIdealSpec) -> PolyIdealSpec:
    """Set pi = 0 and drop it from the variable list."""
    k = _pi_index(spec)
    out = []
    for g in spec.generators:
        terms = {e[:k] + e[k + 1 :]: c for e, c in g if e[k] == 0}
        if terms:
            out.append(tuple(sorted(terms.items())))
    variables = spec.variables[:k] + spec.variables[k + 1 :]
    return PolyIdealSpec(variables, tuple(_dedupe(out)), raw_count=len(spec.generators))


def krull_dimension(spec: PolyIdealSpec, field, order: MonomialOrder = DEGREVLEX) -> int:
    """Dimension of the affine scheme cut out by I: the combinatorial
    dimension of the initial ideal, i.e. the size of the largest
    variable subset containing no leading-monomial support.

    The unit ideal (empty scheme) raises DomainError; callers that want
    the -1 empty-scheme convention catch it."""
    n = len(spec.variables)
    if n > MAX_DIMENSION_VARS:
        raise ComputationError("dimension search too large")
    G = buchberger(spec, order, field)
    if is_unit_basis(G):
        raise DomainError("unit ideal: empty scheme (dimension -1 by convention)")
    masks = []
    for g in G.elements:
        e = g.leading(order)[0]
        masks.append(sum(1 << i for i, x in enumerate(e) if x > 0))
    masks = sorted(set(masks))
    best = 0
    for subset in range(1 << n):
        pc = subset.bit_count()
        if pc <= best:
            continue
        if all((m & subset) != m for m in masks):
            best = pc
    return best


def radical_certificate(spec: PolyIdealSpec, field, orders: tuple[MonomialOrder, ...] | None = None) -> str:
    """Sufficient criterion: a squarefree initial ideal under any of the
    tried orders certifies that I is radical.  Never claims the
    negative; failure to certify returns "inconclusive"."""
    if orders is None:
        orders = (DEGREVLEX, LEX)
    for order in orders:
        G = buchberger(spec, order, field)
        if all(
            all(x <= 1 for x in g.leading(order)[0]) for g in G.elements
        ):
            return "certified-radical"
    return "inconclusive"


def verification_report(name: str, spec: PolyIdealSpec, field,
                        orders: tuple[MonomialOrder, ...] | None = None) -> dict:
    """Run the full battery on one chart ideal.  dim_special is the
    dimension at pi = 0, dim_generic the dimension after inverting pi
    (saturation, then total dimension minus one); -1 marks an empty
    fibre."""
    start = time.monotonic()
    flat = flatness_check(spec, field)
    try:
        dim_special = krull_dimension(specialize_pi(spec), field)
    except DomainError:
        dim_special = -1
    saturated = saturate_pi(spec, field)
    try:
        dim_generic = krull_dimension(saturated, field) - 1
    except DomainError:
        dim_generic = -1
    cert = radical_certificate(specialize_pi(spec), field, orders)
    wall_ms = int((time.monotonic() - start) * 1000)
    return {
        "ideal": name,
        "field": field.tag,
        "flat": flat,
        "dim_special": dim_special,
        "dim_generic": dim_generic,
        "radical_cert": "certified" if cert == "certified-radical" else "inconclusive",
        "wall_ms": wall_ms,
    }
