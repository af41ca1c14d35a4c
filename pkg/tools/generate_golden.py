#!/usr/bin/env python3
"""Regenerate the Groebner golden files under tests/golden/.

The bases are computed with sympy (an independent implementation), then
rendered through the package's canonical ideal text format.  A byte
match between these files and the package's own reduced bases is the
cross-implementation oracle for the Groebner engine: over a field, the
reduced Groebner basis of an ideal for a fixed order is unique, so two
correct engines must agree exactly.

Run from the repository root:  python3 tools/generate_golden.py
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction

import sympy

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from localmodels.charts import equations_U_tau  # noqa: E402
from localmodels.ioformats import render_ideal_text  # noqa: E402
from localmodels.polynomials import _drl_key  # noqa: E402

INSTANCES = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)]


def sympy_reduced_basis(spec):
    symbols = sympy.symbols([f"v{i}" for i in range(len(spec.variables))])
    gens = []
    for frozen in spec.generators:
        expr = sympy.Integer(0)
        for exps, coeff in frozen:
            term = sympy.Integer(int(coeff))
            for s, e in zip(symbols, exps):
                if e:
                    term *= s**e
            expr += term
        gens.append(sympy.Poly(expr, *symbols, domain="QQ"))
    basis = sympy.groebner(gens, *symbols, order="grevlex", domain="QQ")
    frozen_polys = []
    for poly in basis.polys:
        terms = {}
        for monom, coeff in poly.terms():
            terms[tuple(int(x) for x in monom)] = Fraction(
                int(coeff.numerator), int(coeff.denominator)
            )
        frozen_polys.append(tuple(sorted(terms.items())))
    # same presentation the package uses: ascending leading monomial
    frozen_polys.sort(key=lambda fz: _drl_key(max(dict(fz), key=_drl_key)))
    return frozen_polys


def main() -> None:
    out_dir = os.path.join(os.path.dirname(__file__), "..", "tests", "golden")
    os.makedirs(out_dir, exist_ok=True)
    for n, r in INSTANCES:
        spec = equations_U_tau(n, r)
        basis = sympy_reduced_basis(spec)
        text = render_ideal_text(spec.variables, basis)
        path = os.path.join(out_dir, f"groebner_tau_{n}_{r}_Q_degrevlex.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {path}: {len(basis)} basis elements")


if __name__ == "__main__":
    main()
