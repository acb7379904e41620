"""Independent reference implementations used to cross-check the library.

These deliberately avoid the library's quotient-table arithmetic: basis
enumeration works straight off the definition, and morphism checking
substitutes in the raw polynomial ring before reducing by divisibility.
"""

from __future__ import annotations

import itertools

from weilforms.expr import (
    Add,
    Call,
    Const,
    Div,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
)


def brute_standard_monomials(bounds, products) -> set:
    """All exponent vectors below the bounds and divisible by no product."""
    out = set()
    for exps in itertools.product(*(range(k) for k in bounds)):
        if any(all(exps[i - 1] >= 1 for i in seq) for seq in products):
            continue
        out.add(exps)
    return out


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0.0) + c1 * c2
    return out


def substitution_vanishes(dom_bounds, dom_products, image_polys, generator) -> bool:
    """Whether a codomain generator maps to zero: substitute in the free
    polynomial ring, then drop monomials divisible by the domain ideal."""
    nd = len(dom_bounds)
    prod = {(0,) * nd: 1.0}
    for poly, e in zip(image_polys, generator):
        for _ in range(e):
            prod = poly_mul(prod, poly)
    for e, c in prod.items():
        if c == 0.0:
            continue
        if any(e[i] >= dom_bounds[i] for i in range(nd)):
            continue
        if any(all(e[i - 1] >= 1 for i in seq) for seq in dom_products):
            continue
        return False
    return True


def random_ast(rng, num_vars: int, depth: int = 3):
    """Arbitrary expression tree for printer round trips (not for evaluation)."""
    if depth == 0 or rng.random() < 0.3:
        kind = rng.integers(0, 2)
        if kind == 0:
            value = round(float(rng.uniform(-5, 5)), 3)
            return Const(value)
        return Var(int(rng.integers(1, num_vars + 1)))
    kind = rng.integers(0, 8)
    a = random_ast(rng, num_vars, depth - 1)
    b = random_ast(rng, num_vars, depth - 1)
    if kind == 0:
        return Add(a, b)
    if kind == 1:
        return Sub(a, b)
    if kind == 2:
        return Mul(a, b)
    if kind == 3:
        return Div(a, b)
    if kind == 4:
        # the printer renders a negated literal as a signed literal, which
        # reparses as a constant, so keep Neg off constants
        return Neg(a) if not isinstance(a, Const) else Add(a, b)
    if kind == 5:
        return Pow(a, int(rng.integers(-3, 5)))
    if kind == 6:
        funcs = ("sin", "cos", "exp", "log", "sqrt")
        return Call(str(rng.choice(funcs)), a)
    return Mul(a, Neg(b) if not isinstance(b, Const) else b)
