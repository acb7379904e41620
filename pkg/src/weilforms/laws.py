"""Registered law checkers and the random generators that feed them.

Every law is a function (seed, samples) -> max deviation, sampling from a
per-sample random stream derived from the seed, the law name and the
sample index, so results are reproducible regardless of execution order.
Exact laws report a mismatch count instead of a float residual.
"""

from __future__ import annotations

import math
import zlib
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    InfinitesimalPresentation,
    WeilElement,
    algebra_for,
    d_order,
    d_pairwise,
    d_power,
    make_morphism,
    MorphismError,
    oplus,
    tensor_presentation,
)
from .expr import Call, Const, Expression, Var, differentiate, eval_real, substitute
from .forms import (
    ClassicalForm,
    classical_to_microcube,
    exterior_derivative,
    homogeneity_residual,
    integral,
    microcube_to_classical,
    stokes_sum,
)
from .microcube import Microcube
from .oracle import classical_d
from .perms import face_residual, sign
from .prolongation import (
    WeilPoint,
    canonical_point,
    eval_over_weil,
    kock_lawvere_split,
    prolong_map,
)

__all__ = [
    "LAWS",
    "sample_rng",
    "random_element",
    "random_simplicial",
    "random_polynomial",
    "random_classical_form",
    "random_microcube",
    "random_safe_univariate",
    "matched_pair",
    "corpus_case",
    "brute_force_well_defined",
]

LAWS: dict[str, Callable[[int, int], float]] = {}


def law(name: str):
    def register(fn):
        LAWS[name] = fn
        return fn

    return register


def sample_rng(seed: int, name: str, index: int) -> np.random.Generator:
    return np.random.default_rng(
        [int(seed) & 0xFFFFFFFF, zlib.crc32(name.encode()), int(index)]
    )


# -- random generators ---------------------------------------------------------

_POOL = (
    d_order(1),
    d_order(2),
    d_pairwise(2),
    d_power(2),
    tensor_presentation(d_order(2), d_order(1)),
    d_power(3),
)


def random_element(rng, algebra, lo: int = -5, hi: int = 5) -> WeilElement:
    return algebra.element(rng.integers(lo, hi + 1, size=algebra.dim).astype(float))


def random_simplicial(rng, max_vars: int = 3) -> InfinitesimalPresentation:
    n = int(rng.integers(1, max_vars + 1))
    products = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < 0.4:
                products.add((i, j))
    return InfinitesimalPresentation(n, (2,) * n, frozenset(products))


def random_polynomial(rng, num_vars: int, max_degree: int = 3) -> Expression:
    """Integer-coefficient polynomial of bounded total degree."""
    expr: Expression = Const(0.0)
    for _ in range(int(rng.integers(1, 5))):
        coeff = int(rng.integers(1, 6)) * int(rng.choice([-1, 1]))
        term: Expression = Const(float(coeff))
        degree = int(rng.integers(0, max_degree + 1))
        for _ in range(degree):
            term = term * Var(int(rng.integers(1, num_vars + 1)))
        expr = expr + term
    return expr


def random_classical_form(rng, m: int, n: int, codim: int = 1) -> ClassicalForm:
    import itertools

    components = {}
    for t in itertools.combinations(range(1, m + 1), n):
        if rng.random() < 0.85:
            components[t] = tuple(random_polynomial(rng, m) for _ in range(codim))
    return ClassicalForm(m, n, codim, components)


def random_microcube(rng, m: int, n: int) -> Microcube:
    alg = algebra_for(d_power(n))
    coords = []
    for _ in range(m):
        coeffs = np.zeros(alg.dim)
        for idx, e in enumerate(alg.basis):
            d = sum(e)
            if d == 0:
                coeffs[idx] = rng.uniform(-1.2, 1.2)
            elif d == 1:
                coeffs[idx] = rng.uniform(-1.0, 1.0)
            else:
                coeffs[idx] = rng.uniform(-0.5, 0.5)
        coords.append(WeilElement(alg, coeffs))
    return Microcube(WeilPoint(alg, coords), n)


def matched_pair(rng, m: int, n: int, i: int) -> tuple[Microcube, Microcube]:
    """Two random microcubes sharing their i-th restriction."""
    g1 = random_microcube(rng, m, n)
    g2 = random_microcube(rng, m, n)
    alg = g1.algebra
    fiber = np.array([e[i - 1] == 1 for e in alg.basis])
    coords = [
        WeilElement(alg, np.where(fiber, c2.coeffs, c1.coeffs))
        for c1, c2 in zip(g1.point.coords, g2.point.coords)
    ]
    return g1, Microcube(WeilPoint(alg, coords), n)


def random_safe_univariate(rng) -> Expression:
    """Expression in x1 whose evaluation is well defined for |x1| <= 0.5."""
    x = Var(1)

    def atom():
        kind = rng.integers(0, 6)
        a = float(rng.uniform(-1.5, 1.5))
        b = float(rng.uniform(-1.0, 1.0))
        if kind == 0:
            poly: Expression = Const(float(rng.integers(-3, 4)))
            for _ in range(int(rng.integers(1, 4))):
                poly = poly * x + Const(float(rng.integers(-3, 4)))
            return poly
        if kind == 1:
            return Call("sin", Const(a) * x + Const(b))
        if kind == 2:
            return Call("cos", Const(a) * x + Const(b))
        if kind == 3:
            return Call("exp", Const(a) * x + Const(b))
        offset = float(rng.uniform(1.5, 3.0))
        if kind == 4:
            return Call("log", Const(offset) + Const(b) * x)
        return Call("sqrt", Const(offset) + Const(b) * x)

    shape = rng.integers(0, 4)
    if shape == 0:
        return atom()
    if shape == 1:
        return atom() + atom()
    if shape == 2:
        return atom() * atom()
    return atom() / (Const(float(rng.uniform(1.5, 3.0))) + Const(float(rng.uniform(-1.0, 1.0))) * x)


def corpus_case(rng) -> tuple[int, int, ClassicalForm]:
    """Random form per the corpus policy: m <= 4, n <= min(m, 3), degree-3
    integer polynomial coefficients."""
    m = int(rng.integers(1, 5))
    n = int(rng.integers(0, min(m, 3) + 1))
    return m, n, random_classical_form(rng, m, n)


# -- independent brute-force morphism check -------------------------------------


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0.0) + c1 * c2
    return out


def brute_force_well_defined(
    dom: InfinitesimalPresentation,
    cod: InfinitesimalPresentation,
    images: Sequence[WeilElement],
) -> bool:
    """Substitute in the full polynomial ring, then reduce by divisibility.

    Independent of the quotient-table arithmetic: products are computed as
    raw exponent dictionaries and a monomial is dropped exactly when some
    ideal generator of the domain divides it.
    """
    nd = dom.num_vars
    polys = [dict(img.to_coeff_map()) for img in images]
    gens = [tuple(cod.bounds[i] if j == i else 0 for j in range(cod.num_vars)) for i in range(cod.num_vars)]
    for seq in cod.products:
        gens.append(tuple(1 if (j + 1) in seq else 0 for j in range(cod.num_vars)))
    for gen in gens:
        prod = {(0,) * nd: 1.0}
        for j, e in enumerate(gen):
            for _ in range(e):
                prod = _poly_mul(prod, polys[j])
        for e, c in prod.items():
            if c == 0.0:
                continue
            killed = any(e[i] >= dom.bounds[i] for i in range(nd))
            if not killed:
                killed = any(all(e[i - 1] >= 1 for i in seq) for seq in dom.products)
            if not killed:
                return False
    return True


# -- the laws -------------------------------------------------------------------


@law("algebra-dimensions")
def law_algebra_dimensions(seed: int, samples: int) -> float:
    expected = [
        (d_order(1), 2),
        (d_order(2), 3),
        (d_pairwise(2), 3),
        (d_power(2), 4),
        (d_pairwise(3), 4),
        (d_power(3), 8),
    ]
    return float(sum(1 for p, dim in expected if algebra_for(p).dim != dim))


@law("ring-laws")
def law_ring_laws(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "ring-laws", k)
        alg = algebra_for(_POOL[k % len(_POOL)])
        a, b, c = (random_element(rng, alg) for _ in range(3))
        worst = max(
            worst,
            ((a * b) * c).max_abs_diff(a * (b * c)),
            (a * b).max_abs_diff(b * a),
            (a * (b + c)).max_abs_diff(a * b + a * c),
            (a * alg.one()).max_abs_diff(a),
            ((a + b) + c).max_abs_diff(a + (b + c)),
        )
    return worst


@law("augmentation-homomorphism")
def law_augmentation(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "augmentation-homomorphism", k)
        alg = algebra_for(_POOL[k % len(_POOL)])
        a, b = random_element(rng, alg), random_element(rng, alg)
        worst = max(
            worst,
            abs((a * b).augmentation - a.augmentation * b.augmentation),
            abs((a + b).augmentation - (a.augmentation + b.augmentation)),
            abs(alg.one().augmentation - 1.0),
        )
    return worst


@law("nilpotency")
def law_nilpotency(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(min(samples, len(_POOL) * 3)):
        rng = sample_rng(seed, "nilpotency", k)
        pres = _POOL[k % len(_POOL)] if k < len(_POOL) else random_simplicial(rng)
        alg = algebra_for(pres)
        order = 1 + sum(b - 1 for b in alg.presentation.bounds)
        for e in alg.basis:
            if sum(e) == 0:
                continue
            worst = max(worst, (alg.monomial_element(e) ** order).max_abs())
    return worst


@law("tensor-dimension")
def law_tensor_dimension(seed: int, samples: int) -> float:
    bad = 0
    for k in range(samples):
        rng = sample_rng(seed, "tensor-dimension", k)
        p = _POOL[int(rng.integers(0, len(_POOL)))]
        q = _POOL[int(rng.integers(0, len(_POOL)))]
        combined = algebra_for(tensor_presentation(p, q))
        if combined.dim != algebra_for(p).dim * algebra_for(q).dim:
            bad += 1
        if algebra_for(tensor_presentation(p, d_power(0))).dim != algebra_for(p).dim:
            bad += 1
    return float(bad)


@law("oplus-associativity")
def law_oplus_associativity(seed: int, samples: int) -> float:
    bad = 0
    for k in range(samples):
        rng = sample_rng(seed, "oplus-associativity", k)
        p, q, r = (random_simplicial(rng) for _ in range(3))
        if oplus(oplus(p, q), r) != oplus(p, oplus(q, r)):
            bad += 1
    return float(bad)


@law("morphism-classifier")
def law_morphism_classifier(seed: int, samples: int) -> float:
    bad = 0
    domains = (d_order(2), d_power(2), d_pairwise(2), tensor_presentation(d_order(2), d_order(1)))
    codomains = (d_order(1), d_order(2), d_pairwise(2), d_power(2))
    for k in range(samples):
        rng = sample_rng(seed, "morphism-classifier", k)
        dom = domains[int(rng.integers(0, len(domains)))]
        cod = codomains[int(rng.integers(0, len(codomains)))]
        alg = algebra_for(dom)
        images = []
        for _ in range(cod.num_vars):
            coeffs = rng.integers(-2, 3, size=alg.dim).astype(float)
            coeffs[0] = 0.0
            images.append(alg.element(coeffs))
        try:
            make_morphism(dom, cod, images)
            accepted = True
        except MorphismError:
            accepted = False
        if accepted != brute_force_well_defined(dom, cod, images):
            bad += 1
    return float(bad)


@law("taylor-jets")
def law_taylor_jets(seed: int, samples: int) -> float:
    worst = 0.0
    alg = algebra_for(InfinitesimalPresentation(1, (5,)))
    for k in range(samples):
        rng = sample_rng(seed, "taylor-jets", k)
        f = random_safe_univariate(rng)
        c = float(rng.uniform(-0.4, 0.4))
        jet = eval_over_weil(f, WeilPoint(alg, [alg.scalar(c) + alg.generator(1)]))
        g = f
        fact = 1.0
        for j in range(alg.nilpotency_index + 1):
            if j > 0:
                g = differentiate(g, 1)
                fact *= j
            truth = eval_real(g, [c]) / fact
            got = jet.coefficient((j,))
            worst = max(worst, abs(got - truth) / max(1.0, abs(truth), abs(got)))
    return worst


@law("tangent-addition")
def law_tangent_addition(seed: int, samples: int) -> float:
    D, D2 = d_power(1), d_pairwise(2)
    alg_d, alg_d2 = algebra_for(D), algebra_for(D2)
    embed1 = make_morphism(D2, D, [alg_d2.generator(1)])
    embed2 = make_morphism(D2, D, [alg_d2.generator(2)])
    diagonal = make_morphism(D, D2, [alg_d.generator(1), alg_d.generator(1)])
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "tangent-addition", k)
        a = rng.uniform(-2.0, 2.0, size=4)
        b = rng.uniform(-2.0, 2.0, size=4)
        t1 = canonical_point(np.zeros(4), [a])
        t2 = canonical_point(np.zeros(4), [b])
        lifted = WeilPoint(
            alg_d2,
            [u + v for u, v in zip(t1.transform(embed1).coords, t2.transform(embed2).coords)],
        )
        through_d2 = lifted.transform(diagonal)
        coefficientwise = canonical_point(np.zeros(4), [a + b])
        worst = max(worst, through_d2.max_abs_diff(coefficientwise))
    return worst


@law("kock-lawvere")
def law_kock_lawvere(seed: int, samples: int) -> float:
    alg = algebra_for(d_power(1))
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "kock-lawvere", k)
        a = rng.uniform(-3.0, 3.0, size=3)
        worst = max(worst, float(np.max(np.abs(kock_lawvere_split(canonical_point(np.zeros(3), [a])) - a))))
        t = WeilPoint(alg, [alg.generator(1) * float(v) for v in rng.uniform(-3.0, 3.0, size=3)])
        rebuilt = canonical_point(np.zeros(3), [kock_lawvere_split(t)])
        worst = max(worst, rebuilt.max_abs_diff(t))
    return worst


@law("multiplicative-embedding")
def law_multiplicative_embedding(seed: int, samples: int) -> float:
    D, DD = d_power(1), d_power(2)
    alg_dd = algebra_for(DD)
    multiply = make_morphism(DD, D, [alg_dd.generator(1) * alg_dd.generator(2)])
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "multiplicative-embedding", k)
        x = rng.uniform(-2.0, 2.0, size=3)
        a = rng.uniform(-2.0, 2.0, size=3)
        t = canonical_point(x, [a])
        pushed = t.transform(multiply)
        manual = WeilPoint(
            alg_dd,
            [
                alg_dd.from_coeff_map({(0, 0): float(x[j]), (1, 1): float(a[j])})
                for j in range(3)
            ],
        )
        worst = max(worst, pushed.max_abs_diff(manual))
    return worst


@law("chain-rule")
def law_chain_rule(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "chain-rule", k)
        pres = _POOL[int(rng.integers(0, len(_POOL)))]
        alg = algebra_for(pres)
        inner = random_polynomial(rng, 1, max_degree=2)
        outer = random_safe_univariate(rng)
        # keep the inner value inside the outer expression's safe window
        inner = Const(0.1) * inner
        composed = substitute(outer, {1: inner})
        coeffs = rng.uniform(-0.3, 0.3, size=alg.dim)
        point = WeilPoint(alg, [alg.element(coeffs)])
        step = prolong_map([inner], point)
        two_steps = eval_over_weil(outer, step)
        one_step = eval_over_weil(composed, point)
        worst = max(worst, two_steps.max_abs_diff(one_step))
    return worst


@law("prolongation-naturality")
def law_naturality(seed: int, samples: int) -> float:
    D, D2pres, DD = d_power(1), d_order(2), d_power(2)
    alg_d = algebra_for(D)
    alg_d2 = algebra_for(D2pres)
    alg_dd = algebra_for(DD)
    morphisms = [
        make_morphism(D2pres, D, [alg_d2.generator(1) ** 2]),
        make_morphism(DD, DD, [alg_dd.generator(2), alg_dd.generator(1)]),
        make_morphism(D, d_pairwise(2), [alg_d.generator(1), alg_d.generator(1)]),
        make_morphism(D, D, [alg_d.generator(1) * 2.0]),
    ]
    exprs = [
        Var(1) * Var(2) + Var(1) ** 2,
        Call("sin", Var(1)) + Call("exp", Const(0.5) * Var(2)),
    ]
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "prolongation-naturality", k)
        phi = morphisms[int(rng.integers(0, len(morphisms)))]
        cod_alg = phi.codomain_algebra
        coords = [cod_alg.element(rng.uniform(-0.8, 0.8, size=cod_alg.dim)) for _ in range(2)]
        point = WeilPoint(cod_alg, coords)
        lhs = prolong_map(exprs, point).transform(phi)
        rhs = prolong_map(exprs, point.transform(phi))
        worst = max(worst, lhs.max_abs_diff(rhs))
    return worst


def _form_value_diff(u: Sequence[WeilElement], v: Sequence[WeilElement]) -> float:
    return max(a.max_abs_diff(b) for a, b in zip(u, v)) if u else 0.0


@law("form-bijection")
def law_form_bijection(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "form-bijection", k)
        m, n, form = corpus_case(rng)
        lifted = classical_to_microcube(form)
        recovered = microcube_to_classical(lifted)
        x = rng.uniform(-1.2, 1.2, size=m)
        vectors = [rng.uniform(-1.0, 1.0, size=m) for _ in range(n)]
        worst = max(
            worst,
            float(np.max(np.abs(recovered.evaluate(x, vectors) - form.evaluate(x, vectors)))),
        )
        relifted = classical_to_microcube(recovered)
        cube = random_microcube(rng, m, n)
        worst = max(worst, _form_value_diff(relifted(cube), lifted(cube)))
    return worst


@law("form-invariants")
def law_form_invariants(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "form-invariants", k)
        m, n, form = corpus_case(rng)
        if n == 0:
            continue
        omega = classical_to_microcube(form)
        cube = random_microcube(rng, m, n)
        i = int(rng.integers(1, n + 1))
        alpha = float(rng.uniform(-2.0, 2.0))
        scaled = omega(cube.scale_at(i, alpha))
        direct = [v * alpha for v in omega(cube)]
        worst = max(worst, _form_value_diff(scaled, direct))
        sigma = tuple(rng.permutation(n) + 1)
        permuted = omega(cube.permute(sigma))
        signed = [v * float(sign(sigma)) for v in omega(cube)]
        worst = max(worst, _form_value_diff(permuted, signed))
    return worst


@law("homogeneous-linearity")
def law_homogeneous_linearity(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "homogeneous-linearity", k)
        m, n, form = corpus_case(rng)
        if n == 0:
            continue
        omega = classical_to_microcube(form)
        i = int(rng.integers(1, n + 1))
        g1, g2 = matched_pair(rng, m, n, i)
        total = omega(g1.add_at(g2, i))
        split = [a + b for a, b in zip(omega(g1), omega(g2))]
        worst = max(worst, _form_value_diff(total, split))
    return worst


@law("integral-form-laws")
def law_integral_form_laws(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "integral-form-laws", k)
        m, n, form = corpus_case(rng)
        if n == 0:
            continue
        omega = classical_to_microcube(form)
        cube = random_microcube(rng, m, n)
        i = int(rng.integers(1, n + 1))
        alpha = float(rng.uniform(-2.0, 2.0))
        lhs = integral(omega, cube.scale_at(i, alpha))
        rhs = WeilPoint(lhs.algebra, [c * alpha for c in integral(omega, cube).coords])
        worst = max(worst, lhs.max_abs_diff(rhs))
        sigma = tuple(rng.permutation(n) + 1)
        lhs = integral(omega, cube.permute(sigma))
        rhs = WeilPoint(
            lhs.algebra,
            [c * float(sign(sigma)) for c in integral(omega, cube).coords],
        )
        worst = max(worst, lhs.max_abs_diff(rhs))
    return worst


@law("integral-homogeneous")
def law_integral_homogeneous(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "integral-homogeneous", k)
        m, n, form = corpus_case(rng)
        omega = classical_to_microcube(form)
        cube = random_microcube(rng, m, n)
        worst = max(worst, homogeneity_residual(integral(omega, cube), n))
    return worst


@law("stokes-formula")
def law_stokes_formula(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "stokes-formula", k)
        m, n, form = corpus_case(rng)
        geometric = microcube_to_classical(
            exterior_derivative(classical_to_microcube(form))
        )
        classical = classical_d(form)
        x = rng.uniform(-1.2, 1.2, size=m)
        vectors = [rng.uniform(-1.0, 1.0, size=m) for _ in range(n + 1)]
        worst = max(
            worst,
            float(np.max(np.abs(geometric.evaluate(x, vectors) - classical.evaluate(x, vectors)))),
        )
    return worst


@law("dd-zero")
def law_dd_zero(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "dd-zero", k)
        m = int(rng.choice([3, 4]))
        n = int(rng.integers(0, 2))
        form = random_classical_form(rng, m, n)
        second = exterior_derivative(exterior_derivative(classical_to_microcube(form)))
        cube = random_microcube(rng, m, n + 2)
        worst = max(worst, max(v.max_abs() for v in second(cube)))
    return worst


@law("face-sign-identity")
def law_face_sign_identity(seed: int, samples: int) -> float:
    bad = 0
    for k in range(samples):
        rng = sample_rng(seed, "face-sign-identity", k)
        n1 = int(rng.integers(2, 6))
        sigma = tuple(rng.permutation(n1) + 1)
        i = int(rng.integers(1, n1 + 1))
        tau = face_residual(sigma, i)
        j = sigma.index(i) + 1
        if sign(tau) != (-1) ** (j - i) * sign(sigma):
            bad += 1
    return float(bad)


@law("homogeneity-shadow")
def law_homogeneity_shadow(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "homogeneity-shadow", k)
        m, n, form = corpus_case(rng)
        omega = classical_to_microcube(form)
        cube = random_microcube(rng, m, n + 1)
        worst = max(worst, homogeneity_residual(stokes_sum(omega, cube), n + 1))
    return worst


@law("d-alternating")
def law_d_alternating(seed: int, samples: int) -> float:
    worst = 0.0
    for k in range(samples):
        rng = sample_rng(seed, "d-alternating", k)
        m, n, form = corpus_case(rng)
        derivative = exterior_derivative(classical_to_microcube(form))
        cube = random_microcube(rng, m, n + 1)
        sigma = tuple(rng.permutation(n + 1) + 1)
        permuted = derivative(cube.permute(sigma))
        signed = [v * float(sign(sigma)) for v in derivative(cube)]
        worst = max(worst, _form_value_diff(permuted, signed))
    return worst
