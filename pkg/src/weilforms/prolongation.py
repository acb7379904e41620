"""Evaluation of smooth maps over Weil-algebra scalars.

This is the Weil functor acting on maps R^m -> R^k, restricted to
expression trees: arithmetic nodes evaluate in the algebra, and an
analytic primitive g at c + nu (c the augmentation, nu nilpotent) is the
truncated Taylor sum over j of g^(j)(c)/j! * nu^j up to the algebra's
nilpotency index.  Also provides the Euclidean structure of R^m: the
canonical degree-one embedding and the Kock-Lawvere coefficient split.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .algebra import WeilAlgebra, WeilElement, WeilMorphism, algebra_for, d_power
from .expr import Add, Call, Const, Div, Expression, Mul, Neg, Pow, Sub, Var

__all__ = [
    "WeilPoint",
    "eval_over_weil",
    "prolong_map",
    "naturality_check",
    "canonical_point",
    "kock_lawvere_split",
    "apply_analytic",
]


class WeilPoint:
    """A point of R^m tensored with a Weil algebra: m elements over one algebra."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeilAlgebra, coords: Sequence[WeilElement]):
        coords = tuple(coords)
        for c in coords:
            if not c.algebra == algebra:
                raise ValueError("all coordinates must share the point's algebra")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("WeilPoint is immutable")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def base_point(self) -> np.ndarray:
        """The canonical projection to R^m: all augmentations."""
        return np.array([c.augmentation for c in self.coords])

    def transform(self, morphism: WeilMorphism) -> "WeilPoint":
        """Apply id_M tensor W_phi componentwise."""
        return WeilPoint(morphism.domain_algebra, [morphism.apply(c) for c in self.coords])

    def max_abs_diff(self, other: "WeilPoint") -> float:
        if len(self.coords) != len(other.coords):
            raise ValueError("points have different dimensions")
        if not self.coords:
            return 0.0
        return max(a.max_abs_diff(b) for a, b in zip(self.coords, other.coords))

    def isclose(self, other: "WeilPoint", tol: float = 1e-9) -> bool:
        return self.max_abs_diff(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, WeilPoint):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coords)
        return f"WeilPoint({inner})"


def _taylor_coefficients(func: str, c: float, order: int) -> list[float]:
    """g^(j)(c)/j! for j = 0..order."""
    if func == "exp":
        out = [math.exp(c)]
        for j in range(1, order + 1):
            out.append(out[-1] / j)
        return out
    if func in ("sin", "cos"):
        s, co = math.sin(c), math.cos(c)
        cycle = [s, co, -s, -co] if func == "sin" else [co, -s, -co, s]
        out = []
        fact = 1.0
        for j in range(order + 1):
            if j > 0:
                fact *= j
            out.append(cycle[j % 4] / fact)
        return out
    if func == "log":
        if c <= 0.0:
            raise ValueError(f"log requires positive augmentation, got {c}")
        out = [math.log(c)]
        r = -1.0 / c
        rj = 1.0
        for j in range(1, order + 1):
            rj *= r
            out.append(-rj / j)
        return out
    if func == "sqrt":
        if c < 0.0 or (c == 0.0 and order >= 1):
            raise ValueError(f"sqrt requires positive augmentation, got {c}")
        out = [math.sqrt(c)]
        for j in range(1, order + 1):
            out.append(out[-1] * (1.5 / j - 1.0) / c)
        return out
    raise ValueError(f"unknown analytic primitive {func!r}")


def apply_analytic(func: str, element: WeilElement) -> WeilElement:
    """Evaluate an analytic primitive at a Weil-algebra element by Taylor truncation."""
    order = element.algebra.nilpotency_index
    coeffs = _taylor_coefficients(func, element.augmentation, order)
    nu = element.nilpotent_part()
    acc = element.algebra.scalar(coeffs[0])
    power = element.algebra.one()
    for j in range(1, order + 1):
        power = power * nu
        acc = acc + power * coeffs[j]
    return acc


def eval_over_weil(expr: Expression, point: WeilPoint) -> WeilElement:
    """Evaluate an expression with the point's coordinates as scalars."""
    alg = point.algebra

    def rec(e: Expression) -> WeilElement:
        if isinstance(e, Const):
            return alg.scalar(e.value)
        if isinstance(e, Var):
            if e.index > len(point.coords):
                raise ValueError(
                    f"expression uses x{e.index} but the point has "
                    f"{len(point.coords)} coordinates"
                )
            return point.coords[e.index - 1]
        if isinstance(e, Add):
            return rec(e.left) + rec(e.right)
        if isinstance(e, Sub):
            return rec(e.left) - rec(e.right)
        if isinstance(e, Mul):
            return rec(e.left) * rec(e.right)
        if isinstance(e, Div):
            return rec(e.left) / rec(e.right)
        if isinstance(e, Neg):
            return -rec(e.operand)
        if isinstance(e, Pow):
            return rec(e.base) ** e.exponent
        if isinstance(e, Call):
            return apply_analytic(e.func, rec(e.arg))
        raise TypeError(f"not an expression node: {e!r}")

    return rec(expr)


def prolong_map(exprs: Sequence[Expression], point: WeilPoint) -> WeilPoint:
    """Componentwise prolongation of the map whose components are exprs."""
    return WeilPoint(point.algebra, [eval_over_weil(f, point) for f in exprs])


def naturality_check(
    exprs: Sequence[Expression],
    morphism: WeilMorphism,
    point: WeilPoint,
    tol: float = 1e-9,
) -> bool:
    """Whether the prolongation commutes with the morphism at this point."""
    if not point.algebra == morphism.codomain_algebra:
        raise ValueError("point must live over the morphism's codomain-object algebra")
    lhs = prolong_map(exprs, point).transform(morphism)
    rhs = prolong_map(exprs, point.transform(morphism))
    return lhs.max_abs_diff(rhs) <= tol


def canonical_point(
    x: Sequence[float], vectors: Sequence[Sequence[float]]
) -> WeilPoint:
    """i(x; a_1..a_n): coordinate j is x_j + sum_i (a_i)_j d_i over W_{D^n}."""
    m = len(x)
    for a in vectors:
        if len(a) != m:
            raise ValueError("direction vectors must match the base point's dimension")
    alg = algebra_for(d_power(len(vectors)))
    coords = []
    for j in range(m):
        c = alg.scalar(float(x[j]))
        for i, a in enumerate(vectors, start=1):
            c = c + alg.generator(i) * float(a[j])
        coords.append(c)
    return WeilPoint(alg, coords)


def kock_lawvere_split(t: WeilPoint) -> np.ndarray:
    """The unique a with t = i(0, a), for tangent vectors over W_D at base 0."""
    if not t.algebra.presentation == d_power(1):
        raise ValueError("Kock-Lawvere split is defined over W_D only")
    base = t.base_point
    if np.any(base != 0.0):
        raise ValueError(f"tangent vector has nonzero base point {base}")
    return np.array([c.coefficient((1,)) for c in t.coords])
