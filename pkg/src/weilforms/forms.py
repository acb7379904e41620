"""Differential forms on R^m: classical components and microcube evaluators.

A classical n-form stores one coefficient per strictly increasing index
tuple per output coordinate; a microcube form is carried extensionally as
an evaluator on microcubes.  The two pictures are interconvertible, and
the exterior derivative is computed geometrically: as the alternating sum
over faces of the fiber part of the infinitesimal integral, with the
resulting top-monomial coefficient read off after a homogeneity check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .algebra import WeilAlgebra, WeilElement, algebra_for, d_power
from .expr import Expression, eval_real, to_text
from .microcube import Microcube, strip_cube_part
from .parser import parse_expression
from .prolongation import WeilPoint, eval_over_weil

__all__ = [
    "ClassicalForm",
    "MicrocubeForm",
    "HomogeneityError",
    "classical_to_microcube",
    "microcube_to_classical",
    "integral",
    "boundary_integral",
    "is_n_homogeneous",
    "homogeneity_residual",
    "d0",
    "stokes_sum",
    "exterior_derivative",
    "classical_form_to_doc",
    "classical_form_from_doc",
]

# a component is an expression in the base coordinates, or a callable taking
# the base coordinates as ring elements and returning a ring element
Component = Union[Expression, Callable[[Sequence[WeilElement]], WeilElement]]


class HomogeneityError(RuntimeError):
    """The face sum failed to concentrate on the top monomial."""


def _check_tuple(t: tuple[int, ...], degree: int, dim: int):
    if len(t) != degree:
        raise ValueError(f"index tuple {t} must have length {degree}")
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"index tuple {t} must be strictly increasing")
    if t and (t[0] < 1 or t[-1] > dim):
        raise ValueError(f"index tuple {t} indexes outside 1..{dim}")


@dataclass(frozen=True)
class ClassicalForm:
    """An n-form as alternating-tensor components in the coordinate basis.

    ``components`` maps each strictly increasing tuple (i1 < ... < in) to
    one coefficient per output coordinate; missing tuples are zero.
    Evaluation on vectors a_1..a_n sums component * det of the selected
    rows of the edge matrix, so it is n-linear and alternating by
    construction.
    """

    dim: int
    degree: int
    codim: int
    components: Mapping[tuple[int, ...], tuple[Component, ...]]

    def __post_init__(self):
        comps = {}
        for t, fns in self.components.items():
            t = tuple(t)
            _check_tuple(t, self.degree, self.dim)
            fns = tuple(fns)
            if len(fns) != self.codim:
                raise ValueError(
                    f"tuple {t} has {len(fns)} component functions, expected {self.codim}"
                )
            comps[t] = fns
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, dim: int, degree: int, codim: int = 1) -> "ClassicalForm":
        return cls(dim, degree, codim, {})

    def index_tuples(self):
        return itertools.combinations(range(1, self.dim + 1), self.degree)

    def evaluate(self, x: Sequence[float], vectors: Sequence[Sequence[float]]) -> np.ndarray:
        """Value at a base point on constant edge vectors."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} edge vectors, got {len(vectors)}")
        out = np.zeros(self.codim)
        for t, fns in self.components.items():
            mat = np.array([[vectors[c][r - 1] for c in range(self.degree)] for r in t])
            det = float(np.linalg.det(mat)) if self.degree else 1.0
            for k, fn in enumerate(fns):
                out[k] += _component_real(fn, x) * det
        return out


def _component_real(fn: Component, x: Sequence[float]) -> float:
    if isinstance(fn, Expression):
        return eval_real(fn, x)
    trivial = algebra_for(d_power(0))
    value = fn([trivial.scalar(float(v)) for v in x])
    return value.augmentation


def _component_element(fn: Component, coords: Sequence[WeilElement], algebra: WeilAlgebra) -> WeilElement:
    if isinstance(fn, Expression):
        return eval_over_weil(fn, WeilPoint(algebra, coords))
    return fn(coords)


def _det_elements(mat: list[list[WeilElement]], algebra: WeilAlgebra) -> WeilElement:
    n = len(mat)
    if n == 0:
        return algebra.one()
    if n == 1:
        return mat[0][0]
    acc = algebra.zero()
    for c in range(n):
        minor = [row[:c] + row[c + 1 :] for row in mat[1:]]
        term = mat[0][c] * _det_elements(minor, algebra)
        acc = acc + term if c % 2 == 0 else acc - term
    return acc


@dataclass(frozen=True)
class MicrocubeForm:
    """An n-form carried as a function on microcubes.

    The evaluator must accept microcubes whose coordinates are scalar
    extended by an arbitrary auxiliary algebra and answer with one element
    of the cube's total algebra per output coordinate, supported on the
    auxiliary monomials only.
    """

    degree: int
    dim: int
    codim: int
    evaluator: Callable[[Microcube], Sequence[WeilElement]]

    def __call__(self, cube: Microcube) -> list[WeilElement]:
        if cube.degree != self.degree:
            raise ValueError(f"form has degree {self.degree}, microcube {cube.degree}")
        if cube.dimension != self.dim:
            raise ValueError(f"form lives on R^{self.dim}, microcube on R^{cube.dimension}")
        return list(self.evaluator(cube))

    def values_real(self, cube: Microcube) -> np.ndarray:
        """Augmentations of the values; the plain value on an unextended cube."""
        return np.array([v.augmentation for v in self(cube)])


def classical_to_microcube(form: ClassicalForm) -> MicrocubeForm:
    """omega-tilde: read base point and edge vectors off the microcube and
    evaluate the components there, over whatever scalars the cube carries."""

    def evaluator(cube: Microcube) -> list[WeilElement]:
        alg = cube.algebra
        base = cube.base_parts()
        edges = [cube.edge_parts(i) for i in range(1, form.degree + 1)]
        acc = [alg.zero() for _ in range(form.codim)]
        for t, fns in form.components.items():
            mat = [[edges[c][r - 1] for c in range(form.degree)] for r in t]
            det = _det_elements(mat, alg)
            for k, fn in enumerate(fns):
                acc[k] = acc[k] + _component_element(fn, base, alg) * det
        return acc

    return MicrocubeForm(form.degree, form.dim, form.codim, evaluator)


def microcube_to_classical(rho: MicrocubeForm) -> ClassicalForm:
    """omega-underline: recover components by probing with canonical
    microcubes on coordinate basis tuples."""
    m, n = rho.dim, rho.degree

    def make_component(t: tuple[int, ...], k: int) -> Component:
        def component(coords: Sequence[WeilElement]) -> WeilElement:
            aux = coords[0].algebra if coords else algebra_for(d_power(0))
            vectors = []
            for r in t:
                unit = [0.0] * m
                unit[r - 1] = 1.0
                vectors.append(unit)
            cube = Microcube.canonical(list(coords), vectors, aux=aux)
            value = rho(cube)[k]
            return strip_cube_part(value, n, aux)

        return component

    components = {
        t: tuple(make_component(t, k) for k in range(rho.codim))
        for t in itertools.combinations(range(1, m + 1), n)
    }
    return ClassicalForm(m, n, rho.codim, components)


def integral(omega: MicrocubeForm, cube: Microcube) -> WeilPoint:
    """The element of E tensor W_{D^n} carrying omega(cube) on the top
    monomial d_1...d_n and nothing anywhere else."""
    if omega.degree != cube.degree:
        raise ValueError(
            f"degree mismatch: form has degree {omega.degree}, microcube {cube.degree}"
        )
    alg = cube.algebra
    rest = alg.presentation.num_vars - cube.degree
    top = alg.monomial_element((1,) * cube.degree + (0,) * rest)
    return WeilPoint(alg, [v * top for v in omega(cube)])


def homogeneity_residual(xi: WeilPoint, degree: int) -> float:
    """Largest coefficient off the cube's top monomial."""
    alg = xi.algebra
    off_top = np.array([any(e[v] != 1 for v in range(degree)) for e in alg.basis])
    worst = 0.0
    for c in xi.coords:
        masked = np.abs(np.where(off_top, c.coeffs, 0.0))
        if masked.size:
            worst = max(worst, float(np.max(masked)))
    return worst


def is_n_homogeneous(xi: WeilPoint, degree: int | None = None, tol: float = 1e-12) -> bool:
    """Whether scaling any cube variable scales the element, i.e. only the
    top monomial (times auxiliary monomials) carries weight."""
    if degree is None:
        degree = xi.algebra.presentation.num_vars
    return homogeneity_residual(xi, degree) <= tol


def d0(xi: WeilPoint, degree: int) -> WeilPoint:
    """Drop the part constant in the last cube variable; idempotent."""
    alg = xi.algebra
    keep = np.array([e[degree - 1] != 0 for e in alg.basis])
    return WeilPoint(alg, [WeilElement(alg, np.where(keep, c.coeffs, 0.0)) for c in xi.coords])


def boundary_integral(omega: MicrocubeForm, cube: Microcube, i: int) -> WeilPoint:
    """Integral of omega over face i of an (n+1)-cube, as a D-family.

    Direction i is routed to the last slot, the cube is reread as an
    n-cube whose scalars carry that direction, and the integral is taken
    with those extended scalars.
    """
    if cube.degree != omega.degree + 1:
        raise ValueError(
            f"degree mismatch: form has degree {omega.degree}, "
            f"boundary needs a microcube of degree {omega.degree + 1}, got {cube.degree}"
        )
    transposed = cube.transpose_face(i)
    return integral(omega, transposed.with_degree(omega.degree))


def stokes_sum(omega: MicrocubeForm, cube: Microcube) -> WeilPoint:
    """Alternating sum over faces of the fiber part of the boundary integral."""
    alg = cube.algebra
    acc = [alg.zero() for _ in range(omega.codim)]
    for i in range(1, cube.degree + 1):
        term = d0(boundary_integral(omega, cube, i), cube.degree)
        signto = 1.0 if i % 2 == 1 else -1.0
        acc = [a + t * signto for a, t in zip(acc, term.coords)]
    return WeilPoint(alg, acc)


def _extract_top(element: WeilElement, degree: int) -> WeilElement:
    """Divide by the top cube monomial: its coefficients move to the
    matching cube-free monomials."""
    alg = element.algebra
    coeffs = np.zeros(alg.dim)
    for idx, e in enumerate(alg.basis):
        if all(e[v] == 1 for v in range(degree)):
            target = alg.monomial_index[(0,) * degree + e[degree:]]
            coeffs[target] = element.coeffs[idx]
    return WeilElement(alg, coeffs)


def exterior_derivative(omega: MicrocubeForm, assert_tol: float = 1e-9) -> MicrocubeForm:
    """The unique (n+1)-form whose integral is the alternating face sum.

    Each evaluation asserts that the face sum is concentrated on the top
    monomial before reading its coefficient off; a violation signals a
    non-form input or a numerical fault.
    """

    def evaluator(cube: Microcube) -> list[WeilElement]:
        total = stokes_sum(omega, cube)
        residual = homogeneity_residual(total, cube.degree)
        if residual > assert_tol:
            raise HomogeneityError(
                f"face sum is not homogeneous: off-top residual {residual}"
            )
        return [_extract_top(c, cube.degree) for c in total.coords]

    return MicrocubeForm(omega.degree + 1, omega.dim, omega.codim, evaluator)


# -- JSON documents ---------------------------------------------------------------


def classical_form_to_doc(form: ClassicalForm) -> dict:
    components = {}
    for t, fns in sorted(form.components.items()):
        texts = []
        for fn in fns:
            if not isinstance(fn, Expression):
                raise ValueError("only expression-backed forms serialize")
            texts.append(to_text(fn))
        components[",".join(str(i) for i in t)] = texts
    return {
        "dim": form.dim,
        "degree": form.degree,
        "codim": form.codim,
        "components": components,
    }


def classical_form_from_doc(doc: Mapping) -> ClassicalForm:
    if not isinstance(doc, Mapping):
        raise ValueError("form document must be a JSON object")
    try:
        dim = int(doc["dim"])
        degree = int(doc["degree"])
    except KeyError as exc:
        raise ValueError(f"form document is missing {exc.args[0]!r}") from None
    codim = int(doc.get("codim", 1))
    components = {}
    for key, texts in doc.get("components", {}).items():
        parts = [p for p in key.split(",") if p != ""]
        t = tuple(int(p) for p in parts)
        components[t] = tuple(parse_expression(text) for text in texts)
    return ClassicalForm(dim, degree, codim, components)
