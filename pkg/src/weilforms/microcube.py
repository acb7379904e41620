"""Microcubes: infinitesimal n-dimensional probes of R^m.

A microcube of degree n is a point of R^m tensored with W_{D^n}, possibly
scalar-extended: its algebra is the tensor of the simplicial power D^n
(the first n variables, the cube directions) with an arbitrary auxiliary
Weil algebra (the remaining variables).  The auxiliary block is what lets
a form evaluator act "tensored with an identity", which the exterior
derivative needs when it views a (n+1)-cube as a D-family of n-cubes.

All face and permutation operations are realized as induced morphisms of
the underlying presentations, i.e. substitution on coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .algebra import (
    InfinitesimalPresentation,
    WeilAlgebra,
    WeilElement,
    WeilMorphism,
    algebra_for,
    d_power,
    make_morphism,
    tensor_presentation,
)
from .perms import inverse as perm_inverse
from .prolongation import WeilPoint

__all__ = [
    "Microcube",
    "embed_restriction",
    "embed_aux_element",
    "strip_cube_part",
    "microcube_to_doc",
    "microcube_from_doc",
]


def _cube_presentation(
    total: InfinitesimalPresentation, degree: int, new_degree: int
) -> InfinitesimalPresentation:
    """Same auxiliary block behind a cube block of a different size."""
    shift = degree - new_degree
    bounds = (2,) * new_degree + total.bounds[degree:]
    products = frozenset(tuple(i - shift for i in seq) for seq in total.products)
    return InfinitesimalPresentation(total.num_vars - shift, bounds, products)


@lru_cache(maxsize=None)
def _permutation_morphism(
    presentation: InfinitesimalPresentation, degree: int, sigma: tuple[int, ...]
) -> WeilMorphism:
    alg = algebra_for(presentation)
    images = [alg.generator(sigma[k - 1]) for k in range(1, degree + 1)]
    images += [alg.generator(v) for v in range(degree + 1, presentation.num_vars + 1)]
    return make_morphism(presentation, presentation, images)


@lru_cache(maxsize=None)
def _restriction_morphism(
    presentation: InfinitesimalPresentation, degree: int, i: int
) -> WeilMorphism:
    smaller = _cube_presentation(presentation, degree, degree - 1)
    alg = algebra_for(smaller)
    images = []
    for v in range(1, presentation.num_vars + 1):
        if v == i:
            images.append(alg.zero())
        elif v < i:
            images.append(alg.generator(v))
        else:
            images.append(alg.generator(v - 1))
    return make_morphism(smaller, presentation, images)


@lru_cache(maxsize=None)
def _embedding_morphism(
    presentation: InfinitesimalPresentation, degree: int, i: int
) -> WeilMorphism:
    """From an (n-1)-cube presentation into n cube variables, slot i left empty."""
    larger_bounds = (2,) * (degree + 1) + presentation.bounds[degree:]
    larger_products = frozenset(
        tuple(j + 1 for j in seq) for seq in presentation.products
    )
    larger = InfinitesimalPresentation(
        presentation.num_vars + 1, larger_bounds, larger_products
    )
    alg = algebra_for(larger)
    images = []
    for v in range(1, presentation.num_vars + 1):
        images.append(alg.generator(v) if v < i else alg.generator(v + 1))
    return make_morphism(larger, presentation, images)


class Microcube:
    """An element of R^m tensor W_{D^n} (tensor an auxiliary algebra).

    The first ``degree`` variables of the point's algebra are the cube
    directions; they are simplicial and appear in no vanishing product.
    """

    __slots__ = ("point", "degree")

    def __init__(self, point: WeilPoint, degree: int):
        pres = point.algebra.presentation
        if not 0 <= degree <= pres.num_vars:
            raise ValueError(f"degree {degree} outside 0..{pres.num_vars}")
        if any(k != 2 for k in pres.bounds[:degree]):
            raise ValueError("cube variables must be simplicial (bound 2)")
        if any(seq[0] <= degree for seq in pres.products):
            raise ValueError("cube variables may not occur in vanishing products")
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("Microcube is immutable")

    # -- construction ---------------------------------------------------------

    @classmethod
    def canonical(
        cls,
        x: Sequence,
        vectors: Sequence[Sequence],
        aux: WeilAlgebra | None = None,
    ) -> "Microcube":
        """The degree-one probe i(x; a_1..a_n); entries may be reals or
        elements of the auxiliary algebra."""
        n = len(vectors)
        if aux is None:
            for entry in list(x) + [v for a in vectors for v in a]:
                if isinstance(entry, WeilElement):
                    aux = entry.algebra
                    break
        if aux is None:
            aux = algebra_for(d_power(0))
        total = algebra_for(tensor_presentation(d_power(n), aux.presentation))

        def embed(entry) -> WeilElement:
            if isinstance(entry, WeilElement):
                return embed_aux_element(total, n, entry)
            return total.scalar(float(entry))

        m = len(x)
        coords = []
        for j in range(m):
            c = embed(x[j])
            for i, a in enumerate(vectors, start=1):
                if len(a) != m:
                    raise ValueError("direction vectors must match the base dimension")
                c = c + embed(a[j]) * total.generator(i)
            coords.append(c)
        return cls(WeilPoint(total, coords), n)

    def with_degree(self, degree: int) -> "Microcube":
        """Reinterpret trailing cube variables as auxiliary scalars (or back)."""
        return Microcube(self.point, degree)

    # -- structure -------------------------------------------------------------

    @property
    def algebra(self) -> WeilAlgebra:
        return self.point.algebra

    @property
    def dimension(self) -> int:
        return self.point.dimension

    @property
    def aux_algebra(self) -> WeilAlgebra:
        return algebra_for(_cube_presentation(self.algebra.presentation, self.degree, 0))

    @property
    def base_point(self) -> np.ndarray:
        return self.point.base_point

    def base_parts(self) -> list[WeilElement]:
        """Per coordinate, the part free of every cube variable (an element
        of the total algebra supported on auxiliary monomials)."""
        n = self.degree
        alg = self.algebra
        keep = np.array([all(e[v] == 0 for v in range(n)) for e in alg.basis])
        return [WeilElement(alg, np.where(keep, c.coeffs, 0.0)) for c in self.point.coords]

    def edge_parts(self, i: int) -> list[WeilElement]:
        """Per coordinate, the coefficient of cube variable i, with the cube
        part stripped (again supported on auxiliary monomials)."""
        self._check_position(i)
        n = self.degree
        alg = self.algebra
        out = []
        for c in self.point.coords:
            coeffs = np.zeros(alg.dim)
            for idx, e in enumerate(alg.basis):
                cube = e[:n]
                if cube.count(0) == n - 1 and cube[i - 1] == 1:
                    target = alg.monomial_index[(0,) * n + e[n:]]
                    coeffs[target] = c.coeffs[idx]
            out.append(WeilElement(alg, coeffs))
        return out

    def edge_vector(self, i: int) -> np.ndarray:
        """Real edge vector e_i (the augmentations of the edge parts)."""
        return np.array([e.augmentation for e in self.edge_parts(i)])

    def _check_position(self, i: int):
        if not 1 <= i <= self.degree:
            raise ValueError(f"position {i} outside 1..{self.degree}")

    def max_abs_diff(self, other: "Microcube") -> float:
        return self.point.max_abs_diff(other.point)

    def isclose(self, other: "Microcube", tol: float = 1e-9) -> bool:
        return self.degree == other.degree and self.point.isclose(other.point, tol)

    def __eq__(self, other):
        if not isinstance(other, Microcube):
            return NotImplemented
        return self.degree == other.degree and self.point == other.point

    def __repr__(self):
        return f"Microcube(degree={self.degree}, point={self.point!r})"

    # -- the cube operations ----------------------------------------------------

    def restrict(self, i: int) -> "Microcube":
        """Set the i-th infinitesimal direction to zero and drop it."""
        self._check_position(i)
        phi = _restriction_morphism(self.algebra.presentation, self.degree, i)
        return Microcube(self.point.transform(phi), self.degree - 1)

    def permute(self, sigma: Sequence[int]) -> "Microcube":
        """gamma^sigma; composing permutes in reversed order:
        g.permute(s).permute(t) == g.permute(compose(t, s))."""
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(1, self.degree + 1)):
            raise ValueError(f"{sigma} is not a permutation of 1..{self.degree}")
        phi = _permutation_morphism(self.algebra.presentation, self.degree, sigma)
        return Microcube(self.point.transform(phi), self.degree)

    def transpose_face(self, i: int) -> "Microcube":
        """Route direction i to the last slot, keeping the rest in order."""
        self._check_position(i)
        n = self.degree
        p = tuple(list(range(1, i)) + [n] + list(range(i, n)))
        return self.permute(p)

    def untranspose_face(self, i: int) -> "Microcube":
        return self.permute(perm_inverse(
            tuple(list(range(1, i)) + [self.degree] + list(range(i, self.degree)))
        ))

    def scale_at(self, i: int, alpha: float) -> "Microcube":
        """Multiply every coefficient by alpha^(exponent of direction i)."""
        self._check_position(i)
        alg = self.algebra
        factors = np.array([float(alpha) ** e[i - 1] for e in alg.basis])
        coords = [WeilElement(alg, c.coeffs * factors) for c in self.point.coords]
        return Microcube(WeilPoint(alg, coords), self.degree)

    def add_at(self, other: "Microcube", i: int, tol: float = 1e-9) -> "Microcube":
        """Fiberwise addition over the common i-th restriction."""
        self._check_position(i)
        if self.degree != other.degree or self.dimension != other.dimension:
            raise ValueError("microcubes must share degree and dimension")
        a = self.transpose_face(i)
        b = other.transpose_face(i)
        n = self.degree
        alg = self.algebra
        fiber = np.array([e[n - 1] == 1 for e in alg.basis])
        coords = []
        for ca, cb in zip(a.point.coords, b.point.coords):
            mismatch = np.max(np.abs(np.where(fiber, 0.0, ca.coeffs - cb.coeffs)))
            if mismatch > tol:
                raise ValueError(
                    f"restrictions at position {i} differ by {mismatch}, "
                    f"beyond tolerance {tol}"
                )
            coords.append(WeilElement(alg, np.where(fiber, ca.coeffs + cb.coeffs, ca.coeffs)))
        summed = Microcube(WeilPoint(alg, coords), n)
        return summed.untranspose_face(i)


def embed_restriction(eta: Microcube, i: int) -> Microcube:
    """Extend an (n-1)-cube back to degree n with a zero fiber in slot i."""
    if not 1 <= i <= eta.degree + 1:
        raise ValueError(f"position {i} outside 1..{eta.degree + 1}")
    phi = _embedding_morphism(eta.algebra.presentation, eta.degree, i)
    return Microcube(eta.point.transform(phi), eta.degree + 1)


def embed_aux_element(total: WeilAlgebra, degree: int, element: WeilElement) -> WeilElement:
    """View an element of the auxiliary algebra inside the total algebra."""
    coeffs = np.zeros(total.dim)
    for e, v in zip(element.algebra.basis, element.coeffs):
        if v != 0.0:
            coeffs[total.monomial_index[(0,) * degree + e]] = v
    return WeilElement(total, coeffs)


def strip_cube_part(
    element: WeilElement, degree: int, aux: WeilAlgebra
) -> WeilElement:
    """Project a cube-variable-free element of the total algebra onto the
    auxiliary algebra."""
    coeffs = np.zeros(aux.dim)
    for e, v in zip(element.algebra.basis, element.coeffs):
        if v == 0.0:
            continue
        if any(e[k] != 0 for k in range(degree)):
            raise ValueError("element is not free of the cube variables")
        coeffs[aux.monomial_index[e[degree:]]] = v
    return WeilElement(aux, coeffs)


# -- JSON documents (plain microcubes, no auxiliary block) ----------------------


def microcube_to_doc(cube: Microcube) -> dict:
    if cube.algebra.presentation != d_power(cube.degree):
        raise ValueError("only plain microcubes (no auxiliary block) serialize")
    n = cube.degree
    doc: dict = {
        "base": [float(v) for v in cube.base_point],
        "edges": [[float(v) for v in cube.edge_vector(i)] for i in range(1, n + 1)],
    }
    higher = {}
    for idx, e in enumerate(cube.algebra.basis):
        if sum(e) < 2:
            continue
        column = [float(c.coeffs[idx]) for c in cube.point.coords]
        if any(v != 0.0 for v in column):
            higher[",".join(str(x) for x in e)] = column
    if higher:
        doc["higher"] = higher
    return doc


def microcube_from_doc(doc: Mapping) -> Microcube:
    if not isinstance(doc, Mapping) or "base" not in doc or "edges" not in doc:
        raise ValueError("microcube document needs 'base' and 'edges' fields")
    base = [float(v) for v in doc["base"]]
    edges = [[float(v) for v in row] for row in doc["edges"]]
    m = len(base)
    n = len(edges)
    for row in edges:
        if len(row) != m:
            raise ValueError("each edge vector must match the base dimension")
    alg = algebra_for(d_power(n))
    columns = {e: np.zeros(m) for e in alg.basis}
    columns[(0,) * n] = np.array(base)
    for i, row in enumerate(edges):
        e = [0] * n
        e[i] = 1
        columns[tuple(e)] = np.array(row)
    for key, column in (doc.get("higher") or {}).items():
        e = tuple(int(p) for p in key.split(","))
        if e not in alg.monomial_index or sum(e) < 2:
            raise ValueError(f"bad higher-monomial key {key!r}")
        if len(column) != m:
            raise ValueError(f"higher coefficients for {key!r} must have length {m}")
        columns[e] = np.array([float(v) for v in column])
    coords = []
    for j in range(m):
        coeffs = np.zeros(alg.dim)
        for e, column in columns.items():
            coeffs[alg.monomial_index[e]] = column[j]
        coords.append(WeilElement(alg, coeffs))
    return Microcube(WeilPoint(alg, coords), n)
