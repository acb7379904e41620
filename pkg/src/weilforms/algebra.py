"""Finite-dimensional Weil algebras presented by monomial ideals.

A presentation lists, for each variable x_i, a power bound x_i^k_i = 0
(k_i >= 2) together with a set of square-free vanishing products
x_{i1}*...*x_{ik} = 0.  The quotient R[x_1..x_n]/I is finite dimensional
with the standard monomials (those divisible by no ideal generator) as a
basis, ordered graded-lexicographically with the constant monomial first.
Elements are dense float coefficient vectors over that basis; products
are driven by a cached monomial index table, so every non-standard
monomial is annihilated structurally rather than numerically.
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "InfinitesimalPresentation",
    "WeilAlgebra",
    "WeilElement",
    "WeilMorphism",
    "MorphismError",
    "algebra_for",
    "make_weil_algebra",
    "make_morphism",
    "identity_morphism",
    "compose_morphisms",
    "combine_morphisms",
    "oplus",
    "tensor",
    "tensor_presentation",
    "d_order",
    "d_power",
    "d_pairwise",
    "presentation_to_doc",
    "presentation_from_doc",
    "element_to_doc",
    "element_from_doc",
]


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class InfinitesimalPresentation:
    """Monomial-ideal presentation of an infinitesimal object.

    ``num_vars`` first-order coordinates, each with ``bounds[i-1]`` the
    exponent at which it vanishes, plus ``products``: strictly increasing
    1-based index tuples whose coordinate product vanishes.  The classical
    objects are ``d_order(1)`` (dual numbers, d^2 = 0), ``d_order(2)``
    (d^3 = 0), ``d_power(n)`` and ``d_pairwise(n)``.

    Equality and hashing go through the minimal generating set of the
    ideal, which is the unique normal form of a monomial ideal, so two
    presentations are equal exactly when they present the same quotient.
    """

    num_vars: int
    bounds: tuple[int, ...] = ()
    products: frozenset[tuple[int, ...]] = frozenset()

    def __post_init__(self):
        n = int(self.num_vars)
        if n < 0:
            raise ValueError("number of variables must be nonnegative")
        object.__setattr__(self, "num_vars", n)
        bounds = tuple(self.bounds)
        if len(bounds) != n:
            raise ValueError(
                f"need one degree bound per variable: got {len(bounds)} bounds "
                f"for {n} variables"
            )
        checked = []
        for i, k in enumerate(bounds, start=1):
            if not isinstance(k, numbers.Integral) or isinstance(k, bool) or k < 2:
                raise ValueError(
                    f"variable {i} has no finite degree bound >= 2 "
                    "(the quotient would be infinite dimensional)"
                )
            checked.append(int(k))
        object.__setattr__(self, "bounds", tuple(checked))
        prods = set()
        for seq in self.products:
            t = tuple(int(i) for i in seq)
            if not t:
                raise ValueError("vanishing product must name at least one variable")
            if any(t[j] >= t[j + 1] for j in range(len(t) - 1)):
                raise ValueError(f"vanishing product {t} is not strictly increasing")
            if t[0] < 1 or t[-1] > n:
                raise ValueError(f"vanishing product {t} indexes outside 1..{n}")
            prods.add(t)
        object.__setattr__(self, "products", frozenset(prods))

    @cached_property
    def minimal_generators(self) -> frozenset[tuple[int, ...]]:
        """Minimal monomial generating set of the ideal, as exponent vectors."""
        gens = set()
        for i, k in enumerate(self.bounds):
            e = [0] * self.num_vars
            e[i] = k
            gens.add(tuple(e))
        for seq in self.products:
            e = [0] * self.num_vars
            for i in seq:
                e[i - 1] = 1
            gens.add(tuple(e))
        return frozenset(
            g for g in gens if not any(h != g and _divides(h, g) for h in gens)
        )

    @property
    def is_simplicial(self) -> bool:
        return all(k == 2 for k in self.bounds)

    def __eq__(self, other):
        if not isinstance(other, InfinitesimalPresentation):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.minimal_generators == other.minimal_generators
        )

    def __hash__(self):
        return hash((self.num_vars, self.minimal_generators))

    def __repr__(self):
        prods = sorted(self.products)
        return (
            f"InfinitesimalPresentation({self.num_vars}, {self.bounds!r}, "
            f"products={prods!r})"
        )


def d_order(r: int) -> InfinitesimalPresentation:
    """The object of r-th order nilpotents {d | d^(r+1) = 0}; d_order(1) is D."""
    if r < 1:
        raise ValueError("order must be at least 1")
    return InfinitesimalPresentation(1, (r + 1,))


def d_power(n: int) -> InfinitesimalPresentation:
    """The simplicial power D^n (no vanishing products); d_power(0) is R."""
    return InfinitesimalPresentation(n, (2,) * n)


def d_pairwise(n: int) -> InfinitesimalPresentation:
    """D(n): first-order coordinates with all pairwise products vanishing."""
    pairs = frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return InfinitesimalPresentation(n, (2,) * n, pairs)


def oplus(
    p: InfinitesimalPresentation, q: InfinitesimalPresentation
) -> InfinitesimalPresentation:
    """Combine simplicial objects, adding every cross-block vanishing pair."""
    if not (p.is_simplicial and q.is_simplicial):
        raise ValueError("oplus is defined for simplicial presentations only")
    m, n = p.num_vars, q.num_vars
    prods = set(p.products)
    prods.update(tuple(j + m for j in seq) for seq in q.products)
    prods.update((i, j + m) for i in range(1, m + 1) for j in range(1, n + 1))
    return InfinitesimalPresentation(m + n, (2,) * (m + n), frozenset(prods))


def tensor_presentation(
    p: InfinitesimalPresentation, q: InfinitesimalPresentation
) -> InfinitesimalPresentation:
    """Presentation of the tensor product: disjoint variables, both ideals."""
    m = p.num_vars
    prods = set(p.products)
    prods.update(tuple(j + m for j in seq) for seq in q.products)
    return InfinitesimalPresentation(m + q.num_vars, p.bounds + q.bounds, frozenset(prods))


class WeilAlgebra:
    """The quotient algebra of a presentation, with its standard-monomial basis.

    >>> W = WeilAlgebra(d_order(2))      # R[x]/(x^3)
    >>> W.dim, W.basis
    (3, ((0,), (1,), (2,)))
    """

    def __init__(self, presentation: InfinitesimalPresentation):
        self.presentation = presentation
        prods = sorted(presentation.products)
        basis = []
        for exps in itertools.product(*(range(k) for k in presentation.bounds)):
            if any(all(exps[i - 1] >= 1 for i in seq) for seq in prods):
                continue
            basis.append(exps)
        basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
        self.basis: tuple[tuple[int, ...], ...] = tuple(basis)
        self.monomial_index: dict[tuple[int, ...], int] = {
            e: i for i, e in enumerate(self.basis)
        }
        self.dim = len(self.basis)
        self.nilpotency_index = max(sum(e) for e in self.basis)

    @cached_property
    def _mul_table(self) -> np.ndarray:
        # (dim, dim) index table; entries equal to dim mean the product
        # monomial is annihilated in the quotient.
        table = np.full((self.dim, self.dim), self.dim, dtype=np.intp)
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                if j < i:
                    continue
                s = tuple(x + y for x, y in zip(a, b))
                idx = self.monomial_index.get(s)
                if idx is not None:
                    table[i, j] = idx
                    table[j, i] = idx
        return table

    # -- element factories -------------------------------------------------

    def element(self, coeffs: Iterable[float]) -> "WeilElement":
        return WeilElement(self, coeffs)

    def zero(self) -> "WeilElement":
        return WeilElement(self, np.zeros(self.dim))

    def one(self) -> "WeilElement":
        return self.scalar(1.0)

    def scalar(self, value: float) -> "WeilElement":
        c = np.zeros(self.dim)
        c[0] = value
        return WeilElement(self, c)

    def generator(self, i: int) -> "WeilElement":
        """The class of x_i (1-based); zero if x_i is already in the ideal."""
        if not 1 <= i <= self.presentation.num_vars:
            raise ValueError(f"generator index {i} outside 1..{self.presentation.num_vars}")
        e = [0] * self.presentation.num_vars
        e[i - 1] = 1
        return self.monomial_element(tuple(e))

    def monomial_element(self, exponents: tuple[int, ...]) -> "WeilElement":
        c = np.zeros(self.dim)
        idx = self.monomial_index.get(tuple(exponents))
        if idx is not None:
            c[idx] = 1.0
        return WeilElement(self, c)

    def from_coeff_map(self, coeffs: Mapping[tuple[int, ...], float]) -> "WeilElement":
        c = np.zeros(self.dim)
        for e, v in coeffs.items():
            idx = self.monomial_index.get(tuple(e))
            if idx is None:
                raise ValueError(f"monomial {tuple(e)} is not a standard monomial")
            c[idx] += v
        return WeilElement(self, c)

    # -- structure ----------------------------------------------------------

    def monomial_str(self, exponents: tuple[int, ...]) -> str:
        parts = []
        single = self.presentation.num_vars == 1
        for i, e in enumerate(exponents, start=1):
            if e == 0:
                continue
            name = "x" if single else f"x{i}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return self is other or self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return f"WeilAlgebra(dim={self.dim}, presentation={self.presentation!r})"


# the documented constructor name for the operation
make_weil_algebra = WeilAlgebra


@lru_cache(maxsize=None)
def algebra_for(presentation: InfinitesimalPresentation) -> WeilAlgebra:
    """Shared algebra instance per presentation (presentations hash by normal form)."""
    return WeilAlgebra(presentation)


def tensor(w1: WeilAlgebra, w2: WeilAlgebra) -> WeilAlgebra:
    """Tensor product of Weil algebras, second block's variables shifted."""
    return algebra_for(tensor_presentation(w1.presentation, w2.presentation))


class WeilElement:
    """A coefficient vector over the standard-monomial basis of its algebra.

    Immutable; all arithmetic returns fresh elements.  Scalars mix freely:
    ``1 + 3 * W.generator(1)`` is the dual number 1 + 3x.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: WeilAlgebra, coeffs: Iterable[float]):
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (algebra.dim,):
            raise ValueError(
                f"coefficient vector has shape {arr.shape}, algebra dimension is {algebra.dim}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("WeilElement is immutable")

    # -- ring structure ------------------------------------------------------

    def _check_same(self, other: "WeilElement"):
        if not (self.algebra is other.algebra or self.algebra == other.algebra):
            raise ValueError("algebra mismatch between operands")

    def __add__(self, other):
        if isinstance(other, WeilElement):
            self._check_same(other)
            return WeilElement(self.algebra, self.coeffs + other.coeffs)
        if isinstance(other, numbers.Real):
            c = self.coeffs.copy()
            c[0] += float(other)
            return WeilElement(self.algebra, c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return WeilElement(self.algebra, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, WeilElement):
            self._check_same(other)
            return WeilElement(self.algebra, self.coeffs - other.coeffs)
        if isinstance(other, numbers.Real):
            c = self.coeffs.copy()
            c[0] -= float(other)
            return WeilElement(self.algebra, c)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, WeilElement):
            self._check_same(other)
            alg = self.algebra
            table = alg._mul_table
            out = np.zeros(alg.dim + 1)
            np.add.at(out, table, np.outer(self.coeffs, other.coeffs))
            return WeilElement(alg, out[: alg.dim])
        if isinstance(other, numbers.Real):
            return WeilElement(self.algebra, self.coeffs * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral) or isinstance(n, bool):
            raise TypeError("exponent must be an integer")
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "WeilElement":
        """Geometric-series inverse; requires nonzero augmentation."""
        c = self.augmentation
        if c == 0.0:
            raise ZeroDivisionError("element with zero augmentation is not invertible")
        nu = self - c
        ratio = nu * (-1.0 / c)
        acc = self.algebra.one()
        power = self.algebra.one()
        for _ in range(self.algebra.nilpotency_index):
            power = power * ratio
            acc = acc + power
        return acc * (1.0 / c)

    def __truediv__(self, other):
        if isinstance(other, WeilElement):
            return self * other.inverse()
        if isinstance(other, numbers.Real):
            if float(other) == 0.0:
                raise ZeroDivisionError("division by zero scalar")
            return self * (1.0 / float(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Real):
            return self.inverse() * float(other)
        return NotImplemented

    # -- inspection -----------------------------------------------------------

    @property
    def augmentation(self) -> float:
        return float(self.coeffs[0])

    def nilpotent_part(self) -> "WeilElement":
        return self - self.augmentation

    def coefficient(self, exponents: tuple[int, ...]) -> float:
        idx = self.algebra.monomial_index.get(tuple(exponents))
        return float(self.coeffs[idx]) if idx is not None else 0.0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.algebra.dim else 0.0

    def max_abs_diff(self, other: "WeilElement") -> float:
        self._check_same(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def isclose(self, other: "WeilElement", tol: float = 1e-9) -> bool:
        return self.max_abs_diff(other) <= tol

    def to_coeff_map(self) -> dict[tuple[int, ...], float]:
        return {
            e: float(c)
            for e, c in zip(self.algebra.basis, self.coeffs)
            if c != 0.0
        }

    def __eq__(self, other):
        if not isinstance(other, WeilElement):
            return NotImplemented
        return self.algebra == other.algebra and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __str__(self):
        parts = []
        for e, c in zip(self.algebra.basis, self.coeffs):
            if c == 0.0:
                continue
            mono = self.algebra.monomial_str(e)
            if mono == "1":
                parts.append(f"{c:g}")
            elif c == 1.0:
                parts.append(mono)
            elif c == -1.0:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c:g}*{mono}")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def __repr__(self):
        return f"WeilElement({self})"


class MorphismError(ValueError):
    """Raised when putative substitution data fails the well-definedness check."""


@dataclass(frozen=True, eq=False)
class WeilMorphism:
    """Morphism of infinitesimal objects, stored as contravariant substitution.

    The putative map goes ``domain_object -> codomain_object``; the induced
    algebra homomorphism W_codomain -> W_domain sends the j-th codomain
    generator to ``generator_images[j-1]``, an element of the domain algebra
    with zero augmentation.
    """

    domain_object: InfinitesimalPresentation
    codomain_object: InfinitesimalPresentation
    generator_images: tuple[WeilElement, ...]
    domain_algebra: WeilAlgebra

    @cached_property
    def codomain_algebra(self) -> WeilAlgebra:
        return algebra_for(self.codomain_object)

    @cached_property
    def matrix(self) -> np.ndarray:
        # row per codomain basis monomial: its image's coefficients
        rows = []
        for e in self.codomain_algebra.basis:
            val = self.domain_algebra.one()
            for j, exp in enumerate(e):
                if exp:
                    val = val * self.generator_images[j] ** exp
            rows.append(val.coeffs)
        return np.array(rows)

    def apply(self, element: WeilElement) -> WeilElement:
        if not element.algebra == self.codomain_algebra:
            raise ValueError("element does not live in the morphism's codomain algebra")
        return WeilElement(self.domain_algebra, element.coeffs @ self.matrix)

    def __repr__(self):
        images = ", ".join(str(img) for img in self.generator_images)
        return f"WeilMorphism({self.domain_object!r} -> {self.codomain_object!r}; [{images}])"


def make_morphism(
    dom: InfinitesimalPresentation,
    cod: InfinitesimalPresentation,
    images: Sequence[WeilElement],
) -> WeilMorphism:
    """Build and check the morphism dom -> cod with the given generator images.

    Raises MorphismError when some ideal generator of the codomain object does
    not map to zero, naming the offending monomial.
    """
    images = tuple(images)
    if len(images) != cod.num_vars:
        raise ValueError(
            f"need {cod.num_vars} generator images, got {len(images)}"
        )
    if images:
        dom_alg = images[0].algebra
        if not dom_alg.presentation == dom:
            raise ValueError("generator images do not live over the domain algebra")
        for img in images[1:]:
            if not img.algebra == dom_alg:
                raise ValueError("generator images live over different algebras")
    else:
        dom_alg = algebra_for(dom)
    for j, img in enumerate(images, start=1):
        if img.augmentation != 0.0:
            raise MorphismError(
                f"image of generator {j} has nonzero augmentation {img.augmentation}"
            )
    cod_alg = algebra_for(cod)
    for gen in sorted(cod.minimal_generators):
        val = dom_alg.one()
        for j, exp in enumerate(gen):
            if exp:
                val = val * images[j] ** exp
        if val.max_abs() != 0.0:
            raise MorphismError(
                f"not well defined: generator monomial {cod_alg.monomial_str(gen)} "
                f"maps to {val}, not 0"
            )
    return WeilMorphism(dom, cod, images, dom_alg)


def identity_morphism(p: InfinitesimalPresentation) -> WeilMorphism:
    alg = algebra_for(p)
    return make_morphism(p, p, [alg.generator(i) for i in range(1, p.num_vars + 1)])


def compose_morphisms(outer: WeilMorphism, inner: WeilMorphism) -> WeilMorphism:
    """Composite of putative maps: inner A -> B, then outer B -> C, giving A -> C."""
    if not outer.domain_object == inner.codomain_object:
        raise ValueError("morphisms do not compose: object mismatch")
    images = [inner.apply(img) for img in outer.generator_images]
    return make_morphism(inner.domain_object, outer.codomain_object, images)


def combine_morphisms(morphisms: Sequence[WeilMorphism]) -> WeilMorphism:
    """The unique morphism on the oplus of the domains restricting to each part.

    Each codomain generator's image is the sum of the per-factor images,
    embedded in disjoint variable blocks of the combined domain.
    """
    morphisms = list(morphisms)
    if not morphisms:
        raise ValueError("need at least one morphism")
    if len(morphisms) == 1:
        return morphisms[0]
    cod = morphisms[0].codomain_object
    for phi in morphisms[1:]:
        if not phi.codomain_object == cod:
            raise ValueError("combined morphisms must share their codomain object")
    combined = morphisms[0].domain_object
    for phi in morphisms[1:]:
        combined = oplus(combined, phi.domain_object)
    combined_alg = algebra_for(combined)
    offsets = []
    total = 0
    for phi in morphisms:
        offsets.append(total)
        total += phi.domain_object.num_vars
    images = []
    for j in range(cod.num_vars):
        acc = combined_alg.zero()
        for phi, off in zip(morphisms, offsets):
            embed = make_morphism(
                combined,
                phi.domain_object,
                [combined_alg.generator(off + k) for k in range(1, phi.domain_object.num_vars + 1)],
            )
            acc = acc + embed.apply(phi.generator_images[j])
        images.append(acc)
    return make_morphism(combined, cod, images)


def block_inclusion(
    parts: Sequence[InfinitesimalPresentation], index: int
) -> WeilMorphism:
    """Inclusion of the index-th block (1-based) into the oplus of the parts."""
    combined = parts[0]
    for p in parts[1:]:
        combined = oplus(combined, p)
    offset = sum(p.num_vars for p in parts[: index - 1])
    part = parts[index - 1]
    part_alg = algebra_for(part)
    images = []
    for v in range(1, combined.num_vars + 1):
        if offset < v <= offset + part.num_vars:
            images.append(part_alg.generator(v - offset))
        else:
            images.append(part_alg.zero())
    return make_morphism(part, combined, images)


# -- JSON documents -----------------------------------------------------------


def presentation_to_doc(p: InfinitesimalPresentation) -> dict:
    return {
        "vars": p.num_vars,
        "bounds": list(p.bounds),
        "products": sorted(list(seq) for seq in p.products),
    }


def presentation_from_doc(doc: Mapping) -> InfinitesimalPresentation:
    if not isinstance(doc, Mapping):
        raise ValueError("presentation document must be a JSON object")
    try:
        num_vars = doc["vars"]
        bounds = doc["bounds"]
    except KeyError as exc:
        raise ValueError(f"presentation document is missing {exc.args[0]!r}") from None
    products = doc.get("products", [])
    return InfinitesimalPresentation(
        num_vars, tuple(bounds), frozenset(tuple(seq) for seq in products)
    )


def _exponent_key(exponents: tuple[int, ...]) -> str:
    return ",".join(str(e) for e in exponents)


def element_to_doc(element: WeilElement) -> dict:
    coeffs = {
        _exponent_key(e): float(c)
        for e, c in zip(element.algebra.basis, element.coeffs)
        if c != 0.0
    }
    return {"coeffs": coeffs}


def element_from_doc(algebra: WeilAlgebra, doc: Mapping) -> WeilElement:
    if not isinstance(doc, Mapping) or "coeffs" not in doc:
        raise ValueError("element document must be an object with a 'coeffs' field")
    coeffs = {}
    for key, value in doc["coeffs"].items():
        parts = key.split(",") if key else []
        if key and parts == [""]:
            parts = []
        exponents = tuple(int(p) for p in parts if p != "")
        if len(exponents) != algebra.presentation.num_vars:
            raise ValueError(
                f"exponent key {key!r} has {len(exponents)} entries, "
                f"algebra has {algebra.presentation.num_vars} variables"
            )
        coeffs[exponents] = float(value)
    return algebra.from_coeff_map(coeffs)
