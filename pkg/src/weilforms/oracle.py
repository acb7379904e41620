"""Independent ground truth for the geometric exterior derivative.

classical_d applies the textbook coordinate formula by symbolic partial
differentiation of the component expressions; finite_difference_d is a
second, derivative-free route.  run_suite drives the registered law
checkers with reproducible per-sample random streams.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .expr import Const, Expression, differentiate
from .expr import _add, _neg, _sub  # smart constructors, shared folding
from .forms import ClassicalForm

__all__ = [
    "classical_d",
    "vector_calculus_views",
    "finite_difference_d",
    "CheckReport",
    "run_suite",
]


def _expression_components(form: ClassicalForm) -> dict:
    for t, fns in form.components.items():
        for fn in fns:
            if not isinstance(fn, Expression):
                raise TypeError(
                    "classical_d needs expression-backed components "
                    f"(tuple {t} carries a callable)"
                )
    return dict(form.components)


def classical_d(form: ClassicalForm) -> ClassicalForm:
    """(d omega)_{j0<..<jn} = sum_t (-1)^t d/dx_{j_t} omega_{j0<..^jt..<jn}."""
    comps = _expression_components(form)
    out = {}
    for big in itertools.combinations(range(1, form.dim + 1), form.degree + 1):
        acc = [Const(0.0)] * form.codim
        for t in range(len(big)):
            sub = big[:t] + big[t + 1 :]
            fns = comps.get(sub)
            if fns is None:
                continue
            for k, fn in enumerate(fns):
                term = differentiate(fn, big[t])
                acc[k] = _add(acc[k], term) if t % 2 == 0 else _sub(acc[k], term)
        if any(not (isinstance(a, Const) and a.value == 0.0) for a in acc):
            out[big] = tuple(acc)
    return ClassicalForm(form.dim, form.degree + 1, form.codim, out)


def vector_calculus_views(form: ClassicalForm) -> dict:
    """grad, curl or div of a scalar form on R^3, read off classical_d."""
    if form.dim != 3 or form.codim != 1:
        raise ValueError("vector calculus views need a scalar-valued form on R^3")
    d = classical_d(form)

    def comp(t):
        fns = d.components.get(t)
        return fns[0] if fns else Const(0.0)

    if form.degree == 0:
        return {"grad": [comp((1,)), comp((2,)), comp((3,))]}
    if form.degree == 1:
        return {"curl": [comp((2, 3)), _neg(comp((1, 3))), comp((1, 2))]}
    if form.degree == 2:
        return {"div": comp((1, 2, 3))}
    raise ValueError(f"no vector calculus view for degree {form.degree}")


def finite_difference_d(
    form: ClassicalForm,
    x: Sequence[float],
    vectors: Sequence[Sequence[float]],
    h: float = 1e-4,
) -> np.ndarray:
    """Central-difference evaluation of the alternating derivative sum."""
    if h <= 0:
        raise ValueError("step size must be positive")
    if len(vectors) != form.degree + 1:
        raise ValueError(f"need {form.degree + 1} vectors, got {len(vectors)}")
    x = np.asarray(x, dtype=float)
    out = np.zeros(form.codim)
    for i, a in enumerate(vectors):
        a = np.asarray(a, dtype=float)
        rest = [np.asarray(v, dtype=float) for j, v in enumerate(vectors) if j != i]
        plus = form.evaluate(x + h * a, rest)
        minus = form.evaluate(x - h * a, rest)
        out += ((-1.0) ** i) * (plus - minus) / (2.0 * h)
    return out


@dataclass(frozen=True)
class CheckReport:
    law: str
    samples: int
    max_dev: float
    passed: bool
    seed: int

    def to_doc(self) -> dict:
        return {
            "law": self.law,
            "samples": self.samples,
            "max_dev": float(self.max_dev),
            "pass": self.passed,
            "seed": self.seed,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_doc())


def run_suite(
    law_names: Sequence[str] | None = None,
    seed: int = 42,
    samples: int = 100,
    tolerance: float = 1e-8,
) -> list[CheckReport]:
    """Run registered laws; deterministic for a fixed seed and configuration."""
    from . import laws as laws_module

    if law_names is None:
        law_names = list(laws_module.LAWS)
    reports = []
    for name in law_names:
        try:
            fn = laws_module.LAWS[name]
        except KeyError:
            raise ValueError(
                f"unknown law {name!r}; known: {', '.join(laws_module.LAWS)}"
            ) from None
        max_dev = fn(seed, samples)
        reports.append(CheckReport(name, samples, max_dev, max_dev <= tolerance, seed))
    return reports
