"""Permutation utilities for alternating forms.

Permutations are 1-based tuples: sigma[k-1] is sigma(k).
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

__all__ = ["identity_perm", "sign", "compose", "inverse", "face_residual", "all_perms"]


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def sign(sigma: Sequence[int]) -> int:
    """Parity by inversion count."""
    s = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                s = -s
    return s


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma o tau)(k) = sigma(tau(k))."""
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(sigma)
    for k, v in enumerate(sigma, start=1):
        out[v - 1] = k
    return tuple(out)


def face_residual(sigma: Sequence[int], i: int) -> tuple[int, ...]:
    """Permutation of 1..n left on a cube's remaining slots after routing
    face i of a sigma-permuted (n+1)-cube to the last position.

    Drops the slot j = sigma^{-1}(i) and renumbers values above i down by
    one, so the result is a genuine permutation of 1..n.
    """
    n1 = len(sigma)
    j = sigma.index(i) + 1
    values = [sigma[k - 1] for k in range(1, n1 + 1) if k != j]
    return tuple(v - 1 if v > i else v for v in values)


def all_perms(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))
