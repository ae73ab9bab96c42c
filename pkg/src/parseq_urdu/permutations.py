"""Factorization orders over target slots and the attention masks they imply."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import tensor as T
from .errors import ShapeMismatch


@dataclass(frozen=True)
class Permutation:
    """``order[s]`` is the position predicted at step s; ``rank`` is its inverse."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError(f"not a permutation: {self.order}")

    @property
    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.order)
        for step, pos in enumerate(self.order):
            r[pos] = step
        return tuple(r)

    def __len__(self) -> int:
        return len(self.order)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def reversal(cls, n: int) -> Permutation:
        return cls(tuple(range(n - 1, -1, -1)))

    def padded(self, n: int) -> Permutation:
        """Extend to n slots; the extra slots come last and are never visible to real ones."""
        return Permutation(self.order + tuple(range(len(self.order), n)))


@dataclass(frozen=True)
class MaskPair:
    content_mask: np.ndarray
    query_mask: np.ndarray


def sample_permutations(length: int, k: int, rng: np.random.Generator) -> list[Permutation]:
    """K orders over ``length`` slots: identity, then reversal, then random draws.

    The random draws avoid repeats (including the two fixed orders) whenever
    enough distinct permutations exist, and fall back to independent uniform
    draws otherwise.
    """
    if length < 1 or k < 1:
        raise ValueError(f"need length >= 1 and k >= 1, got {length}, {k}")
    perms = [Permutation.identity(length)]
    if k >= 2:
        perms.append(Permutation.reversal(length))
    extra = k - len(perms)
    if extra <= 0:
        return perms
    taken = {p.order for p in perms}
    distinct = math.factorial(length) - len(taken) >= extra
    while len(perms) < k:
        cand = tuple(int(i) for i in rng.permutation(length))
        if distinct and cand in taken:
            continue
        taken.add(cand)
        perms.append(Permutation(cand))
    return perms


def masks_from_permutation(p: Permutation) -> MaskPair:
    """content_mask[i, j] is True iff slot j is predicted before slot i."""
    rank = np.asarray(p.rank)
    mask = rank[None, :] < rank[:, None]
    return MaskPair(content_mask=mask, query_mask=mask.copy())


def plm_loss(logit_sets: Sequence[T.Tensor], targets, ignore_index: int = 0) -> T.Tensor:
    """Mean over the K permutation passes of the per-pass cross-entropy."""
    if not logit_sets:
        raise ShapeMismatch("plm_loss needs at least one logit set")
    dims = logit_sets[0].dims
    for logits in logit_sets:
        if logits.dims != dims:
            raise ShapeMismatch(f"plm_loss: logit sets differ in shape ({logits.dims} vs {dims})")
    return T.mean_of([T.softmax_ce(lg, targets, ignore_index) for lg in logit_sets])
