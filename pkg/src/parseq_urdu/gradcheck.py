"""Central finite-difference checks for every differentiable op.

The relative error of a check is ||analytic - numeric|| / max(||analytic||, ||numeric||)
over the checked entries.  Non-scalar ops are reduced to a scalar through a
fixed random projection so that every output entry contributes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import tensor as T
from .tensor import Tensor

OP_TOL = 1e-4
END_TO_END_TOL = 1e-3


@dataclass
class CheckResult:
    name: str
    rel_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.rel_error)) and self.rel_error < self.tol


def numeric_grad(f: Callable[[], float], x: np.ndarray, eps: float = 1e-5,
                 indices: Sequence[tuple] | None = None) -> np.ndarray:
    """Central differences of f with respect to x (perturbed in place)."""
    grad = np.zeros_like(x)
    idx_iter = indices if indices is not None else list(np.ndindex(x.shape))
    for idx in idx_iter:
        old = x[idx]
        x[idx] = old + eps
        fp = f()
        x[idx] = old - eps
        fm = f()
        x[idx] = old
        grad[idx] = (fp - fm) / (2 * eps)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    denom = max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-300)
    return float(np.linalg.norm(analytic - numeric) / denom)


def check(fn: Callable[..., Tensor], inputs: Sequence[Tensor], eps: float = 1e-5,
          seed: int = 0, indices: dict | None = None) -> float:
    """Worst relative error over inputs that require grad.

    ``fn(*inputs)`` may return any shape; it is projected onto a fixed random
    direction to get a scalar.  ``indices`` optionally maps input position to
    the entries to check (for large tensors).
    """
    rng = np.random.default_rng(seed)
    with T.no_grad():
        probe = fn(*inputs)
    proj = rng.standard_normal(probe.dims) if probe.data.size > 1 else None

    def scalar():
        out = fn(*inputs)
        return out if proj is None else T.weighted_sum(out, proj)

    for x in inputs:
        x.zero_grad()
    scalar().backward()
    worst = 0.0
    for i, x in enumerate(inputs):
        if not x.requires_grad:
            continue
        sel = None if indices is None else indices.get(i)

        def f():
            with T.no_grad():
                return scalar().item()

        num = numeric_grad(f, x.data, eps, sel)
        ana = x.grad if x.grad is not None else np.zeros_like(x.data)
        if sel is not None:
            rows = tuple(np.array(ix) for ix in zip(*sel))
            num, ana = num[rows], ana[rows]
        worst = max(worst, relative_error(ana, num))
    return worst


def _p(rng, *dims, requires_grad=True):
    return Tensor(rng.standard_normal(dims), requires_grad=requires_grad)


def op_checks(seed: int = 0) -> list[CheckResult]:
    """Per-op checks at randomized toy shapes."""
    rng = np.random.default_rng(seed)
    out = []

    def run(name, fn, *inputs):
        out.append(CheckResult(name, check(fn, inputs, seed=seed), OP_TOL))

    m, k, n = rng.integers(1, 5, size=3)
    run("matmul", T.matmul, _p(rng, m, k), _p(rng, k, n))
    run("add", T.add, _p(rng, 2, 3), _p(rng, 2, 3))
    run("add_bias", T.add_bias, _p(rng, 2, 3, 4), _p(rng, 3, 4))
    run("scale", lambda x: T.scale(x, -1.7), _p(rng, 3, 2))
    run("repeat", lambda x: T.repeat(x, 3), _p(rng, 2, 3))
    run("reshape", lambda x: T.reshape(x, (3, 4)), _p(rng, 2, 6))
    run("gelu", T.gelu, _p(rng, 3, 5))
    run("layernorm", T.layernorm, _p(rng, 2, 3, 6), _p(rng, 6), _p(rng, 6))
    table = _p(rng, 7, 4)
    ids = rng.integers(0, 7, size=(2, 5))
    run("embedding", lambda t: T.embedding(t, ids), table)
    keep_rng_seed = int(rng.integers(1 << 30))
    run("dropout", lambda x: T.dropout(x, 0.3, np.random.default_rng(keep_rng_seed)), _p(rng, 4, 5))
    targets = rng.integers(0, 5, size=3)
    targets[1] = 0  # one ignored (PAD) row
    run("softmax_ce", lambda x: T.softmax_ce(x, targets, ignore_index=0), _p(rng, 3, 5))
    run("select", lambda x: T.select(x, 1), _p(rng, 3, 2, 2))
    run("sum", T.total, _p(rng, 2, 3))
    wts = rng.standard_normal((2, 3))
    run("weighted_sum", lambda x: T.weighted_sum(x, wts), _p(rng, 2, 3))
    run("mean", lambda a, b: T.mean_of([a, b]), _p(rng, 3), _p(rng, 3))
    B, Tq, Tk, D = 2, 3, 4, 8
    mask = rng.random((B, Tq, Tk)) < 0.6
    mask[0, 0] = False  # a fully masked row
    run("attention", lambda q, kk, v: T.masked_attention(q, kk, v, mask, heads=2),
        _p(rng, B, Tq, D), _p(rng, B, Tk, D), _p(rng, B, Tk, D))
    return out


def end_to_end_check(seed: int = 0, fraction: float = 0.01) -> CheckResult:
    """PLM loss of a toy recognizer against finite differences on sampled parameters."""
    from .model import Recognizer, RecognizerConfig
    from .permutations import sample_permutations

    cfg = RecognizerConfig(embed_dim=16, heads=2, enc_layers=1, dec_layers=1, ff_dim=24,
                           dropout=0.0, permutations=3, height=8, width=16,
                           patch_h=4, patch_w=8, max_label_len=4, vocab_size=9)
    model = Recognizer(cfg, seed=seed)
    rng = np.random.default_rng(seed)
    image = rng.random((1, cfg.height, cfg.width))
    targets = np.array([[5, 7, 4, 2]])
    perms = [sample_permutations(4, cfg.permutations, rng)]

    def loss():
        return model.loss(image, targets, perms, rng=None)

    model.zero_grad()
    loss().backward()
    params = model.parameters()
    names = sorted(params)
    # always include at least one entry per parameter tensor
    picks = {}
    for name in names:
        p = params[name]
        count = max(1, int(round(p.data.size * fraction)))
        flat = rng.choice(p.data.size, size=count, replace=False)
        picks[name] = [np.unravel_index(i, p.dims) for i in flat]
    ana, num = [], []
    for name in names:
        p = params[name]

        def f():
            with T.no_grad():
                return loss().item()

        ng = numeric_grad(f, p.data, 1e-5, picks[name])
        for idx in picks[name]:
            ana.append(p.grad[idx] if p.grad is not None else 0.0)
            num.append(ng[idx])
    err = relative_error(np.array(ana), np.array(num))
    return CheckResult("end_to_end", err, END_TO_END_TOL)


def run_all(seed: int = 0) -> list[CheckResult]:
    return op_checks(seed) + [end_to_end_check(seed)]
