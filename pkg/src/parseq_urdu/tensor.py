"""A small reverse-mode autodiff tensor on top of numpy.

Values are float64 and row-major.  Every op records its parents and a
backward rule that maps the output gradient to parent gradients; calling
``backward()`` on a scalar walks the graph in reverse topological order.
Shapes are explicit: the only broadcasting is a trailing bias-style add.
"""

from __future__ import annotations

import contextlib
import math
from typing import Callable, Sequence

import numpy as np

from .errors import ParseqError, ShapeMismatch

_grad_enabled = True

# Op names whose backward output gets negated.  Test hook for checking that
# the gradient checker actually catches a broken rule.
SIGN_FLIP: set[str] = set()


class AllPositionsIgnored(ParseqError):
    pass


@contextlib.contextmanager
def no_grad():
    global _grad_enabled
    prev, _grad_enabled = _grad_enabled, False
    try:
        yield
    finally:
        _grad_enabled = prev


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward", "_op")

    def __init__(self, data, requires_grad: bool = False):
        arr = np.asarray(data, dtype=np.float64)
        # ascontiguousarray would promote 0-d scalars to shape (1,)
        self.data = arr if arr.flags.c_contiguous else arr.copy()
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self._parents: tuple[Tensor, ...] = ()
        self._backward: Callable | None = None
        self._op = "leaf"

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    shape = dims

    def item(self) -> float:
        return float(self.data)

    def numpy(self) -> np.ndarray:
        return self.data

    def __repr__(self):
        return f"Tensor(dims={self.dims}, op={self._op})"

    def zero_grad(self):
        self.grad = None

    def backward(self, grad: np.ndarray | None = None):
        if grad is None:
            if self.data.size != 1:
                raise ShapeMismatch("backward() without a gradient needs a scalar")
            grad = np.ones_like(self.data)
        order = _topo_order(self)
        grads = {id(self): grad}
        for node in order:
            g = grads.pop(id(node), None)
            if g is None:
                continue
            if node._backward is None:
                node.grad = g if node.grad is None else node.grad + g
                continue
            parent_grads = node._backward(g)
            if node._op in SIGN_FLIP:
                parent_grads = [None if pg is None else -pg for pg in parent_grads]
            for parent, pg in zip(node._parents, parent_grads):
                if pg is None or not parent.requires_grad:
                    continue
                key = id(parent)
                grads[key] = pg if key not in grads else grads[key] + pg


def _topo_order(root: Tensor) -> list[Tensor]:
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in node._parents:
            if p.requires_grad and id(p) not in seen:
                stack.append((p, False))
    order.reverse()
    return order


def _result(data: np.ndarray, op: str, parents: Sequence[Tensor], backward: Callable) -> Tensor:
    out = Tensor(data)
    out._op = op
    if _grad_enabled and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = tuple(parents)
        out._backward = backward
    return out


def as_tensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _expect(cond: bool, msg: str):
    if not cond:
        raise ShapeMismatch(msg)


# -- elementwise / structural ------------------------------------------------

def add(a: Tensor, b: Tensor) -> Tensor:
    _expect(a.dims == b.dims, f"add: {a.dims} vs {b.dims}")
    return _result(a.data + b.data, "add", (a, b), lambda g: (g, g))


def add_bias(x: Tensor, b: Tensor) -> Tensor:
    """x + b where b matches the trailing dims of x (bias vectors, position tables)."""
    nb = b.data.ndim
    _expect(x.dims[x.data.ndim - nb:] == b.dims, f"add_bias: {x.dims} vs {b.dims}")
    lead = tuple(range(x.data.ndim - nb))
    return _result(x.data + b.data, "add_bias", (x, b), lambda g: (g, g.sum(axis=lead)))


def scale(x: Tensor, c: float) -> Tensor:
    return _result(x.data * c, "scale", (x,), lambda g: (g * c,))


def reshape(x: Tensor, dims: Sequence[int]) -> Tensor:
    old = x.dims
    return _result(x.data.reshape(dims), "reshape", (x,), lambda g: (g.reshape(old),))


def repeat(x: Tensor, k: int) -> Tensor:
    """Repeat each leading-axis slice k times consecutively: [B, ...] -> [B*k, ...]."""
    if k == 1:
        return x
    b, rest = x.dims[0], x.dims[1:]
    return _result(np.repeat(x.data, k, axis=0), "repeat", (x,),
                   lambda g: (g.reshape((b, k) + rest).sum(axis=1),))


def select(x: Tensor, i: int) -> Tensor:
    """x[i] along the leading axis."""
    def backward(g):
        gx = np.zeros_like(x.data)
        gx[i] = g
        return (gx,)

    return _result(x.data[i].copy(), "select", (x,), backward)


def total(x: Tensor) -> Tensor:
    return _result(np.asarray(x.data.sum()), "sum", (x,), lambda g: (np.full(x.dims, float(g)),))


def weighted_sum(x: Tensor, w: np.ndarray) -> Tensor:
    """sum(x * w) for a constant array w of the same shape."""
    _expect(x.dims == w.shape, f"weighted_sum: {x.dims} vs {w.shape}")
    return _result(np.asarray((x.data * w).sum()), "weighted_sum", (x,), lambda g: (g * w,))


def mean_of(xs: Sequence[Tensor]) -> Tensor:
    """Arithmetic mean of same-shape tensors."""
    _expect(len(xs) > 0, "mean_of: empty list")
    for x in xs[1:]:
        _expect(x.dims == xs[0].dims, f"mean_of: {x.dims} vs {xs[0].dims}")
    k = len(xs)
    data = sum(x.data for x in xs) / k
    return _result(data, "mean", tuple(xs), lambda g: [g / k] * k)


# -- linear algebra ----------------------------------------------------------

def matmul(a: Tensor, b: Tensor) -> Tensor:
    """a[..., k] @ b[k, n] -> [..., n]; leading dims of a are treated as rows."""
    _expect(b.data.ndim == 2 and a.dims[-1] == b.dims[0], f"matmul: {a.dims} @ {b.dims}")
    a2 = a.data.reshape(-1, a.dims[-1])
    out = (a2 @ b.data).reshape(a.dims[:-1] + (b.dims[1],))

    def backward(g):
        g2 = g.reshape(-1, b.dims[1])
        ga = (g2 @ b.data.T).reshape(a.dims) if a.requires_grad else None
        gb = a2.T @ g2 if b.requires_grad else None
        return ga, gb

    return _result(out, "matmul", (a, b), backward)


def linear(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    return add_bias(matmul(x, w), b)


# -- nonlinearities / normalisation ------------------------------------------

_GELU_C = math.sqrt(2.0 / math.pi)


def gelu(x: Tensor) -> Tensor:
    """tanh-approximated GELU."""
    v = x.data
    v2 = v * v
    t = np.tanh(_GELU_C * v * (1.0 + 0.044715 * v2))
    out = 0.5 * v * (1.0 + t)

    def backward(g):
        du = _GELU_C * (1.0 + 3 * 0.044715 * v2)
        return (g * (0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * du),)

    return _result(out, "gelu", (x,), backward)


def layernorm(x: Tensor, gamma: Tensor, beta: Tensor, eps: float = 1e-5) -> Tensor:
    d = x.dims[-1]
    _expect(gamma.dims == (d,) and beta.dims == (d,), f"layernorm: {x.dims} with {gamma.dims}")
    mu = x.data.mean(axis=-1, keepdims=True)
    xc = x.data - mu
    inv = 1.0 / np.sqrt((xc * xc).mean(axis=-1, keepdims=True) + eps)
    xhat = xc * inv
    lead = tuple(range(x.data.ndim - 1))

    def backward(g):
        gx = None
        if x.requires_grad:
            gh = g * gamma.data
            gx = inv * (gh - gh.mean(axis=-1, keepdims=True)
                        - xhat * (gh * xhat).mean(axis=-1, keepdims=True))
        return gx, (g * xhat).sum(axis=lead), g.sum(axis=lead)

    return _result(xhat * gamma.data + beta.data, "layernorm", (x, gamma, beta), backward)


def embedding(table: Tensor, ids) -> Tensor:
    """Gather rows of table[V, D] for an integer array of ids."""
    ids = np.asarray(ids, dtype=np.int64)
    _expect(table.data.ndim == 2, f"embedding: table dims {table.dims}")
    if ids.size and (ids.min() < 0 or ids.max() >= table.dims[0]):
        raise ShapeMismatch(f"embedding: id out of range for {table.dims[0]} rows")

    def backward(g):
        gt = np.zeros_like(table.data)
        np.add.at(gt, ids.reshape(-1), g.reshape(-1, table.dims[1]))
        return (gt,)

    return _result(table.data[ids], "embedding", (table,), backward)


def dropout(x: Tensor, p: float, rng: np.random.Generator | None) -> Tensor:
    """Inverted dropout; identity when p == 0 or no generator is given."""
    if p <= 0.0 or rng is None:
        return x
    keep = (rng.random(x.dims) >= p) / (1.0 - p)
    return _result(x.data * keep, "dropout", (x,), lambda g: (g * keep,))


# -- attention ---------------------------------------------------------------

def masked_attention(q: Tensor, k: Tensor, v: Tensor, allowed: np.ndarray | None,
                     heads: int) -> Tensor:
    """Multi-head scaled dot-product attention.

    Args:
        q: [B, Tq, D] queries (already projected).
        k, v: [B, Tk, D] keys and values.
        allowed: boolean [Tq, Tk] or [B, Tq, Tk]; False pairs get zero weight.
            None allows everything.
        heads: number of heads; D must be divisible by it.

    Rows with no allowed key produce zero weights and a zero output.
    """
    B, Tq, D = q.dims
    _expect(k.dims[0] == B and k.dims[2] == D and v.dims == k.dims,
            f"attention: q {q.dims}, k {k.dims}, v {v.dims}")
    _expect(D % heads == 0, f"attention: {D} not divisible by {heads} heads")
    Tk, dh = k.dims[1], D // heads
    sc = 1.0 / math.sqrt(dh)

    def split(t, T):
        return t.reshape(B, T, heads, dh).transpose(0, 2, 1, 3)

    qh, kh, vh = split(q.data, Tq), split(k.data, Tk), split(v.data, Tk)
    s = (qh @ kh.transpose(0, 1, 3, 2)) * sc
    if allowed is not None:
        allowed = np.asarray(allowed, dtype=bool)
        _expect(allowed.shape[-2:] == (Tq, Tk), f"attention: mask {allowed.shape} vs {(Tq, Tk)}")
        m = allowed[:, None] if allowed.ndim == 3 else allowed[None, None]
        s = np.where(m, s, -np.inf)
    rowmax = s.max(axis=-1, keepdims=True)
    rowmax = np.where(np.isfinite(rowmax), rowmax, 0.0)
    e = np.exp(s - rowmax)
    z = e.sum(axis=-1, keepdims=True)
    w = np.divide(e, z, out=np.zeros_like(e), where=z > 0)
    o = w @ vh
    out = o.transpose(0, 2, 1, 3).reshape(B, Tq, D)

    def backward(g):
        go = split(g, Tq)
        gw = go @ vh.transpose(0, 1, 3, 2)
        gv = w.transpose(0, 1, 3, 2) @ go
        gs = w * (gw - (gw * w).sum(axis=-1, keepdims=True)) * sc
        gq = gs @ kh
        gk = gs.transpose(0, 1, 3, 2) @ qh

        def merge(t, T):
            return t.transpose(0, 2, 1, 3).reshape(B, T, D)

        return merge(gq, Tq), merge(gk, Tk), merge(gv, Tk)

    return _result(out, "attention", (q, k, v), backward)


def attention_weights(q: np.ndarray, k: np.ndarray, allowed: np.ndarray | None, heads: int) -> np.ndarray:
    """The [B, H, Tq, Tk] weight matrix masked_attention would use (for inspection)."""
    B, Tq, D = q.shape
    Tk, dh = k.shape[1], D // heads
    qh = q.reshape(B, Tq, heads, dh).transpose(0, 2, 1, 3)
    kh = k.reshape(B, Tk, heads, dh).transpose(0, 2, 1, 3)
    s = (qh @ kh.transpose(0, 1, 3, 2)) / math.sqrt(dh)
    if allowed is not None:
        m = allowed[:, None] if allowed.ndim == 3 else allowed[None, None]
        s = np.where(m, s, -np.inf)
    rowmax = s.max(axis=-1, keepdims=True)
    e = np.exp(s - np.where(np.isfinite(rowmax), rowmax, 0.0))
    z = e.sum(axis=-1, keepdims=True)
    return np.divide(e, z, out=np.zeros_like(e), where=z > 0)


# -- loss --------------------------------------------------------------------

def softmax_ce(logits: Tensor, targets, ignore_index: int | None = 0,
               weights: np.ndarray | None = None) -> Tensor:
    """Cross-entropy of softmax(logits) against integer targets.

    Without ``weights`` this is the mean negative log-likelihood over rows whose
    target is not ``ignore_index``.  With ``weights`` (one per row) the result is
    sum(w * nll) over non-ignored rows; callers use it to pool several
    sequences with their own normalisation in one call.
    """
    targets = np.asarray(targets, dtype=np.int64)
    _expect(logits.data.ndim == 2 and targets.shape == (logits.dims[0],),
            f"softmax_ce: logits {logits.dims}, targets {targets.shape}")
    N, V = logits.dims
    live = np.ones(N, dtype=bool) if ignore_index is None else targets != ignore_index
    if not live.any():
        raise AllPositionsIgnored("every target position is ignored")
    if np.any((targets[live] < 0) | (targets[live] >= V)):
        raise ShapeMismatch(f"softmax_ce: target outside [0, {V})")
    if weights is None:
        w = live / live.sum()
    else:
        weights = np.asarray(weights, dtype=np.float64)
        _expect(weights.shape == (N,), f"softmax_ce: weights {weights.shape}")
        w = np.where(live, weights, 0.0)
    x = logits.data
    shifted = x - x.max(axis=1, keepdims=True)
    logz = np.log(np.exp(shifted).sum(axis=1))
    safe_t = np.where(live, targets, 0)
    nll = logz - shifted[np.arange(N), safe_t]
    loss = float((w * nll).sum())

    def backward(g):
        p = np.exp(shifted - logz[:, None])
        p[np.arange(N), safe_t] -= 1.0
        return (p * (w * float(g))[:, None],)

    return _result(np.asarray(loss), "softmax_ce", (logits,), backward)


def log_softmax(x: np.ndarray) -> np.ndarray:
    shifted = x - x.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
