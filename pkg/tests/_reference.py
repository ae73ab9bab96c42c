"""Slow, loop-based numpy forward of the decoder, used as an oracle in tests."""

import math

import numpy as np


def _ln(x, p, name):
    mu = x.mean(-1, keepdims=True)
    var = ((x - mu) ** 2).mean(-1, keepdims=True)
    return (x - mu) / np.sqrt(var + 1e-5) * p[name + ".g"] + p[name + ".b"]


def _lin(x, p, name):
    return x @ p[name + ".w"] + p[name + ".b"]


def _attend(q, k, v, heads):
    """One query row against a (possibly empty) list of keys."""
    if len(k) == 0:
        return np.zeros_like(q)
    dh = q.shape[-1] // heads
    out = []
    for h in range(heads):
        sl = slice(h * dh, (h + 1) * dh)
        s = k[:, sl] @ q[sl] / math.sqrt(dh)
        w = np.exp(s - s.max())
        w /= w.sum()
        out.append(w @ v[:, sl])
    return np.concatenate(out)


def _gelu(x):
    return 0.5 * x * (1 + np.tanh(math.sqrt(2 / math.pi) * (x + 0.044715 * x ** 3)))


def reference_causal_logits(model, memory, tokens):
    """Slot i reads only tokens at slots < i, computed one slot at a time."""
    p = {k: v.data for k, v in model.params.items()}
    cfg = model.cfg
    H = cfg.heads
    content = p["dec.tok"][tokens] + p["dec.pos"][: len(tokens)]
    rows = []
    for i in range(len(tokens)):
        q = p["dec.pos"][i].copy()
        for layer in range(cfg.dec_layers):
            pre = f"dec.{layer}"
            c = _ln(content[:i], p, pre + ".ln_c")
            h = _ln(q, p, pre + ".ln_q")
            a = _attend(_lin(h, p, pre + ".self.q"), _lin(c, p, pre + ".self.k"),
                        _lin(c, p, pre + ".self.v"), H)
            q = q + _lin(a, p, pre + ".self.o")
            h = _ln(q, p, pre + ".ln_x")
            a = _attend(_lin(h, p, pre + ".cross.q"), _lin(memory, p, pre + ".cross.k"),
                        _lin(memory, p, pre + ".cross.v"), H)
            q = q + _lin(a, p, pre + ".cross.o")
            h = _ln(q, p, pre + ".ln_f")
            q = q + _lin(_gelu(_lin(h, p, pre + ".ff.fc1")), p, pre + ".ff.fc2")
        rows.append(_lin(_ln(q, p, "dec.ln"), p, "head"))
    return np.stack(rows)
