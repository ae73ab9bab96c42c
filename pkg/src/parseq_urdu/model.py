"""Encoder-decoder recognizer with a permuted-order two-stream decoder.

The encoder cuts the image into non-overlapping patches, projects them,
adds a learned position table and runs pre-norm self-attention blocks.

The decoder keeps two streams over the T target slots (glyph labels + EOS):

* the *content* stream holds embeddings of known tokens (ground truth when
  training, previous predictions at inference) plus their slot position;
* the *query* stream starts from the learned slot-position embeddings only.

Queries never attend to each other.  Each query attends to the content slots
its mask allows, then to the image memory, and the query stream alone is
projected to class logits.  A permutation's mask lets slot i see exactly the
slots predicted before it, so one set of weights covers left-to-right,
right-to-left, arbitrary orders and cloze-style refinement.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Sequence

import numpy as np

from . import tensor as T
from .errors import ParseqError, ShapeMismatch
from .permutations import Permutation, masks_from_permutation
from .shaping import EOS, PAD
from .tensor import Tensor


class LengthExceeded(ParseqError):
    pass


@dataclass(frozen=True)
class RecognizerConfig:
    vocab_size: int
    embed_dim: int = 256
    heads: int = 4
    enc_layers: int = 4
    dec_layers: int = 2
    ff_dim: int = 1024
    dropout: float = 0.3
    permutations: int = 3
    height: int = 32
    width: int = 128
    patch_h: int = 4
    patch_w: int = 8
    max_label_len: int = 25

    def __post_init__(self):
        if self.embed_dim % self.heads:
            raise ValueError(f"embed_dim {self.embed_dim} not divisible by heads {self.heads}")
        if self.height % self.patch_h or self.width % self.patch_w:
            raise ValueError(f"image {self.height}x{self.width} not tiled by "
                             f"{self.patch_h}x{self.patch_w} patches")
        if self.vocab_size < 5:
            raise ValueError("vocab_size must cover the 4 specials and at least one glyph")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError(f"dropout {self.dropout} outside [0, 1)")
        if self.permutations < 1 or self.max_label_len < 1:
            raise ValueError("permutations and max_label_len must be positive")

    @property
    def num_patches(self) -> int:
        return (self.height // self.patch_h) * (self.width // self.patch_w)

    @property
    def num_slots(self) -> int:
        return self.max_label_len + 1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> RecognizerConfig:
        kinds = {f.name: f.type for f in fields(cls)}
        out = {}
        for k, v in d.items():
            if k not in kinds:
                raise KeyError(k)
            out[k] = float(v) if kinds[k] == "float" else int(v)
        return cls(**out)


def parameter_count(cfg: RecognizerConfig) -> int:
    """Number of scalar parameters, as a closed form of the config.

        D = embed_dim, F = ff_dim, V = vocab_size, N = patches, S = max_label_len + 1
        attn = 4 D^2 + 4 D                  (q, k, v, o projections with bias)
        ff   = 2 D F + F + D
        encoder = (ph pw + 1) D + N D + enc_layers (attn + ff + 4 D) + 2 D
        decoder = V D + S D + dec_layers (2 attn + ff + 8 D) + 2 D + D V + V
    """
    D, F, V = cfg.embed_dim, cfg.ff_dim, cfg.vocab_size
    attn = 4 * D * D + 4 * D
    ff = 2 * D * F + F + D
    enc = (cfg.patch_h * cfg.patch_w + 1) * D + cfg.num_patches * D \
        + cfg.enc_layers * (attn + ff + 4 * D) + 2 * D
    dec = V * D + cfg.num_slots * D + cfg.dec_layers * (2 * attn + ff + 8 * D) + 2 * D + D * V + V
    return enc + dec


def _param_shapes(cfg: RecognizerConfig) -> dict[str, tuple[tuple[int, ...], str]]:
    """name -> (dims, init kind)."""
    D, F, V = cfg.embed_dim, cfg.ff_dim, cfg.vocab_size
    shapes: dict[str, tuple[tuple[int, ...], str]] = {}

    def ln(prefix):
        shapes[prefix + ".g"] = ((D,), "one")
        shapes[prefix + ".b"] = ((D,), "zero")

    def proj(prefix, fan_in, fan_out):
        shapes[prefix + ".w"] = ((fan_in, fan_out), "proj")
        shapes[prefix + ".b"] = ((fan_out,), "zero")

    def attn(prefix):
        for p in ("q", "k", "v", "o"):
            proj(f"{prefix}.{p}", D, D)

    def ff(prefix):
        proj(prefix + ".fc1", D, F)
        proj(prefix + ".fc2", F, D)

    proj("enc.patch", cfg.patch_h * cfg.patch_w, D)
    shapes["enc.pos"] = ((cfg.num_patches, D), "embed")
    for i in range(cfg.enc_layers):
        p = f"enc.{i}"
        ln(p + ".ln1")
        attn(p + ".attn")
        ln(p + ".ln2")
        ff(p + ".ff")
    ln("enc.ln")
    shapes["dec.tok"] = ((V, D), "embed")
    shapes["dec.pos"] = ((cfg.num_slots, D), "embed")
    for i in range(cfg.dec_layers):
        p = f"dec.{i}"
        ln(p + ".ln_q")
        ln(p + ".ln_c")
        attn(p + ".self")
        ln(p + ".ln_x")
        attn(p + ".cross")
        ln(p + ".ln_f")
        ff(p + ".ff")
    ln("dec.ln")
    proj("head", D, V)
    return shapes


def init_params(cfg: RecognizerConfig, rng: np.random.Generator) -> dict[str, Tensor]:
    params = {}
    for name, (dims, kind) in _param_shapes(cfg).items():
        if kind == "proj":
            bound = 1.0 / math.sqrt(dims[0])
            data = rng.uniform(-bound, bound, size=dims)
        elif kind == "embed":
            data = 0.02 * rng.standard_normal(dims)
        elif kind == "one":
            data = np.ones(dims)
        else:
            data = np.zeros(dims)
        params[name] = Tensor(data, requires_grad=True)
    return params


class Recognizer:
    """Weights plus forward passes.  Dropout is active only when an rng is passed."""

    def __init__(self, cfg: RecognizerConfig, seed: int = 0,
                 params: dict[str, Tensor] | None = None):
        self.cfg = cfg
        self.params = params if params is not None else init_params(cfg, np.random.default_rng(seed))
        expected = _param_shapes(cfg)
        if set(self.params) != set(expected):
            raise ShapeMismatch("parameter names do not match the config")
        for name, (dims, _) in expected.items():
            if self.params[name].dims != dims:
                raise ShapeMismatch(f"{name}: {self.params[name].dims} != {dims}")

    def parameters(self) -> dict[str, Tensor]:
        return self.params

    def zero_grad(self):
        for p in self.params.values():
            p.zero_grad()

    # -- building blocks ----------------------------------------------------

    def _lin(self, x, prefix):
        return T.linear(x, self.params[prefix + ".w"], self.params[prefix + ".b"])

    def _ln(self, x, prefix):
        return T.layernorm(x, self.params[prefix + ".g"], self.params[prefix + ".b"])

    def _ff(self, x, prefix, rng):
        h = T.gelu(self._lin(x, prefix + ".fc1"))
        return T.dropout(self._lin(h, prefix + ".fc2"), self.cfg.dropout, rng)

    def _drop(self, x, rng):
        return T.dropout(x, self.cfg.dropout, rng)

    # -- encoder -------------------------------------------------------------

    def patchify(self, images: np.ndarray) -> np.ndarray:
        """[B, H, W] intensities 0..255 -> [B, N, ph*pw] ink-positive values in [0, 1]."""
        c = self.cfg
        images = np.asarray(images, dtype=np.float64)
        if images.ndim == 2:
            images = images[None]
        if images.shape[1:] != (c.height, c.width):
            raise ShapeMismatch(f"image {images.shape[1:]} != config {(c.height, c.width)}")
        B = images.shape[0]
        x = (255.0 - images) / 255.0
        x = x.reshape(B, c.height // c.patch_h, c.patch_h, c.width // c.patch_w, c.patch_w)
        return x.transpose(0, 1, 3, 2, 4).reshape(B, c.num_patches, c.patch_h * c.patch_w)

    def encode_patches(self, patches: np.ndarray, rng=None, pos: Tensor | None = None) -> Tensor:
        """Encode already-flattened patches [B, N, ph*pw] (``pos`` overrides the table)."""
        x = self._lin(Tensor(patches), "enc.patch")
        x = self._drop(T.add_bias(x, pos if pos is not None else self.params["enc.pos"]), rng)
        for i in range(self.cfg.enc_layers):
            p = f"enc.{i}"
            h = self._ln(x, p + ".ln1")
            a = T.masked_attention(self._lin(h, p + ".attn.q"), self._lin(h, p + ".attn.k"),
                                   self._lin(h, p + ".attn.v"), None, self.cfg.heads)
            x = T.add(x, self._drop(self._lin(a, p + ".attn.o"), rng))
            x = T.add(x, self._ff(self._ln(x, p + ".ln2"), p + ".ff", rng))
        return self._ln(x, "enc.ln")

    def encode_image(self, images: np.ndarray, rng=None) -> Tensor:
        """Memory tokens [B, N, D] for grayscale images [B, H, W] (or one [H, W])."""
        return self.encode_patches(self.patchify(images), rng)

    # -- decoder -------------------------------------------------------------

    def decode_with_masks(self, memory: Tensor, content_ids: np.ndarray, query_slots: np.ndarray,
                          masks: np.ndarray, k: int = 1, rng=None) -> Tensor:
        """Run the decoder and return logits [B*k, Tq, V].

        Args:
            memory: [B, N, D] encoder output.
            content_ids: [B, Tc] token ids in the content stream (slot j holds id j).
            query_slots: [Tq] slot index of each query.
            masks: boolean [B*k, Tq, Tc]; True where query may read content.
            k: number of mask variants per sample; sample b owns rows b*k .. b*k+k-1.
        """
        content_ids = np.asarray(content_ids, dtype=np.int64)
        B, Tc = content_ids.shape
        query_slots = np.asarray(query_slots, dtype=np.int64)
        if memory.dims[0] != B or masks.shape != (B * k, len(query_slots), Tc):
            raise ShapeMismatch(f"decoder: memory {memory.dims}, content {content_ids.shape}, "
                                f"masks {masks.shape}, k={k}")
        if Tc > self.cfg.num_slots or query_slots.max(initial=0) >= self.cfg.num_slots:
            raise LengthExceeded(f"more than {self.cfg.num_slots} target slots")
        pos = self.params["dec.pos"]
        content = T.add(T.embedding(self.params["dec.tok"], content_ids),
                        T.embedding(pos, np.broadcast_to(np.arange(Tc), (B, Tc))))
        content = self._drop(content, rng)
        query = self._drop(T.embedding(pos, np.broadcast_to(query_slots, (B * k, len(query_slots)))), rng)
        for i in range(self.cfg.dec_layers):
            p = f"dec.{i}"
            h = self._ln(query, p + ".ln_q")
            c = self._ln(content, p + ".ln_c")
            ck = T.repeat(self._lin(c, p + ".self.k"), k)
            cv = T.repeat(self._lin(c, p + ".self.v"), k)
            a = T.masked_attention(self._lin(h, p + ".self.q"), ck, cv, masks, self.cfg.heads)
            query = T.add(query, self._drop(self._lin(a, p + ".self.o"), rng))
            h = self._ln(query, p + ".ln_x")
            mk = T.repeat(self._lin(memory, p + ".cross.k"), k)
            mv = T.repeat(self._lin(memory, p + ".cross.v"), k)
            a = T.masked_attention(self._lin(h, p + ".cross.q"), mk, mv, None, self.cfg.heads)
            query = T.add(query, self._drop(self._lin(a, p + ".cross.o"), rng))
            query = T.add(query, self._ff(self._ln(query, p + ".ln_f"), p + ".ff", rng))
        return self._lin(self._ln(query, "dec.ln"), "head")

    def _perm_masks(self, perms_per_sample: Sequence[Sequence[Permutation]], slots: int) -> np.ndarray:
        masks = []
        for perms in perms_per_sample:
            for perm in perms:
                masks.append(masks_from_permutation(perm.padded(slots)).content_mask)
        return np.stack(masks)

    def decode_train(self, memory: Tensor, targets: Sequence[int],
                     perms: Sequence[Permutation], rng=None) -> list[Tensor]:
        """Teacher-forced logits [T, V] for one sample under each permutation.

        ``memory`` is [N, D] or [1, N, D]; ``targets`` are glyph ids followed by EOS.
        """
        targets = np.asarray(targets, dtype=np.int64)
        slots = len(targets)
        if slots > self.cfg.num_slots:
            raise LengthExceeded(f"{slots} target slots > {self.cfg.num_slots}")
        if memory.data.ndim == 2:
            memory = T.reshape(memory, (1,) + memory.dims)
        for perm in perms:
            if len(perm) != slots:
                raise ShapeMismatch(f"permutation over {len(perm)} slots, targets have {slots}")
        masks = self._perm_masks([perms], slots)
        logits = self.decode_with_masks(memory, targets[None], np.arange(slots), masks,
                                        k=len(perms), rng=rng)
        return [T.select(logits, i) for i in range(len(perms))]

    def loss(self, images: np.ndarray, targets: np.ndarray,
             perms: Sequence[Sequence[Permutation]], rng=None) -> Tensor:
        """Batch PLM loss: mean over samples of the mean over K permutations of the CE.

        Args:
            images: [B, H, W].
            targets: [B, S] glyph ids + EOS, right-padded with PAD.
            perms: per sample, K permutations over that sample's unpadded length.
        """
        targets = np.asarray(targets, dtype=np.int64)
        B, S = targets.shape
        if S > self.cfg.num_slots:
            raise LengthExceeded(f"{S} target slots > {self.cfg.num_slots}")
        k = len(perms[0])
        lengths = (targets != PAD).sum(axis=1)
        for b, ps in enumerate(perms):
            if len(ps) != k or any(len(p) != lengths[b] for p in ps):
                raise ShapeMismatch(f"sample {b}: permutations do not match its {lengths[b]} slots")
        return self.loss_from_memory(self.encode_image(images, rng), targets, perms, rng)

    def loss_from_memory(self, memory: Tensor, targets: np.ndarray,
                         perms: Sequence[Sequence[Permutation]], rng=None) -> Tensor:
        """``loss`` with the encoder output already computed."""
        targets = np.asarray(targets, dtype=np.int64)
        B, S = targets.shape
        k = len(perms[0])
        lengths = (targets != PAD).sum(axis=1)
        logits = self.decode_with_masks(memory, targets, np.arange(S), self._perm_masks(perms, S),
                                        k=k, rng=rng)
        flat_targets = np.repeat(targets, k, axis=0).reshape(-1)
        weights = np.repeat(1.0 / (lengths * k * B), k * S)
        return T.softmax_ce(T.reshape(logits, (B * k * S, self.cfg.vocab_size)), flat_targets,
                            ignore_index=PAD, weights=weights)

    # -- inference ------------------------------------------------------------

    def decode_infer(self, memory: Tensor, mode: str = "ar", refine: int = 1) -> list[list[int]]:
        """Greedy decoding; returns glyph ids per sample with EOS and anything after it removed.

        ``ar`` predicts slot by slot left to right, feeding predictions back.
        ``nar`` predicts all slots at once from the image alone, then runs
        ``refine`` cloze passes where each slot reads every other predicted slot.
        """
        with T.no_grad():
            if memory.data.ndim == 2:
                memory = Tensor(memory.data[None])
            if mode == "ar":
                preds = self._infer_ar(memory)
            elif mode == "nar":
                preds = self._infer_nar(memory, refine)
            else:
                raise ValueError(f"unknown decode mode {mode!r}")
        return [_cut_at_eos(row) for row in preds]

    def _infer_ar(self, memory: Tensor) -> np.ndarray:
        B, S = memory.dims[0], self.cfg.num_slots
        preds = np.full((B, S), PAD, dtype=np.int64)
        done = np.zeros(B, dtype=bool)
        for i in range(S):
            tc = max(i, 1)
            mask = np.broadcast_to(np.arange(tc) < i, (B, 1, tc))
            logits = self.decode_with_masks(memory, preds[:, :tc], np.array([i]), mask)
            preds[:, i] = np.where(done, PAD, logits.data[:, 0].argmax(axis=-1))
            done |= preds[:, i] == EOS
            if done.all():
                break
        return preds

    def _infer_nar(self, memory: Tensor, refine: int) -> np.ndarray:
        B, S = memory.dims[0], self.cfg.num_slots
        slots = np.arange(S)
        empty = np.full((B, S), PAD, dtype=np.int64)
        logits = self.decode_with_masks(memory, empty, slots, np.zeros((B, S, S), dtype=bool))
        preds = logits.data.argmax(axis=-1)
        for _ in range(refine):
            is_eos = preds == EOS
            end = np.where(is_eos.any(axis=1), is_eos.argmax(axis=1), S - 1)
            visible = slots[None, :] <= end[:, None]
            cloze = visible[:, None, :] & ~np.eye(S, dtype=bool)[None]
            logits = self.decode_with_masks(memory, preds, slots, cloze)
            preds = logits.data.argmax(axis=-1)
        return preds

    def recognize(self, images: np.ndarray, mode: str = "ar", refine: int = 1,
                  batch_size: int = 64) -> list[list[int]]:
        images = np.asarray(images)
        if images.ndim == 2:
            images = images[None]
        out = []
        for start in range(0, len(images), batch_size):
            with T.no_grad():
                memory = self.encode_image(images[start:start + batch_size])
            out.extend(self.decode_infer(memory, mode, refine))
        return out


def _cut_at_eos(row: Sequence[int]) -> list[int]:
    ids = []
    for idx in row:
        if idx == EOS:
            break
        ids.append(int(idx))
    return ids
