"""Optimisation loop: batching, permutation sampling, SGD with momentum, validation, checkpoints."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import imaging
from . import tensor as T
from .checkpoint import read_checkpoint, write_checkpoint
from .data import Sample
from .errors import ParseqError
from .evaluation import CERReport, aggregate
from .model import LengthExceeded, Recognizer, RecognizerConfig
from .permutations import Permutation, sample_permutations
from .shaping import EOS, PAD, GlyphForm, GlyphVocabulary, Position, decode, encode

log = logging.getLogger(__name__)

CHECKPOINT_LAST = "last.ckpt"
CHECKPOINT_BEST = "best.ckpt"


class NonFiniteLoss(ParseqError):
    def __init__(self, step: int, batch_ids: Sequence[str]):
        super().__init__(f"non-finite loss at step {step}; batch ids: {', '.join(batch_ids)}")
        self.step = step
        self.batch_ids = list(batch_ids)


@dataclass(frozen=True)
class OptimConfig:
    lr: float = 0.1
    momentum: float = 0.9
    clip_norm: float = 1.0


@dataclass
class TrainState:
    model: Recognizer
    vocab: GlyphVocabulary
    rng: np.random.Generator
    seed: int
    velocity: dict[str, np.ndarray] = field(default_factory=dict)
    step: int = 0
    loss_sum: float = 0.0          # train losses since the last validation
    loss_count: int = 0
    best_cer: float = math.inf

    @classmethod
    def fresh(cls, cfg: RecognizerConfig, vocab: GlyphVocabulary, seed: int) -> TrainState:
        if cfg.vocab_size != len(vocab):
            raise ValueError(f"config vocab_size {cfg.vocab_size} != vocabulary size {len(vocab)}")
        model = Recognizer(cfg, seed=seed)
        velocity = {name: np.zeros_like(p.data) for name, p in model.parameters().items()}
        # separate stream from the one that initialised the weights
        return cls(model, vocab, np.random.default_rng([seed, 1]), seed, velocity)


@dataclass
class Batch:
    images: np.ndarray     # [B, H, W] uint8
    targets: np.ndarray    # [B, S] glyph ids + EOS, PAD-padded
    ids: list[str]


def encode_targets(labels: Sequence[str], vocab: GlyphVocabulary, max_slots: int) -> np.ndarray:
    seqs = [encode(label, vocab) + [EOS] for label in labels]
    longest = max(len(s) for s in seqs)
    if longest > max_slots:
        raise LengthExceeded(f"label needs {longest} slots, the model has {max_slots}")
    out = np.full((len(seqs), longest), PAD, dtype=np.int64)
    for i, s in enumerate(seqs):
        out[i, :len(s)] = s
    return out


def make_batch(samples: Sequence[Sample], vocab: GlyphVocabulary, cfg: RecognizerConfig) -> Batch:
    images = np.stack([s.image for s in samples])
    if images.shape[1:] != (cfg.height, cfg.width):
        raise ValueError(f"batch images are {images.shape[1:]}, model expects {(cfg.height, cfg.width)}")
    return Batch(images, encode_targets([s.label for s in samples], vocab, cfg.num_slots),
                 [s.id for s in samples])


def preprocess_samples(samples: Sequence[Sample], pre: imaging.PreprocessConfig,
                       height: int, width: int) -> list[Sample]:
    return [Sample(imaging.preprocess(s.image, pre, height, width), s.label, s.id) for s in samples]


def clip_gradients(grads: dict[str, np.ndarray], max_norm: float) -> tuple[dict[str, np.ndarray], float]:
    """Scale all gradients together so the global L2 norm is at most ``max_norm``.

    Returns the (possibly scaled) gradients and the norm before clipping.
    """
    norm = math.sqrt(sum(float(np.vdot(g, g)) for g in grads.values()))
    if norm <= max_norm:
        return grads, norm
    scale = max_norm / norm
    return {name: g * scale for name, g in grads.items()}, norm


def train_step(state: TrainState, batch: Batch, optim: OptimConfig = OptimConfig()) -> float:
    """One SGD-with-momentum update on the batch PLM loss; returns the loss before the update."""
    model = state.model
    k = model.cfg.permutations
    lengths = (batch.targets != PAD).sum(axis=1)
    perms = [sample_permutations(int(n), k, state.rng) for n in lengths]
    model.zero_grad()
    loss = model.loss(batch.images, batch.targets, perms,
                      rng=state.rng if model.cfg.dropout > 0 else None)
    value = loss.item()
    if not math.isfinite(value):
        raise NonFiniteLoss(state.step + 1, batch.ids)
    loss.backward()
    params = model.parameters()
    grads = {name: p.grad if p.grad is not None else np.zeros_like(p.data)
             for name, p in params.items()}
    grads, _ = clip_gradients(grads, optim.clip_norm)
    for name, p in params.items():
        v = state.velocity[name]
        v *= optim.momentum
        v += grads[name]
        p.data -= optim.lr * v
    state.step += 1
    state.loss_sum += value
    state.loss_count += 1
    return value


# -- evaluation ---------------------------------------------------------------

def evaluate(model: Recognizer, samples: Sequence[Sample], vocab: GlyphVocabulary,
             mode: str = "ar", refine: int = 1, batch_size: int = 64) -> CERReport:
    """Decode every sample and pool the character errors.  Leaves the model untouched."""
    preds = model.recognize(np.stack([s.image for s in samples]), mode, refine, batch_size) \
        if samples else []
    return aggregate((s.id, decode(p, vocab), s.label) for s, p in zip(samples, preds))


def validate(model: Recognizer, samples: Sequence[Sample], vocab: GlyphVocabulary,
             mode: str = "ar", refine: int = 1, batch_size: int = 64) -> tuple[float, CERReport]:
    """Teacher-forced left-to-right loss and decoded CER, sharing one encoder pass per chunk.

    The loss is the mean over samples of the per-sample cross-entropy in
    reading order, without dropout.
    """
    total, triples = 0.0, []
    for start in range(0, len(samples), batch_size):
        chunk = samples[start:start + batch_size]
        batch = make_batch(chunk, vocab, model.cfg)
        lengths = (batch.targets != PAD).sum(axis=1)
        with T.no_grad():
            memory = model.encode_image(batch.images)
            loss = model.loss_from_memory(memory, batch.targets,
                                          [[Permutation.identity(int(n))] for n in lengths])
            preds = model.decode_infer(memory, mode, refine)
        total += loss.item() * len(chunk)
        triples.extend((s.id, decode(p, vocab), s.label) for s, p in zip(chunk, preds))
    return (total / len(samples) if samples else 0.0), aggregate(triples)


# -- checkpoints ----------------------------------------------------------------

def _vocab_to_str(vocab: GlyphVocabulary) -> str:
    return ",".join(f"{f.base:04X}:{f.position.label}" for f in vocab.entries)


def _vocab_from_str(text: str) -> GlyphVocabulary:
    positions = {p.label: p for p in Position}
    entries = []
    for item in filter(None, text.split(",")):
        cp, _, pos = item.partition(":")
        entries.append(GlyphForm(int(cp, 16), positions[pos]))
    return GlyphVocabulary(tuple(entries))


def save_state(state: TrainState, path, extra: dict[str, str] | None = None) -> None:
    meta = {f"model.{k}": repr(v) for k, v in state.model.cfg.to_dict().items()}
    meta["vocab"] = _vocab_to_str(state.vocab)
    meta["train.step"] = str(state.step)
    meta["train.seed"] = str(state.seed)
    meta["train.loss_sum"] = repr(state.loss_sum)
    meta["train.loss_count"] = str(state.loss_count)
    meta["train.best_cer"] = repr(state.best_cer)
    bg = state.rng.bit_generator.state
    if bg["bit_generator"] != "PCG64":
        raise ValueError(f"cannot store {bg['bit_generator']} state")
    meta["rng.state"] = str(bg["state"]["state"])
    meta["rng.inc"] = str(bg["state"]["inc"])
    meta["rng.has_uint32"] = str(bg["has_uint32"])
    meta["rng.uinteger"] = str(bg["uinteger"])
    for k, v in (extra or {}).items():
        meta[f"extra.{k}"] = v
    tensors = {name: p.data for name, p in state.model.parameters().items()}
    tensors.update({f"opt.velocity.{name}": v for name, v in state.velocity.items()})
    write_checkpoint(path, meta, tensors)


def load_state(path) -> tuple[TrainState, dict[str, str]]:
    """Restore a TrainState; also returns the ``extra`` entries stored with it."""
    meta, tensors = read_checkpoint(path)
    cfg = RecognizerConfig.from_dict({k[len("model."):]: v for k, v in meta.items()
                                      if k.startswith("model.")})
    params = {name: T.Tensor(arr, requires_grad=True) for name, arr in tensors.items()
              if not name.startswith("opt.")}
    model = Recognizer(cfg, params=params)
    velocity = {name[len("opt.velocity."):]: arr.copy() for name, arr in tensors.items()
                if name.startswith("opt.velocity.")}
    if velocity and set(velocity) != set(params):
        raise ValueError(f"{path}: optimizer slots do not match the parameters")
    if not velocity:
        velocity = {name: np.zeros_like(p.data) for name, p in params.items()}
    rng = np.random.Generator(np.random.PCG64())
    rng.bit_generator.state = {
        "bit_generator": "PCG64",
        "state": {"state": int(meta["rng.state"]), "inc": int(meta["rng.inc"])},
        "has_uint32": int(meta["rng.has_uint32"]),
        "uinteger": int(meta["rng.uinteger"]),
    }
    state = TrainState(model, _vocab_from_str(meta["vocab"]), rng, int(meta["train.seed"]), velocity,
                       int(meta["train.step"]), float(meta["train.loss_sum"]),
                       int(meta["train.loss_count"]), float(meta["train.best_cer"]))
    extra = {k[len("extra."):]: v for k, v in meta.items() if k.startswith("extra.")}
    return state, extra


# -- loop -------------------------------------------------------------------------

@dataclass(frozen=True)
class LoopConfig:
    max_steps: int
    val_interval: int = 200
    batch_size: int = 32
    mode: str = "ar"
    refine: int = 1


def sample_batch(state: TrainState, samples: Sequence[Sample], batch_size: int,
                 policy: imaging.AugmentPolicy) -> Batch:
    cfg = state.model.cfg
    idx = state.rng.choice(len(samples), size=min(batch_size, len(samples)), replace=False)
    chosen = []
    for i in idx:
        s = samples[int(i)]
        img = s.image if policy.is_identity else imaging.augment(s.image, state.rng, policy,
                                                                 cfg.height, cfg.width)
        chosen.append(Sample(img, s.label, s.id))
    return make_batch(chosen, state.vocab, cfg)


def fit(state: TrainState, train_set: Sequence[Sample], val_set: Sequence[Sample], loop: LoopConfig,
        optim: OptimConfig, checkpoint_dir, metrics_path, policy: imaging.AugmentPolicy,
        extra: dict[str, str] | None = None) -> TrainState:
    """Train until ``loop.max_steps``, validating every ``val_interval`` steps and at the end.

    Each validation appends ``step, train_loss, val_loss, val_cer`` to the
    metrics log, where train_loss is the mean step loss since the previous
    validation.  The best validation CER so far is kept in best.ckpt and the
    latest state in last.ckpt.
    """
    checkpoint_dir = Path(checkpoint_dir)
    checkpoint_dir.mkdir(parents=True, exist_ok=True)
    if not train_set and state.step < loop.max_steps:
        raise ValueError("training set is empty")
    if state.step >= loop.max_steps:
        save_state(state, checkpoint_dir / CHECKPOINT_LAST, extra)
        return state
    with open(metrics_path, "a", encoding="utf-8", newline="\n") as metrics:
        while state.step < loop.max_steps:
            batch = sample_batch(state, train_set, loop.batch_size, policy)
            loss = train_step(state, batch, optim)
            log.debug("step %d loss %.6f", state.step, loss)
            if state.step % loop.val_interval == 0 or state.step == loop.max_steps:
                train_loss = state.loss_sum / state.loss_count
                state.loss_sum, state.loss_count = 0.0, 0
                if val_set:
                    val_loss, report = validate(state.model, val_set, state.vocab, loop.mode, loop.refine)
                    val_cer = report.cer
                else:
                    val_loss = val_cer = math.nan
                metrics.write(f"{state.step}\t{train_loss:.6f}\t{val_loss:.6f}\t{val_cer:.6f}\n")
                metrics.flush()
                log.info("step %d train_loss %.4f val_loss %.4f val_cer %.4f",
                         state.step, train_loss, val_loss, val_cer)
                if val_set and val_cer < state.best_cer:
                    state.best_cer = val_cer
                    save_state(state, checkpoint_dir / CHECKPOINT_BEST, extra)
                save_state(state, checkpoint_dir / CHECKPOINT_LAST, extra)
    return state
