"""Run configuration: flat ``key = value`` files with ``#`` comments.

Relative paths are resolved against the directory of the config file.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ParseqError
from .imaging import AugmentPolicy, PreprocessConfig
from .model import RecognizerConfig


class ConfigError(ParseqError):
    pass


_PATH_KEYS = ("train_manifest", "val_manifest", "vocab", "checkpoint_dir", "log_path")


@dataclass(frozen=True)
class RunConfig:
    # model
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
    vocab_size: int = 0            # 0: take it from the vocabulary file
    # optimisation
    seed: int = 0
    max_steps: int = 5000
    val_interval: int = 200
    batch_size: int = 32
    lr: float = 0.1
    momentum: float = 0.9
    clip_norm: float = 1.0
    # augmentation
    augment: bool = True
    aug_rotation: float = 5.0
    aug_translation: float = 0.10
    aug_scale_min: float = 0.9
    aug_scale_max: float = 1.1
    aug_blur_prob: float = 0.2
    aug_blur_sigma: float = 1.0
    aug_crop: float = 0.05
    # preprocessing
    median_radius: int = 0
    gaussian_sigma: float = 0.0
    deskew: bool = True
    contrast: bool = True
    # paths
    train_manifest: str = ""
    val_manifest: str = ""
    vocab: str = ""                # default: vocab.tsv next to the train manifest
    checkpoint_dir: str = "checkpoints"
    log_path: str = ""             # default: metrics.tsv in checkpoint_dir
    # decoding
    mode: str = "ar"
    refine: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        positive = ("embed_dim", "heads", "enc_layers", "dec_layers", "ff_dim", "permutations",
                    "height", "width", "patch_h", "patch_w", "max_label_len", "val_interval",
                    "batch_size")
        for key in positive:
            if getattr(self, key) < 1:
                raise ConfigError(f"{key} must be >= 1, got {getattr(self, key)}")
        for key in ("vocab_size", "max_steps", "median_radius", "refine"):
            if getattr(self, key) < 0:
                raise ConfigError(f"{key} must be >= 0, got {getattr(self, key)}")
        for key in ("dropout", "momentum", "aug_blur_prob"):
            if not 0.0 <= getattr(self, key) <= 1.0:
                raise ConfigError(f"{key} must lie in [0, 1], got {getattr(self, key)}")
        if self.dropout >= 1.0:
            raise ConfigError("dropout must be < 1")
        if not self.lr > 0 or not self.clip_norm > 0:
            raise ConfigError("lr and clip_norm must be > 0")
        if self.gaussian_sigma < 0 or self.aug_rotation < 0 or self.aug_translation < 0:
            raise ConfigError("gaussian_sigma, aug_rotation and aug_translation must be >= 0")
        if not 0 < self.aug_scale_min <= self.aug_scale_max:
            raise ConfigError("need 0 < aug_scale_min <= aug_scale_max")
        if not 0.0 <= self.aug_crop < 0.5:
            raise ConfigError(f"aug_crop must lie in [0, 0.5), got {self.aug_crop}")
        if not self.aug_blur_sigma > 0:
            raise ConfigError("aug_blur_sigma must be > 0")
        if self.mode not in ("ar", "nar"):
            raise ConfigError(f"mode must be 'ar' or 'nar', got {self.mode!r}")
        if self.embed_dim % self.heads:
            raise ConfigError(f"embed_dim {self.embed_dim} not divisible by heads {self.heads}")
        if self.height % self.patch_h or self.width % self.patch_w:
            raise ConfigError(f"image {self.height}x{self.width} not tiled by "
                              f"{self.patch_h}x{self.patch_w} patches")

    def model_config(self, vocab_size: int) -> RecognizerConfig:
        if self.vocab_size and self.vocab_size != vocab_size:
            raise ConfigError(f"vocab_size = {self.vocab_size} but the vocabulary has {vocab_size} ids")
        names = {f.name for f in fields(RecognizerConfig)} - {"vocab_size"}
        return RecognizerConfig(vocab_size=vocab_size, **{n: getattr(self, n) for n in names})

    def augment_policy(self) -> AugmentPolicy:
        if not self.augment:
            return AugmentPolicy.identity()
        return AugmentPolicy(self.aug_rotation, self.aug_translation, self.aug_scale_min,
                             self.aug_scale_max, self.aug_blur_prob, self.aug_blur_sigma,
                             self.aug_crop)

    def preprocess_config(self) -> PreprocessConfig:
        return PreprocessConfig(self.median_radius, self.gaussian_sigma, self.deskew, self.contrast)

    @property
    def vocab_path(self) -> Path:
        if self.vocab:
            return Path(self.vocab)
        if not self.train_manifest:
            raise ConfigError("vocab: no vocabulary file and no train_manifest to find one next to")
        return Path(self.train_manifest).parent / "vocab.tsv"

    @property
    def metrics_path(self) -> Path:
        return Path(self.log_path) if self.log_path else Path(self.checkpoint_dir) / "metrics.tsv"


def _convert(key: str, kind: str, raw: str):
    try:
        if kind == "bool":
            low = raw.lower()
            if low in ("true", "yes", "1", "on"):
                return True
            if low in ("false", "no", "0", "off"):
                return False
            raise ValueError(raw)
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f"{key}: cannot read {raw!r} as {kind}") from None


def parse_config(text: str, base_dir: Path | str = ".") -> RunConfig:
    kinds = {f.name: f.type for f in fields(RunConfig)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in kinds:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: {key} set twice")
        values[key] = _convert(key, kinds[key], raw)
    base = Path(base_dir)
    for key in _PATH_KEYS:
        if values.get(key):
            values[key] = str(base / values[key])
    if "checkpoint_dir" not in values:
        values["checkpoint_dir"] = str(base / RunConfig.checkpoint_dir)
    try:
        return RunConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"config: {exc}") from None


def load_config(path) -> RunConfig:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), path.parent)


def with_overrides(cfg: RunConfig, **changes) -> RunConfig:
    return replace(cfg, **{k: v for k, v in changes.items() if v is not None})
