"""Command-line entry point: ``parseq-urdu {synth,train,eval,infer,gradcheck}``.

Exit codes: 0 success, 1 usage or config error, 2 I/O error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import data, gradcheck, imaging, lexicon, training
from . import tensor as T
from .checkpoint import CheckpointError
from .config import ConfigError, RunConfig, load_config
from .errors import ParseqError
from .shaping import GlyphVocabulary, VocabFormatError, build_vocab, decode, full_vocab

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("parseq_urdu")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# -- helpers -------------------------------------------------------------------

def _preprocess_extra(cfg: RunConfig) -> dict[str, str]:
    return {"median_radius": str(cfg.median_radius), "gaussian_sigma": repr(cfg.gaussian_sigma),
            "deskew": str(cfg.deskew), "contrast": str(cfg.contrast)}


def _preprocess_from_extra(extra: dict[str, str]) -> imaging.PreprocessConfig:
    if not extra:
        return imaging.PreprocessConfig()
    return imaging.PreprocessConfig(int(extra["median_radius"]), float(extra["gaussian_sigma"]),
                                    extra["deskew"] == "True", extra["contrast"] == "True")


def _require(path: Path, what: str) -> Path:
    if not str(path) or not path.exists():
        raise FileNotFoundError(f"{what} not found: {path}")
    return path


def _load_split(path: Path, cfg: RunConfig, pre: imaging.PreprocessConfig) -> list[data.Sample]:
    return training.preprocess_samples(data.load_manifest(path), pre, cfg.height, cfg.width)


# -- commands ------------------------------------------------------------------

def cmd_synth(args) -> int:
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    if args.lexicon:
        words = data.read_lexicon(args.lexicon)
        vocab = build_vocab(words) if words else None
    elif args.random_words:
        words, vocab = None, full_vocab()
    else:
        words, vocab = list(lexicon.DEMO_WORDS), build_vocab(lexicon.DEMO_WORDS)
    out = Path(args.out)
    if words is None:
        pick = np.random.default_rng([args.seed, data.split_code(args.split), 1])
        words = [data.random_word(pick, 1, args.max_len) for _ in range(args.samples)]
    samples = data.synth_samples(args.samples, args.seed, words, args.split, args.height, args.width)
    manifest = data.write_manifest(out, samples)
    if vocab is not None:
        vocab.save(out / "vocab.tsv")
    print(f"wrote {len(samples)} samples to {manifest}")
    return EXIT_OK


def cmd_train(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.max_steps is not None:
        cfg = replace(cfg, max_steps=args.max_steps)
    pre = cfg.preprocess_config()
    ckdir = Path(cfg.checkpoint_dir)
    if args.checkpoint:
        state, _ = training.load_state(args.checkpoint)
    else:
        vocab = GlyphVocabulary.load(_require(cfg.vocab_path, "vocabulary"))
        state = training.TrainState.fresh(cfg.model_config(len(vocab)), vocab, cfg.seed)
    train_set = _load_split(_require(Path(cfg.train_manifest), "train manifest"), cfg, pre) \
        if cfg.max_steps > state.step else []
    val_set = _load_split(_require(Path(cfg.val_manifest), "val manifest"), cfg, pre) \
        if cfg.val_manifest else []
    ckdir.mkdir(parents=True, exist_ok=True)
    loop = training.LoopConfig(cfg.max_steps, cfg.val_interval, cfg.batch_size, cfg.mode, cfg.refine)
    optim = training.OptimConfig(cfg.lr, cfg.momentum, cfg.clip_norm)
    state = training.fit(state, train_set, val_set, loop, optim, ckdir, cfg.metrics_path,
                         cfg.augment_policy(), extra=_preprocess_extra(cfg))
    print(f"trained to step {state.step}; checkpoints in {ckdir}")
    return EXIT_OK


def cmd_eval(args) -> int:
    cfg = load_config(args.config)
    state, extra = training.load_state(_require(Path(args.checkpoint), "checkpoint"))
    manifest = Path(args.manifest) if args.manifest else Path(cfg.val_manifest)
    samples = _load_split(_require(manifest, "manifest"), cfg, cfg.preprocess_config())
    mode = args.mode or cfg.mode
    refine = cfg.refine if args.refine is None else args.refine
    report = training.evaluate(state.model, samples, state.vocab, mode, refine)
    out = Path(args.out) if args.out else Path(args.checkpoint).with_suffix(".report.tsv")
    report.write(out)
    print(report.summary())
    print(f"report written to {out}")
    return EXIT_OK


def cmd_infer(args) -> int:
    state, extra = training.load_state(_require(Path(args.checkpoint), "checkpoint"))
    cfg = state.model.cfg
    img = data.read_pgm(_require(Path(args.image), "image"))
    img = imaging.preprocess(img, _preprocess_from_extra(extra), cfg.height, cfg.width)
    ids = state.model.recognize(img, args.mode or "ar", 1 if args.refine is None else args.refine)[0]
    sys.stdout.write(decode(ids, state.vocab) + "\n")
    return EXIT_OK


def cmd_gradcheck(args) -> int:
    T.SIGN_FLIP.update(args.inject_sign_flip or ())
    try:
        results = gradcheck.run_all(args.seed)
    finally:
        T.SIGN_FLIP.difference_update(args.inject_sign_flip or ())
    failed = 0
    for r in results:
        status = "ok" if r.passed else "FAIL"
        failed += not r.passed
        print(f"{r.name:<14} rel_err={r.rel_error:.3e} tol={r.tol:.0e} {status}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_NUMERIC if failed else EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="parseq-urdu", description="Permuted autoregressive Urdu word recognizer.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="render a synthetic dataset")
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--split", default="train", help="split name; also keys the random streams")
    s.add_argument("--lexicon", help="whitespace-separated word list (default: built-in demo lexicon)")
    s.add_argument("--random-words", action="store_true",
                   help="draw random letter strings over the supported repertoire instead")
    s.add_argument("--max-len", type=int, default=8, help="longest random word")
    s.add_argument("--height", type=int, default=32)
    s.add_argument("--width", type=int, default=128)
    s.set_defaults(func=cmd_synth)

    t = sub.add_parser("train", help="train from a config file")
    t.add_argument("--config", required=True)
    t.add_argument("--seed", type=int)
    t.add_argument("--max-steps", type=int)
    t.add_argument("--checkpoint", help="resume from this checkpoint")
    t.set_defaults(func=cmd_train)

    for name, func, help_ in (("eval", cmd_eval, "score a checkpoint on a manifest"),
                              ("infer", cmd_infer, "recognize one PGM word image")):
        e = sub.add_parser(name, help=help_)
        if name == "eval":
            e.add_argument("--config", required=True)
            e.add_argument("--manifest", help="manifest to score (default: val_manifest)")
            e.add_argument("--out", help="report file (default: next to the checkpoint)")
        e.add_argument("--checkpoint", required=True)
        e.add_argument("--seed", type=int, default=0, help="accepted for uniformity; decoding is greedy")
        e.add_argument("--mode", choices=("ar", "nar"))
        e.add_argument("--refine", type=int, help="cloze refinement passes in nar mode")
        if name == "infer":
            e.add_argument("image")
        e.set_defaults(func=func)

    g = sub.add_parser("gradcheck", help="finite-difference gradient suite")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--inject-sign-flip", action="append", metavar="OP",
                   help=argparse.SUPPRESS)
    g.set_defaults(func=cmd_gradcheck)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"parseq-urdu: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"parseq-urdu: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except training.NonFiniteLoss as exc:
        print(f"parseq-urdu: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, data.MalformedManifest, data.UnsupportedImageFormat, CheckpointError,
            VocabFormatError) as exc:
        print(f"parseq-urdu: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParseqError as exc:
        print(f"parseq-urdu: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
