"""Acceptance suite.  Each test carries a ``criterion(n)`` marker; the conftest
prints one pass/fail line per criterion at the end of the run.

The two end-to-end training runs dominate the wall time (roughly twenty minutes each on one core).
"""

import itertools
import random
import shutil
import time
from pathlib import Path

import numpy as np
import pytest

from parseq_urdu import data, gradcheck, imaging, training
from parseq_urdu import tensor as T
from parseq_urdu.cli import main
from parseq_urdu.config import load_config
from parseq_urdu.evaluation import aggregate, edit_distance
from parseq_urdu.lexicon import DEMO_WORDS
from parseq_urdu.model import Recognizer, RecognizerConfig
from parseq_urdu.permutations import Permutation, masks_from_permutation
from parseq_urdu.shaping import EOS, PAD, UNK, build_vocab, decode, encode, full_vocab, shape_word, \
    supported_letters

from _reference import reference_causal_logits
from test_eval import brute
from test_permutations import brute_force_mask
from test_shaping import as_pairs, oracle_shape

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "acceptance.cfg"
TIME_BUDGET_S = 30 * 60


def detail(record_property, text):
    record_property("detail", text)


class Run:
    """One synth + train pass of the acceptance pipeline in its own directory."""

    def __init__(self, root: Path):
        self.root = root
        (root / "configs").mkdir(parents=True, exist_ok=True)
        self.config = root / "configs" / "acceptance.cfg"
        shutil.copy(CONFIG, self.config)
        t0 = time.perf_counter()
        assert main(["synth", "--out", str(root / "data/train"), "--samples", "2000", "--seed", "7"]) == 0
        assert main(["synth", "--out", str(root / "data/val"), "--samples", "200", "--seed", "7",
                     "--split", "val"]) == 0
        self.synth_seconds = time.perf_counter() - t0
        t0 = time.perf_counter()
        self.train_exit = main(["train", "--config", str(self.config)])
        self.train_seconds = time.perf_counter() - t0
        self.cfg = load_config(self.config)
        self.ckdir = Path(self.cfg.checkpoint_dir)
        self.metrics = Path(self.cfg.metrics_path)

    def evaluate(self, manifest: Path, out: Path):
        assert main(["eval", "--config", str(self.config), "--checkpoint", str(self.ckdir / "last.ckpt"),
                     "--manifest", str(manifest), "--out", str(out)]) == 0
        rows = [ln.split("\t") for ln in out.read_text(encoding="utf-8").splitlines()
                if not ln.startswith("#")]
        return aggregate((r[0], r[2], r[1]) for r in rows)


@pytest.fixture(scope="module")
def first_run(tmp_path_factory):
    return Run(tmp_path_factory.mktemp("acceptance") / "run1")


@pytest.fixture(scope="module")
def second_run(tmp_path_factory, first_run):
    return Run(tmp_path_factory.mktemp("acceptance") / "run2")


# -- 1 ----------------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_published_numbers_not_reproducible(record_property):
    pytest.skip("published CER/loss figures rely on a private 160k-image corpus; "
                "covered by the synthetic criteria below")


# -- 2 ----------------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_synthetic_training_reaches_target(first_run, record_property):
    r = first_run
    assert r.train_exit == 0
    report = r.evaluate(r.root / "data/val/manifest.tsv", r.root / "val.report.tsv")
    detail(record_property, f"val cer={report.cer:.4f} word_acc={report.word_accuracy:.4f} "
                            f"steps={r.cfg.max_steps} train={r.train_seconds:.0f}s "
                            f"synth={r.synth_seconds:.0f}s")
    assert r.cfg.max_steps <= 5000
    assert (r.cfg.embed_dim, r.cfg.heads, r.cfg.enc_layers, r.cfg.dec_layers, r.cfg.ff_dim) \
        == (256, 4, 4, 2, 1024)
    assert (r.cfg.dropout, r.cfg.permutations, r.cfg.batch_size) == (0.3, 3, 32)
    assert report.cer <= 0.05
    assert report.word_accuracy >= 0.90
    assert r.train_seconds <= TIME_BUDGET_S


@pytest.mark.criterion(2)
def test_training_manifest_cer(first_run, record_property):
    report = first_run.evaluate(first_run.root / "data/train/manifest.tsv",
                                first_run.root / "train.report.tsv")
    detail(record_property, f"train cer={report.cer:.4f}")
    assert report.cer <= 0.05


@pytest.mark.criterion(2)
def test_infer_trained_word(first_run, capsys, record_property):
    sample = data.load_manifest(first_run.root / "data/train/manifest.tsv")[0]
    capsys.readouterr()
    assert main(["infer", "--checkpoint", str(first_run.ckdir / "last.ckpt"),
                 str(first_run.root / "data/train" / sample.id)]) == 0
    out = capsys.readouterr().out
    detail(record_property, f"{sample.id}: expected {sample.label!r} got {out.strip()!r}")
    assert out == sample.label + "\n"


# -- 3 ----------------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_k1_loss_is_causal_cross_entropy(record_property):
    cfg = RecognizerConfig(vocab_size=12, embed_dim=16, heads=2, enc_layers=1, dec_layers=2, ff_dim=32,
                           dropout=0.0, permutations=1, height=8, width=16, patch_h=4, patch_w=8,
                           max_label_len=6)
    rng = np.random.default_rng(2024)
    worst = 0.0
    for batch in range(20):
        model = Recognizer(cfg, seed=batch)
        B = int(rng.integers(1, 5))
        images = rng.integers(0, 256, size=(B, cfg.height, cfg.width)).astype(np.uint8)
        lengths = rng.integers(1, cfg.num_slots + 1, size=B)
        targets = np.full((B, lengths.max()), PAD)
        for b, n in enumerate(lengths):
            targets[b, :n] = np.append(rng.integers(4, cfg.vocab_size, size=n - 1), EOS)
        perms = [[Permutation.identity(int(n))] for n in lengths]
        with T.no_grad():
            loss = model.loss(images, targets, perms).item()
            memory = model.encode_image(images).data
        per_sample = []
        for b, n in enumerate(lengths):
            logp = T.log_softmax(reference_causal_logits(model, memory[b], targets[b, :n]))
            per_sample.append(-np.mean(logp[np.arange(n), targets[b, :n]]))
        worst = max(worst, abs(loss - np.mean(per_sample)))
    detail(record_property, f"max |delta|={worst:.2e} over 20 batches")
    assert worst < 1e-12


# -- 4 ----------------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_masks_exhaustive(record_property):
    checked = mismatches = 0
    for n in range(1, 6):
        for order in itertools.permutations(range(n)):
            checked += 1
            pair = masks_from_permutation(Permutation(order))
            expected = brute_force_mask(order)
            mismatches += not (np.array_equal(pair.content_mask, expected)
                               and np.array_equal(pair.query_mask, expected))
    detail(record_property, f"{checked} permutations, {mismatches} mismatches")
    assert checked == 1 + 2 + 6 + 24 + 120 and mismatches == 0


# -- 5 ----------------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_gradient_suite(record_property, capsys):
    results = gradcheck.run_all(seed=0)
    worst_op = max(r.rel_error for r in results if r.name != "end_to_end")
    e2e = next(r for r in results if r.name == "end_to_end")
    detail(record_property, f"{len(results)} checks, worst op {worst_op:.1e}, end-to-end {e2e.rel_error:.1e}")
    assert all(r.tol == 1e-4 for r in results if r.name != "end_to_end") and e2e.tol == 1e-3
    assert all(r.passed for r in results)
    assert main(["gradcheck"]) == 0


# -- 6 ----------------------------------------------------------------------------------

@pytest.mark.criterion(6)
def test_cer_oracle(record_property):
    rng = random.Random(6)
    alphabet = "ابپتٹثج"
    for _ in range(1000):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 8)))
        assert edit_distance(a, b) == brute(a, b), (a, b)
    report = aggregate([("s1", "ابتا", "ابپا"), ("s2", "ابپتٹا", "ابپتٹب")])
    detail(record_property, f"1000 pairs agree; pooled fixture cer={report.cer}")
    assert report.cer == 0.2


# -- 7 ----------------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_shaping_round_trip(record_property):
    demo = build_vocab(DEMO_WORDS)
    assert all(decode(encode(w, demo), demo) == w for w in DEMO_WORDS)
    vocab, letters = full_vocab(), supported_letters()
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        w = "".join(chr(letters[i]) for i in rng.integers(0, len(letters), size=int(rng.integers(1, 9))))
        ids = encode(w, vocab)
        assert UNK not in ids and decode(ids, vocab) == w
    for word in ("ب", "ببب", "بابا"):
        assert as_pairs(shape_word(word)) == oracle_shape(word)
    detail(record_property, f"{len(DEMO_WORDS)} lexicon + 10000 random words; 3 fixtures match")


# -- 8 ----------------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_identical_runs(first_run, second_run, record_property):
    a, b = first_run.metrics.read_bytes(), second_run.metrics.read_bytes()
    detail(record_property, f"{len(a.splitlines())} metric lines, identical={a == b}")
    assert a and a == b


# -- 9 ----------------------------------------------------------------------------------

@pytest.mark.criterion(9)
def test_robustness_probes(first_run, record_property):
    state, _ = training.load_state(first_run.ckdir / "last.ckpt")
    cfg = first_run.cfg
    raw = data.load_manifest(first_run.root / "data/val/manifest.tsv")
    trained = cfg.preprocess_config()
    no_deskew = imaging.PreprocessConfig(cfg.median_radius, cfg.gaussian_sigma, False, cfg.contrast)
    with_deskew = imaging.PreprocessConfig(cfg.median_radius, cfg.gaussian_sigma, True, cfg.contrast)

    def cer(transform, pre):
        moved = [data.Sample(transform(s.image), s.label, s.id) for s in raw]
        samples = training.preprocess_samples(moved, pre, cfg.height, cfg.width)
        return training.evaluate(state.model, samples, state.vocab, cfg.mode, cfg.refine).cer

    blur = cer(lambda im: imaging.gaussian_filter(im, 1.5), trained)
    rot_plain = cer(lambda im: imaging.rotate(im, 5.0), no_deskew)
    rot_deskew = cer(lambda im: imaging.rotate(im, 5.0), with_deskew)
    detail(record_property, f"blur1.5 cer={blur:.4f} rot+5 no-deskew cer={rot_plain:.4f} "
                            f"rot+5 deskew cer={rot_deskew:.4f}")
    assert rot_deskew <= rot_plain
