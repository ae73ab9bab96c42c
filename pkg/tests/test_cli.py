import filecmp
import struct

import pytest

from parseq_urdu import data
from parseq_urdu.cli import main
from parseq_urdu.config import ConfigError, RunConfig, parse_config

SMALL = """\
# tiny model for CLI plumbing
embed_dim = 32
heads = 2
enc_layers = 1
dec_layers = 1
ff_dim = 64
patch_h = 8
patch_w = 16
max_label_len = 10
batch_size = 4
val_interval = 2
max_steps = {steps}
lr = {lr}
seed = 3
train_manifest = train/manifest.tsv
val_manifest = val/manifest.tsv
checkpoint_dir = ck
"""


@pytest.fixture
def workdir(tmp_path):
    assert main(["synth", "--out", str(tmp_path / "train"), "--samples", "12", "--seed", "7"]) == 0
    assert main(["synth", "--out", str(tmp_path / "val"), "--samples", "4", "--seed", "7",
                 "--split", "val"]) == 0
    return tmp_path


def write_config(path, steps=4, lr=0.1, extra=""):
    path.write_text(SMALL.format(steps=steps, lr=lr) + extra, encoding="utf-8")
    return path


class TestSynth:
    def test_zero_samples(self, tmp_path):
        assert main(["synth", "--out", str(tmp_path), "--samples", "0"]) == 0
        assert (tmp_path / "manifest.tsv").read_text(encoding="utf-8") == ""

    def test_byte_identical_trees(self, tmp_path):
        for name in ("a", "b"):
            assert main(["synth", "--out", str(tmp_path / name), "--samples", "15", "--seed", "4"]) == 0
        cmp = filecmp.dircmp(tmp_path / "a", tmp_path / "b")
        assert not cmp.diff_files and not cmp.left_only and not cmp.right_only
        assert not filecmp.dircmp(tmp_path / "a/images", tmp_path / "b/images").diff_files
        names = sorted(p.name for p in (tmp_path / "a/images").iterdir())
        assert all(filecmp.cmp(tmp_path / "a/images" / n, tmp_path / "b/images" / n, shallow=False)
                   for n in names)

    def test_seeds_differ(self, tmp_path):
        main(["synth", "--out", str(tmp_path / "a"), "--samples", "5", "--seed", "1"])
        main(["synth", "--out", str(tmp_path / "b"), "--samples", "5", "--seed", "2"])
        assert not filecmp.cmp(tmp_path / "a/images/train-000000.pgm",
                               tmp_path / "b/images/train-000000.pgm", shallow=False)

    def test_2000_samples_reload(self, tmp_path):
        assert main(["synth", "--out", str(tmp_path), "--samples", "2000", "--seed", "7"]) == 0
        lines = (tmp_path / "manifest.tsv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2000
        samples = data.load_manifest(tmp_path / "manifest.tsv")
        assert len(samples) == 2000 and all(s.image.shape == (32, 128) for s in samples)

    def test_lexicon_and_random(self, tmp_path):
        lex = tmp_path / "words.txt"
        lex.write_text("کتاب\nقلم\n", encoding="utf-8")
        assert main(["synth", "--out", str(tmp_path / "l"), "--samples", "6", "--lexicon", str(lex)]) == 0
        labels = {s.label for s in data.load_manifest(tmp_path / "l/manifest.tsv")}
        assert labels <= {"کتاب", "قلم"}
        assert main(["synth", "--out", str(tmp_path / "r"), "--samples", "6", "--random-words"]) == 0
        assert len(data.load_manifest(tmp_path / "r/manifest.tsv")) == 6

    def test_missing_lexicon_is_io_error(self, tmp_path):
        assert main(["synth", "--out", str(tmp_path), "--samples", "1", "--lexicon",
                     str(tmp_path / "none.txt")]) == 2


class TestTrainEvalInfer:
    def test_zero_steps_writes_checkpoint(self, workdir):
        cfg = write_config(workdir / "run.cfg", steps=0)
        assert main(["train", "--config", str(cfg)]) == 0
        assert (workdir / "ck/last.ckpt").exists()

    def test_train_eval_infer(self, workdir, capsys):
        cfg = write_config(workdir / "run.cfg", steps=4)
        assert main(["train", "--config", str(cfg)]) == 0
        metrics = (workdir / "ck/metrics.tsv").read_text(encoding="utf-8").splitlines()
        assert [m.split("\t")[0] for m in metrics] == ["2", "4"]
        ck = str(workdir / "ck/last.ckpt")
        report = workdir / "report.tsv"
        assert main(["eval", "--config", str(cfg), "--checkpoint", ck, "--out", str(report)]) == 0
        assert "cer=" in capsys.readouterr().out
        assert len(report.read_text(encoding="utf-8").splitlines()) == 5
        assert main(["eval", "--config", str(cfg), "--checkpoint", ck, "--mode", "nar", "--refine", "2",
                     "--manifest", str(workdir / "train/manifest.tsv"), "--out", str(report)]) == 0
        assert len(report.read_text(encoding="utf-8").splitlines()) == 13
        capsys.readouterr()
        assert main(["infer", "--checkpoint", ck, str(workdir / "val/images/val-000000.pgm")]) == 0
        out = capsys.readouterr().out
        assert out.endswith("\n") and "\t" not in out

    def test_resume(self, workdir):
        cfg = write_config(workdir / "run.cfg", steps=2)
        assert main(["train", "--config", str(cfg)]) == 0
        assert main(["train", "--config", str(cfg), "--max-steps", "4",
                     "--checkpoint", str(workdir / "ck/last.ckpt")]) == 0
        lines = (workdir / "ck/metrics.tsv").read_text(encoding="utf-8").splitlines()
        assert [m.split("\t")[0] for m in lines] == ["2", "4"]

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_non_finite_loss_exit_3(self, workdir):
        cfg = write_config(workdir / "run.cfg", steps=6, lr=1e308)
        assert main(["train", "--config", str(cfg)]) == 3

    def test_version_mismatch_exit_2(self, workdir):
        cfg = write_config(workdir / "run.cfg", steps=0)
        main(["train", "--config", str(cfg)])
        ck = workdir / "ck/last.ckpt"
        raw = bytearray(ck.read_bytes())
        raw[8:12] = struct.pack("<I", 99)
        ck.write_bytes(bytes(raw))
        assert main(["infer", "--checkpoint", str(ck), str(workdir / "val/images/val-000000.pgm")]) == 2

    def test_missing_manifest_exit_2(self, workdir):
        cfg = write_config(workdir / "run.cfg", extra="")
        (workdir / "train/manifest.tsv").unlink()
        assert main(["train", "--config", str(cfg)]) == 2


class TestConfig:
    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("embed_dim = 32\nlearning_rate = 0.1\n", encoding="utf-8")
        assert main(["train", "--config", str(cfg)]) == 1
        assert "learning_rate" in capsys.readouterr().err

    def test_bad_value_names_key(self):
        with pytest.raises(ConfigError, match="batch_size"):
            parse_config("batch_size = many\n")
        with pytest.raises(ConfigError, match="dropout"):
            parse_config("dropout = 1.5\n")
        with pytest.raises(ConfigError, match="mode"):
            parse_config("mode = beam\n")

    def test_defaults_and_comments(self, tmp_path):
        cfg = parse_config("# comment\n\nseed = 9   # trailing\naugment = false\n", tmp_path)
        assert cfg.seed == 9 and not cfg.augment
        assert (cfg.embed_dim, cfg.heads, cfg.enc_layers, cfg.dec_layers, cfg.ff_dim) == (256, 4, 4, 2, 1024)
        assert cfg.lr == 0.1 and cfg.batch_size == 32 and cfg.permutations == 3
        assert cfg.augment_policy().is_identity

    def test_paths_relative_to_file(self, tmp_path):
        cfg = parse_config("train_manifest = d/m.tsv\n", tmp_path)
        assert cfg.train_manifest == str(tmp_path / "d/m.tsv")
        assert cfg.vocab_path == tmp_path / "d/vocab.tsv"

    def test_vocab_size_checked(self):
        with pytest.raises(ConfigError):
            RunConfig(vocab_size=10).model_config(12)

    def test_usage_errors_exit_1(self, capsys):
        assert main([]) == 1
        assert main(["train"]) == 1
        assert main(["eval", "--config", "x", "--checkpoint", "y", "--mode", "beam"]) == 1


class TestGradcheck:
    def test_passes(self, capsys):
        assert main(["gradcheck", "--seed", "0"]) == 0
        lines = capsys.readouterr().out.splitlines()
        names = [ln.split()[0] for ln in lines[:-1]]
        assert len(names) == len(set(names)) and "end_to_end" in names
        assert all(ln.endswith("ok") for ln in lines[:-1])

    def test_injected_sign_flip(self, capsys):
        assert main(["gradcheck", "--inject-sign-flip", "layernorm"]) == 3
        out = capsys.readouterr().out
        assert "FAIL" in out
        # the hook is cleared afterwards
        assert main(["gradcheck"]) == 0
