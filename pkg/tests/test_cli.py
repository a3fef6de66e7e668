"""CLI harness: corpus loading, shuffling, and the four subcommands."""

import itertools
import json

import pytest

from conftest import random_words
from dynpdt.cli import load_corpus, main, shuffle_keys


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "words.txt"
    path.write_bytes(b"\n".join(random_words(200, seed=6)) + b"\n")
    return path


def test_load_corpus_counts(tmp_path):
    path = tmp_path / "messy.txt"
    path.write_bytes(b"alpha\r\nbeta\n\nal\x00pha\nbeta\nalpha\n\n")
    keys, counts = load_corpus(path)
    assert keys == [b"alpha", b"beta", b"beta", b"alpha"]
    assert counts == {"lines_blank": 3, "lines_invalid": 1, "lines_duplicate": 0}

    keys, counts = load_corpus(path, dedupe=True)
    assert keys == [b"alpha", b"beta"]
    assert counts["lines_duplicate"] == 2


def test_shuffle_is_seeded_permutation():
    base = random_words(100, seed=0)
    a, b = list(base), list(base)
    shuffle_keys(a, 42)
    shuffle_keys(b, 42)
    assert a == b
    assert a != base
    assert sorted(a) == base

    c = list(base)
    shuffle_keys(c, 43)
    assert c != a


def test_shuffle_reaches_every_order():
    # all 6 arrangements of three keys show up across seeds
    seen = set()
    for seed in range(60):
        keys = [b"a", b"b", b"c"]
        shuffle_keys(keys, seed)
        seen.add(tuple(keys))
    assert seen == set(itertools.permutations([b"a", b"b", b"c"]))


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return rc, out


def test_build_verifies_corpus(corpus, capsys):
    rc, out = run(capsys, "build", corpus, "--capacity", 64, "--seed", 3)
    assert rc == 0
    rep = json.loads(out)
    assert rep["command"] == "build"
    assert rep["n_keys"] == 200
    assert rep["n_unique"] == 200
    assert rep["verify_failures"] == 0
    assert rep["node_count"] >= 200
    assert rep["growth_events"] >= 2
    assert rep["memory_bytes"] > 0


def test_build_all_backend_flags(corpus, capsys):
    for repr_ in ("pbt", "cbt", "pfkt", "cfkt"):
        for nlm in ("plm", "slm"):
            rc, out = run(capsys, "build", corpus, "--repr", repr_, "--nlm", nlm,
                          "--capacity", 256, "--ell", 8)
            assert rc == 0
            rep = json.loads(out)
            assert (rep["repr"], rep["nlm"]) == (repr_, nlm)
            assert rep["verify_failures"] == 0


def test_bench_hits_and_misses(corpus, capsys):
    rc, out = run(capsys, "bench", corpus, "--capacity", 256,
                  "--queries", 50, "--repeats", 1)
    assert rc == 0
    rep = json.loads(out)
    assert rep["queries"] == 50
    assert rep["hit_rate"] == 1.0
    assert rep["miss_hit_rate"] == 0.0
    assert rep["hit_ns_per_op"] > 0
    assert rep["miss_ns_per_op"] > 0


def test_stats_reports_shape(corpus, capsys):
    rc, out = run(capsys, "stats", corpus, "--capacity", 256, "--lambda", 8)
    assert rc == 0
    rep = json.loads(out)
    assert rep["node_count"] == rep["step_count"] + rep["nonstep_count"]
    assert 0 <= rep["steps_pct"] < 1
    assert rep["ave_height"] > 0
    assert rep["ave_nll"] > 1


def test_bounds_brackets_stats(corpus, capsys):
    rc, out = run(capsys, "bounds", corpus)
    assert rc == 0
    bounds = json.loads(out)
    assert bounds["height_sum_min"] <= bounds["height_sum_max"]
    assert bounds["ave_height_min"] == round(bounds["height_sum_min"] / bounds["n_keys"], 4)

    rc, out = run(capsys, "stats", corpus, "--capacity", 256)
    stats = json.loads(out)
    assert bounds["ave_height_min"] <= stats["ave_height"] <= bounds["ave_height_max"] + 1e-4


def test_tsv_format(corpus, capsys):
    rc, out = run(capsys, "build", corpus, "--capacity", 256, "--format", "tsv")
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln]
    fields = dict(ln.split("\t", 1) for ln in lines)
    assert fields["verify_failures"] == "0"
    assert [ln.split("\t", 1)[0] for ln in lines] == sorted(fields)


def test_duplicate_lines_without_dedupe_still_verify(tmp_path, capsys):
    path = tmp_path / "dups.txt"
    path.write_bytes(b"one\ntwo\none\nthree\n")
    rc, out = run(capsys, "build", path, "--capacity", 256)
    assert rc == 0
    rep = json.loads(out)
    # first occurrence wins; the repeat neither inserts nor clobbers
    assert rep["n_keys"] == 4
    assert rep["n_unique"] == 3
    assert rep["verify_failures"] == 0


def test_missing_corpus_fails(capsys):
    rc = main(["build", "/no/such/file.txt"])
    err = capsys.readouterr().err
    assert rc == 1
    assert "error:" in err


def test_empty_corpus_fails(tmp_path, capsys):
    path = tmp_path / "empty.txt"
    path.write_bytes(b"\n\n")
    rc = main(["stats", str(path)])
    err = capsys.readouterr().err
    assert rc == 1
    assert "no usable lines" in err


def test_bad_capacity_fails_cleanly(corpus, capsys):
    rc = main(["build", str(corpus), "--capacity", "100"])
    err = capsys.readouterr().err
    assert rc == 1
    assert "error:" in err


def test_bad_arguments_exit_two(corpus):
    with pytest.raises(SystemExit) as exc:
        main(["build", str(corpus), "--repr", "nosuch"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])
