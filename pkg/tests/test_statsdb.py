import random
from collections import Counter

import pytest

from conftest import GOLDEN, make_call
from src.backend.schema import ProjectRecord, StatsConfig
from src.backend.statsdb import (
    CorpusMeta, StatsDB, StatsDBFormatError, StatsDBVersionError, argmax_position_gap,
    build_db, has_function, load_db, psi_exceeds, save_db, weight,
)

STAMP = "2024-01-01T00:00:00Z"

# Tokens the seed table knows, so the splitter keeps them whole.
VOCABULARY = ["buf", "size", "count", "src", "dst", "pid", "sig", "port", "rate", "data"]
FUNCTIONS = ["copy", "send", "kill"]


def _random_project(rng: random.Random, project_id: str) -> ProjectRecord:
    calls = []
    for n in range(rng.randint(0, 6)):
        arity = rng.randint(1, 4)
        names = ["_".join(rng.sample(VOCABULARY, rng.randint(1, 2))) for _ in range(arity)]
        calls.append(make_call(rng.choice(FUNCTIONS), names, file_path=f"{project_id}/x.c", line=n + 1))
    return ProjectRecord(project_id, calls)


def _oracle(projects):
    """Projects per (function, position, morpheme), computed straight from the names."""
    counts = Counter()
    for project in projects:
        keys = set()
        for call in project.call_sites:
            sets = [set(text.split("_")) for text in call.arg_source_texts]
            common = set.intersection(*sets) if len(sets) > 1 else set()
            for position, morphemes in enumerate(sets, start=1):
                keys.update((call.callee, position, m) for m in morphemes - common)
        counts.update(keys)
    return dict(counts)


def test_build_db_matches_oracle(seed_freq):
    rng = random.Random(7)
    for corpus in range(100):
        projects = [_random_project(rng, f"p{corpus}_{n}") for n in range(rng.randint(1, 5))]
        db = build_db(projects, seed_freq, build_timestamp=STAMP)
        assert db.weights == _oracle(projects)
        assert db.corpus_meta.project_count == len(projects)


def test_build_db_is_permutation_invariant(seed_freq):
    rng = random.Random(11)
    projects = [_random_project(rng, f"p{n}") for n in range(8)]
    expected = build_db(projects, seed_freq, build_timestamp=STAMP)
    shuffled = [ProjectRecord(p.project_id, rng.sample(p.call_sites, len(p.call_sites))) for p in projects]
    rng.shuffle(shuffled)
    assert build_db(shuffled, seed_freq, build_timestamp=STAMP) == expected
    assert build_db(projects, seed_freq, jobs=4, build_timestamp=STAMP) == expected


def test_weight_counts_projects_not_calls(seed_freq):
    calls = [make_call("kill", ["pid", "sig"], line=n) for n in range(1, 4)]
    db = build_db([ProjectRecord("a", calls), ProjectRecord("b", calls[:1])], seed_freq, build_timestamp=STAMP)
    assert db.weight("kill", "pid", 1) == 2
    assert db.weight("kill", "sig", 2) == 2
    assert db.weight("kill", "sig", 1) == 0


def test_common_morphemes_dropped_per_call(seed_freq):
    call = make_call("copy", ["src_buf", "dst_buf"])
    db = build_db([ProjectRecord("a", [call])], seed_freq, build_timestamp=STAMP)
    assert db.weights == {("copy", 1, "src"): 1, ("copy", 2, "dst"): 1}


def test_macro_expansions_and_duplicate_files_skipped(seed_freq):
    first = ProjectRecord("a", [make_call("kill", ["pid", "sig"], file_path="shared.c")],
                          file_digests={"shared.c": "0" * 64})
    copy = ProjectRecord("b", [make_call("kill", ["pid", "sig"], file_path="vendored.c"),
                               make_call("MAX", ["pid", "sig"], file_path="own.c", from_macro_expansion=True)],
                         file_digests={"vendored.c": "0" * 64, "own.c": "1" * 64})
    db = build_db([copy, first], seed_freq, build_timestamp=STAMP)
    assert db.weight("kill", "pid", 1) == 1
    assert not db.has_function("MAX")
    assert db.corpus_meta.project_count == 2


def test_max_position_limits_keys(seed_freq):
    call = make_call("f", ["src", "dst", "buf"])
    db = build_db([ProjectRecord("a", [call])], seed_freq, StatsConfig(max_position=2), build_timestamp=STAMP)
    assert db.weight("f", "buf", 3) == 0
    assert db.weight("f", "dst", 2) == 1


def test_duplicate_project_ids_rejected(seed_freq):
    with pytest.raises(ValueError, match="duplicate project id"):
        build_db([ProjectRecord("a"), ProjectRecord("a")], seed_freq)


def test_empty_corpus(seed_freq):
    db = build_db([], seed_freq, build_timestamp=STAMP)
    assert len(db) == 0
    assert db.corpus_meta.project_count == 0


def _db(weights):
    return StatsDB(weights=weights, corpus_meta=CorpusMeta(project_count=20, build_timestamp=STAMP))


def test_psi_exceeds_reads_missing_weight_as_one():
    db = _db({("f", 1, "pid"): 6})
    assert psi_exceeds(db, "f", "pid", 1, 2, 5.0)
    assert not psi_exceeds(db, "f", "pid", 1, 2, 6.0)
    assert not psi_exceeds(db, "f", "pid", 2, 1, 0.0)


def test_psi_exceeds_ratio():
    db = _db({("f", 1, "pid"): 10, ("f", 2, "pid"): 2})
    assert db.psi_exceeds("f", "pid", 1, 2, 4.9)
    assert not db.psi_exceeds("f", "pid", 1, 2, 5.0)
    with pytest.raises(ValueError):
        db.psi_exceeds("f", "pid", 1, 1, 1.0)


def test_argmax_position_gap():
    db = _db({("f", 2, "sig"): 10, ("f", 1, "sig"): 1, ("f", 2, "num"): 3, ("f", 1, "pid"): 10})
    assert argmax_position_gap(db, "f", 2, 1) == "sig"
    assert argmax_position_gap(db, "f", 1, 2) == "pid"
    assert argmax_position_gap(db, "g", 1, 2) is None


def test_argmax_ties_and_non_positive_gaps():
    tied = _db({("f", 2, "beta"): 4, ("f", 2, "alpha"): 4})
    assert tied.argmax_position_gap("f", 2, 1) == "alpha"
    balanced = _db({("f", 1, "pid"): 3, ("f", 2, "pid"): 3})
    assert balanced.argmax_position_gap("f", 2, 1) is None


def test_lookups():
    db = _db({("kill", 1, "pid"): 3})
    assert weight(db, "kill", "pid", 1) == 3
    assert weight(db, "kill", "pid", 2) == 0
    assert has_function(db, "kill")
    assert not has_function(db, "wait")


def test_save_and_load_are_byte_stable(tmp_path, seed_freq):
    rng = random.Random(3)
    db = build_db([_random_project(rng, f"p{n}") for n in range(6)], seed_freq, build_timestamp=STAMP)
    first, second = tmp_path / "a.statsdb", tmp_path / "b.statsdb"
    save_db(db, first)
    loaded = load_db(first)
    save_db(loaded, second)
    assert loaded == db
    assert first.read_bytes() == second.read_bytes()


def test_golden_database(golden_db):
    assert golden_db.corpus_meta.project_count == 12
    assert golden_db.weight("XQueryExtension", "event", 4) == 12
    assert len(golden_db) == 10


def test_build_timestamp_from_source_date_epoch(monkeypatch, seed_freq):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert build_db([], seed_freq).corpus_meta.build_timestamp == "1970-01-01T00:00:00Z"


@pytest.mark.parametrize("content, message", [
    ("", "header"),
    ("#argswap-freq v1\tentries=0\n", "header"),
    ("#argswap-statsdb v1\tentries=1\tproject_count=2\nkill\t1\tpid\n", "expected 4 fields"),
    ("#argswap-statsdb v1\tentries=1\tproject_count=2\nkill\t1\tpid\t3\n", "exceeds project count"),
    ("#argswap-statsdb v1\tentries=1\tproject_count=2\nkill\t0\tpid\t1\n", "integer >= 1"),
    ("#argswap-statsdb v1\tentries=1\tproject_count=2\nkill\t1\tPid\t1\n", "invalid morpheme"),
    ("#argswap-statsdb v1\tentries=2\tproject_count=2\nkill\t1\tpid\t1\n", "declares 2 entries"),
    ("#argswap-statsdb v1\tentries=1\tproject_count=2\nkill\t1\tpid\t1", "newline"),
    ("#argswap-statsdb v1\tentries=0\n", "project_count"),
])
def test_load_rejects_corrupt_files(tmp_path, content, message):
    path = tmp_path / "bad.statsdb"
    path.write_bytes(content.encode("utf-8"))
    with pytest.raises(StatsDBFormatError, match=message):
        load_db(path)


def test_load_reports_byte_offset(tmp_path):
    path = tmp_path / "bad.statsdb"
    header = "#argswap-statsdb v1\tentries=2\tproject_count=2\n"
    good = "kill\t1\tpid\t1\n"
    path.write_bytes((header + good + "kill\t1\tsig\tx\n").encode("utf-8"))
    with pytest.raises(StatsDBFormatError, match=f"byte {len(header) + len(good)}"):
        load_db(path)


def test_load_rejects_other_versions(tmp_path):
    path = tmp_path / "future.statsdb"
    path.write_bytes(b"#argswap-statsdb v2\tentries=0\tproject_count=0\n")
    with pytest.raises(StatsDBVersionError, match="v2"):
        load_db(path)


def test_golden_file_round_trips(tmp_path, golden_db):
    path = tmp_path / "copy.statsdb"
    save_db(golden_db, path)
    assert path.read_bytes() == (GOLDEN / "golden.statsdb").read_bytes()
