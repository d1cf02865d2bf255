import pytest

from conftest import make_call, make_candidate, make_decl
from src.backend.filters import (
    CallerContext, apply_filters, geometric_negation, group_by_caller, nearby_correct_call,
    nearby_declaration, swap_distance, swap_not_rare, type_check_filter, whitelist_words,
)
from src.backend.schema import FilterConfig, FilterName

CFG = FilterConfig()


def _ctx(*calls, flagged=None, declaration_files=None):
    return CallerContext("a.c", "caller", list(calls), declaration_files or {}, flagged or {})


def test_whitelist_word_in_condition():
    call = make_call("draw", ["height", "width"], enclosing_conditions=["background->Rotate_image"])
    assert whitelist_words(make_candidate(call, None, 1, 2), _ctx(call), CFG)


def test_whitelist_word_in_preceding_lines_and_names():
    call = make_call("draw", ["y", "x"], preceding_lines=["/* swap axes for portrait */"])
    assert whitelist_words(make_candidate(call, None, 1, 2), _ctx(call), CFG)
    call = make_call("draw", ["y", "x"], caller="flip_axes")
    assert whitelist_words(make_candidate(call, None, 1, 2), _ctx(call), CFG)
    call = make_call("draw", ["y", "x"])
    assert not whitelist_words(make_candidate(call, None, 1, 2), _ctx(call), CFG)


def test_custom_whitelist_words():
    call = make_call("draw", ["y", "x"], caller="transpose_matrix")
    cand = make_candidate(call, None, 1, 2)
    assert not whitelist_words(cand, _ctx(call), CFG)
    assert whitelist_words(cand, _ctx(call), FilterConfig(whitelist_words=frozenset({"Transpose"})))


def test_swap_distance():
    call = make_call("f", ["a", "b", "c", "d"])
    assert swap_distance(make_candidate(call, None, 1, 4), _ctx(call), CFG)
    assert not swap_distance(make_candidate(call, None, 1, 3), _ctx(call), CFG)
    assert not swap_distance(make_candidate(call, None, 1, 4), _ctx(call), FilterConfig(max_swap_distance=3))


@pytest.mark.parametrize("texts, expected", [
    (["x", "-y"], True),
    (["-x", "y"], True),
    (["-x", "-y"], False),
    (["x", "y"], False),
    (["--x", "y"], False),
])
def test_geometric_negation(texts, expected):
    call = make_call("rotate_point", texts)
    assert geometric_negation(make_candidate(call, None, 1, 2), _ctx(call), CFG) is expected


@pytest.mark.parametrize("arg_types, param_types, expected", [
    (["int", "double"], ["int", "double"], True),
    (["char *", "int"], ["char*", "int"], True),
    (["double", "int"], ["int", "double"], False),
    (["int", "int"], ["int", "int"], False),
    ([None, "double"], ["int", "double"], False),
])
def test_type_check(arg_types, param_types, expected):
    call = make_call("f", ["count", "ratio"], arg_types=arg_types)
    decl = make_decl("f", ["ratio", "count"], param_types)
    assert type_check_filter(make_candidate(call, decl, 1, 2), _ctx(call), CFG) is expected


def test_type_check_needs_declaration():
    call = make_call("f", ["count", "ratio"], arg_types=["int", "double"])
    assert not type_check_filter(make_candidate(call, None, 1, 2), _ctx(call), CFG)


def test_nearby_declaration():
    call = make_call("f", ["b", "a"], file_path="a.c")
    assert nearby_declaration(make_candidate(call, make_decl("f", ["a", "b"], file_path="a.c"), 1, 2), _ctx(call), CFG)
    far = make_candidate(call, make_decl("f", ["a", "b"], file_path="f.h"), 1, 2)
    assert not nearby_declaration(far, _ctx(call), CFG)
    assert nearby_declaration(far, _ctx(call, declaration_files={"f": frozenset({"f.h", "a.c"})}), CFG)


def test_nearby_correct_call():
    suspect = make_call("iconv_open", ["FROMCODE", "TOCODE"], line=13)
    correct = make_call("iconv_open", ["TOCODE", "FROMCODE"], line=12)
    cand = make_candidate(suspect, None, 1, 2)
    flagged = {suspect.location: frozenset({(1, 2)})}
    assert nearby_correct_call(cand, _ctx(correct, suspect, flagged=flagged), CFG)
    flagged[correct.location] = frozenset({(1, 2)})
    assert not nearby_correct_call(cand, _ctx(correct, suspect, flagged=flagged), CFG)


def test_nearby_correct_call_ignores_unnamed_and_short_calls():
    suspect = make_call("f", ["dst", "src", "len"], line=3)
    literal = make_call("f", ['"dst"', "src", "len"], line=1)
    short = make_call("f", ["src"], line=2)
    cand = make_candidate(suspect, None, 1, 2)
    assert not nearby_correct_call(cand, _ctx(literal, short, suspect), CFG)


def test_swap_not_rare():
    calls = [make_call("f", ["b", "a"], line=n) for n in range(1, 4)]
    cand = make_candidate(calls[0], None, 1, 2)
    flagged = {c.location: frozenset({(1, 2)}) for c in calls}
    assert swap_not_rare(cand, _ctx(*calls, flagged=flagged), CFG)
    del flagged[calls[2].location]
    assert not swap_not_rare(cand, _ctx(*calls, flagged=flagged), CFG)
    assert swap_not_rare(cand, _ctx(*calls, flagged=flagged), FilterConfig(not_rare_count=2))


def test_first_matching_filter_is_reported():
    call = make_call("f", ["a", "b", "c", "d"], caller="swap_ends")
    cand = make_candidate(call, None, 1, 4)
    ctx = _ctx(call)
    assert apply_filters(cand, ctx, CFG) == (False, FilterName.WHITELIST_WORDS)
    assert apply_filters(cand, ctx, FilterConfig.with_disabled(["whitelist-words"])) == (False, FilterName.SWAP_DISTANCE)
    assert apply_filters(cand, ctx, FilterConfig.all_disabled()) == (True, None)


def test_unknown_filter_name():
    with pytest.raises(ValueError, match="Unknown filter"):
        FilterConfig.with_disabled(["no-such-filter"])


def test_group_by_caller():
    calls = [
        make_call("f", ["a"], file_path="b.c", line=5, caller="main"),
        make_call("g", ["a"], file_path="a.c", line=9, caller="main"),
        make_call("f", ["a"], file_path="b.c", line=2, caller="main"),
        make_call("f", ["a"], file_path="b.c", line=7, caller=None),
    ]
    contexts = group_by_caller(calls, {}, {})
    assert set(contexts) == {("a.c", "main"), ("b.c", "main"), ("b.c", None)}
    assert [c.location.line for c in contexts[("b.c", "main")].calls] == [2, 5]
