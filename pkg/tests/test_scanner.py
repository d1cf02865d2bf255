from types import SimpleNamespace

from conftest import GOLDEN, make_call, make_decl
from src.backend.frontend import DeclarationIndex, SourceScanner, scan_corpus, scan_file, scan_paths
from src.backend.frontend.scanner import _inside_error, _walk
from src.backend.schema import ArgKind, SourceLocation


def _scan(name):
    path = GOLDEN / name
    return scan_file(path.read_text(encoding="utf-8"), name)


def test_call_site_context():
    calls, decls = _scan("listing1/xvile.c")
    assert [(c.callee, c.location.line) for c in calls] == [("kill", 9), ("wait_for", 18), ("kill", 20)]
    call = calls[2]
    assert call.location == SourceLocation("listing1/xvile.c", 20, 9)
    assert call.caller_name == "reap_filter"
    assert call.enclosing_conditions == ["child < 0 && errno == EINTR"]
    assert [a.kind for a in call.args] == [ArgKind.MACRO_IDENTIFIER, ArgKind.IDENTIFIER]
    assert call.arg_source_texts == ["SIGKILL", "cpid"]
    assert call.arg_types == [None, "pid_t"]
    assert call.preceding_lines[-1] == "    if (child < 0 && errno == EINTR) {"
    assert len(call.preceding_lines) == 6
    assert not call.from_macro_expansion
    assert [d.function_name for d in decls] == ["stop_child", "reap_filter"]


def test_declarations():
    _, decls = _scan("listing1/signal.h")
    [kill] = decls
    assert kill.function_name == "kill"
    assert kill.param_names == ["pid", "sig"]
    assert kill.param_types == ["pid_t", "int"]
    assert kill.location == SourceLocation("listing1/signal.h", 3, 5)


def test_unnamed_parameters_and_pointer_types():
    _, decls = _scan("listing2/Xlib.h")
    [decl] = decls
    assert decl.param_names == [None] * 5
    assert decl.param_types == ["Display*", "const char*", "int*", "int*", "int*"]


def test_void_parameter_list():
    _, decls = scan_file("int f(void);\nint g();\n", "v.c")
    assert [(d.function_name, d.param_names) for d in decls] == [("f", []), ("g", [])]


def test_argument_expressions():
    calls, _ = _scan("listing2/gpaste.c")
    [call] = calls
    kinds = [a.kind for a in call.args]
    assert kinds == [ArgKind.IDENTIFIER, ArgKind.STRING_LITERAL, ArgKind.UNARY_OP, ArgKind.UNARY_OP, ArgKind.UNARY_OP]
    assert call.args[2].op == "&"
    assert call.args[2].children[0].token_text == "xinput_opcode"
    assert call.arg_types[2] == "int*"
    assert call.enclosing_conditions == []


def test_cast_and_multiline_call():
    calls, _ = _scan("listing6/run.c")
    [call] = calls
    assert call.location.line == 8
    assert call.args[2].kind is ArgKind.CAST
    assert call.args[2].token_text == "Coordinate"
    assert call.arg_source_texts[2] == "(Coordinate)minContigKmerLength"
    assert call.enclosing_conditions == ["maxCoverageCutoff > 0"]


def test_nested_calls_and_members():
    calls, _ = _scan("listing10/ports.c")
    assert [c.callee for c in calls] == ["scm_port_buffer_put", "scm_port_buffer_take_pointer"]
    outer, inner = calls
    assert outer.args[1].kind is ArgKind.CALL
    assert inner.args[0].kind is ArgKind.MEMBER
    assert inner.args[0].token_text == "read_buf"
    assert inner.args[0].op == "->"


def test_function_like_macros_are_marked():
    source = (
        "#define COPY(d, s) copy_impl(d, s)\n"
        "int OPEN_FILE(const char *name);\n"
        "void f(int a, int b) {\n"
        "    COPY(a, b);\n"
        "    OPEN_FILE(\"x\");\n"
        "    LOG_VALUE(a);\n"
        "}\n"
    )
    calls, _ = scan_file(source, "m.c")
    assert [(c.callee, c.from_macro_expansion) for c in calls] == [
        ("COPY", True), ("OPEN_FILE", False), ("LOG_VALUE", True)]


def test_columns_count_code_points():
    calls, _ = scan_file("void g(int x) { /* é */ h(x); }\n", "u.c")
    assert calls[0].location.column == 25


def test_malformed_source_does_not_raise():
    calls, decls = scan_file("int f( {{{ ) ;;; \n void g(void) { h(1); }\n", "bad.c")
    assert isinstance(calls, list) and isinstance(decls, list)
    assert scan_file(b"\xff\xfe garbage", "bin.c") is not None


def test_inside_error_checks_every_ancestor():
    root = SimpleNamespace(type="translation_unit", parent=None)
    broken = SimpleNamespace(type="ERROR", parent=root)
    body = SimpleNamespace(type="compound_statement", parent=broken)
    assert _inside_error(SimpleNamespace(type="call_expression", parent=body))
    assert not _inside_error(SimpleNamespace(type="call_expression", parent=root))


def test_calls_in_error_regions_are_skipped():
    source = "void g(void) { h(1); }\nint f( {{{ k(2, 3) ;;; \n void m(void) { n(4, 5); }\n"
    scanner = SourceScanner()
    parsed = scanner.parse(source, "bad.c")
    regions = [(n.start_point, n.end_point) for n in _walk(parsed.tree.root_node) if n.type == "ERROR"]
    assert regions
    calls, _ = scanner.extract(parsed)
    for call in calls:
        point = (call.location.line - 1, call.location.column - 1)
        assert not any(start <= point < end for start, end in regions)


def test_cpp_sources():
    source = "namespace io { int open(int fd, int mode); }\nvoid f(int mode, int fd) { io::open(mode, fd); }\n"
    calls, decls = scan_file(source, "io.cpp")
    assert [c.callee for c in calls] == ["open"]
    assert any(d.function_name == "open" and d.param_names == ["fd", "mode"] for d in decls)


def test_scan_paths_and_corpus():
    calls, decls = scan_paths([str(GOLDEN / "listing4")])
    assert [c.location.line for c in calls] == [12, 13]
    assert any(d.function_name == "iconv_open" for d in decls)
    projects = scan_corpus(str(GOLDEN))
    assert [p.project_id for p in projects][:2] == ["listing1", "listing10"]
    listing1 = projects[0]
    assert set(listing1.file_digests) == {"listing1/signal.h", "listing1/xvile.c"}
    assert all(len(d) == 64 for d in listing1.file_digests.values())


def test_declaration_index_prefers_matching_arity():
    index = DeclarationIndex([
        make_decl("f", ["a"], line=1),
        make_decl("f", ["a", "b"], line=2),
    ])
    assert index.match(make_call("f", ["x", "y"])).arity == 2
    assert index.match(make_call("f", ["x", "y", "z"])).arity == 1
    assert index.match(make_call("g", ["x"])) is None
