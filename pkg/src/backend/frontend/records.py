import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..schema import ArgExpr, ArgKind, CallSiteRecord, DeclarationRecord, ProjectRecord, SourceLocation
from ..utils import PathLike


class RecordFormatError(ValueError):
    """A record file line is malformed."""


class _Line(BaseModel):
    model_config = ConfigDict(extra="allow")


class LocationModel(_Line):
    file_path: str
    line: int = Field(ge=1)
    column: int = Field(ge=1)


class ArgExprModel(_Line):
    kind: ArgKind
    token_text: str = ""
    op: Optional[str] = None
    children: List["ArgExprModel"] = Field(default_factory=list)


class ProjectLine(_Line):
    kind: str = "project"
    project_id: str = Field(min_length=1)
    file_digests: Dict[str, str] = Field(default_factory=dict)


class DeclLine(_Line):
    kind: str = "decl"
    project_id: str
    function_name: str = Field(min_length=1)
    param_names: Optional[List[Optional[str]]] = None
    param_types: Optional[List[str]] = None
    location: LocationModel


class CallLine(_Line):
    kind: str = "call"
    project_id: str
    callee: str = Field(min_length=1)
    args: List[ArgExprModel]
    location: LocationModel
    caller_name: Optional[str] = None
    enclosing_conditions: List[str] = Field(default_factory=list)
    preceding_lines: List[str] = Field(default_factory=list)
    arg_source_texts: List[str]
    from_macro_expansion: bool = False
    arg_types: List[Optional[str]] = Field(default_factory=list)


_MODELS = {"project": ProjectLine, "decl": DeclLine, "call": CallLine}


def _unknown_fields(model: BaseModel, prefix: str = "") -> List[str]:
    unknown = [f"{prefix}{name}" for name in (model.model_extra or {})]
    for name in type(model).model_fields:
        value = getattr(model, name)
        values = value if isinstance(value, list) else [value]
        for item in values:
            if isinstance(item, BaseModel):
                unknown.extend(_unknown_fields(item, f"{prefix}{name}."))
    return unknown


def _to_arg_expr(model: ArgExprModel) -> ArgExpr:
    return ArgExpr(model.kind, tuple(_to_arg_expr(c) for c in model.children), model.token_text, model.op)


def _to_location(model: LocationModel) -> SourceLocation:
    return SourceLocation(model.file_path, model.line, model.column)


def read_records(path: PathLike) -> List[ProjectRecord]:
    """Read a line-delimited record file.

    Raises:
        RecordFormatError: Naming the 1-based line of a malformed or
            inconsistent record, or a duplicate project id
    """
    projects: Dict[str, ProjectRecord] = {}
    warned = set()
    with open(path, encoding="utf-8") as handle:
        for number, text in enumerate(handle, start=1):
            if not text.strip():
                continue
            try:
                raw = json.loads(text)
                if not isinstance(raw, dict):
                    raise ValueError("expected a JSON object")
                model_cls = _MODELS.get(raw.get("kind"))
                if model_cls is None:
                    raise ValueError(f"unknown record kind {raw.get('kind')!r}")
                line = model_cls.model_validate(raw)
                for name in _unknown_fields(line):
                    if name not in warned:
                        warned.add(name)
                        logging.warning(f"{path}: line {number}: ignoring unknown field '{name}'")
                _add_line(projects, line)
            except RecordFormatError as e:
                raise RecordFormatError(f"{path}: line {number}: {e}") from None
            except (ValueError, ValidationError) as e:
                raise RecordFormatError(f"{path}: line {number}: {e}") from None
    logging.info(f"Read {len(projects)} projects from {path}")
    return list(projects.values())


def _add_line(projects: Dict[str, ProjectRecord], line: _Line) -> None:
    if isinstance(line, ProjectLine):
        if line.project_id in projects:
            raise RecordFormatError(f"duplicate project id '{line.project_id}'")
        projects[line.project_id] = ProjectRecord(line.project_id, file_digests=dict(line.file_digests))
        return
    project = projects.get(line.project_id)
    if project is None:
        raise RecordFormatError(f"record precedes its project line '{line.project_id}'")
    if isinstance(line, DeclLine):
        project.declarations.append(DeclarationRecord(
            function_name=line.function_name,
            param_names=line.param_names,
            param_types=line.param_types,
            location=_to_location(line.location),
        ))
    else:
        project.call_sites.append(CallSiteRecord(
            callee=line.callee,
            args=[_to_arg_expr(a) for a in line.args],
            location=_to_location(line.location),
            caller_name=line.caller_name,
            enclosing_conditions=line.enclosing_conditions,
            preceding_lines=line.preceding_lines,
            arg_source_texts=line.arg_source_texts,
            from_macro_expansion=line.from_macro_expansion,
            arg_types=line.arg_types,
        ))


def _arg_json(expr: ArgExpr) -> Dict[str, Any]:
    data: Dict[str, Any] = {"kind": expr.kind.value, "token_text": expr.token_text}
    if expr.op is not None:
        data["op"] = expr.op
    if expr.children:
        data["children"] = [_arg_json(c) for c in expr.children]
    return data


def _location_json(location: SourceLocation) -> Dict[str, Any]:
    return {"file_path": location.file_path, "line": location.line, "column": location.column}


def record_lines(project: ProjectRecord) -> List[Dict[str, Any]]:
    """JSON objects for a project: its project line, then declarations, then calls."""
    lines: List[Dict[str, Any]] = [
        {"kind": "project", "project_id": project.project_id, "file_digests": dict(project.file_digests)}
    ]
    for decl in project.declarations:
        lines.append({
            "kind": "decl",
            "project_id": project.project_id,
            "function_name": decl.function_name,
            "param_names": decl.param_names,
            "param_types": decl.param_types,
            "location": _location_json(decl.location),
        })
    for call in project.call_sites:
        lines.append({
            "kind": "call",
            "project_id": project.project_id,
            "callee": call.callee,
            "args": [_arg_json(a) for a in call.args],
            "location": _location_json(call.location),
            "caller_name": call.caller_name,
            "enclosing_conditions": call.enclosing_conditions,
            "preceding_lines": call.preceding_lines,
            "arg_source_texts": call.arg_source_texts,
            "from_macro_expansion": call.from_macro_expansion,
            "arg_types": call.arg_types,
        })
    return lines


def write_records(projects: List[ProjectRecord], path: PathLike) -> None:
    """Write projects in read_records format, keys sorted."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for project in projects:
            for line in record_lines(project):
                handle.write(json.dumps(line, sort_keys=True, ensure_ascii=False) + "\n")
    logging.info(f"Wrote {len(projects)} projects to {Path(path)}")
