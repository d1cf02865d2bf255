import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Type, Union

PathLike = Union[str, Path]


class TableFormatError(ValueError):
    """A tab-separated data file is malformed."""


class TableVersionError(TableFormatError):
    """A data file was written by an incompatible format version."""


def write_table(path: PathLike, magic: str, version: int, meta: Dict[str, str],
                rows: Iterable[Sequence[object]]) -> int:
    """Write a versioned tab-separated table.

    The first line is ``#<magic> v<version>`` followed by tab-separated
    ``key=value`` metadata, including ``entries``. Rows follow one per line
    in the order given.

    Args:
        path: Destination file
        magic: Format name
        version: Format version
        meta: Metadata written into the header
        rows: Field sequences, already sorted by the caller

    Returns:
        Number of rows written
    """
    lines = ["\t".join(str(value) for value in row) for row in rows]
    header = [f"#{magic} v{version}"]
    header.extend(f"{key}={value}" for key, value in sorted({**meta, "entries": len(lines)}.items()))
    text = "\t".join(header) + "\n" + "".join(line + "\n" for line in lines)
    Path(path).write_bytes(text.encode("utf-8"))
    return len(lines)


def read_table(path: PathLike, magic: str, version: int, columns: int,
               format_error: Type[TableFormatError] = TableFormatError,
               version_error: Type[TableVersionError] = TableVersionError,
               ) -> Tuple[Dict[str, str], List[Tuple[List[str], int]]]:
    """Read a table written by ``write_table``.

    Args:
        path: Source file
        magic: Expected format name
        version: Expected format version
        columns: Fields per row
        format_error: Exception raised for malformed content
        version_error: Exception raised for a version mismatch

    Returns:
        The header metadata and a list of (fields, byte offset) per row

    Raises:
        format_error: With the byte offset of the first bad line
        version_error: Naming the file's version and the expected one
    """
    data = Path(path).read_bytes()
    lines = data.split(b"\n")
    header_text = _decode(lines[0], 0, path, format_error)
    header = header_text.split("\t")
    parts = header[0].split(" ")
    if len(parts) != 2 or parts[0] != f"#{magic}" or not parts[1].startswith("v"):
        raise format_error(f"{path}: byte 0: missing '#{magic}' header")
    if parts[1] != f"v{version}":
        raise version_error(f"{path}: format version {parts[1]} found, expected v{version}")

    meta: Dict[str, str] = {}
    for item in header[1:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise format_error(f"{path}: byte 0: bad header field '{item}'")
        meta[key] = value

    rows: List[Tuple[List[str], int]] = []
    offset = len(lines[0]) + 1
    if not data.endswith(b"\n"):
        raise format_error(f"{path}: byte {len(data)}: file does not end with a newline")
    for raw in lines[1:-1]:
        fields = _decode(raw, offset, path, format_error).split("\t")
        if len(fields) != columns:
            raise format_error(f"{path}: byte {offset}: expected {columns} fields, found {len(fields)}")
        rows.append((fields, offset))
        offset += len(raw) + 1

    expected = meta.get("entries")
    if expected is not None and (not expected.isdigit() or int(expected) != len(rows)):
        raise format_error(f"{path}: byte {len(data)}: header declares {expected} entries, found {len(rows)}")
    logging.debug(f"Read {len(rows)} rows from {path}")
    return meta, rows


def _decode(raw: bytes, offset: int, path: PathLike, format_error: Type[TableFormatError]) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise format_error(f"{path}: byte {offset + e.start}: invalid UTF-8") from None


def parse_int(text: str, offset: int, path: PathLike, format_error: Type[TableFormatError],
              minimum: int = 0) -> int:
    """Parse a decimal field, raising ``format_error`` with the row offset."""
    if not text.isdigit() or int(text) < minimum:
        raise format_error(f"{path}: byte {offset}: expected an integer >= {minimum}, got '{text}'")
    return int(text)


def read_word_file(path: PathLike) -> List[str]:
    """Read a one-entry-per-line file, skipping blanks and '#' comments."""
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line)
    return words
