from .corpus import DeclarationIndex, match_declaration, scan_corpus, scan_files, scan_paths, source_files
from .records import RecordFormatError, read_records, record_lines, write_records
from .scanner import SourceScanner, Symbols, is_macro_name, scan_file

__all__ = [
    "DeclarationIndex", "match_declaration", "scan_corpus", "scan_files", "scan_paths", "source_files",
    "RecordFormatError", "read_records", "record_lines", "write_records",
    "SourceScanner", "Symbols", "is_macro_name", "scan_file",
]
