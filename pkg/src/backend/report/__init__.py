from .sarif import RULES, SARIF_VERSION, ToolMeta, build_sarif, emit_sarif

__all__ = ["RULES", "SARIF_VERSION", "ToolMeta", "build_sarif", "emit_sarif"]
