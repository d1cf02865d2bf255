from .config import setup_page_config
from .report import ReportRow, filter_rows, group_by_file, load_report_rows, parse_report
from .result_display import display_result
from .sidebar import display_sidebar
from .styles import apply_custom_styles

__all__ = [
    'setup_page_config',
    'ReportRow',
    'filter_rows',
    'group_by_file',
    'load_report_rows',
    'parse_report',
    'display_result',
    'display_sidebar',
    'apply_custom_styles'
]
