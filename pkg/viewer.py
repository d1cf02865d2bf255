import logging
from pathlib import Path

import streamlit as st
from dotenv import load_dotenv

from src.viewer import *

load_dotenv()

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')

def init_session_state() -> None:
    """Initialize session state variables"""
    if 'rows' not in st.session_state:
        st.session_state.rows = None
    if 'report_source' not in st.session_state:
        st.session_state.report_source = ""
    if 'error_log' not in st.session_state:
        st.session_state.error_log = []

def load_report(text: str, source: str) -> None:
    """Parse a report into session state, logging failures for the debug panel"""
    try:
        st.session_state.rows = load_report_rows(parse_report(text))
        st.session_state.report_source = source
    except (ValueError, KeyError) as e:
        logging.error(f"Could not load report {source}: {e}")
        st.error(f"Could not load report: {e}")
        st.session_state.error_log.append(str(e))

def display_report_picker() -> None:
    """Upload a SARIF file or read one from a path"""
    uploaded = st.file_uploader("SARIF report", type=["sarif", "json"])
    if uploaded is not None:
        load_report(uploaded.getvalue().decode("utf-8"), uploaded.name)
        st.rerun()

    path = st.text_input("...or a report path", placeholder="report.sarif")
    if st.button("Open") and path:
        try:
            load_report(Path(path).read_text(encoding="utf-8"), path)
            st.rerun()
        except OSError as e:
            st.error(f"Could not read {path}: {e}")
            st.session_state.error_log.append(str(e))

def main() -> None:
    """Viewer entry point: `streamlit run viewer.py`"""
    setup_page_config()

    st.title("🔀 argswap")

    init_session_state()
    apply_custom_styles()

    if st.session_state.rows is None:
        display_report_picker()
    else:
        rules, show_suppressed = display_sidebar(st.session_state.rows)
        rows = filter_rows(st.session_state.rows, rules, show_suppressed)
        if not rows:
            st.info("No results match the current filters.")
        for file_path, file_rows in group_by_file(rows).items():
            st.subheader(file_path)
            for row in file_rows:
                display_result(row)

    if st.session_state.error_log:
        with st.sidebar.expander("Debug Information"):
            for error in st.session_state.error_log:
                st.write(error)

if __name__ == "__main__":
    main()
