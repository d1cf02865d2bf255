import json

import streamlit as st

from .report import ReportRow


def display_result(row: ReportRow) -> None:
    """Display one result as an expander holding its message and evidence."""
    marker = "🔇" if row.suppressed else "⚠️"
    positions = ", ".join(str(p) for p in row.positions)
    with st.expander(f"{marker} line {row.line}: **{row.callee}** ({positions}) · {row.rule_id}"):
        st.markdown(row.message)
        if row.suppressed:
            st.markdown(f"<small class='suppressed'>{row.suppressed_by}</small>", unsafe_allow_html=True)
        st.markdown(
            f"<div class='evidence'><small>{row.file_path}:{row.line}:{row.column} · {row.fingerprint[:12]}</small></div>",
            unsafe_allow_html=True,
        )
        st.code(json.dumps(row.properties, indent=2, sort_keys=True), language="json")
