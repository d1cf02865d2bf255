from typing import List, Tuple

import streamlit as st

from .report import ReportRow


def display_sidebar(rows: List[ReportRow]) -> Tuple[List[str], bool]:
    """Display report totals and the result filters.

    Args:
        rows: Every loaded result

    Returns:
        Selected rule ids and whether suppressed results are shown
    """
    with st.sidebar:
        if st.button("Close Report"):
            st.session_state.clear()
            st.rerun()

        st.subheader("Report")
        reported = sum(1 for r in rows if not r.suppressed)
        st.markdown(f"**{reported}** warnings, **{len(rows) - reported}** suppressed")
        st.markdown(f"<small>{st.session_state.get('report_source', '')}</small>", unsafe_allow_html=True)

        st.markdown("---")
        rule_ids = sorted({r.rule_id for r in rows})
        selected = st.multiselect("Rules", rule_ids, default=rule_ids)
        show_suppressed = st.checkbox("Show suppressed results", value=False)
    return selected, show_suppressed
