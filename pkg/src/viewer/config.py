import streamlit as st

def setup_page_config() -> None:
    """Setup page configuration: title, favicon and wide layout for result tables.

    Side Effects:
        Modifies the Streamlit page configuration using st.set_page_config()
    """
    st.set_page_config(
        page_title="argswap report",
        page_icon="🔀",
        layout="wide",
        initial_sidebar_state="auto"
    )
