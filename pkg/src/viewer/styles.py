import streamlit as st

def apply_custom_styles() -> None:
    """Apply custom CSS styles to the viewer.

    Side Effects:
        Injects custom CSS into the Streamlit app using st.markdown()
    """
    st.markdown("""
        <style>
        .stExpander {
            margin-bottom: 0.5rem;
        }
        /* Muted evidence text under each result */
        .evidence small {
            color: #666;
            font-size: 0.85em;
        }
        .suppressed {
            opacity: 0.6;
        }
        </style>
    """, unsafe_allow_html=True)
