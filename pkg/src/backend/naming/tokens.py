import re
from typing import List

_NON_LETTERS = re.compile(r"[^A-Za-z]+")
# "XMLFile" -> XML, File; "getName" -> get, Name; "SIGKILL" -> SIGKILL
_WORDS = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+")
_LITERAL_START = re.compile(r"^[0-9.'\"]")


def split_identifier(name: str) -> List[str]:
    """Split on underscores, digits, non-ASCII and case transitions, lowercased.

    Numeric and character literals carry no morphemes and give an empty list.
    """
    if not name or _LITERAL_START.match(name):
        return []
    tokens = []
    for chunk in _NON_LETTERS.split(name):
        tokens.extend(word.lower() for word in _WORDS.findall(chunk))
    return tokens
