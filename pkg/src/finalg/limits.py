"""Enumeration bounds shared by the exhaustive algorithms."""

import os

DEFAULT_MAX_CARD = 1 << 20
ORACLE_MAX_CARD = 1 << 12
MAX_TUPLES = 10**9
DEFAULT_ENGEL_CAP = 10


def max_card(override: int | None = None) -> int:
    """Largest algebra cardinality exhaustive routines may enumerate.

    ``FINALG_MAX_CARD`` replaces the built-in default; an explicit
    ``override`` wins over both.
    """
    if override is not None:
        return override
    env = os.environ.get("FINALG_MAX_CARD")
    return int(env) if env else DEFAULT_MAX_CARD
