"""Process-wide limits: the vertex cap for blow-up constructions and the
default search budget."""

from __future__ import annotations

import contextlib
import os
from typing import Iterator

from .errors import CapExceeded

DEFAULT_CAP = 2_000_000
BUDGET_ENV = "PCSP_ADJOINT_BUDGET"

_cap = DEFAULT_CAP


def size_cap() -> int:
    return _cap


def set_size_cap(cap: int) -> None:
    global _cap
    if cap < 1:
        raise ValueError("cap must be positive")
    _cap = int(cap)


@contextlib.contextmanager
def cap_override(cap: int) -> Iterator[None]:
    old = _cap
    set_size_cap(cap)
    try:
        yield
    finally:
        set_size_cap(old)


def check_cap(what: str, size: int) -> None:
    if size > _cap:
        raise CapExceeded(what, size, _cap)


def default_budget() -> int | None:
    """Node budget from the environment, or None for unlimited."""
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    return int(raw)
