"""Resource caps, overridable per call tree with :func:`use_limits`."""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Limits:
    max_elements: int = 200_000
    max_classes: int = 400
    max_frattini: int = 5_000
    max_normal: int = 10_000
    max_field: int = 2048


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def use_limits(**overrides):
    """Temporarily override caps, e.g. ``with use_limits(max_classes=600): ...``."""
    token = _current.set(dataclasses.replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
