"""Cooperative wall-clock limit checked by the searches."""

import time
from typing import Optional

from ..errors import TimeoutExceededError


class Deadline:
    """
    A point in time after which ``check`` raises TimeoutExceededError.

    ``Deadline(None)`` never expires.
    """

    def __init__(self, seconds: Optional[float] = None):
        if seconds is not None and seconds <= 0:
            raise ValueError(f"Timeout must be positive, got {seconds}")
        self.seconds = seconds
        self._start = time.monotonic()
        self._expires = None if seconds is None else self._start + seconds

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._start

    @property
    def expired(self) -> bool:
        return self._expires is not None and time.monotonic() > self._expires

    def check(self):
        if self.expired:
            raise TimeoutExceededError(f"Search exceeded the {self.seconds:g} s limit")
