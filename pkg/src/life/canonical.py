"""Canonical JSON encoding: sorted keys, UTF-8, no insignificant whitespace.

Every document persisted or exported by this package goes through
:func:`encode`, so byte-level comparison of two encodings is equivalent to
structural comparison of the underlying values.
"""

from __future__ import annotations

import json
from typing import Any


def encode(value: Any) -> bytes:
    return json.dumps(
        value, ensure_ascii=False, sort_keys=True, separators=(",", ":")
    ).encode("utf-8")


def decode(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return json.loads(data)
