"""Minimal multipart/form-data parsing (RFC 7578 subset).

Handles what upload clients actually send: one or more parts delimited by
the boundary from the Content-Type header, each with Content-Disposition
name/filename parameters and an optional per-part Content-Type.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass
class Part:
    name: str
    filename: str | None
    content_type: str | None
    data: bytes


_DISPOSITION_PARAM_RE = re.compile(r'(\w+)="((?:[^"\\]|\\.)*)"')


def _boundary_from_content_type(content_type: str) -> bytes:
    for param in content_type.split(";")[1:]:
        key, _, value = param.strip().partition("=")
        if key.lower() == "boundary":
            return value.strip('"').encode("ascii")
    raise ValueError("multipart content type carries no boundary")


def parse_multipart(body: bytes, content_type: str) -> list[Part]:
    boundary = _boundary_from_content_type(content_type)
    delimiter = b"--" + boundary
    parts: list[Part] = []
    # Split on the delimiter; the first chunk is a preamble, the last chunk
    # follows the closing "--".
    chunks = body.split(delimiter)
    for chunk in chunks[1:]:
        if chunk.startswith(b"--"):
            break
        if chunk.startswith(b"\r\n"):
            chunk = chunk[2:]
        header_blob, separator, data = chunk.partition(b"\r\n\r\n")
        if not separator:
            continue
        if data.endswith(b"\r\n"):
            data = data[:-2]
        name = ""
        filename = None
        part_type = None
        for raw_header in header_blob.split(b"\r\n"):
            header = raw_header.decode("utf-8", "replace")
            key, _, value = header.partition(":")
            key = key.strip().lower()
            value = value.strip()
            if key == "content-disposition":
                for param_key, param_value in _DISPOSITION_PARAM_RE.findall(value):
                    if param_key == "name":
                        name = param_value
                    elif param_key == "filename":
                        filename = param_value
            elif key == "content-type":
                part_type = value
        parts.append(Part(name=name, filename=filename, content_type=part_type, data=data))
    return parts
