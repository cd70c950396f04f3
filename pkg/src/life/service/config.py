"""Server configuration.

Plain ``key = value`` lines, ``#`` comments. Recognized keys:

    addr          listen address, host:port        (default 127.0.0.1:8756)
    data_dir      store directory                  (default ./data)
    base_iri      base IRI for RDF exports, must end with "/"
    secret        deployment secret (reserved for signed features)
    token_ttl_hours    session lifetime            (default 24)
    max_upload_mb      media upload cap            (default 64)
    metalang      metalanguage tag for definitions (default en)
    linkset       path to a linkset CSV            (optional)
    static_dir    directory of web UI assets       (optional)

Environment overrides: LIFE_ADDR, LIFE_DATA_DIR, LIFE_BASE_IRI, LIFE_SECRET.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path


@dataclass
class Config:
    addr: str = "127.0.0.1:8756"
    data_dir: str = "./data"
    base_iri: str = "http://localhost:8756/"
    secret: str = ""
    token_ttl_hours: float = 24.0
    max_upload_mb: float = 64.0
    metalang: str = "en"
    linkset: str = ""
    static_dir: str = ""

    @property
    def host(self) -> str:
        return self.addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.addr.rsplit(":", 1)[1])

    @property
    def max_upload_bytes(self) -> int:
        return int(self.max_upload_mb * 1024 * 1024)


_ENV_OVERRIDES = {
    "LIFE_ADDR": "addr",
    "LIFE_DATA_DIR": "data_dir",
    "LIFE_BASE_IRI": "base_iri",
    "LIFE_SECRET": "secret",
}

_FLOAT_KEYS = {"token_ttl_hours", "max_upload_mb"}


def load_config(path: str | Path | None = None, env: dict[str, str] | None = None) -> Config:
    """Read the config file (if any), then apply environment overrides."""
    config = Config()
    if path is not None and Path(path).exists():
        for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not hasattr(config, key):
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            setattr(config, key, float(value) if key in _FLOAT_KEYS else value)
    env = os.environ if env is None else env
    for env_key, attr in _ENV_OVERRIDES.items():
        if env.get(env_key):
            setattr(config, attr, env[env_key])
    if not config.base_iri.endswith("/"):
        config.base_iri += "/"
    return config
