"""REST service, authentication, configuration and the administrative CLI."""

from .config import Config, load_config

__all__ = ["Config", "load_config"]
