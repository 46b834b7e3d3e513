"""HTTP service exposing the decomposition library."""

from .app import create_app

__all__ = ["create_app"]
