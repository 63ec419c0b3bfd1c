"""Finite hyperfields, special groups and their reduced K-theory."""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
