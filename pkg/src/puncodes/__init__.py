"""Punctured binary codes C(f)^D from functions on GF(2^m)."""

from puncodes.gf2m import FieldCtx, field_new, v2

__version__ = "0.1.0"

__all__ = ["FieldCtx", "field_new", "v2", "__version__"]
