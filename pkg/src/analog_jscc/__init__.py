"""Fractal analog joint source-channel codes built from binary component codes."""

__version__ = "0.1.0"
