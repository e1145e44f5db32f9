"""Homological construction of numerical Godeaux surfaces over finite fields."""

__version__ = "0.1.0"
