"""Exact computations with biquaternion algebras carrying an orthogonal involution."""

__version__ = "0.1.0"
