"""Local-field numerics: Tate Gamma functions, the conductor operator and
Weil's explicit formula."""

__version__ = "0.1.0"
