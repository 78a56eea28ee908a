"""Figure rendering for peerlens CSV outputs."""

from .render import (
    KINDS,
    FigureSpec,
    SchemaError,
    build_figure,
    load_curve,
    load_scatter,
    load_surface,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "FigureSpec",
    "SchemaError",
    "build_figure",
    "load_curve",
    "load_scatter",
    "load_surface",
    "render",
]
