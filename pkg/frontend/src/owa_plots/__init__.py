"""Figure rendering for elicitation-experiment CSV outputs."""

from .render import KINDS, PlotSpec, render

__all__ = ["KINDS", "PlotSpec", "render"]

__version__ = "0.1.0"
