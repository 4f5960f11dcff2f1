"""Graphs shipped with the package."""

from __future__ import annotations

from importlib import resources

from .graph import ResolutionGraph

BUNDLED = ("example1", "example35", "patricio", "famille2")


def load_example(name: str) -> ResolutionGraph:
    """``example1``: resolution of y^5 - x^12 with g = x + y, vertices along
    the chain from the g-end.  ``example35``: the same graph with vertices in
    increasing m(f) order, plus polar arrows.  ``patricio``: ``example35``
    without the polar arrows.  ``famille2``: ``generate_famille(2)``."""
    if name not in BUNDLED:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("innerrates.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return ResolutionGraph.loads(text)
