"""Conway's audioactive (look-and-say) chemistry and the Cosmological Theorem search."""

from .core import evolve, jhc, parse, render

__all__ = ["evolve", "jhc", "parse", "render"]
