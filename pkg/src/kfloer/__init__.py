"""Heegaard Floer data of branched double covers computed from Kauffman states of link diagrams."""

from .diagram import PlanarDiagram, parse_diagram

__all__ = ["PlanarDiagram", "parse_diagram"]
