"""Heegaard Floer data read off Kauffman states."""
