"""Finite lattice algorithms: orders, congruences, retractions and grids."""
