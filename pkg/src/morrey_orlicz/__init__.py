"""Numerical toolkit for central Morrey-Orlicz spaces and the Riesz potential."""
