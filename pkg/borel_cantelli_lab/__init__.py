"""Borel-Cantelli lemmas on event sequences and the Clayton copula maxima."""

__version__ = "0.1.0"
