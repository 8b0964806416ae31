"""
Sequence sources for the lemma engine.

- clayton: closed forms and path sampler for the Clayton copula sequence
- tabulated: plain-text (n, p[, q]) tables
"""

__all__ = ["clayton", "tabulated"]
