"""Invariant checks run by ``verify``; each module exposes ``get_all_checks()``."""
