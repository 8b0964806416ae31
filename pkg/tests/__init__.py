"""
Test Suite for Borel-Cantelli Lab

Closed forms are checked against independent references (the n-dimensional
copula, a numerically integrated density, exact sums), the lemma engine
against sequences built to isolate each branch, and the sampler against the
closed forms.

Test Structure:
- unit/: Unit tests for individual modules and functions
- integration/: Command-line tests through click's CliRunner

Monte Carlo tests that take more than a few seconds carry the ``slow`` marker.
"""
