"""Hypothesis strategies for small homogeneous ideals."""

from __future__ import annotations

from hypothesis import strategies as st

from pdq.groebner import Ideal
from pdq.polycore import PolynomialRing

RINGS = {n: PolynomialRing([f"v{i}" for i in range(n)]) for n in range(1, 9)}


@st.composite
def exponents(draw, n: int, d: int):
    e = [0] * n
    for _ in range(d):
        e[draw(st.integers(0, n - 1))] += 1
    return e


@st.composite
def forms(draw, n: int, d: int, max_terms: int = 4, coeffs=st.integers(1, 32002)):
    ring = RINGS[n]
    k = draw(st.integers(1, max_terms))
    terms = [(draw(coeffs), draw(exponents(n, d))) for _ in range(k)]
    return ring.from_terms(terms)


@st.composite
def polynomials(draw, n: int, max_deg: int = 4):
    """Sums of homogeneous pieces (possibly non-homogeneous) in n variables."""
    ring = RINGS[n]
    f = ring.zero()
    for d in range(draw(st.integers(0, max_deg)) + 1):
        if draw(st.booleans()):
            f = f + draw(forms(n, d, 3))
    return f


@st.composite
def homogeneous_ideals(draw, nmin: int = 2, nmax: int = 4, gmin: int = 1, gmax: int = 4,
                       degs=(1, 2, 3), max_terms: int = 3):
    n = draw(st.integers(nmin, nmax))
    ring = RINGS[n]
    gens = []
    for _ in range(draw(st.integers(gmin, gmax))):
        d = draw(st.sampled_from(degs))
        g = draw(forms(n, d, max_terms))
        if g:
            gens.append(g)
    if not gens:
        gens = [ring.gens()[0]]
    return Ideal(ring, gens)


@st.composite
def quadric_ideals(draw, n: int = 5, count: int = 4, max_terms: int = 4):
    ring = RINGS[n]
    gens = []
    for _ in range(count):
        g = draw(forms(n, 2, max_terms))
        if g:
            gens.append(g)
    if not gens:
        gens = [ring.gens()[0] ** 2]
    return Ideal(ring, gens)
