"""Hypothesis strategies shared by the test modules."""

from itertools import product

from hypothesis import strategies as st

from rowcox import Poset


def _closure(n, rel):
    for k, i, j in product(range(n), repeat=3):
        if rel[i][k] and rel[k][j]:
            rel[i][j] = True
    return rel


@st.composite
def posets(draw, min_size=0, max_size=5):
    """Random posets on labels ``e0, e1, ...``; position order is a linear extension."""
    n = draw(st.integers(min_size, max_size))
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rel[i][j] = draw(st.booleans())
    rel = _closure(n, rel)
    labels = [f"e{i}" for i in range(n)]
    return Poset(labels, [(labels[i], labels[j]) for i in range(n) for j in range(n) if i != j and rel[i][j]])


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4).map(
    lambda q: q.numerator if q.denominator == 1 else q
)


@st.composite
def square_matrices(draw, max_size=4, entries=rationals):
    n = draw(st.integers(1, max_size))
    return [[draw(entries) for _ in range(n)] for _ in range(n)]


@st.composite
def unit_triangular(draw, max_size=5):
    """Integer upper unit-triangular matrices, shaped like Cartan matrices of directed algebras."""
    n = draw(st.integers(1, max_size))
    return [[1 if i == j else (draw(st.integers(0, 3)) if i < j else 0) for j in range(n)] for i in range(n)]
