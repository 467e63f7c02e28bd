import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rowcox import PrimeField, QuiverRep, build_poset, hom_dim, hom_space, incidence_algebra, order_ideals, path_algebra
from rowcox.algebra import direct_sum
from rowcox.errors import InvalidRepresentation, UnknownVertex
from rowcox.homology import cartan_matrix
from rowcox.poset import lattice_zeta_matrix, zeta_matrix

from strategies import posets

# a quiver with two parallel paths a -> b -> d and a -> c -> d
DIAMOND = (["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@st.composite
def representations(draw, algebra, max_dim=2):
    dims = [draw(st.integers(0, max_dim)) for _ in range(len(algebra))]
    maps = [
        [[draw(st.integers(-1, 1)) for _ in range(dims[a.source])] for _ in range(dims[a.target])]
        for a in algebra.arrows
    ]
    return QuiverRep(algebra, dims, maps)


def sympy_hom_dim(x, y):
    """Solve f_t X_a = Y_a f_s for all arrows with sympy."""
    alg = x.algebra
    symbols, blocks = [], []
    for v in range(len(alg)):
        block = sympy.Matrix(y.dims[v], x.dims[v], lambda i, j: sympy.Symbol(f"f{v}_{i}_{j}"))
        blocks.append(block)
        symbols.extend(block)
    if not symbols:
        return 0
    eqs = []
    for a, xm, ym in zip(alg.arrows, x.maps, y.maps):
        s, t = a.source, a.target
        left = blocks[t] * sympy.Matrix(x.dims[t], x.dims[s], lambda i, j: xm[i][j])
        right = sympy.Matrix(y.dims[t], y.dims[s], lambda i, j: ym[i][j]) * blocks[s]
        eqs.extend(left - right)
    if not eqs:
        return len(symbols)
    system, _ = sympy.linear_eq_to_matrix(eqs, symbols)
    return len(symbols) - system.rank()


# -- structure -------------------------------------------------------------------

def test_incidence_algebra_dimension_counts_comparable_pairs(load_poset):
    p = load_poset("example6")
    alg = incidence_algebra(p)
    assert alg.dimension == len(p.relation())
    assert alg.path_count(alg.vertex("1"), alg.vertex("6")) == 1


def test_free_path_algebra_keeps_parallel_paths():
    alg = path_algebra(*DIAMOND)
    assert alg.path_count(alg.vertex("a"), alg.vertex("d")) == 2
    assert alg.dimension == 4 + 4 + 2


def test_projectives_and_injectives_on_supports(load_poset):
    p = load_poset("example6")
    alg = incidence_algebra(p)
    for v in range(len(alg)):
        x = p.elements[v]
        assert alg.projective(v).dims == tuple(int(p.leq(w, x)) for w in p.elements)
        assert alg.injective(v).dims == tuple(int(p.leq(x, w)) for w in p.elements)
        assert alg.projective(v).top_dims() == tuple(int(w == v) for w in range(len(alg)))
        assert alg.injective(v).socle_dims() == tuple(int(w == v) for w in range(len(alg)))


def test_vertices_are_indices():
    alg = path_algebra(*DIAMOND)
    with pytest.raises(UnknownVertex):
        alg.projective("a")
    with pytest.raises(UnknownVertex):
        alg.vertex("z")


def test_commutativity_enforced_for_incidence():
    p = build_poset(["t", "l", "r", "b"], [("t", "l"), ("t", "r"), ("l", "b"), ("r", "b")])
    alg = incidence_algebra(p)
    maps = {(alg.labels[a.source], alg.labels[a.target]): [[1]] for a in alg.arrows}
    maps[("l", "b")] = [[-1]]
    ordered = [maps[(alg.labels[a.source], alg.labels[a.target])] for a in alg.arrows]
    with pytest.raises(InvalidRepresentation):
        QuiverRep(alg, [1, 1, 1, 1], ordered)


def test_shape_mismatch_rejected():
    alg = path_algebra(["a", "b"], [("a", "b")])
    with pytest.raises(InvalidRepresentation):
        QuiverRep(alg, [1, 1], [[[1, 1]]])


def test_double_dual_is_identity(load_poset):
    alg = incidence_algebra(load_poset("example6"))
    x = alg.projective(0)
    assert x.dual().algebra.same_as(alg.opposite())
    assert x.dual().dual().maps == x.maps


def test_dual_of_projective_is_opposite_injective(load_poset):
    alg = incidence_algebra(load_poset("example6"))
    for v in range(len(alg)):
        assert alg.projective(v).dual().dims == alg.opposite().injective(v).dims


# -- Hom -----------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.data())
def test_hom_from_projective_is_evaluation(data):
    alg = path_algebra(*DIAMOND)
    x = data.draw(representations(alg))
    for v in range(len(alg)):
        assert hom_dim(alg.projective(v), x) == x.dims[v]
        assert hom_dim(x, alg.injective(v)) == x.dims[v]


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_hom_dim_matches_sympy(data):
    alg = path_algebra(*DIAMOND)
    x = data.draw(representations(alg))
    y = data.draw(representations(alg))
    assert hom_dim(x, y) == sympy_hom_dim(x, y)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_hom_basis_consists_of_independent_homomorphisms(data):
    alg = path_algebra(*DIAMOND)
    x = data.draw(representations(alg))
    y = data.draw(representations(alg))
    basis = hom_space(x, y)
    assert all(f.is_homomorphism() for f in basis)
    flat = [[e for c in f.components for row in c for e in row] for f in basis]
    assert sympy.Matrix(flat).rank() == len(basis) if flat else True


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_hom_is_additive(data):
    alg = path_algebra(*DIAMOND)
    x = data.draw(representations(alg))
    y = data.draw(representations(alg))
    z = data.draw(representations(alg))
    assert hom_dim(direct_sum([x, y]), z) == hom_dim(x, z) + hom_dim(y, z)


def test_composition_of_homomorphisms(load_poset):
    alg = incidence_algebra(load_poset("chain2"))
    top, bottom = alg.vertex("x2"), alg.vertex("x1")
    (f,) = hom_space(alg.projective(bottom), alg.projective(top))
    (g,) = hom_space(alg.projective(top), alg.injective(bottom))
    h = g.compose(f)
    assert h.is_homomorphism() and not h.is_zero() and h.rank() == 1


# -- Cartan --------------------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(posets(min_size=1, max_size=4))
def test_cartan_is_zeta_and_agrees_with_hom_solves(p):
    alg = incidence_algebra(p)
    cartan = cartan_matrix(alg)
    assert cartan == zeta_matrix(p)
    n = len(alg)
    for i in range(n):
        for j in range(n):
            assert cartan[i, j] == hom_dim(alg.projective(i), alg.projective(j))


def test_cartan_of_ideal_lattice(load_poset):
    lattice = order_ideals(load_poset("antichain3"))
    alg = incidence_algebra(lattice.as_poset())
    assert cartan_matrix(alg) == lattice_zeta_matrix(lattice)


def test_prime_field_hom():
    alg = path_algebra(["a", "b"], [("a", "b")], field=PrimeField(3))
    x = QuiverRep(alg, [1, 1], [[[3]]])  # zero map mod 3
    assert x.maps == (((0,),),)
    assert hom_dim(alg.simple(0), x) == 1
