import json
from itertools import product

import pytest
import sympy

from rowcox import (
    ARQuiverData,
    auslander_coxeter,
    coxeter_from_cartan,
    dynkin_path_algebra,
    endomorphism_grade_bijection,
    hom_dim,
    knit,
    parse_nrf,
    path_algebra,
    verify_nrf_identity,
)
from rowcox.dynkin import (
    all_orientations,
    dynkin_edges,
    higher_ar_formula_defects,
    knit_dynkin,
    mesh_defects,
    positive_root_count,
)
from rowcox.errors import InvalidType, MalformedData, NonDynkin
from rowcox.io import nrf_document

SMALL_TYPES = [("A", n) for n in range(1, 5)] + [("D", 4)]


def tits_roots(kind, rank, bound=3):
    """Positive roots as the vectors with Tits form 1 (entries bounded by ``bound``)."""
    edges = dynkin_edges(kind, rank)
    roots = set()
    for d in product(range(bound + 1), repeat=rank):
        q = sum(x * x for x in d) - sum(d[i - 1] * d[j - 1] for i, j in edges)
        if any(d) and q == 1:
            roots.add(d)
    return roots


def cases():
    for kind, rank in SMALL_TYPES:
        for orientation in all_orientations(kind, rank):
            yield kind, rank, orientation


@pytest.fixture(scope="module")
def knitted():
    return {case: knit(dynkin_path_algebra(*case)) for case in cases()}


# -- the algebras -------------------------------------------------------------------

def test_a2_linear_quiver():
    alg = dynkin_path_algebra("A", 2)
    assert [(alg.labels[a.source], alg.labels[a.target]) for a in alg.arrows] == [(1, 2)]


def test_d4_orientation_into_the_hub():
    alg = dynkin_path_algebra("D", 4, "><<")
    assert sorted((alg.labels[a.source], alg.labels[a.target]) for a in alg.arrows) == [(1, 2), (3, 2), (4, 2)]


def test_a3_alternating():
    alg = dynkin_path_algebra("A", 3, "><")
    assert sorted((alg.labels[a.source], alg.labels[a.target]) for a in alg.arrows) == [(1, 2), (3, 2)]


@pytest.mark.parametrize("kind, rank, orientation", [("A", 0, None), ("D", 3, None), ("E", 9, None), ("B", 3, None), ("A", 3, ">"), ("A", 3, ">x")])
def test_invalid_types(kind, rank, orientation):
    with pytest.raises(InvalidType):
        dynkin_path_algebra(kind, rank, orientation)


@pytest.mark.parametrize("kind, rank", [("A", 1), ("A", 4), ("D", 4), ("D", 5), ("E", 6)])
def test_positive_root_count_matches_tits_form(kind, rank):
    assert positive_root_count(kind, rank) == len(tits_roots(kind, rank))


# -- knitting ---------------------------------------------------------------------------

def test_dimension_vectors_are_the_positive_roots(knitted):
    for (kind, rank, _), data in knitted.items():
        assert {m.dims for m in data.modules} == tits_roots(kind, rank)


def test_knitted_modules_have_trivial_endomorphisms(knitted):
    for data in knitted.values():
        assert all(data.hom_dims[i][i] == 1 for i in range(data.size))


def test_hom_dims_recomputed_independently(knitted):
    data = knitted[("A", 3, "><")]
    mods = data.modules
    assert data.hom_dims == [[hom_dim(a, b) for b in mods] for a in mods]


def test_translate_matches_coxeter_on_dimension_vectors(knitted):
    # dim tau^-1 X = Phi^-1 dim X with Phi sending dim P_j to -dim I_j
    for data in knitted.values():
        alg = data.algebra
        n = len(alg)
        proj = sympy.Matrix([list(alg.projective(v).dims) for v in range(n)]).T
        inj = sympy.Matrix([list(alg.injective(v).dims) for v in range(n)]).T
        phi_inv = (-inj * proj.inv()).inv()
        for x, y in data.tau_inv.items():
            assert list(phi_inv * sympy.Matrix(data.modules[x].dims)) == list(data.modules[y].dims)


def test_a2_reference_data():
    data = knit(dynkin_path_algebra("A", 2))
    assert data.labels == ["P1", "P2", "t1P2"]
    assert data.hom_dims == [[1, 0, 1], [1, 1, 0], [0, 0, 1]]
    assert data.tau == {2: 1}
    assert data.modules[2].dims == (1, 0)


def test_a1_coxeter():
    data = knit(dynkin_path_algebra("A", 1))
    assert auslander_coxeter(data).to_lists() == [[-1]]


def test_projective_columns_go_to_negative_injective_classes(knitted):
    for data in knitted.values():
        cox = auslander_coxeter(data)
        for j, nj in data.nu.items():
            assert list(cox.column(j)) == [-int(i == nj) for i in range(data.size)]


def test_mesh_relations_and_ar_formula(knitted):
    for data in knitted.values():
        assert mesh_defects(data) == []
        assert higher_ar_formula_defects(data) == []


def test_non_dynkin_quiver_is_rejected():
    # extended D4: four arms into a hub
    alg = path_algebra(["c", "1", "2", "3", "4"], [("1", "c"), ("2", "c"), ("3", "c"), ("4", "c")])
    with pytest.raises(NonDynkin):
        knit(alg)


# -- endomorphism algebra identities -------------------------------------------------------------

def test_grade_bijection_of_the_endomorphism_algebra(knitted):
    data = knitted[("A", 2, ">")]
    result = endomorphism_grade_bijection(data)
    assert result.permutation.image == (2, 0, 1)
    assert result.grades == (0, 0, 2)


def test_identity_holds_for_every_small_quiver(knitted):
    for data in knitted.values():
        report = verify_nrf_identity(data)
        assert report.passed and report.witness is None
        assert report.coxeter == coxeter_from_cartan(data.cartan())
        # the minimal polynomial divides (x + 1)^2
        assert str(report.minimal_polynomial) in {"x + 1", "x^2 + 2*x + 1"}


def test_larger_types_knit_completely():
    for kind, rank in [("A", 5), ("D", 5)]:
        assert knit_dynkin(kind, rank).size == positive_root_count(kind, rank)


# -- NRF files -----------------------------------------------------------------------------------

def test_nrf_round_trip(knitted):
    data = knitted[("A", 3, ">>")]
    again = parse_nrf(json.dumps(nrf_document(data)))
    assert again.labels == data.labels and again.tau_inv == data.tau_inv
    report = verify_nrf_identity(again)
    assert report.passed and report.coxeter_cross_check is None


def test_corrupted_fixture_fails(corpus):
    report = verify_nrf_identity(parse_nrf(corpus["nrf"]["corrupted"]))
    assert not report.passed
    assert report.witness is not None and not report.witness.is_zero()
    assert str(report.minimal_polynomial) == "x^3 + x^2 - x - 1"


def test_even_degree_uses_the_involution_identity(knitted):
    doc = nrf_document(knitted[("A", 1, "")])
    doc["n"] = 2
    report = verify_nrf_identity(parse_nrf(doc))
    assert report.identity == "(C R^-1)^2 = id"
    # C R^-1 = [-1] squares to the identity
    assert report.passed


@pytest.mark.parametrize(
    "change",
    [
        lambda d: d.pop("hom_dims"),
        lambda d: d.update(n=0),
        lambda d: d.update(labels=d["labels"][:-1]),
        lambda d: d.update(hom_dims=[[0] * len(d["labels"]) for _ in d["labels"]]),
        lambda d: d["tau_n"].update({k: "P1" for k in d["tau_n"]}),
        lambda d: d["nu"].update(P1="nowhere"),
        lambda d: d.update(schema="other/1"),
        lambda d: d.update(projective="yes"),
    ],
)
def test_malformed_nrf_documents(knitted, change):
    doc = nrf_document(knitted[("A", 3, ">>")])
    change(doc)
    with pytest.raises(MalformedData):
        parse_nrf(doc)


def test_malformed_nrf_text():
    with pytest.raises(MalformedData):
        parse_nrf("{not json")


def test_data_invariants_checked_directly():
    with pytest.raises(MalformedData):
        ARQuiverData(labels=["a"], is_projective=[True], is_injective=[False], tau_inv={}, nu={0: 0}, hom_dims=[[1]])
