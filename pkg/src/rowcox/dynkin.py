"""Dynkin path algebras, Auslander-Reiten knitting, and the Coxeter/grade
data of the Auslander algebra ``B = End(M)`` computed on the A side.

Indecomposables ``M_0, ..., M_{m-1}`` stand in for the projective B-modules
``L_N = Hom(M, N)``, so ``hom_dims[i][j] = dim Hom(M_i, M_j)`` is the Cartan
matrix of B.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FREE, BQAlgebra, QuiverRep, hom_dim, path_algebra
from .errors import CoxeterCrossCheckFailed, InvalidType, MalformedData, NonDynkin, NotBijective
from .fields import QQ, column_space_complement, reduce_against
from .homology import ext_dims, projective_resolution
from .linalg import (
    IntPolynomial,
    PermutationMatrix,
    RationalMatrix,
    check_identity_square,
    check_nilpotent_shift,
    coxeter_from_cartan,
    minimal_polynomial,
)

_E_EDGES = [(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)]


def dynkin_edges(kind: str, rank: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin graph with vertices ``1..rank`` (Bourbaki numbering for E)."""
    kind = kind.upper()
    if kind == "A" and rank >= 1:
        return [(i, i + 1) for i in range(1, rank)]
    if kind == "D" and rank >= 4:
        return [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    if kind == "E" and 6 <= rank <= 8:
        return [e for e in _E_EDGES if e[1] <= rank]
    raise InvalidType(f"no Dynkin diagram {kind}{rank}")


def positive_root_count(kind: str, rank: int) -> int:
    kind = kind.upper()
    dynkin_edges(kind, rank)
    if kind == "A":
        return rank * (rank + 1) // 2
    if kind == "D":
        return rank * (rank - 1)
    return {6: 36, 7: 63, 8: 120}[rank]


def all_orientations(kind: str, rank: int) -> list[str]:
    m = len(dynkin_edges(kind, rank))
    out = [""]
    for _ in range(m):
        out = [s + c for s in out for c in "><"]
    return out


def dynkin_path_algebra(kind: str, rank: int, orientation: str | None = None, field=QQ) -> BQAlgebra:
    """Path algebra of an oriented Dynkin graph.

    ``orientation`` has one character per edge ``(i, j)`` in the order of
    :func:`dynkin_edges`: ``>`` for ``i -> j`` and ``<`` for ``j -> i``.
    The default points every edge forward.
    """
    edges = dynkin_edges(kind, rank)
    if orientation is None:
        orientation = ">" * len(edges)
    if len(orientation) != len(edges) or set(orientation) - {"<", ">"}:
        raise InvalidType(f"orientation for {kind}{rank} needs {len(edges)} characters from '<>', got {orientation!r}")
    arrows = [(i, j) if c == ">" else (j, i) for (i, j), c in zip(edges, orientation)]
    alg = path_algebra(list(range(1, rank + 1)), arrows, field)
    alg.dynkin_type = (kind.upper(), rank, orientation)
    return alg


# -- knitting ---------------------------------------------------------------------

@dataclass
class ARQuiverData:
    """Indecomposables with their translates; ``n`` is the cluster-tilting degree."""

    labels: list[str]
    is_projective: list[bool]
    is_injective: list[bool]
    tau_inv: dict[int, int]
    nu: dict[int, int]
    hom_dims: list[list[int]]
    n: int = 1
    modules: list[QuiverRep] = field(default_factory=list)
    algebra: BQAlgebra | None = None
    successors: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        m = len(self.labels)
        if len(set(self.labels)) != m:
            raise MalformedData("labels must be distinct")
        if len(self.is_projective) != m or len(self.is_injective) != m:
            raise MalformedData("flag arrays must have one entry per label")
        if len(self.hom_dims) != m or any(len(r) != m for r in self.hom_dims):
            raise MalformedData(f"hom_dims must be {m}x{m}")
        if self.n < 1:
            raise MalformedData("n must be at least 1")
        proj = {i for i in range(m) if self.is_projective[i]}
        inj = {i for i in range(m) if self.is_injective[i]}
        if set(self.nu) != proj or sorted(self.nu.values()) != sorted(inj):
            raise MalformedData("nu must be a bijection from projectives to injectives")
        if set(self.tau_inv) != set(range(m)) - inj or sorted(self.tau_inv.values()) != sorted(set(range(m)) - proj):
            raise MalformedData("tau_n inverse must be a bijection from non-injectives to non-projectives")

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def tau(self) -> dict[int, int]:
        return {v: k for k, v in self.tau_inv.items()}

    def cartan(self) -> RationalMatrix:
        return RationalMatrix(self.hom_dims)


def _tau_inverse(x: QuiverRep) -> QuiverRep | None:
    """``tau^{-1} X`` for a module over a hereditary path algebra, or None if X is injective.

    A minimal injective copresentation ``0 -> X -> I^0 -> I^1`` is read off a
    projective presentation of ``D X`` over the opposite algebra; the inverse
    Nakayama functor turns ``I^0 -> I^1`` into ``P^0 -> P^1`` and
    ``tau^{-1} X`` is the cokernel.
    """
    alg = x.algebra
    opp = alg.opposite()
    res = projective_resolution(x.dual())
    if len(res.summands) < 2:
        return None
    u, v = res.summands[0], res.summands[1]
    n = len(alg)
    fld = alg.field
    # coefficient of the A-path v_j ~> u_k in the map P_{u_k} -> P_{v_j}
    coeffs: list[list[tuple[int, tuple, object]]] = []
    for j, vj in enumerate(v):
        img = res.images[1][j]
        entries, pos = [], 0
        for k, uk in enumerate(u):
            for p in opp.paths(uk, vj):
                c = img[pos]
                pos += 1
                if c:
                    entries.append((k, tuple(reversed(p)), c))
        coeffs.append(entries)

    def offsets(w):
        offs, tot = [], 0
        for vj in v:
            offs.append(tot)
            tot += alg.path_count(vj, w)
        return offs, tot

    offs = [offsets(w) for w in range(n)]
    quotient = []
    for w in range(n):
        o, dim = offs[w]
        cols = []
        for k, uk in enumerate(u):
            for q in alg.paths(uk, w):
                col = [0] * dim
                for j, entries in enumerate(coeffs):
                    for kk, p, c in entries:
                        if kk == k:
                            idx = o[j] + alg.path_index(v[j], w, p + q)
                            col[idx] = fld.reduce(col[idx] + c)
                cols.append(col)
        quotient.append(column_space_complement([c for c in cols if any(c)], dim, fld))
    dims = [len(q[2]) for q in quotient]
    maps = []
    for a_idx, a in enumerate(alg.arrows):
        s, t = a.source, a.target
        ech, piv, comp_t = quotient[t]
        o_s, o_t = offs[s][0], offs[t][0]
        coord = {}
        for j, vj in enumerate(v):
            for i, p in enumerate(alg.paths(vj, s)):
                coord[o_s[j] + i] = (j, p)
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for c, pos in enumerate(quotient[s][2]):
            j, p = coord[pos]
            vec = [0] * offs[t][1]
            vec[o_t[j] + alg.path_index(v[j], t, p + (a_idx,))] = 1
            red = reduce_against(vec, ech, piv, fld)
            for r, f in enumerate(comp_t):
                mat[r][c] = red[f]
        maps.append(mat)
    return QuiverRep(alg, dims, maps, check=False)


def knit(alg: BQAlgebra) -> ARQuiverData:
    """All indecomposables of a Dynkin path algebra, obtained from the
    projectives by repeated ``tau^{-1}``."""
    if alg.relation_class != FREE:
        raise InvalidType("knitting needs a hereditary path algebra")
    n = len(alg)
    modules = [alg.projective(v) for v in range(n)]
    labels = [f"P{alg.labels[v]}" for v in range(n)]
    origin = {v: (v, 0) for v in range(n)}
    kind = getattr(alg, "dynkin_type", None)
    bound = positive_root_count(*kind[:2]) if kind else 120
    tau_inv: dict[int, int] = {}
    injective: list[bool] = []
    i = 0
    while i < len(modules):
        nxt = _tau_inverse(modules[i])
        if nxt is None:
            injective.append(True)
        else:
            injective.append(False)
            if len(modules) >= bound:
                raise NonDynkin(f"more than {bound} indecomposables: not of Dynkin type")
            v, k = origin[i]
            origin[len(modules)] = (v, k + 1)
            tau_inv[i] = len(modules)
            labels.append(f"t{k + 1}P{alg.labels[v]}")
            modules.append(nxt)
        i += 1
    m = len(modules)
    index_of_dims = {mod.dims: idx for idx, mod in enumerate(modules)}
    if len(index_of_dims) != m:
        raise NonDynkin("two knitted modules share a dimension vector")
    nu = {}
    for v in range(n):
        target = alg.injective(v).dims
        if target not in index_of_dims:
            raise NonDynkin(f"injective at {alg.labels[v]} never reached")
        nu[v] = index_of_dims[target]
    homs = [[hom_dim(a, b) for b in modules] for a in modules]
    for idx in range(m):
        if homs[idx][idx] != 1:
            raise NonDynkin(f"{labels[idx]} has a {homs[idx][idx]}-dimensional endomorphism ring")
    data = ARQuiverData(
        labels=labels,
        is_projective=[idx < n for idx in range(m)],
        is_injective=injective,
        tau_inv=tau_inv,
        nu=nu,
        hom_dims=homs,
        n=1,
        modules=modules,
        algebra=alg,
    )
    data.successors = _ar_successors(data)
    return data


def _ar_successors(data: ARQuiverData) -> list[list[int]]:
    """Arrows of the AR quiver: ``succ(X)`` are the targets of irreducible maps out of X.

    ``succ(P_x)`` contains ``P_y`` for each quiver arrow ``y -> x``, every
    ``succ(X)`` contains ``tau^{-1} W`` for each predecessor ``W`` of X, and
    the predecessors of ``tau^{-1} X`` are the successors of X.  Knit order
    has ``tau^{-1} X`` after X, so one pass suffices.
    """
    alg = data.algebra
    m = data.size
    preds: list[list[int]] = [[] for _ in range(m)]
    into: list[list[int]] = [[] for _ in range(len(alg))]
    for a in alg.arrows:
        into[a.target].append(a.source)
        preds[a.source].append(a.target)
    succ: list[list[int]] = [[] for _ in range(m)]
    for x in range(m):
        out = list(into[x]) if data.is_projective[x] else []
        out += [data.tau_inv[w] for w in preds[x] if w in data.tau_inv]
        succ[x] = sorted(out)
        if x in data.tau_inv:
            preds[data.tau_inv[x]] = succ[x]
    return succ


def mesh_defects(data: ARQuiverData) -> list[int]:
    """Modules X (non-injective) violating ``dim X + dim tau^{-1}X = sum of dim succ(X)``."""
    bad = []
    for x, y in sorted(data.tau_inv.items()):
        left = [a + b for a, b in zip(data.modules[x].dims, data.modules[y].dims)]
        right = [0] * len(left)
        for s in data.successors[x]:
            right = [a + b for a, b in zip(right, data.modules[s].dims)]
        if left != right:
            bad.append(x)
    return bad


def higher_ar_formula_defects(data: ARQuiverData) -> list[tuple[int, int]]:
    """Pairs ``(X, Y)`` with ``dim Hom(tau^{-1} Y, X) != dim Ext^1(X, Y)``."""
    bad = []
    resolutions = [projective_resolution(m) for m in data.modules]
    for y, ty in sorted(data.tau_inv.items()):
        for x in range(data.size):
            lhs = data.hom_dims[ty][x]
            ext = ext_dims(data.modules[x], data.modules[y], resolutions[x])
            rhs = ext[1] if len(ext) > 1 else 0
            if lhs != rhs:
                bad.append((x, y))
    return bad


# -- Auslander algebra data ------------------------------------------------------------

def auslander_coxeter(data: ARQuiverData) -> RationalMatrix:
    """Coxeter matrix of ``End(M)``, cross-checked against the projective-resolution formula."""
    cox = coxeter_from_cartan(data.cartan())
    if data.modules:
        expected = _coxeter_by_resolutions(data)
        for j in range(data.size):
            if list(cox.column(j)) != expected[j]:
                raise CoxeterCrossCheckFailed(
                    f"column {data.labels[j]}: matrix {list(cox.column(j))}, formula {expected[j]}"
                )
    return cox


def _coxeter_by_resolutions(data: ARQuiverData) -> list[list[int]]:
    """Columns ``-[L_nu N]`` for projective N, and
    ``sum_i (-1)^{i+1} [L_{nu P_i}] + (-1)^n [L_{tau_n N}]`` otherwise."""
    m = data.size
    tau = data.tau
    cols = []
    for j in range(m):
        col = [0] * m
        if data.is_projective[j]:
            col[data.nu[j]] = -1
        else:
            res = projective_resolution(data.modules[j])
            for i, terms in enumerate(res.summands):
                for u in terms:
                    col[data.nu[u]] += (-1) ** (i + 1)
            col[tau[j]] += (-1) ** data.n
        cols.append(col)
    return cols


@dataclass(frozen=True)
class EndomorphismGradeBijection:
    permutation: PermutationMatrix
    grades: tuple[int, ...]


def endomorphism_grade_bijection(data: ARQuiverData) -> EndomorphismGradeBijection:
    """``L_N -> L_{nu N}`` for projective N, ``L_N -> L_{tau_n N}`` otherwise."""
    tau = data.tau
    image = []
    for j in range(data.size):
        image.append(data.nu[j] if data.is_projective[j] else tau.get(j))
    if None in image or len(set(image)) != data.size:
        raise NotBijective("the rule nu / tau_n does not give a permutation")
    grades = tuple(0 if p else data.n + 1 for p in data.is_projective)
    return EndomorphismGradeBijection(PermutationMatrix(image), grades)


@dataclass(frozen=True)
class NRFReport:
    n: int
    size: int
    coxeter: RationalMatrix
    permutation: PermutationMatrix
    product: RationalMatrix  # C R^{-1}
    minimal_polynomial: IntPolynomial
    identity: str
    passed: bool
    witness: RationalMatrix | None
    coxeter_cross_check: bool | None = None


def verify_nrf_identity(data: ARQuiverData) -> NRFReport:
    """``(C R^{-1} + id)^2 = 0`` for odd n, ``(C R^{-1})^2 = id`` for even n."""
    cox = auslander_coxeter(data)
    r = endomorphism_grade_bijection(data).permutation
    product = cox @ r.inverse()
    ident = RationalMatrix.identity(data.size)
    if data.n % 2:
        passed = check_nilpotent_shift(product)
        value = (product + ident) @ (product + ident)
        name = "(C R^-1 + id)^2 = 0"
    else:
        passed = check_identity_square(product)
        value = product @ product - ident
        name = "(C R^-1)^2 = id"
    return NRFReport(
        n=data.n,
        size=data.size,
        coxeter=cox,
        permutation=r,
        product=product,
        minimal_polynomial=minimal_polynomial(product),
        identity=name,
        passed=passed,
        witness=None if passed else value,
        coxeter_cross_check=True if data.modules else None,
    )


def knit_dynkin(kind: str, rank: int, orientation: str | None = None) -> ARQuiverData:
    data = knit(dynkin_path_algebra(kind, rank, orientation))
    expected = positive_root_count(kind, rank)
    if data.size != expected:
        raise NonDynkin(f"{kind}{rank}: knitted {data.size} indecomposables, expected {expected}")
    return data


def dimension_vectors(data: ARQuiverData) -> list[Sequence[int]]:
    return [list(m.dims) for m in data.modules]
