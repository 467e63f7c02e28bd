"""Projective resolutions, Ext against the regular module, grade and cograde,
Auslander regularity, the grade bijection, and Cartan/Coxeter matrices.

A term of a projective resolution is a direct sum of indecomposable
projectives ``P_{u_0} + P_{u_1} + ...``.  Its space at vertex ``w`` has the
basis ``(k, path)`` with ``path`` running over ``A.paths(u_k, w)``, blocks in
summand order.  The resolution only remembers the summand vertices of each
term and, for every summand, the image of its generator ``e_{u_k}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import BQAlgebra, ModuleMap, QuiverRep, direct_sum
from .errors import (
    AlgebraMismatch,
    ConventionMismatch,
    DimensionMismatch,
    NonSimpleTop,
    NotAuslanderRegular,
    ZeroModule,
)
from .fields import column_space_complement, kernel, matmul, rank
from .linalg import (
    IntPolynomial,
    PermutationMatrix,
    RationalMatrix,
    check_identity_square,
    coxeter_from_cartan,
    minimal_polynomial,
)


# -- coordinates on sums of projectives --------------------------------------

def _offsets(alg: BQAlgebra, summands: Sequence[int], w: int) -> tuple[list[int], int]:
    offs = []
    total = 0
    for u in summands:
        offs.append(total)
        total += alg.path_count(u, w)
    return offs, total


def _push(alg: BQAlgebra, summands, vec, s: int, t: int, path, offs_s=None, offs_t=None) -> list:
    """Act by ``path`` (from ``s`` to ``t``) on a vector of ``(sum of projectives)_s``."""
    if offs_s is None:
        offs_s = _offsets(alg, summands, s)[0]
    if offs_t is None:
        offs_t, dim_t = _offsets(alg, summands, t)
    else:
        dim_t = offs_t[-1] + alg.path_count(summands[-1], t) if summands else 0
    out = [0] * dim_t
    red = alg.field.reduce
    for k, u in enumerate(summands):
        base = offs_s[k]
        for i, p in enumerate(alg.paths(u, s)):
            x = vec[base + i]
            if x:
                j = offs_t[k] + alg.path_index(u, t, p + tuple(path))
                out[j] = red(out[j] + x)
    return out


# -- resolutions ---------------------------------------------------------------

@dataclass
class Complex:
    """A finite sequence of modules ``M_0 -> M_1 -> ... -> M_m`` with maps."""

    modules: list[QuiverRep]
    maps: list[ModuleMap]

    def __post_init__(self):
        if len(self.maps) != max(len(self.modules) - 1, 0):
            raise DimensionMismatch("a complex needs one map between consecutive modules")

    def composes_to_zero(self) -> bool:
        return all(g.compose(f).is_zero() for f, g in zip(self.maps, self.maps[1:]))

    def is_exact_at(self, i: int) -> bool:
        """Exactness at the interior position ``i`` (per vertex rank count)."""
        m = self.modules[i]
        f, g = self.maps[i - 1], self.maps[i]
        fld = m.field
        for v, d in enumerate(m.dims):
            r_in = rank(f.components[v], f.source.dims[v], fld)
            r_out = rank(g.components[v], d, fld)
            if r_in != d - r_out:
                return False
        return True

    def is_exact(self) -> bool:
        """Exact everywhere, including injectivity of the first map and
        surjectivity of the last one."""
        if not self.maps:
            return all(m.is_zero() for m in self.modules)
        first, last = self.maps[0], self.maps[-1]
        return (
            first.rank() == self.modules[0].total_dim
            and last.rank() == self.modules[-1].total_dim
            and all(self.is_exact_at(i) for i in range(1, len(self.modules) - 1))
        )


@dataclass
class ProjectiveResolution:
    """Minimal projective resolution ``0 -> P_m -> ... -> P_0 -> X -> 0``.

    ``summands[i]`` are the vertices of the indecomposable summands of
    ``P_i``; ``images[i][k]`` is where the generator of summand ``k`` goes:
    a vector of ``X_{u_k}`` for ``i = 0`` and of ``(P_{i-1})_{u_k}`` otherwise.
    """

    module: QuiverRep
    summands: list[tuple[int, ...]]
    images: list[list[list]]

    @property
    def algebra(self) -> BQAlgebra:
        return self.module.algebra

    @property
    def length(self) -> int:
        return len(self.summands) - 1

    projective_dimension = length

    def multiplicities(self, i: int) -> list[int]:
        counts = [0] * len(self.algebra)
        for u in self.summands[i]:
            counts[u] += 1
        return counts

    def term(self, i: int) -> QuiverRep:
        alg = self.algebra
        return direct_sum([alg.projective(u) for u in self.summands[i]])

    def _map_to(self, i: int, target: QuiverRep) -> ModuleMap:
        """The map from ``P_i`` given by the generator images, into ``target``."""
        alg = self.algebra
        summands = self.summands[i]
        gens = self.images[i]
        source = self.term(i)
        comps = []
        prev = self.summands[i - 1] if i else None
        for w in range(len(alg)):
            if i == 0:
                cols = [target.act(u, p, gens[k]) for k, u in enumerate(summands) for p in alg.paths(u, w)]
            else:
                offs_w = _offsets(alg, prev, w)[0]
                cols = []
                for k, u in enumerate(summands):
                    offs_u = _offsets(alg, prev, u)[0]
                    for p in alg.paths(u, w):
                        cols.append(_push(alg, prev, gens[k], u, w, p, offs_u, offs_w))
            rows = [[c[r] for c in cols] for r in range(target.dims[w])]
            comps.append(tuple(tuple(r) for r in rows))
        return ModuleMap(source, target, tuple(comps))

    def augmentation(self) -> ModuleMap:
        return self._map_to(0, self.module)

    def differential(self, i: int) -> ModuleMap:
        """``d_i : P_i -> P_{i-1}`` for ``i >= 1``."""
        return self._map_to(i, self.term(i - 1))

    def as_complex(self) -> Complex:
        """The augmented resolution ``P_m -> ... -> P_0 -> X`` as a sequence."""
        modules = [self.term(i) for i in reversed(range(len(self.summands)))] + [self.module]
        maps = [self.differential(i) for i in reversed(range(1, len(self.summands)))] + [self.augmentation()]
        return Complex(modules, maps)

    def k0_class(self) -> list[int]:
        out = [0] * len(self.algebra)
        for i, terms in enumerate(self.summands):
            sign = -1 if i % 2 else 1
            for u in terms:
                out[u] += sign
        return out


def _top_generators(m: QuiverRep) -> tuple[list[int], list[list]]:
    """Vertices and vectors whose images span a complement of ``rad m``."""
    summands, gens = [], []
    for v, d in enumerate(m.dims):
        if not d:
            continue
        _, _, comp = column_space_complement(m.radical_images(v), d, m.field)
        for c in comp:
            e = [0] * d
            e[c] = 1
            summands.append(v)
            gens.append(e)
    return summands, gens


def _cover_kernel(m: QuiverRep, summands, gens):
    """Kernel of the projective cover ``P -> m`` as a representation, plus,
    per vertex, the kernel basis in the coordinates of ``P``."""
    alg = m.algebra
    fld = m.field
    n = len(alg)
    bases, frees, dims = [], [], []
    for w in range(n):
        cols = [m.act(u, p, gens[k]) for k, u in enumerate(summands) for p in alg.paths(u, w)]
        ncols = len(cols)
        if not ncols:
            bases.append([])
            frees.append([])
            dims.append(0)
            continue
        rows = [[c[r] for c in cols] for r in range(m.dims[w])]
        rows = [r for r in rows if any(r)]
        basis, free = kernel(rows, ncols, fld)
        bases.append(basis)
        frees.append(free)
        dims.append(len(basis))
    offsets = [_offsets(alg, summands, w)[0] for w in range(n)]
    maps = []
    for k, a in enumerate(alg.arrows):
        s, t = a.source, a.target
        mat = [[0] * dims[s] for _ in range(dims[t])]
        for c, b in enumerate(bases[s]):
            image = _push(alg, summands, b, s, t, (k,), offsets[s], offsets[t])
            for r, f in enumerate(frees[t]):
                mat[r][c] = image[f]
        maps.append(mat)
    return QuiverRep(alg, dims, maps, check=False), bases


def projective_resolution(x: QuiverRep) -> ProjectiveResolution:
    """Minimal projective resolution: iterated projective covers of syzygies."""
    if x.is_zero():
        raise ZeroModule("cannot resolve the zero module")
    alg = x.algebra
    fld = x.field
    summands_all, images_all = [], []
    m, embed = x, None
    bound = len(alg) + 1  # global dimension is below the number of vertices
    while not m.is_zero():
        if len(summands_all) > bound:
            raise RuntimeError("resolution failed to terminate")
        summands, gens = _top_generators(m)
        if embed is None:
            images = gens
        else:
            images = []
            for u, g in zip(summands, gens):
                basis = embed[u]
                vec = [0] * (len(basis[0]) if basis else 0)
                for coef, b in zip(g, basis):
                    if coef:
                        vec = [fld.reduce(s + coef * y) for s, y in zip(vec, b)]
                images.append(vec)
        summands_all.append(tuple(summands))
        images_all.append(images)
        m, embed = _cover_kernel(m, summands, gens)
    return ProjectiveResolution(x, summands_all, images_all)


minimal_projective_resolution = projective_resolution


def _resolution(alg: BQAlgebra, kind: str, v: int) -> ProjectiveResolution:
    key = ("res", kind, v)
    hit = alg._cache.get(key)
    if hit is None:
        module = {"S": alg.simple, "I": alg.injective, "P": alg.projective}[kind](v)
        hit = alg._cache[key] = projective_resolution(module)
    return hit


@dataclass
class InjectiveCoresolution:
    """Minimal injective coresolution ``0 -> X -> I^0 -> I^1 -> ...``.

    Obtained by dualizing a minimal projective resolution of ``D X`` over the
    opposite algebra; ``summands[i]`` lists the vertices ``u`` with ``I_u`` a
    summand of ``I^i``.
    """

    module: QuiverRep
    dual_resolution: ProjectiveResolution

    @property
    def summands(self) -> list[tuple[int, ...]]:
        return self.dual_resolution.summands

    @property
    def length(self) -> int:
        return self.dual_resolution.length

    def as_complex(self) -> Complex:
        """``X -> I^0 -> ... -> I^m`` with the terms written as duals."""
        seq = self.dual_resolution.as_complex()
        modules = [m.dual() for m in reversed(seq.modules)]
        m = len(seq.maps)
        maps = [_dual_map(seq.maps[m - 1 - i], modules[i], modules[i + 1]) for i in range(m)]
        return Complex(modules, maps)


def _dual_map(f: ModuleMap, source: QuiverRep, target: QuiverRep) -> ModuleMap:
    """``D f``: transpose every component."""
    comps = tuple(
        tuple(tuple(c[r][q] for r in range(source.dims[v])) for q in range(target.dims[v]))
        for v, c in enumerate(f.components)
    )
    return ModuleMap(source, target, comps)


def injective_coresolution(x: QuiverRep) -> InjectiveCoresolution:
    if x.is_zero():
        raise ZeroModule("cannot coresolve the zero module")
    return InjectiveCoresolution(x, projective_resolution(x.dual()))


minimal_injective_coresolution = injective_coresolution


def k0_class(x: QuiverRep) -> list[int]:
    """Class of ``x`` in the Grothendieck group, in the basis of projectives."""
    if x.is_zero():
        return [0] * len(x.algebra)
    return projective_resolution(x).k0_class()


# -- Ext ----------------------------------------------------------------------

def _cochain_differentials(res: ProjectiveResolution, y: QuiverRep) -> tuple[list[int], list[list[list]]]:
    """Dimensions of ``Hom(P_i, Y)`` and the matrices of ``delta^i``
    (``rows = dim C^{i+1}``, ``cols = dim C^i``)."""
    alg = res.algebra
    if not alg.same_as(y.algebra):
        raise AlgebraMismatch("modules over different algebras")
    fld = alg.field
    red = fld.reduce
    dims, starts = [], []
    for terms in res.summands:
        st, tot = [], 0
        for u in terms:
            st.append(tot)
            tot += y.dims[u]
        dims.append(tot)
        starts.append(st)
    deltas = []
    for i in range(len(res.summands) - 1):
        prev, cur = res.summands[i], res.summands[i + 1]
        mat = [[0] * dims[i] for _ in range(dims[i + 1])]
        for k, u in enumerate(cur):
            if not y.dims[u]:
                continue
            offs_u = _offsets(alg, prev, u)[0]
            img = res.images[i + 1][k]
            for j, v in enumerate(prev):
                if not y.dims[v]:
                    continue
                base = offs_u[j]
                for idx, p in enumerate(alg.paths(v, u)):
                    c = img[base + idx]
                    if not c:
                        continue
                    block = y.path_map(v, p)
                    r0, c0 = starts[i + 1][k], starts[i][j]
                    for r, row in enumerate(block):
                        target = mat[r0 + r]
                        for q, e in enumerate(row):
                            if e:
                                target[c0 + q] = red(target[c0 + q] + c * e)
        deltas.append(mat)
    return dims, deltas


def _ext_from_cochains(dims, deltas, field) -> list[int]:
    ranks = [rank(d, dims[i], field) for i, d in enumerate(deltas)]
    out = []
    for i, d in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(d - r_out - r_in)
    return out


def ext_dims(x: QuiverRep, y: QuiverRep, resolution: ProjectiveResolution | None = None) -> list[int]:
    """``[dim Ext^i(X, Y) for i = 0 .. pdim X]``."""
    res = resolution or projective_resolution(x)
    dims, deltas = _cochain_differentials(res, y)
    return _ext_from_cochains(dims, deltas, x.field)


def ext_dim(x: QuiverRep, y: QuiverRep, i: int) -> int:
    dims = ext_dims(x, y)
    return dims[i] if i < len(dims) else 0


def ext_against_algebra(x: QuiverRep, resolution: ProjectiveResolution | None = None) -> list[int]:
    """``dim Ext^i(X, A)`` for each ``i``, summed over the projectives ``P_u``."""
    alg = x.algebra
    res = resolution or projective_resolution(x)
    total = [0] * len(res.summands)
    for u in range(len(alg)):
        for i, d in enumerate(ext_dims(x, alg.projective(u), res)):
            total[i] += d
    return total


def grade(x: QuiverRep) -> int:
    if x.is_zero():
        raise ZeroModule("grade of the zero module is infinite")
    return next(i for i, d in enumerate(ext_against_algebra(x)) if d)


def cograde(x: QuiverRep) -> int:
    """Least ``i`` with ``Ext^i(D A, X) != 0``, using resolutions of the injectives."""
    if x.is_zero():
        raise ZeroModule("cograde of the zero module is infinite")
    alg = x.algebra
    total: list[int] = []
    for u in range(len(alg)):
        res = _resolution(alg, "I", u)
        for i, d in enumerate(ext_dims(alg.injective(u), x, res)):
            if i == len(total):
                total.append(0)
            total[i] += d
    return next(i for i, d in enumerate(total) if d)


# -- Auslander regularity -------------------------------------------------------

@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    global_dimension: int
    witness: tuple | None = None  # (degree i, injective vertex u, pdim I_u, projective vertex v)

    def __bool__(self):
        return self.regular


def projective_dimensions_of_injectives(alg: BQAlgebra) -> list[int]:
    return [_resolution(alg, "I", u).length for u in range(len(alg))]


def is_auslander_regular(alg: BQAlgebra) -> RegularityVerdict:
    """``pdim I^i <= i`` along the minimal injective coresolution of ``A``."""
    pdims = projective_dimensions_of_injectives(alg)
    gldim = max((_resolution(alg, "S", v).length for v in range(len(alg))), default=0)
    witness = None
    for v in range(len(alg)):
        co = injective_coresolution(alg.projective(v))
        for i, terms in enumerate(co.summands):
            for u in terms:
                if pdims[u] > i and (witness is None or (i, u) < witness[:2]):
                    witness = (i, u, pdims[u], v)
    return RegularityVerdict(witness is None, gldim, witness)


# -- grade bijection -------------------------------------------------------------

@dataclass(frozen=True)
class GradeBijectionResult:
    labels: tuple
    permutation: PermutationMatrix  # image[v] = vertex of R(S_v)
    grades: tuple[int, ...]
    cogrades: tuple[int, ...]  # cograde of R(S_v), listed by v

    def mapping(self) -> dict:
        return {self.labels[v]: self.labels[self.permutation(v)] for v in range(len(self.labels))}


def _lambda(alg: BQAlgebra, summands, arrow: int, s: int, t: int) -> list[list]:
    """Left multiplication by ``arrow: s -> t`` from ``Hom(P, P_t)`` to ``Hom(P, P_s)``,
    both written as ``sum_k (P_.)_{u_k}``."""
    offs, dim = [], 0
    for u in summands:
        offs.append(dim)
        dim += alg.path_count(s, u)
    cols = []
    for k, u in enumerate(summands):
        for q in alg.paths(t, u):
            vec = [0] * dim
            vec[offs[k] + alg.path_index(s, u, (arrow,) + q)] = 1
            cols.append(vec)
    return [[c[r] for c in cols] for r in range(dim)]


def top_of_dual_ext(simple_vertex: int, alg: BQAlgebra, g: int) -> list[int]:
    """Dimension vector of ``top D Ext^g(S, A) = D soc Ext^g(S, A)``."""
    res = _resolution(alg, "S", simple_vertex)
    fld = alg.field
    n = len(alg)
    per_t = [_cochain_differentials(res, alg.projective(t)) for t in range(n)]

    def delta(t, i):
        dims, deltas = per_t[t]
        return deltas[i] if 0 <= i < len(deltas) else []

    annihilators = []
    for s in range(n):
        dims = per_t[s][0]
        prev = delta(s, g - 1)
        b_rows = [list(col) for col in zip(*prev)] if prev else []
        annihilators.append(kernel(b_rows, dims[g], fld)[0] if dims[g] else [])
    socle = []
    for t in range(n):
        dims = per_t[t][0]
        d = dims[g]
        if not d:
            socle.append(0)
            continue
        rows = [r for r in delta(t, g) if any(r)]
        for a in alg.in_arrows[t]:
            s = alg.arrows[a].source
            if not annihilators[s]:
                continue
            lam = _lambda(alg, res.summands[g], a, s, t)
            rows.extend(matmul(annihilators[s], lam, len(lam), d, fld))
        w_dim = d - rank(rows, d, fld)
        b_rank = rank(delta(t, g - 1), dims[g - 1], fld) if g >= 1 else 0
        socle.append(w_dim - b_rank)
    return socle


def grade_bijection(alg: BQAlgebra, check_regular: bool = True) -> GradeBijectionResult:
    """``S -> top D Ext^{grade S}(S, A)``; asserts simplicity and grade = cograde."""
    if check_regular:
        verdict = is_auslander_regular(alg)
        if not verdict:
            raise NotAuslanderRegular(f"not Auslander regular, witness {verdict.witness}")
    n = len(alg)
    image, grades, cogrades = [], [], []
    for v in range(n):
        res = _resolution(alg, "S", v)
        g = grade_from(res)
        top = top_of_dual_ext(v, alg, g)
        support = [t for t, d in enumerate(top) if d]
        if len(support) != 1 or top[support[0]] != 1:
            raise NonSimpleTop(f"top of D Ext^{g}(S_{alg.labels[v]}, A) has dimension vector {top}")
        t = support[0]
        cg = cograde(alg.simple(t))
        if cg != g:
            raise ConventionMismatch(f"grade {g} of S_{alg.labels[v]} differs from cograde {cg} of its image")
        image.append(t)
        grades.append(g)
        cogrades.append(cg)
    return GradeBijectionResult(alg.labels, PermutationMatrix(image), tuple(grades), tuple(cogrades))


def grade_from(res: ProjectiveResolution) -> int:
    return next(i for i, d in enumerate(ext_against_algebra(res.module, res)) if d)


# -- Cartan and Coxeter -------------------------------------------------------------

def cartan_matrix(alg: BQAlgebra) -> RationalMatrix:
    """``cartan[i][j] = dim Hom(P_i, P_j) = dim (P_j)_i`` (Yoneda)."""
    n = len(alg)
    return RationalMatrix([[alg.path_count(j, i) for j in range(n)] for i in range(n)])


def coxeter_matrix(alg: BQAlgebra) -> RationalMatrix:
    """``-M^{-1} M^T``, cross-checked column by column against ``-[I_j]``."""
    cox = coxeter_from_cartan(cartan_matrix(alg))
    n = len(alg)
    for j in range(n):
        col = [-c for c in _resolution(alg, "I", j).k0_class()]
        if list(cox.column(j)) != col:
            raise ConventionMismatch(f"coxeter column {j}: matrix route {list(cox.column(j))}, resolution route {col}")
    return cox


@dataclass(frozen=True)
class RowmotionCoxeterReport:
    coxeter: RationalMatrix
    rowmotion: PermutationMatrix
    product: RationalMatrix  # R^{-1} C
    minimal_polynomial: IntPolynomial
    square_is_identity: bool
    extras: dict = dc_field(default_factory=dict)


def rowmotion_coxeter_report(coxeter: RationalMatrix, r: PermutationMatrix) -> RowmotionCoxeterReport:
    if coxeter.shape != (len(r), len(r)):
        raise DimensionMismatch(f"coxeter is {coxeter.shape}, permutation has size {len(r)}")
    product = r.inverse() @ coxeter
    return RowmotionCoxeterReport(coxeter, r, product, minimal_polynomial(product), check_identity_square(product))
