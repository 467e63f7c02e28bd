"""Bound quiver algebras (incidence algebras and acyclic path algebras) and
their finite-dimensional right modules, stored as quiver representations.

Conventions
-----------
* A representation assigns a space ``X_v`` to each vertex and to each arrow
  ``a: s -> t`` a matrix ``X_a`` of shape ``dim X_t x dim X_s`` acting on
  column vectors.
* Paths compose left to right, so the projective ``P_v = e_v A`` is spanned
  by the paths leaving ``v`` and the injective ``I_v = D(A e_v)`` by the
  duals of the paths arriving at ``v``.
* For the incidence algebra of a poset the arrows run ``x -> y`` whenever
  ``x`` covers ``y``; then ``P_v`` lives on ``{w <= v}`` and ``I_v`` on
  ``{w >= v}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import AlgebraMismatch, CycleDetected, InvalidRepresentation, UnknownVertex
from .fields import QQ, kernel, matmul, rank, transpose
from .poset import Poset

INCIDENCE = "incidence-commutativity"
FREE = "none"

Path = tuple  # tuple of arrow indices


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    name: str = ""


class BQAlgebra:
    """A basic algebra ``kQ/I`` with ``Q`` acyclic and ``I`` either zero or
    the ideal identifying all parallel paths (incidence algebras).

    Both classes have a basis of paths in which a path times an arrow is
    again a single basis path, which is what every routine below relies on.
    """

    def __init__(self, labels: Sequence[Hashable], arrows: Iterable[Arrow], relation_class: str = FREE, field=QQ):
        if relation_class not in (INCIDENCE, FREE):
            raise ValueError(f"unknown relation class {relation_class!r}")
        self.labels = tuple(labels)
        self._index = {x: i for i, x in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("vertex labels must be distinct")
        self.arrows = tuple(arrows)
        self.relation_class = relation_class
        self.field = field
        n = len(self.labels)
        self.out_arrows = [[] for _ in range(n)]
        self.in_arrows = [[] for _ in range(n)]
        for k, a in enumerate(self.arrows):
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise UnknownVertex(f"arrow {a} uses an unknown vertex")
            self.out_arrows[a.source].append(k)
            self.in_arrows[a.target].append(k)
        self.topological_order = self._toposort()
        self._build_paths()
        self._opposite: BQAlgebra | None = None
        self._cache: dict = {}

    # -- construction helpers ----------------------------------------------

    def _toposort(self) -> list[int]:
        n = len(self.labels)
        indeg = [len(self.in_arrows[v]) for v in range(n)]
        order = [v for v in range(n) if not indeg[v]]
        k = 0
        while k < len(order):
            v = order[k]
            k += 1
            for a in self.out_arrows[v]:
                t = self.arrows[a].target
                indeg[t] -= 1
                if not indeg[t]:
                    order.append(t)
        if len(order) != n:
            raise CycleDetected("the quiver of a bound quiver algebra here must be acyclic")
        return order

    def _build_paths(self):
        n = len(self.labels)
        pos = {v: i for i, v in enumerate(self.topological_order)}
        self._paths: list[dict[int, list[Path]]] = []
        self._lookup: list[dict[int, dict[Path, int]]] = []
        for v in range(n):
            paths: dict[int, list[Path]] = {v: [()]}
            for w in sorted(range(n), key=pos.__getitem__):
                if w not in paths or pos[w] < pos[v]:
                    continue
                for a in self.out_arrows[w]:
                    t = self.arrows[a].target
                    bucket = paths.setdefault(t, [])
                    if self.relation_class == FREE:
                        bucket.extend(p + (a,) for p in paths[w])
                    elif not bucket:
                        bucket.append(paths[w][0] + (a,))
            self._paths.append(paths)
            self._lookup.append({w: {p: i for i, p in enumerate(ps)} for w, ps in paths.items()})
        if self.relation_class == INCIDENCE:
            for k, a in enumerate(self.arrows):
                for b in self.out_arrows[a.source]:
                    if b != k and self.arrows[b].target != a.target and a.target in self._paths[self.arrows[b].target]:
                        raise ValueError(f"arrow {k} is not a cover relation of a poset")

    # -- basic data ---------------------------------------------------------

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"BQAlgebra({len(self.labels)} vertices, {len(self.arrows)} arrows, {self.relation_class}, {self.field!r})"

    def vertex(self, label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownVertex(f"{label!r} is not a vertex") from None

    def paths(self, v: int, w: int) -> list[Path]:
        """Basis paths from ``v`` to ``w`` (one representative per class)."""
        return self._paths[v].get(w, [])

    def path_count(self, v: int, w: int) -> int:
        return len(self._paths[v].get(w, ()))

    def path_index(self, v: int, w: int, path: Path) -> int:
        """Position of the basis element represented by ``path`` in ``paths(v, w)``."""
        if self.relation_class == INCIDENCE:
            if w not in self._paths[v]:
                raise KeyError(f"no path from {v} to {w}")
            return 0
        return self._lookup[v][w][path]

    def path_endpoints(self, path: Path, start: int) -> int:
        end = start
        for a in path:
            end = self.arrows[a].target
        return end

    @property
    def dimension(self) -> int:
        return sum(len(ps) for d in self._paths for ps in d.values())

    def opposite(self) -> BQAlgebra:
        """The opposite algebra: same vertices, every arrow reversed (same index)."""
        if self._opposite is None:
            opp = BQAlgebra(
                self.labels,
                [Arrow(a.target, a.source, a.name) for a in self.arrows],
                self.relation_class,
                self.field,
            )
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def same_as(self, other: BQAlgebra) -> bool:
        return other is self or (
            self.labels == other.labels
            and self.arrows == other.arrows
            and self.relation_class == other.relation_class
            and self.field == other.field
        )

    # -- standard modules ---------------------------------------------------

    def projective(self, v) -> QuiverRep:
        v = self._as_vertex(v)
        key = ("P", v)
        if key not in self._cache:
            dims = [self.path_count(v, w) for w in range(len(self))]
            maps = []
            for k, a in enumerate(self.arrows):
                m = [[0] * dims[a.source] for _ in range(dims[a.target])]
                for i, p in enumerate(self.paths(v, a.source)):
                    m[self.path_index(v, a.target, p + (k,))][i] = 1
                maps.append(m)
            self._cache[key] = QuiverRep(self, dims, maps, check=False)
        return self._cache[key]

    def injective(self, v) -> QuiverRep:
        v = self._as_vertex(v)
        key = ("I", v)
        if key not in self._cache:
            dims = [self.path_count(w, v) for w in range(len(self))]
            maps = []
            for k, a in enumerate(self.arrows):
                # (a . f)(q) = f(a q) for q a path from a.target to v
                m = [[0] * dims[a.source] for _ in range(dims[a.target])]
                for r, q in enumerate(self.paths(a.target, v)):
                    m[r][self.path_index(a.source, v, (k,) + q)] = 1
                maps.append(m)
            self._cache[key] = QuiverRep(self, dims, maps, check=False)
        return self._cache[key]

    def simple(self, v) -> QuiverRep:
        v = self._as_vertex(v)
        dims = [0] * len(self)
        dims[v] = 1
        return QuiverRep(self, dims, [[[0] * dims[a.source] for _ in range(dims[a.target])] for a in self.arrows], check=False)

    def regular_module(self) -> QuiverRep:
        return direct_sum([self.projective(v) for v in range(len(self))])

    def dual_regular_module(self) -> QuiverRep:
        return direct_sum([self.injective(v) for v in range(len(self))])

    def _as_vertex(self, v) -> int:
        if isinstance(v, int) and not isinstance(v, bool) and 0 <= v < len(self):
            return v
        raise UnknownVertex(f"{v!r} is not a vertex index")


def incidence_algebra(poset: Poset, field=QQ) -> BQAlgebra:
    """Incidence algebra on the Hasse quiver of ``poset`` (arrow x -> y when x covers y)."""
    covers = poset.cover_masks()
    arrows = []
    for i, c in enumerate(covers):
        j = 0
        while c:
            if c & 1:
                arrows.append(Arrow(i, j, f"{poset.elements[i]}>{poset.elements[j]}"))
            c >>= 1
            j += 1
    alg = BQAlgebra(poset.elements, arrows, INCIDENCE, field)
    alg.poset = poset
    return alg


def path_algebra(labels: Sequence[Hashable], arrows: Iterable[tuple], field=QQ) -> BQAlgebra:
    """Path algebra (no relations) of an acyclic quiver given by label pairs."""
    index = {x: i for i, x in enumerate(labels)}
    arr = []
    for k, pair in enumerate(arrows):
        s, t = pair[0], pair[1]
        if s not in index or t not in index:
            raise UnknownVertex(f"arrow {pair!r} uses an unknown vertex")
        name = pair[2] if len(pair) > 2 else f"{s}->{t}"
        arr.append(Arrow(index[s], index[t], name))
    return BQAlgebra(labels, arr, FREE, field)


class QuiverRep:
    """A finite-dimensional right module as a representation of the quiver."""

    __slots__ = ("algebra", "dims", "maps", "_path_maps")

    def __init__(self, algebra: BQAlgebra, dims: Sequence[int], maps: Sequence[Sequence[Sequence]], *, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if check:
            f = algebra.field
            maps = [[[f(x) for x in row] for row in m] for m in maps]
        self.maps = tuple(tuple(tuple(row) for row in m) for m in maps)
        self._path_maps: dict = {}
        if check:
            self.validate()

    def validate(self):
        alg = self.algebra
        if len(self.dims) != len(alg):
            raise InvalidRepresentation(f"need {len(alg)} dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise InvalidRepresentation("dimensions must be non-negative")
        if len(self.maps) != len(alg.arrows):
            raise InvalidRepresentation(f"need {len(alg.arrows)} arrow maps, got {len(self.maps)}")
        for k, (a, m) in enumerate(zip(alg.arrows, self.maps)):
            if len(m) != self.dims[a.target] or any(len(r) != self.dims[a.source] for r in m):
                raise InvalidRepresentation(f"arrow {k} needs a {self.dims[a.target]}x{self.dims[a.source]} matrix")
        if alg.relation_class == INCIDENCE:
            self._check_commutativity()

    def _check_commutativity(self):
        alg = self.algebra
        f = alg.field
        for v in range(len(alg)):
            if not self.dims[v]:
                continue
            composite = {v: [[1 if i == j else 0 for j in range(self.dims[v])] for i in range(self.dims[v])]}
            for w in alg.topological_order:
                if w not in composite:
                    continue
                for k in alg.out_arrows[w]:
                    t = alg.arrows[k].target
                    m = matmul(self.maps[k], composite[w], self.dims[w], self.dims[v], f)
                    if t in composite:
                        if composite[t] != m:
                            raise InvalidRepresentation(
                                f"parallel paths from {alg.labels[v]!r} to {alg.labels[t]!r} act differently"
                            )
                    else:
                        composite[t] = m

    # -- basic data ---------------------------------------------------------

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def dimension_vector(self) -> tuple[int, ...]:
        return self.dims

    def support(self) -> list[int]:
        return [v for v, d in enumerate(self.dims) if d]

    def __eq__(self, other):
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return self.algebra.same_as(other.algebra) and self.dims == other.dims and self.maps == other.maps

    def __hash__(self):
        return hash((self.dims, self.maps))

    def __repr__(self):
        return f"QuiverRep(dims={list(self.dims)})"

    def path_map(self, start: int, path: Path) -> list[list]:
        """Matrix by which a path starting at ``start`` acts (from X_start to X_end)."""
        key = (start, path)
        hit = self._path_maps.get(key)
        if hit is not None:
            return hit
        if not path:
            d = self.dims[start]
            m = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        else:
            prefix = self.path_map(start, path[:-1])
            a = self.algebra.arrows[path[-1]]
            m = matmul(self.maps[path[-1]], prefix, self.dims[a.source], self.dims[start], self.field)
        self._path_maps[key] = m
        return m

    def act(self, start: int, path: Path, vec: Sequence) -> list:
        v = list(vec)
        field = self.field
        for k in path:
            a = self.algebra.arrows[k]
            v = [field.reduce(sum(x * y for x, y in zip(row, v) if x and y)) for row in self.maps[k]]
        return v

    def dual(self) -> QuiverRep:
        """``D X = Hom_k(X, k)``, a right module over the opposite algebra."""
        opp = self.algebra.opposite()
        maps = [transpose(m, self.dims[a.target], self.dims[a.source]) for a, m in zip(self.algebra.arrows, self.maps)]
        return QuiverRep(opp, self.dims, maps, check=False)

    def radical_images(self, v: int) -> list[list]:
        """Spanning vectors of ``rad(X)_v``: images of the arrow maps ending at ``v``."""
        vecs = []
        for k in self.algebra.in_arrows[v]:
            m = self.maps[k]
            src = self.algebra.arrows[k].source
            for c in range(self.dims[src]):
                col = [m[r][c] for r in range(self.dims[v])]
                if any(col):
                    vecs.append(col)
        return vecs

    def top_dims(self) -> tuple[int, ...]:
        return tuple(self.dims[v] - rank(self.radical_images(v), self.dims[v], self.field) for v in range(len(self.dims)))

    def socle_dims(self) -> tuple[int, ...]:
        out = []
        for v in range(len(self.dims)):
            rows = [row for k in self.algebra.out_arrows[v] for row in self.maps[k]]
            out.append(self.dims[v] - rank(rows, self.dims[v], self.field))
        return tuple(out)


def direct_sum(modules: Sequence[QuiverRep]) -> QuiverRep:
    if not modules:
        raise ValueError("direct sum of no modules")
    alg = modules[0].algebra
    for m in modules[1:]:
        if not m.algebra.same_as(alg):
            raise AlgebraMismatch("summands live over different algebras")
    n = len(alg)
    dims = [sum(m.dims[v] for m in modules) for v in range(n)]
    maps = []
    for k, a in enumerate(alg.arrows):
        big = [[0] * dims[a.source] for _ in range(dims[a.target])]
        ro = co = 0
        for m in modules:
            block = m.maps[k]
            for i, row in enumerate(block):
                big[ro + i][co:co + len(row)] = row
            ro += m.dims[a.target]
            co += m.dims[a.source]
        maps.append(big)
    return QuiverRep(alg, dims, maps, check=False)


@dataclass(frozen=True)
class ModuleMap:
    """A morphism of representations: one matrix per vertex (target x source)."""

    source: QuiverRep
    target: QuiverRep
    components: tuple

    def is_zero(self) -> bool:
        return not any(x for c in self.components for row in c for x in row)

    def is_homomorphism(self) -> bool:
        alg = self.source.algebra
        f = alg.field
        for k, a in enumerate(alg.arrows):
            s, t = a.source, a.target
            left = matmul(self.target.maps[k], self.components[s], self.target.dims[s], self.source.dims[s], f)
            right = matmul(self.components[t], self.source.maps[k], self.source.dims[t], self.source.dims[s], f)
            if [list(r) for r in left] != [list(r) for r in right]:
                return False
        return True

    def rank(self) -> int:
        f = self.source.field
        return sum(rank(c, self.source.dims[v], f) for v, c in enumerate(self.components))

    def compose(self, other: ModuleMap) -> ModuleMap:
        """``self o other``."""
        f = self.source.field
        comps = tuple(
            tuple(tuple(r) for r in matmul(c1, c2, other.target.dims[v], other.source.dims[v], f))
            for v, (c1, c2) in enumerate(zip(self.components, other.components))
        )
        return ModuleMap(other.source, self.target, comps)


def _hom_system(x: QuiverRep, y: QuiverRep):
    if not x.algebra.same_as(y.algebra):
        raise AlgebraMismatch("Hom between modules over different algebras")
    alg = x.algebra
    offsets = []
    total = 0
    for v in range(len(alg)):
        offsets.append(total)
        total += y.dims[v] * x.dims[v]
    rows = []
    red = alg.field.reduce
    for k, a in enumerate(alg.arrows):
        s, t = a.source, a.target
        dxs, dxt, dys, dyt = x.dims[s], x.dims[t], y.dims[s], y.dims[t]
        if not dxs or not dyt:
            continue
        ya, xa = y.maps[k], x.maps[k]
        # (Y_a f_s - f_t X_a)[r][c] = 0
        for r in range(dyt):
            for c in range(dxs):
                row = [0] * total
                for q in range(dys):
                    coef = ya[r][q]
                    if coef:
                        row[offsets[s] + q * dxs + c] += coef
                for q in range(dxt):
                    coef = xa[q][c]
                    if coef:
                        row[offsets[t] + r * dxt + q] -= coef
                if any(row):
                    rows.append([red(e) for e in row])
    return rows, offsets, total


def hom_space(x: QuiverRep, y: QuiverRep) -> list[ModuleMap]:
    """A basis of ``Hom_A(X, Y)``: per-vertex maps commuting with every arrow."""
    rows, offsets, total = _hom_system(x, y)
    basis = kernel(rows, total, x.field)[0] if total else []
    out = []
    for vec in basis:
        comps = []
        for v in range(len(x.dims)):
            dx, dy = x.dims[v], y.dims[v]
            o = offsets[v]
            comps.append(tuple(tuple(vec[o + r * dx: o + (r + 1) * dx]) for r in range(dy)))
        out.append(ModuleMap(x, y, tuple(comps)))
    return out


def hom_dim(x: QuiverRep, y: QuiverRep) -> int:
    rows, _, total = _hom_system(x, y)
    return total - rank(rows, total, x.field)
