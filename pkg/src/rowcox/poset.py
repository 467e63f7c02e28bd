"""Finite posets, order ideals, the lattice J(P) and rowmotion.

Elements are arbitrary hashable labels kept in a fixed order; internally
every subset is an ``int`` bitmask over element positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import (
    CycleDetected,
    DuplicateLabel,
    NonCoverEdge,
    NotAnAntichain,
    NotAnOrderIdeal,
    NotDistributive,
    SizeLimitExceeded,
    UnknownElement,
)
from .linalg import PermutationMatrix, RationalMatrix

DEFAULT_IDEAL_CAP = 2**20


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite partial order on an ordered sequence of distinct labels.

    ``down[i]`` / ``up[i]`` are bitmasks of the positions below / above
    position ``i`` (both include ``i`` itself).
    """

    __slots__ = ("elements", "_index", "down", "up")

    def __init__(self, elements: Sequence[Hashable], leq_pairs: Iterable[tuple] = ()):
        elements = tuple(elements)
        index = {}
        for i, x in enumerate(elements):
            if x in index:
                raise DuplicateLabel(f"label {x!r} appears twice")
            index[x] = i
        n = len(elements)
        down = [1 << i for i in range(n)]
        for a, b in leq_pairs:
            down[self._lookup(index, b)] |= 1 << self._lookup(index, a)
        self.elements = elements
        self._index = index
        self.down = tuple(down)
        self.up = tuple(sum(1 << j for j in range(n) if down[j] >> i & 1) for i in range(n))
        self._check_order()

    @staticmethod
    def _lookup(index, x):
        try:
            return index[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not an element of the poset") from None

    def _check_order(self):
        down = self.down
        for i, d in enumerate(down):
            for j in _bits(d):
                if j != i and down[j] >> i & 1:
                    raise CycleDetected(
                        f"{self.elements[i]!r} and {self.elements[j]!r} are below each other"
                    )
                if down[j] & ~d:
                    raise ValueError(
                        f"relation is not transitive at {self.elements[j]!r} <= {self.elements[i]!r}"
                    )

    @classmethod
    def _from_masks(cls, elements, down) -> Poset:
        p = object.__new__(cls)
        p.elements = tuple(elements)
        p._index = {x: i for i, x in enumerate(p.elements)}
        n = len(down)
        p.down = tuple(down)
        p.up = tuple(sum(1 << j for j in range(n) if down[j] >> i & 1) for i in range(n))
        return p

    # -- basic queries ------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.down == other.down

    def __hash__(self):
        return hash((self.elements, self.down))

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, covers={self.cover_pairs()!r})"

    def index(self, x) -> int:
        return self._lookup(self._index, x)

    def leq(self, a, b) -> bool:
        return bool(self.down[self.index(b)] >> self.index(a) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def relation(self) -> set[tuple]:
        """The full order relation as a set of pairs ``(a, b)`` with ``a <= b``."""
        els = self.elements
        return {(els[j], els[i]) for i, d in enumerate(self.down) for j in _bits(d)}

    def cover_masks(self) -> tuple[int, ...]:
        """``covers[i]`` is the bitmask of elements covered by position ``i``."""
        out = []
        for i, d in enumerate(self.down):
            strict = d & ~(1 << i)
            below_strict = 0
            for j in _bits(strict):
                below_strict |= self.down[j] & ~(1 << j)
            out.append(strict & ~below_strict)
        return tuple(out)

    def cover_pairs(self) -> list[tuple]:
        """Pairs ``(a, b)`` meaning ``a`` covers ``b``, in element order."""
        els = self.elements
        return [(els[i], els[j]) for i, c in enumerate(self.cover_masks()) for j in _bits(c)]

    def mask(self, subset: Iterable) -> int:
        m = 0
        for x in subset:
            m |= 1 << self.index(x)
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(mask))

    def down_closure_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.down[i]
        return out

    def up_closure_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= self.up[i]
        return out

    def maximal_mask(self, mask: int) -> int:
        return sum(1 << i for i in _bits(mask) if not (self.up[i] & mask) & ~(1 << i))

    def minimal_mask(self, mask: int) -> int:
        return sum(1 << i for i in _bits(mask) if not (self.down[i] & mask) & ~(1 << i))

    def is_antichain_mask(self, mask: int) -> bool:
        return all(not (self.down[i] & mask) & ~(1 << i) for i in _bits(mask))

    def is_ideal_mask(self, mask: int) -> bool:
        return all(not self.down[i] & ~mask for i in _bits(mask))

    def is_antichain(self, subset: Iterable) -> bool:
        return self.is_antichain_mask(self.mask(subset))

    def is_order_ideal(self, subset: Iterable) -> bool:
        return self.is_ideal_mask(self.mask(subset))

    def dual(self) -> Poset:
        return Poset._from_masks(self.elements, self.up)

    def subposet(self, subset: Iterable) -> Poset:
        wanted = {self.index(x) for x in subset}
        keep = [i for i in range(len(self)) if i in wanted]
        pos = {old: new for new, old in enumerate(keep)}
        down = [sum(1 << pos[j] for j in _bits(self.down[i]) if j in pos) for i in keep]
        return Poset._from_masks([self.elements[i] for i in keep], down)

    def linear_extension(self) -> list[int]:
        """Positions sorted so every element comes after everything below it."""
        return sorted(range(len(self)), key=lambda i: (self.down[i].bit_count(), i))


def build_poset(elements: Sequence[Hashable], cover_pairs: Iterable[Sequence]) -> Poset:
    """Poset whose order is the reflexive-transitive closure of the cover pairs.

    ``(a, b)`` in ``cover_pairs`` means ``a`` covers ``b``.  A pair implied by
    the others (so not a genuine cover) is rejected.
    """
    elements = tuple(elements)
    index = {}
    for i, x in enumerate(elements):
        if x in index:
            raise DuplicateLabel(f"label {x!r} appears twice")
        index[x] = i
    n = len(elements)
    pairs = []
    for pair in cover_pairs:
        if len(pair) != 2:
            raise ValueError(f"cover pair {pair!r} does not have two entries")
        a, b = pair
        ia, ib = Poset._lookup(index, a), Poset._lookup(index, b)
        if ia == ib:
            raise CycleDetected(f"{a!r} cannot cover itself")
        pairs.append((ia, ib))
    below = [0] * n  # direct lower covers as listed
    for ia, ib in pairs:
        below[ia] |= 1 << ib
    # closure in topological order; Kahn's algorithm spots cycles
    indeg = [0] * n
    for ia, ib in set(pairs):
        indeg[ia] += 1
    order = [i for i in range(n) if not indeg[i]]
    uppers = [[] for _ in range(n)]
    for ia, ib in set(pairs):
        uppers[ib].append(ia)
    k = 0
    while k < len(order):
        b = order[k]
        k += 1
        for a in uppers[b]:
            indeg[a] -= 1
            if not indeg[a]:
                order.append(a)
    if len(order) != n:
        stuck = [elements[i] for i in range(n) if indeg[i]]
        raise CycleDetected(f"cover pairs contain a cycle through {stuck!r}")
    down = [1 << i for i in range(n)]
    for i in order:
        for j in _bits(below[i]):
            down[i] |= down[j]
    for ia, ib in pairs:
        others = below[ia] & ~(1 << ib)
        via = 0
        for j in _bits(others):
            via |= down[j]
        if via >> ib & 1:
            raise NonCoverEdge(f"{elements[ia]!r} > {elements[ib]!r} is implied by other covers")
    return Poset._from_masks(elements, down)


@dataclass(frozen=True)
class OrderIdealLattice:
    """The distributive lattice J(P) with its fixed element order.

    ``masks[k]`` is the k-th ideal as a bitmask over ``parent`` positions;
    ideals are sorted by (size, sorted positions), a linear extension of
    inclusion.
    """

    parent: Poset
    masks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {m: k for k, m in enumerate(self.masks)})

    def __len__(self):
        return len(self.masks)

    @property
    def ideals(self) -> tuple[frozenset, ...]:
        return tuple(self.parent.labels(m) for m in self.masks)

    def position(self, ideal) -> int:
        mask = ideal if isinstance(ideal, int) else self.parent.mask(ideal)
        try:
            return self._pos[mask]
        except KeyError:
            raise NotAnOrderIdeal(f"{sorted(map(repr, self.parent.labels(mask)))} is not an order ideal") from None

    def leq(self, i: int, j: int) -> bool:
        return not self.masks[i] & ~self.masks[j]

    def join(self, i: int, j: int) -> int:
        return self._pos[self.masks[i] | self.masks[j]]

    def meet(self, i: int, j: int) -> int:
        return self._pos[self.masks[i] & self.masks[j]]

    def label(self, k: int) -> str:
        return format_ideal(self.parent, self.masks[k])

    def as_poset(self) -> Poset:
        """J(P) as a Poset whose labels are the ideals (frozensets of labels)."""
        masks = self.masks
        down = [sum(1 << i for i, mi in enumerate(masks) if not mi & ~mj) for mj in masks]
        return Poset._from_masks(self.ideals, down)


def format_ideal(parent: Poset, mask: int) -> str:
    return "{" + ",".join(str(parent.elements[i]) for i in _bits(mask)) + "}"


def _ideal_sort_key(mask: int):
    return (mask.bit_count(), list(_bits(mask)))


def order_ideals(poset: Poset, cap: int = DEFAULT_IDEAL_CAP) -> OrderIdealLattice:
    """All order ideals of ``poset``, sorted by (cardinality, lexicographic)."""
    order = poset.linear_extension()
    strict_down = [poset.down[i] & ~(1 << i) for i in range(len(poset))]
    found: list[int] = []

    def extend(k: int, mask: int):
        if k == len(order):
            found.append(mask)
            if len(found) > cap:
                raise SizeLimitExceeded(f"more than {cap} order ideals")
            return
        i = order[k]
        extend(k + 1, mask)
        if not strict_down[i] & ~mask:
            extend(k + 1, mask | 1 << i)

    extend(0, 0)
    found.sort(key=_ideal_sort_key)
    return OrderIdealLattice(poset, tuple(found))


# -- antichains, ideals, rowmotion -----------------------------------------

def _ideal_mask(poset: Poset, ideal) -> int:
    mask = poset.mask(ideal)
    if not poset.is_ideal_mask(mask):
        raise NotAnOrderIdeal(f"{set(ideal)!r} is not downward closed")
    return mask


def _antichain_mask(poset: Poset, antichain) -> int:
    mask = poset.mask(antichain)
    if not poset.is_antichain_mask(mask):
        raise NotAnAntichain(f"{set(antichain)!r} contains comparable elements")
    return mask


def max_antichain(poset: Poset, ideal: Iterable) -> frozenset:
    """The antichain of maximal elements of an order ideal."""
    return poset.labels(poset.maximal_mask(_ideal_mask(poset, ideal)))


def ideal_of_antichain(poset: Poset, antichain: Iterable) -> frozenset:
    """The order ideal generated by (whose maximal elements are) an antichain."""
    return poset.labels(poset.down_closure_mask(_antichain_mask(poset, antichain)))


def complement_ideal(poset: Poset, antichain: Iterable) -> frozenset:
    """The order ideal whose minimal non-elements are exactly ``antichain``."""
    mask = _antichain_mask(poset, antichain)
    full = (1 << len(poset)) - 1
    return poset.labels(full & ~poset.up_closure_mask(mask))


def _rowmotion_mask(poset: Poset, mask: int) -> int:
    full = (1 << len(poset)) - 1
    return full & ~poset.up_closure_mask(poset.maximal_mask(mask))


def rowmotion(poset: Poset, ideal: Iterable) -> frozenset:
    return poset.labels(_rowmotion_mask(poset, _ideal_mask(poset, ideal)))


def rowmotion_matrix(lattice: OrderIdealLattice) -> PermutationMatrix:
    """Rowmotion as a permutation matrix; column j carries the image of ideal j."""
    p = lattice.parent
    return PermutationMatrix(lattice.position(_rowmotion_mask(p, m)) for m in lattice.masks)


def rowmotion_orbits(lattice: OrderIdealLattice) -> list[tuple[int, ...]]:
    return rowmotion_matrix(lattice).cycles()


# -- lattice structure ------------------------------------------------------

@dataclass(frozen=True)
class LatticeTests:
    is_lattice: bool
    is_distributive: bool


def _join_meet_tables(q: Poset):
    n = len(q)
    join = [[-1] * n for _ in range(n)]
    meet = [[-1] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            ub = q.up[a] & q.up[b]
            lub = [u for u in _bits(ub) if not ub & ~q.up[u]]
            lb = q.down[a] & q.down[b]
            glb = [d for d in _bits(lb) if not lb & ~q.down[d]]
            if len(lub) != 1 or len(glb) != 1:
                return None
            join[a][b] = join[b][a] = lub[0]
            meet[a][b] = meet[b][a] = glb[0]
    return join, meet


def lattice_tests(q: Poset) -> LatticeTests:
    """Lattice and distributivity checks (the latter by the triple identity)."""
    if not len(q):
        return LatticeTests(False, False)
    tables = _join_meet_tables(q)
    if tables is None:
        return LatticeTests(False, False)
    join, meet = tables
    n = len(q)
    for a in range(n):
        ma = meet[a]
        for b in range(n):
            jb = join[b]
            for c in range(n):
                if ma[jb[c]] != join[ma[b]][ma[c]]:
                    return LatticeTests(True, False)
    return LatticeTests(True, True)


def distributivity_witness(q: Poset) -> tuple | None:
    """A triple (a, b, c) with a^(bvc) != (a^b)v(a^c), or None."""
    tables = _join_meet_tables(q)
    if tables is None:
        return None
    join, meet = tables
    n = len(q)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    return q.elements[a], q.elements[b], q.elements[c]
    return None


@dataclass(frozen=True)
class JoinIrreducibles:
    """Join-irreducibles of a distributive lattice and the Birkhoff isomorphism.

    ``relabeling`` sends each ideal of ``poset`` (a frozenset of labels) to the
    lattice element it corresponds to (the join of its members).
    """

    poset: Poset
    relabeling: dict


def join_irreducibles(lattice: Poset) -> JoinIrreducibles:
    tests = lattice_tests(lattice)
    if not tests.is_distributive:
        raise NotDistributive("join-irreducibles are only taken for distributive lattices")
    covers = lattice.cover_masks()
    ji = [lattice.elements[i] for i in range(len(lattice)) if covers[i].bit_count() == 1]
    sub = lattice.subposet(ji)
    join, _ = _join_meet_tables(lattice)
    bottom = next(i for i in range(len(lattice)) if lattice.down[i] == 1 << i)
    relabeling = {}
    for mask in order_ideals(sub).masks:
        acc = bottom
        for i in _bits(mask):
            acc = join[acc][lattice.index(sub.elements[i])]
        relabeling[sub.labels(mask)] = lattice.elements[acc]
    return JoinIrreducibles(sub, relabeling)


def lattice_rowmotion(lattice: Poset) -> PermutationMatrix:
    """Rowmotion on a distributive lattice given as a poset, in its element order.

    Transported through the Birkhoff isomorphism with J(join-irreducibles).
    """
    birk = join_irreducibles(lattice)
    j = order_ideals(birk.poset)
    perm = rowmotion_matrix(j)
    to_lattice = [lattice.index(birk.relabeling[ideal]) for ideal in j.ideals]
    image = [0] * len(lattice)
    for k, target in enumerate(perm.image):
        image[to_lattice[k]] = to_lattice[target]
    return PermutationMatrix(image)


# -- zeta and Mobius -------------------------------------------------------

def zeta_matrix(poset: Poset) -> RationalMatrix:
    """``zeta[i][j] = 1`` iff element i <= element j."""
    n = len(poset)
    down = poset.down
    return RationalMatrix._trusted([[down[j] >> i & 1 for j in range(n)] for i in range(n)])


def lattice_zeta_matrix(lattice: OrderIdealLattice) -> RationalMatrix:
    masks = lattice.masks
    return RationalMatrix._trusted([[int(not mi & ~mj) for mj in masks] for mi in masks])


def zeta_and_mobius(lattice: OrderIdealLattice) -> tuple[RationalMatrix, RationalMatrix]:
    zeta = lattice_zeta_matrix(lattice)
    return zeta, zeta.inverse()
