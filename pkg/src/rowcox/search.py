"""Exhaustive and randomized searches for counterexamples to
``(rho^{-1} C)^2 = id`` on distributive lattices J(P)."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import SizeLimitExceeded
from .linalg import check_identity_square, coxeter_from_cartan, minimal_polynomial
from .poset import DEFAULT_IDEAL_CAP, Poset, lattice_zeta_matrix, order_ideals, rowmotion_matrix

ENUMERATION_CAP = 6


def _natural_down_sets(n: int):
    """Down-set masks of naturally labeled posets on ``0..n-1`` (i < j whenever i is below j)."""
    if n == 0:
        yield ()
        return
    for downs in _natural_down_sets(n - 1):
        prev = Poset._from_masks(tuple(range(n - 1)), list(downs))
        for mask in range(1 << (n - 1)):
            if prev.is_ideal_mask(mask):
                yield downs + (mask | 1 << (n - 1),)


def labeled_posets(n: int):
    """Every partial order on ``{0, ..., n-1}``, each exactly once, as down-set masks."""
    seen = set()
    perms = list(itertools.permutations(range(n)))
    for downs in _natural_down_sets(n):
        for perm in perms:
            relabeled = [0] * n
            for i, d in enumerate(downs):
                m = 0
                for j in range(n):
                    if d >> j & 1:
                        m |= 1 << perm[j]
                relabeled[perm[i]] = m
            key = tuple(relabeled)
            if key not in seen:
                seen.add(key)
                yield key


def poset_from_masks(downs) -> Poset:
    return Poset._from_masks(tuple(range(len(downs))), list(downs))


def random_poset(rng: random.Random, n: int) -> tuple[int, ...]:
    """A random order on ``n`` points: random DAG along a shuffled order, then closure."""
    order = list(range(n))
    rng.shuffle(order)
    p = rng.uniform(0.1, 0.6)
    down = [1 << i for i in range(n)]
    for b in range(n):
        hi = order[b]
        for a in range(b):
            if rng.random() < p:
                down[hi] |= 1 << order[a]
        # lower neighbours sit earlier in the order and are already closed
        for a in range(b):
            lo = order[a]
            if down[hi] >> lo & 1:
                down[hi] |= down[lo]
    return tuple(down)


@dataclass(frozen=True)
class HopkinsResult:
    downs: tuple[int, ...]
    ideals: int
    holds: bool
    witness: dict | None = None


def check_hopkins(downs, cap: int = DEFAULT_IDEAL_CAP) -> HopkinsResult:
    """Check ``(R^{-1} C)^2 = id`` on J(P), R = rowmotion, C the Coxeter matrix."""
    poset = poset_from_masks(downs)
    lattice = order_ideals(poset, cap)
    cox = coxeter_from_cartan(lattice_zeta_matrix(lattice))
    r = rowmotion_matrix(lattice)
    product = r.inverse() @ cox
    if check_identity_square(product):
        return HopkinsResult(tuple(downs), len(lattice), True)
    witness = {
        "covers": [list(p) for p in poset.cover_pairs()],
        "coxeter": cox,
        "rowmotion": r,
        "product": product,
        "minimal_polynomial": minimal_polynomial(product),
    }
    return HopkinsResult(tuple(downs), len(lattice), False, witness)


def _check_batch(args):
    batch, cap = args
    return [check_hopkins(d, cap) for d in batch]


def run_checks(candidates, cap: int = DEFAULT_IDEAL_CAP, jobs: int = 1) -> list[HopkinsResult]:
    """Check all candidates; output is ordered by canonical key whatever ``jobs`` is."""
    candidates = sorted(set(map(tuple, candidates)), key=lambda d: (len(d), d))
    if jobs <= 1:
        results = [check_hopkins(d, cap) for d in candidates]
    else:
        size = max(1, len(candidates) // (jobs * 8))
        batches = [(candidates[i:i + size], cap) for i in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for chunk in pool.map(_check_batch, batches) for r in chunk]
    return results


def enumerate_candidates(max_size: int) -> list[tuple[int, ...]]:
    if not 0 <= max_size <= ENUMERATION_CAP:
        raise SizeLimitExceeded(f"enumeration size must be between 0 and {ENUMERATION_CAP}, got {max_size}")
    return [d for n in range(max_size + 1) for d in labeled_posets(n)]


def random_candidates(count: int, sizes: tuple[int, int], seed: int) -> list[tuple[int, ...]]:
    """``count`` distinct seeded random posets with sizes in ``sizes`` (inclusive)."""
    lo, hi = sizes
    if not 1 <= lo <= hi:
        raise ValueError(f"bad size range {lo}-{hi}")
    rng = random.Random(seed)
    found: dict[tuple[int, ...], None] = {}
    attempts = 0
    while len(found) < count:
        attempts += 1
        if attempts > 50 * count + 1000:
            raise SizeLimitExceeded(f"could not draw {count} distinct posets of size {lo}-{hi}")
        found.setdefault(random_poset(rng, rng.randint(lo, hi)))
    return list(found)
