"""Matroids represented exactly by their basis families.

The ground set is {0, ..., n-1} with n <= 64, so every subset is a plain
int bitmask and subset operations are single machine-word operations.
Matroid values are immutable; every operation is a pure function returning
a new value, safe to call from concurrent workers.

Bases are stored sorted by bitmask value, which makes equality, hashing
and serialization canonical for a fixed labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .bitsets import bit_indices, mask_of, popcount, shift_down_above, subsets_of_size

MAX_GROUND_SET = 64


class MatroidError(ValueError):
    """Structurally invalid matroid data or an inapplicable operation."""


def validate_exchange(n: int, family) -> bool:
    """Basis-exchange predicate: equal sizes and (B1) for all ordered pairs."""
    return exchange_violation(n, family) is None


def exchange_violation(n: int, family):
    """First witness that ``family`` is not a basis family, or None.

    Returns ("size", B1, B2) on a cardinality mismatch, ("range", B, None)
    for a member not inside {0..n-1}, and ("exchange", B1, B2, x) when no
    y in B2-B1 repairs the removal of x from B1.  Scan order is fixed
    (sorted masks) so the reported witness is deterministic.
    """
    members = sorted(set(family))
    if not members:
        raise MatroidError("basis family must be nonempty")
    full = (1 << n) - 1 if n else 0
    r = popcount(members[0])
    for b in members:
        if b & ~full:
            return ("range", b, None)
        if popcount(b) != r:
            return ("size", members[0], b)
    family_set = set(members)
    for b1 in members:
        for b2 in members:
            if b1 == b2:
                continue
            for x in bit_indices(b1 & ~b2):
                removed = b1 & ~(1 << x)
                if not any(removed | (1 << y) in family_set for y in bit_indices(b2 & ~b1)):
                    return ("exchange", b1, b2, x)
    return None


@dataclass(frozen=True)
class Matroid:
    """Ground-set size, rank, and the sorted duplicate-free basis list."""

    n: int
    r: int
    bases: tuple

    @classmethod
    def from_bases(cls, n: int, bases, validate: bool = True) -> "Matroid":
        if not 0 <= n <= MAX_GROUND_SET:
            raise MatroidError(f"ground set size {n} outside 0..{MAX_GROUND_SET}")
        members = tuple(sorted(set(bases)))
        if not members:
            raise MatroidError("basis family must be nonempty")
        if validate:
            witness = exchange_violation(n, members)
            if witness is not None:
                raise MatroidError(f"not a basis family: {witness[0]} violation")
        return cls(n, popcount(members[0]), members)

    @property
    def basis_count(self) -> int:
        return len(self.bases)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1 if self.n else 0

    def is_basis(self, mask: int) -> bool:
        return mask in set(self.bases)

    def elements(self):
        return range(self.n)


def _check_subset(M: Matroid, X: int):
    if X & ~M.full_mask:
        raise MatroidError(f"subset {X:#x} has bits outside the ground set of size {M.n}")


def rank_of(M: Matroid, X: int) -> int:
    """Rank of X: largest part of X contained in a basis."""
    _check_subset(M, X)
    return max(popcount(X & b) for b in M.bases)


def is_independent(M: Matroid, X: int) -> bool:
    return rank_of(M, X) == popcount(X)


def closure(M: Matroid, X: int) -> int:
    """Maximal superset of X with the same rank."""
    _check_subset(M, X)
    rx = rank_of(M, X)
    out = X
    for e in range(M.n):
        bit = 1 << e
        if not X & bit and rank_of(M, X | bit) == rx:
            out |= bit
    return out


def is_loop(M: Matroid, e: int) -> bool:
    bit = 1 << e
    return all(not b & bit for b in M.bases)


def is_coloop(M: Matroid, e: int) -> bool:
    bit = 1 << e
    return all(b & bit for b in M.bases)


def loops_mask(M: Matroid) -> int:
    used = 0
    for b in M.bases:
        used |= b
    return M.full_mask & ~used


def delete(M: Matroid, e: int) -> Matroid:
    """Delete e; a coloop is contracted instead so the result stays a matroid."""
    if not 0 <= e < M.n:
        raise MatroidError(f"element {e} outside ground set")
    bit = 1 << e
    kept = [b for b in M.bases if not b & bit]
    if not kept:
        return contract(M, e)
    return Matroid.from_bases(M.n - 1, [shift_down_above(b, e) for b in kept], validate=False)


def contract(M: Matroid, e: int) -> Matroid:
    """Contract e; a loop is deleted instead."""
    if not 0 <= e < M.n:
        raise MatroidError(f"element {e} outside ground set")
    bit = 1 << e
    kept = [b & ~bit for b in M.bases if b & bit]
    if not kept:
        return delete(M, e)
    return Matroid.from_bases(M.n - 1, [shift_down_above(b, e) for b in kept], validate=False)


def restrict(M: Matroid, X: int) -> Matroid:
    """Restriction M|X: delete everything outside X (coloop rule applies)."""
    _check_subset(M, X)
    out = M
    for e in sorted(bit_indices(M.full_mask & ~X), reverse=True):
        out = delete(out, e)
    return out


def dual(M: Matroid) -> Matroid:
    full = M.full_mask
    return Matroid.from_bases(M.n, [full ^ b for b in M.bases], validate=False)


@dataclass(frozen=True)
class SimplificationMap:
    """How a matroid collapses to its simplification.

    ``classes`` are the parallel classes (masks over the original ground
    set) sorted by their representative, which is the smallest member.
    Element i of the simplified matroid corresponds to classes[i].
    """

    loops: int
    classes: tuple
    representatives: tuple

    def class_of(self, e: int) -> int:
        bit = 1 << e
        for c in self.classes:
            if c & bit:
                return c
        raise MatroidError(f"element {e} is a loop or out of range")

    @property
    def is_trivial(self) -> bool:
        return self.loops == 0 and all(popcount(c) == 1 for c in self.classes)


def parallel(M: Matroid, e: int, f: int) -> bool:
    """Non-loops are parallel when no basis contains both."""
    be, bf = 1 << e, 1 << f
    return not any(b & be and b & bf for b in M.bases)


def simplify(M: Matroid):
    """Return (simple matroid, SimplificationMap).

    Drops loops and keeps the smallest element of each parallel class; the
    rank is unchanged.
    """
    loops = loops_mask(M)
    unassigned = [e for e in range(M.n) if not loops & (1 << e)]
    classes = []
    while unassigned:
        rep = unassigned[0]
        cls = [rep] + [f for f in unassigned[1:] if parallel(M, rep, f)]
        classes.append(mask_of(cls))
        unassigned = [f for f in unassigned if f not in set(cls)]
    reps = tuple(min(bit_indices(c)) for c in classes)
    new_index = {rep: i for i, rep in enumerate(reps)}
    rep_of_elem = {}
    for c, rep in zip(classes, reps):
        for e in bit_indices(c):
            rep_of_elem[e] = rep
    seen = set()
    for b in M.bases:
        seen.add(mask_of(new_index[rep_of_elem[e]] for e in bit_indices(b)))
    simple = Matroid.from_bases(len(classes), sorted(seen), validate=False)
    return simple, SimplificationMap(loops, tuple(classes), reps)


def is_simple(M: Matroid) -> bool:
    if loops_mask(M):
        return False
    return all(not parallel(M, e, f) for e in range(M.n) for f in range(e + 1, M.n))


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    if M1.n + M2.n > MAX_GROUND_SET:
        raise MatroidError("direct sum exceeds the 64-element cap")
    bases = [b1 | (b2 << M1.n) for b1 in M1.bases for b2 in M2.bases]
    return Matroid.from_bases(M1.n + M2.n, bases, validate=False)


def truncate(M: Matroid, m: int) -> Matroid:
    """Lower the rank by m; new bases are the rank-(r-m) independent sets."""
    if not 0 <= m < M.r:
        raise MatroidError(f"truncation step {m} not in 0..{M.r - 1}")
    if m == 0:
        return M
    seen = set()
    for b in M.bases:
        seen.update(subsets_of_size(b, M.r - m))
    return Matroid.from_bases(M.n, sorted(seen), validate=False)


def circuits(M: Matroid):
    """All minimal dependent sets, sorted by (size, mask)."""
    found = []
    for k in range(1, M.r + 2):
        for combo in combinations(range(M.n), k):
            x = mask_of(combo)
            if any(c & x == c for c in found):
                continue
            if rank_of(M, x) < k:
                found.append(x)
    return sorted(found, key=lambda c: (popcount(c), c))


def circumference(M: Matroid) -> int:
    """Size of a largest circuit; a free matroid (n = r) has none."""
    if M.n == M.r:
        raise MatroidError("free matroid has no circuits")
    return max(popcount(c) for c in circuits(M))


def parallel_blowup(M: Matroid, mult) -> Matroid:
    """Replace element i by a class of mult[i] pairwise-parallel copies."""
    mult = list(mult)
    if len(mult) != M.n:
        raise MatroidError("need one multiplicity per element")
    if any(m < 1 for m in mult):
        raise MatroidError("multiplicities must be positive")
    if loops_mask(M):
        raise MatroidError("blow-up requires a loopless matroid")
    total = sum(mult)
    if total > MAX_GROUND_SET:
        raise MatroidError("blow-up exceeds the 64-element cap")
    starts = [0] * M.n
    acc = 0
    for i in range(M.n):
        starts[i] = acc
        acc += mult[i]
    bases = []
    for b in M.bases:
        elems = list(bit_indices(b))
        for choice in product(*[range(mult[i]) for i in elems]):
            bases.append(mask_of(starts[e] + c for e, c in zip(elems, choice)))
    return Matroid.from_bases(total, bases, validate=False)


def basis_density(M: Matroid) -> Fraction:
    """Exact edge density b(M) / C(n, r) of the basis hypergraph."""
    return Fraction(M.basis_count, comb(M.n, M.r))


def connected_components(M: Matroid):
    """Masks of the connected components (elements sharing a circuit are
    connected; loops and coloops are singleton components).  A matroid is
    the direct sum of its restrictions to these masks."""
    parent = list(range(M.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in circuits(M):
        elems = list(bit_indices(c))
        for e in elems[1:]:
            ra, rb = find(elems[0]), find(e)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for e in range(M.n):
        groups.setdefault(find(e), []).append(e)
    return sorted(mask_of(g) for g in groups.values())
