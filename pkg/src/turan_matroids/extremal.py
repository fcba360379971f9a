"""Exhaustive extremal search: exact maximum basis counts under a
forbidden uniform minor, binary subset maximization, and truncation probes.

The generic backend walks all subsets of the r-subsets of [n] in fixed
lexicographic order, pruning branches that (a) already contain the
forbidden daisy (daisy presence is monotone under edge insertion) or
(b) cannot beat the incumbent count.  The exchange property is *not*
prefix-monotone, so it is tested only on completed families.  The search
is deterministic: the tree is split at a fixed depth into independent
subtrees whose reports merge in fixed order, so results and counters do
not depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bitsets import bit_indices, mask_of, popcount
from .canonical import canonical_bases, dedupe_isomorphic
from .fields import is_prime_power
from .bounds import largest_prime_power_leq
from .geometry import (
    bose_burton,
    projective_geometry,
    rank3_multiline,
    two_disjoint_lines,
    uniform,
)
from .hypergraphs import daisy_completed_by_edge
from .matroid import (
    MAX_GROUND_SET,
    Matroid,
    MatroidError,
    direct_sum,
    parallel_blowup,
    validate_exchange,
)
from .minors import has_uniform_minor, uniform_minor_oracle

ENV_MAX_NODES = "TURAN_MATROID_MAX_NODES"
DEFAULT_MAX_NODES = 20_000_000


@dataclass(frozen=True)
class SearchOptions:
    max_nodes: int | None = None
    workers: int = 1
    witness_cap: int = 16
    split_depth: int = 4
    seed_lower_bound: bool = True
    rank3_point_cap: int = 7

    def node_budget(self) -> int:
        if self.max_nodes is not None:
            return self.max_nodes
        env = os.environ.get(ENV_MAX_NODES)
        return int(env) if env else DEFAULT_MAX_NODES


@dataclass(frozen=True)
class SearchReport:
    n: int
    r: int
    s: int
    t: int
    max_bases: int
    witnesses: tuple
    nodes_explored: int
    pruned_daisy: int
    pruned_bound: int
    exhaustive: bool
    bose_burton_attains: bool | None = None


def _loops_matroid(k: int) -> Matroid:
    return Matroid.from_bases(k, [0], validate=False)


def _with_loops(M: Matroid, total: int) -> Matroid:
    if M.n == total:
        return M
    return direct_sum(M, _loops_matroid(total - M.n))


def _balanced_parts(n: int, parts: int):
    base, extra = divmod(n, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def _candidate_constructions(n: int, r: int, s: int, t: int):
    """Catalog of plausible extremal constructions at these parameters."""
    out = []
    if r == 0 or n < r:
        return out
    free = uniform(r, r)
    if s == 1:
        # r parallel classes of size at most t-1, leftovers become loops
        sizes = [1] * r
        budget = n - r
        for i in range(r):
            grow = min(t - 2, budget)
            sizes[i] += grow
            budget -= grow
        out.append(_with_loops(parallel_blowup(free, sizes), n))
    if s == 2:
        out.append(parallel_blowup(free, _balanced_parts(n, r)))
        if t >= 4:
            q = largest_prime_power_leq(t - 2)
            points = (q**r - 1) // (q - 1)
            if points <= n:
                pg = projective_geometry(r, q)
                out.append(parallel_blowup(pg, _balanced_parts(n, points)))
    if s == 3 and t == 4:
        pieces = []
        if r % 2 == 0:
            sizes = _balanced_parts(n, r // 2)
            pieces = [uniform(2, sz) for sz in sizes]
        else:
            rank1 = max(1, round(n / r))
            rest = n - rank1
            if r > 1 and rest >= r - 1:
                sizes = _balanced_parts(rest, (r - 1) // 2)
                pieces = [uniform(1, rank1)] + [uniform(2, sz) for sz in sizes]
            elif r == 1:
                pieces = [uniform(1, n)]
        if pieces:
            M = pieces[0]
            for piece in pieces[1:]:
                M = direct_sum(M, piece)
            out.append(M)
    if s == 3 and r == 3 and t >= 5:
        m = (t - 1) // 2
        if m >= 1 and n >= 2 * m:
            if m == 1:
                pass
            elif t % 2:  # forbid U(3, 2m+1): m balanced long lines
                sizes = _balanced_parts(n, m)
                if all(sz >= 3 for sz in sizes):
                    out.append(rank3_multiline(sizes, 0))
            if t == 5 and n >= 4:
                out.append(two_disjoint_lines(n // 2, n - n // 2))
    return out


def best_known_construction(n: int, r: int, s: int, t: int):
    """Best verified minor-free construction from the catalog, or None."""
    best = None
    for cand in _candidate_constructions(n, r, s, t):
        if cand.n != n or cand.r != r:
            continue
        if has_uniform_minor(cand, s, t)[0]:
            continue
        if best is None or cand.basis_count > best.basis_count:
            best = cand
    return best


def _subtree_search(args):
    """DFS one fixed prefix of include/exclude decisions; returns
    (best, witness_families, nodes, pruned_daisy, pruned_bound, exhausted)."""
    edges, n, r, s, t, prefix_bits, depth, threshold, budget, cap = args
    m = len(edges)
    nodes = 0
    pruned_daisy = 0
    pruned_bound = 0
    exhausted = False
    chosen = []
    chosen_set = set()
    for i in range(depth):
        if prefix_bits >> i & 1:
            e = edges[i]
            chosen.append(e)
            chosen_set.add(e)
            if daisy_completed_by_edge(chosen_set, r, s, t, e):
                return (threshold, [], 1, 1, 0, False)
    best = threshold
    witnesses = []

    def leaf():
        nonlocal best, witnesses
        if not chosen:
            return
        count = len(chosen)
        if count < best:
            return
        if not validate_exchange(n, chosen):
            return
        if count > best:
            best = count
            witnesses = []
        if len(witnesses) < cap:
            witnesses.append(tuple(sorted(chosen)))

    def dfs(idx):
        nonlocal nodes, pruned_daisy, pruned_bound, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if idx == m:
            leaf()
            return
        if len(chosen) + (m - idx) < best:
            pruned_bound += 1
            return
        e = edges[idx]
        chosen.append(e)
        chosen_set.add(e)
        if daisy_completed_by_edge(chosen_set, r, s, t, e):
            pruned_daisy += 1
        else:
            dfs(idx + 1)
        chosen.pop()
        chosen_set.discard(e)
        dfs(idx + 1)

    dfs(depth)
    return (best, witnesses, nodes, pruned_daisy, pruned_bound, exhausted)


def search_ex(n: int, r: int, s: int, t: int, opts: SearchOptions | None = None) -> SearchReport:
    """Exact max basis count over labeled rank-r matroids on [n] with no
    U(s, t)-minor, with canonical witnesses.

    A catalog construction seeds the incumbent when available (it is itself
    a valid candidate, so ties with it are still collected).  If the node
    budget runs out the report is partial and exhaustive=False.
    """
    opts = opts or SearchOptions()
    if not (1 <= s <= t):
        raise MatroidError("need 1 <= s <= t")
    if not (0 < r <= n):
        raise MatroidError("need 0 < r <= n")
    if n > MAX_GROUND_SET:
        raise MatroidError("ground set too large")
    edges = [mask_of(c) for c in combinations(range(n), r)]
    m = len(edges)
    seed = best_known_construction(n, r, s, t) if opts.seed_lower_bound else None
    threshold = seed.basis_count if seed is not None else 0
    if s > r:
        # no rank-s minor exists; the unrestricted maximum is the uniform matroid
        M = uniform(r, n)
        return SearchReport(n, r, s, t, m, (canonical_of(M),), 1, 0, 0, True)

    depth = min(opts.split_depth, m)
    budget = opts.node_budget()
    share = max(1, budget // (1 << depth))
    tasks = [
        (edges, n, r, s, t, prefix, depth, threshold, share, opts.witness_cap)
        for prefix in range(1 << depth)
    ]
    if opts.workers > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            results = list(pool.map(_subtree_search, tasks))
    else:
        results = [_subtree_search(task) for task in tasks]

    max_bases = max(res[0] for res in results)
    nodes = sum(res[2] for res in results)
    pruned_daisy = sum(res[3] for res in results)
    pruned_bound = sum(res[4] for res in results)
    exhaustive = not any(res[5] for res in results)
    families = []
    for res in results:
        families.extend(fam for fam in res[1] if len(fam) == max_bases)
    canon = dedupe_isomorphic(n, families, cap=opts.witness_cap)
    witnesses = tuple(Matroid.from_bases(n, c, validate=False) for c in canon)
    if not witnesses and seed is not None and seed.basis_count == max_bases:
        witnesses = (canonical_of(seed),)
    return SearchReport(
        n, r, s, t, max_bases, witnesses, nodes, pruned_daisy, pruned_bound, exhaustive
    )


def canonical_of(M: Matroid) -> Matroid:
    return Matroid.from_bases(M.n, canonical_bases(M.n, M.bases), validate=False)


def exhaustive_oracle_max_bases(n: int, r: int, s: int, t: int):
    """Plain brute force over every nonempty family of r-subsets of [n]:
    keep the exchange-valid ones without a U(s, t)-minor (checked by the
    rank-arithmetic oracle) and return (max count, maximizing families).

    Cost 2^C(n, r); this is the reference the optimized search is held to.
    """
    edges = [mask_of(c) for c in combinations(range(n), r)]
    m = len(edges)
    if m > 20:
        raise MatroidError(f"oracle budget exceeded: 2^{m} families")
    best = 0
    champions = []
    for pick in range(1, 1 << m):
        family = [edges[i] for i in range(m) if pick >> i & 1]
        if len(family) < best:
            continue
        if not validate_exchange(n, family):
            continue
        M = Matroid.from_bases(n, family, validate=False)
        if uniform_minor_oracle(M, s, t):
            continue
        if len(family) > best:
            best = len(family)
            champions = []
        champions.append(M)
    return best, champions


def search_ex_rank3(n: int, s: int, t: int, opts: SearchOptions | None = None) -> SearchReport:
    """Rank-3 geometric backend for the extremal search.

    Every rank-3 matroid is a parallel blow-up of a simple one plus loops,
    and loops never help, so the search enumerates simple rank-3 matroids
    (as families of pairwise almost-disjoint long lines on p labeled
    points), rejects ones containing the forbidden structure, and then
    maximizes the blow-up count exactly over all multiplicity vectors
    summing to n.  Forbidden-structure checks run on the simple matroid:
    a U(3,t)-minor of a rank-3 matroid is the same thing as a U(3,t)-
    restriction, and U(2,t)-minors are insensitive to parallel copies.

    Exhaustive only while opts.rank3_point_cap reaches n; line families on
    more simple points than the cap are not visited and the report is
    marked partial, since their count grows explosively.
    """
    opts = opts or SearchOptions()
    if s not in (2, 3):
        raise MatroidError("rank-3 backend supports forbidding U(2,t) or U(3,t)")
    if t < s:
        raise MatroidError("need t >= s")
    if s == 3 and t == 3:
        raise MatroidError("every rank-3 matroid has a U(3,3)-minor")
    if n < 3:
        raise MatroidError("rank 3 needs n >= 3")
    from .geometry import rank3_from_lines
    from .minors import has_uniform_restriction

    budget = opts.node_budget()
    nodes = 0
    pruned_forbidden = 0
    best = 0
    champions = []
    exhausted = False
    p_cap = min(n, opts.rank3_point_cap)

    def blowup_optimum(simple: Matroid):
        """Exact max of the blow-up basis count over multiplicities >= 1
        summing to n, with one optimal vector."""
        p = simple.n
        base_elems = [list(bit_indices(b)) for b in simple.bases]
        best_val, best_mult = -1, None

        def rec(i, left, mult):
            nonlocal best_val, best_mult
            if i == p - 1:
                full = mult + [left]
                val = 0
                for elems in base_elems:
                    prod = 1
                    for e in elems:
                        prod *= full[e]
                    val += prod
                if val > best_val:
                    best_val, best_mult = val, list(full)
                return
            for m_i in range(1, left - (p - 1 - i) + 1):
                rec(i + 1, left - m_i, mult + [m_i])

        rec(0, n, [])
        return best_val, best_mult

    # freeness is monotone under adding lines only for s = 3 (lines destroy
    # independent triples); for s = 2 a new long line can itself be the
    # forbidden line restriction, so it is rechecked every time
    free_monotone = s == 3

    for p in range(3, p_cap + 1):
        candidates = []
        for k in range(3, p + 1):
            for combo in combinations(range(p), k):
                candidates.append(mask_of(combo))
        candidates.sort()

        def process(family, parent_free):
            """(alive, free): alive=False prunes extensions (rank collapse
            is permanent under adding lines)."""
            nonlocal nodes, best, champions, pruned_forbidden, exhausted
            nodes += 1
            if nodes > budget:
                exhausted = True
                return False, False
            try:
                simple = rank3_from_lines(p, family)
            except MatroidError:
                return False, False  # all triples collinear: rank below 3
            if parent_free and free_monotone:
                free = True
            elif s == 3:
                free = not has_uniform_restriction(simple, 3, t)[0]
            else:
                free = not has_uniform_minor(simple, 2, t)[0]
            if not free:
                pruned_forbidden += 1
                return True, False
            val, mult = blowup_optimum(simple)
            if val > best:
                best = val
                champions = []
            if val == best and len(champions) < opts.witness_cap:
                champions.append(parallel_blowup(simple, mult).bases)
            return True, True

        def dfs(start, family, parent_free):
            alive, free = process(tuple(family), parent_free)
            if not alive or exhausted:
                return
            for i in range(start, len(candidates)):
                ln = candidates[i]
                if all(popcount(ln & other) <= 1 for other in family):
                    family.append(ln)
                    dfs(i + 1, family, free)
                    family.pop()

        dfs(0, [], False)

    exhaustive = (p_cap >= n) and not exhausted
    canon = dedupe_isomorphic(n, champions, cap=opts.witness_cap)
    witnesses = tuple(Matroid.from_bases(n, c, validate=False) for c in canon)
    return SearchReport(
        n, 3, s, t, best, witnesses, nodes, pruned_forbidden, 0, exhaustive
    )


def gf2_rank(vectors) -> int:
    """Rank over GF(2) of int-encoded vectors (greedy xor basis)."""
    pivots = []
    for v in vectors:
        for p in pivots:
            if v ^ p < v:
                v ^= p
        if v:
            pivots.append(v)
            pivots.sort(reverse=True)
    return len(pivots)


def search_binary_max_bases(r: int, size: int, witness_cap: int = 16, workers: int = 1) -> SearchReport:
    """Exhaustive maximum of the basis count over all ``size``-subsets of the
    nonzero vectors of GF(2)^r.

    Bases are r-subsets of full GF(2) rank, counted against a precomputed
    rank table of all r-subsets.  Also reports whether a flat-complement
    (Bose-Burton) subset attains the maximum when ``size`` matches one.
    """
    import numpy as np

    if r > 4:
        raise MatroidError("exhaustive binary search supported for r <= 4")
    vectors = list(range(1, 1 << r))
    if not 1 <= size <= len(vectors):
        raise MatroidError("size out of range")
    vec_pos = {v: i for i, v in enumerate(vectors)}
    rsub_masks = []
    rsub_is_basis = []
    rsub_combos = []
    for combo in combinations(vectors, r):
        rsub_masks.append(mask_of(vec_pos[v] for v in combo))
        rsub_is_basis.append(gf2_rank(combo) == r)
        rsub_combos.append(combo)
    rsubs = np.array(rsub_masks, dtype=np.int64)
    basis_flags = np.array(rsub_is_basis)
    subsets = list(combinations(range(len(vectors)), size))
    subset_masks = np.array([mask_of(c) for c in subsets], dtype=np.int64)

    def count_chunk(chunk):
        contained = (chunk[:, None] & rsubs[None, :]) == rsubs[None, :]
        return contained @ basis_flags.astype(np.int64)

    if workers > 1 and len(subsets) > workers:
        chunks = np.array_split(subset_masks, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = np.concatenate(list(pool.map(count_chunk, chunks)))
    else:
        counts = count_chunk(subset_masks)
    best = int(counts.max())
    examined = len(subsets)
    champion_sets = []
    scan_cap = max(64, 8 * witness_cap)  # cap applies to canonical forms, so overscan
    for idx in np.flatnonzero(counts == best):
        champion_sets.append(tuple(vectors[i] for i in subsets[idx]))
        if len(champion_sets) >= scan_cap:
            break
    is_basis = dict(zip(rsub_combos, rsub_is_basis))

    champion_families = []
    for subset in champion_sets:
        pos = {v: i for i, v in enumerate(subset)}
        champion_families.append(
            tuple(
                mask_of(pos[v] for v in combo)
                for combo in combinations(subset, r)
                if is_basis[combo]
            )
        )
    witnesses = [
        Matroid.from_bases(size, key, validate=False)
        for key in dedupe_isomorphic(size, champion_families, cap=witness_cap)
    ]

    bb_attains = None
    for c in range(1, r):
        if size == (1 << r) - (1 << (r - c)):
            bb = bose_burton(r, 2, c)
            bb_attains = bb.basis_count == best
            break
    return SearchReport(
        n=size,
        r=r,
        s=2,
        t=4,
        max_bases=best,
        witnesses=tuple(witnesses),
        nodes_explored=examined,
        pruned_daisy=0,
        pruned_bound=0,
        exhaustive=True,
        bose_burton_attains=bb_attains,
    )


def truncation_probe(r: int, m: int, q: int, s: int) -> int:
    """Largest t such that the m-step truncation of the rank-(r+m)
    projective geometry over GF(q) has a U(s, t)-minor."""
    from .matroid import truncate

    if not is_prime_power(q):
        raise MatroidError(f"{q} is not a prime power")
    pg = projective_geometry(r + m, q)
    M = truncate(pg, m) if m else pg
    for t in range(M.n, s - 1, -1):
        if has_uniform_minor(M, s, t)[0]:
            return t
    raise MatroidError("no uniform minor at all; invalid parameters")


def density_rows(r: int, s: int, t: int, n_values, opts: SearchOptions | None = None):
    """Exact search per n; yields dicts with the basis-density rational."""
    from fractions import Fraction

    rows = []
    for n in n_values:
        if n < r:
            continue
        report = search_ex(n, r, s, t, opts)
        rows.append(
            {
                "n": n,
                "r": r,
                "s": s,
                "t": t,
                "max_bases": report.max_bases,
                "binomial": comb(n, r),
                "density": Fraction(report.max_bases, comb(n, r)),
                "exhaustive": report.exhaustive,
            }
        )
    return rows
