"""Equal-rank closed subsystems and isotropy weight sets.

A closed subsystem S of a root system R is negation-closed and satisfies
alpha, beta in S, alpha+beta in R  =>  alpha+beta in S. It models the root
system of an equal-rank subalgebra h (plus a central torus of dimension
torus_corank). The isotropy weights of the pair are R \\ S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import WEYL_RANK_CAP, weyl_group, highest_root, components
from .linalg import Vector, dot, lex_positive, rank_of, vadd, vneg, vsub
from .rootcore import RootsplitError, RootSystem, positive_roots


class NotClosed(RootsplitError):
    """The given subset is not closed under root addition in its parent."""


@dataclass(frozen=True)
class ClosedSubsystem:
    parent: RootSystem
    roots: tuple[Vector, ...]  # sorted
    torus_corank: int

    @property
    def rank(self) -> int:
        return rank_of(self.roots) if self.roots else 0


@dataclass(frozen=True)
class IsotropyWeights:
    """W = R(g) \\ R(h); weights of the complexified isotropy representation."""

    weights: tuple[Vector, ...]  # sorted
    dim_M: int
    quaternionic_n: Fraction


def is_closed(subset: Iterable[Vector], parent: RootSystem) -> bool:
    """Negation- and addition-closure of subset within parent."""
    s = frozenset(subset)
    if not s <= parent.root_set:
        raise ValueError("subset is not contained in the parent root system")
    for a in s:
        if vneg(a) not in s:
            return False
    for a, b in itertools.combinations(s, 2):
        c = vadd(a, b)
        if c in parent.root_set and c not in s:
            return False
    return True


def closed_subsystem(parent: RootSystem, roots: Iterable[Vector]) -> ClosedSubsystem:
    """Validated constructor; raises NotClosed."""
    rs = tuple(sorted(set(roots)))
    if not is_closed(rs, parent):
        raise NotClosed("subset is not a closed subsystem of the parent")
    corank = parent.rank - (rank_of(rs) if rs else 0)
    return ClosedSubsystem(parent, rs, corank)


def _forced_sums(pos: Sequence[Vector], parent: RootSystem):
    """For each pair of positive representatives, the positive representatives
    forced into the subsystem by closure (covering all sign combinations)."""
    index = {r: i for i, r in enumerate(pos)}
    forced: dict[tuple[int, int], tuple[int, ...]] = {}
    for i, j in itertools.combinations_with_replacement(range(len(pos)), 2):
        if i == j:
            continue
        hits = set()
        for s in (vadd(pos[i], pos[j]), vsub(pos[i], pos[j])):
            if s in parent.root_set:
                rep = s if lex_positive(s) else vneg(s)
                hits.add(index[rep])
        if hits:
            forced[(i, j)] = tuple(sorted(hits))
    return forced


def enumerate_closed_subsystems(
    parent: RootSystem, dedup: bool = True
) -> list[ClosedSubsystem]:
    """All closed subsystems of parent (including the empty set and parent
    itself), up to Weyl equivalence when dedup is set.

    Backtracking over positive-root in/out decisions with closure
    propagation; a sum of two admitted roots that is a root must be
    admitted, which prunes the subset lattice hard.
    """
    if dedup and parent.rank > WEYL_RANK_CAP:
        raise ValueError(
            f"Weyl dedup of subsystems is capped at rank {WEYL_RANK_CAP}"
        )
    pos = positive_roots(parent)
    m = len(pos)
    forced = _forced_sums(pos, parent)
    results: list[frozenset[int]] = []
    state = [0] * m  # 0 undecided, 1 in, -1 out

    def propagate(queue: list[int], trail: list[int]) -> bool:
        while queue:
            k = queue.pop()
            if state[k] == 1:
                continue
            if state[k] == -1:
                return False
            state[k] = 1
            trail.append(k)
            for j in range(m):
                if state[j] == 1 and j != k:
                    key = (min(j, k), max(j, k))
                    queue.extend(forced.get(key, ()))
        return True

    def undo(trail: list[int]) -> None:
        for k in trail:
            state[k] = 0

    def dfs(idx: int) -> None:
        while idx < m and state[idx] != 0:
            idx += 1
        if idx == m:
            results.append(frozenset(i for i in range(m) if state[i] == 1))
            return
        # branch: idx out
        state[idx] = -1
        dfs(idx + 1)
        state[idx] = 0
        # branch: idx in (propagate closure)
        trail: list[int] = []
        queue = [idx]
        for j in range(m):
            if state[j] == 1:
                key = (min(j, idx), max(j, idx))
                queue.extend(forced.get(key, ()))
        if propagate(queue, trail):
            dfs(idx + 1)
        undo(trail)

    dfs(0)

    if dedup:
        results = _weyl_dedup(parent, pos, results)

    subs = []
    for idxset in results:
        roots = []
        for i in idxset:
            roots.append(pos[i])
            roots.append(vneg(pos[i]))
        subs.append(closed_subsystem(parent, roots))
    subs.sort(key=lambda s: (len(s.roots), s.roots))
    return subs


def _weyl_dedup(parent, pos, index_sets):
    w = weyl_group(parent)
    root_index = {r: i for i, r in enumerate(w.roots)}
    pos_global = [root_index[p] for p in pos]
    neg_of = {root_index[p]: root_index[vneg(p)] for p in pos}

    canon_seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for idxset in index_sets:
        g = set()
        for i in idxset:
            g.add(pos_global[i])
            g.add(neg_of[pos_global[i]])
        best = None
        for perm in w.elements:
            img = tuple(sorted(perm[i] for i in g))
            if best is None or img < best:
                best = img
        if best not in canon_seen:
            canon_seen[best] = tuple(sorted(g))
    back = {i: r for r, i in root_index.items()}
    out = []
    pos_index = {p: i for i, p in enumerate(pos)}
    for canonical in canon_seen.values():
        idxs = set()
        for gi in canonical:
            r = back[gi]
            rep = r if lex_positive(r) else vneg(r)
            idxs.add(pos_index[rep])
        out.append(frozenset(idxs))
    return out


def brute_force_closed_subsystems(parent: RootSystem) -> list[tuple[Vector, ...]]:
    """Exhaustive oracle: filter is_closed over all negation-closed subsets.

    Only usable for small systems (2^#positive-roots candidates); retained
    as an independent check on the backtracking enumerator.
    """
    pos = positive_roots(parent)
    out = []
    for mask in range(1 << len(pos)):
        subset = []
        for i, p in enumerate(pos):
            if mask >> i & 1:
                subset.append(p)
                subset.append(vneg(p))
        if is_closed(subset, parent):
            out.append(tuple(sorted(subset)))
    out.sort(key=lambda s: (len(s), s))
    return out


def isotropy_weights(parent: RootSystem, h: ClosedSubsystem) -> IsotropyWeights:
    """The weight set W = R(g) \\ R(h) with derived dimensions."""
    if h.parent is not parent and h.parent != parent:
        raise ValueError("subsystem does not belong to this parent")
    weights = tuple(sorted(parent.root_set - set(h.roots)))
    return IsotropyWeights(weights, len(weights), Fraction(len(weights), 4))


def weights_from_set(weights: Iterable[Vector]) -> IsotropyWeights:
    """IsotropyWeights from a raw negation-closed weight set (for transformed
    or externally supplied inputs)."""
    ws = tuple(sorted(set(weights)))
    return IsotropyWeights(ws, len(ws), Fraction(len(ws), 4))


def is_symmetric_pair(w: IsotropyWeights) -> bool:
    """Weight-level symmetry criterion: no two weights sum to a weight."""
    ws = set(w.weights)
    return not any(vadd(a, b) in ws for a, b in itertools.combinations(ws, 2))


def wolf_subsystem(parent: RootSystem) -> ClosedSubsystem:
    """The subsystem {+-theta} plus everything orthogonal to the highest
    root theta; the root datum of the Wolf pair G/N."""
    theta = highest_root(parent)  # raises for reducible parents
    roots = [r for r in parent.roots if r in (theta, vneg(theta)) or dot(r, theta) == 0]
    return closed_subsystem(parent, roots)


def is_wolf_pair(parent: RootSystem, h: ClosedSubsystem) -> bool:
    """True iff h is Weyl-equivalent to wolf_subsystem(parent)."""
    target = set(wolf_subsystem(parent).roots)
    hset = set(h.roots)
    if hset == target:
        return True
    if len(hset) != len(target):
        return False
    if parent.rank > WEYL_RANK_CAP:
        raise ValueError(f"is_wolf_pair needs the Weyl group (rank <= {WEYL_RANK_CAP})")
    w = weyl_group(parent)
    index = {r: i for i, r in enumerate(w.roots)}
    hidx = sorted(index[r] for r in hset)
    tidx = set(index[r] for r in target)
    for perm in w.elements:
        if all(perm[i] in tidx for i in hidx):
            return True
    return False
