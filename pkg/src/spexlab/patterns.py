"""Non-induced subgraph containment, forbidden families, exact chromatic numbers.

Containment is decided exactly by decomposing the host graph: a host that is a
join splits into co-components (the pattern is partitioned among them), a
disconnected host packs pattern components into host components, and the
remaining connected, co-connected cores run a backtracking matcher over
twin-collapsed vertex classes with forward checking. Results are cached by
canonical form, so repeated queries against structured hosts stay cheap.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .canon import canonical_form
from .graphs import Graph, _iter_bits, disjoint_union, induced_subgraph

__all__ = [
    "ForbiddenFamily",
    "contains_subgraph",
    "is_free",
    "chromatic_number",
    "family_chi",
]

_cform = lru_cache(maxsize=4096)(canonical_form)

_cache: dict[tuple, bool] = {}
_CACHE_CAP = 200_000
# above this order, cache hosts by exact adjacency; canonical labeling of
# large structured graphs costs more than the isomorphism dedup is worth
_CANON_KEY_LIMIT = 64


# -- containment -----------------------------------------------------------

def contains_subgraph(host: Graph, pattern: Graph) -> bool:
    """Whether host has a (not necessarily induced) subgraph isomorphic to pattern."""
    return _contains(host, pattern)


def is_free(g: Graph, family: "ForbiddenFamily | Iterable[Graph]") -> bool:
    """Whether g contains no member of the family."""
    members = family.members if isinstance(family, ForbiddenFamily) else tuple(family)
    for m in sorted(members, key=lambda m: (m.n, m.edge_count)):
        if _contains(g, m):
            return False
    return True


def _contains(host: Graph, pattern: Graph) -> bool:
    if pattern.n == 0:
        return True
    if pattern.n > host.n or pattern.edge_count > host.edge_count:
        return False
    if pattern.edge_count == 0:
        return True
    hd = host.degree_sequence()
    pd = pattern.degree_sequence()
    if any(hd[i] < pd[i] for i in range(pattern.n)):
        return False

    hkey = _cform(host) if host.n <= _CANON_KEY_LIMIT else host
    key = (hkey, _cform(pattern))
    hit = _cache.get(key)
    if hit is not None:
        return hit

    cocomps = _complement_components(host)
    if len(cocomps) > 1:
        res = _join_split(host, cocomps, pattern)
    else:
        comps = host.components()
        if len(comps) > 1:
            res = _pack_components(host, comps, pattern)
        else:
            res = _core_match(host, pattern)

    if len(_cache) >= _CACHE_CAP:
        _cache.clear()
    _cache[key] = res
    return res


def _complement_components(g: Graph) -> list[int]:
    full = (1 << g.n) - 1
    comp_adj = tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj))
    return Graph._from_adj(g.n, comp_adj).components()


# -- host is a join: partition the pattern among the co-components ----------

def _join_split(host: Graph, cocomps: list[int], pattern: Graph) -> bool:
    from .graphs import complete_multipartite

    parts = [induced_subgraph(host, mask) for mask in cocomps]
    sizes = [p.n for p in parts]
    edgy = [p.edge_count > 0 for p in parts]
    maxdeg = [max((p.degree(v) for v in range(p.n)), default=0) for p in parts]
    ecount = [p.edge_count for p in parts]
    s = len(parts)
    # isomorphic parts are interchangeable bins; used for a symmetry break below
    group_of = {}
    groups: list[int] = []
    for i, p in enumerate(parts):
        groups.append(group_of.setdefault(_cform(p), i))

    m = pattern.n
    order = sorted(range(m), key=lambda v: -pattern.degree(v))
    padj = pattern.adj

    # pattern co-components: pieces of distinct co-components sharing a host
    # part are pairwise fully adjacent, so their sizes must form a complete
    # multipartite graph the part can host; that is the strongest cheap prune
    pcocomps = _complement_components(pattern)
    comp_of = [0] * m
    for ci, mask in enumerate(pcocomps):
        for v in _iter_bits(mask):
            comp_of[v] = ci
    ncomp = len(pcocomps)

    members = [0] * s
    counts = [0] * s
    inner_edges = [0] * s
    deg_in_class = [0] * m
    piece = [[0] * ncomp for _ in range(s)]
    free_cap = sum(sizes)
    verify_memo: dict[tuple[int, bytes], bool] = {}
    profile_memo: dict[tuple[int, tuple[int, ...]], bool] = {}

    def profile_ok(i: int, cls_piece: list[int]) -> bool:
        prof = tuple(sorted(x for x in cls_piece if x))
        if len(prof) <= 1:
            return True
        key = (groups[i], prof)
        hit = profile_memo.get(key)
        if hit is None:
            hit = _contains(parts[i], complete_multipartite(prof))
            profile_memo[key] = hit
        return hit

    def verify(i: int) -> bool:
        if inner_edges[i] == 0:
            return True
        sub = induced_subgraph(pattern, members[i])
        key = (groups[i], _cform(sub))
        hit = verify_memo.get(key)
        if hit is None:
            hit = _contains(parts[i], sub)
            verify_memo[key] = hit
        return hit

    def place(idx: int, free: int) -> bool:
        if idx == m:
            return all(verify(i) for i in range(s) if counts[i])
        if free < m - idx:
            return False
        v = order[idx]
        row = padj[v]
        cv = comp_of[v]
        for i in range(s):
            if counts[i] >= sizes[i]:
                continue
            if counts[i] == 0:
                # identical empty bins: only the first of each group may open
                g0 = groups[i]
                if any(groups[j] == g0 and counts[j] == 0 for j in range(i)):
                    continue
            inside = row & members[i]
            newdeg = inside.bit_count()
            if newdeg:
                if not edgy[i] or newdeg > maxdeg[i]:
                    continue
                if inner_edges[i] + newdeg > ecount[i]:
                    continue
                if any(deg_in_class[w] + 1 > maxdeg[i] for w in _iter_bits(inside)):
                    continue
            piece[i][cv] += 1
            if not profile_ok(i, piece[i]):
                piece[i][cv] -= 1
                continue
            members[i] |= 1 << v
            counts[i] += 1
            inner_edges[i] += newdeg
            deg_in_class[v] = newdeg
            for w in _iter_bits(inside):
                deg_in_class[w] += 1
            if place(idx + 1, free - 1):
                return True
            members[i] ^= 1 << v
            counts[i] -= 1
            inner_edges[i] -= newdeg
            piece[i][cv] -= 1
            for w in _iter_bits(inside):
                deg_in_class[w] -= 1
        return False

    return place(0, free_cap)


# -- host disconnected: pack pattern components into host components --------

def _pack_components(host: Graph, comps: list[int], pattern: Graph) -> bool:
    types: dict[bytes, list] = {}
    for mask in comps:
        sub = induced_subgraph(host, mask)
        entry = types.setdefault(_cform(sub), [sub, 0])
        entry[1] += 1
    htypes = sorted(types.values(), key=lambda e: (-e[0].n, -e[0].edge_count))
    hgraphs = [e[0] for e in htypes]
    hcounts = tuple(e[1] for e in htypes)

    mlist = [induced_subgraph(pattern, mask) for mask in pattern.components()]
    mkeys = [_cform(c) for c in mlist]
    idx_order = sorted(range(len(mlist)),
                       key=lambda i: (-mlist[i].n, -mlist[i].edge_count, mkeys[i]))
    mlist = [mlist[i] for i in idx_order]
    mkeys = [mkeys[i] for i in idx_order]
    k = len(mlist)
    full = (1 << k) - 1

    memo: dict[tuple, bool] = {}

    def solve(mask: int, counts: tuple[int, ...]) -> bool:
        if mask == 0:
            return True
        key = (tuple(sorted(mkeys[i] for i in _iter_bits(mask))), counts)
        hit = memo.get(key)
        if hit is not None:
            return hit
        first = (mask & -mask).bit_length() - 1  # largest remaining component
        rest = mask ^ (1 << first)
        res = False
        for t, hg in enumerate(hgraphs):
            if counts[t] == 0 or hg.n < mlist[first].n:
                continue
            budget = hg.n - mlist[first].n
            sub = rest
            while True:  # all submasks of rest, including empty
                chosen = rest ^ sub
                if sum(mlist[i].n for i in _iter_bits(chosen)) <= budget:
                    group = mlist[first]
                    for i in _iter_bits(chosen):
                        group = disjoint_union(group, mlist[i])
                    if _contains(hg, group):
                        nxt = counts[:t] + (counts[t] - 1,) + counts[t + 1:]
                        if solve(rest ^ chosen, nxt):
                            res = True
                            break
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            if res:
                break
        memo[key] = res
        return res

    return solve(full, hcounts)


# -- connected, co-connected core: folded backtracking ----------------------

def _fold(host: Graph) -> tuple[list[int], list[bool], list[int], list[int]]:
    """Collapse twin classes of the host.

    Returns (sizes, clique flags, class adjacency bitmask rows, per-vertex
    degree of a class member). Vertices with identical open neighborhoods
    form independent classes; remaining vertices with identical closed
    neighborhoods form clique classes. Between two classes the host is then
    complete or empty, so a member is as good as any other.
    """
    by_open: dict[int, list[int]] = {}
    for v in range(host.n):
        by_open.setdefault(host.adj[v], []).append(v)
    classes = []
    leftovers = []
    for verts in by_open.values():
        if len(verts) > 1:
            classes.append((verts, False))
        else:
            leftovers.append(verts[0])
    by_closed: dict[int, list[int]] = {}
    for v in leftovers:
        by_closed.setdefault(host.adj[v] | (1 << v), []).append(v)
    for verts in by_closed.values():
        classes.append((verts, len(verts) > 1))

    reps = [verts[0] for verts, _ in classes]
    sizes = [len(verts) for verts, _ in classes]
    cliques = [flag for _, flag in classes]
    class_of = {}
    for c, (verts, _) in enumerate(classes):
        for v in verts:
            class_of[v] = c
    rows = [0] * len(classes)
    for c, rep in enumerate(reps):
        row = 0
        for w in _iter_bits(host.adj[rep]):
            d = class_of[w]
            if d != c:
                row |= 1 << d
        rows[c] = row
    vdeg = [host.degree(rep) for rep in reps]
    return sizes, cliques, rows, vdeg


def _pattern_order(pattern: Graph) -> list[int]:
    """Static order: big components first, each explored most-connected-first."""
    order: list[int] = []
    placed = 0
    comps = sorted(pattern.components(),
                   key=lambda c: (-c.bit_count(),
                                  -sum(pattern.degree(v) for v in _iter_bits(c))))
    for comp in comps:
        remaining = set(_iter_bits(comp))
        while remaining:
            best = max(remaining,
                       key=lambda v: ((pattern.adj[v] & placed).bit_count(),
                                      pattern.degree(v)))
            order.append(best)
            placed |= 1 << best
            remaining.remove(best)
    return order


def _core_match(host: Graph, pattern: Graph) -> bool:
    sizes, cliques, rows, vdeg = _fold(host)
    nclasses = len(sizes)
    # classes usable by two pattern-adjacent vertices at once
    self_ok = [rows[c] | (1 << c if cliques[c] else 0) for c in range(nclasses)]

    order = _pattern_order(pattern)
    m = pattern.n
    pos = [0] * m
    for i, v in enumerate(order):
        pos[v] = i

    init = []
    for v in range(m):
        dom = 0
        dv = pattern.degree(v)
        for c in range(nclasses):
            if vdeg[c] >= dv:
                dom |= 1 << c
        if dom == 0:
            return False
        init.append(dom)

    rem = list(sizes)
    domains = [init[v] for v in order]  # indexed by position in the order
    padj_pos = []
    for i, v in enumerate(order):
        later = [pos[w] for w in _iter_bits(pattern.adj[v]) if pos[w] > i]
        padj_pos.append(later)

    def walk(i: int) -> bool:
        if i == m:
            return True
        dom = domains[i]
        while dom:
            low = dom & -dom
            dom ^= low
            c = low.bit_length() - 1
            if rem[c] == 0:
                continue
            rem[c] -= 1
            saved = []
            ok = True
            for j in padj_pos[i]:
                nd = domains[j] & self_ok[c]
                if nd != domains[j]:
                    saved.append((j, domains[j]))
                    if nd == 0:
                        ok = False
                        domains[j] = nd
                        break
                    domains[j] = nd
            if ok and walk(i + 1):
                return True
            for j, old in saved:
                domains[j] = old
            rem[c] += 1
        return False

    return walk(0)


# -- forbidden families ------------------------------------------------------

class ForbiddenFamily:
    """Nonempty collection of forbidden subgraphs, each with at least one edge."""

    __slots__ = ("members", "name", "_chi")

    def __init__(self, members: Iterable[Graph], name: str | None = None):
        members = tuple(members)
        if not members:
            raise ValueError("family needs at least one member")
        for i, g in enumerate(members):
            if g.n == 0 or g.edge_count == 0:
                raise ValueError(f"family member {i} has no edge")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_chi", None)

    def __setattr__(self, attr: str, value: object) -> None:
        raise AttributeError("ForbiddenFamily is immutable")

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def chi_min(self) -> int:
        """Smallest chromatic number over the members."""
        if self._chi is None:
            object.__setattr__(self, "_chi",
                               min(chromatic_number(g) for g in self.members))
        return self._chi

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"ForbiddenFamily({len(self.members)} members{tag})"


def family_chi(family: ForbiddenFamily | Iterable[Graph]) -> int:
    """Minimum chromatic number over the family's members."""
    if isinstance(family, ForbiddenFamily):
        return family.chi_min
    return ForbiddenFamily(tuple(family)).chi_min


# -- chromatic number --------------------------------------------------------

def chromatic_number(g: Graph) -> int:
    """Exact chromatic number, by branch and bound per component.

    Intended for graphs up to a few dozen vertices; beyond that the
    backtracking search can become impractical.
    """
    if g.n == 0:
        return 0
    return max(_chromatic_component(induced_subgraph(g, c)) for c in g.components())


def _chromatic_component(g: Graph) -> int:
    n = g.n
    if g.edge_count == 0:
        return 1
    two = _two_colorable(g)
    if two:
        return 2
    lb = max(3, _greedy_clique(g))
    ub, _ = _dsatur_greedy(g)
    for k in range(lb, ub):
        if _k_colorable(g, k):
            return k
    return ub


def _two_colorable(g: Graph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in _iter_bits(g.adj[v]):
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def _greedy_clique(g: Graph) -> int:
    best = 0
    starts = sorted(range(g.n), key=lambda v: -g.degree(v))[:4]
    for s in starts:
        clique = [s]
        cand = g.adj[s]
        while cand:
            v = max(_iter_bits(cand), key=lambda v: (g.adj[v] & cand).bit_count())
            clique.append(v)
            cand &= g.adj[v]
        best = max(best, len(clique))
    return best


def _dsatur_greedy(g: Graph) -> tuple[int, list[int]]:
    n = g.n
    color = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if color[u] == -1),
                key=lambda u: (len(neighbor_colors[u]), g.degree(u)))
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        color[v] = c
        for w in _iter_bits(g.adj[v]):
            neighbor_colors[w].add(c)
    return max(color) + 1, color


def _k_colorable(g: Graph, k: int) -> bool:
    n = g.n
    color = [-1] * n
    nbr_colors = [0] * n  # bitmask of colors seen among colored neighbors

    def pick() -> int:
        return max((u for u in range(n) if color[u] == -1),
                   key=lambda u: (nbr_colors[u].bit_count(), g.degree(u)))

    def walk(depth: int, used: int) -> bool:
        if depth == n:
            return True
        v = pick()
        avail = ~nbr_colors[v] & ((1 << min(k, used + 1)) - 1)
        while avail:
            low = avail & -avail
            avail ^= low
            c = low.bit_length() - 1
            color[v] = c
            touched = []
            for w in _iter_bits(g.adj[v]):
                if color[w] == -1 and not nbr_colors[w] >> c & 1:
                    nbr_colors[w] |= 1 << c
                    touched.append(w)
            if walk(depth + 1, max(used, c + 1)):
                return True
            color[v] = -1
            for w in touched:
                nbr_colors[w] &= ~(1 << c)
        return False

    return walk(0, 0)
