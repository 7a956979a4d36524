"""Canonical labeling by partition refinement plus individualization.

A graph is canonicalized one connected component at a time; components are
assembled in a deterministic order, so the result is isomorphism-invariant.
Inside a component the search refines the unit partition to an equitable one,
individualizes a vertex from the first non-singleton cell, and recurses,
keeping the labeling whose relabeled adjacency rows compare smallest. Cells
whose vertices are mutually interchangeable (twin cells) are ordered by label
instead of branched on, and automorphisms recovered from colliding leaves
prune branches. Tuned for the graphs this package produces, up to a few
hundred vertices.
"""

from __future__ import annotations

from .graph6 import encode_graph6
from .graphs import Graph, _iter_bits

__all__ = ["canonical_labeling", "canonical_graph", "canonical_form"]

_MAX_STORED_LEAVES = 2000


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbor counts into every cell until equitable.

    Deterministic given the incoming cell order, which makes the result usable
    as a canonical refinement step.
    """
    while True:
        changed = False
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            newcells: list[list[int]] = []
            for c in cells:
                if len(c) == 1:
                    newcells.append(c)
                    continue
                groups: dict[int, list[int]] = {}
                for v in c:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    newcells.append(c)
                else:
                    for k in sorted(groups):
                        newcells.append(groups[k])
                    changed = True
            if changed:
                cells = newcells
                break
        if not changed:
            return cells


def _split_twin_cells(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Break cells of pairwise-interchangeable vertices into singletons.

    A cell qualifies when its vertices share one adjacency row outside the
    cell and induce either no edges or all edges inside it; the symmetric
    group on such a cell acts by automorphisms fixing everything else, so any
    fixed order (here: by label) is canonical and branching would be wasted.
    Splitting them cannot trigger further refinement because outside vertices
    see all or none of the cell.
    """
    out: list[list[int]] = []
    for c in cells:
        if len(c) == 1:
            out.append(c)
            continue
        cmask = 0
        for v in c:
            cmask |= 1 << v
        outside = {adj[v] & ~cmask for v in c}
        if len(outside) == 1:
            inner = [adj[v] & cmask for v in c]
            if all(row == 0 for row in inner) or \
                    all(inner[i] == cmask ^ (1 << v) for i, v in enumerate(c)):
                out.extend([v] for v in c)
                continue
        out.append(c)
    return out


def _leaf_perm(cells: list[list[int]], n: int) -> list[int]:
    perm = [0] * n
    for pos, c in enumerate(cells):
        perm[c[0]] = pos
    return perm


def _relabeled_rows(adj: tuple[int, ...], perm: list[int], n: int) -> tuple[int, ...]:
    rows = [0] * n
    for v in range(n):
        row = 0
        m = adj[v]
        while m:
            low = m & -m
            row |= 1 << perm[low.bit_length() - 1]
            m ^= low
        rows[perm[v]] = row
    return tuple(rows)


class _Search:
    """Best-leaf search over one graph (intended: one connected component)."""

    def __init__(self, adj: tuple[int, ...], n: int):
        self.adj = adj
        self.n = n
        self.best_key: tuple[int, ...] | None = None
        self.best_perm: list[int] | None = None
        self.gens: list[list[int]] = []
        self.leaves: dict[tuple[int, ...], list[int]] = {}

    def run(self) -> tuple[list[int], tuple[int, ...]]:
        cells = _refine(self.adj, [list(range(self.n))])
        self._node(_split_twin_cells(self.adj, cells), [])
        assert self.best_perm is not None and self.best_key is not None
        return self.best_perm, self.best_key

    def _node(self, cells: list[list[int]], prefix: list[int]) -> None:
        target = None
        for c in cells:
            if len(c) > 1:
                target = c
                break
        if target is None:
            self._leaf(_leaf_perm(cells, self.n))
            return

        fixing = [p for p in self.gens if all(p[v] == v for v in prefix)]
        explored: list[int] = []
        for v in target:
            if explored and self._same_orbit(v, explored, fixing):
                continue
            explored.append(v)
            child = []
            for c in cells:
                if c is target:
                    child.append([v])
                    child.append([w for w in c if w != v])
                else:
                    child.append(list(c))
            prefix.append(v)
            refined = _split_twin_cells(self.adj, _refine(self.adj, child))
            self._node(refined, prefix)
            prefix.pop()
            # newly found automorphisms may fix the prefix; refresh the list
            fixing = [p for p in self.gens if all(p[u] == u for u in prefix)]

    def _same_orbit(self, v: int, explored: list[int], fixing: list[list[int]]) -> bool:
        if not fixing:
            return False
        # orbit of v = connected component over the generators' functional graphs
        orbit = {v}
        frontier = [v]
        targets = set(explored)
        while frontier:
            x = frontier.pop()
            for p in fixing:
                y = p[x]
                if y not in orbit:
                    if y in targets:
                        return True
                    orbit.add(y)
                    frontier.append(y)
        return False

    def _leaf(self, perm: list[int]) -> None:
        key = _relabeled_rows(self.adj, perm, self.n)
        prior = self.leaves.get(key)
        if prior is not None:
            # two labelings agree on the image: their mismatch is an automorphism
            inv_prior = [0] * self.n
            for v, t in enumerate(prior):
                inv_prior[t] = v
            self.gens.append([inv_prior[t] for t in perm])
            return
        if len(self.leaves) < _MAX_STORED_LEAVES:
            self.leaves[key] = list(perm)
        if self.best_key is None or key < self.best_key:
            self.best_key = key
            self.best_perm = list(perm)


def _canon_component(
        g: Graph, comp: int) -> tuple[list[int], list[int], tuple[int, ...]]:
    """Canonical data for the subgraph induced on bitmask comp.

    Returns (vertices, their new local positions, canonical local rows).
    """
    verts = list(_iter_bits(comp))
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for w in _iter_bits(g.adj[v] & comp):
            row |= 1 << index[w]
        adj.append(row)
    perm, key = _Search(tuple(adj), len(verts)).run()
    return verts, perm, key


def _canonical(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(labeling old -> new, canonical adjacency rows) for any graph."""
    n = g.n
    if n == 0:
        return (), ()
    comps = []
    for comp in g.components():
        verts, local_perm, key = _canon_component(g, comp)
        comps.append((len(verts), key, verts, local_perm))
    # deterministic component order; ties are exact-duplicate keys, so order
    # between them cannot change the assembled rows
    comps.sort(key=lambda t: (t[0], t[1]))
    perm = [0] * n
    rows: list[int] = []
    offset = 0
    for size, key, verts, local_perm in comps:
        for v, p in zip(verts, local_perm):
            perm[v] = offset + p
        rows.extend(row << offset for row in key)
        offset += size
    return tuple(perm), tuple(rows)


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """Permutation old -> new producing the canonical copy of g."""
    return _canonical(g)[0]


def canonical_graph(g: Graph) -> Graph:
    perm, rows = _canonical(g)
    return Graph._from_adj(g.n, rows)


def canonical_form(g: Graph) -> bytes:
    """Canonical representative of g's isomorphism class, graph6-encoded."""
    return encode_graph6(canonical_graph(g)).encode("ascii")
