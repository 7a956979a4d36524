"""Named graphs, forbidden families, and matched experiment pairs.

Everything here is a pure constructor: Turán graphs with tree packings
embedded in one part, the two counterexample packages built around them, and
the nine-vertex pattern graph f1. Graphs that come with a distinguished
equitable partition carry it in their ``partition`` attribute.
"""

from __future__ import annotations

from typing import NamedTuple

from .canon import canonical_form
from .graphs import (
    Graph,
    Partition,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    embed_in_part,
    empty_graph,
    join,
    path,
    star,
    turan,
    u_packing,
)
from .patterns import ForbiddenFamily

__all__ = [
    "f1",
    "free_trees",
    "cx1_family",
    "cx1_pair",
    "Cx2Package",
    "cx2_package",
    "star_path_pair",
    "NamedConstruction",
    "build_named",
]


def f1() -> Graph:
    """Nine-vertex pattern graph: a dominating vertex over a 14-edge core.

    Chromatic number 4; deleting the dominating vertex drops it to 3. The
    eight core vertices are labeled 1..8 below (b..i), the dominating vertex
    is 0.
    """
    letters = "abcdefghi"
    core = "bc bf bg cf fg cd ch gd gh de di eh ei hi".split()
    edges = [(0, i) for i in range(1, 9)]
    edges += [(letters.index(x), letters.index(y)) for x, y in core]
    return Graph(9, edges)


_TREE_CACHE: dict[int, tuple[Graph, ...]] = {1: (empty_graph(1),)}


def free_trees(order: int) -> tuple[Graph, ...]:
    """All trees on ``order`` vertices, one per isomorphism class.

    Grown by leaf attachment with canonical-form dedup. Counts for orders
    1..8: 1, 1, 1, 2, 3, 6, 11, 23. Intended for small orders; the census
    itself grows like 2.96^n.
    """
    if order < 1:
        raise ValueError("tree order must be at least 1")
    top = max(_TREE_CACHE)
    while top < order:
        seen = {}
        for t in _TREE_CACHE[top]:
            for v in range(t.n):
                bigger = Graph(t.n + 1, list(t.edges()) + [(v, t.n)])
                seen.setdefault(canonical_form(bigger), bigger)
        top += 1
        _TREE_CACHE[top] = tuple(seen[k] for k in sorted(seen))
    return _TREE_CACHE[order]


def cx1_family(r: int, k: int, m: int) -> ForbiddenFamily:
    """Forbidden family parameterized by (r, k, m).

    Members: every k-vertex tree except the star and the path, and every
    (k+1)-vertex tree except the path, each joined to a balanced complete
    (r-1)-partite graph on m(r-1) vertices; the two-path and star-plus-path
    forests joined to the same; short cycles joined to the same; and the
    complete graph on r+2 vertices.
    """
    if r < 3:
        raise ValueError("r must be at least 3")
    if k < 2:
        raise ValueError("k must be at least 2")
    if m < max(2, k - 1):
        raise ValueError(f"m must be at least max(2, k-1) = {max(2, k - 1)}")
    base = turan(m * (r - 1), r - 1)
    skip_k = {canonical_form(star(k)), canonical_form(path(k))}
    skip_k1 = {canonical_form(path(k + 1))}
    members = []
    members += [join(t, base) for t in free_trees(k)
                if canonical_form(t) not in skip_k]
    members += [join(t, base) for t in free_trees(k + 1)
                if canonical_form(t) not in skip_k1]
    members.append(join(disjoint_union(path(k + 1), path(k + 1)), base))
    members.append(join(disjoint_union(star(k), path(k + 1)), base))
    members += [join(cycle(l), base) for l in range(3, k + 2)]
    members.append(complete(r + 2))
    return ForbiddenFamily(members, name=f"cx1(r={r},k={k},m={m})")


def _first_part_of_size(p: Partition, size: int) -> int:
    for i, cls in enumerate(p.classes):
        if len(cls) == size:
            return i
    raise ValueError(f"no part of size {size}")


def cx1_pair(r: int, k: int, n: int) -> tuple[Graph, Graph]:
    """Star-packed G and path-packed H on the same Turán base, e(H) = e(G)+1.

    G packs stars on k vertices into the first small part of T(n,r); H packs
    paths on k vertices into the first large part and extends the first path
    by the one leftover vertex.
    """
    if n % r == 0:
        raise ValueError(f"need n not divisible by r, got n = {n}, r = {r}")
    q, rem = divmod(n, r)
    if q % k:
        raise ValueError(f"need floor(n/r) divisible by k, got floor({n}/{r}) = {q}")
    t = turan(n, r)
    small = _first_part_of_size(t.partition, q)
    g = embed_in_part(t, small, u_packing(star(k), q))
    inner = u_packing(path(k), q + 1)
    inner = inner.with_edge(k - 1, k * (q // k))  # leftover vertex extends path 0
    h = embed_in_part(t, 0, inner)
    assert h.edge_count == g.edge_count + 1
    return g, h


class Cx2Package(NamedTuple):
    family: ForbiddenFamily
    g: Graph
    h: Graph
    h_prime: Graph
    partitions: dict


def _packed_path3_partition(n_part: int, opposite: tuple[int, ...],
                            tail: str) -> Partition:
    """Classes (centers, endpoints, [tail vertices], opposite side).

    ``tail`` names what follows the packed 3-vertex paths in the part:
    "none", "isolated" (one leftover vertex), or "p2" (two 2-vertex paths).
    """
    body = n_part if tail == "none" else (n_part - 1 if tail == "isolated" else n_part - 4)
    centers = tuple(range(1, body, 3))
    endpoints = tuple(v for v in range(body) if v % 3 != 1)
    classes = [centers, endpoints]
    if tail != "none":
        classes.append(tuple(range(body, n_part)))
    classes.append(opposite)
    return Partition(classes)


def cx2_package(p: int, m: int) -> Cx2Package:
    """Three-member family and the bipartite graphs G, H, H' built for it.

    G is K_{p-1,p+1} with 3-vertex paths packed into the smaller part; H and
    H' live on K_{p,p}, packing p vertices worth of 3-vertex paths either
    with one leftover vertex or trading one path plus the leftover for two
    2-vertex paths. Each graph carries its equitable partition with classes
    (path centers, path endpoints, [leftover vertices], opposite side).
    """
    if p % 3 != 1:
        raise ValueError(f"need p congruent to 1 mod 3, got p = {p}")
    if p < 7:
        raise ValueError(f"need p at least 7, got p = {p}")
    if m < 2:
        raise ValueError(f"need m at least 2, got m = {m}")
    family = ForbiddenFamily(
        [complete(4), join(path(4), empty_graph(m)), join(star(4), empty_graph(m))],
        name=f"cx2(m={m})")

    base_g = complete_multipartite([p - 1, p + 1])
    g = embed_in_part(base_g, 0, u_packing(path(3), p - 1))
    opp_g = tuple(range(p - 1, 2 * p))
    g = g.with_partition(_packed_path3_partition(p - 1, opp_g, "none"))

    base = complete_multipartite([p, p])
    opp = tuple(range(p, 2 * p))
    h = embed_in_part(base, 0, u_packing(path(3), p))
    h = h.with_partition(_packed_path3_partition(p, opp, "isolated"))

    inner = disjoint_union(u_packing(path(3), p - 4), disjoint_union(path(2), path(2)))
    h_prime = embed_in_part(base, 0, inner)
    h_prime = h_prime.with_partition(_packed_path3_partition(p, opp, "p2"))

    partitions = {"G": g.partition, "H": h.partition, "H_prime": h_prime.partition}
    return Cx2Package(family, g, h, h_prime, partitions)


def star_path_pair(n: int, r: int, k: int) -> tuple[Graph, Graph]:
    """Equal-size, equal-edge pair: stars versus paths packed into one part.

    Both graphs cover the first part of T(n,r) with n/(rk) trees on k
    vertices each, so the edge counts agree and only the tree shape differs.
    """
    if r < 1 or n % r:
        raise ValueError(f"need r dividing n, got n = {n}, r = {r}")
    w = n // r
    if k < 4:
        raise ValueError(f"need k at least 4, got k = {k}")
    if w % k:
        raise ValueError(f"need k dividing n/r, got n/r = {w}, k = {k}")
    t = turan(n, r)
    g_star = embed_in_part(t, 0, u_packing(star(k), w))
    g_path = embed_in_part(t, 0, u_packing(path(k), w))
    assert g_star.edge_count == g_path.edge_count
    return g_star, g_path


class NamedConstruction:
    """A built construction bundled with its id, parameters, and family."""

    __slots__ = ("id", "parameters", "graphs", "family")

    def __init__(self, id: str, parameters: dict, graphs: tuple[Graph, ...],
                 family: ForbiddenFamily | None = None):
        self.id = id
        self.parameters = dict(parameters)
        self.graphs = tuple(graphs)
        self.family = family

    def __repr__(self) -> str:
        return (f"NamedConstruction(id={self.id!r}, parameters={self.parameters!r}, "
                f"graphs={len(self.graphs)}, family={self.family!r})")


def build_named(name: str, params: dict) -> NamedConstruction:
    """Build one of the named constructions from a parameter mapping.

    Known names: f1 (no parameters), cx1 (r, k, n; optional m adds the
    family), cx2 (p, m), star-path (n, r, k).
    """
    required = {"f1": (), "cx1": ("r", "k", "n"), "cx2": ("p", "m"),
                "star-path": ("n", "r", "k")}
    if name not in required:
        raise ValueError(f"unknown construction {name!r}")
    missing = [key for key in required[name] if key not in params]
    if missing:
        raise ValueError(f"{name} needs parameters {', '.join(missing)}")
    if name == "f1":
        return NamedConstruction("f1", {}, (f1(),))
    if name == "cx1":
        r, k, n = params["r"], params["k"], params["n"]
        g, h = cx1_pair(r, k, n)
        fam = cx1_family(r, k, params["m"]) if "m" in params else None
        return NamedConstruction("cx1", params, (g, h), fam)
    if name == "cx2":
        pkg = cx2_package(params["p"], params["m"])
        return NamedConstruction("cx2", params, (pkg.g, pkg.h, pkg.h_prime), pkg.family)
    n, r, k = params["n"], params["r"], params["k"]
    return NamedConstruction("star-path", params, star_path_pair(n, r, k))
