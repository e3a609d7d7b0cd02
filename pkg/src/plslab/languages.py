"""Distributed languages: centralized membership oracles.

Each oracle is deterministic and total on graphs that carry the inputs the
language needs (raising MissingInput otherwise, e.g. MST without weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import MissingInput
from .graphs import Edge, Graph


@dataclass(frozen=True)
class Language:
    name: str
    membership: Callable[[Graph], bool]

    def __call__(self, g: Graph) -> bool:
        return self.membership(g)


# --------------------------------------------------------------------------
# helper predicates (these double as independent oracles in tests)
# --------------------------------------------------------------------------


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {v: v for v in items}

    def find(self, v: int) -> int:
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[ru] = rv
        return True


def is_forest(nodes: Iterable[int], edges: Iterable[Edge]) -> bool:
    uf = UnionFind(nodes)
    return all(uf.union(u, v) for (u, v) in edges)


def is_spanning_tree(g: Graph, edges: frozenset[Edge]) -> bool:
    if len(edges) != g.n - 1:
        return False
    uf = UnionFind(g.node_ids)
    merges = sum(1 for (u, v) in edges if uf.union(u, v))
    return merges == g.n - 1


def kruskal_mst(g: Graph) -> frozenset[Edge]:
    """The minimum spanning tree under distinct weights (independent oracle)."""
    if not g.weighted:
        raise MissingInput("MST oracle needs edge weights")
    if not g.is_connected():
        raise MissingInput("MST oracle needs a connected graph")
    wmap = g.weight_map()
    uf = UnionFind(g.node_ids)
    tree = []
    for e in sorted(wmap, key=lambda e: wmap[e]):
        if uf.union(*e):
            tree.append(e)
    return frozenset(tree)


def two_coloring(g: Graph) -> dict[int, int] | None:
    """A proper 2-coloring, or None; deterministic (BFS from min id, color 0)."""
    color: dict[int, int] = {}
    for root in g.node_ids:
        if root in color:
            continue
        color[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for u in g.neighbors(v):
                    if u not in color:
                        color[u] = 1 - color[v]
                        nxt.append(u)
                    elif color[u] == color[v]:
                        return None
            frontier = nxt
    return color


def is_cycle_graph(g: Graph) -> bool:
    return (
        g.n >= 3
        and all(g.degree(v) == 2 for v in g.node_ids)
        and g.is_connected()
    )


# --------------------------------------------------------------------------
# the languages themselves
# --------------------------------------------------------------------------


def lang_amos(g: Graph) -> bool:
    """At most one node is selected."""
    return len(g.selected_nodes()) <= 1


def lang_alos(g: Graph) -> bool:
    """At least one node has a non-zero input label."""
    return len(g.selected_nodes()) >= 1


def lang_alos_per_component(g: Graph) -> bool:
    """Every connected component contains a selected node."""
    selected = set(g.selected_nodes())
    remaining = set(g.node_ids)
    while remaining:
        root = min(remaining)
        comp = set(g.bfs_distances(root))
        if not (comp & selected):
            return False
        remaining -= comp
    return True


def lang_none_selected(g: Graph) -> bool:
    """All nodes carry the zero label."""
    return len(g.selected_nodes()) == 0


def lang_leader(g: Graph) -> bool:
    """Exactly one node is selected."""
    return len(g.selected_nodes()) == 1


def lang_st(g: Graph) -> bool:
    """The selected edges form a spanning tree."""
    return is_spanning_tree(g, g.selected_edges())


def lang_mst(g: Graph) -> bool:
    """The selected edges form the minimum spanning tree."""
    selected = g.selected_edges()
    if not g.weighted:
        raise MissingInput("MST membership needs edge weights")
    if not g.is_connected():
        return False
    return selected == kruskal_mst(g)


def lang_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def lang_odd_cycle(g: Graph) -> bool:
    """The graph is a single cycle of odd length."""
    return is_cycle_graph(g) and g.n % 2 == 1


LANGUAGES: dict[str, Language] = {
    "amos": Language("amos", lang_amos),
    "alos": Language("alos", lang_alos),
    "alos-per-component": Language("alos-per-component", lang_alos_per_component),
    "none-selected": Language("none-selected", lang_none_selected),
    "leader": Language("leader", lang_leader),
    "st": Language("st", lang_st),
    "mst": Language("mst", lang_mst),
    "bipartite": Language("bipartite", lang_bipartite),
    "odd-cycle": Language("odd-cycle", lang_odd_cycle),
}
