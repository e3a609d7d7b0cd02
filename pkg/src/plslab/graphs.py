"""Graph substrate: ID-labeled simple graphs, radius-t views, canonical forms.

Graphs are immutable after construction. Node inputs are opaque bit strings;
edge-selection marks live in the inputs of both endpoints (one mark per
incident edge, in ascending-neighbor order) and weights are separate edge
attributes. A View is the radius-t ball a verifier is allowed to inspect:
nodes at distance <= t with their IDs, inputs and certificates, and all ball
edges except those joining two nodes both at distance exactly t (a node
cannot have learned a frontier-frontier edge in t communication rounds).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    CoverageMismatch,
    DuplicateEdge,
    DuplicateId,
    DuplicateWeight,
    LoopEdge,
    MissingInput,
    ParseError,
    TooLarge,
    UnknownNode,
)

if TYPE_CHECKING:
    from .proofs import GlobalProof, LocalProof, MixedProof

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    if u == v:
        raise LoopEdge(f"loop edge at node {u}")
    return (u, v) if u < v else (v, u)


def default_id_bound(n: int) -> int:
    """Experiment-level ID bound: smallest power of two >= n."""
    if n <= 1:
        return 1
    return 1 << (n - 1).bit_length()


class Graph:
    """Immutable simple graph with per-node inputs and optional edge weights."""

    __slots__ = ("_ids", "_inputs", "_adj", "_edges", "_weights", "_id_bound", "_weight_bound")

    def __init__(
        self,
        ids: Sequence[int],
        inputs: Mapping[int, str],
        edges: Iterable[Edge],
        weights: Optional[Mapping[Edge, int]],
        id_bound: int,
        weight_bound: Optional[int] = None,
    ):
        self._ids = tuple(sorted(ids))
        self._inputs = {v: inputs.get(v, "") for v in self._ids}
        es = frozenset(edges)
        adj: dict[int, list[int]] = {v: [] for v in self._ids}
        for (u, v) in es:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}
        self._edges = es
        self._weights = dict(weights) if weights else None
        self._id_bound = id_bound
        if weight_bound is None and self._weights:
            weight_bound = max(self._weights.values())
        self._weight_bound = weight_bound

    # --- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def node_ids(self) -> tuple[int, ...]:
        return self._ids

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def id_bound(self) -> int:
        """The experiment ID bound M (all IDs are in [1, M])."""
        return self._id_bound

    @property
    def weight_bound(self) -> Optional[int]:
        """Experiment weight bound (inherited by views for field widths)."""
        return self._weight_bound

    @property
    def weighted(self) -> bool:
        return self._weights is not None

    def has_node(self, v: int) -> bool:
        return v in self._inputs

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (min(u, v), max(u, v)) in self._edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in self._adj:
            raise UnknownNode(f"node {v} not in graph")
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def input(self, v: int) -> str:
        if v not in self._inputs:
            raise UnknownNode(f"node {v} not in graph")
        return self._inputs[v]

    def weight(self, u: int, v: int) -> int:
        if self._weights is None:
            raise MissingInput("graph has no weights")
        try:
            return self._weights[edge_key(u, v)]
        except KeyError:
            raise UnknownNode(f"edge {(u, v)} not in graph") from None

    def weight_map(self) -> dict[Edge, int]:
        return dict(self._weights) if self._weights else {}

    # --- inputs as selections ----------------------------------------------

    def selected_nodes(self) -> tuple[int, ...]:
        """Nodes with a non-zero input label."""
        return tuple(v for v in self._ids if "1" in self._inputs[v])

    def selected_edges(self) -> frozenset[Edge]:
        """Decode per-node incident-edge marks into a selected edge set.

        Every node input must have exactly degree(v) bits; the marks of the
        two endpoints of each edge must agree.
        """
        marks: dict[Edge, str] = {}
        for v in self._ids:
            s = self._inputs[v]
            nbrs = self._adj[v]
            if len(s) != len(nbrs) or any(c not in "01" for c in s):
                raise MissingInput(f"node {v}: input {s!r} is not a mark per incident edge")
            for c, u in zip(s, nbrs):
                e = edge_key(v, u)
                if e in marks and marks[e] != c:
                    raise MissingInput(f"edge {e}: endpoints disagree on selection mark")
                marks[e] = c
        return frozenset(e for e, c in marks.items() if c == "1")

    # --- traversal ---------------------------------------------------------

    def bfs_distances(self, src: int, limit: Optional[int] = None) -> dict[int, int]:
        if src not in self._inputs:
            raise UnknownNode(f"node {src} not in graph")
        dist = {src: 0}
        frontier = [src]
        d = 0
        while frontier and (limit is None or d < limit):
            d += 1
            nxt = []
            for v in frontier:
                for u in self._adj[v]:
                    if u not in dist:
                        dist[u] = d
                        nxt.append(u)
            frontier = nxt
        return dist

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.bfs_distances(self._ids[0])) == self.n

    # --- derivation ---------------------------------------------------------

    def with_inputs(self, inputs: Mapping[int, str]) -> "Graph":
        """Same structure, replaced inputs (graphs are immutable)."""
        new = dict(self._inputs)
        for v, s in inputs.items():
            if v not in new:
                raise UnknownNode(f"node {v} not in graph")
            new[v] = s
        return Graph(self._ids, new, self._edges, self._weights, self._id_bound, self._weight_bound)

    def with_selected_edges(self, selected: Iterable[Edge]) -> "Graph":
        sel = frozenset(edge_key(u, v) for (u, v) in selected)
        for e in sel:
            if e not in self._edges:
                raise UnknownNode(f"selected edge {e} not in graph")
        inputs = {
            v: "".join("1" if edge_key(v, u) in sel else "0" for u in self._adj[v])
            for v in self._ids
        }
        return Graph(self._ids, inputs, self._edges, self._weights, self._id_bound, self._weight_bound)

    # --- equality / io -------------------------------------------------------

    def _key(self):
        wk = tuple(sorted(self._weights.items())) if self._weights else None
        return (
            self._ids,
            tuple(self._inputs[v] for v in self._ids),
            self._edges,
            wk,
            self._id_bound,
            self._weight_bound,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)}, M={self._id_bound})"

    def to_dict(self) -> dict:
        d: dict = {
            "nodes": [{"id": v, "input": self._inputs[v]} for v in self._ids],
            "edges": [[u, v] for (u, v) in sorted(self._edges)],
        }
        if self._weights:
            d["weights"] = [[u, v, self._weights[(u, v)]] for (u, v) in sorted(self._weights)]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def build_graph(
    edge_list: Iterable[Sequence[int]],
    inputs: Optional[Mapping[int, str]] = None,
    weights: Optional[Mapping] = None,
    nodes: Optional[Iterable[int]] = None,
    selected: Optional[Iterable[Edge]] = None,
    id_bound: Optional[int] = None,
) -> Graph:
    """Validate and freeze a graph.

    `selected` synthesizes edge-mark inputs on all nodes and cannot be
    combined with explicit `inputs`. M defaults to the maximum node ID.
    """
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for pair in edge_list:
        u, v = int(pair[0]), int(pair[1])
        e = edge_key(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} listed twice")
        seen.add(e)
        edges.append(e)

    ids: set[int] = set()
    for (u, v) in edges:
        ids.add(u)
        ids.add(v)
    if inputs:
        ids.update(inputs.keys())
    if nodes is not None:
        explicit = list(nodes)
        if len(explicit) != len(set(explicit)):
            dupes = sorted({v for v in explicit if explicit.count(v) > 1})
            raise DuplicateId(f"duplicate node ids {dupes}")
        ids.update(explicit)
    if not ids:
        raise ParseError("graph has no nodes")
    if any(not isinstance(v, int) or v < 1 for v in ids):
        raise ParseError("node ids must be positive integers")

    wmap: Optional[dict[Edge, int]] = None
    if weights is not None:
        wmap = {}
        for key, w in dict(weights).items():
            e = edge_key(int(key[0]), int(key[1]))
            if e not in seen:
                raise UnknownNode(f"weight given for missing edge {e}")
            wmap[e] = int(w)
        if len(wmap) != len(seen):
            raise MissingInput("weights must cover every edge")
        vals = list(wmap.values())
        if any(w < 1 for w in vals):
            raise ParseError("weights must be positive")
        if len(set(vals)) != len(vals):
            raise DuplicateWeight("edge weights must be distinct")

    bound = id_bound if id_bound is not None else max(ids)
    if max(ids) > bound:
        raise ParseError(f"id {max(ids)} exceeds id bound {bound}")

    g = Graph(sorted(ids), dict(inputs or {}), edges, wmap, bound)
    if selected is not None:
        if inputs:
            raise ParseError("pass either inputs or selected, not both")
        g = g.with_selected_edges(selected)
    return g


def graph_from_dict(d: Mapping) -> Graph:
    try:
        node_items = [(int(nd["id"]), str(nd.get("input", ""))) for nd in d["nodes"]]
        ids = [v for v, _ in node_items]
        if len(ids) != len(set(ids)):
            raise DuplicateId(f"duplicate node ids in file")
        inputs = dict(node_items)
        edges = [(int(e[0]), int(e[1])) for e in d.get("edges", [])]
        weights = None
        if "weights" in d:
            weights = {(int(w[0]), int(w[1])): int(w[2]) for w in d["weights"]}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed graph dict: {exc}") from exc
    return build_graph(edges, inputs=inputs, weights=weights, nodes=ids)


def load_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read graph file {path}: {exc}") from exc
    return graph_from_dict(d)


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_json())
        fh.write("\n")


# --------------------------------------------------------------------------
# Views
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class View:
    """The radius-t ball around a node: the only thing a verifier sees."""

    center: int
    radius: int
    graph: Graph
    labels: Optional[Mapping[int, str]] = None
    global_bits: Optional[str] = None

    @property
    def id_bound(self) -> int:
        return self.graph.id_bound

    @property
    def weight_bound(self) -> Optional[int]:
        return self.graph.weight_bound

    @property
    def center_input(self) -> str:
        return self.graph.input(self.center)

    @property
    def center_label(self) -> str:
        assert self.labels is not None
        return self.labels[self.center]

    def neighbors(self, v: Optional[int] = None) -> tuple[int, ...]:
        return self.graph.neighbors(self.center if v is None else v)

    def input(self, v: int) -> str:
        return self.graph.input(v)

    def label(self, v: int) -> str:
        assert self.labels is not None
        return self.labels[v]

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def weight(self, u: int, v: int) -> int:
        return self.graph.weight(u, v)


def view(
    g: Graph,
    v: int,
    t: int,
    proof: Optional["LocalProof | GlobalProof | MixedProof"] = None,
    include_frontier_edges: bool = False,
) -> View:
    """Extract the radius-t view of node v, attaching certificates.

    `include_frontier_edges` exists only for the documented sensitivity
    comparison; the model default excludes edges between two nodes both at
    distance exactly t.
    """
    if not g.has_node(v):
        raise UnknownNode(f"node {v} not in graph")
    if t < 0:
        raise ParseError("radius must be nonnegative")
    dist = g.bfs_distances(v, limit=t)
    ball = set(dist)
    ball_edges = []
    for (a, b) in g.edges:
        if a in ball and b in ball:
            if not include_frontier_edges and dist[a] == t and dist[b] == t:
                continue
            ball_edges.append((a, b))
    wmap = None
    if g.weighted:
        full = g.weight_map()
        wmap = {e: full[e] for e in ball_edges}
    sub = Graph(sorted(ball), {u: g.input(u) for u in ball}, ball_edges, wmap, g.id_bound, g.weight_bound)

    labels: Optional[dict[int, str]] = None
    gbits: Optional[str] = None
    if proof is not None:
        local = getattr(proof, "local", None)
        if local is None and hasattr(proof, "labels"):
            local = proof
        if local is not None:
            missing = [u for u in ball if u not in local.labels]
            if missing:
                raise CoverageMismatch(f"proof lacks labels for nodes {sorted(missing)}")
            labels = {u: local.labels[u] for u in ball}
        gp = getattr(proof, "global_part", None)
        if gp is None and hasattr(proof, "bits"):
            gp = proof
        if gp is not None:
            gbits = gp.bits
    return View(center=v, radius=t, graph=sub, labels=labels, global_bits=gbits)


# --------------------------------------------------------------------------
# Canonical forms for small graphs
# --------------------------------------------------------------------------

_DESK_K = 8


@lru_cache(maxsize=None)
def _perm_shift_matrix(k: int) -> np.ndarray:
    """Row per permutation of [k]: entry j is the power-of-two weight that the
    adjacency bit of pair j carries after applying the permutation."""
    pairs = list(combinations(range(k), 2))
    c = len(pairs)
    index = {p: i for i, p in enumerate(pairs)}
    rows = []
    for sigma in permutations(range(k)):
        row = [1 << (c - 1 - index[tuple(sorted((sigma[a], sigma[b])))]) for (a, b) in pairs]
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def _mask_bits(mask: int, c: int) -> np.ndarray:
    return np.array([(mask >> (c - 1 - j)) & 1 for j in range(c)], dtype=np.int64)


def encoding_to_edges(encoding: str, ids: Sequence[int]) -> list[Edge]:
    """Materialize a canonical adjacency encoding onto concrete node ids."""
    k = len(ids)
    pairs = list(combinations(range(k), 2))
    if len(encoding) != len(pairs):
        raise ParseError(f"encoding length {len(encoding)} does not match k={k}")
    return [edge_key(ids[a], ids[b]) for bit, (a, b) in zip(encoding, pairs) if bit == "1"]


def canonical_encoding(k: int, edges: Iterable[tuple[int, int]]) -> str:
    """Minimum adjacency bit string of a k-node graph over all permutations.

    Edge endpoints must be 0-based positions in [0, k).
    """
    if k > _DESK_K:
        raise TooLarge(f"canonical forms supported up to {_DESK_K} nodes, got {k}")
    if k < 1:
        raise ParseError("k must be >= 1")
    pairs = list(combinations(range(k), 2))
    c = len(pairs)
    if c == 0:
        return ""
    index = {p: i for i, p in enumerate(pairs)}
    mask = 0
    for (a, b) in edges:
        mask |= 1 << (c - 1 - index[tuple(sorted((a, b)))])
    orbit = _perm_shift_matrix(k) @ _mask_bits(mask, c)
    return format(int(orbit.min()), f"0{c}b")


def canonical_form(g: Graph) -> str:
    """Canonical encoding of a Graph (ids relabeled by sorted order)."""
    pos = {v: i for i, v in enumerate(g.node_ids)}
    return canonical_encoding(g.n, [(pos[u], pos[v]) for (u, v) in g.edges])


@lru_cache(maxsize=None)
def canonical_graphs(k: int) -> tuple[str, ...]:
    """All isomorphism classes of k-node graphs as sorted canonical encodings.

    Enumerates adjacency masks in ascending order and marks whole orbits, so
    each class representative is its minimum encoding. Desk scale: instant up
    to k=6, tens of seconds at k=7, minutes (and ~256 MB) at k=8.
    """
    if k > _DESK_K:
        raise TooLarge(f"canonical enumeration supported up to {_DESK_K} nodes, got {k}")
    if k < 1:
        raise ParseError("k must be >= 1")
    c = k * (k - 1) // 2
    if c == 0:
        return ("",)
    size = 1 << c
    seen = np.zeros(size, dtype=bool)
    shift = _perm_shift_matrix(k)
    reps: list[int] = []
    mask = 0
    chunk = 1 << 16
    while mask < size:
        if seen[mask]:
            found = -1
            j = mask
            while j < size:
                window = seen[j : j + chunk]
                pos = int(np.argmax(~window))
                if not window[pos]:
                    found = j + pos
                    break
                j += len(window)
            if found < 0:
                break
            mask = found
        reps.append(mask)
        seen[shift @ _mask_bits(mask, c)] = True
        mask += 1
    return tuple(format(m, f"0{c}b") for m in reps)


def graph_from_encoding(encoding: str, ids: Sequence[int], id_bound: Optional[int] = None) -> Graph:
    ids = sorted(ids)
    edges = encoding_to_edges(encoding, ids)
    return build_graph(edges, nodes=ids, id_bound=id_bound or max(ids))
