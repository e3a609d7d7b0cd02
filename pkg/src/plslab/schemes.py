"""Provers and radius-bounded verifiers for every supported scheme.

A Scheme bundles a language oracle, an honest prover (defined on
yes-instances), and a per-node verifier that consumes only a View. Verifiers
are uniform: they never see n. Field widths are recovered from the observed
label length together with the view's ID bound M (and weight bound W for
weighted schemes), so certificates of any length parse deterministically and
malformed ones are rejected rather than erroring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    Disconnected,
    IdOutOfRange,
    NotInLanguage,
    ParseError,
    PlsError,
)
from .graphs import Edge, Graph, View, edge_key
from .languages import (
    LANGUAGES,
    Language,
    UnionFind,
    is_spanning_tree,
    kruskal_mst,
    two_coloring,
)
from .proofs import (
    GlobalProof,
    LocalProof,
    MixedProof,
    Proof,
    decode_uint,
    encode_uint,
    id_width,
    local_to_global,
    mixed_to_local,
    weight_width,
)


@dataclass
class Scheme:
    """Language + honest prover + verifier with declared certificate shape."""

    name: str
    language: Language
    regime: str  # local | global | mixed
    radius: int
    prover: Callable[[Graph], Proof]
    verifier: Callable[[View], bool]
    local_width: Callable[[Graph], int] = field(default=lambda g: 0)
    global_lengths: Callable[[Graph], Sequence[int]] = field(default=lambda g: ())
    # label width as a function of M alone, when it is one (enables deriving
    # a couples-list global scheme whose verifier can re-split the records)
    uniform_label_width: Optional[Callable[[int], int]] = None
    # optional complete restricted certificate family for nondeterministic
    # decision when the full space is infeasible (compiled cc schemes)
    certificate_family: Optional[Callable[[Graph], Iterable[Proof]]] = None

    def describe(self, g: Optional[Graph] = None) -> dict:
        d = {"name": self.name, "language": self.language.name, "regime": self.regime, "radius": self.radius}
        if g is not None:
            d["local_width"] = self.local_width(g)
            d["global_lengths"] = list(self.global_lengths(g))
        return d


def _selected(view_or_input) -> bool:
    s = view_or_input if isinstance(view_or_input, str) else view_or_input.center_input
    return "1" in s


def _root_dist(label: str, idw: int) -> tuple[int, int]:
    """Split a label into (root id, distance); the id field comes first and
    takes min(idw, len) bits, the distance field is whatever remains."""
    cut = min(idw, len(label))
    return decode_uint(label[:cut]), decode_uint(label[cut:])


# --------------------------------------------------------------------------
# AMOS: at most one selected
# --------------------------------------------------------------------------


def prove_amos(g: Graph) -> GlobalProof:
    sel = g.selected_nodes()
    if len(sel) > 1:
        raise NotInLanguage("more than one selected node")
    if len(sel) == 1:
        return GlobalProof(encode_uint(sel[0], id_width(g.id_bound)))
    return GlobalProof("")


def verify_amos(v: View) -> bool:
    if not _selected(v):
        return True
    return decode_uint(v.global_bits or "") == v.center


def prove_amos_local(g: Graph) -> LocalProof:
    """Local variant: every node carries the would-be leader's id."""
    sel = g.selected_nodes()
    if len(sel) > 1:
        raise NotInLanguage("more than one selected node")
    if not g.is_connected():
        raise Disconnected("local variant is sound on connected graphs only")
    idw = id_width(g.id_bound)
    word = encode_uint(sel[0] if sel else 0, idw)
    return LocalProof(width=idw, labels={u: word for u in g.node_ids})


def verify_amos_local(v: View) -> bool:
    lab = v.center_label
    if any(v.label(u) != lab for u in v.neighbors()):
        return False
    if _selected(v):
        return decode_uint(lab) == v.center
    return True


# --------------------------------------------------------------------------
# ALOS: at least one selected
# --------------------------------------------------------------------------


def prove_alos(g: Graph) -> LocalProof:
    sel = g.selected_nodes()
    if not sel:
        raise NotInLanguage("no selected node")
    if not g.is_connected():
        raise Disconnected("distance labels need a connected graph")
    root = min(sel)
    dist = g.bfs_distances(root)
    idw = id_width(g.id_bound)
    return LocalProof(
        width=2 * idw,
        labels={u: encode_uint(root, idw) + encode_uint(dist[u], idw) for u in g.node_ids},
    )


def verify_alos(v: View) -> bool:
    root, dist = _root_dist(v.center_label, id_width(v.id_bound))
    if dist == 0:
        return _selected(v) and root == v.center
    for u in v.neighbors():
        r2, d2 = _root_dist(v.label(u), id_width(v.id_bound))
        if r2 == root and d2 == dist - 1:
            return True
    return False


def _alos_truncated_prover(g: Graph, idw: int, distw: int) -> LocalProof:
    sel = g.selected_nodes()
    if not sel:
        raise NotInLanguage("no selected node")
    if not g.is_connected():
        raise Disconnected("distance labels need a connected graph")
    root = min(sel)
    dist = g.bfs_distances(root)
    return LocalProof(
        width=idw + distw,
        labels={
            u: encode_uint(root % (1 << idw) if idw else 0, idw)
            + encode_uint(dist[u] % (1 << distw) if distw else 0, distw)
            for u in g.node_ids
        },
    )


def _alos_truncated_verifier(v: View, idw: int) -> bool:
    root, dist = _root_dist(v.center_label, idw)
    if dist == 0:
        return _selected(v) and root == v.center % (1 << idw) if idw else _selected(v)
    for u in v.neighbors():
        r2, d2 = _root_dist(v.label(u), idw)
        if r2 == root and d2 == dist - 1:
            return True
    return False


def alos_truncated(idw: int, distw: int) -> Scheme:
    """ALOS with artificially narrow fields; still exactly sound, but honest
    proofs wrap and completeness breaks once distances exceed the field."""
    return Scheme(
        name=f"alos-trunc:{idw}:{distw}",
        language=LANGUAGES["alos"],
        regime="local",
        radius=1,
        prover=lambda g: _alos_truncated_prover(g, idw, distw),
        verifier=lambda v: _alos_truncated_verifier(v, idw),
        local_width=lambda g: idw + distw,
        uniform_label_width=lambda m: idw + distw,
    )


# --------------------------------------------------------------------------
# Spanning tree
# --------------------------------------------------------------------------


def _tree_labels(g: Graph, tree: frozenset[Edge], root: int) -> dict[int, int]:
    adj: dict[int, list[int]] = {u: [] for u in g.node_ids}
    for (a, b) in tree:
        adj[a].append(b)
        adj[b].append(a)
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def prove_st(g: Graph) -> LocalProof:
    tree = g.selected_edges()
    if not is_spanning_tree(g, tree):
        raise NotInLanguage("selected edges are not a spanning tree")
    root = min(g.node_ids)
    dist = _tree_labels(g, tree, root)
    idw = id_width(g.id_bound)
    return LocalProof(
        width=2 * idw,
        labels={u: encode_uint(root, idw) + encode_uint(dist[u], idw) for u in g.node_ids},
    )


def _tree_neighbors(v: View) -> Optional[list[int]]:
    """Neighbors across selected edges, decoded from the center's own marks."""
    marks = v.center_input
    nbrs = v.neighbors()
    if len(marks) != len(nbrs) or any(c not in "01" for c in marks):
        return None
    return [u for u, c in zip(nbrs, marks) if c == "1"]


def verify_st(v: View) -> bool:
    tnbrs = _tree_neighbors(v)
    if tnbrs is None:
        return False
    idw = id_width(v.id_bound)
    root, dist = _root_dist(v.center_label, idw)
    parsed = {u: _root_dist(v.label(u), idw) for u in v.neighbors()}
    if any(r != root for (r, _) in parsed.values()):
        return False
    if dist == 0 and root != v.center:
        return False
    if any(abs(parsed[u][1] - dist) != 1 for u in tnbrs):
        return False
    if dist > 0:
        parents = [u for u in tnbrs if parsed[u][1] == dist - 1]
        if len(parents) != 1:
            return False
    return True


# --------------------------------------------------------------------------
# MST (global certificate: the selected edge list with weights)
# --------------------------------------------------------------------------


def mst_certificate(g: Graph) -> GlobalProof:
    """Encode the selected edges as sorted (u, v, weight) records.

    Total function of the instance; the honest prover composes it with a
    membership check.
    """
    idw = id_width(g.id_bound)
    ww = weight_width(g.weight_bound)
    parts = []
    for (u, w) in sorted(g.selected_edges()):
        parts.append(encode_uint(u, idw))
        parts.append(encode_uint(w, idw))
        parts.append(encode_uint(g.weight(u, w), ww))
    return GlobalProof("".join(parts))


def prove_mst_global(g: Graph) -> GlobalProof:
    if g.selected_edges() != kruskal_mst(g):
        raise NotInLanguage("selected edges are not the minimum spanning tree")
    return mst_certificate(g)


@lru_cache(maxsize=65536)
def _parse_edge_list(bits: str, idw: int, ww: int):
    """Decode and structurally check a certificate edge list.

    Returns None when the list is not well-formed; otherwise
    (records, acyclic, connected, adjacency) where records is a tuple of
    (u, v, weight) with u < v sorted strictly ascending.
    """
    rec = 2 * idw + ww
    if rec == 0 or len(bits) % rec:
        return None
    records = []
    prev = None
    for off in range(0, len(bits), rec):
        u = decode_uint(bits[off : off + idw])
        w = decode_uint(bits[off + idw : off + 2 * idw])
        wt = decode_uint(bits[off + 2 * idw : off + rec])
        if u < 1 or w < 1 or u >= w or wt < 1:
            return None
        if prev is not None and (u, w) <= prev:
            return None
        prev = (u, w)
        records.append((u, w, wt))
    nodes = {x for (u, w, _) in records for x in (u, w)}
    uf = UnionFind(nodes)
    acyclic = all(uf.union(u, w) for (u, w, _) in records)
    connected = len({uf.find(x) for x in nodes}) <= 1
    adj: dict[int, list[tuple[int, int]]] = {x: [] for x in nodes}
    for (u, w, wt) in records:
        adj[u].append((w, wt))
        adj[w].append((u, wt))
    return tuple(records), acyclic, connected, adj


def verify_mst_global(v: View) -> bool:
    bits = v.global_bits or ""
    if not v.neighbors():
        # isolated center: only the empty list is acceptable (n = 1 case)
        return bits == ""
    marks = v.center_input
    nbrs = v.neighbors()
    if len(marks) != len(nbrs) or any(c not in "01" for c in marks):
        return False
    idw = id_width(v.id_bound)
    ww = weight_width(v.weight_bound)
    parsed = _parse_edge_list(bits, idw, ww)
    if parsed is None:
        return False
    records, acyclic, connected, adj = parsed
    if not (acyclic and connected):
        return False
    c = v.center
    mine = {
        (edge_key(c, u)[0], edge_key(c, u)[1], v.weight(c, u))
        for u, m in zip(nbrs, marks)
        if m == "1"
    }
    listed_here = {(a, b, wt) for (a, b, wt) in records if c in (a, b)}
    if mine != listed_here:
        return False
    if not mine:
        return False
    # cycle property: every incident non-list edge must outweigh every edge
    # on the list path between its endpoints
    listed_edges = {(a, b) for (a, b, _) in records}
    for u in nbrs:
        e = edge_key(c, u)
        if e in listed_edges or u not in adj:
            continue
        heaviest = _heaviest_on_path(adj, c, u)
        if heaviest is None or heaviest >= v.weight(c, u):
            return False
    return True


def _heaviest_on_path(adj, src: int, dst: int) -> Optional[int]:
    """Max weight along the unique path src->dst in an acyclic edge list."""
    stack = [(src, None, 0)]
    while stack:
        x, parent, best = stack.pop()
        if x == dst:
            return best
        for (y, wt) in adj.get(x, ()):
            if y != parent:
                stack.append((y, x, max(best, wt)))
    return None


# --------------------------------------------------------------------------
# Bipartiteness
# --------------------------------------------------------------------------


def prove_bip_local(g: Graph) -> LocalProof:
    col = two_coloring(g)
    if col is None:
        raise NotInLanguage("graph is not bipartite")
    return LocalProof(width=1, labels={u: str(col[u]) for u in g.node_ids})


def verify_bip_local(v: View) -> bool:
    lab = v.center_label
    if len(lab) != 1:
        return False
    return all(v.label(u) != lab for u in v.neighbors())


def prove_bip_table(g: Graph, table_size: Optional[int] = None) -> GlobalProof:
    col = two_coloring(g)
    if col is None:
        raise NotInLanguage("graph is not bipartite")
    m = table_size if table_size is not None else g.id_bound
    if max(g.node_ids) > m:
        raise IdOutOfRange(f"node id exceeds table size {m}")
    return GlobalProof("".join(str(col.get(i, 0)) for i in range(1, m + 1)))


def verify_bip_table(v: View) -> bool:
    table = v.global_bits or ""

    def cell(i: int) -> Optional[str]:
        return table[i - 1] if 1 <= i <= len(table) else None

    own = cell(v.center)
    if own is None:
        return False
    return all(cell(u) not in (None, own) for u in v.neighbors())


# --------------------------------------------------------------------------
# Leader election (mixed proof)
# --------------------------------------------------------------------------


def prove_leader_mixed(g: Graph) -> MixedProof:
    sel = g.selected_nodes()
    if len(sel) != 1:
        raise NotInLanguage("leader election needs exactly one selected node")
    if not g.is_connected():
        raise Disconnected("distance labels need a connected graph")
    leader = sel[0]
    idw = id_width(g.id_bound)
    dist = g.bfs_distances(leader)
    local = LocalProof(
        width=2 * idw,
        labels={u: encode_uint(leader, idw) + encode_uint(dist[u], idw) for u in g.node_ids},
    )
    return MixedProof(local=local, global_part=GlobalProof(encode_uint(leader, idw)))


def verify_leader(v: View) -> bool:
    claimed = decode_uint(v.global_bits or "")
    if _selected(v) and claimed != v.center:
        return False
    idw = id_width(v.id_bound)
    root, dist = _root_dist(v.center_label, idw)
    if root != claimed:
        return False
    if dist == 0:
        return _selected(v) and root == v.center
    for u in v.neighbors():
        r2, d2 = _root_dist(v.label(u), idw)
        if r2 == root and d2 == dist - 1:
            return True
    return False


# --------------------------------------------------------------------------
# Universal scheme: certificate = the whole labeled graph
# --------------------------------------------------------------------------

_LEN_FIELD = 8


def encode_labeled_graph(g: Graph) -> str:
    """Self-delimiting binary encoding of an unweighted ID-labeled graph."""
    if g.weighted:
        raise PlsError("universal encoding supports unweighted graphs only")
    ids = g.node_ids
    n = len(ids)
    idw = max(1, max(ids).bit_length())
    out = [encode_uint(n, _LEN_FIELD), encode_uint(idw, _LEN_FIELD)]
    for u in ids:
        out.append(encode_uint(u, idw))
    for i in range(n):
        for j in range(i + 1, n):
            out.append("1" if g.has_edge(ids[i], ids[j]) else "0")
    for u in ids:
        s = g.input(u)
        out.append(encode_uint(len(s), _LEN_FIELD))
        out.append(s)
    return "".join(out)


def decode_labeled_graph(bits: str) -> Optional[Graph]:
    pos = 0

    def take(k: int) -> Optional[str]:
        nonlocal pos
        if pos + k > len(bits):
            return None
        s = bits[pos : pos + k]
        pos += k
        return s

    head = take(_LEN_FIELD)
    if head is None:
        return None
    n = decode_uint(head)
    head = take(_LEN_FIELD)
    if head is None or n < 1:
        return None
    idw = decode_uint(head)
    if idw < 1:
        return None
    ids = []
    for _ in range(n):
        s = take(idw)
        if s is None:
            return None
        ids.append(decode_uint(s))
    if any(u < 1 for u in ids) or sorted(set(ids)) != ids:
        return None
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            b = take(1)
            if b is None:
                return None
            if b == "1":
                edges.append((ids[i], ids[j]))
    inputs = {}
    for u in ids:
        s = take(_LEN_FIELD)
        if s is None:
            return None
        ln = decode_uint(s)
        val = take(ln)
        if val is None:
            return None
        inputs[u] = val
    if pos != len(bits):
        return None
    try:
        return Graph(ids, inputs, edges, None, max(ids))
    except PlsError:
        return None


def universal_scheme(lang: Language) -> Scheme:
    def prover(g: Graph) -> LocalProof:
        if not lang(g):
            raise NotInLanguage(f"not in {lang.name}")
        bits = encode_labeled_graph(g)
        return LocalProof(width=len(bits), labels={u: bits for u in g.node_ids})

    def verifier(v: View) -> bool:
        lab = v.center_label
        if any(v.label(u) != lab for u in v.neighbors()):
            return False
        decoded = decode_labeled_graph(lab)
        if decoded is None or not decoded.has_node(v.center):
            return False
        if decoded.input(v.center) != v.center_input:
            return False
        if set(decoded.neighbors(v.center)) != set(v.neighbors()):
            return False
        try:
            return bool(lang(decoded))
        except PlsError:
            return False

    return Scheme(
        name=f"universal:{lang.name}",
        language=lang,
        regime="local",
        radius=1,
        prover=prover,
        verifier=verifier,
        local_width=lambda g: len(encode_labeled_graph(g)),
    )


# --------------------------------------------------------------------------
# Always-accept verifiers (attack targets)
# --------------------------------------------------------------------------


def always_accept_scheme(lang_name: str, radius: int = 1) -> Scheme:
    lang = LANGUAGES[lang_name]
    return Scheme(
        name=f"always-accept-{lang_name}",
        language=lang,
        regime="local",
        radius=radius,
        prover=lambda g: LocalProof(width=0, labels={u: "" for u in g.node_ids}),
        verifier=lambda v: True,
        local_width=lambda g: 0,
        uniform_label_width=lambda m: 0,
    )


# --------------------------------------------------------------------------
# Regime conversions as derived schemes
# --------------------------------------------------------------------------


def as_mixed(scheme: Scheme) -> Scheme:
    """View a local or global scheme as a mixed one (the other part empty)."""
    if scheme.regime == "mixed":
        return scheme
    if scheme.regime == "local":
        def prover(g: Graph) -> MixedProof:
            return MixedProof(local=scheme.prover(g), global_part=GlobalProof(""))

        return Scheme(
            name=f"{scheme.name}@mixed",
            language=scheme.language,
            regime="mixed",
            radius=scheme.radius,
            prover=prover,
            verifier=scheme.verifier,
            local_width=scheme.local_width,
            global_lengths=lambda g: (0,),
            uniform_label_width=scheme.uniform_label_width,
        )

    def prover(g: Graph) -> MixedProof:
        return MixedProof(
            local=LocalProof(width=0, labels={u: "" for u in g.node_ids}),
            global_part=scheme.prover(g),
        )

    return Scheme(
        name=f"{scheme.name}@mixed",
        language=scheme.language,
        regime="mixed",
        radius=scheme.radius,
        prover=prover,
        verifier=scheme.verifier,
        local_width=lambda g: 0,
        global_lengths=scheme.global_lengths,
        uniform_label_width=lambda m: 0,
    )


def globalized(scheme: Scheme) -> Scheme:
    """Turn a local scheme into a global one via the (ID, label) couple list."""
    if scheme.regime != "local":
        raise PlsError("globalized() expects a local scheme")
    if scheme.uniform_label_width is None:
        raise PlsError(f"{scheme.name}: label width is not a function of M; cannot derive couples verifier")

    base_width = scheme.uniform_label_width

    def prover(g: Graph) -> GlobalProof:
        return local_to_global(scheme.prover(g), g)

    def verifier(v: View) -> bool:
        idw = id_width(v.id_bound)
        lw = base_width(v.id_bound)
        rec = idw + lw
        bits = v.global_bits or ""
        if rec == 0 or len(bits) % rec:
            return False
        labels: dict[int, str] = {}
        prev = 0
        for off in range(0, len(bits), rec):
            u = decode_uint(bits[off : off + idw])
            if u <= prev or u > v.id_bound:
                return False
            labels[u] = bits[off + idw : off + rec]
            prev = u
        ball = v.graph.node_ids
        if any(u not in labels for u in ball):
            return False
        inner = View(
            center=v.center,
            radius=v.radius,
            graph=v.graph,
            labels={u: labels[u] for u in ball},
            global_bits=None,
        )
        return scheme.verifier(inner)

    def lengths(g: Graph) -> tuple[int, ...]:
        rec = id_width(g.id_bound) + base_width(g.id_bound)
        return tuple(k * rec for k in range(g.n + 1))

    return Scheme(
        name=f"{scheme.name}@global",
        language=scheme.language,
        regime="global",
        radius=max(1, scheme.radius),
        prover=prover,
        verifier=verifier,
        local_width=lambda g: 0,
        global_lengths=lengths,
    )


def localized(scheme: Scheme) -> Scheme:
    """Turn a mixed scheme into a local one: label = local part ++ global part."""
    if scheme.regime != "mixed":
        raise PlsError("localized() expects a mixed scheme")
    if scheme.uniform_label_width is None:
        raise PlsError(f"{scheme.name}: local part width is not a function of M")

    part_width = scheme.uniform_label_width

    def prover(g: Graph) -> LocalProof:
        return mixed_to_local(scheme.prover(g))

    def verifier(v: View) -> bool:
        lw = part_width(v.id_bound)
        own = v.center_label
        if len(own) < lw:
            return False
        glob = own[lw:]
        if any(v.label(u)[lw:] != glob for u in v.neighbors()):
            return False
        inner = View(
            center=v.center,
            radius=v.radius,
            graph=v.graph,
            labels={u: v.label(u)[:lw] for u in v.graph.node_ids},
            global_bits=glob,
        )
        return scheme.verifier(inner)

    return Scheme(
        name=f"{scheme.name}@local",
        language=scheme.language,
        regime="local",
        radius=max(1, scheme.radius),
        prover=prover,
        verifier=verifier,
        local_width=lambda g: scheme.local_width(g) + _honest_global_size(scheme, g),
    )


def _honest_global_size(scheme: Scheme, g: Graph) -> int:
    p = scheme.prover(g)
    gp = p.global_part if isinstance(p, MixedProof) else p
    return gp.size if isinstance(gp, GlobalProof) else 0


# --------------------------------------------------------------------------
# Registry
# --------------------------------------------------------------------------


def _amos_global() -> Scheme:
    return Scheme(
        name="amos-global",
        language=LANGUAGES["amos"],
        regime="global",
        radius=0,
        prover=prove_amos,
        verifier=verify_amos,
        global_lengths=lambda g: tuple(range(id_width(g.id_bound) + 1)),
    )


def _amos_local() -> Scheme:
    return Scheme(
        name="amos-local",
        language=LANGUAGES["amos"],
        regime="local",
        radius=1,
        prover=prove_amos_local,
        verifier=verify_amos_local,
        local_width=lambda g: id_width(g.id_bound),
        uniform_label_width=id_width,
    )


def _alos_local() -> Scheme:
    return Scheme(
        name="alos-local",
        language=LANGUAGES["alos"],
        regime="local",
        radius=1,
        prover=prove_alos,
        verifier=verify_alos,
        local_width=lambda g: 2 * id_width(g.id_bound),
        uniform_label_width=lambda m: 2 * id_width(m),
    )


def _st_local() -> Scheme:
    return Scheme(
        name="st-local",
        language=LANGUAGES["st"],
        regime="local",
        radius=1,
        prover=prove_st,
        verifier=verify_st,
        local_width=lambda g: 2 * id_width(g.id_bound),
        uniform_label_width=lambda m: 2 * id_width(m),
    )


def _mst_global() -> Scheme:
    def lengths(g: Graph) -> tuple[int, ...]:
        rec = 2 * id_width(g.id_bound) + weight_width(g.weight_bound)
        return tuple(k * rec for k in range(g.n))

    return Scheme(
        name="mst-global",
        language=LANGUAGES["mst"],
        regime="global",
        radius=1,
        prover=prove_mst_global,
        verifier=verify_mst_global,
        global_lengths=lengths,
    )


def _bip_local() -> Scheme:
    return Scheme(
        name="bip-local",
        language=LANGUAGES["bipartite"],
        regime="local",
        radius=1,
        prover=prove_bip_local,
        verifier=verify_bip_local,
        local_width=lambda g: 1,
        uniform_label_width=lambda m: 1,
    )


def _bip_table() -> Scheme:
    return Scheme(
        name="bip-table",
        language=LANGUAGES["bipartite"],
        regime="global",
        radius=1,
        prover=prove_bip_table,
        verifier=verify_bip_table,
        global_lengths=lambda g: tuple(range(g.id_bound + 1)),
    )


def _leader_mixed() -> Scheme:
    return Scheme(
        name="leader-mixed",
        language=LANGUAGES["leader"],
        regime="mixed",
        radius=1,
        prover=prove_leader_mixed,
        verifier=verify_leader,
        local_width=lambda g: 2 * id_width(g.id_bound),
        global_lengths=lambda g: tuple(range(id_width(g.id_bound) + 1)),
        uniform_label_width=lambda m: 2 * id_width(m),
    )


_BUILDERS: dict[str, Callable[[], Scheme]] = {
    "amos-global": _amos_global,
    "amos-local": _amos_local,
    "alos-local": _alos_local,
    "st-local": _st_local,
    "mst-global": _mst_global,
    "bip-local": _bip_local,
    "bip-table": _bip_table,
    "leader-mixed": _leader_mixed,
    "always-accept-alos": lambda: always_accept_scheme("alos"),
    "always-accept-odd-cycle": lambda: always_accept_scheme("odd-cycle"),
    "always-accept-leader": lambda: always_accept_scheme("leader"),
    "always-accept-st": lambda: always_accept_scheme("st"),
}


def get_scheme(name: str) -> Scheme:
    """Resolve a scheme by registry name.

    Dynamic names: universal:<lang>, <local>@global, <mixed>@local,
    <any>@mixed, alos-trunc:<idw>:<distw>.
    """
    if name in _BUILDERS:
        return _BUILDERS[name]()
    if name.startswith("universal:"):
        lang_name = name.split(":", 1)[1]
        if lang_name not in LANGUAGES:
            raise ParseError(f"unknown language {lang_name!r}")
        return universal_scheme(LANGUAGES[lang_name])
    if name.startswith("alos-trunc:"):
        try:
            _, a, b = name.split(":")
            return alos_truncated(int(a), int(b))
        except ValueError as exc:
            raise ParseError(f"bad truncated scheme name {name!r}") from exc
    if name.endswith("@global"):
        return globalized(get_scheme(name[: -len("@global")]))
    if name.endswith("@mixed"):
        return as_mixed(get_scheme(name[: -len("@mixed")]))
    if name.endswith("@local"):
        return localized(get_scheme(name[: -len("@local")]))
    raise ParseError(f"unknown scheme {name!r}")


def scheme_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS)) + ("universal:<lang>",)
