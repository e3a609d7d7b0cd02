"""Constructive lower-bound machinery.

Block fooling attacks: cut a cycle instance into blocks of 2r+1 consecutively
identified nodes, harvest accepting labelings over permuted block orders,
find two orders that induce the same labeled-block set, locate a back edge,
and splice a short accepting cycle that avoids the special block, yielding an
accepting no-instance. The same junction calculus drives the bipartiteness
coloring extraction: a directed graph on blocks records which block may
follow which under a fixed global certificate, and its bipartition gives a
2-coloring that every accepted block-based cycle must respect.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import BudgetTooLarge, MissingColoring, PlsError, RadiusMismatch
from .graphs import Graph, View, build_graph, default_id_bound, view
from .languages import LANGUAGES, Language
from .proofs import GlobalProof, LocalProof, MixedProof, Proof, proof_to_dict
from .schemes import Scheme
from .harness import run, _accepts

BLOCK_GRAPH_CAP = 1 << 16
GC_CYCLE_CAP = 1 << 16


# --------------------------------------------------------------------------
# Blocks and permuted instances
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A path of 2r+1 consecutively identified nodes, oriented low to high."""

    index: int
    r: int
    ids: tuple[int, ...]

    @property
    def center(self) -> int:
        return self.ids[self.r]

    @property
    def first(self) -> int:
        return self.ids[0]

    @property
    def last(self) -> int:
        return self.ids[-1]


@dataclass(frozen=True)
class LabeledBlock:
    block: Block
    labels: tuple[str, ...]
    inputs: tuple[str, ...]


def make_blocks(b: int, r: int) -> list[Block]:
    """b permutable blocks plus the special (b+1)th, with the exact ID ranges."""
    if b < 2:
        raise PlsError("need b >= 2 permutable blocks")
    if r < 1:
        raise PlsError("blocks need radius r >= 1 (2r+1 >= 3 nodes)")
    size = 2 * r + 1
    return [
        Block(index=k, r=r, ids=tuple(range(k * size + 1, (k + 1) * size + 1)))
        for k in range(b + 1)
    ]


def _variant_inputs(block: Block, variant: str, special: bool) -> tuple[str, ...]:
    """Canonical interior inputs of a block within a fully assembled cycle."""
    if variant in ("alos", "leader"):
        return tuple("1" if special and v == block.center else "0" for v in block.ids)
    if variant == "odd":
        return tuple("" for _ in block.ids)
    if variant == "st":
        # every node of a cycle carries two marks; interior context is fully
        # selected, the one unselected junction is materialized per instance
        return tuple("11" for _ in block.ids)
    raise PlsError(f"unknown variant {variant!r}")


def labeled_block(block: Block, labels: Sequence[str], variant: str = "alos", special: bool = False) -> LabeledBlock:
    return LabeledBlock(block=block, labels=tuple(labels), inputs=_variant_inputs(block, variant, special))


@dataclass(frozen=True)
class PermInstance:
    perm: tuple[int, ...]
    variant: str
    blocks: tuple[Block, ...]
    order: tuple[int, ...]  # block indices in cycle order, special last
    graph: Graph


def _cycle_edges(blocks_in_order: Sequence[Block]) -> list[tuple[int, int]]:
    edges = []
    for blk in blocks_in_order:
        edges.extend((blk.ids[i], blk.ids[i + 1]) for i in range(len(blk.ids) - 1))
    for i, blk in enumerate(blocks_in_order):
        nxt = blocks_in_order[(i + 1) % len(blocks_in_order)]
        edges.append((blk.last, nxt.first))
    return edges


def permuted_instance(
    perm: Sequence[int],
    blocks: Sequence[Block],
    variant: str = "alos",
    id_bound: Optional[int] = None,
) -> PermInstance:
    """The yes-instance C_pi: permuted blocks closed into a cycle by the
    special block, with variant-specific inputs."""
    b = len(blocks) - 1
    if sorted(perm) != list(range(b)):
        raise PlsError(f"perm must be a permutation of 0..{b - 1}")
    if variant == "odd" and b % 2:
        raise PlsError("the odd-cycle variant needs an even number of permutable blocks")
    order = tuple(perm) + (b,)
    seq = [blocks[k] for k in order]
    bound = id_bound or default_id_bound((b + 1) * len(blocks[0].ids))
    edges = _cycle_edges(seq)
    if variant in ("alos", "leader"):
        inputs = {v: "0" for blk in seq for v in blk.ids}
        inputs[blocks[b].center] = "1"
        g = build_graph(edges, inputs=inputs, id_bound=bound)
    elif variant == "odd":
        g = build_graph(edges, inputs={v: "" for blk in seq for v in blk.ids}, id_bound=bound)
    elif variant == "st":
        g = build_graph(edges, id_bound=bound)
        unselected = (blocks[b].last, seq[0].first)
        keep = [e for e in g.edges if e != tuple(sorted(unselected))]
        g = g.with_selected_edges(keep)
    else:
        raise PlsError(f"unknown variant {variant!r}")
    return PermInstance(perm=tuple(perm), variant=variant, blocks=tuple(blocks), order=order, graph=g)


def spliced_instance(
    run_blocks: Sequence[LabeledBlock],
    variant: str,
    id_bound: int,
) -> tuple[Graph, LocalProof]:
    """Close a run of labeled blocks into a cycle (the attack's no-instance)."""
    seq = [lb.block for lb in run_blocks]
    edges = _cycle_edges(seq)
    if variant in ("alos", "leader"):
        g = build_graph(edges, inputs={v: "0" for blk in seq for v in blk.ids}, id_bound=id_bound)
    elif variant == "odd":
        g = build_graph(edges, inputs={v: "" for blk in seq for v in blk.ids}, id_bound=id_bound)
    elif variant == "st":
        g = build_graph(edges, id_bound=id_bound)
        g = g.with_selected_edges(g.edges)
    else:
        raise PlsError(f"unknown variant {variant!r}")
    width = len(run_blocks[0].labels[0]) if run_blocks[0].labels else 0
    labels = {v: lab for lb in run_blocks for v, lab in zip(lb.block.ids, lb.labels)}
    return g, LocalProof(width=width, labels=labels)


# --------------------------------------------------------------------------
# Junctions and the labeled block graph
# --------------------------------------------------------------------------


def _junction_graph(lb1: LabeledBlock, lb2: LabeledBlock, id_bound: int) -> tuple[Graph, LocalProof]:
    ids = lb1.block.ids + lb2.block.ids
    edges = []
    for blk in (lb1.block, lb2.block):
        edges.extend((blk.ids[i], blk.ids[i + 1]) for i in range(len(blk.ids) - 1))
    edges.append((lb1.block.last, lb2.block.first))
    inputs = {}
    for lb in (lb1, lb2):
        for v, s in zip(lb.block.ids, lb.inputs):
            inputs[v] = s
    g = build_graph(edges, inputs=inputs, nodes=ids, id_bound=id_bound)
    width = len(lb1.labels[0]) if lb1.labels else 0
    labels = {v: lab for lb in (lb1, lb2) for v, lab in zip(lb.block.ids, lb.labels)}
    return g, LocalProof(width=width, labels=labels)


def junction_accepts(
    scheme: Scheme,
    lb1: LabeledBlock,
    lb2: LabeledBlock,
    global_cert: str = "",
    id_bound: Optional[int] = None,
) -> bool:
    """Do all nodes within distance r of the connecting edge accept when lb1
    is followed by lb2? Context beyond r cannot matter: the evaluated nodes'
    views already lie inside the two blocks, so no padding is required."""
    r = lb1.block.r
    if lb2.block.r != r or scheme.radius != r:
        raise RadiusMismatch(f"blocks have r={r}, scheme radius {scheme.radius}")
    bound = id_bound or default_id_bound(len(lb1.block.ids) + len(lb2.block.ids))
    g, local = _junction_graph(lb1, lb2, bound)
    proof = MixedProof(local=local, global_part=GlobalProof(global_cert))
    probes = lb1.block.ids[r:] + lb2.block.ids[: r + 1]
    return all(scheme.verifier(view(g, v, r, proof)) for v in probes)


def lay_blocks_on_path(
    scheme: Scheme,
    labeled: Sequence[LabeledBlock],
    global_cert: str = "",
    id_bound: Optional[int] = None,
) -> dict[int, bool]:
    """Lay labeled blocks on a path and evaluate every node (fragment semantics)."""
    seq = [lb.block for lb in labeled]
    edges = []
    for blk in seq:
        edges.extend((blk.ids[i], blk.ids[i + 1]) for i in range(len(blk.ids) - 1))
    for i in range(len(seq) - 1):
        edges.append((seq[i].last, seq[i + 1].first))
    inputs = {v: s for lb in labeled for v, s in zip(lb.block.ids, lb.inputs)}
    bound = id_bound or default_id_bound(sum(len(b.ids) for b in seq))
    g = build_graph(edges, inputs=inputs, id_bound=bound)
    width = len(labeled[0].labels[0]) if labeled[0].labels else 0
    labels = {v: lab for lb in labeled for v, lab in zip(lb.block.ids, lb.labels)}
    proof = MixedProof(local=LocalProof(width=width, labels=labels), global_part=GlobalProof(global_cert))
    return {v: bool(scheme.verifier(view(g, v, scheme.radius, proof))) for v in g.node_ids}


@dataclass
class BlockGraph:
    """Directed graph on labeled blocks: edges are accepting junctions."""

    vertices: tuple[LabeledBlock, ...]
    edges: frozenset[tuple[int, int]]  # vertex index pairs

    def successors(self, i: int) -> list[int]:
        return [j for (a, j) in self.edges if a == i]


def _all_labelings(block: Block, f: int, variant: str, special: bool) -> Iterator[LabeledBlock]:
    size = len(block.ids)
    for code in range(1 << (f * size)):
        labels = tuple(format((code >> (f * i)) & ((1 << f) - 1), f"0{f}b") if f else "" for i in range(size))
        yield labeled_block(block, labels, variant, special)


def build_block_graph(
    scheme: Scheme,
    b: int,
    r: int,
    f: int,
    global_cert: str = "",
    variant: str = "alos",
) -> BlockGraph:
    """The full junction relation over all 2^(f(2r+1)) labelings per block."""
    blocks = make_blocks(b, r)
    per_block = 1 << (f * (2 * r + 1))
    if (b + 1) * per_block > BLOCK_GRAPH_CAP:
        raise BudgetTooLarge(f"{(b + 1) * per_block} labeled blocks exceed cap {BLOCK_GRAPH_CAP}")
    bound = default_id_bound((b + 1) * (2 * r + 1))
    vertices: list[LabeledBlock] = []
    for blk in blocks:
        vertices.extend(_all_labelings(blk, f, variant, special=blk.index == b))
    edges = set()
    for i, lb1 in enumerate(vertices):
        for j, lb2 in enumerate(vertices):
            if lb1.block.index == lb2.block.index:
                continue
            if junction_accepts(scheme, lb1, lb2, global_cert, bound):
                edges.add((i, j))
    return BlockGraph(vertices=tuple(vertices), edges=frozenset(edges))


# --------------------------------------------------------------------------
# Counting bound
# --------------------------------------------------------------------------


def counting_bound(f: int, g: int, b: int, r: int, variant: str = "alos") -> bool:
    """True iff the pigeonhole fires: fewer labeled-block sets than instances.

    Exact big-integer arithmetic: 2^(f(2r+1)b + g) < b!  (odd variant:
    ((b/2)!)^2 orderings satisfy the coloring condition)."""
    if variant == "odd":
        if b % 2:
            raise PlsError("odd variant counts require even b")
        instances = factorial(b // 2) ** 2
    else:
        instances = factorial(b)
    return (1 << (f * (2 * r + 1) * b + g)) < instances


# --------------------------------------------------------------------------
# Fooling attacks
# --------------------------------------------------------------------------


@dataclass
class AttackReport:
    scheme: str
    variant: str
    b: int
    r: int
    f: int
    g_budget: int
    outcome: str  # counterexample | not_found
    pigeonhole_guaranteed: bool
    completeness_failures: int = 0
    harvested: int = 0
    certificate: Optional[str] = None
    colliding_permutations: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    back_edge: Optional[tuple[int, int]] = None
    spliced_cycle: Optional[tuple[int, ...]] = None
    replay_decisions: Optional[dict[int, bool]] = None
    counterexample_graph: Optional[Graph] = None
    counterexample_proof: Optional[Proof] = None

    @property
    def found(self) -> bool:
        return self.outcome == "counterexample"

    def to_dict(self) -> dict:
        d = {
            "scheme": self.scheme,
            "variant": self.variant,
            "b": self.b,
            "r": self.r,
            "f": self.f,
            "g_budget": self.g_budget,
            "outcome": self.outcome,
            "pigeonhole_guaranteed": self.pigeonhole_guaranteed,
            "completeness_failures": self.completeness_failures,
            "harvested": self.harvested,
            "certificate": self.certificate,
            "colliding_permutations": [list(p) for p in self.colliding_permutations]
            if self.colliding_permutations
            else None,
            "back_edge": list(self.back_edge) if self.back_edge else None,
            "spliced_cycle": list(self.spliced_cycle) if self.spliced_cycle else None,
            "replay_decisions": {str(k): v for k, v in self.replay_decisions.items()}
            if self.replay_decisions
            else None,
        }
        if self.counterexample_graph is not None:
            d["counterexample_instance"] = self.counterexample_graph.to_dict()
        if self.counterexample_proof is not None:
            d["counterexample_proof"] = proof_to_dict(self.counterexample_proof)
        return d


def _split_proof(scheme: Scheme, proof: Proof) -> tuple[Optional[LocalProof], str]:
    if isinstance(proof, MixedProof):
        return proof.local, proof.global_part.bits
    if isinstance(proof, LocalProof):
        return proof, ""
    return None, proof.bits


def _alternating_orders(b: int) -> Iterator[tuple[int, ...]]:
    """Orderings of the b colored blocks that alternate white/black; whites are
    blocks 0..b/2-1, blacks the rest. Both phases are enumerated."""
    whites = list(range(b // 2))
    blacks = list(range(b // 2, b))
    for first, second in ((whites, blacks), (blacks, whites)):
        for fp in permutations(first):
            for sp in permutations(second):
                seq: list[int] = []
                for x, y in zip(fp, sp):
                    seq.extend((x, y))
                yield tuple(seq)


def _attack(
    scheme: Scheme,
    b: int,
    r: int,
    f: int,
    g_budget: int,
    variant: str,
    orders: Iterable[Sequence[int]],
) -> AttackReport:
    if scheme.radius != r:
        raise RadiusMismatch(f"scheme radius {scheme.radius} != r={r}")
    blocks = make_blocks(b, r)
    bound = default_id_bound((b + 1) * (2 * r + 1))
    report = AttackReport(
        scheme=scheme.name,
        variant=variant,
        b=b,
        r=r,
        f=f,
        g_budget=g_budget,
        outcome="not_found",
        pigeonhole_guaranteed=counting_bound(f, g_budget, b, r, variant),
    )
    # harvest: per global certificate, the labeled-block set of each accepted
    # instance; a repeated set triggers the back-edge splice
    seen: dict[tuple[str, frozenset], tuple[tuple[int, ...], dict[int, tuple[str, ...]]]] = {}
    for perm in orders:
        inst = permuted_instance(perm, blocks, variant, bound)
        try:
            proof = scheme.prover(inst.graph)
        except PlsError:
            report.completeness_failures += 1
            continue
        local, gbits = _split_proof(scheme, proof)
        width = local.width if local is not None else 0
        if width != f:
            raise PlsError(f"prover labels have width {width}, attack run declared f={f}")
        if len(gbits) > g_budget:
            raise PlsError(f"prover global part has {len(gbits)} bits, budget is {g_budget}")
        if not run(scheme, inst.graph, proof).accept:
            report.completeness_failures += 1
            continue
        report.harvested += 1
        by_block: dict[int, tuple[str, ...]] = {
            blk.index: tuple(local.labels[v] for v in blk.ids) if local is not None else tuple("" for _ in blk.ids)
            for blk in blocks
        }
        s_set = frozenset((k, labs) for k, labs in by_block.items())
        key = (gbits, s_set)
        if key in seen:
            prev_perm, prev_labels = seen[key]
            assert prev_labels == by_block
            _fill_counterexample(report, scheme, blocks, bound, variant, gbits, by_block, prev_perm, perm)
            return report
        seen[key] = (tuple(perm), by_block)
    return report


def _fill_counterexample(
    report: AttackReport,
    scheme: Scheme,
    blocks: Sequence[Block],
    bound: int,
    variant: str,
    gbits: str,
    labels_by_block: Mapping[int, tuple[str, ...]],
    perm_a: Sequence[int],
    perm_b: Sequence[int],
) -> None:
    tau = {blk: pos for pos, blk in enumerate(perm_a)}
    back = None
    for i in range(len(perm_b) - 1):
        if tau[perm_b[i]] > tau[perm_b[i + 1]]:
            back = (perm_b[i], perm_b[i + 1])
            break
    if back is None:
        raise PlsError("colliding permutations without a back edge (internal error)")
    big, small = back
    run_indices = list(perm_a[tau[small] : tau[big] + 1])
    labeled = [
        labeled_block(blocks[k], labels_by_block[k], variant, special=False) for k in run_indices
    ]
    g, local = spliced_instance(labeled, variant, bound)
    proof: Proof
    if scheme.regime == "local":
        proof = local
    elif scheme.regime == "global":
        proof = GlobalProof(gbits)
    else:
        proof = MixedProof(local=local, global_part=GlobalProof(gbits))
    result = run(scheme, g, proof)
    if not result.accept:
        raise PlsError("spliced cycle did not replay to accept (internal error)")
    if scheme.language(g):
        raise PlsError("spliced cycle is unexpectedly a yes-instance (internal error)")
    report.outcome = "counterexample"
    report.certificate = gbits
    report.colliding_permutations = (tuple(perm_a), tuple(perm_b))
    report.back_edge = (big, small)
    report.spliced_cycle = tuple(v for k in run_indices for v in blocks[k].ids)
    report.replay_decisions = dict(result.decisions)
    report.counterexample_graph = g
    report.counterexample_proof = proof


def fooling_attack(
    scheme: Scheme,
    b: int,
    r: int,
    f: int,
    g_budget: int = 0,
    variant: str = "alos",
    max_orders: int = 5000,
    seed: int = 0,
) -> AttackReport:
    """Harvest accepted permuted instances, find a labeled-block collision,
    splice the short unselected cycle, and replay it."""
    if variant == "odd":
        raise PlsError("use odd_cycle_attack for the colored variant")
    if b <= 6:
        orders: Iterable[Sequence[int]] = permutations(range(b))
    else:
        rng = random.Random(f"fool:{seed}")
        pool = []
        for _ in range(max_orders):
            p = list(range(b))
            rng.shuffle(p)
            pool.append(tuple(p))
        orders = dict.fromkeys(pool)  # dedupe, keep order
    return _attack(scheme, b, r, f, g_budget, variant, orders)


def odd_cycle_attack(
    scheme: Scheme,
    b: int,
    r: int,
    f: int,
    g_budget: int = 0,
) -> AttackReport:
    """The colored refinement: alternating-colored yes-instances; a back edge
    splices an even (hence no-instance) block cycle."""
    if b % 2:
        raise PlsError("the odd-cycle attack needs even b")
    return _attack(scheme, b, r, f, g_budget, "odd", _alternating_orders(b))


# --------------------------------------------------------------------------
# Bipartiteness: certificate-induced block colorings
# --------------------------------------------------------------------------


def enumerate_block_cycles(num_blocks: int, max_blocks: int = 6) -> Iterator[tuple[int, ...]]:
    """Block-based cycles as index tuples, smallest member first (each cyclic
    order once; both directions are distinct instances)."""
    for m in range(2, min(max_blocks, num_blocks) + 1):
        for subset in combinations(range(num_blocks), m):
            first = subset[0]
            for rest in permutations(subset[1:]):
                yield (first,) + rest


def block_cycle_graph(blocks: Sequence[Block], order: Sequence[int], id_bound: int) -> Graph:
    seq = [blocks[k] for k in order]
    edges = _cycle_edges(seq)
    return build_graph(edges, inputs={v: "" for blk in seq for v in blk.ids}, id_bound=id_bound)


def build_Gc(
    scheme: Scheme,
    certificate: str,
    blocks: Sequence[Block],
    max_cycles: int = 6,
) -> dict[int, set[int]]:
    """Directed graph on blocks: (i, j) present iff some accepted block-based
    cycle has block i immediately followed by block j under `certificate`."""
    total = sum(
        _count_orders(len(blocks), m) for m in range(2, min(max_cycles, len(blocks)) + 1)
    )
    if total > GC_CYCLE_CAP:
        raise BudgetTooLarge(f"{total} block-based cycles exceed cap {GC_CYCLE_CAP}")
    bound = default_id_bound(len(blocks) * len(blocks[0].ids))
    gc: dict[int, set[int]] = {blk.index: set() for blk in blocks}
    proof = GlobalProof(certificate)
    for order in enumerate_block_cycles(len(blocks), max_cycles):
        g = block_cycle_graph(blocks, order, bound)
        if _accepts(scheme, g, proof):
            m = len(order)
            for i in range(m):
                gc[order[i]].add(order[(i + 1) % m])
    return gc


def _count_orders(n: int, m: int) -> int:
    c = 1
    for i in range(m):
        c = c * (n - i)
    return c // m


@dataclass
class GcAnalysis:
    no_odd_directed_cycle: bool
    components_strongly_connected: bool
    block_coloring: Optional[dict[int, int]]

    @property
    def ok(self) -> bool:
        return self.block_coloring is not None


def _simple_directed_cycles(gc: Mapping[int, Iterable[int]]) -> Iterator[tuple[int, ...]]:
    verts = sorted(gc)
    adj = {v: sorted(gc[v]) for v in verts}
    for start in verts:
        stack = [(start, iter(adj[start]))]
        on_path = [start]
        on_set = {start}
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u < start:
                    continue
                if u == start:
                    yield tuple(on_path)
                    continue
                if u not in on_set:
                    stack.append((u, iter(adj[u])))
                    on_path.append(u)
                    on_set.add(u)
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                on_set.discard(on_path.pop())


def _strongly_connected_components(gc: Mapping[int, Iterable[int]]) -> list[frozenset[int]]:
    verts = sorted(gc)
    adj = {v: sorted(gc[v]) for v in verts}
    radj: dict[int, list[int]] = {v: [] for v in verts}
    for v in verts:
        for u in adj[v]:
            radj[u].append(v)
    order: list[int] = []
    visited: set[int] = set()
    for s in verts:
        if s in visited:
            continue
        stack = [(s, iter(adj[s]))]
        visited.add(s)
        while stack:
            v, it = stack[-1]
            pushed = False
            for u in it:
                if u not in visited:
                    visited.add(u)
                    stack.append((u, iter(adj[u])))
                    pushed = True
                    break
            if not pushed:
                order.append(stack.pop()[0])
    comps = []
    assigned: set[int] = set()
    for s in reversed(order):
        if s in assigned:
            continue
        comp = {s}
        frontier = [s]
        assigned.add(s)
        while frontier:
            v = frontier.pop()
            for u in radj[v]:
                if u not in assigned:
                    assigned.add(u)
                    comp.add(u)
                    frontier.append(u)
        comps.append(frozenset(comp))
    return comps


def _weak_components(gc: Mapping[int, Iterable[int]]) -> list[frozenset[int]]:
    und: dict[int, set[int]] = {v: set() for v in gc}
    for v, outs in gc.items():
        for u in outs:
            und[v].add(u)
            und[u].add(v)
    comps = []
    left = set(und)
    while left:
        s = min(left)
        comp = {s}
        frontier = [s]
        while frontier:
            v = frontier.pop()
            for u in und[v]:
                if u not in comp:
                    comp.add(u)
                    frontier.append(u)
        comps.append(frozenset(comp))
        left -= comp
    return comps


def analyze_Gc(gc: Mapping[int, Iterable[int]]) -> GcAnalysis:
    """Exact checks: no directed odd cycle; every weak component strongly
    connected. When both hold the underlying graph is bipartite and the
    2-coloring is the extracted f_c."""
    no_odd = all(len(c) % 2 == 0 for c in _simple_directed_cycles(gc))
    sccs = {frozenset(c) for c in _strongly_connected_components(gc)}
    weak = _weak_components(gc)
    strong_ok = all(c in sccs for c in weak)
    coloring: Optional[dict[int, int]] = None
    if no_odd and strong_ok:
        und: dict[int, set[int]] = {v: set() for v in gc}
        for v, outs in gc.items():
            for u in outs:
                und[v].add(u)
                und[u].add(v)
        coloring = {}
        for comp in weak:
            root = min(comp)
            coloring[root] = 0
            frontier = [root]
            while frontier:
                v = frontier.pop()
                for u in und[v]:
                    if u not in coloring:
                        coloring[u] = 1 - coloring[v]
                        frontier.append(u)
                    elif coloring[u] == coloring[v]:
                        raise PlsError("underlying graph not bipartite despite passing checks")
    return GcAnalysis(
        no_odd_directed_cycle=no_odd,
        components_strongly_connected=strong_ok,
        block_coloring=coloring,
    )


def node_coloring(analysis: GcAnalysis, blocks: Sequence[Block]) -> dict[int, int]:
    """Lift the block coloring to node IDs: alternate within each block."""
    if analysis.block_coloring is None:
        raise MissingColoring("analysis produced no coloring")
    out = {}
    for blk in blocks:
        base = analysis.block_coloring.get(blk.index, 0)
        for pos, v in enumerate(blk.ids):
            out[v] = base ^ (pos & 1)
    return out


@dataclass
class ColoringTable:
    blocks: tuple[int, ...]
    rows: dict[str, tuple[int, ...]]  # certificate -> center color per block
    probe_n: int
    balanced_rows_present: bool
    columns_distinct: bool


def coloring_table(
    scheme: Scheme,
    certificates: Sequence[str],
    blocks: Sequence[Block],
    probe_n: Optional[int] = None,
    max_cycles: int = 6,
) -> ColoringTable:
    """The color table: cell (certificate, block) = extracted color of the
    block's center node. Checks: every balanced probe string appears as some
    row prefix (up to complement); no two columns are equal."""
    rows: dict[str, tuple[int, ...]] = {}
    for cert in certificates:
        gc = build_Gc(scheme, cert, blocks, max_cycles)
        analysis = analyze_Gc(gc)
        if not analysis.ok:
            raise MissingColoring(f"certificate {cert!r} admits no consistent coloring")
        colors = node_coloring(analysis, blocks)
        rows[cert] = tuple(colors[blk.center] for blk in blocks)
    n = probe_n if probe_n is not None else len(blocks) - (len(blocks) % 2)
    balanced_ok = True
    if n >= 2:
        for ones in combinations(range(n), n // 2):
            s = tuple(1 if i in ones else 0 for i in range(n))
            comp = tuple(1 - c for c in s)
            if not any(row[:n] in (s, comp) for row in rows.values()):
                balanced_ok = False
                break
    cols = [tuple(row[i] for row in rows.values()) for i in range(len(blocks))]
    distinct = len(set(cols)) == len(cols)
    return ColoringTable(
        blocks=tuple(blk.index for blk in blocks),
        rows=rows,
        probe_n=n,
        balanced_rows_present=balanced_ok,
        columns_distinct=distinct,
    )


def parity_only_bip_scheme(r: int = 1) -> Scheme:
    """A verifier that cannot tell same-parity blocks apart: it accepts iff
    adjacent nodes sit in opposite-parity blocks, ignoring the certificate.
    It rejects some even (yes) block cycles, which is exactly why its color
    table has equal columns."""
    size = 2 * r + 1

    def verifier(v: View) -> bool:
        mine = ((v.center - 1) // size) % 2
        return all((((u - 1) // size) % 2) != mine for u in v.neighbors())

    def prover(g: Graph) -> GlobalProof:
        return GlobalProof("")

    return Scheme(
        name="parity-only-bip",
        language=LANGUAGES["bipartite"],
        regime="global",
        radius=r,
        prover=prover,
        verifier=verifier,
        global_lengths=lambda g: (0,),
    )
