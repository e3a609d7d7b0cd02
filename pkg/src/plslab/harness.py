"""Completeness/soundness experiments over instance corpora.

Certificate enumeration order (makes counterexamples reproducible): local
assignments are little-endian integers over the concatenated label vector
with nodes sorted by ID; searches are cumulative over uniform widths
0..W and global lengths in ascending order, so decide_nondet is monotone in
the budget. The exhaustive searcher is a pruned depth-first walk that
evaluates a node's verifier as soon as its ball is fully labeled; it visits
the same space as brute-force enumeration and returns the lowest-index
counterexample.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import BudgetTooLarge, ParseError, PlsError, RegimeMismatch
from .graphs import (
    Edge,
    Graph,
    View,
    build_graph,
    canonical_graphs,
    default_id_bound,
    graph_from_dict,
    graph_from_encoding,
    view,
)
from .languages import UnionFind, kruskal_mst
from .proofs import (
    GlobalProof,
    LocalProof,
    MixedProof,
    Proof,
    encode_uint,
    id_width,
    mixed_size,
    price_of_locality,
    proof_to_dict,
    SizeReport,
)
from .schemes import Scheme, as_mixed, get_scheme, globalized, localized

EXHAUSTIVE_CAP = 2 ** 24


# --------------------------------------------------------------------------
# Running a scheme on an instance
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RunResult:
    decisions: Mapping[int, bool]
    accept: bool

    def rejecting(self) -> tuple[int, ...]:
        return tuple(v for v, d in sorted(self.decisions.items()) if not d)


def _check_regime(scheme: Scheme, proof: Proof) -> None:
    expected = {"local": LocalProof, "global": GlobalProof, "mixed": MixedProof}[scheme.regime]
    if not isinstance(proof, expected):
        raise RegimeMismatch(f"{scheme.name} expects a {scheme.regime} proof, got {type(proof).__name__}")


def run(scheme: Scheme, g: Graph, proof: Proof) -> RunResult:
    """Evaluate every node's verifier; the system accepts iff all nodes do."""
    _check_regime(scheme, proof)
    decisions = {}
    for v in g.node_ids:
        decisions[v] = bool(scheme.verifier(view(g, v, scheme.radius, proof)))
    return RunResult(decisions=decisions, accept=all(decisions.values()))


def _accepts(scheme: Scheme, g: Graph, proof: Proof) -> bool:
    for v in g.node_ids:
        if not scheme.verifier(view(g, v, scheme.radius, proof)):
            return False
    return True


# --------------------------------------------------------------------------
# Completeness
# --------------------------------------------------------------------------


@dataclass
class CompletenessReport:
    scheme: str
    checked: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
        }


def completeness(scheme: Scheme, corpus: Iterable[Graph]) -> CompletenessReport:
    """Honest prover output must make every node accept on every yes-instance."""
    report = CompletenessReport(scheme=scheme.name, checked=0)
    for g in corpus:
        if not scheme.language(g):
            continue
        report.checked += 1
        try:
            proof = scheme.prover(g)
            result = run(scheme, g, proof)
        except PlsError as exc:
            report.failures.append({"graph": g.to_dict(), "error": str(exc)})
            continue
        if not result.accept:
            report.failures.append({"graph": g.to_dict(), "rejecting": list(result.rejecting())})
    return report


# --------------------------------------------------------------------------
# Certificate space + search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    """Search budget. Widths/lengths are cumulative upper limits; None means
    the scheme's declared shape for the instance."""

    local_width: Optional[int] = None
    global_bits: Optional[int] = None
    max_space: int = EXHAUSTIVE_CAP
    sample: bool = False
    samples: int = 10 ** 6
    seed: int = 0


@dataclass(frozen=True)
class CertSpace:
    widths: tuple[int, ...]      # uniform local widths to enumerate
    lengths: tuple[int, ...]     # global lengths to enumerate
    has_local: bool
    has_global: bool

    def size(self, n: int) -> int:
        loc = sum(1 << (w * n) for w in self.widths) if self.has_local else 1
        glo = sum(1 << l for l in self.lengths) if self.has_global else 1
        return loc * glo


def cert_space(scheme: Scheme, g: Graph, budget: Budget = Budget()) -> CertSpace:
    has_local = scheme.regime in ("local", "mixed")
    has_global = scheme.regime in ("global", "mixed")
    widths: tuple[int, ...] = ()
    lengths: tuple[int, ...] = ()
    if has_local:
        top = budget.local_width if budget.local_width is not None else scheme.local_width(g)
        widths = tuple(range(top + 1))
    if has_global:
        if budget.global_bits is not None:
            lengths = tuple(range(budget.global_bits + 1))
        else:
            lengths = tuple(sorted(set(scheme.global_lengths(g))))
    return CertSpace(widths=widths, lengths=lengths, has_local=has_local, has_global=has_global)


def _local_dfs(
    scheme: Scheme,
    g: Graph,
    width: int,
    global_bits: Optional[str],
    top_range: Optional[tuple[int, int]] = None,
) -> Optional[LocalProof]:
    """Lowest little-endian accepted assignment of uniform `width` labels.

    Assigns nodes from the most significant position down, evaluating each
    node once its whole ball is labeled, and prunes rejected prefixes.
    """
    ids = list(g.node_ids)
    n = len(ids)
    pos = {u: i for i, u in enumerate(ids)}
    balls = []
    base = []
    for u in ids:
        w = view(g, u, scheme.radius)
        balls.append(tuple(sorted(pos[x] for x in w.graph.node_ids)))
        base.append(w)
    ready_at: list[list[int]] = [[] for _ in range(n)]
    for i, ball in enumerate(balls):
        ready_at[min(ball)].append(i)

    nvals = 1 << width
    vals = [0] * n
    memo: dict = {}
    verifier = scheme.verifier

    def eval_node(i: int) -> bool:
        key = (i, tuple(vals[q] for q in balls[i]))
        hit = memo.get(key)
        if hit is None:
            labels = {ids[q]: encode_uint(vals[q], width) for q in balls[i]}
            hit = bool(
                verifier(
                    View(
                        center=ids[i],
                        radius=scheme.radius,
                        graph=base[i].graph,
                        labels=labels,
                        global_bits=global_bits,
                    )
                )
            )
            memo[key] = hit
        return hit

    found: Optional[list[int]] = None

    def rec(p: int) -> bool:
        nonlocal found
        if p < 0:
            found = vals.copy()
            return True
        lo, hi = (0, nvals)
        if top_range is not None and p == n - 1:
            lo, hi = top_range
        for val in range(lo, hi):
            vals[p] = val
            if all(eval_node(i) for i in ready_at[p]):
                if rec(p - 1):
                    return True
        vals[p] = 0
        return False

    rec(n - 1)
    if found is None:
        return None
    return LocalProof(width=width, labels={ids[i]: encode_uint(found[i], width) for i in range(n)})


def _compose_proof(scheme: Scheme, local: Optional[LocalProof], gbits: Optional[str]) -> Proof:
    if scheme.regime == "local":
        assert local is not None
        return local
    if scheme.regime == "global":
        return GlobalProof(gbits or "")
    assert local is not None
    return MixedProof(local=local, global_part=GlobalProof(gbits or ""))


def _exhaustive_search(
    scheme: Scheme, g: Graph, space: CertSpace, workers: int = 1
) -> Optional[Proof]:
    """First accepted certificate in enumeration order, or None."""

    def global_iter() -> Iterator[Optional[str]]:
        if space.has_global:
            for ln in space.lengths:
                for val in range(1 << ln):
                    yield encode_uint(val, ln)
        else:
            yield None

    if not space.has_local:
        for gbits in global_iter():
            proof = GlobalProof(gbits or "")
            if _accepts(scheme, g, proof):
                return proof
        return None

    for width in space.widths:
        for gbits in global_iter():
            local = _search_width_chunked(scheme, g, width, gbits, workers)
            if local is not None:
                return _compose_proof(scheme, local, gbits)
    return None


def _search_width_chunked(
    scheme: Scheme, g: Graph, width: int, gbits: Optional[str], workers: int
) -> Optional[LocalProof]:
    n = g.n
    nvals = 1 << width
    if workers <= 1 or nvals < workers or n == 0:
        return _local_dfs(scheme, g, width, gbits)
    bounds = [(i * nvals) // workers for i in range(workers)] + [nvals]
    jobs = [(bounds[i], bounds[i + 1]) for i in range(workers)]
    state = json.dumps(_graph_state(g), sort_keys=True)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(
            pool.map(
                _dfs_chunk_worker,
                [(scheme.name, state, scheme.radius, width, gbits, lo, hi) for (lo, hi) in jobs],
            )
        )
    for res in results:  # ascending chunk order: first hit is the minimum
        if res is not None:
            return LocalProof(width=width, labels={int(k): v for k, v in res.items()})
    return None


def _graph_state(g: Graph) -> dict:
    return {"graph": g.to_dict(), "id_bound": g.id_bound, "weight_bound": g.weight_bound}


def _graph_from_state(state: dict) -> Graph:
    base = graph_from_dict(state["graph"])
    return Graph(
        base.node_ids,
        {v: base.input(v) for v in base.node_ids},
        base.edges,
        base.weight_map() or None,
        state["id_bound"],
        state["weight_bound"],
    )


def _dfs_chunk_worker(args) -> Optional[dict]:
    scheme_name, state, _radius, width, gbits, lo, hi = args
    scheme = get_scheme(scheme_name)
    g = _graph_from_state(json.loads(state))
    found = _local_dfs(scheme, g, width, gbits, top_range=(lo, hi))
    if found is None:
        return None
    return {str(k): v for k, v in found.labels.items()}


def _sampled_search(
    scheme: Scheme, g: Graph, space: CertSpace, samples: int, seed: int
) -> tuple[Optional[Proof], int]:
    """Seeded uniform samples over the cumulative certificate space."""
    n = g.n
    layer_sizes = []
    if space.has_local and space.has_global:
        cells = [(w, l) for w in space.widths for l in space.lengths]
        layer_sizes = [(1 << (w * n)) * (1 << l) for (w, l) in cells]
    elif space.has_local:
        cells = [(w, None) for w in space.widths]
        layer_sizes = [1 << (w * n) for w in space.widths]
    else:
        cells = [(None, l) for l in space.lengths]
        layer_sizes = [1 << l for l in space.lengths]
    total = sum(layer_sizes)
    for idx in range(samples):
        rng = random.Random(f"{seed}:{idx}")
        pick = rng.randrange(total)
        ci = 0
        while pick >= layer_sizes[ci]:
            pick -= layer_sizes[ci]
            ci += 1
        w, l = cells[ci]
        local = None
        gbits = None
        if w is not None:
            local = LocalProof(
                width=w, labels={u: encode_uint(rng.getrandbits(w) if w else 0, w) for u in g.node_ids}
            )
        if l is not None:
            gbits = encode_uint(rng.getrandbits(l) if l else 0, l)
        proof = _compose_proof(scheme, local, gbits)
        if _accepts(scheme, g, proof):
            return proof, idx
    return None, samples


# --------------------------------------------------------------------------
# Soundness search and nondeterministic decision
# --------------------------------------------------------------------------


@dataclass
class SoundnessReport:
    scheme: str
    graph: Graph
    space: CertSpace
    space_size: int
    mode: str  # exhaustive | sampled
    counterexample: Optional[Proof]
    samples_drawn: int = 0

    @property
    def safe(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "instance": self.graph.to_dict(),
            "budget": {
                "local_widths": list(self.space.widths),
                "global_lengths": list(self.space.lengths),
                "space_size": self.space_size,
            },
            "mode": self.mode,
            "outcome": "safe" if self.safe else "counterexample",
            "counterexample": None if self.safe else proof_to_dict(self.counterexample),
            "samples_drawn": self.samples_drawn,
        }


def soundness_search(
    scheme: Scheme, g: Graph, budget: Budget = Budget(), workers: int = 1
) -> SoundnessReport:
    """Search the certificate space of a no-instance for an accepting proof."""
    if scheme.language(g):
        raise PlsError("soundness_search expects a no-instance")
    space = cert_space(scheme, g, budget)
    size = space.size(g.n)
    if budget.sample:
        proof, drawn = _sampled_search(scheme, g, space, budget.samples, budget.seed)
        return SoundnessReport(scheme.name, g, space, size, "sampled", proof, drawn)
    if size > budget.max_space:
        raise BudgetTooLarge(
            f"certificate space {size} exceeds {budget.max_space}; pass sample=True"
        )
    proof = _exhaustive_search(scheme, g, space, workers=workers)
    return SoundnessReport(scheme.name, g, space, size, "exhaustive", proof)


def replay(scheme: Scheme, report: SoundnessReport) -> bool:
    """A counterexample must re-run to overall accept on its no-instance."""
    if report.counterexample is None:
        return True
    return run(scheme, report.graph, report.counterexample).accept


def decide_nondet(scheme: Scheme, g: Graph, budget: Budget = Budget(), workers: int = 1) -> bool:
    """Brute-force level-1 decision: does some certificate make all accept?"""
    if scheme.certificate_family is not None:
        return any(_accepts(scheme, g, p) for p in scheme.certificate_family(g))
    space = cert_space(scheme, g, budget)
    size = space.size(g.n)
    if budget.sample:
        proof, _ = _sampled_search(scheme, g, space, budget.samples, budget.seed)
        return proof is not None
    if size > budget.max_space:
        raise BudgetTooLarge(f"certificate space {size} exceeds {budget.max_space}")
    return _exhaustive_search(scheme, g, space, workers=workers) is not None


def first_unsafe_width(
    scheme_for_width: Callable[[int], Scheme],
    g: Graph,
    widths: Sequence[int],
    budget: Budget = Budget(),
) -> Optional[int]:
    """Record the smallest width at which soundness breaks, if any."""
    for w in widths:
        scheme = scheme_for_width(w)
        report = soundness_search(scheme, g, budget)
        if not report.safe:
            return w
    return None


# --------------------------------------------------------------------------
# Corpora
# --------------------------------------------------------------------------


def cycle_graph(n: int, id_bound: Optional[int] = None) -> Graph:
    if n < 3:
        raise ParseError("cycles need n >= 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return build_graph(edges, inputs={v: "0" for v in range(1, n + 1)},
                       id_bound=id_bound or default_id_bound(n))


def path_graph(n: int, id_bound: Optional[int] = None) -> Graph:
    edges = [(i, i + 1) for i in range(1, n)]
    return build_graph(edges, inputs={v: "0" for v in range(1, n + 1)},
                       nodes=range(1, n + 1),
                       id_bound=id_bound or default_id_bound(n))


def select_nodes(g: Graph, chosen: Iterable[int]) -> Graph:
    chosen = set(chosen)
    return g.with_inputs({v: ("1" if v in chosen else "0") for v in g.node_ids})


def all_selection_patterns(g: Graph) -> Iterator[Graph]:
    ids = g.node_ids
    for mask in range(1 << g.n):
        yield select_nodes(g, (ids[i] for i in range(g.n) if (mask >> i) & 1))


def all_edge_mark_patterns(g: Graph) -> Iterator[Graph]:
    edges = sorted(g.edges)
    for mask in range(1 << len(edges)):
        yield g.with_selected_edges(e for i, e in enumerate(edges) if (mask >> i) & 1)


def spanning_tree_selections(g: Graph) -> Iterator[Graph]:
    edges = sorted(g.edges)
    n = g.n
    for subset in combinations(edges, n - 1):
        uf = UnionFind(g.node_ids)
        if all(uf.union(u, v) for (u, v) in subset):
            yield g.with_selected_edges(subset)


def connected_class_graphs(n: int, id_bound: Optional[int] = None) -> Iterator[Graph]:
    """One representative per isomorphism class of connected n-node graphs."""
    bound = id_bound or default_id_bound(n)
    for enc in canonical_graphs(n):
        g = graph_from_encoding(enc, range(1, n + 1), id_bound=bound)
        g = g.with_inputs({v: "0" for v in g.node_ids})
        if g.is_connected():
            yield g


def random_connected_weighted(n: int, seed: int, extra_edge_prob: float = 0.4) -> Graph:
    """Seeded random connected graph with distinct weights (a permutation of 1..m)."""
    rng = random.Random(f"weighted:{seed}")
    ids = list(range(1, n + 1))
    edges: list[Edge] = []
    order = ids[:]
    rng.shuffle(order)
    for i in range(1, n):
        edges.append((order[rng.randrange(i)], order[i]))
    for u, v in combinations(ids, 2):
        e = (min(u, v), max(u, v))
        if e not in {tuple(sorted(x)) for x in edges} and rng.random() < extra_edge_prob:
            edges.append(e)
    weights = list(range(1, len(edges) + 1))
    rng.shuffle(weights)
    wmap = {tuple(sorted(e)): w for e, w in zip(edges, weights)}
    g = build_graph(edges, weights=wmap, nodes=ids, id_bound=default_id_bound(n))
    return g.with_selected_edges([])


@dataclass(frozen=True)
class Corpus:
    """Deterministic instance enumeration for the CLI and experiments."""

    family: str            # cycles | paths | connected | weighted
    n_min: int
    n_max: int
    inputs: str = "none"   # none | selection | edge-marks | trees | mst
    seed: int = 0
    count: int = 100       # instances per n for the weighted family

    def instances(self) -> Iterator[Graph]:
        for n in range(self.n_min, self.n_max + 1):
            yield from self._instances_at(n)

    def _instances_at(self, n: int) -> Iterator[Graph]:
        if self.family == "weighted":
            for i in range(self.count):
                g = random_connected_weighted(n, seed=self.seed * 100003 + n * 1009 + i)
                if self.inputs == "mst":
                    yield g.with_selected_edges(kruskal_mst(g))
                else:
                    yield g
            return
        if self.family == "cycles":
            if n < 3:
                return
            bases: Iterable[Graph] = (cycle_graph(n),)
        elif self.family == "paths":
            bases = (path_graph(n),)
        elif self.family == "connected":
            bases = connected_class_graphs(n)
        else:
            raise ParseError(f"unknown corpus family {self.family!r}")
        for base in bases:
            if self.inputs == "none":
                yield base
            elif self.inputs == "selection":
                yield from all_selection_patterns(base)
            elif self.inputs == "edge-marks":
                yield from all_edge_mark_patterns(base)
            elif self.inputs == "trees":
                yield from spanning_tree_selections(base)
            else:
                raise ParseError(f"unknown corpus inputs {self.inputs!r}")


# --------------------------------------------------------------------------
# Size reports (Theorem-1 chain on achieved sizes)
# --------------------------------------------------------------------------


def regime_closure(schemes: Sequence[Scheme]) -> list[Scheme]:
    """Close a scheme set under the regime conversions that apply to it."""
    out: dict[str, Scheme] = {s.name: s for s in schemes}
    for s in list(out.values()):
        if s.regime in ("local", "global"):
            m = as_mixed(s)
            out.setdefault(m.name, m)
    for s in list(out.values()):
        if s.regime == "mixed" and s.uniform_label_width is not None:
            try:
                loc = localized(s)
            except PlsError:
                continue
            out.setdefault(loc.name, loc)
    for s in list(out.values()):
        if s.regime == "local" and s.uniform_label_width is not None:
            try:
                glo = globalized(s)
            except PlsError:
                continue
            out.setdefault(glo.name, glo)
    return list(out.values())


def _measure(scheme: Scheme, g: Graph) -> int:
    p = scheme.prover(g)
    if scheme.regime == "local":
        return p.width
    if scheme.regime == "global":
        return p.size
    return mixed_size(p, g.n)


def size_report(
    language_name: str,
    schemes: Sequence[Scheme],
    corpus: Iterable[Graph],
    verify_rows: bool = True,
) -> list[SizeReport]:
    """Rows of achieved certificate sizes per n, with the size chain asserted.

    Every converted certificate is re-run through the corresponding derived
    verifier, so each reported size is backed by an accepting scheme.
    """
    closed = regime_closure(schemes)
    by_n: dict[int, list[Graph]] = {}
    for g in corpus:
        by_n.setdefault(g.n, []).append(g)
    if not closed:
        raise PlsError("size_report needs at least one scheme")
    lang = closed[0].language
    rows: list[SizeReport] = []
    for n in sorted(by_n):
        group = by_n[n]
        yes = [g for g in group if lang(g)]
        if not yes:
            continue
        best: dict[str, tuple[int, Scheme]] = {}
        for s in closed:
            try:
                achieved = max(_measure(s, g) for g in yes)
            except PlsError:
                continue
            if verify_rows and not all(run(s, g, s.prover(g)).accept for g in yes):
                raise PlsError(f"{s.name}: honest proof rejected while measuring sizes")
            cur = best.get(s.regime)
            if cur is None or achieved < cur[0]:
                best[s.regime] = (achieved, s)
        if not all(r in best for r in ("local", "global", "mixed")):
            raise PlsError(f"{language_name}: need schemes in all regimes at n={n}")
        s_l, s_g, s_m = best["local"][0], best["global"][0], best["mixed"][0]
        bound = yes[0].id_bound
        if not (s_l <= s_m <= s_g and s_m <= n * s_l and s_g <= n * s_l + n * id_width(bound)):
            raise PlsError(
                f"{language_name} n={n}: size chain violated "
                f"(s_l={s_l}, s_m={s_m}, s_g={s_g}, M={bound})"
            )
        rows.append(
            SizeReport(
                language=language_name,
                n=n,
                id_bound=bound,
                s_local=s_l,
                s_global=s_g,
                s_mixed=s_m,
                pol=price_of_locality(s_l, s_m, n),
            )
        )
    return rows
