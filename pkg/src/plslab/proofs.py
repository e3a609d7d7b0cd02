"""Certificate regimes, bit-size accounting, and regime conversions.

Bit strings are the universal certificate currency. Integer fields (IDs,
distances, counters, weights) are encoded fixed-width; ID-like fields use
ceil(log2(M+1)) bits for the experiment ID bound M, so a verifier can parse
a label from its observed length and M alone, without knowing n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping, Optional

from .errors import CoverageMismatch, ParseError, ZeroMixed

if TYPE_CHECKING:
    from .graphs import Graph


def id_width(bound: int) -> int:
    """Bits needed for values in [0, bound], i.e. ceil(log2(bound+1))."""
    if bound < 1:
        raise ParseError("bound must be >= 1")
    return bound.bit_length()


def weight_width(bound: Optional[int]) -> int:
    if bound is None:
        raise ParseError("graph has no weights")
    return id_width(bound)


def encode_uint(value: int, width: int) -> str:
    if value < 0 or (width < value.bit_length()):
        raise ParseError(f"{value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def decode_uint(bits: str) -> int:
    return int(bits, 2) if bits else 0


def _check_bits(s: str) -> str:
    if any(c not in "01" for c in s):
        raise ParseError(f"not a bit string: {s!r}")
    return s


@dataclass(frozen=True, eq=False)
class LocalProof:
    """One certificate per node, all of the same width."""

    width: int
    labels: Mapping[int, str]

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(self.labels))
        for v, s in self.labels.items():
            _check_bits(s)
            if len(s) != self.width:
                raise CoverageMismatch(f"label of node {v} has width {len(s)}, expected {self.width}")

    def size_bits(self, n: Optional[int] = None) -> int:
        return (n if n is not None else len(self.labels)) * self.width

    def __eq__(self, other):
        return (
            isinstance(other, LocalProof)
            and self.width == other.width
            and dict(self.labels) == dict(other.labels)
        )


@dataclass(frozen=True)
class GlobalProof:
    """A single certificate every node can read."""

    bits: str

    def __post_init__(self):
        _check_bits(self.bits)

    @property
    def size(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class MixedProof:
    local: LocalProof
    global_part: GlobalProof


Proof = LocalProof | GlobalProof | MixedProof


def mixed_size(p: MixedProof, n: int) -> int:
    """Total bits of a mixed certificate: n * local width + global size."""
    if len(p.local.labels) != n:
        raise CoverageMismatch(f"local part covers {len(p.local.labels)} nodes, expected {n}")
    return n * p.local.width + p.global_part.size


def mixed_to_local(p: MixedProof) -> LocalProof:
    """Concatenate the global part onto every local label."""
    g = p.global_part.bits
    return LocalProof(
        width=p.local.width + len(g),
        labels={v: s + g for v, s in p.local.labels.items()},
    )


def local_to_global(p: LocalProof, g: "Graph") -> GlobalProof:
    """Encode the (ID, label) couple list, sorted by ID, fixed-width IDs.

    Exactly n * (ceil(log2(M+1)) + width) bits; no header, so the decoder
    needs M and the label width.
    """
    ids = g.node_ids
    if set(p.labels) != set(ids):
        raise CoverageMismatch("local proof does not cover the graph")
    idw = id_width(g.id_bound)
    parts = []
    for v in ids:
        parts.append(encode_uint(v, idw))
        parts.append(p.labels[v])
    return GlobalProof("".join(parts))


def global_to_local(gp: GlobalProof, id_bound: int, width: int) -> LocalProof:
    """Inverse of local_to_global given the same M and label width."""
    idw = id_width(id_bound)
    rec = idw + width
    bits = gp.bits
    if rec == 0:
        if bits:
            raise ParseError("nonempty couple list with zero record width")
        return LocalProof(width=0, labels={})
    if len(bits) % rec:
        raise ParseError(f"couple list length {len(bits)} not divisible by record width {rec}")
    labels: dict[int, str] = {}
    prev = 0
    for off in range(0, len(bits), rec):
        v = decode_uint(bits[off : off + idw])
        if v <= prev or v > id_bound:
            raise ParseError("couple ids must be strictly increasing and within the id bound")
        labels[v] = bits[off + idw : off + rec]
        prev = v
    return LocalProof(width=width, labels=labels)


def price_of_locality(s_local: int, s_mixed: int, n: int) -> Fraction:
    """PoL = n * s_local / s_mixed."""
    if s_mixed <= 0:
        raise ZeroMixed("mixed size must be positive")
    return Fraction(n * s_local, s_mixed)


@dataclass(frozen=True)
class SizeReport:
    """Achieved certificate sizes for one language at one n (upper bounds)."""

    language: str
    n: int
    id_bound: int
    s_local: int
    s_global: int
    s_mixed: int
    pol: Fraction

    CSV_HEADER = "language,n,M,s_local,s_global,s_mixed,pol"

    def csv_row(self) -> str:
        return (
            f"{self.language},{self.n},{self.id_bound},"
            f"{self.s_local},{self.s_global},{self.s_mixed},"
            f"{self.pol.numerator}/{self.pol.denominator}"
        )


# --------------------------------------------------------------------------
# Proof files
# --------------------------------------------------------------------------


def proof_to_dict(p: Proof) -> dict:
    if isinstance(p, LocalProof):
        width, labels, gbits = p.width, p.labels, ""
    elif isinstance(p, GlobalProof):
        width, labels, gbits = 0, {}, p.bits
    else:
        width, labels, gbits = p.local.width, p.local.labels, p.global_part.bits
    return {
        "width": width,
        "labels": {str(v): s for v, s in sorted(labels.items())},
        "global": gbits,
    }


def proof_from_dict(d: Mapping, regime: str) -> Proof:
    try:
        width = int(d.get("width", 0))
        labels = {int(v): str(s) for v, s in dict(d.get("labels", {})).items()}
        gbits = str(d.get("global", ""))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed proof dict: {exc}") from exc
    if regime == "local":
        return LocalProof(width=width, labels=labels)
    if regime == "global":
        return GlobalProof(bits=gbits)
    if regime == "mixed":
        return MixedProof(local=LocalProof(width=width, labels=labels), global_part=GlobalProof(bits=gbits))
    raise ParseError(f"unknown regime {regime!r}")


def load_proof(path: str, regime: str) -> Proof:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read proof file {path}: {exc}") from exc
    return proof_from_dict(d, regime)


def save_proof(p: Proof, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(proof_to_dict(p), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
