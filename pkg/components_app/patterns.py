"""
Deterministic structure tests on multisegments.

Covers regularity, ladders (quasi-laminae), the split test on the
comparability graph, the 4231/3412 pattern search that decides whether a
regular multisegment is balanced, and the permutation multisegments C_w.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from .exceptions import EnumerationLimitError, MultisegmentSyntaxError, PreconditionError
from .multisegments import Multisegment, Segment

logger = logging.getLogger(__name__)

PATTERN_SCAN_LIMIT = 12
NAIVE_ORACLE_LIMIT = 8


@dataclass(frozen=True)
class PatternWitness:
    kind: str                        # "4231" or "3412"
    segments: tuple[Segment, ...]    # ordered as Delta_1, ..., Delta_k

    def to_json(self) -> dict:
        return {"kind": self.kind, "segments": [[s.begin, s.end] for s in self.segments]}


@dataclass(frozen=True)
class StructureFlags:
    regular: bool
    ladder: bool
    balanced: Optional[bool]         # None when the multisegment is not regular
    split: bool
    prime: Optional[bool]            # regular and not split; None when not regular
    witness: Optional[PatternWitness] = None


def is_regular(m: Multisegment) -> bool:
    begins = [s.begin for s in m]
    ends = [s.end for s in m]
    return len(set(begins)) == len(begins) and len(set(ends)) == len(ends)


def is_ladder(m: Multisegment) -> bool:
    ordered = sorted(m, key=lambda s: (s.begin, s.end))
    return all(
        a.begin < b.begin and a.end < b.end for a, b in zip(ordered, ordered[1:])
    )


def comparability_graph(m: Multisegment) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(m)))
    for i, j in itertools.combinations(range(len(m)), 2):
        if m[i].precedes(m[j]) or m[j].precedes(m[i]):
            graph.add_edge(i, j)
    return graph


def is_split(m: Multisegment) -> bool:
    if len(m) < 2:
        return False
    return not nx.is_connected(comparability_graph(m))


def precedence_digraph(m: Multisegment) -> nx.DiGraph:
    """Edge i -> j whenever m_i precedes m_j; acyclic since begins increase along edges."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(m)))
    for i, delta in enumerate(m):
        for j, gamma in enumerate(m):
            if delta.precedes(gamma):
                graph.add_edge(i, j)
    return graph


def _require_regular(m: Multisegment) -> None:
    if not is_regular(m):
        raise PreconditionError(
            f"{m} is not regular; balancedness is only defined for regular multisegments."
        )


def find_unbalanced_witness(m: Multisegment) -> Optional[PatternWitness]:
    """
    Return a submultisegment of type 4231 or 3412, or None when m is balanced.

    Both patterns contain a precedence chain; the chain ends are found as
    edges of the precedence digraph filtered by the endpoint inequalities,
    and joined by reachability.
    """
    _require_regular(m)
    graph = precedence_digraph(m)
    witness = _search_4231(m, graph) or _search_3412(m, graph)
    if witness:
        logger.debug("Unbalanced witness for %s: %s", m, witness)
    return witness


def _reach(graph: nx.DiGraph, source: int, target: int) -> Optional[list[int]]:
    if source == target:
        return [source]
    try:
        return nx.shortest_path(graph, source, target)
    except nx.NetworkXNoPath:
        return None


def _search_4231(m: Multisegment, graph: nx.DiGraph) -> Optional[PatternWitness]:
    # chain Y < X ... Z < W with b(Y) < b(A) < b(X) and e(Z) < e(A) < e(W)
    edges = list(graph.edges())
    for anchor, a_seg in enumerate(m):
        lower = [(y, x) for y, x in edges if m[y].begin < a_seg.begin < m[x].begin]
        upper = [(z, w) for z, w in edges if m[z].end < a_seg.end < m[w].end]
        for y, x in lower:
            for z, w in upper:
                path = _reach(graph, x, z)
                if path is None:
                    continue
                chain = [w] + list(reversed(path)) + [y]
                return PatternWitness("4231", tuple(m[i] for i in [anchor] + chain))
    return None


def _search_3412(m: Multisegment, graph: nx.DiGraph) -> Optional[PatternWitness]:
    edges = list(graph.edges())
    for q, p in edges:
        top, low = m[p], m[q]
        bottoms = [
            (y, x) for y, x in edges
            if low.begin < m[y].begin < top.begin < m[x].begin
        ]
        tops = [
            (f, t) for f, t in edges
            if m[f].end < low.end < m[t].end < top.end
        ]
        for y, x in bottoms:
            for f, t in tops:
                if (y, x) == (f, t):
                    chain = [t, f]
                else:
                    path = _reach(graph, x, f)
                    if path is None:
                        continue
                    chain = [t] + list(reversed(path)) + [y]
                return PatternWitness("3412", tuple(m[i] for i in [p, q] + chain))
    return None


def is_type_4231(segments: Sequence[Segment]) -> bool:
    """Check an ordered tuple Delta_1..Delta_k against the 4231 conditions."""
    k = len(segments)
    if k < 4 or len({(s.begin, s.end) for s in segments}) < k:
        return False
    d = (None,) + tuple(segments)
    if not all(d[i].precedes(d[i - 1]) for i in range(3, k + 1)):
        return False
    return (
        d[k].begin < d[1].begin < d[k - 1].begin
        and d[3].end < d[1].end < d[2].end
    )


def is_type_3412(segments: Sequence[Segment]) -> bool:
    k = len(segments)
    if k < 4 or len({(s.begin, s.end) for s in segments}) < k:
        return False
    d = (None,) + tuple(segments)
    if not all(d[i].precedes(d[i - 1]) for i in range(4, k + 1)):
        return False
    if not d[2].precedes(d[1]):
        return False
    return (
        d[2].begin < d[k].begin < d[1].begin < d[k - 1].begin
        and d[4].end < d[2].end < d[3].end < d[1].end
    )


def is_balanced_naive(m: Multisegment) -> bool:
    """Exhaustive ordered-subset scan; kept as an oracle for small inputs."""
    _require_regular(m)
    if len(m) > NAIVE_ORACLE_LIMIT:
        raise EnumerationLimitError(
            f"Naive pattern scan is limited to {NAIVE_ORACLE_LIMIT} segments, got {len(m)}."
        )
    for k in range(4, len(m) + 1):
        for ordered in itertools.permutations(m.segments, k):
            if is_type_4231(ordered) or is_type_3412(ordered):
                return False
    return True


def is_balanced(m: Multisegment) -> bool:
    return find_unbalanced_witness(m) is None


def structure_tests(m: Multisegment) -> StructureFlags:
    regular = is_regular(m)
    split = is_split(m)
    witness = find_unbalanced_witness(m) if regular else None
    return StructureFlags(
        regular=regular,
        ladder=is_ladder(m),
        balanced=(witness is None) if regular else None,
        split=split,
        prime=(not split) if regular else None,
        witness=witness,
    )


def _validate_permutation(w: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(x) for x in w)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise PreconditionError(f"{perm} is not a permutation of 1..{len(perm)}.")
    return perm


def multisegment_of_permutation(w: Sequence[int]) -> Multisegment:
    """[1, w(1)+k-1] + ... + [k, w(k)+k-1] on 2k-1 sites."""
    perm = _validate_permutation(w)
    k = len(perm)
    if k == 0:
        raise PreconditionError("The empty permutation has no multisegment.")
    return Multisegment.of(2 * k - 1, [(i, perm[i - 1] + k - 1) for i in range(1, k + 1)])


def _pattern_of(values: Sequence[int]) -> tuple[int, ...]:
    ranks = sorted(values)
    return tuple(ranks.index(v) + 1 for v in values)


def contains_pattern(w: Sequence[int], pattern: Sequence[int]) -> bool:
    perm = _validate_permutation(w)
    if len(perm) > PATTERN_SCAN_LIMIT:
        raise EnumerationLimitError(
            f"Pattern scan is limited to permutations of size {PATTERN_SCAN_LIMIT}."
        )
    target = tuple(pattern)
    return any(
        _pattern_of(sub) == target
        for sub in itertools.combinations(perm, len(target))
    )


def avoids_1324_2143(w: Sequence[int]) -> bool:
    return not contains_pattern(w, (1, 3, 2, 4)) and not contains_pattern(w, (2, 1, 4, 3))


@dataclass(frozen=True)
class PermutationReport:
    permutation: tuple[int, ...]
    multisegment: Multisegment
    avoids_1324_2143: bool


def permutation_ops(w: Sequence[int]) -> PermutationReport:
    perm = _validate_permutation(w)
    return PermutationReport(
        permutation=perm,
        multisegment=multisegment_of_permutation(perm),
        avoids_1324_2143=avoids_1324_2143(perm),
    )


def parse_permutation(text: str) -> tuple[int, ...]:
    """Accept "1324" (single digits) or comma/space separated "1,3,2,4"."""
    cleaned = text.strip()
    if "," in cleaned or " " in cleaned:
        parts = [p for p in cleaned.replace(",", " ").split() if p]
    else:
        parts = list(cleaned)
    try:
        return _validate_permutation(int(p) for p in parts)
    except ValueError:
        raise MultisegmentSyntaxError(f"Bad permutation text: '{text}'.") from None
