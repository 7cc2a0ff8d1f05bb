"""
Bipartite matching criterion for the vanishing of Ext and the hom of quasi-laminae.

The graph G_{m;n} has left vertices U_{m;n} and right vertices V_{m;n}; it
is the support graph of the T-matrix, so a maximum matching bounds the
generic rank of that matrix from above, with equality when m or n is a
ladder.
"""

import logging
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from .exceptions import PreconditionError
from .multisegments import Multisegment, index_sets
from .patterns import is_ladder

logger = logging.getLogger(__name__)

LEFT = "U"
RIGHT = "V"


class MatchingGraph:
    """G_{m;n} as a networkx bipartite graph with tagged vertices (side, (i, j))."""

    def __init__(self, m: Multisegment, n: Multisegment):
        sets = index_sets(m, n)
        u_m = set(index_sets(m, m).U)
        u_n = set(index_sets(n, n).U)
        right = set(sets.V)

        self.left = [(LEFT, pair) for pair in sets.U]
        self.right = [(RIGHT, pair) for pair in sets.V]
        self.graph = nx.Graph()
        self.graph.add_nodes_from(self.left, bipartite=0)
        self.graph.add_nodes_from(self.right, bipartite=1)

        for i, k in sets.U:
            # (i,k) -- (i,j) when (j,k) in U_n
            for j, k2 in u_n:
                if k2 == k and (i, j) in right:
                    self.graph.add_edge((LEFT, (i, k)), (RIGHT, (i, j)))
            # (i,k) -- (j,k) when (i,j) in U_m
            for i2, j in u_m:
                if i2 == i and (j, k) in right:
                    self.graph.add_edge((LEFT, (i, k)), (RIGHT, (j, k)))

    @property
    def edges(self) -> list:
        return sorted(self.graph.edges())

    def maximum_matching(self) -> dict:
        if not self.left:
            return {}
        return hopcroft_karp_matching(self.graph, top_nodes=self.left)


@dataclass(frozen=True)
class MatchingResult:
    holds: bool
    max_matching: int
    u_size: int
    v_size: int

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "max_matching": self.max_matching,
            "u_size": self.u_size,
            "v_size": self.v_size,
        }


def matching_condition(m: Multisegment, n: Multisegment) -> MatchingResult:
    """Whether G_{m;n} has a matching covering every vertex of U_{m;n}."""
    graph = MatchingGraph(m, n)
    matching = graph.maximum_matching()
    size = sum(1 for vertex in matching if vertex[0] == LEFT)
    logger.debug("matching(%s, %s): %d of %d", m, n, size, len(graph.left))
    return MatchingResult(
        holds=size == len(graph.left),
        max_matching=size,
        u_size=len(graph.left),
        v_size=len(graph.right),
    )


def hom_pi_lamina(m: Multisegment, n: Multisegment) -> int:
    """dim Hom_Pi between generic points when m or n is a quasi-lamina."""
    if not (is_ladder(m) or is_ladder(n)):
        raise PreconditionError(f"Neither {m} nor {n} is a ladder.")
    result = matching_condition(m, n)
    return result.v_size - result.max_matching
