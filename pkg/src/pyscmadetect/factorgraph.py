"""
factorgraph.py

Bipartite layer / resource factor graph driving message passing.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from logging import getLogger

import numpy as np

from pyscmadetect.codebook import Codebook
from pyscmadetect.exceptions import FactorGraphError

logger = getLogger(__name__)


@dataclass(frozen=True)
class FactorGraph:
    """
    Factor graph with per-resource layer lists (resource_layers[k], the
    layers connected to resource k in ascending order) and per-layer
    resource lists (layer_resources[j]).

    Every resource node has the same degree d_f.
    """

    K: int
    J: int
    resource_layers: tuple
    layer_resources: tuple

    def __post_init__(self):
        if len(self.resource_layers) != self.K or len(self.layer_resources) != self.J:
            raise FactorGraphError(
                f"Adjacency lists do not match K={self.K}, J={self.J}"
            )
        fwd = {(k, j) for k, lyrs in enumerate(self.resource_layers) for j in lyrs}
        bwd = {(k, j) for j, ress in enumerate(self.layer_resources) for k in ress}
        if fwd != bwd:
            raise FactorGraphError(
                f"Inconsistent adjacency lists, mismatched edges {sorted(fwd ^ bwd)}"
            )
        degrees = Counter(len(lyrs) for lyrs in self.resource_layers)
        if len(degrees) != 1:
            d_f = degrees.most_common(1)[0][0]
            odd = [
                k for k, lyrs in enumerate(self.resource_layers) if len(lyrs) != d_f
            ]
            raise FactorGraphError(
                f"Irregular resource degrees: resources {odd} differ from the "
                f"common degree {d_f} "
                f"({[len(self.resource_layers[k]) for k in odd]})"
            )

    @classmethod
    def from_support(cls, support: np.ndarray) -> "FactorGraph":
        """
        Build graph from a (J, K) boolean support matrix.

        :param np.ndarray support: support[j, k] True if layer j uses resource k
        :returns: factor graph
        :rtype: FactorGraph
        :raises: FactorGraphError
        """

        support = np.asarray(support, dtype=bool)
        J, K = support.shape
        return cls(
            K,
            J,
            tuple(
                tuple(int(j) for j in np.flatnonzero(support[:, k])) for k in range(K)
            ),
            tuple(tuple(int(k) for k in np.flatnonzero(support[j])) for j in range(J)),
        )

    @property
    def d_f(self) -> int:
        """Common resource node degree."""
        return len(self.resource_layers[0])

    @property
    def overloading(self) -> float:
        """Overloading factor lambda = J/K."""
        return self.J / self.K

    @property
    def edge_count(self) -> int:
        """Number of layer / resource edges."""
        return sum(len(lyrs) for lyrs in self.resource_layers)

    def edges(self):
        """
        Iterate over (k, j) edges, resource-major.
        """

        for k, lyrs in enumerate(self.resource_layers):
            for j in lyrs:
                yield k, j

    def support(self) -> np.ndarray:
        """
        Edge set as (J, K) boolean matrix.
        """

        sup = np.zeros((self.J, self.K), dtype=bool)
        for k, j in self.edges():
            sup[j, k] = True
        return sup


def build_regular_graph(K: int) -> FactorGraph:
    """
    Build the K-choose-2 regular graph: one layer per unordered
    resource pair, in lexicographic order (0,1), (0,2), ...

    :param int K: resource count (>= 3)
    :returns: graph with J = K(K-1)/2 and d_f = K-1
    :rtype: FactorGraph
    :raises: FactorGraphError
    """

    if K < 3:
        raise FactorGraphError(f"K must be >= 3, got {K}")
    pairs = list(combinations(range(K), 2))
    support = np.zeros((len(pairs), K), dtype=bool)
    for j, pair in enumerate(pairs):
        support[j, list(pair)] = True
    return FactorGraph.from_support(support)


def from_codebook(cb: Codebook) -> FactorGraph:
    """
    Derive factor graph from a codebook's zero support.

    Layer degrees may differ; resource degrees may not.

    :param Codebook cb: codebook
    :returns: graph with edge (j, k) iff layer j is nonzero on resource k
    :rtype: FactorGraph
    :raises: FactorGraphError
    """

    graph = FactorGraph.from_support(cb.support)
    logger.debug(
        f"Factor graph K={graph.K} J={graph.J} d_f={graph.d_f} "
        f"lambda={graph.overloading:.3f}"
    )
    return graph
