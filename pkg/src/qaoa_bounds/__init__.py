"""Fixed-angle QAOA MAXCUT bounds on 3-regular graphs.

Enumerates the depth-p edge neighborhoods that can occur in a 3-regular graph,
simulates QAOA on each, turns the per-class values into approximation-ratio
bounds and checks that short cycles never make the worst case worse.
"""
from .graph import CapacityError, Graph, GraphError, RootedSubgraph, neighborhood_subgraph
from .qaoa import Angles, edge_expectation, fixed_angles

__all__ = [
    "Angles", "CapacityError", "Graph", "GraphError", "RootedSubgraph",
    "edge_expectation", "fixed_angles", "neighborhood_subgraph",
]
__version__ = "0.1.0"
