"""Rectilinear planarity testing of degree-4 partial 2-trees."""
from orthotest.block_composer import realize_graph, test_graph
from orthotest.graph_model import Graph, parse_graph, validate_partial2tree

__version__ = '0.1.0'
