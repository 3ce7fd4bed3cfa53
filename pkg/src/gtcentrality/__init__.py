"""Game-theoretic network centrality: Shapley values, Semivalues, Owen values
and ordered-coalition values of games defined on graphs, with exhaustive
oracles to check them against."""

__version__ = "0.1.0"

from .betweenness import SizeDistribution, semivalue_betweenness, svb, wsb, wsvb
from .community import CoalitionalWeights, coalitional_semivalue_degree, owen_degree, preset_weights
from .connectivity import ConnectivityGame, approximate_svcg, faster_svcg, general_sv_connectivity
from .degree import DegreeGameSpec, sv_g1, sv_g2, sv_g3, sv_g4, sv_g5_approx
from .games import CoalitionGame, OrderedGame, SizeLimitError
from .gmcnets import RuleSet, comp_nr, comp_sb, generalized_betweenness, parse_rules
from .graph import CommunityStructure, Graph, GraphFormatError, build_graph, parse_edge_list
from .result import CentralityResult
from .vulnerability import igm, interval_pd, simulate_failures

__all__ = [
    "CentralityResult", "CoalitionGame", "CoalitionalWeights", "CommunityStructure",
    "ConnectivityGame", "DegreeGameSpec", "Graph", "GraphFormatError", "OrderedGame",
    "RuleSet", "SizeDistribution", "SizeLimitError", "__version__", "approximate_svcg",
    "build_graph", "coalitional_semivalue_degree", "comp_nr", "comp_sb", "faster_svcg",
    "general_sv_connectivity", "generalized_betweenness", "igm", "interval_pd", "owen_degree",
    "parse_edge_list", "parse_rules", "preset_weights", "semivalue_betweenness",
    "simulate_failures", "sv_g1", "sv_g2", "sv_g3", "sv_g4", "sv_g5_approx", "svb", "wsb", "wsvb",
]
