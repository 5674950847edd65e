"""Exact graph-homomorphism counting and graph-algebra toolkit."""

from .algebra import (
    IDENTITIES,
    IdentityCheck,
    PowerVertexCodec,
    disjoint_union,
    double_cover,
    join,
    loop_all,
    looped_subgraph,
    power,
    random_graph,
    tensor,
    union_power_padding,
)
from .analysis import (
    EQUAL,
    STRICT_GREATER,
    STRICT_LESS,
    BipRedVerdict,
    CertifiedGraph,
    CounterexampleCertificate,
    InequalityVerdict,
    SurveyReport,
    SurveyRow,
    build_connected_counterexample,
    build_counterexample,
    build_hbst,
    certified_bipred_verdict,
    certify_base,
    check_bipartite_reducible,
    closure_construct,
    conjecture_verdict,
    enumerate_graphs_upto,
    enumerate_regular,
    has_clique,
    is_bipartite,
    regularity,
    survey_maximizer,
    verify_certificate,
    wr_verdict,
    zhao_criterion,
)
from .config import RunConfig, active_config, set_active
from .errors import (
    FormatError,
    HomalgError,
    ParameterError,
    PreconditionError,
    ResourceCapError,
)
from .graphs import (
    FAMILIES,
    Graph,
    bipartition,
    complete,
    complete_bipartite,
    cycle,
    empty_graph,
    independent_set_graph,
    looped_points,
    make_family,
    parse_graph,
    serialize_graph,
    split_components,
    widom_rowlinson,
)
from .homcount import (
    count_loops,
    hom_bruteforce,
    hom_count,
    hom_from_complete,
    hom_from_complete_bipartite,
)
from .iso import CanonicalForm, canonical_form, is_isomorphic

__version__ = "0.1.0"

__all__ = [
    "BipRedVerdict",
    "CanonicalForm",
    "CertifiedGraph",
    "CounterexampleCertificate",
    "EQUAL",
    "FAMILIES",
    "FormatError",
    "Graph",
    "HomalgError",
    "IDENTITIES",
    "IdentityCheck",
    "InequalityVerdict",
    "ParameterError",
    "PowerVertexCodec",
    "PreconditionError",
    "ResourceCapError",
    "RunConfig",
    "STRICT_GREATER",
    "STRICT_LESS",
    "SurveyReport",
    "SurveyRow",
    "active_config",
    "bipartition",
    "build_connected_counterexample",
    "build_counterexample",
    "build_hbst",
    "canonical_form",
    "certified_bipred_verdict",
    "certify_base",
    "check_bipartite_reducible",
    "closure_construct",
    "complete",
    "complete_bipartite",
    "conjecture_verdict",
    "count_loops",
    "cycle",
    "disjoint_union",
    "double_cover",
    "empty_graph",
    "enumerate_graphs_upto",
    "enumerate_regular",
    "has_clique",
    "hom_bruteforce",
    "hom_count",
    "hom_from_complete",
    "hom_from_complete_bipartite",
    "independent_set_graph",
    "is_bipartite",
    "is_isomorphic",
    "join",
    "loop_all",
    "looped_points",
    "looped_subgraph",
    "make_family",
    "parse_graph",
    "power",
    "random_graph",
    "regularity",
    "serialize_graph",
    "set_active",
    "split_components",
    "survey_maximizer",
    "tensor",
    "union_power_padding",
    "verify_certificate",
    "widom_rowlinson",
    "wr_verdict",
    "zhao_criterion",
]
