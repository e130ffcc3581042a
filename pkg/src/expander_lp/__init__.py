"""LP decoding of expander codes with explicit dual witnesses.

Small-instance tooling: Tanner graphs with brute-force expansion
certificates, q-matchings, the edge-weight witness that certifies LP decoding
success, an exact simplex solver, and decoders to test it all against.
"""

from .alist import parse_alist, read_alist, save_alist, write_alist
from .code import (
    CertStatus,
    ExpansionCertificate,
    ExpansionParams,
    GraphError,
    TannerGraph,
    build_graph,
    certify_expansion,
    codewords,
    generate_regular,
    is_codeword,
    min_distance,
    search_expander,
    syndrome,
    word_from_support,
)
from .decoders import (
    DecodeResult,
    DecodeStatus,
    build_decoding_lp,
    flip_decode,
    lp_decode,
    nearest_codeword,
)
from .lp import (
    LinearProgram,
    LPSolution,
    LPStatus,
    Uniqueness,
    enumerate_vertices,
    is_unique_optimum,
    solve,
    vertex_oracle,
)
from .matching import QMatching, find_q_matching, hall_violation, verify_q_matching
from .witness import (
    ErrorContext,
    WeightAssignment,
    WitnessError,
    assign_weights,
    check_dilation_bound,
    construct_witness,
    decoding_radius,
    dilate,
    verify_feasible,
    x_interval,
)

__version__ = "0.1.0"
