"""Framed Khovanov homology of link diagrams over the integers."""

from .bracket import DELTA, LaurentPoly, bracket_enhanced_sum, bracket_state_sum, skein_check
from .complex import BigradedComplex, build_complex, direct_sum, incidence, t_sign, verify_dd_zero
from .diagram import (
    LinkDiagram,
    OrientedDiagram,
    apply_r1,
    braid_closure,
    framed_unknot,
    mirror,
    parse_orientation,
    parse_pd,
    reorder,
    smooth_crossing,
    torus_diagram,
    writhe,
)
from .homology import (
    AbelianGroup,
    HomologyTable,
    classical_table,
    compute_homology,
    euler_polynomial,
    homology,
    tables_equal,
    tables_shifted,
)
from .les import beta_status, induced_maps, probe_connecting, split_at_crossing, verify_les_exact
from .linalg import IntegerMatrix, rank, smith_normal_form, solve_in_image
from .resolution import EnhancedState, KauffmanState, enumerate_enhanced, enumerate_states, smooth
from .torus import framed_unknot_kh, predicted_connecting_degree, torus_kh

__version__ = "0.1.0"
