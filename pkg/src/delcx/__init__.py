"""delcx: exact-arithmetic Deligne complexes of finite Dolbeault models.

Everything is computed over the rationals and Gaussian rationals with no
rounding: bigraded complexes with conjugation, their Deligne complexes and
mapping cones with certified homotopy equivalences, current duals with the
chain-level duality pairing and its sign tables, jet-truncation models
with short/long exact sequences and semipurity scans, and the Green-object
calculus with the star product.
"""

from .exactnum import Matrix, Scalar, Subspace, kernel, quotient, restrict_scalars
from .dolbeault import (
    BigradedComplex, DolbeaultMap, TwistedVector, WedgeTable, hodge_filtration,
    project_Fkk, project_pi, real_subspace, validate_dolbeault,
)
from .deligne import (
    ConeComplex, DeligneComplex, DeligneElement, build_cone, build_deligne,
    deligne_map, homotopy_maps, real_twisted_complex,
)
from .duality import (
    CurrentElement, PairingData, check_pairing_action_signs,
    check_pairing_differential_signs, current_of_form, deligne_pairing,
    deligne_product, dual_complex, exceptional_duality, poincare_iso_check,
    regrade, wedge_action,
)
from .models import (
    green_context, jet_model, kahler_model, les_check, semipurity_scan, ses_jet,
    dualize_ses, formal_deligne_point_complex, suite_model,
)
from .green import (
    DiagramContext, GreenObject, TruncatedClass, a_map, class_map, h_map,
    is_green_for, omega_map, star_product,
)

__version__ = "0.1.0"
