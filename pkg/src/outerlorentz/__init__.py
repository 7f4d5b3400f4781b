"""Outer Lorentz quasi-norms on finite settings (X, mu, omega)."""

from .characterize import (
    charfun_sup,
    charfun_supinf,
    classical_weak_char,
    counterexample_report,
    counterexample_setting,
    lemma_2_check,
    select_support,
    verify_linf_char,
    verify_thm_second,
    verify_weak_supinf,
)
from .estimator import OuterLorentzNorm
from .heisenberg import (
    DyadicInterval,
    HeisenbergTile,
    TileWindow,
    lacunary_size,
    size_2_star,
    stripe_membership,
    tree_membership,
    verify_corollary,
    x_norm,
)
from .holder import HolderInstance, classical_outer_check, log_convexity_check, outer_holder_check, prop_3_9_check
from .lorentz import (
    characteristic_identity_check,
    decreasing_rearrangement,
    lorentz_norm,
    super_level_profile,
)
from .random_instances import random_setting
from .reports import VerificationReport
from .setting import (
    FiniteSetting,
    SettingError,
    enumerate_family,
    minimal_cover,
    mu_circle,
    omega_measure,
    outer_measure,
    setting3,
    setting_from_json,
    validate_setting,
)
from .sizes import EllSize, LiftedSize, ell_r_size, lift_size

__version__ = "0.1.0"
