from .base import (
    KeyMaterial,
    Layer,
    Scheme,
    ShareBundle,
    SourceProfile,
    oplus,
    stripes,
)
from .corners import CORNERS, Mss32CornerScheme, mss32_corner_decode, mss32_corner_encode
from .linear import LinearEncoderMatrix, plan_matrix
from .mss import (
    ChainScheme,
    GeneralMssScheme,
    chain_level_rates,
    mss_chain_decode,
    mss_chain_encode,
    mss_general_decode,
    mss_general_encode,
    mss_hybrid_decode,
    mss_hybrid_encode,
)
from .sharing import (
    RampScheme,
    Sup1Scheme,
    ThresholdScheme,
    ramp_layers,
    ramp_recover,
    ramp_share,
    sup1_encode,
    threshold_share,
)
from .sliding import PseudoSupScheme, mss_block, smdc_pseudo_sup_decode, smdc_pseudo_sup_encode


def build_scheme(profile: SourceProfile, scheme_id: str) -> Scheme:
    """Instantiate a scheme from its identifier (as used in configs and share files)."""
    from ..errors import WrongScheme

    if scheme_id.startswith("corner:"):
        if (profile.L, profile.s, profile.q) != (3, 2, 2):
            raise WrongScheme("corner schemes are binary (3, 2) schemes: need L=3, s=2, q=2")
        return Mss32CornerScheme(scheme_id.split(":", 1)[1], profile.length(2), profile.length(3))
    if scheme_id == "pseudo-sup" or scheme_id.startswith("pseudo-sup:"):
        inner = scheme_id.split(":", 1)[1] if ":" in scheme_id else "auto"
        return PseudoSupScheme(profile, inner)
    if scheme_id == "sup1":
        return Sup1Scheme(profile)
    if scheme_id == "general":
        return GeneralMssScheme(profile)
    if scheme_id == "chain":
        return ChainScheme(profile)
    if scheme_id == "hybrid":
        return ChainScheme(profile, allow_deficit=True)
    raise WrongScheme(f"unknown scheme id {scheme_id!r}")
