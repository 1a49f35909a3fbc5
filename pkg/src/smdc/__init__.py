"""Sliding secure symmetric multilevel diversity coding and multilevel secret sharing.

Linear encoders over prime fields come with exact rate regions to compare
against and with oracles that certify decodability and perfect secrecy.
"""
from . import errors, field, regions, schemes, verifier
from .field import FieldSpec, MdsCodebook, default_codebook, mds_decode, mds_encode, vandermonde
from .regions import (
    RegionSpec,
    contains3,
    corners3,
    member,
    min_sum_rate,
    region_mss32,
    region_rss,
    region_smdc32,
    region_sup1,
    region_sup_mss,
    sup_sum_rate,
)
from .schemes import (
    ChainScheme,
    GeneralMssScheme,
    KeyMaterial,
    Mss32CornerScheme,
    PseudoSupScheme,
    ShareBundle,
    SourceProfile,
    Sup1Scheme,
    build_scheme,
    plan_matrix,
)
from .verifier import CustomEncoder, VerificationReport, full_audit, measured_rates

__version__ = "0.1.0"
