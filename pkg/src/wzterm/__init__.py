"""Wess-Zumino terms and energies for harmonic maps into compact simple Lie groups."""

from .angles import AngleClass, canonical_mod_2pi, circle_distance
from .closedforms import (
    energy_quantum,
    wz_degree,
    wz_sphere_harmonic,
    wz_sphere_theta,
    wz_symmetric_space,
    wz_torus_hom,
)
from .flatfam import ConnectionSample, DiscreteTorusMap, curvature_residual, energy_numeric, family_at, pullback_mc
from .modulipath import CartanPath, cs_connection_form, killing_pairing, path_holonomy
from .oracle import S3Sampler, gamma_from_fraction, volume_fraction
from .rootsys import GroupData, GroupType, build_group, killing_oracle
from .spectral import (
    CliffordCurve,
    LogMuData,
    NonconformalCurve,
    energy_closed_form,
    energy_mod_check,
    energy_wronskian,
    gamma_spectral,
    holonomy_integral,
    holonomy_integral_adaptive,
    holonomy_relation,
    lift_circle,
    orientation_sign,
    wzw_functional,
)

__version__ = "0.1.0"
