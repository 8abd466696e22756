"""Weighted shift operators: Aluthge and mean transforms, m-isometry defects,
power norms and a dense-matrix cross-check."""

from .errors import (DegenerateFitError, DomainError, ExactnessError, RangeError,
                     ShiftlabError, StructuralError, UnboundedWeightsError)
from .isometry import (DefectReport, TwoIsoFit, defect, fit_two_iso,
                       is_m_isometry, two_iso_weights)
from .oracle import (TruncatedMatrix, matrix_aluthge, matrix_lambda_mean,
                     matrix_mean, oracle_defect, polar_decompose, truncate)
from .serialize import dumps, loads, shift_from_dict, shift_to_dict
from .spectral import (PowerNormTable, ProbeResult, SpectralRadius,
                       power_bounded_probe, power_norm, power_norm_table,
                       power_norms, spectral_radius)
from .theorems import TheoremVerdict, run_all
from .transforms import (TransformKind, aluthge_weights, apply_transform,
                         duggal_weights, lambda_mean_weights, mean_weights)
from .weights import (Constant, Exactness, Explicit, Periodic, PowerTower,
                      ScaledSequence, Tail, TwoIsoFamily, WeightedShift,
                      WeightSequence, is_isometry)

__version__ = "0.1.0"
