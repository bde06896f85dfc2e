"""Periods, residues and torus coordinates of meromorphic differentials on
the Riemann sphere, with tools for bi-algebraic subvarieties of strata."""

from .errors import (BadFactorization, BadSignature, ConstantMap, DegenerateConfig,
                     InputError, MeroDiffError, NonRationalCoefficient,
                     NonRationalResidueRatios, NonRealPeriods, NotCanonical,
                     NotSimplePole, PathThroughSingularity, PoleEvaluation,
                     PrecisionError, PrecisionTooLow, RankUnstable, ShapeMismatch,
                     ToleranceNotMet, UnmarkedBranchValue, ZeroCoordinate, ZeroQ)
from .exact import (GaussianRational, PartialFractionForm, Polynomial,
                    RationalFunction, partial_fractions, recompose)
from .numeric import BigComplex
from .periods import (IntegrationPath, PeriodVector, algebraic_period_part,
                      closed_form_period, lambda_convention_report, path_integral,
                      period_vector, quadrature_period, tracked_log)
from .strata import (DiffConfig, ResidueVector, StratumSignature, canonicalize,
                     differential_from_config, residues, validate_signature)
from .torus import (AffineLattice, ConfigFamily, RankReport, RelationLattice,
                    TorusPoint, TwistedPeriodInput, bialgebraicity_rank_test,
                    closure_relations_hold, detect_multiplicative_relations, embed,
                    fiber_rank, torus_coordinates, twisted_period_map)
from .varieties import (AlgebraicEquation, ArithmeticCertificate, CoverSpec,
                        LinearVarietySpec, SMReport, arithmetic_point_check,
                        dlog_differential, exponentiate_linear_row,
                        pullback_by_cover, pullback_with_residues,
                        residue_variety_membership, sm_membership,
                        teichmueller_curve_from_point)

__all__ = [name for name in dir() if not name.startswith("_")]
