"""Exact continued-fraction toolkit for Dirichlet-improvability experiments.

Modules:
  words       finite words, convergent tables, cylinders
  reals       exact point inputs (rationals, quadratic surds, intervals)
  exact       rational/quadratic-field arithmetic with exact sign tests
  functions   bit-exact threshold/dimension/rate function families
  membership  finite-horizon event logs, witnesses, pointwise audits
  series      three-valued convergence classifiers with tail envelopes
  dimension   growth-order and critical-exponent estimation
  sublinear   essential sub-linearity certificates and consequences
  covers      J sets, word fibers, pair sums, dyadic block bounds
  kernels     numba/numpy summation backends (DIRICHLET_LAB_KERNELS)
  cli         the batch command surface
"""

from .exact import Quad, cmp_exact, cmp_scaled_power, make_quad
from .functions import (ApproxFunction, AuxFunction, ConstAux, ConstRate,
                        CustomDim, DerivedAux, DimensionFunction,
                        DomainViolationError, LogAux, LogDirichlet, PowerAux,
                        PowerDirichlet, PowerLaw, PowerRate, RateFunction,
                        ScaledDirichlet, TableAux, TablePsi,
                        UndecidedComparisonError, XLogX, aux_transform,
                        derived, scaled_aux)
from .membership import (AuditReport, ChainReport, Horizon, MembershipReport,
                         audit_product_criterion, dirichlet_events,
                         inclusion_audit, index_rate_membership,
                         product_events, quotient_pair_membership,
                         single_quotient_membership,
                         well_approximable_membership)
from .reals import (ExactRational, GOLDEN, PeriodicWord, PrecisionExhaustedError,
                    RealInput, TerminatedError, ValidatedInterval,
                    continued_fraction, dirichlet_form, gauss_step,
                    legendre_locate, p5_bounds_check, rational, surd,
                    surd_value, tail_value)
from .series import (Classification, SeriesVerdict, classify, example_series,
                     hausdorff_series, lebesgue_series)
from .dimension import (CriticalExponent, TauEstimate, critical_exponent,
                        dimension_of_complement, tau_liminf)
from .sublinear import (ConsequenceReport, SublinearityCertificate,
                        certify_sublinear, sublinear_consequences)
from .covers import (BlockCheck, BlockSweep, BudgetExceededError, CoverSumResult,
                     Fiber, InvalidPairError, JSet, NotApplicableError,
                     PairSumResult, block_bound_check, block_bound_sweep,
                     cover_sum_direct, enumerate_pairs, fiber, j_set, pair_sum)
from .words import (ConvergentTable, Cylinder, EmptyWordError, Word,
                    backward_ratio, canonical_word, convergents, cylinder,
                    evaluate, twin_word, word)

__version__ = "0.1.0"
