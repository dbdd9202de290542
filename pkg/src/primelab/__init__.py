"""Short-interval statistics for primes in arithmetic progressions and
prime ideals of number fields: counters, zero-table ingestion, the
truncated explicit formula, and the experiments built on them."""

from .counters import StepCounter, WindowSource, field_source, \
    progression_source
from .errors import CapacityError, PrimeLabError, UnsupportedPrimeError, \
    ZeroTableError
from .explicit import TruncationSpec, residual_scan, smoothed_prediction, \
    smoothed_sum, triangle_weight, truncated_psi, unweighted_sandwich
from .intervals import DeltaSeries, bt_check_ap, bt_check_field, \
    cramer_window_scan, delta, delta_K, delta_series, euler_phi, \
    inertia_scan, mean_square, mean_square_sampled, meansq_ratio
from .numfield import IdealPowerEvent, NumberFieldSpec, SplittingType, \
    dedekind_index_test, factor_degrees_mod_p, pi_K, poly_discriminant, \
    preset, preset_names, prime_ideal_events, psi_K, splitting_type
from .quadratic import kronecker_symbol, quadratic_splitting_oracle
from .report import ExperimentReport, emit
from .sieve import PrimePowerEvent, ResidueClass, pi_ap, prime_power_events, \
    psi_ap, sieve_primes
from .zeros import ZeroTable, combine, component_table, count_zeros, \
    field_table, load_zeros, predicted_count

__version__ = "0.1.0"
