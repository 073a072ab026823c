"""Time evolution and the signature experiments."""
from .config import CFL_LIMIT, ConfigError, SimConfig, load_config
from .dispersion import (
    DISPERSION_COLUMNS, DispersionResult, UnresolvedWavelength, convergence_ratio, dispersion_scan,
    fit_frequency, group_speed, measure_dispersion, write_dispersion_csv,
)
from .evanescence import EvanescenceReport, FitError, euclidean_evanescence, solve_profile
from .experiments import (
    DUALITY_COLUMNS, ConservationResult, duality_row, duality_summary, duality_timeseries,
    massive_conservation_run, static_monopole_divergence, write_rows_csv,
)
from .initial import gaussian_blob, initial_state, plane_wave, screened_potential
from .leapfrog import SERIES_COLUMNS, OscillatingCharge, RunResult, SimulationError, run, step
from .monopole import ConvergenceError, FluxReport, monopole_gauss_check, sor_poisson
