"""Topological data analysis for time series: delay embeddings, Rips and
sublevel persistence, diagram distances, landscapes and derived features."""

__version__ = "0.1.0"

from .diagram import PersistenceDiagram
from .embedding import standardize_pointwise, sw1pers_cloud, takens_embed
from .errors import (DegenerateInputError, InputError, MissingInputError, ParameterError,
                     SelectionWarning, TDAError, ValidationError)
from .features import (betti_sequence, betti_vector, kmeans, lifetime_features,
                       sw1pers_score, sw1pers_series_score, window_break_features)
from .landscapes import PersistenceLandscape, first_order_pl_batch, landscape, landscape_norm
from .metrics import bottleneck, wasserstein
from .rips import distance_matrix, rips_from_cloud, rips_persistence, rips_persistence_reference
from .series import (acf, detrend_standardize, moving_average, select_dim_fnn, select_tau_acf,
                     select_tau_decay, spline_resample)
from .spectral import tapered_smoothed_periodogram, walsh_function, weighted_fourier_smooth, wft
from .sublevel import dtm, grid_sublevel_persistence_h0, sublevel_persistence_1d
