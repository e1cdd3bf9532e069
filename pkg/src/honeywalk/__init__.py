"""Discrete-time coined quantum walks on the honeycomb lattice."""

__version__ = "0.1.0"

from .lattice import Site, shift_target, distance  # noqa: E402
from .coin import (  # noqa: E402
    CoinOperator,
    CoinPair,
    grover,
    dft3,
    machida_coin,
    row_mask,
    check_localization_condition,
    coin_from_name,
)
from .limitmap import (  # noqa: E402
    LimitMap,
    compute_F,
    compute_F_pair_4,
    compute_F_line,
    limit_probability,
    extremal_states,
    grover_state,
)
from .walker import (  # noqa: E402
    WalkerState,
    init,
    step,
    origin_series,
    radius_series,
    spatial_distribution,
    mean_radius,
)
from .haar import RandomStateStream, sample_state, average_probability, haar_average_exact  # noqa: E402
