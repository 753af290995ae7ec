"""Link-level Monte Carlo simulation of polarization-keyed transmission
over a 2x2 dual-polarized fading channel, with exact and reduced-complexity
detectors and the standard transmit baselines.
"""

from .channel import (
    ChannelConfig,
    ChannelState,
    NoiseConfig,
    apply_channel,
    channel_blocks,
    coupling_split,
    next_channel,
)
from .config import ConfigError, default_config_text, load_config
from .constellation import (
    Constellation,
    bits_to_index,
    index_to_bits,
    make_constellation,
)
from .detectors import (
    CombinedSignal,
    DetectionResult,
    detect_ostbc,
    detect_pmod_mld,
    detect_pmod_nod,
    detect_single,
    detect_vblast_mmse,
    pmod_combine,
    pmod_likelihood_ratio,
)
from .engine import (
    SCHEME_LABELS,
    StopRule,
    SweepConfig,
    SweepRecord,
    point_stream_id,
    records_to_csv,
    run_point,
    run_sweep,
)
from .metrics import ErrorCounters, XpdSample, accumulate, blsr, gain_degradation, xpd_db
from .numerics import RngStream, bessel_j0, log_sum_exp, q_function
from .schemes import (
    SchemeKind,
    bits_per_use,
    encode_ostbc,
    encode_pmod,
    encode_single,
    encode_vblast,
    se_gain,
)

__version__ = "0.1.0"

_LAZY = ("dump_hierarchical_constellation", "write_figures")


def __getattr__(name):
    # plotting pulls matplotlib; defer that cost until someone asks for it
    if name in _LAZY:
        from . import figures

        return getattr(figures, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "__version__",
    # numerics
    "log_sum_exp",
    "bessel_j0",
    "q_function",
    "RngStream",
    # constellation
    "Constellation",
    "make_constellation",
    "bits_to_index",
    "index_to_bits",
    # channel
    "ChannelConfig",
    "ChannelState",
    "NoiseConfig",
    "coupling_split",
    "next_channel",
    "apply_channel",
    "channel_blocks",
    # schemes
    "SchemeKind",
    "bits_per_use",
    "encode_pmod",
    "encode_single",
    "encode_ostbc",
    "encode_vblast",
    "se_gain",
    # detectors
    "DetectionResult",
    "CombinedSignal",
    "detect_pmod_mld",
    "pmod_likelihood_ratio",
    "pmod_combine",
    "detect_pmod_nod",
    "detect_single",
    "detect_ostbc",
    "detect_vblast_mmse",
    # metrics
    "ErrorCounters",
    "XpdSample",
    "xpd_db",
    "blsr",
    "gain_degradation",
    "accumulate",
    # engine
    "SCHEME_LABELS",
    "StopRule",
    "SweepConfig",
    "SweepRecord",
    "point_stream_id",
    "run_point",
    "run_sweep",
    "records_to_csv",
    # config
    "ConfigError",
    "load_config",
    "default_config_text",
    # figures
    "dump_hierarchical_constellation",
    "write_figures",
]
