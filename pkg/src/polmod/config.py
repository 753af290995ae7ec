"""INI run configuration.

Three sections, all optional, every key optional with the library default:

    [run]      schemes, modulation, ebn0_grid_db, xpd_grid_db, master_seed
    [channel]  doppler_hz, symbol_rate_hz, isolation_db, block_len, fading,
               slow_sigma_db
    [stop]     min_bit_errors, max_bits, min_blocks

Unknown sections or keys are hard errors rather than silent typo sinks.
Grids are comma-separated numbers.
"""

from __future__ import annotations

import configparser
from pathlib import Path

from .channel import ChannelConfig
from .engine import StopRule, SweepConfig

__all__ = ["ConfigError", "load_config", "default_config_text"]


class ConfigError(ValueError):
    pass


_SECTIONS = {
    "run": ("schemes", "modulation", "ebn0_grid_db", "xpd_grid_db", "master_seed"),
    "channel": (
        "doppler_hz",
        "symbol_rate_hz",
        "isolation_db",
        "block_len",
        "fading",
        "slow_sigma_db",
    ),
    "stop": ("min_bit_errors", "max_bits", "min_blocks"),
}


def _get(cp, section, key, convert, default):
    if not cp.has_option(section, key):
        return default
    raw = cp.get(section, key)
    try:
        return convert(raw)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"[{section}] {key}: cannot parse {raw!r}") from exc


def _float_tuple(raw: str):
    vals = tuple(float(v) for v in raw.split(","))
    if not vals:
        raise ValueError("empty list")
    return vals


def _str_tuple(raw: str):
    vals = tuple(v.strip() for v in raw.split(",") if v.strip())
    if not vals:
        raise ValueError("empty list")
    return vals


def load_config(path) -> SweepConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(path.read_text(), source=str(path))
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc

    for section in cp.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        for key in cp.options(section):
            if key not in _SECTIONS[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]")

    defaults = SweepConfig()
    try:
        channel = ChannelConfig(
            doppler_hz=_get(cp, "channel", "doppler_hz", float, 4.0),
            symbol_rate_hz=_get(cp, "channel", "symbol_rate_hz", float, 4000.0),
            isolation_db=_get(cp, "channel", "isolation_db", float, 26.215),
            block_len=_get(cp, "channel", "block_len", int, 100),
            fading=_get(cp, "channel", "fading", str, "rayleigh"),
            slow_sigma_db=_get(cp, "channel", "slow_sigma_db", float, 0.0),
        )
        stop = StopRule(
            min_bit_errors=_get(cp, "stop", "min_bit_errors", int, 200),
            max_bits=_get(cp, "stop", "max_bits", int, 10_000_000),
            min_blocks=_get(cp, "stop", "min_blocks", int, 0),
        )
        return SweepConfig(
            schemes=_get(cp, "run", "schemes", _str_tuple, defaults.schemes),
            modulation=_get(cp, "run", "modulation", str, defaults.modulation),
            ebn0_grid_db=_get(cp, "run", "ebn0_grid_db", _float_tuple, defaults.ebn0_grid_db),
            xpd_grid_db=_get(cp, "run", "xpd_grid_db", _float_tuple, None),
            channel=channel,
            stop=stop,
            master_seed=_get(cp, "run", "master_seed", int, defaults.master_seed),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def default_config_text() -> str:
    """A commented template covering every key at its default."""
    return """\
[run]
schemes = pmod_mld, pmod_nod, single, ostbc, vblast
modulation = qpsk
ebn0_grid_db = 0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20
# xpd_grid_db = 0, 5, 10, 15, 20, 26.215, 300
master_seed = 12345

[channel]
doppler_hz = 4
symbol_rate_hz = 4000
isolation_db = 26.215
block_len = 100
fading = rayleigh
slow_sigma_db = 0

[stop]
min_bit_errors = 200
max_bits = 10000000
min_blocks = 0
"""
