"""Balise telegram codec, authentication tags and train stop-control simulation."""

from ._core import (
    AuthFailure,
    BaliseError,
    NoTelegramFound,
    ParseError,
    SimulationTimeout,
    compute_check_bits,
    decode,
    derive_keys,
    encode_authenticated,
    encode_legacy,
    generate_tag,
    run_scenario,
    run_scenario_file,
    verify,
)

__all__ = [
    "AuthFailure",
    "BaliseError",
    "NoTelegramFound",
    "ParseError",
    "SimulationTimeout",
    "compute_check_bits",
    "decode",
    "derive_keys",
    "encode_authenticated",
    "encode_legacy",
    "generate_tag",
    "run_scenario",
    "run_scenario_file",
    "verify",
]
