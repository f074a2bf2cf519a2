"""Python interface to the second-sound constitutive engine.

The heavy lifting lives in the compiled extension ``secondsound._core``;
this package re-exports its symbols and adds a couple of convenience
helpers for JSON round-trips.
"""

import json as _json

from ._core import (  # noqa: F401
    ReferentialState,
    audit_json,
    cauchy_stress,
    evaluate,
    fourier_audit_json,
    green_strain,
    heat_flux_rate,
    preset_names,
    pull_covector,
    pull_heat_flux,
    push_heat_flux,
    run_scenario_json,
)


def audit(preset, params=None, samples=100, seed=20240101, mode="cattaneo"):
    """Run the constitutive audit and return the report as a dict."""
    raw = audit_json(preset, params or {}, samples, seed, mode)
    return _json.loads(raw)


def run_scenario(config):
    """Run one 1-D scenario described by a config dict (the CLI's
    ``simulate`` block) and return time series as a dict of lists."""
    raw = run_scenario_json(_json.dumps(config))
    return _json.loads(raw)
