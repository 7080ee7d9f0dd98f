"""Spectral perturbation laboratory: Python front end to the C++ core."""

import json as _json

from ._katolab import *  # noqa: F401,F403
from ._katolab import Error, __version__, run_config_text


def run(subcommand, **params):
    """Run one experiment and return its record (or sweep) as a dict."""
    lines = [f"{k} = {v}" for k, v in params.items()]
    return _json.loads(run_config_text(subcommand, "\n".join(lines)))
