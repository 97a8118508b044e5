"""Exact certificate that the integral cohomology of K2(A) is torsion free.

Thin wrapper over the C++ core. Matrix entries cross the boundary as decimal
strings so arbitrarily large integers survive.
"""

import json

from . import _core
from ._core import KummerError, command_names, ell_table, tensor, vanishing, wedge

__all__ = [
    "KummerError",
    "check_script",
    "cokernel",
    "command_names",
    "context",
    "ell_table",
    "run",
    "shipped_script",
    "smith_normal_form",
    "tensor",
    "vanishing",
    "wedge",
]


def _strings(rows):
    return [[str(int(x)) for x in row] for row in rows]


def _ints(rows):
    return [[int(x) for x in row] for row in rows]


def run(command, format="text", script=None, seed=None, convention="forward"):
    """Run a kummer-cert command. Returns (exit_code, stdout, stderr)."""
    return _core.run(command, format, None if script is None else str(script), seed, convention)


def smith_normal_form(rows):
    """Returns (u, d, v) as lists of Python ints with u @ m @ v == d."""
    u, d, v = _core.smith_normal_form(_strings(rows))
    return _ints(u), _ints(d), _ints(v)


def cokernel(rows):
    return _core.cokernel(_strings(rows))


def context(convention="forward"):
    return json.loads(_core.context_json(convention))


def shipped_script():
    return _core.shipped_script()


def check_script(text, with_leaf_facts=True):
    """Replays a ledger script and returns the report as a dict."""
    return json.loads(_core.check_script(text, with_leaf_facts))
