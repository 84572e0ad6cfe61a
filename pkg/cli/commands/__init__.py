"""
Subcommands of the pl CLI.
"""

from . import casimir, lubanski, spectrum, spin_matrices, tangle, traces, verify

COMMANDS = (spin_matrices, spectrum, traces, casimir, tangle, verify, lubanski)

__all__ = ["COMMANDS", "spin_matrices", "spectrum", "traces", "casimir", "tangle", "verify", "lubanski"]
