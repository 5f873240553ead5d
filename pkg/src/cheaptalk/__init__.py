"""Exact-rational toolkit for finite cheap talk games.

Verification of perfect Bayesian (cheap talk) equilibria, sender-optimal
solvers for the tractable cases, signal-support reduction, a Bayesian
persuasion LP baseline, and a compiler from 3CNF formulas to hardness-gadget
game instances with certificate equilibria.
"""

from .game import (
    Game,
    Posterior,
    Profile,
    ProfileValues,
    ReceiverStrategy,
    SignalingPolicy,
    Verdict,
    Violation,
    babbling_equilibrium,
    bayes_posteriors,
    profile_values,
    receiver_best_responses,
    sender_best_signals,
    verify_equilibrium,
)
from .rationals import Q, format_rational, parse_rational, rational
from .solvers import (
    SolveResult,
    solve_binary_action,
    solve_enumeration,
    solve_persuasion_lp,
)
from .support import SplitPoint, reduce_support

__all__ = [
    "Game",
    "Posterior",
    "Profile",
    "ProfileValues",
    "ReceiverStrategy",
    "SignalingPolicy",
    "SolveResult",
    "SplitPoint",
    "Verdict",
    "Violation",
    "babbling_equilibrium",
    "bayes_posteriors",
    "profile_values",
    "receiver_best_responses",
    "reduce_support",
    "sender_best_signals",
    "solve_binary_action",
    "solve_enumeration",
    "solve_persuasion_lp",
    "verify_equilibrium",
    "Q",
    "format_rational",
    "parse_rational",
    "rational",
]

__version__ = "0.1.0"
