"""Exact event-driven evolution of a 1+1D massless scalar field with a hard field cutoff."""

from .free import ContactEvent, InvalidScenarioError, MoverPair, dalembert_eval, first_contact
from .predictor import PredictorResult, predict_final
from .profile import Knot, Profile, superpose
from .shock import (
    FieldState,
    Phase,
    Scenario,
    ShockTrajectory,
    decay_onset,
    evolve,
    final_movers,
    plateau_decay,
    shock_trajectory,
    solve_displacement,
    volume_balance,
)

__all__ = [
    "ContactEvent", "FieldState", "InvalidScenarioError", "Knot", "MoverPair", "Phase",
    "PredictorResult", "Profile", "Scenario", "ShockTrajectory", "dalembert_eval",
    "decay_onset", "evolve", "final_movers", "first_contact", "plateau_decay",
    "predict_final", "shock_trajectory", "solve_displacement", "superpose", "volume_balance",
]
