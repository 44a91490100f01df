"""Guided bottom-up program synthesis with just-in-time grammar learning."""

from .dsl import Example, Program, Sort
from .grammar import Grammar, Pcfg, cost_model, uniform_pcfg
from .learner import Probe, ProbeConfig, ProbeResult, SelectionScheme, probe

__version__ = "0.1.0"

__all__ = [
    "Example", "Program", "Sort", "Grammar", "Pcfg", "cost_model", "uniform_pcfg",
    "Probe", "ProbeConfig", "ProbeResult", "SelectionScheme", "probe",
]
