"""Synthetic propeller-noise oracle."""

from .dataset import (
    MANIFEST_NAME,
    ClassBox,
    SynthSpec,
    default_synth_spec,
    draw_params,
    generate_dataset,
    plan_dataset,
)
from .vessel import VesselParams, modulation, synth_components, synth_vessel_signal

__all__ = [
    "ClassBox",
    "MANIFEST_NAME",
    "SynthSpec",
    "VesselParams",
    "default_synth_spec",
    "draw_params",
    "generate_dataset",
    "modulation",
    "plan_dataset",
    "synth_components",
    "synth_vessel_signal",
]
