"""Bundled demonstration model: an autonomous underwater vehicle platform.

Three computing units (multicore CPU, GPU, FPGA) hosting eleven software
components. The numeric values are synthetic test data chosen so the exact
search optimum is unique; they demonstrate the file format and exercise the
full pipeline at a size where exhaustive enumeration is still practical.
"""

from __future__ import annotations

from importlib import resources

from .model import ArchitectureModel, load_model


def auv_json() -> bytes:
    """Raw canonical JSON document of the bundled vehicle model."""
    return resources.files(__package__).joinpath("data/auv.json").read_bytes()


def auv_model() -> ArchitectureModel:
    return load_model(auv_json())
