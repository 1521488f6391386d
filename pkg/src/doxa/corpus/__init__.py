"""Fixtures, model files and random generators."""

from .catalog import Fixture, fixtures
from .generate import GenerationError, GeneratorConfig, generate, random_formula
from .io import ModelFormatError, load_model, save_model

__all__ = [
    "Fixture", "fixtures", "GenerationError", "GeneratorConfig", "generate", "random_formula",
    "ModelFormatError", "load_model", "save_model",
]
