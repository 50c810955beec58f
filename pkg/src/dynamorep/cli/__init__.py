"""Command-line interface and experiment store."""

from .config import ExperimentConfig, load_config
from .main import main
from .store import OutputStore

__all__ = ["ExperimentConfig", "OutputStore", "load_config", "main"]
