"""Command-line front end: JSON scenario configs to CSV tables and SVG plots."""

from .config import ScenarioConfig, validate_config
from .main import main
from .scenarios import run_scenario

__all__ = ["ScenarioConfig", "validate_config", "run_scenario", "main"]
