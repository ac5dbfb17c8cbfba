"""
DecarbPath Services Package

Exports all service classes for easy importing.
"""

from .execution_service import ExecutionService
from .file_tools import FileTools
from .result_table import ResultTable
from .scenario_config import (
    OutputKind,
    PathwayChoice,
    ScenarioConfig,
    config_hash,
    load_config,
    parse_config,
    serialize_config,
)
from .sweep_service import SweepService
from .workspace_manager import WorkspaceManager

__all__ = [
    "ExecutionService",
    "FileTools",
    "ResultTable",
    "OutputKind",
    "PathwayChoice",
    "ScenarioConfig",
    "config_hash",
    "load_config",
    "parse_config",
    "serialize_config",
    "SweepService",
    "WorkspaceManager",
]
