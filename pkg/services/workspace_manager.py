"""
Workspace Manager - Output directory layout for DecarbPath runs

The file system is the record of a run: one CSV per table, the exact
scenario document that produced them, and a run_info.json index.
"""

import json
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .file_tools import FileTools
from .result_table import ResultTable
from .scenario_config import ScenarioConfig, config_hash, serialize_config


class WorkspaceManager:
    """
    Manages the DecarbPath output directory structure.

    Directory Structure:
        DecarbPath_Output/
        └── {run_name}/
            ├── scenario.cfg
            ├── run_info.json
            └── tables/
                └── {table_name}.csv

    run_info.json carries no timestamps, so reruns of the same config
    produce identical directories.
    """

    def __init__(self, output_root: Optional[Path] = None):
        """
        Initialize the workspace manager.

        Args:
            output_root: Root directory for runs. Defaults to ./DecarbPath_Output
        """
        if output_root is None:
            self.output_root = Path.cwd() / "DecarbPath_Output"
        else:
            self.output_root = Path(output_root)

    def _sanitize_name(self, name: str) -> str:
        """Sanitize a run or table name for use as a file name."""
        # keep dots so growth rates such as r0.024 stay readable
        safe = re.sub(r'[^\w\-.]', '_', name)
        safe = re.sub(r'_+', '_', safe)
        safe = safe.strip('_.')
        return safe[:100] if safe else "unnamed"

    def init_run(self, run_name: str) -> Path:
        """
        Create the directory for a run.

        Args:
            run_name: Name of the run (will be sanitized)

        Returns:
            Path to the run directory
        """
        run_path = self.output_root / self._sanitize_name(run_name)
        (run_path / "tables").mkdir(parents=True, exist_ok=True)
        return run_path

    def table_path(self, run_path: Path, table_name: str) -> Path:
        """Path of the CSV file for a table."""
        return Path(run_path) / "tables" / f"{self._sanitize_name(table_name)}.csv"

    def write_run(
        self,
        run_path: Path,
        command: str,
        tables: Sequence[ResultTable],
        config: Optional[ScenarioConfig] = None,
    ) -> List[Dict]:
        """
        Write every table of a run plus its scenario and index files.

        Args:
            run_path: Directory returned by init_run
            command: CLI command that produced the tables
            tables: Tables in emission order
            config: Scenario used, recorded as scenario.cfg

        Returns:
            One FileTools result dictionary per table
        """
        run_path = Path(run_path)
        results = [
            FileTools.emit_csv(table, self.table_path(run_path, table.name))
            for table in tables
        ]

        info = {
            "command": command,
            "tables": [
                {"name": table.name, "kind": table.kind, "rows": len(table.rows),
                 "flagged": table.flagged, "file": Path(result["path"]).name}
                for table, result in zip(tables, results)
            ],
        }
        if config is not None:
            FileTools.create_file(run_path / "scenario.cfg", serialize_config(config), overwrite=True)
            info["config_hash"] = config_hash(config)
        FileTools.create_file(run_path / "run_info.json", json.dumps(info, indent=2) + "\n", overwrite=True)
        return results

    def list_runs(self) -> List[Dict]:
        """List all runs under the output root."""
        runs = []
        if not self.output_root.exists():
            return runs

        for path in sorted(self.output_root.iterdir()):
            if path.is_dir() and not path.name.startswith('.'):
                info_path = path / "run_info.json"
                if info_path.exists():
                    try:
                        info = json.loads(info_path.read_text(encoding="utf-8"))
                        info["path"] = str(path)
                        runs.append(info)
                    except json.JSONDecodeError:
                        runs.append({"name": path.name, "path": str(path), "status": "unknown"})

        return runs
