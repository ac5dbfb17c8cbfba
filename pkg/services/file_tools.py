"""
File Tools Service - CSV emission and data-file ingestion

Provides the file operations DecarbPath commands need:
- format_csv: Render a ResultTable as deterministic CSV text
- emit_csv: Write a ResultTable to disk
- create_file: Create a file, with parent directories
- read_mac_points: Read two-column (reduction, cost) MAC data

All methods return dictionaries with a `success` flag instead of raising.
"""

import csv
import io
import re
from pathlib import Path
from typing import Dict, List, Union

from model.mac import MacDataPoint

from .result_table import ResultTable

DELIMITERS = re.compile(r"[,;\s]+")


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    # shortest representation that round-trips
    return repr(float(value))


class FileTools:
    """File helpers for emitting result tables and reading input data."""
    
    @staticmethod
    def _normalize_path(path: Union[str, Path]) -> Path:
        if isinstance(path, str):
            return Path(path)
        return path
    
    @staticmethod
    def format_csv(table: ResultTable) -> str:
        """
        Render a table as CSV text.
        
        The header row carries `name [unit]`; footer lines start with '#'.
        Line endings are CRLF as in RFC 4180.
        
        Args:
            table: Table to render
            
        Returns:
            CSV text
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow([c.header for c in table.columns])
        for row in table.rows:
            writer.writerow([_format_cell(v) for v in row])
        for line in table.footer:
            buffer.write(f"# {line}\r\n")
        return buffer.getvalue()
    
    @staticmethod
    def create_file(
        path: Union[str, Path],
        content: str,
        overwrite: bool = False
    ) -> Dict:
        """
        Create a new file with the specified content.
        
        Creates parent directories if they don't exist.
        
        Args:
            path: Path to the file to create
            content: Content to write to the file
            overwrite: If True, overwrite existing file. If False, fail if exists.
            
        Returns:
            Dictionary with:
                - success: bool
                - message: str
                - path: str (absolute path to created file)
        """
        path = FileTools._normalize_path(path)
        
        try:
            if path.exists() and not overwrite:
                return {
                    "success": False,
                    "message": f"File already exists: {path}. Set overwrite=True to replace.",
                    "path": str(path.resolve())
                }
            
            path.parent.mkdir(parents=True, exist_ok=True)
            # newline="" keeps the CRLF terminators written by the csv module
            with path.open("w", encoding="utf-8", newline="") as handle:
                handle.write(content)
            
            return {
                "success": True,
                "message": f"Created file with {len(content)} characters",
                "path": str(path.resolve())
            }
            
        except PermissionError:
            return {
                "success": False,
                "message": f"Permission denied: Cannot write to {path}",
                "path": str(path)
            }
        except OSError as e:
            return {
                "success": False,
                "message": f"Error creating file {path}: {e}",
                "path": str(path)
            }
    
    @staticmethod
    def emit_csv(table: ResultTable, destination: Union[str, Path]) -> Dict:
        """
        Write a table to a CSV file, replacing any previous file.
        
        Args:
            table: Table to write
            destination: Target file path
            
        Returns:
            Dictionary with success, message, path and rows
            
        Example:
            >>> FileTools.emit_csv(table, "out/pathway_goal300_r0.024.csv")
            {"success": True, "message": "Created file with 1234 characters", "path": "...", "rows": 2001}
        """
        result = FileTools.create_file(destination, FileTools.format_csv(table), overwrite=True)
        result["rows"] = len(table.rows)
        return result
    
    @staticmethod
    def read_mac_points(path: Union[str, Path]) -> Dict:
        """
        Read MAC data points from a two-column text file.
        
        Columns are reduction (Gt CO2/yr) and marginal cost
        (billion $ per Gt CO2/yr), separated by commas, semicolons or
        whitespace. Blank lines and text after '#' are ignored.
        
        Args:
            path: Data file path
            
        Returns:
            Dictionary with:
                - success: bool
                - points: List[MacDataPoint]
                - message: str (error description on failure)
                - path: str
        """
        path = FileTools._normalize_path(path)
        
        if not path.exists():
            return {"success": False, "points": [], "message": f"File not found: {path}", "path": str(path)}
        
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            return {"success": False, "points": [], "message": f"Error reading file {path}: {e}", "path": str(path)}
        
        points: List[MacDataPoint] = []
        for number, line in enumerate(lines, 1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            fields = [f for f in DELIMITERS.split(content) if f]
            try:
                if len(fields) != 2:
                    raise ValueError(f"expected 2 columns, found {len(fields)}")
                points.append(MacDataPoint(reduction=float(fields[0]), marginal_cost=float(fields[1])))
            except ValueError as e:
                return {
                    "success": False,
                    "points": [],
                    "message": f"{path}:{number}: {e}",
                    "path": str(path)
                }
        
        return {
            "success": True,
            "points": points,
            "message": f"Read {len(points)} data points",
            "path": str(path.resolve())
        }
