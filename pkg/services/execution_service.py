"""
Execution Service - Concurrent evaluation of independent sweep cells

Runs scenario cells (solve a goal for one growth rate, fit one power law,
...) sequentially or on a thread pool and reports each outcome as a result
dictionary. Results always come back in submission order, so downstream
output does not depend on the worker count.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Sequence

from model.errors import DecarbError

logger = logging.getLogger(__name__)

Cell = Callable[[], Any]


class ExecutionService:
    """
    Runner for independent, pure computations.

    Model errors (infeasible goals, solver failures, domain errors) are
    captured in the result dictionary; anything else is a programming
    error and propagates.

    Attributes:
        max_workers: Thread count; 1 runs cells inline
    """

    def __init__(self, max_workers: int = 1):
        """
        Initialize the execution service.

        Args:
            max_workers: Number of worker threads, at least 1
        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {max_workers}")
        self.max_workers = max_workers

    def run_cell(self, cell: Cell) -> Dict:
        """
        Evaluate one cell.

        Args:
            cell: Zero-argument callable returning the cell value

        Returns:
            Dictionary with:
                - success: bool
                - value: cell result (None on failure)
                - error: str (None on success)
                - error_type: str (exception class name, None on success)
                - duration_ms: int

        Example:
            >>> service.run_cell(lambda: solve_multiplier(1100.0, grid, economy))
            {"success": True, "value": MultiplierSolution(...), "error": None, ...}
        """
        start = time.perf_counter()
        try:
            value = cell()
        except DecarbError as e:
            duration_ms = int((time.perf_counter() - start) * 1000)
            logger.info("[Execution] cell failed: %s: %s", type(e).__name__, e)
            return {
                "success": False,
                "value": None,
                "error": str(e),
                "error_type": type(e).__name__,
                "duration_ms": duration_ms,
            }
        return {
            "success": True,
            "value": value,
            "error": None,
            "error_type": None,
            "duration_ms": int((time.perf_counter() - start) * 1000),
        }

    def run_cells(self, cells: Sequence[Cell]) -> List[Dict]:
        """
        Evaluate cells, concurrently when max_workers > 1.

        Args:
            cells: Independent zero-argument callables

        Returns:
            One result dictionary per cell, in input order
        """
        if self.max_workers == 1 or len(cells) <= 1:
            return [self.run_cell(cell) for cell in cells]

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(self.run_cell, cells))
