"""
Result Table - Unit-annotated rows with a provenance footer

Every table a command emits is a ResultTable: named columns with units,
rows of finite numbers or textual flags, and footer lines recording the
config hash, solver residuals and per-cell errors.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

Cell = Union[float, int, str]

INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Column:
    name: str
    unit: str

    @property
    def header(self) -> str:
        return f"{self.name} [{self.unit}]"


@dataclass
class ResultTable:
    """
    One emitted table.
    
    Attributes:
        name: File stem, unique within a run
        kind: Output kind the table belongs to (pathway, burden, ...)
        columns: Column names with units
        rows: Data rows, one cell per column
        footer: Provenance lines, written as '#' comments
    """
    name: str
    kind: str
    columns: Tuple[Column, ...]
    rows: List[Tuple[Cell, ...]] = field(default_factory=list)
    footer: List[str] = field(default_factory=list)

    def add_row(self, values: Sequence[Cell]) -> None:
        """
        Append a row.
        
        Raises:
            ValueError: If the width is wrong or a number is not finite
        """
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} cells but table '{self.name}' has {len(self.columns)} columns"
            )
        row = []
        for value in values:
            if isinstance(value, str):
                row.append(value)
                continue
            number = float(value)
            if not math.isfinite(number):
                raise ValueError(f"non-finite value in table '{self.name}'")
            row.append(int(value) if isinstance(value, (int, np.integer)) and not isinstance(value, bool) else number)
        self.rows.append(tuple(row))

    def add_columns(self, *series: Sequence[float]) -> None:
        """Append rows from equal-length column series."""
        for values in zip(*series):
            self.add_row(values)

    def add_flagged_row(self, flag: str = INFEASIBLE) -> None:
        self.rows.append(tuple(flag for _ in self.columns))

    def add_footer(self, key: str, value: object) -> None:
        self.footer.append(f"{key}: {value}")

    @property
    def flagged(self) -> bool:
        return any(isinstance(cell, str) for row in self.rows for cell in row)

    def column(self, name: str) -> List[Cell]:
        index = [c.name for c in self.columns].index(name)
        return [row[index] for row in self.rows]

    @classmethod
    def build(cls, name: str, kind: str, columns: Sequence[Tuple[str, str]],
              footer: Optional[Sequence[str]] = None) -> "ResultTable":
        return cls(
            name=name,
            kind=kind,
            columns=tuple(Column(n, u) for n, u in columns),
            footer=list(footer or []),
        )
