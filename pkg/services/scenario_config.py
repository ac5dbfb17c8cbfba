"""
Scenario Config - Parse, validate and serialize scenario documents

A scenario document is a flat list of `key = value` lines with dotted
sections:

    # median economy, two goals
    economy.r = 0.024
    mac.nu = 2.4
    grid.horizon = 100
    scenario.goals_pgc = [300, 600]
    scenario.pathway_kind = both

Values are JSON scalars or lists, or bare words. Lines are tokenized with
python-dotenv's parser, so quoting and `#` comments follow .env rules.
"""

import hashlib
import io
import itertools
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from dotenv.parser import parse_stream
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from model.analysis import DEFAULT_TCRE
from model.economy import EconomyParams, TimeGrid
from model.errors import ConfigError
from model.mac import MacCurve


class PathwayChoice(str, Enum):
    """Pathway kinds a sweep builds per cell."""
    QUASI_STATIONARY = "quasi_stationary"
    CONSTANT_RATE = "constant_rate"
    BOTH = "both"


class OutputKind(str, Enum):
    """Series a sweep can emit."""
    PATHWAY = "pathway"
    EXPENDITURE = "expenditure"
    BURDEN = "burden"
    COST_CURVE = "cost_curve"
    POWER_LAW = "power_law"
    DELAY = "delay"


DEFAULT_K_VALUES: Tuple[float, ...] = tuple(round(0.005 * i, 3) for i in range(21))


class ScenarioConfig(BaseModel):
    """Validated scenario: economy, MAC curve, grid and sweep settings."""
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    economy: EconomyParams = Field(default_factory=EconomyParams)
    curve: MacCurve = Field(default_factory=MacCurve)
    grid: TimeGrid = Field(default_factory=TimeGrid)
    goals_pgc: Tuple[float, ...] = (300.0, 600.0, 900.0, 1200.0)
    growth_rates: Tuple[float, ...] = (0.012, 0.024, 0.036)
    pathway_kind: PathwayChoice = PathwayChoice.QUASI_STATIONARY
    outputs: Tuple[OutputKind, ...] = (OutputKind.PATHWAY,)
    k_values: Tuple[float, ...] = DEFAULT_K_VALUES
    # empty means the single economy.delta / mac.nu value
    discount_rates: Tuple[float, ...] = ()
    mac_exponents: Tuple[float, ...] = ()
    tcre: float = Field(DEFAULT_TCRE, gt=0, description="K of warming per 1000 PgC")
    baseline_warming: float = Field(1.0, description="Warming already realized, K")

    @field_validator(
        "goals_pgc", "growth_rates", "outputs", "k_values", "discount_rates", "mac_exponents", mode="before",
    )
    @classmethod
    def _split_words(cls, value: Any) -> Any:
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(",") if part.strip())
        if isinstance(value, (int, float)):
            return (value,)
        return value

    @field_validator("goals_pgc")
    @classmethod
    def _check_goals(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value:
            raise ValueError("goals_pgc must not be empty")
        if any(g <= 0 for g in value):
            raise ValueError("goals_pgc must all be positive")
        return value

    @field_validator("growth_rates")
    @classmethod
    def _check_rates(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value:
            raise ValueError("growth_rates must not be empty")
        if any(r < 0 for r in value):
            raise ValueError("growth_rates must be non-negative")
        return value

    @field_validator("discount_rates")
    @classmethod
    def _check_discount_rates(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(d < 0 for d in value):
            raise ValueError("discount_rates must be non-negative")
        return value

    @field_validator("mac_exponents")
    @classmethod
    def _check_mac_exponents(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(nu <= 0 for nu in value):
            raise ValueError("mac_exponents must be positive")
        return value

    @field_validator("k_values")
    @classmethod
    def _check_k_values(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(k < 0 for k in value) or list(value) != sorted(value):
            raise ValueError("k_values must be non-negative and sorted")
        return value

    @model_validator(mode="after")
    def _check_mu0(self) -> "ScenarioConfig":
        if self.curve.mu0 != self.economy.mu0:
            raise ValueError("mac mu0 must equal economy.mu0")
        return self

    def economy_for(self, r: float, delta: Optional[float] = None) -> EconomyParams:
        """Economy with the growth rate (and optionally discount rate) of one sweep cell."""
        update: Dict[str, float] = {"r": r}
        if delta is not None:
            update["delta"] = delta
        return self.economy.model_copy(update=update)

    def curve_for(self, nu: float) -> MacCurve:
        """MAC curve with the exponent of one sweep cell."""
        return self.curve.model_copy(update={"nu": nu})

    def parameter_grid(self) -> List[Tuple[float, float, float]]:
        """
        (r, delta, nu) cells of the cost-fraction study, rate-major.

        Falls back to economy.delta and mac.nu when the matching list is empty.
        """
        deltas = self.discount_rates or (self.economy.delta,)
        exponents = self.mac_exponents or (self.curve.nu,)
        return list(itertools.product(self.growth_rates, deltas, exponents))


# section -> (target in the ScenarioConfig constructor, allowed fields)
SECTIONS: Dict[str, Tuple[str, Tuple[str, ...]]] = {
    "economy": ("economy", ("g0", "r", "theta", "mu0", "delta")),
    "mac": ("curve", ("alpha", "nu")),
    "grid": ("grid", ("horizon", "step")),
    "scenario": ("", (
        "goals_pgc", "growth_rates", "pathway_kind", "outputs",
        "k_values", "discount_rates", "mac_exponents", "tcre", "baseline_warming",
    )),
}


def _decode_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except ValueError:
        return raw.strip()


def _location_key(loc: Tuple[Any, ...]) -> str:
    first = str(loc[0]) if loc else ""
    for section, (target, _) in SECTIONS.items():
        if target and first == target:
            return f"{section}.{loc[1]}" if len(loc) > 1 else section
    return f"scenario.{first}" if first else "scenario"


def parse_config(text: str, default_step: Optional[float] = None) -> ScenarioConfig:
    """
    Parse and validate a scenario document.

    Args:
        text: Document contents; an empty document yields all defaults
        default_step: grid.step used when the document does not set one

    Returns:
        Validated ScenarioConfig

    Raises:
        ConfigError: Malformed line, unknown or duplicate key, or invalid value
    """
    sections: Dict[str, Dict[str, Any]] = {"economy": {}, "curve": {}, "grid": {}, "": {}}
    lines: Dict[str, int] = {}

    for binding in parse_stream(io.StringIO(text)):
        line = binding.original.line
        if binding.error:
            raise ConfigError("malformed line", line=line)
        if binding.key is None:
            continue
        key = binding.key
        if binding.value is None:
            raise ConfigError("missing value", line=line, key=key)
        section, _, field = key.partition(".")
        if section not in SECTIONS or field not in SECTIONS[section][1]:
            raise ConfigError("unknown key", line=line, key=key)
        if key in lines:
            raise ConfigError("duplicate key", line=line, key=key)
        lines[key] = line
        sections[SECTIONS[section][0]][field] = _decode_value(binding.value)

    if default_step is not None:
        sections["grid"].setdefault("step", default_step)
    # the MAC curve shares the economy's reference intensity
    sections["curve"]["mu0"] = sections["economy"].get("mu0", EconomyParams().mu0)

    try:
        return ScenarioConfig(
            economy=sections["economy"],
            curve=sections["curve"],
            grid=sections["grid"],
            **sections[""],
        )
    except ValidationError as exc:
        error = exc.errors()[0]
        key = _location_key(tuple(error.get("loc", ())))
        raise ConfigError(f"invalid value: {error['msg']}", line=lines.get(key), key=key) from exc


def load_config(path: Union[str, Path], default_step: Optional[float] = None) -> ScenarioConfig:
    """Read and parse a scenario document from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text, default_step)


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, tuple):
        return json.dumps([_format_plain(v) for v in value])
    return json.dumps(_format_plain(value))


def _format_plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def serialize_config(config: ScenarioConfig) -> str:
    """
    Write every key of a config in a fixed order.

    Floats use Python's shortest round-trip repr, so
    parse_config(serialize_config(c)) == c.
    """
    sources = {"economy": config.economy, "mac": config.curve, "grid": config.grid, "scenario": config}
    lines = ["# DecarbPath scenario"]
    for section, (_, fields) in SECTIONS.items():
        model = sources[section]
        for field in fields:
            lines.append(f"{section}.{field} = {_format_value(getattr(model, field))}")
    return "\n".join(lines) + "\n"


def config_hash(config: ScenarioConfig) -> str:
    """Short SHA-256 digest of the serialized config."""
    return hashlib.sha256(serialize_config(config).encode("utf-8")).hexdigest()[:16]
