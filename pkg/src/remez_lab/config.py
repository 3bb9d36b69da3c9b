"""Experiment configuration: a YAML file plus command-line overrides."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .certifier import SuiteConfig
from .errors import ConfigError
from .measures import KINDS, MeasureSpec

COMMANDS = ("verify-theorem1", "verify-cw", "verify-classical", "tightness",
            "search-extremal", "fit-constant")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class MeasureConfig(_Strict):
    kind: Literal[KINDS] = "uniform_box"  # type: ignore[valid-type]
    n: Optional[int] = Field(default=None, ge=1, le=12)
    sampler: Literal["direct", "hit_and_run"] = "direct"
    burn_in: Optional[int] = Field(default=None, ge=0)
    thinning: Optional[int] = Field(default=None, ge=1)
    low: Optional[float] = None
    high: Optional[float] = None
    radius: float = Field(default=1.0, gt=0)
    A: Optional[list[list[float]]] = None
    b: Optional[list[float]] = None

    def build(self, n: int | None = None) -> MeasureSpec:
        n = self.n if n is None else n
        extra = {"burn_in": self.burn_in, "thinning": self.thinning}
        if self.kind == "uniform_box":
            return MeasureSpec.box(n or 1, -1.0 if self.low is None else self.low,
                                   1.0 if self.high is None else self.high,
                                   sampler=self.sampler, **extra)
        if self.kind == "uniform_ball":
            return MeasureSpec.ball(n or 1, self.radius, sampler=self.sampler, **extra)
        if self.kind == "uniform_simplex":
            return MeasureSpec.simplex(n or 1, sampler=self.sampler, **extra)
        if self.kind == "uniform_polytope":
            if self.A is None or self.b is None:
                raise ConfigError("uniform_polytope needs both A and b")
            return MeasureSpec.polytope(self.A, self.b, **extra)
        if self.kind == "exponential_halfline":
            return MeasureSpec.exponential()
        if self.kind == "gaussian_standard":
            return MeasureSpec.gaussian(n or 1)
        return MeasureSpec.interval(0.0 if self.low is None else self.low,
                                    1.0 if self.high is None else self.high)


class GridConfig(_Strict):
    n: list[int] = Field(default=[1, 2, 3, 4], min_length=1)
    d: list[int] = Field(default=[1, 2, 3, 4], min_length=1)
    p: list[float] = Field(default=[0.5, 1.0, 2.0], min_length=1)
    thresholds: int = Field(default=8, ge=1)


class SetFamilyConfig(_Strict):
    families: list[Literal["halfspace", "sublevel", "whole"]] = Field(
        default=["halfspace", "sublevel"], min_length=1)
    quantiles: tuple[float, float] = (0.1, 0.9)

    @model_validator(mode="after")
    def _quantiles(self):
        lo, hi = self.quantiles
        if not 0.0 < lo <= hi < 1.0:
            raise ValueError("quantiles must satisfy 0 < lo <= hi < 1")
        return self


class BudgetConfig(_Strict):
    samples: int = Field(default=100_000, ge=1)
    instances: int = Field(default=25, ge=1)
    iterations: int = Field(default=200, ge=1)
    restarts: int = Field(default=4, ge=1)


class ClassicalConfig(_Strict):
    scalar_instances: int = Field(default=500, ge=0)
    vector_instances: int = Field(default=200, ge=0)
    trig_instances: int = Field(default=100, ge=0)
    max_degree: int = Field(default=6, ge=1)
    max_components: int = Field(default=3, ge=1)
    max_trig_degree: int = Field(default=4, ge=1)
    min_fraction: float = Field(default=0.2, gt=0, le=1)
    max_pieces: int = Field(default=3, ge=1)


class TightnessConfig(_Strict):
    d: list[int] = Field(default=list(range(1, 11)), min_length=1)
    eps: list[float] = Field(default=[0.1, 0.5, 1.0], min_length=1)


class SearchSetConfig(_Strict):
    kind: Literal["halfspace", "interval"] = "interval"
    lo: float = 0.0
    hi: float = 0.5


class SearchConfig(_Strict):
    family: Literal["dense", "monomial"] = "monomial"
    n: int = Field(default=1, ge=1)
    d: int = Field(default=3, ge=0)
    p: float = 1.0
    step: float = Field(default=0.5, gt=0)
    decay: float = Field(default=0.98, gt=0, le=1)
    set: SearchSetConfig = SearchSetConfig()


class OutputConfig(_Strict):
    path: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    plot: Optional[str] = None


def _default_measures():
    return [MeasureConfig(kind="uniform_box"), MeasureConfig(kind="uniform_ball"),
            MeasureConfig(kind="uniform_simplex")]


class ExperimentConfig(_Strict):
    """Validated experiment description; every field has a documented default."""

    command: Literal[COMMANDS]  # type: ignore[valid-type]
    seed: int = Field(ge=0)
    c: float = Field(default=4.0, gt=0)
    R: float = Field(default=4.0, gt=0)
    R_trig: float = Field(default=316.0, gt=0)
    confidence: float = Field(default=0.99, gt=0, lt=1)
    method: Literal["auto", "exact", "monte_carlo"] = "auto"
    law: Literal["normal", "spiked"] = "normal"
    workers: int = Field(default=1, ge=1)
    fixed_clock: bool = False
    measures: list[MeasureConfig] = Field(default_factory=_default_measures, min_length=1)
    measure: MeasureConfig = MeasureConfig(kind="exponential_halfline")
    grid: GridConfig = GridConfig()
    sets: SetFamilyConfig = SetFamilyConfig()
    budget: BudgetConfig = BudgetConfig()
    classical: ClassicalConfig = ClassicalConfig()
    tightness: TightnessConfig = TightnessConfig()
    search: SearchConfig = SearchConfig()
    output: OutputConfig = OutputConfig()

    @model_validator(mode="after")
    def _exponents(self):
        for i, p in enumerate(self.grid.p):
            if p == 0:
                raise ValueError(f"grid.p[{i}]: p=0 has no bound to verify")
            for d in self.grid.d:
                if p < 0 and p <= -1.0 / d:
                    raise ValueError(
                        f"grid.p[{i}]: p={p} is outside (-1/d, 0) U (0, inf) for d={d}")
            if p < 0 and self.command == "verify-cw":
                raise ValueError(f"grid.p[{i}]: verify-cw needs p > 0, got {p}")
        if any(d < 1 for d in self.grid.d):
            raise ValueError("grid.d: degrees must be >= 1")
        if self.search.p <= 0 and self.search.d >= 1 and self.search.p <= -1.0 / self.search.d:
            raise ValueError(f"search.p: p={self.search.p} is outside (-1/d, 0) U [0, inf)")
        return self

    def suite_config(self) -> SuiteConfig:
        return SuiteConfig(
            measures=tuple(m.kind for m in self.measures),
            dims=tuple(self.grid.n), degrees=tuple(self.grid.d), exponents=tuple(self.grid.p),
            instances=self.budget.instances, samples=self.budget.samples, seed=self.seed,
            c=self.c, set_families=tuple(self.sets.families),
            quantiles=tuple(self.sets.quantiles), thresholds=self.grid.thresholds,
            law=self.law, confidence=self.confidence, method=self.method,
            sampler=self.measures[0].sampler, workers=self.workers,
            fixed_clock=self.fixed_clock, R=self.R, R_trig=self.R_trig,
            **self.classical.model_dump())


def _set_dotted(data: dict, dotted: str, value: Any) -> None:
    parts = dotted.split(".")
    node = data
    for part in parts[:-1]:
        nxt = node.get(part)
        if not isinstance(nxt, dict):
            nxt = {}
            node[part] = nxt
        node = nxt
    node[parts[-1]] = value


def _format_error(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        loc = ""
        for part in e["loc"]:
            loc += f"[{part}]" if isinstance(part, int) else (f".{part}" if loc else str(part))
        msg = e["msg"].removeprefix("Value error, ")
        if e["type"] == "extra_forbidden":
            msg = "unknown key"
        lines.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(lines)


def parse_config(path: str | Path | None = None,
                 overrides: dict[str, Any] | None = None) -> ExperimentConfig:
    """Load a YAML (or JSON) config and apply dotted-key overrides.

    Raises :class:`ConfigError` naming the offending key(s).
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            loaded = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError("config file must contain a mapping at top level")
        data = loaded
    for key, value in (overrides or {}).items():
        _set_dotted(data, key, value)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_error(exc)) from None
