"""Scenario configuration: a flat JSON object with a fixed set of keys."""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

MEASURES = ("msc_l1", "msc_re", "concurrence_ab", "conversion", "nonmarkov", "unassisted")
FORMATS = ("csv", "json")
FAMILIES = ("Psi", "Phi")


class ConfigError(ValueError):
    """Invalid configuration; the message names the field and its constraint."""


@dataclass(frozen=True)
class ScenarioConfig:
    alpha_sq: float = 0.5
    family: str = "Psi"
    gamma_over_lambda: float = 0.2
    n_a: int = 1
    n_b: int = 1
    t_lambda_max: float = 15.0
    steps: int = 1000
    measures: tuple[str, ...] = field(default=MEASURES)
    output_path: str = "-"
    format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "measures", tuple(self.measures))
        self.check()

    def check(self) -> None:
        def fail(name, constraint):
            raise ConfigError(f"{name}={getattr(self, name)!r}: must be {constraint}")

        if not _is_real(self.alpha_sq) or not 0.0 <= self.alpha_sq <= 1.0:
            fail("alpha_sq", "a real number in [0, 1]")
        if self.family not in FAMILIES:
            fail("family", "one of " + ", ".join(FAMILIES))
        if not _is_real(self.gamma_over_lambda) or not self.gamma_over_lambda > 0:
            fail("gamma_over_lambda", "a real number > 0")
        for name in ("n_a", "n_b"):
            v = getattr(self, name)
            if not _is_int(v) or v < 1:
                fail(name, "an integer >= 1")
        if not _is_real(self.t_lambda_max) or not self.t_lambda_max > 0:
            fail("t_lambda_max", "a real number > 0")
        if not _is_int(self.steps) or self.steps < 2:
            fail("steps", "an integer >= 2")
        bad = [m for m in self.measures if m not in MEASURES]
        if bad or len(set(self.measures)) != len(self.measures):
            fail("measures", "a list of distinct names from " + ", ".join(MEASURES))
        if not isinstance(self.output_path, str) or not self.output_path:
            fail("output_path", "a non-empty string")
        if self.format not in FORMATS:
            fail("format", "one of " + ", ".join(FORMATS))

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["measures"] = list(self.measures)
        return d


def _is_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


FIELD_NAMES = tuple(f.name for f in dataclasses.fields(ScenarioConfig))


def from_dict(data: dict) -> ScenarioConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = sorted(set(data) - set(FIELD_NAMES))
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")
    data = dict(data)
    if "measures" in data:
        if not isinstance(data["measures"], (list, tuple)):
            raise ConfigError(f"measures={data['measures']!r}: must be a list")
        data["measures"] = tuple(data["measures"])
    return ScenarioConfig(**data)


def parse(text: str) -> ScenarioConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    return from_dict(data)


def render(config: ScenarioConfig) -> str:
    return json.dumps(config.to_dict(), indent=2) + "\n"


def load(path: str) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
