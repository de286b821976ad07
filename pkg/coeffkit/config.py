# coeffkit/config.py
# Engine defaults; override with a YAML settings file (coeff --config settings.yaml).
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

import yaml

# Ambient cap: 2^MAX_GENERATORS blades
MAX_GENERATORS = 20

# Fuzz harness
FUZZ_OMEGA_ATTEMPTS = 64
FUZZ_COEFF_RANGE = 2
FUZZ_DENSITY = 0.5
FUZZ_SIGN_CHARACTERS = 2
FUZZ_WEIGHT_ATTEMPTS = 8

DEFAULT_FORMAT = "table"


@dataclass(frozen=True)
class Settings:
    max_generators: int = MAX_GENERATORS
    fuzz_omega_attempts: int = FUZZ_OMEGA_ATTEMPTS
    fuzz_coeff_range: int = FUZZ_COEFF_RANGE
    fuzz_density: float = FUZZ_DENSITY
    fuzz_sign_characters: int = FUZZ_SIGN_CHARACTERS
    fuzz_weight_attempts: int = FUZZ_WEIGHT_ATTEMPTS
    default_format: str = DEFAULT_FORMAT

    def validate(self) -> "Settings":
        if self.max_generators < 1:
            raise ValueError("max_generators must be >= 1")
        if self.fuzz_omega_attempts < 1:
            raise ValueError("fuzz_omega_attempts must be >= 1")
        if self.fuzz_coeff_range < 1:
            raise ValueError("fuzz_coeff_range must be >= 1")
        if not 0.0 < self.fuzz_density <= 1.0:
            raise ValueError("fuzz_density must be in (0, 1]")
        if self.fuzz_sign_characters < 0:
            raise ValueError("fuzz_sign_characters must be >= 0")
        if self.fuzz_weight_attempts < 1:
            raise ValueError("fuzz_weight_attempts must be >= 1")
        if self.default_format not in ("table", "json"):
            raise ValueError("default_format must be 'table' or 'json'")
        return self


def load_settings(path: str | Path | None = None, **overrides) -> Settings:
    """Defaults, then the YAML file (if any), then explicit non-None overrides."""
    settings = Settings()
    if path:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"{path}: settings file must be a mapping")
        known = {f.name for f in fields(Settings)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"{path}: unknown settings {unknown}")
        settings = replace(settings, **data)
    settings = replace(settings, **{k: v for k, v in overrides.items() if v is not None})
    return settings.validate()
