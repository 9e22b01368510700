"""Run configuration: defaults, key=value config files, flag overrides.

Precedence is fixed: built-in defaults < config file < command-line flags.
Unknown keys are rejected rather than ignored so typos cannot silently
change a run.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ConfigError
from .ranking import RankParams


@dataclass
class Config:
    max_len: int = 3
    window: int = 10
    k_neighbors: int = 5
    min_sim: float = 0.1
    lambda_domain: float = 1.0
    beta: float = 2.0
    absent_quota: int = 10
    damping: float = 0.85
    tol: float = 1e-6
    max_iter: int = 100
    gamma_absent: float = 0.8
    top_n: int = 10
    stopwords_path: str | None = None

    def validate(self) -> "Config":
        checks = [
            (self.max_len >= 1, "max_len must be >= 1"),
            (self.window >= 1, "window must be >= 1"),
            (self.k_neighbors >= 0, "k_neighbors must be >= 0"),
            (0.0 <= self.min_sim <= 1.0, "min_sim must lie in [0, 1]"),
            (self.lambda_domain >= 0.0, "lambda_domain must be >= 0"),
            (self.beta >= 1.0, "beta must be >= 1"),
            (self.absent_quota >= 0, "absent_quota must be >= 0"),
            (0.0 < self.damping < 1.0, "damping must lie in (0, 1)"),
            (self.tol > 0.0, "tol must be positive"),
            (self.max_iter >= 1, "max_iter must be >= 1"),
            (self.gamma_absent >= 0.0, "gamma_absent must be >= 0"),
            (self.top_n >= 1, "top_n must be >= 1"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        return self

    def rank_params(self) -> RankParams:
        return RankParams(damping=self.damping, tol=self.tol,
                          max_iter=self.max_iter,
                          gamma_absent=self.gamma_absent, top_n=self.top_n)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(Config)}

    def replace(self, **overrides) -> "Config":
        values = self.to_dict()
        for key, value in overrides.items():
            if key not in values:
                raise ConfigError(f"unknown config key {key!r}")
            if value is not None:
                values[key] = value
        return Config(**values).validate()


_FIELD_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(key: str, raw: str):
    raw = raw.strip()
    if raw and raw[0] in "\"'" and raw[-1] == raw[0] and len(raw) >= 2:
        raw = raw[1:-1]
    ftype = _FIELD_TYPES[key]
    try:
        if ftype == "int":
            return int(raw)
        if ftype == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r}: cannot parse {raw!r}") from None
    return raw


def load_config(path: str | None) -> Config:
    """Read a key = value config file; None yields pure defaults."""
    if path is None:
        return Config().validate()
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.strip()
                if not text or text.startswith("#"):
                    continue
                if "=" not in text:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                key, _, raw = text.partition("=")
                key = key.strip()
                if key not in _FIELD_TYPES:
                    raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
                values[key] = _coerce(key, raw)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    return Config(**values).validate()
