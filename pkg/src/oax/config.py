"""``oax.toml`` configuration.

Example::

    format = "text"          # or "json"
    timeout = 10             # seconds per prover call
    jobs = 4
    discrete = ["width", "height"]

    [provers]
    vampire = "/opt/vampire/bin/vampire"
    z3 = "z3"
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .profile import AxisProfile

FORMATS = ("json", "text")
_KEYS = {"format", "timeout", "jobs", "discrete", "provers"}
_PROVERS = {"vampire", "z3"}
DEFAULT_FILE = "oax.toml"


@dataclass(frozen=True)
class Config:
    format: str = "text"
    timeout: float = 10.0
    jobs: int = 4
    discrete: Tuple[str, ...] = ()
    provers: Dict[str, str] = field(default_factory=dict)
    source: Optional[str] = None

    def profile(self) -> AxisProfile:
        try:
            return AxisProfile.standard(discrete=self.discrete)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def override(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return _checked(replace(self, **kw))


def _checked(c: Config) -> Config:
    if c.format not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}, got {c.format!r}")
    if not isinstance(c.timeout, (int, float)) or isinstance(c.timeout, bool) or c.timeout <= 0:
        raise ConfigError(f"timeout must be a positive number, got {c.timeout!r}")
    if not isinstance(c.jobs, int) or isinstance(c.jobs, bool) or c.jobs < 1:
        raise ConfigError(f"jobs must be a positive integer, got {c.jobs!r}")
    if not all(isinstance(d, str) for d in c.discrete):
        raise ConfigError("discrete must be a list of operand names")
    unknown = set(c.provers) - _PROVERS
    if unknown:
        raise ConfigError(f"unknown prover(s) in [provers]: {sorted(unknown)}")
    c.profile()  # validates the discrete overrides
    return c


def parse_config(text: str, source: Optional[str] = None) -> Config:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source or 'config'}: {exc}") from None
    extra = set(raw) - _KEYS
    if extra:
        raise ConfigError(f"{source or 'config'}: unknown key(s) {sorted(extra)}")
    provers = raw.get("provers", {})
    if not isinstance(provers, dict) or not all(isinstance(v, str) for v in provers.values()):
        raise ConfigError("[provers] must map prover names to paths")
    discrete = raw.get("discrete", [])
    if not isinstance(discrete, list):
        raise ConfigError("discrete must be a list of operand names")
    return _checked(Config(
        format=raw.get("format", "text"),
        timeout=raw.get("timeout", 10.0),
        jobs=raw.get("jobs", 4),
        discrete=tuple(discrete),
        provers=dict(provers),
        source=source,
    ))


def load_config(path: Optional[str] = None) -> Config:
    """Explicit path, else ``./oax.toml`` when present, else defaults."""
    if path is None:
        if not Path(DEFAULT_FILE).is_file():
            return Config()
        path = DEFAULT_FILE
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
