"""Run options: which suites to run, pencil parameters and output settings.

Options come from an optional plain-text file of ``key = value`` lines and
from command-line flags, flags winning. Example file::

    # nightly run
    suite = all
    lambda = 0, -2, 1, 7
    prime = 101, 103
    heavy = true
    format = json
    out = report.json
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from sympy import isprime


class ConfigError(ValueError):
    """Raised for unknown suites, malformed lists or unreadable config files."""


class Suite(str, Enum):
    """Verification suites in run order."""
    ARITHMETIC = "arithmetic"
    GROUP = "group"
    CHARACTERS = "characters"
    JACOBIAN = "jacobian"
    LATTICE = "lattice"
    PENCIL = "pencil"
    ALL = "all"


class OutputFormat(str, Enum):
    HUMAN = "human"
    JSON = "json"


DEFAULT_LAMBDAS = (Fraction(0), Fraction(-2), Fraction(1))
DEFAULT_PRIMES = (101,)
TRUE_WORDS = {"1", "true", "yes", "on"}
FALSE_WORDS = {"0", "false", "no", "off"}


def parse_lambdas(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rationals written as n or n/d."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"Malformed lambda value: {part!r}") from None
    if not values:
        raise ConfigError("Empty lambda list")
    return tuple(values)


def parse_primes(text: str) -> tuple[int, ...]:
    """Comma-separated primes."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            p = int(part)
        except ValueError:
            raise ConfigError(f"Malformed prime: {part!r}") from None
        if not isprime(p):
            raise ConfigError(f"{p} is not a prime")
        values.append(p)
    if not values:
        raise ConfigError("Empty prime list")
    return tuple(values)


def parse_bool(text: str) -> bool:
    word = text.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ConfigError(f"Expected a boolean, got {text!r}")


def parse_suite(text: str) -> Suite:
    try:
        return Suite(text.strip().lower())
    except ValueError:
        available = ", ".join(s.value for s in Suite)
        raise ConfigError(f"Unknown suite: {text}. Available: {available}") from None


def parse_format(text: str) -> OutputFormat:
    try:
        return OutputFormat(text.strip().lower())
    except ValueError:
        raise ConfigError(f"Unknown format: {text}. Use human or json") from None


@dataclass
class RunOptions:
    """Everything a run needs; defaults give the quick suite over three pencil members."""
    suite: Suite = Suite.ALL
    lambdas: tuple[Fraction, ...] = DEFAULT_LAMBDAS
    primes: tuple[int, ...] = DEFAULT_PRIMES
    heavy: bool = False
    format: OutputFormat = OutputFormat.HUMAN
    out: Optional[Path] = None          # None means stdout
    verbose: bool = False

    @classmethod
    def from_file(cls, path: Path) -> RunOptions:
        """Load options from a key = value file."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read config file {path}: {e}") from e
        data: dict[str, str] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{number}: expected key = value, got {raw!r}")
            key, value = line.split("=", 1)
            data[key.strip().lower()] = value.strip()
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunOptions:
        """Parse options from string values; unknown keys are an error."""
        parsers = {
            "suite": ("suite", parse_suite),
            "lambda": ("lambdas", parse_lambdas),
            "prime": ("primes", parse_primes),
            "heavy": ("heavy", parse_bool),
            "format": ("format", parse_format),
            "out": ("out", lambda v: Path(v) if v and v != "-" else None),
            "verbose": ("verbose", parse_bool),
        }
        values: dict[str, Any] = {}
        for key, raw in data.items():
            if key not in parsers:
                raise ConfigError(f"Unknown config key: {key}")
            attr, parse = parsers[key]
            values[attr] = parse(str(raw))
        return cls(**values)

    def merged(self, overrides: dict[str, Any]) -> RunOptions:
        """A copy with every non-None override applied (command-line flags)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def suites(self) -> list[Suite]:
        """The concrete suites to run, in order."""
        if self.suite is Suite.ALL:
            return [s for s in Suite if s is not Suite.ALL]
        return [self.suite]
