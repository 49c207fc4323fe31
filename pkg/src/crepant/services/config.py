import enum
import os
from argparse import Namespace
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from ..domain.errors import ConfigError

WORKERS_ENV = "CREPANT_WORKERS"
SEED_MIN = -(2 ** 63)
SEED_MAX = 2 ** 63 - 1

# argparse attributes that are not command options
_GLOBAL_KEYS = {"command", "action", "n", "seed", "parallelism", "output_format", "verbose"}


class OutputFormat(enum.Enum):
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


@dataclass(frozen=True)
class RunConfig:
    """ One validated command invocation. """
    command: str
    action: str
    n: Optional[int] = None
    seed: int = 0
    parallelism: int = 1
    output_format: OutputFormat = OutputFormat.JSON
    options: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def from_namespace(cls, args: Namespace, environ: Optional[Mapping[str, str]] = None) -> 'RunConfig':
        """ Builds the config from parsed arguments; CREPANT_WORKERS overrides --parallelism. """
        environ = os.environ if environ is None else environ
        parallelism = getattr(args, "parallelism", 1)
        override = environ.get(WORKERS_ENV)
        if override:
            try:
                parallelism = int(override)
            except ValueError:
                raise ConfigError(f"{WORKERS_ENV} must be an integer, got {override!r}")
        try:
            output_format = OutputFormat(getattr(args, "output_format", "json"))
        except ValueError:
            raise ConfigError(f"unknown output format {getattr(args, 'output_format', None)!r}")
        options = {k: v for k, v in vars(args).items() if k not in _GLOBAL_KEYS}
        config = cls(
            command=args.command,
            action=args.action,
            n=getattr(args, "n", None),
            seed=getattr(args, "seed", 0),
            parallelism=parallelism,
            output_format=output_format,
            options=options,
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be positive, got {self.parallelism}")
        if not SEED_MIN <= self.seed <= SEED_MAX:
            raise ConfigError(f"seed {self.seed} does not fit in a signed 64-bit integer")
        if self.n is not None and self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)
