"""Run configuration: defaults, file options and command-line overrides."""
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

DEFAULT_PRIME = 101
DEFAULT_LENGTH_CAP = 12
DEFAULT_BOUND = 20
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 32


@dataclass(frozen=True)
class AnalysisConfig:
    """Parameters of one analysis run.

    Attributes:
        p: Field characteristic
        length_cap: Path length at which every path must vanish
        bound: Maximum number of syzygy steps
        seed: Seed of the randomized triple oracle
        samples: Random combinations tried when searching for an isomorphism
        oracle_samples: Number of random triples checked by the oracle
        oracle_max_dim: Maximum dimension of random oracle modules
        workers: Worker processes for the oracle
    """
    p: int = DEFAULT_PRIME
    length_cap: int = DEFAULT_LENGTH_CAP
    bound: int = DEFAULT_BOUND
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    oracle_samples: int = 50
    oracle_max_dim: int = 4
    workers: int = 1

    def merged(self, *overrides: Optional[Dict[str, Any]]) -> "AnalysisConfig":
        """Return a copy with the given option dicts applied in order; None values are skipped."""
        known = {f.name for f in fields(self)}
        updates: Dict[str, Any] = {}
        for override in overrides:
            if not override:
                continue
            for key, value in override.items():
                if value is None:
                    continue
                if key not in known:
                    raise KeyError(f"Unknown option '{key}'")
                updates[key] = int(value)
        config = replace(self, **updates)
        config.validate()
        return config

    def validate(self) -> None:
        if self.length_cap < 2:
            raise ValueError(f"length_cap must be at least 2, got {self.length_cap}")
        if self.bound < 1:
            raise ValueError(f"bound must be positive, got {self.bound}")
        if self.samples < 0 or self.oracle_samples < 0:
            raise ValueError("sample counts must be non-negative")
        if self.oracle_max_dim < 1 or self.workers < 1:
            raise ValueError("oracle_max_dim and workers must be positive")

    def to_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
