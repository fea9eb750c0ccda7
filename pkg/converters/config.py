"""Run configuration documents.

A configuration names a built-in model (``"model": "friedman_random"``) or a
built-in kernel on an explicit space (``"model": {"kernel": "matrix"}``),
together with parameters, an optional initial state and run settings.
"""

import json
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from measures.errors import ConfigError
from kernels.admissibility import IntegerUrn
from kernels.builtin import REMOVAL_KERNELS, build_kernel
from models.registry import build_model
from simulation.process import UrnSpec
from simulation.statistics import measure_statistic
from converters.codec import decode_measure, decode_space, decode_test_set

DEFAULT_STEPS = 100
DEFAULT_REPLICATES = 1
DEFAULT_SEED = 0
DEFAULT_STATS = ({"name": "mass"},)

FIELDS = ("space", "model", "params", "x0", "steps", "replicates", "seed", "stats")
STAT_FIELDS = ("name", "test_set", "label")


@dataclass(frozen=True)
class UrnConfig:
    """A validated run configuration."""
    model: Union[str, dict]
    params: dict = field(default_factory=dict)
    space: object = None
    x0: Optional[list] = None
    steps: int = DEFAULT_STEPS
    replicates: int = DEFAULT_REPLICATES
    seed: int = DEFAULT_SEED
    stats: tuple = DEFAULT_STATS

    def to_dict(self) -> dict:
        """JSON document that parses back to an equal config."""
        data = {"model": self.model, "params": self.params}
        if self.space is not None:
            data["space"] = self.space
        if self.x0 is not None:
            data["x0"] = self.x0
        data.update(steps=self.steps, replicates=self.replicates, seed=self.seed, stats=list(self.stats))
        return data


def _count(data, key, default, minimum):
    value = data.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}, got {value!r}")
    return value


def _stat_entry(entry) -> dict:
    if isinstance(entry, str):
        entry = {"name": entry}
    if not isinstance(entry, dict) or "name" not in entry:
        raise ConfigError(f"Statistic entries need a name, got {entry!r}")
    unknown = set(entry) - set(STAT_FIELDS)
    if unknown:
        raise ConfigError(f"Unknown statistic fields: {', '.join(sorted(unknown))}")
    return dict(entry)


def parse_config(data) -> UrnConfig:
    """Validate a configuration document.

    Args:
        data: Parsed JSON object

    Returns:
        UrnConfig with defaults filled in

    Raises:
        ConfigError: On unknown fields or values of the wrong type
    """
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration must be a JSON object, got {type(data).__name__}")
    unknown = set(data) - set(FIELDS)
    if unknown:
        raise ConfigError(f"Unknown configuration fields: {', '.join(sorted(unknown))}")
    model = data.get("model")
    if isinstance(model, dict):
        if set(model) != {"kernel"} or not isinstance(model["kernel"], str):
            raise ConfigError(f"Kernel models look like {{\"kernel\": name}}, got {model!r}")
    elif not isinstance(model, str):
        raise ConfigError("Configuration needs a model name or {\"kernel\": name}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError(f"params must be a JSON object, got {params!r}")
    x0 = data.get("x0")
    if x0 is not None and not isinstance(x0, list):
        raise ConfigError("x0 must be a list of components")
    stats = data.get("stats", list(DEFAULT_STATS))
    if not isinstance(stats, list) or not stats:
        raise ConfigError("stats must be a nonempty list")
    return UrnConfig(
        model=model,
        params=params,
        space=data.get("space"),
        x0=x0,
        steps=_count(data, "steps", DEFAULT_STEPS, 0),
        replicates=_count(data, "replicates", DEFAULT_REPLICATES, 1),
        seed=_count(data, "seed", DEFAULT_SEED, 0),
        stats=tuple(_stat_entry(s) for s in stats),
    )


def load_config(path) -> UrnConfig:
    """Read and validate a JSON configuration file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"Cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config {path} is not valid JSON: {exc}") from None
    return parse_config(data)


def with_overrides(config: UrnConfig, steps=None, replicates=None, seed=None, stats=None) -> UrnConfig:
    """Config with command-line values taking precedence."""
    changes = {}
    if steps is not None:
        changes["steps"] = steps
    if replicates is not None:
        changes["replicates"] = replicates
    if seed is not None:
        changes["seed"] = seed
    if stats:
        changes["stats"] = [_stat_entry(s) for s in stats]
    return parse_config({**config.to_dict(), **changes})


def build_spec(config: UrnConfig) -> UrnSpec:
    """The urn a configuration describes.

    Raises:
        ConfigError: If the space or initial state is missing or malformed
        InvalidParams: If the model or kernel rejects its parameters
    """
    if isinstance(config.model, str):
        spec = build_model(config.model, config.params)
        if config.space is not None and decode_space(config.space) != spec.space:
            raise ConfigError(f"Model {config.model} lives on {spec.space}, config says {config.space!r}")
        if config.x0 is not None:
            spec = replace(spec, x0=decode_measure(config.x0, spec.space))
        return spec
    name = config.model["kernel"]
    if config.space is None or config.x0 is None:
        raise ConfigError("Kernel configurations need both space and x0")
    space = decode_space(config.space)
    kernel = build_kernel(name, space, config.params)
    admissibility = IntegerUrn() if name in REMOVAL_KERNELS else None
    return UrnSpec(space, kernel, decode_measure(config.x0, space), admissibility, name=name)


def build_statistics(config: UrnConfig, space):
    """Measure statistics requested by the config, with unique labels."""
    statistics = []
    for entry in config.stats:
        test_set = None
        if "test_set" in entry:
            test_set = decode_test_set(space, entry["test_set"])
        try:
            statistics.append(measure_statistic(entry["name"], test_set, entry.get("label")))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    labels = [s.label for s in statistics]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"Statistic labels must be unique, got {labels}; set 'label' to tell them apart")
    return tuple(statistics)
