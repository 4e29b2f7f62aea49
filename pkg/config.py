"""
Configuration for the type-2 convolution toolkit.

Settings come from three layers, later ones winning: the built-in DEFAULTS,
a YAML file, and T2CONV_* environment variables.
"""

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Tuple, Union

import yaml


class ConfigException(Exception):
    """Raised when settings cannot be read or fail validation."""
    pass


DEFAULTS: Dict[str, Dict[str, Any]] = {
    'grid': {
        'levels': 128,
        'oracle_resolution': 2000,
        'triple_resolution': 200,
        'knot_denominator': 8,
    },
    'harness': {
        'trials': 50,
        'seed': 0,
        'max_workers': 4,
        'show_progress': True,
        'usc_threshold': 0.05,
        'fiber_samples': 4000,
        'max_usc_candidates': 8,
        'associativity_slack_levels': 2,
        'associativity_slack_cells': 2,
    },
    'probe': {
        'grid_size': 256,
    },
    'output': {
        'directory': './t2conv_output',
        'format': 'json',
    },
    'logging': {
        'level': 'INFO',
        'log_file': 'none',
        'max_file_size': '10MB',
        'backup_count': 3,
    },
}

ENV_MAPPINGS = {
    'T2CONV_SEED': 'harness.seed',
    'T2CONV_TRIALS': 'harness.trials',
    'T2CONV_WORKERS': 'harness.max_workers',
    'T2CONV_LEVELS': 'grid.levels',
    'T2CONV_ORACLE_N': 'grid.oracle_resolution',
    'T2CONV_OUTPUT_DIR': 'output.directory',
    'T2CONV_LOG_LEVEL': 'logging.level',
    'T2CONV_LOG_FILE': 'logging.log_file',
}

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')
OUTPUT_FORMATS = ('json', 'csv')

# dotted key -> (predicate, requirement text)
RULES = {
    'grid.levels': (lambda v: v >= 16, 'at least 16'),
    'grid.oracle_resolution': (lambda v: v >= 16, 'at least 16'),
    'grid.triple_resolution': (lambda v: 16 <= v <= 200, 'in [16, 200]'),
    'grid.knot_denominator': (lambda v: v >= 1, 'positive'),
    'harness.trials': (lambda v: v >= 1, 'at least 1'),
    'harness.max_workers': (lambda v: v >= 1, 'at least 1'),
    'harness.usc_threshold': (lambda v: 0 < v < 1, 'in (0, 1)'),
    'harness.fiber_samples': (lambda v: v >= 1, 'positive'),
    'harness.max_usc_candidates': (lambda v: v >= 1, 'positive'),
    'harness.associativity_slack_levels': (lambda v: v >= 0, 'non-negative'),
    'harness.associativity_slack_cells': (lambda v: v >= 0, 'non-negative'),
    'probe.grid_size': (lambda v: v >= 16, 'at least 16'),
    'output.format': (lambda v: v in OUTPUT_FORMATS, f"one of: {', '.join(OUTPUT_FORMATS)}"),
    'logging.level': (lambda v: v in LOG_LEVELS, f"one of: {', '.join(LOG_LEVELS)}"),
    'logging.backup_count': (lambda v: v >= 0, 'non-negative'),
}


def lookup(settings: Dict, dotted: str, default: Any = None) -> Any:
    node = settings
    for part in dotted.split('.'):
        if not isinstance(node, dict) or part not in node:
            return default
        node = node[part]
    return node


def assign(settings: Dict, dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split('.')
    node = settings
    for part in parents:
        node = node.setdefault(part, {})
    node[leaf] = value


def overlay(base: Dict, extra: Dict) -> Dict:
    """Return base with extra laid over it, descending into nested sections."""
    merged = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = overlay(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def coerce(raw: str, dotted: str) -> Any:
    """Read an environment string with the type of the default at dotted."""
    default = lookup(DEFAULTS, dotted)
    if isinstance(default, bool):
        return raw.lower() in ('true', '1', 'yes', 'on')
    for kind in (int, float):
        if isinstance(default, kind):
            try:
                return kind(raw)
            except ValueError:
                raise ConfigException(f"{dotted}: cannot read {raw!r} as {kind.__name__}")
    return raw


def validate(settings: Dict) -> None:
    """Check every rule; the first violation raises ConfigException naming its key."""
    for dotted, (check, requirement) in RULES.items():
        value = lookup(settings, dotted)
        try:
            ok = check(value)
        except TypeError:
            raise ConfigException(f"Configuration validation failed: wrong value type "
                                  f"for {dotted} ({value!r})")
        if not ok:
            raise ConfigException(f"Configuration validation failed: {dotted} must be {requirement}")


def active_overrides() -> Iterator[Tuple[str, str, str]]:
    for variable, dotted in ENV_MAPPINGS.items():
        raw = os.getenv(variable)
        if raw is not None:
            yield variable, dotted, raw


class ConfigManager:
    """
    Holds the merged, validated settings of one run.

    A missing file is not an error: the defaults apply, and with
    create_missing=True they are also written to config_path.
    """

    def __init__(self, config_path: Union[str, Path] = 't2conv.yaml', create_missing: bool = False):
        self.config_path = Path(config_path)
        self.create_missing = create_missing
        self.logger = logging.getLogger(__name__)
        self._config: Dict = {}
        self._load_config()

    def _load_config(self) -> None:
        try:
            settings = copy.deepcopy(DEFAULTS)
            if self.config_path.exists():
                settings = overlay(settings, self._read_file())
                self.logger.info(f"Settings read from {self.config_path}")
            else:
                self.logger.debug(f"No settings file at {self.config_path}, using defaults")
                if self.create_missing:
                    self._write_defaults()

            for variable, dotted, raw in active_overrides():
                assign(settings, dotted, coerce(raw, dotted))
                self.logger.info(f"{variable} overrides {dotted}")

            validate(settings)
            self._config = settings
        except ConfigException:
            raise
        except Exception as e:
            raise ConfigException(f"Failed to load configuration: {e}")

    def _read_file(self) -> Dict:
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigException(f"Invalid YAML in {self.config_path}: {e}")
        except OSError as e:
            raise ConfigException(f"Cannot read {self.config_path}: {e}")
        if not isinstance(loaded, dict):
            raise ConfigException(f"Config file {self.config_path} must hold a mapping")
        return loaded

    def _write_defaults(self) -> None:
        try:
            self._dump(DEFAULTS, self.config_path)
            self.logger.info(f"Wrote default settings to {self.config_path}")
        except OSError as e:
            self.logger.warning(f"Could not write default settings: {e}")

    @staticmethod
    def _dump(settings: Dict, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(settings, f, default_flow_style=False, sort_keys=False)

    def get(self, section: str, key: Optional[str] = None, default: Any = None) -> Any:
        """
        Read one setting, or a whole section when key is None.

        Args:
            section: Section name such as 'grid' or 'harness'
            key: Key within the section
            default: Returned when the section or key is absent
        """
        dotted = section if key is None else f"{section}.{key}"
        return lookup(self._config, dotted, default)

    def get_all(self) -> Dict:
        return copy.deepcopy(self._config)

    def set(self, section: str, key: str, value: Any) -> None:
        """Change one setting; the result must still validate or nothing changes."""
        candidate = copy.deepcopy(self._config)
        assign(candidate, f"{section}.{key}", value)
        validate(candidate)
        self._config = candidate
        self.logger.info(f"{section}.{key} set to {value!r}")

    def save(self, config_path: Optional[Union[str, Path]] = None) -> None:
        target = Path(config_path) if config_path else self.config_path
        try:
            self._dump(self._config, target)
        except OSError as e:
            raise ConfigException(f"Failed to save configuration: {e}")
        self.logger.info(f"Settings saved to {target}")

    def reload(self) -> None:
        self._load_config()

    def get_env_info(self) -> Dict:
        """Environment overrides currently set, keyed by variable name."""
        return {variable: {'config_key': dotted, 'value': raw}
                for variable, dotted, raw in active_overrides()}

    def export_config(self, format: str = 'yaml') -> str:
        """
        Render the settings as text.

        Args:
            format: 'yaml' or 'json'

        Raises:
            ConfigException: for any other format
        """
        fmt = format.lower()
        if fmt == 'yaml':
            return yaml.safe_dump(self._config, default_flow_style=False, sort_keys=False)
        if fmt == 'json':
            return json.dumps(self._config, indent=2)
        raise ConfigException(f"Unsupported export format: {format}")


_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_path: Union[str, Path] = 't2conv.yaml') -> ConfigManager:
    """Process-wide manager, created on first use."""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_path)
    return _config_manager


def reset_config_manager() -> None:
    """Drop the global instance so the next call reloads from disk."""
    global _config_manager
    _config_manager = None
