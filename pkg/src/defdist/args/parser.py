import copy
import os
from typing import Any, Dict, Optional

import yaml
from colorama import Fore, Style, init

DEFAULT_CONFIG_FILE = "defdist.yaml"

DEFAULTS: Dict[str, Any] = {
    "project": "defdist",
    "newton": {
        "tol": 1e-14,
        "max_iter": 50,
        "ill_condition_threshold": 1e12,
        "degeneracy_threshold": 1e-8,
        "imag_tol": 1e-10,
    },
    "certify": {
        "residual_tol": 1e-10,
        "orthogonality_tol": 1e-10,
        "norm_balance_tol": 1e-8,
    },
}


class Parser:
    """Singleton YAML configuration loader.

    Values from the file are merged over the built-in defaults; sections the
    file does not mention keep their defaults.
    """

    _instance = None

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if hasattr(self, "_initialized") and self._initialized:
            return

        self._config_file: str = DEFAULT_CONFIG_FILE
        self._args: Dict[str, Any] = copy.deepcopy(DEFAULTS)

        init(autoreset=True)
        self._initialized = True

    def load_configuration(self, config_file: Optional[str] = None) -> Dict[str, Any]:
        """Loads the YAML configuration into the _args dictionary.

        A missing default file is not an error; a missing file that was
        asked for explicitly is.
        """
        from defdist.logging import Logger

        logger = Logger()

        explicit = config_file is not None
        self._config_file = config_file if explicit else DEFAULT_CONFIG_FILE
        self._args = copy.deepcopy(DEFAULTS)

        if not os.path.isfile(self._config_file):
            if not explicit:
                return self._args

            logger.system_exception(
                f"Configuration file {self._config_file} was not found."
            )
            raise FileNotFoundError(
                0,
                f"Configuration file {self._config_file} was not found.",
                self._config_file,
            )

        with open(self._config_file, encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}

        if not isinstance(loaded, dict):
            raise ValueError(
                f"Configuration file {self._config_file} must hold a mapping at top level."
            )

        self._args = self._merge(self._args, loaded)

        default = " (default)" if not explicit else ""
        logger.system_info(f"Configuration file {self._config_file}{default} loaded.")

        return self._args

    def print(self) -> None:
        """Public method to trigger the flattened print with colored paths."""
        from defdist.logging import Logger

        colors = [
            Fore.LIGHTCYAN_EX,
            Fore.LIGHTBLUE_EX,
            Fore.LIGHTMAGENTA_EX,
            Fore.LIGHTGREEN_EX,
        ]

        flat_config = self._flatten_dict(self._args)

        for k, v in flat_config.items():
            parts = k.split("/")
            colored_parts = []

            for i, part in enumerate(parts):
                color = colors[i % len(colors)]
                colored_parts.append(f"{color}{part}{Style.RESET_ALL}")

            Logger().system_info(f"{'/'.join(colored_parts)}: {v}")

    @property
    def config_file(self) -> str:
        return self._config_file

    @property
    def args(self) -> Dict[str, Any]:
        return self._args

    @staticmethod
    def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """Recursively overlays override on base, returning a new dictionary."""
        merged = dict(base)
        for k, v in override.items():
            if isinstance(v, dict) and isinstance(merged.get(k), dict):
                merged[k] = Parser._merge(merged[k], v)
            else:
                merged[k] = v
        return merged

    @staticmethod
    def _flatten_dict(d: dict, parent_key: str = "", sep: str = "/") -> dict:
        """Recursively flattens a nested dictionary."""

        items = []
        for k, v in d.items():
            new_key = f"{parent_key}{sep}{k}" if parent_key else k
            if isinstance(v, dict):
                items.extend(
                    Parser._flatten_dict(v, new_key, sep=sep).items()
                )
            else:
                items.append((new_key, v))

        return dict(items)
