"""
Main utilities for PROB_TAYLOR.

Provides:
- YAML read/write,
- JSON dumps with exact rationals,
- rational literal parsing.

All public helpers raise ProbTaylorException on failure.
"""

import json
import os
from fractions import Fraction
from typing import Any

import yaml
from from_root import from_root

from PROB_TAYLOR.logger import logging
from PROB_TAYLOR.exceptions import ProbTaylorException, ProbabilityRangeError


def read_yaml_file(file_path: str) -> dict:
    """Read a YAML file.

    Relative paths are resolved against the project root.

    Args:
        file_path: Path to the YAML file.

    Returns:
        dict: Parsed YAML content.

    Raises:
        ProbTaylorException: On IO or YAML parse errors.
    """
    try:
        if not os.path.isabs(file_path):
            file_path = os.path.join(from_root(), file_path)
        with open(file_path, "rb") as yaml_file:
            return yaml.safe_load(yaml_file) or {}

    except Exception as e:
        logging.error(f"Error occured - {e}")
        raise ProbTaylorException(e) from e


def write_yaml_file(file_path: str, content: object, replace: bool = False) -> None:
    """Write content to a YAML file.

    Creates parent directories as needed. Optionally replaces an existing file.

    Args:
        file_path: Output path.
        content: Serializable content to dump via yaml.safe_dump.
        replace: If True, remove an existing file before writing.

    Raises:
        ProbTaylorException: On IO errors.
    """
    try:
        if replace and os.path.exists(file_path):
            os.remove(file_path)
        dir_name = os.path.dirname(file_path)
        if dir_name:
            os.makedirs(dir_name, exist_ok=True)
        with open(file_path, "w") as file:
            yaml.safe_dump(to_plain(content), file, sort_keys=False)
    except Exception as e:
        logging.error(f"Error occured - {e}")
        raise ProbTaylorException(e) from e


def to_plain(content: Any) -> Any:
    """Turn Fractions into strings and tuples into lists, recursively."""
    if isinstance(content, Fraction):
        return str(content)
    if isinstance(content, dict):
        return {str(k): to_plain(v) for k, v in content.items()}
    if isinstance(content, (list, tuple)):
        return [to_plain(v) for v in content]
    return content


def dump_json(content: Any) -> str:
    """Deterministic JSON text for CLI output."""
    return json.dumps(to_plain(content), indent=2, sort_keys=False)


def parse_rational(text: str, check_probability: bool = False) -> Fraction:
    """Read `1/2`, `0.25` or `3` as an exact rational.

    Raises:
        ProbabilityRangeError: when check_probability is set and the value is outside [0, 1].
        ProbTaylorException: when the text is not a rational literal.
    """
    try:
        value = Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError) as e:
        raise ProbTaylorException(f"not a rational literal: {text!r}") from e
    if check_probability and not 0 <= value <= 1:
        raise ProbabilityRangeError(f"probability {value} outside [0, 1]")
    return value
