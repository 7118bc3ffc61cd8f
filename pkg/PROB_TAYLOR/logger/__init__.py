"""Logging for PROB_TAYLOR, configured on import.

DEBUG records go to logs/prob-taylor-<timestamp>.log under the project root.
Console records go to stderr through rich, at WARNING unless
PROB_TAYLOR_CONSOLE_LEVEL says otherwise.
"""

import logging
import os
from datetime import datetime

from from_root import from_root
from rich.console import Console
from rich.logging import RichHandler

LOG_DIR = os.getenv("PROB_TAYLOR_LOG_DIR", "logs")
CONSOLE_LEVEL = os.getenv("PROB_TAYLOR_CONSOLE_LEVEL", "WARNING")

log_dir_path = os.path.join(from_root(), LOG_DIR)
log_file_path = os.path.join(log_dir_path, f"prob-taylor-{datetime.now():%Y-%m-%d-%H-%M-%S}.log")
os.makedirs(log_dir_path, exist_ok=True)

# stdout carries command output
console = Console(stderr=True)

file_handler = logging.FileHandler(log_file_path, encoding="utf-8")
file_handler.setLevel(logging.DEBUG)
file_handler.setFormatter(logging.Formatter("[ %(levelname)s ] - %(asctime)s - %(name)s - %(message)s"))

rich_handler = RichHandler(console=console, rich_tracebacks=True, markup=False, show_time=False, show_path=False)
rich_handler.setLevel(CONSOLE_LEVEL)

logging.basicConfig(level=logging.DEBUG, handlers=[file_handler, rich_handler])

# grammar construction is noisy at DEBUG
logging.getLogger("lark").setLevel(logging.WARNING)


def set_verbosity(verbose: bool) -> None:
    """Show pipeline progress (INFO) on the console, or fall back to the configured level."""
    rich_handler.setLevel(logging.INFO if verbose else CONSOLE_LEVEL)
