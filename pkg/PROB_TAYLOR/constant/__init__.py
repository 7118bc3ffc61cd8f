"""Centralized constants for PROB_TAYLOR.

Loads environment variables from a .env at repo root and exposes
readable names for the engine budgets and the suite configuration.

Environment:
- PROB_TAYLOR_SIZE_BOUND
- PROB_TAYLOR_COPIES
- PROB_TAYLOR_FUEL
- PROB_TAYLOR_DEPTH
- PROB_TAYLOR_OUTPUT
"""

import os
from typing import List, Tuple
from dotenv import find_dotenv, load_dotenv

_dotenv_path = find_dotenv(raise_error_if_not_found=False, usecwd=True)
if _dotenv_path:
    load_dotenv(_dotenv_path)

# Engine budgets
DEFAULT_SIZE_BOUND: int = int(os.getenv("PROB_TAYLOR_SIZE_BOUND", "12"))
DEFAULT_COPIES: int = int(os.getenv("PROB_TAYLOR_COPIES", "4"))
DEFAULT_FUEL: int = int(os.getenv("PROB_TAYLOR_FUEL", "32"))
DEFAULT_DEPTH: int = int(os.getenv("PROB_TAYLOR_DEPTH", "3"))
DEFAULT_OUTPUT: str = os.getenv("PROB_TAYLOR_OUTPUT", "pretty")
OUTPUT_FORMATS: Tuple[str, ...] = ("pretty", "json")

# Surface syntax
PRELUDE_TERMS = {
    "I": r"\x. x",
    "K": r"\x y. x",
    "S": r"\x y z. x z (y z)",
    "Delta": r"\x. x x",
    "D": r"\x. x x",
    "Omega": r"(\x. x x) (\x. x x)",
    "W": r"(\x. x x) (\x. x x)",
}
RESOURCE_PRELUDE = {"I": r"\x. x"}
BOUND_NAME_POOL: List[str] = ["x", "y", "z", "u", "v", "a", "b", "c"]

# Bohm trees and tests
DEFAULT_FAMILY_BINDERS: int = 1
DEFAULT_FAMILY_ARITY: int = 2
BOHM_LINEAR_LABEL: str = "ev"

# Tree transition systems
MAX_CONJUNCTS: int = 2
TEST_POOL_CAP: int = 48
TEST_PRODUCT_CAP: int = 4096

# Suite configuration
ENGINE_CONFIG_PATH = os.path.join("config", "engine.yaml")
