"""Symbolic engine for the probabilistic lambda-calculus."""

__version__ = "0.1"
