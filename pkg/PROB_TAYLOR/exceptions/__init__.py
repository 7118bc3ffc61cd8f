"""
One error family for the whole engine.

Every failure surfaced to a caller is a ProbTaylorException; the
subclasses name the domain reason so the CLI can pick an exit code.
"""

import sys
from PROB_TAYLOR.logger import logging


# Figure out where the error came from
def error_message_detail(error):
    _, _, exc_tb = sys.exc_info()
    if exc_tb is not None:
        file_name = exc_tb.tb_frame.f_code.co_filename
        line = exc_tb.tb_lineno
    else:
        file_name = "Unknown"
        line = "Unknown"
    error_message = f"Error occurred in [{file_name}] line [{line}] message [{error}]"
    logging.debug(error_message)
    return error_message


class ProbTaylorException(Exception):
    def __init__(self, error_message, error_detail=sys):
        """param: error_message: the error or message to wrap"""
        super().__init__(error_message)
        self.reason = str(error_message)
        self.error_message = error_message_detail(error_message)

    def __str__(self):
        return self.reason


class TermSyntaxError(ProbTaylorException):
    """Surface text does not match the grammar."""

    def __init__(self, error_message, line=None, column=None):
        if line is not None:
            error_message = f"{error_message} (line {line}, column {column})"
        super().__init__(error_message)
        self.line = line
        self.column = column


class ProbabilityRangeError(ProbTaylorException):
    """A choice probability lies outside [0, 1]."""


class KindMismatchError(ProbTaylorException):
    """Terms and poly-terms mixed, or a test applied to the wrong sort of state."""


class MalformedSystemError(ProbTaylorException):
    """A tree transition system violates its well-formedness conditions."""


class TestShapeError(ProbTaylorException):
    """A test outside the fragment an operation accepts."""

    __test__ = False
