"""Script front end: parser, evaluator, reports and the ``ncham`` command."""

from .evaluator import Evaluator, run_script
from .parser import parse
from .report import Report, emit

__all__ = ["Evaluator", "Report", "emit", "parse", "run_script"]
