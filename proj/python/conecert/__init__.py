"""Decide and certify positivity of P-finite recurrences.

Problems are dicts in the CLI's JSON format, JSON strings, or paths to JSON
files. Certificates are JSON strings.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ._core import InputError
from . import _core

__all__ = ["InputError", "Verdict", "prove", "verify", "unroll", "spectrum"]

ProblemLike = Union[dict, str, os.PathLike]


def _problem_text(problem: ProblemLike) -> str:
    if isinstance(problem, dict):
        return json.dumps(problem)
    if isinstance(problem, os.PathLike) or (isinstance(problem, str) and not problem.lstrip().startswith("{")):
        with open(problem, encoding="utf-8") as f:
            return f.read()
    return problem


@dataclass
class Verdict:
    outcome: str
    certificate: Optional[str]
    witness_index: Optional[int]
    witness_value: Optional[Fraction]
    reason: str
    diagnostics: str

    @property
    def positive(self) -> bool:
        return self.outcome == "positive"


def prove(problem: ProblemLike) -> Verdict:
    r = _core.prove(_problem_text(problem))
    value = r.get("witness_value")
    return Verdict(
        outcome=r["verdict"],
        certificate=r["certificate"],
        witness_index=r.get("witness_index"),
        witness_value=Fraction(value) if value is not None else None,
        reason=r["reason"],
        diagnostics=r["diagnostics"],
    )


def verify(problem: ProblemLike, certificate: str) -> tuple[bool, str]:
    """Returns (accepted, report); malformed certificates are rejected, not raised."""
    return _core.verify(_problem_text(problem), certificate)


def unroll(problem: ProblemLike, count: int) -> list[Fraction]:
    return [Fraction(x) for x in _core.unroll(_problem_text(problem), count)]


def spectrum(problem: ProblemLike) -> str:
    return _core.spectrum(_problem_text(problem))
