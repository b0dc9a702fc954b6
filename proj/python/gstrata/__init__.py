"""Python access to the gstrata library.

Ideals are dicts ``{"vars": 4, "gens": ["X3^2", "X3*X2", "X2^3"]}``; orders
use the command-line syntax (``lex``, ``degrevlex``, ``segment:3,2,1,1``,
``weight:...`` or a JSON file path). Results come back as plain dicts.
"""

import json

from . import _core
from ._core import BudgetExceeded, InternalError, ParseError, PreconditionError

__all__ = [
    "BudgetExceeded",
    "InternalError",
    "ParseError",
    "PreconditionError",
    "analyze",
    "embed",
    "embed_stratum",
    "find_segment_order",
    "gotzmann_number",
    "hilbert_polynomial",
    "is_borel_fixed",
    "lexsegment",
    "stratum",
    "truncate",
    "truncation_check",
]


def _ideal(ideal):
    return ideal if isinstance(ideal, str) else json.dumps(ideal)


def gotzmann_number(poly):
    return _core.gotzmann_number(poly)


def hilbert_polynomial(ideal):
    return _core.hilbert_polynomial(_ideal(ideal))


def truncate(ideal, degree):
    return json.loads(_core.truncate(_ideal(ideal), degree))


def lexsegment(a, degree=None):
    return json.loads(_core.lexsegment(list(a), degree))


def is_borel_fixed(ideal):
    return _core.is_borel_fixed(_ideal(ideal))


def find_segment_order(ideal, degree):
    return json.loads(_core.find_segment_order(_ideal(ideal), degree))


def stratum(ideal, order="degrevlex", tails="homogeneous"):
    return json.loads(_core.stratum(_ideal(ideal), order, tails))


def embed_stratum(stratum_report):
    """Minimal embedding of a stratum dict returned by :func:`stratum`."""
    return json.loads(_core.embed_stratum_json(json.dumps(stratum_report)))


def embed(ideal, order="degrevlex"):
    return json.loads(_core.embed(_ideal(ideal), order))


def analyze(ideal, order="degrevlex", degree=None, matrix=True):
    """Returns (report dict, Markdown summary)."""
    text, md = _core.analyze(_ideal(ideal), order, degree, matrix)
    return json.loads(text), md


def truncation_check(ideal, s, m, order):
    return json.loads(_core.truncation_check(_ideal(ideal), s, m, order))
