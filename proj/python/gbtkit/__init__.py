"""Curvature-based limit-cycle analysis of planar polynomial systems."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    BoundaryContactError,
    DomainError,
    FileError,
    ParseError,
    System,
    integrate,
    load_system,
    parse_system,
)

__version__ = _core.__version__

__all__ = [
    "BoundaryContactError",
    "DomainError",
    "FileError",
    "ParseError",
    "System",
    "analyze",
    "bezout_bound",
    "christopher_lloyd_bound",
    "curvature",
    "curvature_at",
    "equilibria",
    "find_limit_cycles",
    "hilbert_number",
    "hilbert_table_csv",
    "integrate",
    "load_system",
    "metric",
    "parse_system",
    "singular_locus",
]


def _box(box):
    (a, b), (c, d) = box
    return [float(a), float(b), float(c), float(d)]


def metric(system):
    return json.loads(_core.metric(system))


def curvature(system, convention="paper"):
    return _core.curvature(system, convention)


def curvature_at(system, point, convention="paper"):
    return Fraction(_core.curvature_at(system, [str(Fraction(p)) for p in point], convention))


def equilibria(system, box=((-3, 3), (-3, 3))):
    return json.loads(_core.equilibria(system, _box(box)))


def singular_locus(system, box=((-3, 3), (-3, 3))):
    return json.loads(_core.singular_locus(system, _box(box)))


def find_limit_cycles(system, box=((-3, 3), (-3, 3)), direction=None):
    return json.loads(_core.find_limit_cycles(system, _box(box), direction))


def analyze(path, params=None, box=((-3, 3), (-3, 3)), stages="all", convention="paper"):
    """Returns (report dict, exit code) exactly as `gbt analyze` would."""
    bindings = {k: str(Fraction(v)) for k, v in (params or {}).items()}
    text, code = _core.analyze(str(path), bindings, _box(box), stages, convention)
    return json.loads(text), code


def hilbert_number(n):
    return int(_core.hilbert_number(n))


def christopher_lloyd_bound(k):
    return Fraction(_core.christopher_lloyd_bound(k))


def bezout_bound(df, dg):
    return int(_core.bezout_bound(df, dg))


def hilbert_table_csv(n_max, k_max=0):
    return _core.hilbert_table_csv(n_max, k_max)
