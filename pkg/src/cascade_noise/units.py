"""Conversions between linear power ratios, decibels, noise factors and noise figures.

All quantities are powers, so the 10*log10 convention is used throughout.
"""

from __future__ import annotations

import math

_DB_PER_NEPER = 10.0 / math.log(10.0)


class DomainError(ValueError):
    """A value lies outside the domain of a conversion."""


def _check_finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def db_to_linear(db: float) -> float:
    """Convert a power level in dB to a linear ratio, ``10**(db/10)``.

    >>> db_to_linear(10.0)
    10.0
    """
    db = _check_finite(db, "db")
    return 10.0 ** (db / 10.0)


def linear_to_db(ratio: float) -> float:
    """Convert a strictly positive linear power ratio to dB.

    >>> linear_to_db(100.0)
    20.0
    """
    ratio = _check_finite(ratio, "ratio")
    if ratio <= 0.0:
        raise DomainError(f"ratio must be > 0, got {ratio!r}")
    return 10.0 * math.log10(ratio)


def factor_to_figure_db(factor: float) -> float:
    """Noise figure in dB of a noise factor. Factors below 1 are rejected."""
    factor = _check_finite(factor, "factor")
    if factor < 1.0:
        raise DomainError(f"noise factor must be >= 1, got {factor!r}")
    return 10.0 * math.log10(factor)


def figure_db_to_factor(figure_db: float) -> float:
    """Noise factor of a noise figure given in dB (must be >= 0)."""
    figure_db = _check_finite(figure_db, "figure_db")
    if figure_db < 0.0:
        raise DomainError(f"noise figure must be >= 0 dB, got {figure_db!r}")
    return 10.0 ** (figure_db / 10.0)


def excess_to_figure_db(excess: float) -> float:
    """Noise figure in dB from the excess noise factor ``F - 1``.

    Goes through ``log1p`` so figures of nearly noiseless stages keep their
    full relative precision instead of collapsing to ``10*log10(1.0)``.
    """
    excess = _check_finite(excess, "excess")
    if excess < 0.0:
        raise DomainError(f"excess noise factor must be >= 0, got {excess!r}")
    return _DB_PER_NEPER * math.log1p(excess)


def figure_db_to_excess(figure_db: float) -> float:
    """Excess noise factor ``F - 1`` of a noise figure in dB (inverse of :func:`excess_to_figure_db`)."""
    figure_db = _check_finite(figure_db, "figure_db")
    if figure_db < 0.0:
        raise DomainError(f"noise figure must be >= 0 dB, got {figure_db!r}")
    return math.expm1(figure_db / _DB_PER_NEPER)
