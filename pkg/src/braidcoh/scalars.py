"""Exact rational scalars.

Every coefficient in this package is an exact rational number; nothing is
ever rounded.  We use gmpy2's mpq when available (noticeably faster on the
larger verification runs) and fall back to the stdlib Fraction, which has
the same constructor and arithmetic API.
"""

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)


def parse_rational(s):
    """Parse a decimal-free rational string like "3", "-1/2"."""
    s = s.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not a rational string: {s!r}")
    return QQ(s)


def format_rational(x) -> str:
    return str(x)
