"""Sparse linear combinations over arbitrary hashable basis keys.

All element types in this package (algebra elements, tensors, free-bimodule
elements, quotient coordinates) are plain dicts ``{key: coefficient}`` with
nonzero exact-rational coefficients.  These helpers keep that invariant.
"""

from .scalars import QQ


def unit(key, c=QQ(1)):
    return {key: c} if c else {}


def add_inplace(dst, src, c=QQ(1)):
    """dst += c * src, dropping keys whose coefficient becomes zero."""
    if not c:
        return dst
    for k, v in src.items():
        w = dst.get(k)
        if w is None:
            dst[k] = c * v
        else:
            w = w + c * v
            if w:
                dst[k] = w
            else:
                del dst[k]
    return dst


def add_term(dst, key, c):
    if not c:
        return dst
    w = dst.get(key)
    if w is None:
        dst[key] = c
    else:
        w = w + c
        if w:
            dst[key] = w
        else:
            del dst[key]
    return dst


def scaled(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def sub(a, b):
    out = dict(a)
    return add_inplace(out, b, QQ(-1))


def equal(a, b):
    return a == b
