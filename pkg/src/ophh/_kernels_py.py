"""Pure-Python sparse elimination kernels.

Reference implementation of the compiled ``_kernels`` module; both expose
the same functions and must return identical results.  A matrix is passed
as a list of columns, each column a dict ``{row: value}`` without zeros.
Columns are reduced in the given order against pivots keyed by their
smallest row index, so the result is deterministic.
"""
from math import gcd

BACKEND = "python"


def rank_modp(cols, p):
    """Rank over the prime field F_p; entries must lie in ``range(1, p)``."""
    pivots = {}
    rank = 0
    for col in cols:
        v = dict(col)
        while v:
            low = min(v)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(v[low], p - 2, p)
                pivots[low] = {k: x * inv % p for k, x in v.items()}
                rank += 1
                break
            f = v[low]
            for k, x in piv.items():
                y = (v.get(k, 0) - f * x) % p
                if y:
                    v[k] = y
                else:
                    del v[k]
    return rank


def _primitive(v):
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    low = min(v)
    if v[low] < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


def rank_int(cols):
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    pivots = {}
    rank = 0
    for col in cols:
        v = dict(col)
        while v:
            low = min(v)
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = _primitive(v)
                rank += 1
                break
            a = piv[low]
            b = v[low]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                v = {k: a * x for k, x in v.items()}
            for k, x in piv.items():
                y = v.get(k, 0) - b * x
                if y:
                    v[k] = y
                else:
                    del v[k]
            if v:
                v = _primitive(v)
    return rank


def product_is_zero(left, right, p=None):
    """True iff ``left @ right`` vanishes (columns in, columns out).

    ``left`` and ``right`` are column lists; ``p`` selects F_p arithmetic,
    otherwise entries are exact rationals or integers.
    """
    for col in right:
        acc = {}
        for k, x in col.items():
            for r, y in left[k].items():
                acc[r] = acc.get(r, 0) + x * y
        if p is None:
            if any(acc.values()):
                return False
        elif any(z % p for z in acc.values()):
            return False
    return True
