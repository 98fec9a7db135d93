# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse elimination kernels.

Same contract as ``ophh._kernels_py``: columns are dicts ``{row: value}``,
reduced in order against pivots keyed by their smallest row.  Integer
elimination works in int64 and raises OverflowError when an entry leaves
the safe range; the caller then retries with the pure-Python kernel.
"""
from libc.stdint cimport int64_t
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from libcpp.vector cimport vector

ctypedef pair[int, int64_t] Entry
ctypedef vector[Entry] SVec

BACKEND = "cython"

# products of two entries stay below 2**60
cdef int64_t LIMIT = 1 << 30


cdef int64_t _modinv(int64_t a, int64_t p):
    cdef int64_t result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


cdef int64_t _gcd(int64_t a, int64_t b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _load(dict col, SVec& out) except -1:
    out.clear()
    for k, x in col.items():
        out.push_back(Entry(<int>k, <int64_t>x))
    sort(out.begin(), out.end())
    return 0


cdef int _max_row(list cols) except -2:
    cdef int m = -1
    for col in cols:
        for k in col:
            if k > m:
                m = k
    return m


def rank_modp(list cols, int64_t p):
    cdef int nrows = _max_row(cols) + 1
    cdef vector[SVec] piv
    cdef vector[char] has
    piv.resize(nrows)
    has.resize(nrows, 0)
    cdef SVec v, out
    cdef int rank = 0, low
    cdef size_t i, j
    cdef int64_t f, val, inv
    for col in cols:
        _load(col, v)
        while v.size() > 0:
            low = v[0].first
            if not has[low]:
                inv = _modinv(v[0].second, p)
                for i in range(v.size()):
                    v[i].second = v[i].second * inv % p
                piv[low] = v
                has[low] = 1
                rank += 1
                break
            f = v[0].second
            out.clear()
            i = 0
            j = 0
            while i < v.size() and j < piv[low].size():
                if v[i].first < piv[low][j].first:
                    out.push_back(v[i])
                    i += 1
                elif v[i].first > piv[low][j].first:
                    val = (p - f * piv[low][j].second % p) % p
                    if val:
                        out.push_back(Entry(piv[low][j].first, val))
                    j += 1
                else:
                    val = (v[i].second - f * piv[low][j].second) % p
                    if val < 0:
                        val += p
                    if val:
                        out.push_back(Entry(v[i].first, val))
                    i += 1
                    j += 1
            while i < v.size():
                out.push_back(v[i])
                i += 1
            while j < piv[low].size():
                val = (p - f * piv[low][j].second % p) % p
                if val:
                    out.push_back(Entry(piv[low][j].first, val))
                j += 1
            v.swap(out)
    return rank


cdef int _primitive(SVec& v) except -1:
    cdef int64_t g = 0
    cdef size_t i
    for i in range(v.size()):
        g = _gcd(g, v[i].second)
        if g == 1:
            break
    if v[0].second < 0:
        g = -g
    if g != 1:
        for i in range(v.size()):
            v[i].second = v[i].second // g
    for i in range(v.size()):
        if v[i].second >= LIMIT or v[i].second <= -LIMIT:
            raise OverflowError("entry growth beyond int64 safe range")
    return 0


def rank_int(list cols):
    cdef int nrows = _max_row(cols) + 1
    cdef vector[SVec] piv
    cdef vector[char] has
    piv.resize(nrows)
    has.resize(nrows, 0)
    cdef SVec v, out
    cdef int rank = 0, low
    cdef size_t i, j
    cdef int64_t a, b, g, val
    for col in cols:
        _load(col, v)
        _primitive(v)
        while v.size() > 0:
            low = v[0].first
            if not has[low]:
                piv[low] = v
                has[low] = 1
                rank += 1
                break
            a = piv[low][0].second
            b = v[0].second
            g = _gcd(a, b)
            a //= g
            b //= g
            out.clear()
            i = 0
            j = 0
            while i < v.size() and j < piv[low].size():
                if v[i].first < piv[low][j].first:
                    out.push_back(Entry(v[i].first, a * v[i].second))
                    i += 1
                elif v[i].first > piv[low][j].first:
                    out.push_back(Entry(piv[low][j].first, -b * piv[low][j].second))
                    j += 1
                else:
                    val = a * v[i].second - b * piv[low][j].second
                    if val:
                        out.push_back(Entry(v[i].first, val))
                    i += 1
                    j += 1
            while i < v.size():
                out.push_back(Entry(v[i].first, a * v[i].second))
                i += 1
            while j < piv[low].size():
                out.push_back(Entry(piv[low][j].first, -b * piv[low][j].second))
                j += 1
            v.swap(out)
            if v.size() > 0:
                _primitive(v)
    return rank


def product_is_zero(list left, list right, p=None):
    """True iff ``left @ right`` vanishes; integer or F_p entries only."""
    cdef int nrows = _max_row(left) + 1
    if nrows <= 0:
        return True
    cdef vector[int64_t] acc
    cdef vector[int] touched
    acc.resize(nrows, 0)
    cdef int64_t modulus = 0 if p is None else p
    cdef int64_t x, y, z
    cdef int r
    cdef bint ok = True
    cdef vector[SVec] lcols
    lcols.resize(len(left))
    cdef size_t c = 0, t
    for col in left:
        _load(col, lcols[c])
        c += 1
    cdef SVec rv
    for col in right:
        _load(col, rv)
        touched.clear()
        for t in range(rv.size()):
            x = rv[t].second
            if x >= LIMIT or x <= -LIMIT:
                raise OverflowError("entry beyond int64 safe range")
            for c in range(lcols[rv[t].first].size()):
                r = lcols[rv[t].first][c].first
                y = lcols[rv[t].first][c].second
                if y >= LIMIT or y <= -LIMIT:
                    raise OverflowError("entry beyond int64 safe range")
                if acc[r] == 0:
                    touched.push_back(r)
                acc[r] += x * y
                if modulus:
                    acc[r] %= modulus
                elif acc[r] >= (1 << 62) or acc[r] <= -(1 << 62):
                    raise OverflowError("accumulator overflow")
        for t in range(touched.size()):
            z = acc[touched[t]]
            if z != 0:
                ok = False
            acc[touched[t]] = 0
        if not ok:
            return False
    return True
