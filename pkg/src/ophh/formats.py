"""Input formats.

Algebra files are line oriented ``key: value`` text::

    # the minimal model of the 2-sphere
    field: Q
    flavor: C
    grading: cohomological
    generators: x 2, y 3
    d y = x^2
    max_weight: 4

``generators`` lists ``name degree`` pairs.  Differentials are written
``d NAME = expression`` where an expression is a sum of terms
``[coeff *] factor * factor ...`` and a factor is ``name`` or
``name^k``.  ``relations`` lists monomials set to zero.  With
``grading: cohomological`` degrees are upper degrees and are negated on
input, so that every differential lowers degree by one.

Facet files (one simplex per line) are read by ``sset.parse_facets``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .exactlin import Field
from .oalg import ASSOC, COMM, FreeAlgebra, GeneratorSpace

_KEYS = ("field", "flavor", "grading", "generators", "relations", "max_weight", "max_length",
         "max_level", "name")
_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


@dataclass
class AlgebraSpec:
    algebra: FreeAlgebra
    cohomological: bool
    options: dict

    def display_degree(self, n):
        return -n if self.cohomological else n


def _col(raw, sub, start=0):
    i = raw.find(sub, start)
    return (i if i >= 0 else start) + 1


def _parse_int(tok, lineno, raw):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno, _col(raw, tok)) from None


def _parse_monomial(text, index, lineno, raw, offset):
    """``offset`` is the 0-based position of ``text`` inside ``raw``."""
    factors = []
    coeff = Fraction(1)
    pos = offset
    for part in text.split("*"):
        tok = part.strip()
        col = pos + len(part) - len(part.lstrip()) + 1
        pos += len(part) + 1
        if not tok:
            raise ParseError("empty factor", lineno, col)
        if re.fullmatch(r"\d+(/\d+)?", tok):
            coeff *= Fraction(tok)
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)(\^(\d+))?", tok)
        if not m:
            raise ParseError(f"cannot read factor {tok!r}", lineno, col)
        name = m.group(1)
        if name not in index:
            raise ParseError(f"unknown generator {name!r}", lineno, col)
        factors.extend([index[name]] * int(m.group(3) or 1))
    return coeff, tuple(factors)


def _chunks(val, raw):
    """Comma separated pieces of ``val`` with their 0-based positions in ``raw``."""
    start = raw.find(val)
    pos = 0
    for piece in val.split(","):
        lead = len(piece) - len(piece.lstrip())
        if piece.strip():
            yield piece.strip(), start + pos + lead
        pos += len(piece) + 1


def parse_expression(text, index, lineno=1, raw=None, offset=0):
    """``{word: coefficient}``; words are tuples of generator indices in written order."""
    raw = text if raw is None else raw
    out = {}
    pos = 0
    s = text.strip()
    base = offset + len(text) - len(text.lstrip())
    if not s:
        raise ParseError("empty expression", lineno, offset + 1)
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or not m.group(2).strip():
            raise ParseError("malformed expression", lineno, base + pos + 1)
        sign = -1 if m.group(1) == "-" else 1
        coeff, word = _parse_monomial(m.group(2), index, lineno, raw, base + m.start(2))
        out[word] = out.get(word, 0) + sign * coeff
        pos = m.end()
    return {w: c for w, c in out.items() if c}


def parse_algebra(text, field=None, name="A"):
    """Parse an algebra file; ``field`` overrides the file's field line."""
    opts = {}
    diffs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*d\s+([A-Za-z_][A-Za-z0-9_']*)\s*=(.*)$", line)
        if m:
            diffs.append((m.group(1), m.group(2), lineno, raw, m.start(2)))
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value' or 'd NAME = ...'", lineno, 1)
        key, val = line.split(":", 1)
        key = key.strip().lower()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, _col(raw, key))
        if key in opts:
            raise ParseError(f"repeated key {key!r}", lineno, _col(raw, key))
        opts[key] = (val.strip(), lineno, raw)

    def get(key, default=None):
        return opts[key][0] if key in opts else default

    try:
        fld = field if field is not None else Field.parse(get("field", "Q"))
    except ValueError as exc:
        ln, raw = opts["field"][1], opts["field"][2]
        raise ParseError(str(exc), ln, _col(raw, opts["field"][0])) from None
    flavor = get("flavor", COMM).upper()
    if flavor not in (COMM, ASSOC):
        ln, raw = opts["flavor"][1], opts["flavor"][2]
        raise ParseError(f"flavor must be C or A, got {flavor!r}", ln, _col(raw, opts["flavor"][0]))
    grading = get("grading", "homological").lower()
    if grading not in ("homological", "cohomological"):
        ln, raw = opts["grading"][1], opts["grading"][2]
        raise ParseError(f"unknown grading {grading!r}", ln, _col(raw, opts["grading"][0]))
    coh = grading == "cohomological"

    names, degrees = [], []
    if "generators" in opts:
        val, ln, raw = opts["generators"]
        for chunk, at in _chunks(val, raw):
            parts = chunk.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'name degree', got {chunk!r}", ln, at + 1)
            nm, dg = parts
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", nm):
                raise ParseError(f"bad generator name {nm!r}", ln, at + 1)
            if nm in names:
                raise ParseError(f"repeated generator {nm!r}", ln, at + 1)
            try:
                dg = int(dg)
            except ValueError:
                raise ParseError(f"expected an integer, got {dg!r}", ln, _col(raw, dg, at)) from None
            names.append(nm)
            degrees.append(-dg if coh else dg)
    index = {nm: i for i, nm in enumerate(names)}

    d = {}
    for nm, expr, ln, raw, start in diffs:
        if nm not in index:
            raise ParseError(f"differential of unknown generator {nm!r}", ln, _col(raw, nm))
        if index[nm] in d:
            raise ParseError(f"second differential for {nm!r}", ln, 1)
        val = parse_expression(expr, index, ln, raw, start)
        d[index[nm]] = {w: fld.coerce(c) for w, c in val.items() if fld.coerce(c)}

    rels = []
    if "relations" in opts:
        val, ln, raw = opts["relations"]
        for chunk, at in _chunks(val, raw):
            coeff, word = _parse_monomial(chunk, index, ln, raw, at)
            if not word:
                raise ParseError("a relation must be a non-constant monomial", ln, at + 1)
            rels.append(word)

    ints = {}
    for key in ("max_weight", "max_length", "max_level"):
        if key in opts:
            val, ln, raw = opts[key]
            ints[key] = _parse_int(val, ln, raw)
            if ints[key] < 0:
                raise ParseError(f"{key} must be >= 0", ln, _col(raw, val))

    V = GeneratorSpace(names, degrees, {})
    # normalize differential words into the algebra's monomial order
    proto = FreeAlgebra(V, flavor, fld, None, rels, name=get("name", name))
    nd = {}
    for g, val in d.items():
        out = {}
        for w, c in val.items():
            s, m = proto._sort(w)
            if s and not proto.is_zero_mono(m):
                out[m] = fld.coerce(out.get(m, 0) + s * c)
        nd[g] = {m: c for m, c in out.items() if c}
    try:
        alg = FreeAlgebra(GeneratorSpace(names, degrees, nd), flavor, fld, None, rels, name=get("name", name))
    except ValueError as exc:
        msg = str(exc)
        ln, col = 1, 1
        for nm, expr, l2, raw, start in diffs:
            if f"d({nm})" in msg:
                ln, col = l2, start + 1
        raise ParseError(msg, ln, col) from None
    return AlgebraSpec(alg, coh, ints)


def read_algebra(path, field=None):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), field, name=_stem(path))


def _stem(path):
    import os

    return os.path.splitext(os.path.basename(path))[0]
