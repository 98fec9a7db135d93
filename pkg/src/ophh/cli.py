"""Command-line front end.

Subcommands ``hh``, ``ohh``, ``loop``, ``bar`` and ``selftest``.  Output is
TSV by default (``--format structured`` gives JSON); every run starts with
a header listing the bounds in force.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import (DSquareNonzero, MixingDetected, NotClosed, NotSimplyConnectedProxy, ParseError,
                     SizeLimitExceeded)
from .exactlin import BACKEND, Field

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class Report:
    """Collects header, table rows and check lines; renders deterministically."""

    def __init__(self, command, params):
        self.command = command
        self.params = params
        self.columns = []
        self.rows = []
        self.checks = []
        self.notes = []

    def table(self, columns, rows):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def render(self, fmt):
        if fmt == "structured":
            doc = {
                "command": self.command,
                "params": self.params,
                "columns": self.columns,
                "rows": self.rows,
                "checks": [{"name": n, "result": "PASS" if ok else "FAIL", "detail": d}
                           for n, ok, d in self.checks],
                "notes": self.notes,
            }
            return json.dumps(doc, sort_keys=True, indent=1, default=str) + "\n"
        lines = [f"# ophh {self.command}"]
        lines += [f"# {k}={_fmt(v)}" for k, v in sorted(self.params.items())]
        lines += [f"# {n}" for n in self.notes]
        if self.columns:
            lines.append("\t".join(self.columns))
            lines += ["\t".join(_fmt(x) for x in r) for r in self.rows]
        for name, ok, detail in self.checks:
            lines.append("\t".join(x for x in ("PASS" if ok else "FAIL", name, detail) if x))
        return "\n".join(lines) + "\n"


def _fmt(v):
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _field(args, spec=None):
    if args.field is not None:
        return Field.parse(args.field)
    return spec.algebra.field if spec is not None else Field.parse("Q")


def _load(path, args):
    from .formats import read_algebra

    fld = Field.parse(args.field) if args.field is not None else None
    return read_algebra(path, fld)


def _window(spec, lo, hi):
    """Internal lower-degree window for displayed degrees ``lo..hi``."""
    if spec.cohomological:
        return (-hi - 1, -lo + 1)
    return (lo - 1, hi + 1)


def _cap(args):
    if args.cap is not None:
        os.environ["OPHH_CAP"] = str(args.cap)
    from .sset import default_cap

    return default_cap()


def _common_params(args, spec=None):
    p = {"field": _field(args, spec).name, "cap": _cap(args), "backend": BACKEND}
    if spec is not None:
        a = spec.algebra
        p["flavor"] = a.flavor
        p["grading"] = "cohomological" if spec.cohomological else "homological"
        p["generators"] = ", ".join(f"{n} {spec.display_degree(d)}" for n, d in zip(a.V.names, a.V.degrees))
    return p


# ---------------------------------------------------------------------------


def cmd_hh(args):
    from .hochschild import Bounds, hh

    spec = _load(args.algebra, args)
    A = spec.algebra
    L = args.max_length if args.max_length is not None else spec.options.get("max_length", 4)
    w = args.max_weight if args.max_weight is not None else spec.options.get("max_weight")
    b = Bounds(L, w, _window(spec, args.min_degree, args.max_degree))
    _check_d(A, b)
    res = hh(A, b, model=args.model)
    params = _common_params(args, spec)
    params.update(input=os.path.basename(args.algebra), model=args.model, max_length=L, max_weight=w,
                  degrees=f"{args.min_degree}..{args.max_degree}")
    rep = Report("hh", params)
    rows = sorted(((spec.display_degree(n), d, st) for n, (d, st) in res.items()))
    rep.table(["degree", "dim", "stable"], rows)
    return rep


def _check_d(A, b):
    """d^2 = 0 on the generators' algebra within the bounds in force."""
    from .errors import DSquareNonzero
    from .hochschild import _reduced_monomials

    for m in _reduced_monomials(A, b):
        if A.d(A.d_mono(m)):
            raise DSquareNonzero(f"d^2 != 0 on {A.show(m)}", witness=m)


def cmd_ohh(args):
    from .dgmod import homology
    from .hochschild import Bounds, operadic_hc, positive_to_normalized, splitting, theoremA_compare, \
        stability

    spec = _load(args.algebra, args)
    A = spec.algebra
    if A.relations:
        raise ValueError("the operadic complex needs an almost free algebra (no relations)")
    P = args.max_level if args.max_level is not None else spec.options.get("max_level", 3)
    w = args.max_weight if args.max_weight is not None else spec.options.get("max_weight", 4)
    b = Bounds(P, w, _window(spec, args.min_degree, args.max_degree))
    _check_d(A, b)
    c = operadic_hc(A, b)
    h = homology(c.normalized)
    st = stability(lambda bb: homology(operadic_hc(A, bb).normalized), b)
    params = _common_params(args, spec)
    params.update(input=os.path.basename(args.algebra), max_level=P, max_weight=w,
                  degrees=f"{args.min_degree}..{args.max_degree}")
    rep = Report("ohh", params)
    rows = sorted((spec.display_degree(n), h.get(n, 0), st[n]) for n in b.trusted(h))
    rep.table(["degree", "dim", "stable"], rows)
    bij = positive_to_normalized(c)
    rep.check("theorem-B bijection", bij.ok, f"labels={bij.checked}")
    try:
        ap, pp = splitting(c)
        rep.check("splitting", True, f"A-part={sum(ap.dims().values())} positive={sum(pp.dims().values())}")
    except (MixingDetected, NotClosed) as exc:
        rep.check("splitting", False, str(exc))
    if A.flavor == "C":
        r = theoremA_compare(A, b)
        stable = sorted(spec.display_degree(n) for n, ok in r.agree.items())
        rep.check("theorem-A agreement", r.ok,
                  "stable degrees=" + (",".join(map(str, stable)) if stable else "none"))
    else:
        rep.notes.append("theorem-A comparison applies to commutative algebras only")
    return rep


def cmd_loop(args):
    from .hochschild import Bounds, hh
    from .loopmodel import loop_betti
    from .sset import parse_facets

    fld = _field(args)
    with open(args.complex, encoding="utf-8") as fh:
        x = parse_facets(fh.read(), os.path.splitext(os.path.basename(args.complex))[0])
    P = args.max_level if args.max_level is not None else 3
    M = args.max_degree
    cap = _cap(args)
    res = loop_betti(x, fld, P, M, cap=cap, use_collapse=not args.no_collapse)
    params = _common_params(args)
    params.update(input=os.path.basename(args.complex), max_level=P, degrees=f"0..{M}",
                  collapse=not args.no_collapse)
    rep = Report("loop", params)
    rows = [(m, d, st) for m, (d, st) in sorted(res.items())]
    if args.model:
        spec = _load(args.model, args)
        A = spec.algebra
        L = spec.options.get("max_length", 2 * M + 4)
        w = spec.options.get("max_weight")
        oracle = hh(A, Bounds(L, w, _window(spec, 0, M)))
        orc = {spec.display_degree(n): v for n, v in oracle.items()}
        rep.table(["degree", "betti", "stable", "hh", "hh_stable"],
                  [r + [orc.get(r[0], (None, False))[0], orc.get(r[0], (None, False))[1]] for r in map(list, rows)])
        both = [m for m, (d, st) in res.items() if st and orc.get(m, (None, False))[1]]
        agree = all(res[m][0] == orc[m][0] for m in both)
        rep.check("agreement with model", agree and bool(both),
                  "stable degrees=" + (",".join(map(str, sorted(both))) if both else "none"))
        params["model"] = os.path.basename(args.model)
        params["model_max_length"] = L
    else:
        rep.table(["degree", "betti", "stable"], rows)
    return rep


def cmd_bar(args):
    from .operads import e_dims, e_homology_direct, homotopy_certificate, orbit_count

    n, top = args.arity, args.max_degree
    if n < 1 or top < 0:
        raise ValueError("arity must be >= 1 and max degree >= 0")
    dims = e_dims(n, top)
    params = _common_params(args)
    params.update(arity=n, degrees=f"0..{top}", direct_limit=args.direct_limit)
    rep = Report("bar", params)
    rep.table(["degree", "dim", "coinvariants"], [(d, a, c) for d, (a, c) in enumerate(dims)])
    ok, count = homotopy_certificate(n, top)
    rep.check("acyclic (contracting homotopy)", ok, f"degrees=0..{top} patterns={count}")
    # direct ranks and orbit counts where the modules are small enough
    k = -1
    while k + 2 <= top + 1 and sum(a for a, _ in dims[:k + 3]) <= args.direct_limit:
        k += 1
    if k >= 0:
        h = e_homology_direct(n, k, _field(args))
        want = {d: (1 if d == 0 else 0) for d in range(k + 1)}
        rep.check("acyclic (direct ranks)", h == want, f"degrees=0..{k}")
        free = all(orbit_count(n, d)[1] and orbit_count(n, d)[0] == dims[d][1] for d in range(k + 1))
        rep.check("free (orbit count)", free, f"degrees=0..{k}")
    return rep


def cmd_selftest(args):
    from .selftest import run

    results = run(faults=tuple(args.inject_fault or ()))
    rep = Report("selftest", {"backend": BACKEND, "faults": ",".join(args.inject_fault or ()) or None})
    for name, ok, detail in results:
        rep.check(name, ok, detail)
    return rep


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="ophh", description="Operadic and classical Hochschild homology, "
                                 "Barratt-Eccles acyclicity and free loop space cochain models.")
    ap.add_argument("--version", action="version", version=f"ophh {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", default=None, help="Q or Fp, e.g. F7 (default: from the input file, else Q)")
        p.add_argument("--format", choices=("tsv", "structured"), default="tsv")
        p.add_argument("--cap", type=int, default=None, help="simplex cap (env OPHH_CAP)")
        p.add_argument("--max-degree", type=int, default=6)

    p = sub.add_parser("hh", help="classical Hochschild homology of an algebra file")
    p.add_argument("algebra")
    common(p)
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--model", choices=("classical", "unreduced", "operadic"), default="classical")
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("ohh", help="operadic Hochschild complex with structural checks")
    p.add_argument("algebra")
    common(p)
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--max-length", type=int, default=None, help=argparse.SUPPRESS)
    p.add_argument("--max-weight", type=int, default=None)
    p.set_defaults(func=cmd_ohh)

    p = sub.add_parser("loop", help="Betti numbers of the cosimplicial free loop space model")
    p.add_argument("complex", help="facet file")
    common(p)
    p.set_defaults(max_degree=1)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--model", default=None, help="algebra file of a commutative model to compare with")
    p.add_argument("--no-collapse", action="store_true", help="skip collapsing a contractible subcomplex")
    p.set_defaults(func=cmd_loop)

    p = sub.add_parser("bar", help="Barratt-Eccles modules E(n): dimensions and acyclicity")
    common(p)
    p.set_defaults(max_degree=8)
    p.add_argument("--arity", type=int, default=3)
    p.add_argument("--direct-limit", type=int, default=20000,
                   help="largest total dimension for the direct rank check")
    p.set_defaults(func=cmd_bar)

    p = sub.add_parser("selftest", help="run the invariant suite")
    p.add_argument("--format", choices=("tsv", "structured"), default="tsv")
    p.add_argument("--inject-fault", action="append", choices=("cyclic-sign",),
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest, field=None, cap=None)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rep = args.func(args)
    except ParseError as exc:
        print(f"ophh: {getattr(args, 'algebra', None) or getattr(args, 'complex', '')}:"
              f"{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"ophh: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"ophh: size cap reached: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DSquareNonzero as exc:
        print(f"ophh: DSquareNonzero: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NotSimplyConnectedProxy as exc:
        print(f"ophh: NotSimplyConnectedProxy: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"ophh: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render(args.format))
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
