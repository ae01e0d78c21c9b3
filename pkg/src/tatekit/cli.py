"""Command line interface: ``tatekit build | tate | probe | verify``.

Reports go to stdout (or ``--output``) as deterministic JSON, CSV or text;
progress messages go to stderr.  Exit codes: 0 ok, 1 mismatch against the
expected tables, 2 input error, 3 precondition failure, 4 inconclusive.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import __version__
from . import gadgets, probes, tate
from .algebra import HopfError, NotSymmetric, check_hopf, symmetrizing_form
from .atlas import BUILDERS, PreconditionError, by_key
from .modlinalg import rank
from .stmod import adjoint_module, stable_hom
from .straighten import PresentationError, build_algebra, load, verify_presentation
from .structure import (NotCertifiedSymmetric, UnsupportedField, WindowError, projective_cover,
                        radical_certificate, tower)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

log = logging.getLogger("tatekit")


class Failure(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _progress(msg):
    click.echo(msg, err=True)


def threads(flag: int | None) -> int:
    env = os.environ.get("TATEKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise Failure(EXIT_INPUT, "TATEKIT_THREADS must be an integer, got %r" % env)
    if flag:
        return max(1, flag)
    return os.cpu_count() or 1


def default_window(a) -> int:
    return 8 if a.dim <= 27 else 6


# --------------------------------------------------------------------------
# inputs
# --------------------------------------------------------------------------

def _entry(atlas, N, p):
    if atlas not in BUILDERS:
        raise Failure(EXIT_INPUT, "unknown atlas entry %r (choose from %s)" % (atlas, ", ".join(sorted(BUILDERS))))
    if p is None:
        raise Failure(EXIT_INPUT, "--p is required")
    try:
        if atlas in ("radford", "truncated"):
            return BUILDERS[atlas](N if N is not None else 2, p)
        return BUILDERS[atlas](p)
    except PreconditionError as exc:
        raise Failure(EXIT_PRECONDITION, str(exc))


def _load(atlas, N, p, path, exhaustive=False):
    """(algebra, entry or None, params)."""
    try:
        if path:
            pres = load(path)
            a = build_algebra(pres)
            rep = verify_presentation(a, exhaustive=True if exhaustive else None)
            if not rep.ok:
                raise Failure(EXIT_MISMATCH, "presentation check failed: %s" % rep.violations[:5])
            if a.is_hopf and not check_hopf(a).ok:
                raise Failure(EXIT_MISMATCH, "Hopf axioms fail")
            return a, None, {"file": os.path.basename(path)}
        if atlas is None:
            raise Failure(EXIT_INPUT, "give --atlas or --file")
        e = _entry(atlas, N, p)
        return e.build(), e, dict(e.params)
    except PresentationError as exc:
        where = " (line %d)" % exc.line if getattr(exc, "line", None) else ""
        raise Failure(EXIT_INPUT, "parse error%s: %s" % (where, exc))
    except OSError as exc:
        raise Failure(EXIT_INPUT, str(exc))
    except (HopfError, ValueError) as exc:
        raise Failure(EXIT_MISMATCH, str(exc))


def _symmetric(a):
    try:
        symmetrizing_form(a)
        return True
    except NotSymmetric:
        return False


def _tower(a, D):
    if not _symmetric(a):
        raise Failure(EXIT_PRECONDITION, "%s is not certified symmetric" % a.name)
    try:
        return tower(a, D, progress=_progress)
    except (UnsupportedField, NotCertifiedSymmetric) as exc:
        raise Failure(EXIT_PRECONDITION, str(exc))


def _module(t, spec: str):
    if spec == "k":
        return t.k
    if spec == "adjoint":
        try:
            return adjoint_module(t.alg)
        except HopfError as exc:
            raise Failure(EXIT_PRECONDITION, str(exc))
    if spec in ("AR", "AR-middle"):
        return gadgets.ar_sequence_k(t).mid
    m = re.fullmatch(r"Lxi\((\d+)(?:,(\d+))?\)", spec)
    if m:
        j, power = int(m.group(1)), int(m.group(2) or 1)
        basis = tate.tate_basis(t, None, 2)
        if not 1 <= j <= len(basis):
            raise Failure(EXIT_INPUT, "H^2 has %d basis classes, asked for %d" % (len(basis), j))
        xi = gadgets.power(t, basis[j - 1], power)
        return gadgets.build_L(t, xi).module
    raise Failure(EXIT_INPUT, "unknown module %r (k, adjoint, AR, Lxi(j,t))" % spec)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def report(meta, tables=None, verdicts=None, witnesses=None) -> dict:
    meta = dict(meta)
    meta["engine-version"] = __version__
    return _jsonable({"meta": meta, "tables": tables or {}, "verdicts": verdicts or [],
                      "witnesses": witnesses or []})


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "key", "value"])
        for name in sorted(rep["tables"]):
            val = rep["tables"][name]
            if isinstance(val, dict):
                for k in sorted(val, key=_degree_key):
                    w.writerow([name, k, json.dumps(val[k], sort_keys=True)])
            else:
                w.writerow([name, "", json.dumps(val, sort_keys=True)])
        return buf.getvalue()
    lines = ["%s: %s" % (k, json.dumps(rep["meta"][k], sort_keys=True)) for k in sorted(rep["meta"])]
    for name in sorted(rep["tables"]):
        val = rep["tables"][name]
        lines.append("[%s]" % name)
        if isinstance(val, dict):
            for k in sorted(val, key=_degree_key):
                lines.append("  %s\t%s" % (k, json.dumps(val[k], sort_keys=True)))
        else:
            lines.append("  %s" % json.dumps(val, sort_keys=True))
    for v in rep["verdicts"]:
        lines.append("verdict %s: %s" % (v.get("kind"), v.get("verdict")))
    return "\n".join(lines) + "\n"


def _degree_key(k):
    try:
        return (0, int(k))
    except (TypeError, ValueError):
        return (1, str(k))


def _emit(rep, fmt, output):
    text = render(rep, fmt)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _run(fn):
    try:
        code = fn()
    except Failure as exc:
        click.echo("error: %s" % exc, err=True)
        code = exc.code
    except WindowError as exc:
        click.echo("error: %s" % exc, err=True)
        code = EXIT_INPUT
    sys.exit(code or EXIT_OK)


# --------------------------------------------------------------------------
# computations shared by commands
# --------------------------------------------------------------------------

def graded_dims(t, m, n_threads=1) -> dict:
    """``{n: dim H^n(A, m)}``, degrees fanned out over a thread pool."""
    degrees = list(range(-t.D, t.D + 1))
    if m.dim:
        projective_cover(m)
    if n_threads > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            dims = list(pool.map(lambda n: stable_hom(t.T[n], m).dim, degrees))
    else:
        dims = [t.stable(n, m).dim for n in degrees]
    return dict(zip(degrees, dims))


def pairing_ranks(t) -> dict:
    out = {}
    for n in range(-t.D + 1, t.D + 1):
        mat = tate.pairing_matrix(t, n)
        out[n] = {"shape": list(mat.shape), "rank": rank(mat, t.alg.p) if mat.size else 0,
                  "invertible": mat.shape[0] == mat.shape[1] and (mat.size == 0 or rank(mat, t.alg.p) == mat.shape[0])}
    return out


def _probe_reports(t, kinds, action_bound):
    out = []
    xi = None
    if {"regularity", "nonfg"} & set(kinds):
        try:
            xi = probes.find_regular(t)
        except (ValueError, WindowError):
            xi = None
    for kind in kinds:
        _progress("probe %s" % kind)
        if kind == "negprod":
            out.append(probes.negative_products_zero(t))
        elif kind == "regularity":
            if xi is None:
                out.append(probes.ProbeReport("regularity", (0, t.D), probes.INCONCLUSIVE,
                                              [{"reason": "no regular class of degree 2 in window"}]))
            else:
                out.append(probes.regular_on_positive(t, xi))
        elif kind == "nonfg":
            if xi is None:
                out.append(probes.ProbeReport("nonfg", (-t.D, t.D), probes.INCONCLUSIVE,
                                              [{"reason": "no regular class of degree 2 in window"}]))
            else:
                L = gadgets.build_L(t, xi).module
                out.append(probes.nonfg_report(t, L, xi, action_bound=action_bound))
        elif kind == "fg":
            out.append(probes.fg_report_extension(t, gadgets.ar_sequence_k(t)))
        else:
            raise Failure(EXIT_INPUT, "unknown probe %r" % kind)
    return out


def _probe_exit(reps, expected) -> tuple[int, list]:
    """Mismatches win over inconclusive verdicts."""
    verdicts = []
    mismatch = inconclusive = False
    for r in reps:
        want = expected.get("fg" if r.kind == "fg-extension" else r.kind)
        ok = want is None or r.verdict == want
        verdicts.append({"kind": r.kind, "verdict": r.verdict, "expected": want, "ok": ok})
        if r.verdict == probes.INCONCLUSIVE and not ok:
            inconclusive = True
        elif not ok:
            mismatch = True
    code = EXIT_MISMATCH if mismatch else EXIT_INCONCLUSIVE if inconclusive else EXIT_OK
    return code, verdicts


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

input_options = [
    click.option("--atlas", type=str, default=None, help="radford, vsl2, truncated or cyclic"),
    click.option("--N", "N", type=int, default=None, help="order parameter (radford, truncated)"),
    click.option("--p", "p", type=int, default=None, help="characteristic"),
    click.option("--file", "path", type=click.Path(), default=None, help="presentation file (JSON)"),
    click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json"),
    click.option("-o", "--output", type=click.Path(), default=None),
    click.option("--seed", type=int, default=0),
]


def with_inputs(f):
    for opt in reversed(input_options):
        f = opt(f)
    return f


@click.group()
@click.version_option(__version__)
def main():
    """Tate cohomology of finite-dimensional symmetric algebras over F_p."""
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)


@main.command()
@with_inputs
@click.option("--exhaustive", is_flag=True, help="exhaustive associativity check")
def build(atlas, N, p, path, fmt, output, seed, exhaustive):
    """Tabulate and verify an algebra."""
    def run():
        a, entry, params = _load(atlas, N, p, path, exhaustive)
        rad = radical_certificate(a)
        sym = _symmetric(a)
        meta = {"algebra": a.name, "params": params, "window": None, "seed": seed}
        tables = {"summary": {"dim": a.dim, "labels": list(a.labels), "hopf": a.is_hopf, "symmetric": sym,
                              "radical_certified": rad.ok}}
        _emit(report(meta, tables, [{"kind": "build", "verdict": "ok"}]), fmt, output)
        return EXIT_OK
    _run(run)


@main.command("tate")
@with_inputs
@click.option("-D", "D", type=int, default=None, help="window half-width")
@click.option("-M", "module", type=str, default="k", help="k, adjoint, AR or Lxi(j,t)")
@click.option("--threads", "nthreads", type=int, default=None)
def tate_cmd(atlas, N, p, path, fmt, output, seed, D, module, nthreads):
    """Dimensions of H^n(A, M) for -D <= n <= D."""
    def run():
        a, entry, params = _load(atlas, N, p, path)
        d = default_window(a) if D is None else D
        if d < 0:
            raise Failure(EXIT_INPUT, "-D must be non-negative")
        t = _tower(a, max(d, 2) if module != "k" else max(d, 1))
        m = _module(t, module)
        dims = graded_dims(t, m, threads(nthreads))
        dims = {n: v for n, v in dims.items() if -d <= n <= d}
        meta = {"algebra": a.name, "params": params, "window": [-d, d], "seed": seed, "module": module}
        tables = {"dims": dims}
        verdicts = []
        code = EXIT_OK
        if entry is not None and module == "k":
            want = {n: entry.tate_dim(n) for n in dims}
            ok = want == dims
            verdicts.append({"kind": "dims", "verdict": "match" if ok else "mismatch"})
            tables["expected"] = want
            code = EXIT_OK if ok else EXIT_MISMATCH
        _emit(report(meta, tables, verdicts), fmt, output)
        return code
    _run(run)


@main.command()
@with_inputs
@click.option("-D", "D", type=int, default=None)
@click.option("--suite", type=click.Choice(["paper"]), default=None)
@click.option("--check", "checks", multiple=True, type=click.Choice(["negprod", "regularity", "nonfg", "fg"]))
@click.option("--action-bound", type=int, default=6)
def probe(atlas, N, p, path, fmt, output, seed, D, suite, checks, action_bound):
    """Run finite-generation probes and compare with the expected verdicts."""
    def run():
        a, entry, params = _load(atlas, N, p, path)
        d = default_window(a) if D is None else D
        if d < 1:
            raise Failure(EXIT_INPUT, "-D must be at least 1")
        kinds = list(checks) or ["negprod", "regularity", "nonfg", "fg"]
        if suite and not checks:
            kinds = ["negprod", "regularity", "nonfg", "fg"]
        t = _tower(a, d)
        try:
            reps = _probe_reports(t, kinds, action_bound)
        except WindowError:
            reps = [probes.ProbeReport(k, (-d, d), probes.INCONCLUSIVE, [{"reason": "window too small"}])
                    for k in kinds]
        expected = entry.expected_verdicts if entry is not None else {}
        code, verdicts = _probe_exit(reps, expected)
        if any(r.verdict == probes.INCONCLUSIVE for r in reps) and code == EXIT_OK and not expected:
            code = EXIT_INCONCLUSIVE
        meta = {"algebra": a.name, "params": params, "window": [-d, d], "seed": seed,
                "action_bound": action_bound}
        tables = {"N_of_m": _n_of_m(reps)}
        _emit(report(meta, tables, verdicts, [r.to_dict() for r in reps]), fmt, output)
        return code
    _run(run)


def _n_of_m(reps):
    for r in reps:
        if r.kind == "nonfg":
            for w in r.witnesses:
                if w.get("step") == "bfg":
                    return {row["m"]: row["N"] for row in w["table"]}
    return {}


@main.command()
@click.argument("key")
@click.option("-D", "D", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json")
@click.option("-o", "--output", type=click.Path(), default=None)
@click.option("--threads", "nthreads", type=int, default=None)
def verify(key, D, fmt, output, nthreads):
    """Reproduce the expected tables and verdicts for an atlas entry."""
    def run():
        try:
            entry = by_key(key)
        except KeyError as exc:
            raise Failure(EXIT_INPUT, str(exc))
        except PreconditionError as exc:
            raise Failure(EXIT_PRECONDITION, str(exc))
        a = entry.build()
        d = default_window(a) if D is None else D
        t = _tower(a, d)
        dims = graded_dims(t, t.k, threads(nthreads))
        want = {n: entry.tate_dim(n) for n in dims}
        diff = {n: {"engine": dims[n], "expected": want[n]} for n in dims if dims[n] != want[n]}
        pairs = pairing_ranks(t)
        kinds = [k for k in ("negprod", "regularity", "nonfg", "fg") if k in entry.expected_verdicts]
        reps = _probe_reports(t, kinds, 6)
        pcode, verdicts = _probe_exit(reps, entry.expected_verdicts)
        verdicts.insert(0, {"kind": "dims", "verdict": "match" if not diff else "mismatch"})
        verdicts.insert(1, {"kind": "pairing", "verdict": "invertible" if all(v["invertible"] for v in pairs.values())
                            else "degenerate"})
        meta = {"algebra": a.name, "params": dict(entry.params), "window": [-d, d], "seed": 0}
        tables = {"dims": dims, "expected": want, "pairings": pairs, "N_of_m": _n_of_m(reps)}
        if diff:
            tables["diff"] = diff
        _emit(report(meta, tables, verdicts, [r.to_dict() for r in reps]), fmt, output)
        if diff:
            click.echo("mismatch in degrees %s" % sorted(diff), err=True)
            return EXIT_MISMATCH
        if verdicts[1]["verdict"] != "invertible":
            return EXIT_MISMATCH
        return pcode
    _run(run)


if __name__ == "__main__":
    main()
