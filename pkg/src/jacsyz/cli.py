"""Command line front end: ``jacsyz analyze | add-line | delete-line | scan | conjectures | manifest``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import __version__
from .errors import (
    BadParameters,
    JacsyzError,
    LineIsComponent,
    NotDivisible,
    NotFree,
    NotHomogeneous,
    NotReduced,
    ParseError,
    SharedComponent,
    TheoremMismatch,
    UnknownFamily,
)
from .families import (
    corpus_pairs,
    example_gallery,
    family_instances,
    random_branch_pairs,
)
from .incidence import delete_line, make_pair
from .jacobian import jacobian_module_table
from .local import conjecture_check, format_point, intersection_points, local_mu_tau
from .oracle import AdditionDeletionReport, addition_report, deletion_report
from .parse import parse_line, parse_polynomial
from .poly import HomogeneousPoly, is_reduced
from .syzygy import SyzygyProfile, minimal_generator_degrees

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_HOMOGENEOUS = 3
EXIT_NOT_REDUCED = 4
EXIT_LINE = 5
EXIT_FAMILY = 6

ANALYSIS_COLUMNS = [
    "degree", "exponents", "classification", "level", "mdr",
    "tau", "nu", "sigma", "complete", "bound",
]
SCAN_COLUMNS = [
    "id", "params", "degree", "exponents", "classification",
    "tau", "nu", "sigma", "r", "epsilon", "pass",
]


class CliError(Exception):
    def __init__(self, message: str, code: int):
        self.code = code
        super().__init__(message)


@contextmanager
def _errors():
    try:
        yield
    except ParseError as e:
        raise CliError(f"parse error: {e}", EXIT_PARSE) from e
    except BadParameters as e:
        raise CliError(str(e), EXIT_PARSE) from e
    except NotHomogeneous as e:
        raise CliError(f"not homogeneous: {e}", EXIT_NOT_HOMOGENEOUS) from e
    except NotReduced as e:
        raise CliError(f"not reduced: {e}", EXIT_NOT_REDUCED) from e
    except LineIsComponent as e:
        raise CliError(f"line is a component: {e}", EXIT_LINE) from e
    except NotDivisible as e:
        raise CliError(f"line is not a component: {e}", EXIT_LINE) from e
    except UnknownFamily as e:
        raise CliError(str(e), EXIT_FAMILY) from e


def _curve(text: str) -> HomogeneousPoly:
    f = parse_polynomial(text)
    if f.degree < 3:
        raise CliError(f"degree {f.degree} is below 3", EXIT_PARSE)
    if not is_reduced(f):
        raise NotReduced(f"{f} has a repeated factor")
    return f


# ---------------------------------------------------------------------------
# Documents


def _level(profile: SyzygyProfile):
    return profile.exponents[2] if profile.is_plus_one else None


def analysis_document(f: HomogeneousPoly, bound=None, k_max=None) -> dict:
    profile = minimal_generator_degrees(f, bound)
    table = jacobian_module_table(f, k_max)
    return {
        "input": str(f),
        "degree": f.degree,
        "exponents": list(profile.exponents),
        "classification": profile.classification.label,
        "level": _level(profile),
        "mdr": profile.mdr,
        "tau": table.tau_total,
        "nu": table.nu,
        "sigma": table.sigma,
        "complete": profile.complete,
        "bound": profile.bound,
        "hilbert": {
            "M": list(table.dims_M),
            "N": list(table.dims_N),
            "D0": list(profile.d0_dims),
        },
        "version": __version__,
    }


def _profile_summary(p: SyzygyProfile, f: HomogeneousPoly) -> dict:
    return {
        "input": str(f),
        "degree": p.degree,
        "exponents": list(p.exponents),
        "classification": p.classification.label,
        "level": _level(p),
        "complete": p.complete,
        "bound": p.bound,
    }


def report_document(rep: AdditionDeletionReport) -> dict:
    pair = rep.pair
    failed = [[c.k, c.lhs, c.rhs] for c in rep.identity_checks if not c.holds]
    return {
        "direction": rep.direction.value,
        "curve": _profile_summary(rep.profile_C, pair.f),
        "union": _profile_summary(rep.profile_Cprime, pair.f_union),
        "line": str(pair.ell),
        "r": pair.r,
        "epsilon": pair.epsilon,
        "tau": pair.tau,
        "tau_union": pair.tau_union,
        "case": rep.observed_case,
        "predicted_case": rep.predicted_case,
        "expected_exponents": list(rep.expected_exponents),
        "r_formula_holds": rep.r_formula_holds,
        "identities": {
            "checked": len(rep.identity_checks),
            "failed": failed,
        },
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# Output


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    return str(v)


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [[_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _flat_items(doc: dict, prefix: str = ""):
    for k, v in doc.items():
        if isinstance(v, dict):
            yield from _flat_items(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", v


def emit(doc, fmt: str, columns: list[str] | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    rows = doc if isinstance(doc, list) else [doc]
    if columns is None:
        flat = dict(_flat_items(rows[0]))
        columns = list(flat)
        rows = [dict(_flat_items(r)) for r in rows]
    if fmt == "csv":
        out.write(_csv(rows, columns))
    elif len(rows) == 1 and fmt == "table":
        items = [(c, _cell(rows[0].get(c))) for c in columns]
        w = max(len(c) for c, _ in items)
        out.write("".join(f"{c.ljust(w)}  {v}\n" for c, v in items))
    else:
        out.write(_table(rows, columns))


# ---------------------------------------------------------------------------
# Commands


def cmd_analyze(args) -> dict:
    with _errors():
        f = _curve(args.poly)
        doc = analysis_document(f, args.bound, args.kmax)
    emit(doc, args.format, ANALYSIS_COLUMNS if args.format != "json" else None)
    return doc


def _line_command(args, direction: str) -> dict:
    with _errors():
        ell = parse_line(args.line)
        if direction == "addition":
            f = _curve(args.poly)
            pair = make_pair(f, ell)
        else:
            f_union = _curve(args.poly)
            pair = delete_line(f_union, ell)
            if pair.d < 3:
                raise CliError(f"the curve left after deletion has degree {pair.d}", EXIT_PARSE)
        try:
            run = addition_report if direction == "addition" else deletion_report
            doc = report_document(run(pair, bound=args.bound))
        except NotFree as e:
            target = pair.f_union if direction == "addition" else pair.f
            notice = f"{e}; showing the analysis of {'the union' if direction == 'addition' else 'the curve'}"
            print(f"notice: {notice}", file=sys.stderr)
            doc = {"notice": notice, **analysis_document(target, args.bound, args.kmax)}
    if args.format == "json":
        emit(doc, "json")
    else:
        emit(doc, args.format)
    return doc


def cmd_addline(args) -> dict:
    return _line_command(args, "addition")


def cmd_delline(args) -> dict:
    return _line_command(args, "deletion")


def _parse_range(text: str | None) -> tuple[int | None, int | None]:
    if not text:
        return None, None
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise CliError(f"bad range {text!r}; use a..b", EXIT_PARSE) from None


def scan_row(curve) -> dict:
    """One scan row; pure function of the NamedCurve so it can run in a worker."""
    profile = minimal_generator_degrees(curve.f)
    table = jacobian_module_table(curve.f)
    exp = curve.expected
    row = {
        "id": curve.id,
        "params": list(curve.params),
        "degree": curve.f.degree,
        "exponents": list(profile.exponents),
        "classification": profile.classification.label,
        "tau": table.tau_total,
        "nu": table.nu,
        "sigma": table.sigma,
        "r": None,
        "epsilon": None,
    }
    ok = True
    if exp is not None:
        if exp.exponents is not None:
            ok &= tuple(profile.exponents) == tuple(exp.exponents)
        if exp.classification is not None:
            ok &= profile.classification.label == exp.classification
        if exp.tau is not None:
            ok &= table.tau_total == exp.tau
        if exp.point is not None and (exp.tau_at_point is not None or exp.mu_minus_tau_at_point is not None):
            loc = local_mu_tau(curve.f, exp.point)
            if exp.tau_at_point is not None:
                ok &= loc.tau == exp.tau_at_point
            if exp.mu_minus_tau_at_point is not None:
                ok &= loc.epsilon_local == exp.mu_minus_tau_at_point
    row["pass"] = bool(ok)
    return row


def _params(v):
    return [str(x) for x in v]


def cmd_scan(args) -> list[dict]:
    lo, hi = _parse_range(args.range)
    with _errors():
        abc = [int(x) if x.lstrip("-").isdigit() else x for x in args.abc.split(",")]
        curves = family_instances(args.family, lo, hi, abc=abc)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(scan_row, curves))
    else:
        rows = [scan_row(c) for c in curves]
    for row in rows:
        row["params"] = _params(row["params"])
    if args.format == "json":
        emit({"family": args.family, "rows": rows, "version": __version__}, "json")
    else:
        emit(rows, args.format, SCAN_COLUMNS)
    return rows


def _summary(records) -> dict:
    return {
        "checked": len(records),
        "conj1_violations": sum(not r.conj1_holds for r in records),
        "conj2_violations": sum(not r.conj2_holds for r in records),
    }


def conjecture_report(seed: int, n_random: int, n_exploratory: int, corpus: bool = True,
                      heavy: bool = False) -> dict:
    violations = []
    sections = {}

    def collect(name, items):
        recs = []
        skipped = 0
        for desc, f1, f2, p in items:
            try:
                rec = conjecture_check(f1, f2, p)
            except SharedComponent:
                skipped += 1
                continue
            recs.append(rec)
            if not (rec.conj1_holds and rec.conj2_holds):
                violations.append({"source": name, "pair": desc, **rec.as_dict()})
        sections[name] = {**_summary(recs), "skipped": skipped}

    if corpus:
        items = []
        for cp in corpus_pairs(include_heavy=heavy):
            if cp.direction == "addition":
                f, ell = cp.f, cp.ell
            else:
                pair = delete_line(cp.f, cp.ell)
                f, ell = pair.f, pair.ell
            pts, _ = intersection_points(f, ell)
            items += [(f"{cp.id} @ {format_point(p)}", f, ell.as_poly(), p) for p in pts]
        collect("corpus", items)
    origin = (0, 0, 1)
    collect("irreducible", [
        (bp.description, bp.f1, bp.f2, origin)
        for bp in random_branch_pairs(n_random, seed=seed, irreducible=True)
    ])
    collect("exploratory", [
        (bp.description, bp.f1, bp.f2, origin)
        for bp in random_branch_pairs(n_exploratory, seed=seed + 1, irreducible=False)
    ])
    return {"seed": seed, **sections, "violations": violations, "version": __version__}


def cmd_conjectures(args) -> dict:
    doc = conjecture_report(args.seed, args.random, args.exploratory,
                            corpus=not args.no_corpus, heavy=args.heavy)
    if args.format == "json":
        emit(doc, "json")
    else:
        rows = [{"section": k, **doc[k]} for k in ("corpus", "irreducible", "exploratory") if k in doc]
        emit(rows, args.format, ["section", "checked", "conj1_violations", "conj2_violations", "skipped"])
    return doc


def manifest_document() -> dict:
    def exp_dict(e):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in vars(e).items() if v is not None}

    return {
        "gallery": [
            {"id": c.id, "f": str(c.f), "expected": exp_dict(c.expected), **({"note": c.note} if c.note else {})}
            for c in example_gallery()
        ],
        "pairs": [
            {"id": p.id, "f": str(p.f), "line": str(p.ell), "direction": p.direction,
             "expected": exp_dict(p.expected)}
            for p in corpus_pairs()
        ],
        "version": __version__,
    }


def cmd_manifest(args) -> dict:
    doc = manifest_document()
    emit(doc, "json")
    return doc


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--bound", type=int, default=None, help="syzygy scan bound (default: automatic)")
    common.add_argument("--kmax", type=int, default=None, help="last degree of the Hilbert tables (default: T)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="add wall-clock milliseconds to stderr")

    p = argparse.ArgumentParser(prog="jacsyz", description="Jacobian syzygies of plane curves.")
    p.add_argument("--version", action="version", version=f"jacsyz {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="exponents and Jacobian module of a curve")
    a.add_argument("poly")
    a.set_defaults(func=cmd_analyze)

    for name, func, what in (("add-line", cmd_addline, "curve"), ("delete-line", cmd_delline, "union")):
        s = sub.add_parser(name, parents=[common], help=f"{name.replace('-', ' ')} and check the case table")
        s.add_argument("poly", help=f"the {what}")
        s.add_argument("line")
        s.set_defaults(func=func)

    s = sub.add_parser("scan", parents=[common], help="run a family against its expected data")
    s.add_argument("family", help="cm | rkc | cusp | gallery")
    s.add_argument("range", nargs="?", help="parameter range a..b")
    s.add_argument("--abc", default="1,0,0", help="coefficients a,b,c for rkc")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("conjectures", parents=[common], help="check the local epsilon and tau conjectures")
    c.add_argument("--random", type=int, default=500, help="irreducible random pairs")
    c.add_argument("--exploratory", type=int, default=20, help="reducible random pairs")
    c.add_argument("--no-corpus", action="store_true")
    c.add_argument("--heavy", action="store_true", help="include the degree 12 corpus pair")
    c.set_defaults(func=cmd_conjectures)

    m = sub.add_parser("manifest", parents=[common], help="print the corpus as JSON")
    m.set_defaults(func=cmd_manifest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        args.func(args)
    except CliError as e:
        print(f"jacsyz: {e}", file=sys.stderr)
        return e.code
    except TheoremMismatch as e:
        print(f"jacsyz: {e}", file=sys.stderr)
        print(json.dumps(e.dump, indent=2), file=sys.stderr)
        return 1
    except JacsyzError as e:
        print(f"jacsyz: {e}", file=sys.stderr)
        return 1
    if args.timing:
        print(f"elapsed_ms {int((time.perf_counter() - start) * 1000)}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
