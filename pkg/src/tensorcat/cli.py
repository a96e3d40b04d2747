"""Command-line front end.

Exit codes: 0 success; 1 invalid input data (parse or validation
failures, bad flags); 2 analysis completed but some verdict is
undetermined or the field is unsupported for a requested check;
3 internal oracle disagreement (a bug, never expected on valid data).

The environment variable TENSORCAT_BUDGET overrides the deterministic
search budgets (default 4096 candidate evaluations).
"""

import argparse
import sys

from .algebra import validate_algebra
from .catalog import UnknownEntry, make_algebra, standard_entries
from .fields import Embedding, NotAnEmbedding
from .fincat import ValidationFailure, validate_category
from .fileio import (FormatError, algebra_from_json, algebra_to_json,
                     category_from_json, category_to_json, dumps_canonical,
                     field_from_json, load_json, report_schema, save_json)
from .structure import (InseparableExtension, NotFusion, OracleDisagreement,
                        analyze, base_extend_algebra, center_semisimple_verdict,
                        global_dimension, matrix_decomposition)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNDETERMINED = 2
EXIT_DISAGREEMENT = 3


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


def _approximate(scalar) -> str | None:
    """Decimal rendering under every real embedding of the field; for
    human readers only, the engine never touches floats."""
    field = scalar.field
    if field.char != 0:
        return None
    coeffs = [float(c) for c in scalar.c]
    if field.minpoly is None:
        return f"{coeffs[0]:.6g}"
    mp = [float(c) for c in field.minpoly]

    def f(x):
        acc = 0.0
        for c in reversed(mp):
            acc = acc * x + c
        return acc
    roots = []
    prev = None
    x = -64.0
    while x <= 64.0:
        y = f(x)
        if prev is not None and prev[1] * y <= 0 and (prev[1] or y):
            lo, hi = prev[0], x
            for _ in range(80):
                mid = (lo + hi) / 2
                if f(lo) * f(mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            roots.append((lo + hi) / 2)
        prev = (x, y)
        x += 0.25
    if not roots:
        return None
    vals = []
    for root in roots:
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * root + c
        vals.append(f"{acc:.6g}")
    return " or ".join(vals)


def _render_scalar(scalar) -> str:
    exact = repr(scalar)
    approx = _approximate(scalar)
    if approx is not None and approx != exact:
        return f"{exact} (~ {approx}, approximate)"
    return exact


def _load_category(path):
    try:
        cat = category_from_json(load_json(path))
    except (OSError, ValueError, FormatError, ValidationFailure) as exc:
        raise CLIError(f"{path}: {exc}") from exc
    return cat


def _load_validated_category(path):
    cat = _load_category(path)
    rep = validate_category(cat)
    if not rep.ok:
        raise CLIError(f"{path}: {rep.failures[0]}")
    return cat


def _load_algebra(cat, path):
    try:
        alg = algebra_from_json(cat, load_json(path))
    except (OSError, ValueError, FormatError, ValidationFailure) as exc:
        raise CLIError(f"{path}: {exc}") from exc
    rep = validate_algebra(alg)
    if not rep.ok:
        raise CLIError(f"{path}: {rep.failures[0]}")
    return alg


def _report_text(report: dict, out) -> None:
    flags = report["flags"]
    out.write("flags:\n")
    for k in ("semisimple", "simple", "division", "separable"):
        out.write(f"  {k}: {flags[k]}\n")
    if report.get("dim_A") is not None:
        out.write(f"dim A (coefficient vector): {report['dim_A']}\n")
    md = report.get("matrix_decomposition")
    if md:
        out.write(f"matrix decomposition: {len(md['classes'])} class(es), "
                  f"{md['simple_count']} simple module(s); "
                  f"object identity holds: {md['object_identity_holds']}\n")
    es = report.get("endomorphism_separability")
    if es:
        for entry in es:
            out.write(f"  module {entry['module']}: End dim "
                      f"{entry['end_dim']}, separable over base: "
                      f"{entry['separable_over_base']}\n")
    out.write("criteria:\n")
    for k, v in report["oracle_agreement"].items():
        out.write(f"  {k}: {v}\n")


def _has_undetermined(report: dict) -> bool:
    for v in report["flags"].values():
        if v == "undetermined":
            return True
    for v in report["oracle_agreement"].values():
        if v == "undetermined":
            return True
    return False


# ---------------------------------------------------------------------------
# subcommands

def _cmd_validate(args, out) -> int:
    cat = _load_category(args.category)
    rep = validate_category(cat)
    if not rep.ok:
        out.write(f"category: FAIL: {rep.failures[0]}\n")
        return EXIT_INVALID
    out.write(f"category: pass ({rep.checks_run} checks)\n")
    if args.algebra:
        alg = None
        try:
            alg = algebra_from_json(cat, load_json(args.algebra))
        except (OSError, ValueError, FormatError, ValidationFailure) as exc:
            out.write(f"algebra: FAIL: {exc}\n")
            return EXIT_INVALID
        arep = validate_algebra(alg)
        if not arep.ok:
            out.write(f"algebra: FAIL: {arep.failures[0]}\n")
            return EXIT_INVALID
        out.write(f"algebra: pass ({arep.checks_run} checks)\n")
    return EXIT_OK


def _analyze_one(cat_path: str, alg_path: str) -> dict:
    cat = _load_validated_category(cat_path)
    alg = _load_algebra(cat, alg_path)
    return analyze(cat, alg)


def _cmd_analyze(args, out) -> int:
    paths = [(args.category, a) for a in args.algebras]
    if args.jobs > 1 and len(paths) > 1:
        import concurrent.futures as cf
        with cf.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_analyze_one_star, paths))
    else:
        reports = [_analyze_one(c, a) for c, a in paths]
    rc = EXIT_OK
    for (cpath, apath), report in zip(paths, reports):
        if args.report == "json":
            out.write(dumps_canonical(report))
        else:
            out.write(f"== {cpath} / {apath} ==\n")
            _report_text(report, out)
        if _has_undetermined(report):
            rc = max(rc, EXIT_UNDETERMINED)
    return rc


def _analyze_one_star(pair):
    return _analyze_one(*pair)


def _cmd_global_dim(args, out) -> int:
    cat = _load_validated_category(args.category)
    try:
        d = global_dimension(cat)
    except NotFusion as exc:
        raise CLIError(str(exc)) from exc
    verdict = not d.is_zero()
    if args.report == "json":
        out.write(dumps_canonical({
            "schema_version": "1",
            "global_dimension": d.serialize(),
            "center_semisimple": verdict,
        }))
    else:
        out.write(f"global dimension: {_render_scalar(d)}\n")
        out.write(f"center semisimple: {verdict}\n")
    return EXIT_OK


def _cmd_decompose(args, out) -> int:
    cat = _load_validated_category(args.category)
    alg = _load_algebra(cat, args.algebra)
    from .structure import NotSemisimpleAlgebra
    try:
        md = matrix_decomposition(cat, alg)
    except NotSemisimpleAlgebra as exc:
        raise CLIError(str(exc)) from exc
    if args.report == "json":
        out.write(dumps_canonical({"schema_version": "1",
                                   "matrix_decomposition": md}))
    else:
        out.write(f"classes: {len(md['classes'])}\n")
        for k, cls in enumerate(md["classes"]):
            simples = ", ".join(
                f"#{s['index']} carrier {s['carrier']} x{s['multiplicity']}"
                for s in cls["simples"])
            out.write(f"  class {k}: {simples}\n")
        out.write(f"object identity holds: {md['object_identity_holds']}\n")
    return EXIT_OK


def _cmd_base_extend(args, out) -> int:
    cat = _load_validated_category(args.category)
    base_field = cat.field
    try:
        mp = [c.strip() for c in args.minpoly.split(",")]
        dst = field_from_json({"char": base_field.char, "minpoly": mp})
        gen_image = None
        if base_field.minpoly is not None:
            if not args.map:
                raise CLIError("--map is required when the source field is "
                               "an extension")
            gen_image = dst.scalar([c.strip() for c in args.map.split(",")])
        emb = Embedding(base_field, dst, gen_image)
    except (ValueError, NotAnEmbedding) as exc:
        raise CLIError(f"bad embedding: {exc}") from exc
    if args.algebra:
        alg = _load_algebra(cat, args.algebra)
        try:
            cat2, alg2 = base_extend_algebra(cat, alg, emb)
        except InseparableExtension as exc:
            raise CLIError(str(exc)) from exc
        save_json(args.out_category, category_to_json(cat2))
        save_json(args.out_algebra, algebra_to_json(alg2))
        out.write(f"wrote {args.out_category} and {args.out_algebra}\n")
    else:
        cat2 = cat.scalar_extend(emb)
        save_json(args.out_category, category_to_json(cat2))
        out.write(f"wrote {args.out_category}\n")
    return EXIT_OK


def _catalog_algebras(name: str, cat) -> dict:
    """Algebra constructors available for a catalog category."""
    out = {"trivial": lambda: make_algebra(cat, "trivial")}
    if name.startswith(("z", "mmf")) and name != "mmf2":
        n = len(cat.labels)
        out["regular"] = lambda: make_algebra(cat, "regular_pointed", {})
        for h in range(2, n):
            if n % h == 0:
                out[f"sub{h}"] = (lambda hh: lambda: make_algebra(
                    cat, "regular_pointed", {"subgroup_order": hh}))(h)
    if name.startswith("vec"):
        for n in (2, 3):
            out[f"group{n}"] = (lambda nn: lambda: make_algebra(
                cat, "ordinary_group_algebra", {"n": nn}))(n)
    for a in cat.labels:
        out[f"end_{a}"] = (lambda aa: lambda: make_algebra(
            cat, "internal_end", {"obj": {aa: 1}}))(a)
    return out


def _cmd_catalog(args, out) -> int:
    entries = standard_entries()
    if args.action == "list":
        for name in entries:
            cat = entries[name]()
            algs = ", ".join(sorted(_catalog_algebras(name, cat)))
            out.write(f"{name}: algebras [{algs}]\n")
        return EXIT_OK
    # emit
    target = args.name
    if target is None:
        raise CLIError("catalog emit requires a name (see 'catalog list')")
    if "/" in target:
        cname, aname = target.split("/", 1)
    else:
        cname, aname = target, None
    if cname not in entries:
        raise CLIError(f"unknown catalog entry {cname!r}")
    try:
        cat = entries[cname]()
    except (UnknownEntry, ValidationFailure) as exc:
        raise CLIError(str(exc)) from exc
    if aname is None:
        save_json(args.out, category_to_json(cat))
        out.write(f"wrote {args.out}\n")
        return EXIT_OK
    algs = _catalog_algebras(cname, cat)
    if aname not in algs:
        raise CLIError(f"unknown algebra {aname!r} for {cname!r}; "
                       f"known: {sorted(algs)}")
    try:
        alg = algs[aname]()
    except (UnknownEntry, ValidationFailure) as exc:
        raise CLIError(str(exc)) from exc
    save_json(args.out, algebra_to_json(alg))
    out.write(f"wrote {args.out}\n")
    return EXIT_OK


def _cmd_schema(args, out) -> int:
    out.write(dumps_canonical(report_schema()))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="tensorcat",
                description="exact structure analysis of algebras in "
                            "skeletal multi-fusion categories")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="coherence-check a category file")
    v.add_argument("category")
    v.add_argument("algebra", nargs="?", default=None)

    a = sub.add_parser("analyze", help="full analysis of (category, algebra)")
    a.add_argument("category")
    a.add_argument("algebras", nargs="+")
    a.add_argument("--report", choices=("json", "text"), default="text")
    a.add_argument("--jobs", type=int, default=1)

    g = sub.add_parser("global-dim", help="global dimension and the "
                                          "center-semisimplicity verdict")
    g.add_argument("category")
    g.add_argument("--report", choices=("json", "text"), default="text")

    d = sub.add_parser("decompose", help="matrix decomposition of a "
                                         "semisimple algebra")
    d.add_argument("category")
    d.add_argument("algebra")
    d.add_argument("--report", choices=("json", "text"), default="text")

    b = sub.add_parser("base-extend", help="embed all coefficients into a "
                                           "separable field extension")
    b.add_argument("category")
    b.add_argument("algebra", nargs="?", default=None)
    b.add_argument("--minpoly", required=True,
                   help="comma-separated minpoly coefficients, low to high")
    b.add_argument("--map", default=None,
                   help="comma-separated image of the source generator")
    b.add_argument("--out-category", required=True)
    b.add_argument("--out-algebra", default=None)

    c = sub.add_parser("catalog", help="list or emit built-in examples")
    c.add_argument("action", choices=("list", "emit"))
    c.add_argument("name", nargs="?", default=None)
    c.add_argument("--out", default=None)

    s = sub.add_parser("schema", help="print the analysis report schema")
    return p


def main(argv=None) -> int:
    out = sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except CLIError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    try:
        if args.verb == "validate":
            return _cmd_validate(args, out)
        if args.verb == "analyze":
            return _cmd_analyze(args, out)
        if args.verb == "global-dim":
            return _cmd_global_dim(args, out)
        if args.verb == "decompose":
            return _cmd_decompose(args, out)
        if args.verb == "base-extend":
            if args.algebra and not args.out_algebra:
                raise CLIError("--out-algebra is required when an algebra "
                               "file is given")
            return _cmd_base_extend(args, out)
        if args.verb == "catalog":
            if args.action == "emit" and not args.out:
                raise CLIError("catalog emit requires --out")
            return _cmd_catalog(args, out)
        if args.verb == "schema":
            return _cmd_schema(args, out)
        raise CLIError(f"unknown verb {args.verb!r}")
    except CLIError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except (FormatError, ValidationFailure, UnknownEntry) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OracleDisagreement as exc:
        sys.stderr.write(f"internal oracle disagreement: {exc}\n")
        return EXIT_DISAGREEMENT


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
