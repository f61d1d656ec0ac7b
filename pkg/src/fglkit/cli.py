"""Command line front end.

    fglkit table {c-coeffs,kozma,epsilon2-images} [--precision N] ...
    fglkit apply {epsilon2,e2} --fgl law.json
    fglkit verify {series-calculus,fgl-axioms,idempotents,witt-groups,involutions,all}

Exit status is 0 on success, 1 when a verification check fails and 2 for
usage or input errors.  JSON output writes every number as a string and is
byte-for-byte reproducible for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fgl, idempotents
from .report import Report
from .rings import universal_table
from .verify import MAX_PRECISION, SUITES, Config, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TABLES = ("c-coeffs", "kozma", "epsilon2-images")
IDEMPOTENTS = ("epsilon2", "e2")


class UsageError(Exception):
    pass


def _strings(obj):
    """Recursively turn ints into decimal strings (bools are kept)."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _strings(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_strings(v) for v in obj]
    return obj


def _check_precision(n: int) -> int:
    if not 2 <= n <= MAX_PRECISION:
        raise UsageError(f"--precision must lie in [2, {MAX_PRECISION}], got {n}")
    return n


# tables over Q[m_1, ..., m_(N-1)], i.e. laws known through X^N

def table_c_coeffs(N: int):
    U = fgl.universal(N + 1)
    S, P = fgl.sp_series(U)
    tri = fgl.c_coefficients(S, P)
    rep = Report("table")
    rep.add("triangular-matches-residue", tri == fgl.c_coefficients_residue(S, P, U.exp))
    rows = [(f"c{2 * r - 1}", c) for r, c in enumerate(tri, start=1)]
    return U.table, rows, rep


def table_kozma(prime: int, max_k: int):
    if max_k < 1:
        raise UsageError("--max-k must be positive")
    try:
        elems = idempotents.kozma_table(prime, max_k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    table = universal_table(prime * max_k - 1)
    hom = idempotents.epsilon2_hom(table)
    rep = Report("table")
    ok = all(hom(el.value) == (el.value if (prime * el.k) % 2 else 0) for el in elems)
    rep.add("eps2-values", ok)
    rows = [(f"T({prime},{el.k})", el.value) for el in elems]
    return table, rows, rep


def table_epsilon2_images(N: int):
    U = fgl.universal(N + 1)
    E = idempotents.epsilon2(U, verify=False)
    rep = Report("table")
    table = U.table
    rows = [(name, E.hom(table.gen(name))) for name in table.names]
    rep.add("images-match-odd-logarithm",
            all(img == E.law.log.coeffs[k + 2] for k, (_, img) in enumerate(rows)))
    return table, rows, rep


def cmd_table(args) -> tuple[dict, str, int]:
    N = _check_precision(args.precision)
    if args.kind == "c-coeffs":
        table, rows, rep = table_c_coeffs(N)
        config = {"precision": N}
    elif args.kind == "kozma":
        table, rows, rep = table_kozma(args.prime, args.max_k)
        config = {"prime": args.prime, "max_k": args.max_k}
    else:
        table, rows, rep = table_epsilon2_images(N)
        config = {"precision": N}
    data = {
        "table": args.kind,
        "config": config,
        "generators": table.to_json(),
        "entries": [{"key": k, "value": str(v), "terms": v.to_json()} for k, v in rows],
        "report": rep.to_json(),
    }
    lines = [f"# {args.kind}"] + [f"{k} = {v}" for k, v in rows]
    lines += [f"{c['name']}: {'pass' if c['pass'] else 'FAIL'}" for c in rep.to_json()["checks"]]
    return data, "\n".join(lines), EXIT_OK if rep.passed else EXIT_FAIL


def _load_law(path: str) -> fgl.FormalGroupLaw:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    try:
        return fgl.FormalGroupLaw.from_json(data)
    except (KeyError, TypeError, ValueError, IndexError, ArithmeticError) as exc:
        raise UsageError(f"{path} is not a formal group law file: {exc}") from None


def cmd_apply(args) -> tuple[dict, str, int]:
    if not args.fgl:
        raise UsageError("apply needs --fgl PATH")
    F = _load_law(args.fgl)
    notes = []
    if args.idempotent == "epsilon2":
        law = idempotents.epsilon2(F, verify=True).law
        extra = {}
    else:
        res = idempotents.e2(F)
        law = res.law
        extra = {"theta": res.theta.to_json()}
        if res.theta == F.X():
            notes.append("theta = X: the input law is already odd")
    if law == F:
        notes.append("law unchanged")
    data = {
        "idempotent": args.idempotent,
        **law.to_json(),
        "minus_one": law.minus.to_json(),
        **extra,
        "notes": notes,
    }
    lines = [f"log = {law.log}", f"[-1] = {law.minus}"]
    if "theta" in extra:
        lines.append(f"theta = {res.theta}")
    lines += [f"note: {n}" for n in notes]
    return data, "\n".join(lines), EXIT_OK


def cmd_verify(args) -> tuple[dict, str, int]:
    N = _check_precision(args.precision)
    try:
        cfg = Config(precision=N, seed=args.seed, trials=args.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = run_suite(args.suite, cfg)
    data = {"config": {"precision": cfg.precision, "seed": cfg.seed, "trials": cfg.trials},
            **rep.to_json()}
    lines = [f"# {rep.suite}"]
    for c in data["checks"]:
        detail = f" ({c['detail']})" if c["detail"] else ""
        lines.append(f"{c['name']}: {'pass' if c['pass'] else 'FAIL'}{detail}")
    lines.append(f"overall: {'pass' if rep.passed else 'FAIL'}")
    return data, "\n".join(lines), EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=10,
                        help=f"truncation order (2..{MAX_PRECISION})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="fglkit",
                                     description="Exact computations with formal group laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="universal-ring tables")
    p.add_argument("kind", choices=TABLES)
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--max-k", type=int, default=3)
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("apply", parents=[common], help="apply an idempotent to a law file")
    p.add_argument("idempotent", choices=IDEMPOTENTS)
    p.add_argument("--fgl", metavar="PATH")
    p.set_defaults(run=cmd_apply)

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, text, code = args.run(args)
    except UsageError as exc:
        print(f"fglkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        out = json.dumps(_strings(data), indent=2, sort_keys=True) + "\n"
    else:
        out = text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
