"""Command-line interface: ``oaresolution <subcommand> ...``.

Exit codes: 0 success, 1 identity check failed (``verify``), 2 malformed
input, 3 resource guard exceeded.

Factor numbers on the command line and in reports are 1-based, as in
``--factors 1,2,4``; subsets print as letter words (``A``, ``BC``) with
``I`` for the mean.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .constructors import (
    format_design,
    juxtapose,
    modular_fraction,
    parse_design,
    project,
    regular_fraction,
    write_design,
)
from .core import DesignError, FractionalDesign, subset_label
from .effects import (
    AliasReport,
    AliasStatus,
    ResourceGuard,
    ResourceGuardError,
    alias_table,
    pencil_alias_classes,
)
from .strength import StrengthReport, strength_by_independence, strength_by_projection
from .verify import TheoremWitness, VerificationReport, verify_identities
from .wordlength import GwlpVector, gwlp_characters, gwlp_krawtchouk

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _one_based(I: Sequence[int]) -> list[int]:
    return [i + 1 for i in I]


def _gwlp(f: FractionalDesign) -> GwlpVector:
    if f.parent.is_symmetric:
        return gwlp_krawtchouk(f)
    return gwlp_characters(f)


# rendering ---------------------------------------------------------------


def _strength_text(r: StrengthReport) -> list[str]:
    lam = r.index
    line = f"t_max = {r.t_max}"
    if lam is not None:
        line += f" (index λ = {fmt_q(lam)})"
    out = [line]
    if r.witness is not None:
        K, block = r.witness
        out.append(f"strength {r.t_max + 1} fails on factors {subset_label(K)} (block {block})")
    return out


def _gwlp_text(g: GwlpVector) -> list[str]:
    out = ["A = [" + ", ".join(fmt_q(a) for a in g.pattern) + "]"]
    if g.raw is not None:
        out.append("raw = [" + ", ".join(f"{x:.12g}" for x in g.raw[1:]) + "]")
    return out


def _alias_text(r: AliasReport) -> list[str]:
    aliased = r.aliased_pairs()
    if not aliased:
        if r.r_max == r.design.k + 1:
            return [f"no aliasing; R_max = k+1 = {r.r_max}"]
        return [f"no aliasing among effects of order <= {r.max_order}; R_max = {r.r_max}"]
    out = [f"R_max = {r.r_max}"]
    for (I, J), st in aliased.items():
        out.append(f"{subset_label(I)} ~ {subset_label(J)}: {st.value}")
    return out


def _witness_text(w: TheoremWitness) -> list[str]:
    return [
        f"witness: K = {subset_label(w.K)}, I = {subset_label(w.I)}, J = {subset_label(w.J)}, "
        f"(u^, v^) = {fmt_q(w.value)}"
    ]


def _verify_text(r: VerificationReport) -> list[str]:
    if r.identity_holds:
        head = f"R_max = {r.r_max} = t_max+1 = min GWLP index"
    else:
        head = f"IDENTITY FAILS: R_max = {r.r_max}, t_max+1 = {r.t_max + 1}, min GWLP index = {r.min_gwlp_index}"
    out = [head, f"t_max = {r.t_max}", *_gwlp_text(r.gwlp)]
    if r.witness is not None:
        out += _witness_text(r.witness)
    return out


def _witness_json(w: TheoremWitness | None):
    if w is None:
        return None
    return {
        "K": _one_based(w.K),
        "I": _one_based(w.I),
        "J": _one_based(w.J),
        "levels_I": list(w.levels_I),
        "levels_J": list(w.levels_J),
        "value": fmt_q(w.value),
    }


def _alias_pairs_json(r: AliasReport):
    return [
        {"I": _one_based(I), "J": _one_based(J), "status": st.value}
        for (I, J), st in r.pairs.items()
        if st is not AliasStatus.UNALIASED
    ]


def report_json(report) -> dict:
    if isinstance(report, StrengthReport):
        return {
            "t_max": report.t_max,
            "index": None if report.index is None else fmt_q(report.index),
            "witness": None
            if report.witness is None
            else {"K": _one_based(report.witness[0]), "block": report.witness[1]},
        }
    if isinstance(report, GwlpVector):
        out = {"gwlp": [fmt_q(a) for a in report.pattern]}
        if report.raw is not None:
            out["gwlp_raw"] = [float(f"{x:.12g}") for x in report.raw[1:]]
        return out
    if isinstance(report, AliasReport):
        return {"r_max": report.r_max, "max_order": report.max_order, "alias_pairs": _alias_pairs_json(report)}
    if isinstance(report, VerificationReport):
        return {
            "t_max": report.t_max,
            "r_max": report.r_max,
            "min_gwlp_index": report.min_gwlp_index,
            "identity_holds": report.identity_holds,
            **report_json(report.gwlp),
            "witness": _witness_json(report.witness),
        }
    raise TypeError(f"cannot render {type(report).__name__}")


def render_report(report, fmt: str = "text") -> str:
    """Deterministic text or JSON rendering of any analysis report."""
    if fmt == "json":
        return json.dumps(report_json(report), sort_keys=True)
    if isinstance(report, StrengthReport):
        lines = _strength_text(report)
    elif isinstance(report, GwlpVector):
        lines = _gwlp_text(report)
    elif isinstance(report, AliasReport):
        lines = _alias_text(report)
    elif isinstance(report, VerificationReport):
        lines = _verify_text(report)
    else:
        raise TypeError(f"cannot render {type(report).__name__}")
    return "\n".join(lines)


# commands ----------------------------------------------------------------


def _read(path: str) -> FractionalDesign:
    if path == "-":
        return parse_design(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_design(fh.read())
    except OSError as exc:
        raise DesignError(f"cannot read {path}: {exc.strerror}") from None


def _guard(args) -> ResourceGuard:
    return ResourceGuard(args.max_factors, args.max_cells)


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_analyze(args) -> int:
    f = _read(args.file)
    guard = _guard(args)
    guard.check(f.parent)
    strength = strength_by_independence(f)
    aliases = alias_table(f, args.max_order, guard)
    gwlp = _gwlp(f)
    head = f"design: k = {f.k}, levels = {' '.join(map(str, f.parent.level_counts))}, N = {f.N}"
    lines = [head, *_strength_text(strength), f"resolution R_max = {aliases.r_max}", *_gwlp_text(gwlp)]
    lines.append(f"aliased pairs: {len(aliases.aliased_pairs())}")
    payload = {
        "k": f.k,
        "levels": list(f.parent.level_counts),
        "N": f.N,
        "t_max": strength.t_max,
        "r_max": aliases.r_max,
        **report_json(gwlp),
        "alias_pairs": _alias_pairs_json(aliases),
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_strength(args) -> int:
    f = _read(args.file)
    a, b = strength_by_projection(f), strength_by_independence(f)
    if a.t_max != b.t_max:
        raise AssertionError("strength algorithms disagree")
    _emit(args, _strength_text(b), report_json(b))
    return EXIT_OK


def cmd_aliases(args) -> int:
    f = _read(args.file)
    guard = _guard(args)
    guard.check(f.parent)
    if args.pencils:
        classes, defining = pencil_alias_classes(f)
        lines = ["I = " + " = ".join(p.label for p in defining)] + [" = ".join(p.label for p in c) for c in classes]
        payload = {"defining": [p.label for p in defining], "classes": [[p.label for p in c] for c in classes]}
        _emit(args, lines, payload)
        return EXIT_OK
    report = alias_table(f, args.max_order, guard)
    _emit(args, _alias_text(report), report_json(report))
    return EXIT_OK


def cmd_gwlp(args) -> int:
    f = _read(args.file)
    g = _gwlp(f)
    _emit(args, _gwlp_text(g), report_json(g))
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _read(args.file)
    report = verify_identities(f, _guard(args), deep=args.deep)
    _emit(args, _verify_text(report), report_json(report))
    return EXIT_OK if report.identity_holds else EXIT_FAILED


def _parse_equations(args) -> list[tuple[tuple[int, ...], int]]:
    eqs = []
    if args.coeffs is not None:
        eqs.append((_int_list(args.coeffs), args.rhs if args.rhs is not None else 0))
    elif args.rhs is not None:
        raise DesignError("--rhs needs --coeffs")
    for text in args.eq or []:
        coeffs, sep, rhs = text.partition("=")
        if not sep:
            raise DesignError(f"equation {text!r} must look like 'c1,c2,...=b'")
        eqs.append((_int_list(coeffs), _int(rhs)))
    if not eqs:
        raise DesignError("give --coeffs/--rhs or at least one --eq")
    return eqs


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DesignError(f"expected an integer, got {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(_int(tok) for tok in text.split(","))


def cmd_gen(args) -> int:
    eqs = _parse_equations(args)
    if args.kind == "regular":
        f = regular_fraction(args.s, args.k, eqs)
        ring = f"GF({args.s})"
    else:
        f = modular_fraction(args.n, args.k, eqs)
        ring = f"Z/{args.n}"
    comments = [f"solutions over {ring} of " + "; ".join(f"{','.join(map(str, c))}={b}" for c, b in eqs)]
    _write_out(f, args.output, comments)
    return EXIT_OK


def _write_out(f: FractionalDesign, output: str | None, comments=()) -> None:
    if output in (None, "-"):
        sys.stdout.write(format_design(f, comments))
    else:
        write_design(f, output, comments)


def cmd_juxtapose(args) -> int:
    _write_out(juxtapose(_read(args.first), _read(args.second)), args.output)
    return EXIT_OK


def cmd_project(args) -> int:
    f = _read(args.file)
    factors = [i - 1 for i in _int_list(args.factors)]
    counts = project(f, factors)
    rows = sorted(counts.items())
    if args.json:
        print(json.dumps({"factors": sorted(set(i + 1 for i in factors)), "rows": [[list(c), m] for c, m in rows]}))
    else:
        for cell, m in rows:
            print(" ".join(map(str, cell)) + f"  x{m}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oaresolution",
        description="Strength, Box-Hunter resolution and generalized wordlength patterns of simple fractions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file=True):
        if file:
            p.add_argument("file", nargs="?", default="-", help="OA design file ('-' or omitted: stdin)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-factors", type=int, default=10, help="resource guard on k")
        p.add_argument("--max-cells", type=int, default=4096, help="resource guard on |T|")

    p = sub.add_parser("analyze", help="strength, resolution, GWLP and alias summary")
    common(p)
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("strength", help="maximum strength with failure witness")
    common(p)
    p.set_defaults(func=cmd_strength)

    p = sub.add_parser("aliases", help="pairwise alias table or pencil alias classes")
    common(p)
    p.add_argument("--pencils", action="store_true", help="alias classes of a regular fraction")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=cmd_aliases)

    p = sub.add_parser("gwlp", help="generalized wordlength pattern")
    common(p)
    p.set_defaults(func=cmd_gwlp)

    p = sub.add_parser("verify", help="check R_max = t_max + 1 = min GWLP index")
    common(p)
    p.add_argument("--deep", action="store_true", help="also verify the witness componentwise")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a fraction defined by linear equations")
    gen = p.add_subparsers(dest="kind", required=True)
    for kind, size in (("regular", "s"), ("modular", "n")):
        g = gen.add_parser(kind)
        g.add_argument(f"--{size}", type=int, required=True, help="field order" if size == "s" else "modulus")
        g.add_argument("--k", type=int, required=True, help="number of factors")
        g.add_argument("--coeffs", help="comma-separated coefficients of a single equation")
        g.add_argument("--rhs", type=int, help="right-hand side for --coeffs")
        g.add_argument("--eq", action="append", help="equation 'c1,...,ck=b'; repeatable")
        g.add_argument("-o", "--output")
        g.set_defaults(func=cmd_gen)

    p = sub.add_parser("juxtapose", help="disjoint union of two fractions")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_juxtapose)

    p = sub.add_parser("project", help="projection multiset onto some factors")
    common(p)
    p.add_argument("--factors", required=True, help="1-based factor numbers, e.g. 1,2,4")
    p.set_defaults(func=cmd_project)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
