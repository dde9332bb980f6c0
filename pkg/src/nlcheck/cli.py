"""Command-line entry point.

Every subcommand builds a report ``{command, config, results, checks, timing}``.
Only ``timing`` depends on the clock, so two runs with the same arguments agree
byte for byte everywhere else.  Exit status: 0 when every check passes, 2 for
precondition failures (bad input, non-transversal surface, ...), 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, cycles
from .binary import UnsupportedField
from .families import (
    PQFamilySpec,
    PreconditionError,
    SpecError,
    build_pq,
    build_tij,
    canonical_form,
    classify_with_witness,
    family_codim,
    format_spec_block,
    parse_spec_block,
    sigma_space_check,
    threshold_check,
    tij_codim_detail,
)
from .fields import FieldMismatch, NotRepresentable, parse_field
from .graded import ci_series_coeff, is_complete_intersection
from .jacobian import (
    Degenerate,
    JacobianRing,
    NotTransversal,
    annihilator_piece,
    mult_kernel,
    omega_F,
    otwinowska_check,
    pairing_perfect,
    th31_check,
    xi_F,
)
from .linalg import quotient_dim, span, subspace_equal
from .parse import ParseError, format_poly, format_scalar, format_univariate, parse_poly
from .poly import HPoly
from .residues import (
    DegenerateConfiguration,
    NumericFailure,
    delta_value_polynomial,
    match_multisets,
    numeric_delta,
    residue_report,
    root_of_unity_family_condition,
    value_polynomial_roots,
)
from .suite import RESIDUE_TOLERANCE, SuiteConfig, fermat, run_suite

PRECONDITION_ERRORS = (
    ParseError,
    NotTransversal,
    Degenerate,
    SpecError,
    PreconditionError,
    cycles.CycleError,
    cycles.Undecided,
    DegenerateConfiguration,
    FieldMismatch,
    NotRepresentable,
    UnsupportedField,
    NumericFailure,
    ValueError,
)

PAIRS = ((1, 2), (2, 3), (3, 1))


class Report:
    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.results: dict = {}
        self.checks: list = []
        self.timing: dict = {}

    def check(self, name: str, expected, actual) -> bool:
        ok = expected == actual
        self.checks.append({"name": name, "expected": expected, "actual": actual, "pass": ok})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "checks": self.checks,
            "timing": self.timing,
        }
        return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"nlcheck {self.command}"]
        for k in sorted(self.config):
            lines.append(f"  {k}: {self.config[k]}")
        lines.append("results:")
        for k in sorted(self.results):
            v = self.results[k]
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True, default=str)
            lines.append(f"  {k}: {v}")
        if self.checks:
            lines.append("checks:")
            for c in self.checks:
                mark = "PASS" if c["pass"] else "FAIL"
                lines.append(f"  {mark} {c['name']}: expected {c['expected']}, got {c['actual']}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input helpers


def _text(value: str | None) -> str | None:
    if value is not None and value.startswith("@"):
        return Path(value[1:]).read_text()
    return value


def _surface(args) -> HPoly:
    text = _text(args.f)
    if text is None:
        return fermat(args.field_obj, args.d)
    return parse_poly(text.strip(), args.field_obj)


def _pairs(text: str | None):
    if text is None:
        return PAIRS
    digits = [int(ch) for ch in text if ch.isdigit()]
    if len(digits) != 2 or sorted(digits) not in ([1, 2], [2, 3], [1, 3]) or digits[0] == digits[1]:
        raise ValueError(f"pair must name two of 1, 2, 3: {text!r}")
    return (tuple(digits),)


def _spec(args):
    text = _text(args.spec)
    if text is None:
        raise SpecError("--spec is required")
    return parse_spec_block(text, args.field_obj)


# ---------------------------------------------------------------------------
# commands


def cmd_hilbert(args, rep: Report):
    F = _surface(args)
    d = F.degree
    top = 4 * d - 4
    lo, hi = 0, top
    if args.range:
        a, _, b = args.range.partition("..")
        lo, hi = int(a), int(b or a)
    if hi > top:
        rep.results["note"] = f"range capped at 4d-4 = {top}; the quotient vanishes beyond"
        hi = top
    rep.results["F"] = format_poly(F)
    R = JacobianRing.build(F)
    table = [R.hilbert(l) for l in range(lo, hi + 1)]
    rep.results["degrees"] = [lo, hi]
    rep.results["hilbert"] = table
    ci = is_complete_intersection(R.ideal, (d - 1, d, d, d))
    rep.results["ci"] = ci
    rep.check("complete intersection of degrees (d-1,d,d,d)", True, ci)
    series = [ci_series_coeff((d - 1, d, d, d), l) for l in range(lo, hi + 1)]
    rep.check("hilbert table matches the series", series, table)


def cmd_duality(args, rep: Report):
    F = _surface(args)
    R = JacobianRing.build(F)
    N = R.socle_degree
    rep.results["F"] = format_poly(F)
    rep.results["socle_degree"] = N
    rep.results["socle_monomial"] = list(R.standard_monomials(N)[0])
    perfect = [pairing_perfect(R, l) for l in range(N + 1)]
    rep.results["perfect"] = perfect
    rep.results["hilbert"] = [R.hilbert(l) for l in range(N + 1)]
    rep.check(f"pairing perfect for l=0..{N}", True, all(perfect))


def cmd_annihilator(args, rep: Report):
    F = _surface(args)
    R = JacobianRing.build(F)
    d = R.d
    lam = parse_poly(_text(args.g).strip(), args.field_obj, d - 1) if args.g else omega_F(R)
    rep.results["F"] = format_poly(F)
    rep.results["lambda"] = format_poly(lam)
    codims = [quotient_dim(annihilator_piece(R, lam, l)) for l in range(1, 3 * d - 3)]
    rep.results["codim"] = codims
    t = th31_check(R, lam)
    rep.results["th31"] = {"dim": t.dim, "floor": t.floor, "equality": t.equality, "ci_certified": t.ci_certified}
    rep.check(f"codim in degree d >= {t.floor}", True, t.dim >= t.floor)
    ok = all(otwinowska_check(R, lam, l).holds for l in range(1, 3 * d - 3))
    rep.check("codim >= monomial count (1,d-1,d,d) for all l", True, ok)


def cmd_classify(args, rep: Report):
    F = _surface(args)
    if not args.w:
        raise ValueError("--w is required")
    w = parse_poly(_text(args.w).strip(), args.field_obj, 1)
    rep.results["F"] = format_poly(F)
    rep.results["w"] = format_poly(w)
    spec = classify_with_witness(F, w)
    rep.results["member"] = spec is not None
    if spec is not None:
        rep.results["spec"] = format_spec_block(canonical_form(spec))


def cmd_family(args, rep: Report):
    spec = _spec(args)
    rep.results["spec"] = format_spec_block(spec)
    if isinstance(spec, PQFamilySpec):
        member = build_pq(spec)
        R = member.ring
        rep.results["F"] = format_poly(member.F)
        rep.results["codim"] = family_codim(member)
        rep.results["root_of_unity_condition"] = root_of_unity_family_condition(spec)
        K = mult_kernel(R, spec.w)
        rep.results["mult_kernel_dim"] = K.dim
        rep.check("mult kernel = span{omega, xi}", True, sigma_space_check(member))
        rep.check("direct annihilator route agrees", True, sigma_space_check(member, direct=True))
        xi = xi_F(spec)
        t = th31_check(R, xi)
        rep.results["th31_xi"] = {"dim": t.dim, "floor": t.floor, "equality": t.equality, "ci_certified": t.ci_certified}
        back = classify_with_witness(member.F, spec.w)
        got = None if back is None else format_spec_block(canonical_form(back))
        rep.check("classification round-trip", format_spec_block(canonical_form(spec)), got)
    else:
        member = build_tij(spec)
        rep.results["F"] = format_poly(member.F)
        detail = tij_codim_detail(member)
        rep.results["codim"] = detail.full
        rep.results["codim_fixed_w"] = detail.fixed_w
        d = spec.d
        rep.check("codim with w fixed = 2d-1", 2 * d - 1, detail.fixed_w)


def _selector(args, R: JacobianRing):
    g = (args.g or "omega").strip()
    if g == "omega":
        return "omega", omega_F(R)
    if g == "xi":
        spec = _spec(args)
        if not isinstance(spec, PQFamilySpec):
            raise SpecError("xi needs a (p, q) family spec")
        return "xi", xi_F(spec)
    return "G", parse_poly(_text(g).strip(), args.field_obj, R.d - 1)


def cmd_residues(args, rep: Report):
    if args.f is None and args.spec:
        spec = _spec(args)
        F = (build_pq(spec, check=False) if isinstance(spec, PQFamilySpec) else build_tij(spec, check=False)).F
    else:
        F = _surface(args)
    R = JacobianRing.build(F)
    name, G = _selector(args, R)
    rep.results["F"] = format_poly(F)
    rep.results["G"] = {"selector": name, "poly": format_poly(G)}
    tol = RESIDUE_TOLERANCE if args.precision >= 128 else 2.0 ** (-args.precision // 2)
    table = {}
    for i, j in _pairs(args.pair):
        r = residue_report(R, G, i, j)
        entry = {"line_form": str(r.line_form), "kind": r.kind}
        if r.kind == "constant":
            entry["constant"] = format_scalar(r.constant)
            V = None
        else:
            V = list(r.polynomial)
            entry["value_polynomial"] = format_univariate(V)
        if V is None:
            V = delta_value_polynomial(R, G, i, j)
        exact = value_polynomial_roots(V, args.precision)
        approx = numeric_delta(R, G, i, j, args.precision).values
        entry["numeric"] = {"precision": args.precision, "tolerance": tol}
        table[f"{i}{j}"] = entry
        rep.check(f"({i},{j}) exact values match the numeric oracle", True, match_multisets(exact, approx, tol))
    rep.results["pairs"] = table


def _symbols(args, F: HPoly, spec):
    field = args.field_obj
    items = args.symbol or ["delta", "c12"]
    out = []
    for item in items:
        name, _, form = item.partition("=")
        name = name.strip()
        if name == "delta":
            out.append(cycles.delta_symbol(field))
            continue
        if name in ("c12", "c23", "c31"):
            if form:
                lin = parse_poly(_text(form).strip(), field, 1)
            elif spec is not None and hasattr(spec, "pair"):
                lin = spec.w
            else:
                raise ValueError(f"{name} needs a linear form: {name}=<form>")
            out.append(getattr(cycles, f"{name}_symbol")(lin))
            continue
        if name == "triple":
            parts = [p for p in form.split(";")]
            out.append(cycles.parse_symbol(parts, field, "triple"))
            continue
        raise ValueError(f"unknown symbol {item!r}")
    return out


def cmd_cycles(args, rep: Report):
    spec = None
    if args.spec:
        spec = _spec(args)
        member = build_pq(spec) if isinstance(spec, PQFamilySpec) else build_tij(spec)
        F = member.F
    else:
        F = _surface(args)
        JacobianRing.build(F)
    syms = _symbols(args, F, spec)
    rep.results["F"] = format_poly(F)
    rep.results["symbols"] = [{"name": s.name, "components": s.texts()} for s in syms]
    boundary = {}
    for k, s in enumerate(syms):
        ok = cycles.boundary_vanishes(s, F)
        boundary[f"{k}:{s.name}"] = ok
        rep.check(f"boundary of {s.name} vanishes", True, ok)
    rep.results["boundary"] = boundary
    rep.results["independent"] = cycles.independence_test(syms, F)


def cmd_thresholds(args, rep: Report):
    ds = range(4, 13) if args.range is None else _int_range(args.range)
    rows = {}
    for d in ds:
        t = threshold_check(d)
        rows[str(d)] = {"floor": t.floor, "t1": t.t1, "t2": t.t2, "t3": t.t3}
    rep.results["thresholds"] = rows


def _int_range(text: str):
    a, _, b = text.partition("..")
    return range(int(a), int(b or a) + 1)


def cmd_paper_check(args, rep: Report):
    config = SuiteConfig(seed=args.seed, d=args.d, field=args.field_obj, precision=args.precision)
    results = run_suite(config)
    rep.results["generator"] = f"random.Random('{args.seed}/<stream>')"
    rep.results["criteria"] = {}
    for r in results:
        rep.results["criteria"][str(r.number)] = {"title": r.title, "notes": r.notes,
                                                   "checks": [c.as_dict() for c in r.checks]}
        rep.check(f"criterion {r.number} {r.title}", True, r.checks_passed)
        rep.timing[f"criterion_{r.number}"] = {"seconds": round(r.seconds, 3), "limit": r.limit,
                                               "within_limit": r.within_limit}
    late = [r.number for r in results if not r.within_limit]
    if late:
        rep.timing["over_limit"] = late


COMMANDS = {
    "hilbert": cmd_hilbert,
    "duality": cmd_duality,
    "annihilator": cmd_annihilator,
    "classify": cmd_classify,
    "family": cmd_family,
    "residues": cmd_residues,
    "cycles": cmd_cycles,
    "thresholds": cmd_thresholds,
    "paper-check": cmd_paper_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q, zeta:n or fp:p (default q)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--d", type=int, default=4, help="degree used when --f is omitted")
    common.add_argument("--precision", type=int, default=128, help="bits for the numeric oracle")
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--f", help="surface F (text or @file); default Fermat of degree --d")
    common.add_argument("--w", help="linear form w (text or @file)")
    common.add_argument("--g", help="polynomial G or lambda; for residues also omega or xi")
    common.add_argument("--spec", help="family spec block (text or @file)")
    common.add_argument("--pair", help="pair such as 12, 23 or 31")
    common.add_argument("--range", help="degree range a..b")
    common.add_argument("--symbol", action="append",
                        help="delta, c12[=w], c23[=v], c31[=u] or triple=num/den;num/den;1 (repeatable)")
    parser = argparse.ArgumentParser(prog="nlcheck", description="Exact checks on Jacobian rings of surfaces.")
    parser.add_argument("--version", action="version", version=f"nlcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _config(args) -> dict:
    keys = ("field", "seed", "d", "precision", "f", "w", "g", "spec", "pair", "range", "symbol")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(args.command, _config(args))
    start = time.perf_counter()
    code = 0
    try:
        args.field_obj = parse_field(args.field)
        if args.d < 4 and args.command not in ("thresholds",):
            raise ValueError("d must be at least 4")
        COMMANDS[args.command](args, rep)
        code = 0 if rep.passed else 1
    except NotTransversal as exc:
        rep.results["error"] = {"type": "NotTransversal", "message": str(exc), "degree": exc.degree, "value": exc.value}
        code = 2
    except PRECONDITION_ERRORS as exc:
        rep.results["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except Exception as exc:  # internal error: still emit a report
        rep.results["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    rep.timing["total_seconds"] = round(time.perf_counter() - start, 3)
    text = rep.to_json()
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text if args.json else rep.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
