"""Command-line interface.  Elements are given as two integers A B meaning A + B*theta,
where theta is sqrt(3) in q3 and (1 + sqrt(17))/2 in q17."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable, Iterator

from . import closedform as cf
from . import modforms as mf
from . import tables
from .characters import classify17, coarse17
from .idealarith import InvalidInput, is_squarefree, reduce_by_unit_squares, squarefree_decompose
from .quadfield import K3, K17, QuadInt, make_context
from .repcount import r2_brute, r3_brute, tp_elements

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        print(f"error: usage {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _elem(args) -> QuadInt:
    return QuadInt(args.a, args.b, args.field)


def _add_field(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", choices=[K3, K17], required=True)


def _add_elem(p: argparse.ArgumentParser) -> None:
    _add_field(p)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumsquares", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_elem(sub.add_parser("classify", help="2-adic case label of alpha"))
    for name in ("r2", "r3"):
        p = sub.add_parser(name, help=f"representation count {name}")
        _add_elem(p)
        p.add_argument("--method", choices=["brute", "closed", "criterion"], default="brute")
    _add_elem(sub.add_parser("h", help="class number of K(sqrt(-alpha))"))

    p = sub.add_parser("table", help="class-number table")
    _add_field(p)
    p.add_argument("--rows", type=int, default=220)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--check-golden", action="store_true")

    p = sub.add_parser("expand", help="Fourier coefficient dump")
    _add_field(p)
    p.add_argument("--series", required=True,
                   help="theta3, phi, xi or eis:<name>; 'eis:list' shows the names")
    p.add_argument("--trace-bound", type=int, default=12)

    p = sub.add_parser("verify", help="verification suites")
    _add_field(p)
    p.add_argument("--suite", choices=["r2", "criterion", "cfc", "theta2", "lift", "elem17", "all"],
                   default="all")
    p.add_argument("--trace-bound", type=int, default=30)
    p.add_argument("--alpha-trace", type=int, default=16,
                   help="alpha range for the cfc and lift suites")
    p.add_argument("--nu-trace", type=int, default=8, help="nu range for the cfc suite")
    return parser


# ---------------------------------------------------------------------------
# simple commands

def cmd_classify(args) -> int:
    alpha = _elem(args)
    if alpha.field == K3:
        print(f"case={cf.case_label(alpha)}")
    else:
        here, there = classify17(alpha)
        print(f"local={here},{there} coarse={coarse17(alpha)}")
    return EXIT_OK


def _closed_r3(nu: QuadInt) -> int:
    alpha, mu = squarefree_decompose(nu)
    if not mu.is_totally_positive():
        eps = make_context(nu.field).fundamental_unit
        # r3 is unchanged when nu is multiplied by the square of a unit
        mu = mu * eps
        if not mu.is_totally_positive():
            raise InvalidInput(f"{nu} is alpha*mu^2 with no totally positive mu")
    return cf.r3_closed(alpha, mu)


def cmd_count(args) -> int:
    nu = _elem(args)
    if not nu.is_totally_positive() and not nu.is_zero():
        raise InvalidInput(f"{nu} is not totally positive")
    if args.command == "r2":
        if args.method == "brute":
            print(r2_brute(nu))
        elif args.method == "closed":
            print(cf.r2_closed(nu))
        else:
            ok, count = cf.r2_criterion(nu)
            print(f"representable={str(ok).lower()} count={count}")
        return EXIT_OK
    if args.method == "brute":
        print(r3_brute(nu))
    elif args.method == "closed":
        print(_closed_r3(nu))
    else:
        print(f"representable={str(cf.representable3(nu)).lower()}")
    return EXIT_OK


def cmd_h(args) -> int:
    res = cf.class_number(_elem(args))
    print(f"case={res.case_label} h={res.h} r3={res.r3_used}")
    return EXIT_OK


def cmd_table(args) -> int:
    rows = tables.generate_table(args.field, args.rows)
    if args.check_golden:
        diff = tables.diff_against_golden(args.field, rows)
        for line in diff.details():
            print(line)
        print(diff.summary())
        return EXIT_OK if diff.ok else EXIT_MISMATCH
    text = tables.to_csv(args.field, rows) if args.format == "csv" else tables.to_json(args.field, rows)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def build_series(field: str, name: str, trace_bound: int) -> mf.FourierSeries:
    if name == "theta3":
        th = mf.theta(field, trace_bound)
        return mf.series_mul(mf.series_mul(th, th), th)
    if name == "phi":
        return mf.build_pefe3(trace_bound) if field == K3 else mf.build_phi17(trace_bound)
    if name == "xi":
        return mf.build_xi(field, trace_bound)
    if name.startswith("eis:"):
        return mf.eisenstein_named(field, name[4:], trace_bound)
    raise InvalidInput(f"unknown series {name!r}")


def cmd_expand(args) -> int:
    if args.series == "eis:list":
        print("\n".join(mf.eisenstein_names(args.field)))
        return EXIT_OK
    print(mf.dump(build_series(args.field, args.series, args.trace_bound)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites

@dataclass
class Check:
    suite: str
    where: str
    status: str  # "ok", "FAIL" or "skip"
    detail: str = ""

    def line(self) -> str:
        tail = f" {self.detail}" if self.detail else ""
        return f"{self.suite} ν={self.where} {self.status}{tail}"


def suite_r2(field: str, args) -> Iterator[Check]:
    for nu in tp_elements(field, args.trace_bound):
        brute = r2_brute(nu)
        closed = cf.r2_closed(nu)
        ok, count = cf.r2_criterion(nu)
        good = brute == closed == count and ok == (brute > 0)
        yield Check("r2", str(nu), "ok" if good else "FAIL",
                    "" if good else f"brute={brute} closed={closed} criterion={count}")


def suite_criterion(field: str, args) -> Iterator[Check]:
    for nu in tp_elements(field, args.trace_bound):
        brute = r3_brute(nu)
        good = cf.representable3(nu) == (brute > 0)
        yield Check("criterion", str(nu), "ok" if good else "FAIL", "" if good else f"r3={brute}")


def grid_alphas(field: str, trace_bound: int) -> list[QuadInt]:
    out = []
    for a in tp_elements(field, trace_bound):
        if not is_squarefree(a):
            continue
        if field == K17 and coarse17(a) == "Excluded":
            continue
        out.append(a)
    return out


def suite_cfc(field: str, args) -> Iterator[Check]:
    for alpha in grid_alphas(field, args.alpha_trace):
        for nu in tp_elements(field, args.nu_trace):
            where = f"{nu} α={alpha}"
            lhs, rhs = cf.verify_cfc(alpha, nu)
            yield Check("cfc", where, "ok" if lhs == rhs else "FAIL",
                        "" if lhs == rhs else f"lhs={lhs} rhs={rhs}")
            if not cf.closed_form_applies(nu):
                yield Check("closed", where, "skip", "prime without totally positive generator")
                continue
            if cf.is_documented_edge(alpha, nu):
                yield Check("closed", where, "skip", "documented edge")
                continue
            closed = cf.r3_closed(alpha, nu)
            brute = r3_brute(alpha * nu * nu)
            yield Check("closed", where, "ok" if closed == brute else "FAIL",
                        "" if closed == brute else f"closed={closed} brute={brute}")


def suite_theta2(field: str, args) -> Iterator[Check]:
    report = mf.verify_theta_sq(field, args.trace_bound)
    bad = {m.nu: m for m in report.mismatches}
    for nu in report.checked:
        m = bad.get(nu)
        yield Check("theta2", str(nu), "FAIL" if m else "ok", str(m) if m else "")
    if None in bad:
        yield Check("theta2", "0", "FAIL", str(bad[None]))


def lift_representatives(field: str, trace_bound: int = 30) -> dict[str, QuadInt]:
    """First alpha of each case label that is not in a special unit class."""
    reps: dict[str, QuadInt] = {}
    for a in grid_alphas(field, trace_bound):
        label = cf.case_label(a)
        if label not in reps and cf.special_kind(a) is None:
            reps[label] = a
    return reps


def suite_lift(field: str, args) -> Iterator[Check]:
    bound = min(args.trace_bound, 16)
    alphas = list(lift_representatives(field).values())
    # the special unit classes are checked as well
    alphas += [a for a in grid_alphas(field, args.alpha_trace) if cf.special_kind(a) is not None
               and a == reduce_by_unit_squares(a)[0]]
    for alpha in alphas:
        report = mf.verify_lift(alpha, bound)
        detail = "" if report.ok else f"{len(report.mismatches)} mismatches; {report.note}"
        yield Check("lift", f"≤{bound} α={alpha}", "ok" if report.ok else "FAIL", detail)


def suite_elem17(field: str, args) -> Iterator[Check]:
    if field != K17:
        yield Check("elem17", "-", "skip", "only defined for q17")
        return
    ctx = make_context(K17)
    for nu in tp_elements(field, args.trace_bound):
        base = r3_brute(nu)
        a = r3_brute(ctx.pi2 ** 2 * nu)
        b = r3_brute(ctx.pi2p ** 2 * nu)
        good = a == base == b
        if _is_seven_mod_cube(nu):
            good = good and base == 0
        yield Check("elem17", str(nu), "ok" if good else "FAIL",
                    "" if good else f"r3={base} pi2={a} pi2p={b}")


def _is_seven_mod_cube(nu: QuadInt) -> bool:
    ctx = make_context(K17)
    return any(cf._residue_is_seven(nu, p) for p in (ctx.pi2, ctx.pi2p))


SUITES: dict[str, Callable[[str, argparse.Namespace], Iterator[Check]]] = {
    "r2": suite_r2,
    "criterion": suite_criterion,
    "cfc": suite_cfc,
    "theta2": suite_theta2,
    "lift": suite_lift,
    "elem17": suite_elem17,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    total = failed = 0
    for name in names:
        for check in SUITES[name](args.field, args):
            print(check.line())
            if check.status == "skip":
                continue
            total += 1
            failed += check.status == "FAIL"
    print(f"{'PASS' if failed == 0 else 'FAIL'} total={total} failed={failed}")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


COMMANDS = {
    "classify": cmd_classify,
    "r2": cmd_count,
    "r3": cmd_count,
    "h": cmd_h,
    "table": cmd_table,
    "expand": cmd_expand,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidInput as exc:
        print(f"error: {type(exc).__name__} {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
