"""Command-line front end: ``grassmann-aut <command> [options]``.

Exit status is 0 on success, 1 when a check reports a negative result
(an unstable subspace, a failing verification) and 2 on any error.  Errors
print a single line ``error: <Kind>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import classify, oracle
from .expr import ExpressionError, SubspaceFileError, format_multivector, load_subspace, parse_expression, write_subspace
from .fieldlin import Q, FieldError, check_generators, parse_field
from .grassmann import center_of, commutator_subalgebra, elements_of
from .morphism import FactorizationFailed, MorphismError, factor_n1_f0, make_map

FIELD_ENV = "GRASSMANN_AUT_FIELD"
SEED_ENV = "GRASSMANN_AUT_SEED"

GRAMMAR = """\
expression grammar (wedge binds tighter than + and -; ^ and * are both wedge):
  expr    := term (('+' | '-') term)*
  term    := factor (('^' | '*') factor)*
  factor  := literal | e<k> | e{i,j,...} | '(' expr ')' | '[' expr ',' expr ']' | '-' factor
  literal := integer ('/' integer)?
subspace file: header 'n=<int> field=Q|GF(<p>)' then one expression per line.
fields: --field Q (default) or --field GF:p with p an odd prime.
environment: GRASSMANN_AUT_FIELD and GRASSMANN_AUT_SEED set the defaults.
"""


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(GRAMMAR)
        sys.stderr.write(f"error: UsageError: {message}\n")
        raise SystemExit(2)


def _field_arg(text):
    try:
        return parse_field(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed_default():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="number of generators")
    common.add_argument("--field", type=_field_arg, default=None, help="Q or GF:p (p an odd prime)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    common.add_argument("--trials", type=int, default=None, help="random automorphisms to try")

    p = _Parser(prog="grassmann-aut", description="Automorphism-stable subspaces of Grassmann algebras.",
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    s.add_argument("expression")
    sub.add_parser("center", parents=[common], help="basis of the center").add_argument(
        "--method", choices=("formula", "bruteforce"), default="bruteforce")
    sub.add_parser("com", parents=[common], help="basis of the commutator subalgebra")
    sub.add_parser("list-stable", parents=[common], help="all Aut-stable subspaces")
    s = sub.add_parser("list-stable-subalgebras", parents=[common], help="all Aut-stable subalgebras")
    s.add_argument("--unital", action="store_true", help="require the unit")
    for name, text in (("check", "decide Aut-stability of a subspace file"),
                       ("hull", "smallest Aut-stable subspace containing a subspace file")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("-f", "--file", required=True)
    s = sub.add_parser("factor", parents=[common], help="split a map given by generator images")
    s.add_argument("images", nargs="+", help="image of e1, e2, ... as expressions")
    s = sub.add_parser("verify", parents=[common], help="run the cross-validation harness")
    s.add_argument("--mode", choices=("randomized", "exhaustive"), default="randomized")
    return p


def _field(args):
    if args.field is not None:
        return args.field
    raw = os.environ.get(FIELD_ENV)
    return parse_field(raw) if raw else Q


def _need_n(args) -> int:
    if args.n is None:
        raise CliError("this command needs -n")
    return check_generators(args.n)


def _basis_lines(B, indent="    "):
    elems = elements_of(B)
    if not elems:
        return [f"{indent}(zero subspace)"]
    return [indent + format_multivector(v) for v in elems]


def _cmd_eval(args, out):
    n = _need_n(args)
    out.append(format_multivector(parse_expression(args.expression, n, _field(args))))
    return 0


def _cmd_center(args, out):
    B = center_of(_need_n(args), args.method, _field(args))
    out.append(f"center dim={B.dim}")
    out += _basis_lines(B)
    return 0


def _cmd_com(args, out):
    B = commutator_subalgebra(_need_n(args), _field(args))
    out.append(f"commutator subalgebra dim={B.dim}")
    out += _basis_lines(B)
    return 0


def _cmd_list_stable(args, out):
    n, fld = _need_n(args), _field(args)
    found = classify.enumerate_stable_subspaces(n, fld)
    out.append(f"{len(found)} stable subspaces n={n} field={fld}")
    for k, (form, B) in enumerate(found, 1):
        out.append(f"[{k}] {form} dim={B.dim}")
        out += _basis_lines(B)
    return 0


def _cmd_list_subalgebras(args, out):
    n, fld = _need_n(args), _field(args)
    found = classify.enumerate_stable_subalgebras(n, args.unital, fld)
    kind = "unital" if args.unital else "non-unital"
    out.append(f"{len(found)} stable {kind} subalgebras n={n} field={fld}")
    for k, (form, B) in enumerate(found, 1):
        out.append(f"[{k}] {form} dim={B.dim}")
        out += _basis_lines(B)
    out += [d.line() for d in classify.subalgebra_discrepancies(n, args.unital, fld)]
    return 0


def _cmd_check(args, out):
    B = load_subspace(args.file)
    seed = args.seed if args.seed is not None else _seed_default()
    cert = classify.decide_stable(B, random_trials=args.trials, seed=seed)
    out.append(cert.describe())
    return 0 if cert.stable else 1


def _cmd_hull(args, out):
    B = load_subspace(args.file)
    H = classify.stable_hull(B)
    # stdout stays a valid subspace file; the summary goes to stderr
    print(f"hull: form {classify.matched_form(H)} dim={H.dim}", file=sys.stderr)
    out.append(write_subspace(H).rstrip("\n"))
    return 0


def _cmd_factor(args, out):
    fld = _field(args)
    n = check_generators(args.n if args.n is not None else len(args.images))
    m = make_map([parse_expression(t, n, fld) for t in args.images], n)
    fac = factor_n1_f0(m)
    out.append(f"a = {format_multivector(fac.a)}")
    for i, g in enumerate(fac.f.images, 1):
        out.append(f"f(e{i}) = {format_multivector(g)}")
    return 0


def _cmd_verify(args, out):
    n, fld = _need_n(args), _field(args)
    seed = args.seed if args.seed is not None else _seed_default()
    trials = args.trials if args.trials is not None else 100
    report = oracle.cross_validate(n, fld, args.mode, seed, trials)
    out += report.lines
    out.append("SUMMARY " + ("PASS" if report.passed else "FAIL"))
    return 0 if report.passed else 1


COMMANDS = {
    "eval": _cmd_eval,
    "center": _cmd_center,
    "com": _cmd_com,
    "list-stable": _cmd_list_stable,
    "list-stable-subalgebras": _cmd_list_subalgebras,
    "check": _cmd_check,
    "hull": _cmd_hull,
    "factor": _cmd_factor,
    "verify": _cmd_verify,
}

_EXPECTED = (CliError, ExpressionError, SubspaceFileError, FieldError, MorphismError, FactorizationFailed,
             classify.ClassificationAnomaly, oracle.BudgetExceeded, ValueError, OSError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: list = []
    try:
        status = COMMANDS[args.command](args, out)
    except _EXPECTED as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write("".join(line + "\n" for line in out))
    return status


if __name__ == "__main__":
    sys.exit(main())
