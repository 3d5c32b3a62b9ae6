"""Command-line front end.

Usage: ``lndrees COMMAND [SPEC] [options]``.  Exit codes: 0 success,
1 mathematical failure, 2 input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence, TextIO

from . import examples
from .errors import (
    DerivationError,
    LndReesError,
    ModificationError,
    NilpotencyError,
    NonTerminationError,
    ResourceBudgetError,
)
from .groebner import DEFAULT_PAIR_BUDGET
from .lnd import (
    DEFAULT_NILPOTENCY_BOUND,
    ValidationReport,
    check_derivation,
    exp_t,
    in_filtration,
    nil_degree,
    nilpotency_degrees,
)
from .modification import ModificationInput, modify, verify_rees_modification
from .parser import ParseError, parse_poly, parse_spec
from .rees import (
    DEFAULT_MAX_ITER,
    associated_graded,
    degree_module_gens,
    kernel_generators,
    proj_report,
    prune_generators,
    rees_algorithm,
    relation_lines,
)

OK, MATH_FAILURE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class CommandFailed(Exception):
    """A mathematical check answered no; the lines are still printed."""

    def __init__(self, lines: List[str]):
        super().__init__("\n".join(lines))
        self.lines = lines


def _load(args):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ParseError(f"cannot read {args.spec}: {err.strerror}") from err
    algebra, d, opts = parse_spec(text, validate=False)
    args.options = opts
    args.bound = _opt(args, "bound", DEFAULT_NILPOTENCY_BOUND)
    args.budget = _opt(args, "budget", DEFAULT_PAIR_BUDGET)
    d.algebra.ideal.budget = args.budget
    if not args.no_validate and args.command != "check":
        d.validate(args.bound)
    return algebra, d


def _opt(args, name: str, default):
    """Command-line value, else the spec file's option, else the default."""
    val = getattr(args, name.replace("-", "_"), None)
    if val is not None:
        return val
    return args.options.get(name, default)


def _element(args, algebra):
    return algebra.nf(parse_poly(args.element, algebra.ring))


def _rees(args, d):
    pres = rees_algorithm(d, _opt(args, "max-iter", DEFAULT_MAX_ITER), args.bound, args.budget)
    if getattr(args, "prune", False) or args.options.get("prune", False):
        pres = prune_generators(pres)
    return pres


# -- commands --------------------------------------------------------------


def cmd_check(args) -> List[str]:
    algebra, d = _load(args)
    report = check_derivation(algebra, d)
    if not report.well_defined:
        raise CommandFailed(report.lines())
    try:
        degrees = nilpotency_degrees(d, args.bound)
    except NilpotencyError as err:
        report = ValidationReport(True, False, bound=args.bound, message=str(err))
        raise CommandFailed(report.lines())
    return ValidationReport(True, True, degrees, bound=args.bound).lines()


def cmd_exp(args) -> List[str]:
    algebra, d = _load(args)
    return [str(exp_t(d, _element(args, algebra), bound=args.bound))]


def cmd_degree(args) -> List[str]:
    algebra, d = _load(args)
    a = _element(args, algebra)
    if not a:
        return ["-infinity"]
    return [str(nil_degree(d, a, args.bound))]


def cmd_member(args) -> List[str]:
    algebra, d = _load(args)
    return ["yes" if in_filtration(d, _element(args, algebra), args.level) else "no"]


def cmd_rees(args) -> List[str]:
    _, d = _load(args)
    pres = _rees(args, d)
    out = ["generators:"] + [f"  {line}" for line in pres.generator_lines()]
    out.append("relations:")
    out += [f"  {line}" for line in pres.relation_lines()] or ["  (none)"]
    return out


def cmd_gr(args) -> List[str]:
    _, d = _load(args)
    gr = associated_graded(_rees(args, d))
    out = ["generators: " + " ".join(f"{n}:{w}" for n, w in zip(gr.ring.names, gr.weights))]
    out.append("relations:")
    out += [f"  {line}" for line in gr.relation_lines()] or ["  (none)"]
    out.append("derivation:")
    for n in gr.ring.names:
        img = gr.derivation_images.get(n)
        if img:
            out.append(f"  {n} -> {img}")
    return out


def cmd_kernel(args) -> List[str]:
    _, d = _load(args)
    return [", ".join(str(p) for p in kernel_generators(_rees(args, d)))]


def cmd_fn(args) -> List[str]:
    _, d = _load(args)
    return [str(p) for p in degree_module_gens(_rees(args, d), args.level)]


def cmd_proj(args) -> List[str]:
    _, d = _load(args)
    return proj_report(_rees(args, d)).splitlines()


def cmd_modify(args) -> List[str]:
    algebra, d = _load(args)
    gens = [parse_poly(s.strip(), algebra.ring) for s in args.ideal.split(";") if s.strip()]
    if not gens:
        raise ParseError("--ideal needs at least one generator")
    inp = ModificationInput(d, gens, parse_poly(args.divisor, algebra.ring))
    try:
        res = modify(inp, args.bound, args.budget)
    except ModificationError as err:
        raise CommandFailed([str(err)] + (err.report.lines() if err.report else []))
    out = ["ring: " + ", ".join(res.algebra.names)]
    out += ["new variables: " + ", ".join(f"{t} = ({g})/({inp.divisor})"
                                          for t, g in zip(res.new_variables, gens))]
    out.append("relations:")
    out += [f"  {r}" for r in relation_lines(res.algebra.ideal)] or ["  (none)"]
    out.append("derivation:")
    out += [f"  {n} -> {v}" for n, v in res.derivation.images.items() if v]
    if args.verify_lemma:
        verdict = verify_rees_modification(inp, _opt(args, "max-iter", DEFAULT_MAX_ITER),
                                           args.bound, args.budget)
        out += verdict.lines()
        if not verdict.holds:
            raise CommandFailed(out)
    return out


def cmd_verify_examples(args) -> List[str]:
    out = []
    failed = False
    for name in examples.CHECKS:
        res = examples.run_check(name)
        failed |= not res.passed
        out.append(f"{'PASS' if res.passed else 'FAIL'} {name}")
        if args.verbose or not res.passed:
            for c in res.checks:
                out.append(f"  {'ok ' if c.passed else 'BAD'} {c.name}")
                if c.detail and not c.passed:
                    out.append(f"      {c.detail}")
    for name in examples.GOLDEN:
        ok, _ = golden_matches(name)
        failed |= not ok
        out.append(f"{'PASS' if ok else 'FAIL'} golden {name}.rees.out")
    if failed:
        raise CommandFailed(out)
    return out


def golden_output(name: str) -> str:
    """``rees`` output on a shipped fixture, as stored in its golden file."""
    lines = run_lines(["rees", str(examples.fixture_path(f"{name}.spec"))])
    return "\n".join(lines) + "\n"


def golden_matches(name: str):
    want = examples.fixture_text(f"{name}.rees.out")
    got = golden_output(name)
    return got == want, got


# -- dispatch --------------------------------------------------------------


COMMANDS = {
    "check": cmd_check,
    "exp": cmd_exp,
    "degree": cmd_degree,
    "member": cmd_member,
    "rees": cmd_rees,
    "gr": cmd_gr,
    "kernel": cmd_kernel,
    "fn": cmd_fn,
    "proj": cmd_proj,
    "modify": cmd_modify,
    "verify-examples": cmd_verify_examples,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lndrees",
                                description="Rees algebras of locally nilpotent derivations.")
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name, help_text):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("spec", help="spec file")
        s.add_argument("--bound", type=int, help="nilpotency bound")
        s.add_argument("--budget", type=int, help="S-pair budget for Groebner bases")
        s.add_argument("--no-validate", action="store_true",
                       help="skip the well-definedness and nilpotency checks")
        return s

    def rees_opts(s):
        s.add_argument("--max-iter", type=int)
        s.add_argument("--prune", action="store_true", help="drop redundant generators")

    spec_cmd("check", "validate the derivation and print nil-degrees")
    spec_cmd("exp", "print exp(t d)(E)").add_argument("--element", required=True)
    spec_cmd("degree", "nil-degree of E").add_argument("--element", required=True)
    s = spec_cmd("member", "whether E lies in F_n")
    s.add_argument("--element", required=True)
    s.add_argument("--level", type=int, required=True)
    rees_opts(spec_cmd("rees", "generators and relations of the Rees algebra"))
    rees_opts(spec_cmd("gr", "associated graded algebra"))
    rees_opts(spec_cmd("kernel", "generators of the kernel"))
    s = spec_cmd("fn", "generators of F_n over the kernel")
    s.add_argument("--level", type=int, required=True)
    rees_opts(s)
    rees_opts(spec_cmd("proj", "weighted projective completion"))
    s = spec_cmd("modify", "equivariant affine modification A[I/f]")
    s.add_argument("--ideal", required=True, help='generators separated by ";"')
    s.add_argument("--divisor", required=True)
    s.add_argument("--verify-lemma", action="store_true")
    s.add_argument("--max-iter", type=int)
    s = sub.add_parser("verify-examples", help="run the shipped fixture suite")
    s.add_argument("-v", "--verbose", action="store_true")
    return p


def run_lines(argv: Sequence[str]) -> List[str]:
    """Run a command and return its output lines; errors propagate."""
    args = build_parser().parse_args(list(argv))
    args.options = {}
    return COMMANDS[args.command](args)


def run_command(argv: Sequence[str], out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        lines = run_lines(argv)
    except SystemExit as exc:  # argparse
        return INPUT_ERROR if exc.code else OK
    except CommandFailed as exc:
        out.write("\n".join(exc.lines) + "\n")
        return MATH_FAILURE
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR
    except NonTerminationError as exc:
        err.write(f"error: {exc}\n")
        if exc.trace is not None:
            out.write("\n".join(exc.trace.lines()) + "\n")
        return MATH_FAILURE
    except ResourceBudgetError as exc:
        err.write(f"error: {exc}\n")
        return BUDGET
    except (DerivationError, NilpotencyError, LndReesError) as exc:
        err.write(f"error: {exc}\n")
        return MATH_FAILURE
    out.write("\n".join(lines) + "\n")
    return OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
