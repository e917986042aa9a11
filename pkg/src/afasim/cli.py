"""
afasim command line

    python -m afasim eval --automaton halving_pfa --word aa
    python -m afasim rns --automaton three_state_pfa --word abba --trace-space
    python -m afasim density --lang poly:0,0,0,1 --horizon 1000000

--automaton takes a file path or the name of a bundled sample.
"""
import argparse
import logging
import sys

from afasim import automata, logspace, nonaffinity
import afasim.automaton_text
from afasim.exceptions import SpaceBoundExceeded, StructuralError
import afasim.log
from afasim.model import AfA, CutpointKind, MembershipMode, Word
from afasim.selftest import SUITES, SelfTestRecipe
from afasim.util import describe_rational, parse_rational

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_STRUCTURAL = 2
EXIT_SPACE_BOUND = 3


def _bool(value):
    return "true" if value else "false"


def _machine(args):
    try:
        return afasim.automaton_text.resolve(args.automaton)
    except OSError as ose:
        raise StructuralError(
            "cannot read automaton {!r}: {}".format(args.automaton, ose.strerror)
        ) from ose


def _word(args):
    return Word.from_string(args.word, sep=args.sep)


def cmd_eval(args, out):
    machine = _machine(args)
    print(describe_rational(automata.value(machine, _word(args))), file=out)


def cmd_member(args, out):
    machine = _machine(args)
    mode = MembershipMode(args.mode, args.cutpoint)
    print(_bool(automata.member(machine, _word(args), mode)), file=out)


def cmd_rns(args, out):
    machine = _machine(args)
    word = _word(args)
    decision = logspace.run_rns(machine, word, kind=args.mode)
    trace = logspace.space_trace(decision)
    print(_bool(decision.result), file=out)
    print("primes {} {}".format(decision.basis.r, decision.basis), file=out)
    if args.trace_space:
        print("space {}".format(trace.describe()), file=out)


def cmd_embed(args, out):
    machine = _machine(args)
    if not isinstance(machine, AfA):
        raise StructuralError("embed needs an afa, got a {}".format(machine.kind))
    emb = logspace.turakainen_embed(machine)
    dump = afasim.automaton_text
    lines = [
        "states {}".format(emb.size),
        "m {}".format(emb.m),
        "g {}".format(emb.g),
        "xscale {}".format(emb.xscale),
        "initial {}".format(dump.vector_line(emb.xprime)),
        "final {}".format(" ".join(str(f) for f in emb.Fprime)),
    ]
    for sym in emb.alphabet:
        lines.extend(dump.dump_matrix("B_{}".format(sym), emb.B[sym]))
    for sym in emb.alphabet:
        lines.extend(dump.dump_matrix("D_{}".format(sym), emb.Dint[sym]))
    print("\n".join(lines), file=out)


def cmd_density(args, out):
    language = nonaffinity.parse_lang_spec(args.lang)
    report = nonaffinity.lower_density(language, args.horizon)
    nonaffinity.write_density_csv(report, out)


def cmd_equidist(args, out):
    box = nonaffinity.IntervalBox.parse(args.interval)
    if args.lang is None:
        spec = nonaffinity.SequenceSpec(
            r=args.r,
            step=args.step,
            alpha=args.alpha,
            precision=args.precision,
            count=args.count,
        )
        values = nonaffinity.weyl_sequence(spec)
        terms = list(zip(range(1, args.count + 1), values))
    else:
        terms = nonaffinity.progression_sequence(
            nonaffinity.parse_lang_spec(args.lang),
            r=args.r,
            step=args.step,
            alpha=args.alpha,
            precision=args.precision,
            count=args.count,
        )
        values = [v for _, v in terms]
    nonaffinity.write_weyl_csv(terms, out, places=min(args.precision, 30))
    ratio = nonaffinity.box_ratio(values, box)
    print("# ratio {} volume {}".format(describe_rational(ratio), box.volume), file=out)


def cmd_gseq(args, out):
    machine = _machine(args)
    if not isinstance(machine, AfA):
        raise StructuralError("gseq needs an afa, got a {}".format(machine.kind))
    values = nonaffinity.g_sequence(machine, args.nmax)
    nonaffinity.write_gseq_csv(values, out)


def cmd_selftest(args, out):
    kwargs = dict(seed=args.seed)
    if args.acceptance:
        recipe = SelfTestRecipe.acceptance(**kwargs)
    else:
        recipe = SelfTestRecipe(**kwargs)
    results = recipe.run(args.suite or SUITES)
    for result in results:
        print("{} {}".format("PASS" if result.passed else "FAIL", result), file=out)
    if all(r.passed for r in results):
        return EXIT_OK
    return EXIT_SELFTEST_FAILED


def _add_automaton_args(parser, word=True):
    parser.add_argument(
        "--automaton",
        required=True,
        metavar="FILE",
        help="Automaton text file, or a bundled sample: {}".format(
            ", ".join(afasim.automaton_text.bundled_names())
        ),
    )
    if word:
        parser.add_argument(
            "--word", required=True, help="Input word; use '' for the empty word"
        )
        parser.add_argument(
            "--sep",
            default=None,
            help="Separator between multi-character symbols in --word",
        )


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer, not {}".format(text))
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="afasim",
        description="afasim: affine and probabilistic automata over exact rationals",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log INFO (-v) or DEBUG (-vv) messages to stderr",
    )
    parser.add_argument(
        "--log-dir",
        default=None,
        metavar="DIR",
        help="Also write a DEBUG level run log into this directory",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    p = commands.add_parser("eval", help="Exact acceptance value")
    _add_automaton_args(p)
    p.set_defaults(func=cmd_eval)

    p = commands.add_parser("member", help="Exact cutpoint membership")
    _add_automaton_args(p)
    p.add_argument("--cutpoint", type=parse_rational, default="1/2", metavar="Q")
    p.add_argument(
        "--mode", choices=[k.value for k in CutpointKind], default=CutpointKind.STRICT.value
    )
    p.set_defaults(func=cmd_member)

    p = commands.add_parser("rns", help="Cutpoint 1/2 membership from residues only")
    _add_automaton_args(p)
    p.add_argument(
        "--mode", choices=[k.value for k in CutpointKind], default=CutpointKind.STRICT.value
    )
    p.add_argument(
        "--trace-space",
        action="store_true",
        help="Print the widest register seen against its bound",
    )
    p.set_defaults(func=cmd_rns)

    p = commands.add_parser("embed", help="Nonnegative integer embedding of an AfA")
    _add_automaton_args(p, word=False)
    p.set_defaults(func=cmd_embed)

    p = commands.add_parser("density", help="Lower density trajectory as CSV")
    p.add_argument(
        "--lang",
        required=True,
        metavar="SPEC",
        help="poly:c0,c1,... (constant term first), primes, all, empty or mod:M,R",
    )
    p.add_argument("--horizon", required=True, type=_nonnegative_int, metavar="N")
    p.set_defaults(func=cmd_density)

    p = commands.add_parser("equidist", help="((r + mN) alpha) mod 1 as CSV")
    p.add_argument(
        "--alpha", required=True, metavar="STR", help="num/den, decimal digits or sqrt:K"
    )
    p.add_argument(
        "--precision", required=True, type=int, metavar="P", help="Digits of alpha"
    )
    p.add_argument("--r", type=_nonnegative_int, default=0)
    p.add_argument("--step", type=int, default=1, metavar="N")
    p.add_argument("--count", required=True, type=int, metavar="C")
    p.add_argument("--interval", default="0,1/2", metavar="A,B")
    p.add_argument(
        "--lang",
        default=None,
        metavar="SPEC",
        help="Only use the m with a^(r+mN) in this language",
    )
    p.set_defaults(func=cmd_equidist)

    p = commands.add_parser("gseq", help="Acceptance gap g(n) of a unary AfA as CSV")
    _add_automaton_args(p, word=False)
    p.add_argument("--nmax", required=True, type=_nonnegative_int, metavar="N")
    p.set_defaults(func=cmd_gseq)

    p = commands.add_parser("selftest", help="Residue and oracle self checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--acceptance",
        action="store_true",
        help="Use the full sweep sizes instead of the quick profile",
    )
    p.add_argument("--suite", nargs="*", choices=SUITES, metavar="SUITE")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, out=None):
    """
    Run one command and return its exit code: 0 on success, 1 when a self
    test fails, 2 for bad input and 3 when a register outgrew its bound.
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as se:
        return se.code
    level = (logging.WARNING, logging.INFO)[min(args.verbose, 1)]
    if args.verbose > 1:
        level = logging.DEBUG
    afasim.log.init_logging(log_path=args.log_dir, level=level)
    try:
        return args.func(args, out) or EXIT_OK
    except StructuralError as se:
        print("afasim: error: {}".format(se), file=sys.stderr)
        return EXIT_STRUCTURAL
    except SpaceBoundExceeded as sbe:
        logger.error("%s", sbe)
        print("afasim: space bound exceeded: {}".format(sbe), file=sys.stderr)
        return EXIT_SPACE_BOUND
    finally:
        afasim.log.deinit_logging()


def main():
    sys.exit(run())
