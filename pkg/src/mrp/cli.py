"""``mrp`` command line tool.

Every number is printed as an exact fraction ``p/q``. Exit status is 0 when
the computation succeeded or the property holds, 1 when the property fails
(a witness is printed), 2 on bad input or usage.

Countable decompositions are necessarily truncated to the finite lists of
families in the instance file, and finite algebras always have atoms; the
reports say so where it matters.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, TextIO

from .algebra import generate_subalgebra, partition_cells
from .decomposition import Criterion, is_n_linked, linked_vs_int_report, min_pieces
from .errors import ConditionFailure, DepthInsufficient, InputError, MRPError
from .instance import InstanceFile, instance_from_decomposition, load_instance, serialize
from .intersection import approximability_check, int_bruteforce, int_exact, kelley_build_measure
from .measure import Measure
from .nonatomic import (
    check_intersection_bounds,
    check_nesting,
    check_splitting,
    cluster_measure,
    dyadic_decomposition,
    small_positive_subset,
)

COMMANDS = (
    "intnum", "kelley-check", "kelley-build", "approx-check", "nonatomic-check",
    "nonatomic-build", "small-subset", "linked", "min-pieces", "dyadic",
)


class Report:
    def __init__(self, inst: InstanceFile | None, decimal: bool, out: TextIO):
        self.inst = inst
        self.decimal = decimal
        self.out = out

    def q(self, value: Fraction) -> str:
        text = f"{value.numerator}/{value.denominator}"
        if self.decimal:
            with localcontext() as ctx:
                ctx.prec = 6
                approx = Decimal(value.numerator) / Decimal(value.denominator)
            text += f" ({approx})"
        return text

    def set(self, e) -> str:
        if self.inst is None:
            return "{" + ", ".join(map(str, e.indices())) + "}"
        return self.inst.format_set(e)

    def measure(self, mu: Measure) -> str:
        label = self.inst.label if self.inst else str
        return "{" + ", ".join(f"{label(i)}: {self.q(w)}" for i, w in enumerate(mu.weights)) + "}"

    def __call__(self, line: str = "") -> None:
        print(line, file=self.out)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mrp",
        description="Exact intersection numbers and strictly positive measures "
                    "on finite set algebras.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("instance", nargs="?", help="instance file (.json for the JSON form)")
    p.add_argument("--oracle", type=int, metavar="N",
                   help="intnum: also brute-force multisets up to size N")
    p.add_argument("--eps", type=_parse_fraction, metavar="p/q")
    p.add_argument("--depth", type=int, metavar="D", help="dyadic: tree depth")
    p.add_argument("--beta", type=_parse_fraction, metavar="p/q",
                   help="min-pieces: require intersection number >= beta")
    p.add_argument("--n", type=int, metavar="N",
                   help="linked/min-pieces: linkedness order; small-subset: level")
    p.add_argument("--member", type=int, default=0, metavar="I",
                   help="small-subset: index of the member within its level")
    p.add_argument("--family", metavar="NAME", help="restrict to one family")
    p.add_argument("--decomposition", metavar="NAME",
                   help="decomposition to use (default: the first one)")
    p.add_argument("--unions", action="store_true",
                   help="dyadic: levels hold all unions of cells")
    p.add_argument("--decimal", action="store_true",
                   help="append decimal approximations to fractions")
    return p


def _families(inst: InstanceFile, args):
    names = [args.family] if args.family else list(inst.families)
    if not names:
        raise InputError("instance defines no families")
    return [(name, inst.family(name)) for name in names]


def _decomposition(inst: InstanceFile, args):
    if args.decomposition:
        name = args.decomposition
    elif inst.decompositions:
        name = next(iter(inst.decompositions))
    else:
        raise InputError("instance defines no decompositions")
    return name, inst.decomposition(name)


def cmd_intnum(inst, args, out: Report) -> int:
    status = 0
    for name, fam in _families(inst, args):
        res = int_exact(fam)
        out(f"family {name}: {len(fam)} members over {fam.width} atoms")
        out(f"  int = {out.q(res.value)}")
        out(f"  measure = {out.measure(res.measure)}")
        out("  adversary = [" + ", ".join(out.q(w) for w in res.adversary) + "]")
        if args.oracle is not None:
            bf = int_bruteforce(fam, args.oracle, reference=res.value)
            ok = bf.value >= res.value
            tag = "exact" if bf.exact else "not tight at this size"
            out(f"  oracle (multisets of size <= {args.oracle}) = {out.q(bf.value)}: "
                f"{'sandwich ok' if ok else 'SANDWICH VIOLATED'}, {tag}")
            out("  oracle witness multiplicities = " + " ".join(map(str, bf.witness)))
            if not ok:
                status = 1
    return status


def _pieces(inst, args):
    if args.decomposition:
        names = inst.decompositions.get(args.decomposition)
        if names is None:
            raise InputError(f"no decomposition named {args.decomposition}")
    else:
        names = list(inst.families)
    if not names:
        raise InputError("no pieces")
    return [(n, inst.family(n)) for n in names]


def cmd_kelley_check(inst, args, out: Report) -> int:
    pieces = _pieces(inst, args)
    values = [int_exact(f).value for _, f in pieces]
    out(f"kelley check over {len(pieces)} pieces (finite list standing in for a countable union)")
    for (name, _), v in zip(pieces, values):
        out(f"  {name}: int = {out.q(v)} {'positive' if v > 0 else 'ZERO'}")
    ok = all(v > 0 for v in values)
    out(f"all positive: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_kelley_build(inst, args, out: Report) -> int:
    pieces = _pieces(inst, args)
    mu, bounds = kelley_build_measure([f for _, f in pieces])
    out(f"measure = {out.measure(mu)}")
    for (name, _), b in zip(pieces, bounds):
        out(f"  {name}: every member has measure >= {out.q(b)}")
    members = {e for _, f in pieces for e in f}
    cells = partition_cells(members, mu.width)
    # Covering 2^p - 1 nonzero elements needs at least that many distinct members.
    full = (1 << len(cells)) - 1 <= len(members) and all(
        e in members for e in generate_subalgebra(cells).nonzero_elements())
    # The generated algebra's atoms are the cells; strict positivity is decided there.
    witness = next((c for c in cells if mu(c) == 0), None)
    out(f"generated algebra: {len(cells)} atoms; pieces cover all its nonzero elements: "
        f"{'yes' if full else 'no'}")
    if witness is None:
        out("strictly positive on the generated algebra: yes")
        return 0
    out(f"strictly positive on the generated algebra: no, {out.set(witness)} has measure 0")
    return 1


def cmd_approx_check(inst, args, out: Report) -> int:
    if args.eps is None:
        raise InputError("approx-check needs --eps")
    pieces = _pieces(inst, args)
    values, ok = approximability_check([f for _, f in pieces], args.eps)
    need = 1 - args.eps
    out(f"approximability check, eps = {out.q(args.eps)}, threshold 1 - eps = {out.q(need)}")
    for (name, _), v in zip(pieces, values):
        out(f"  {name}: int = {out.q(v)} {'ok' if v >= need else 'FAIL'}")
    out(f"ok: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_nonatomic_check(inst, args, out: Report) -> int:
    name, dec = _decomposition(inst, args)
    out(f"decomposition {name}: {len(dec.levels)} levels (finite truncation)")
    nest_ok, nest_bad = check_nesting(dec)
    if nest_ok:
        out("  nesting: ok")
    else:
        n, a = nest_bad
        out(f"  nesting: FAIL, level {n} member {out.set(a)} missing from level {n + 1}")
    bounds = check_intersection_bounds(dec)
    bound_ok = all(b.ok for b in bounds)
    out(f"  intersection bounds: {'ok' if bound_ok else 'FAIL'}")
    for b in bounds:
        out(f"    level {b.level}: int = {out.q(b.value)} >= {out.q(b.required)}"
            f" {'ok' if b.ok else 'FAIL'}")
    split_ok, _, failures = check_splitting(dec)
    if split_ok:
        out("  splitting: ok")
    else:
        out(f"  splitting: FAIL at {len(failures)} members")
        for n, a in failures:
            out(f"    level {n} member {out.set(a)}: no disjoint pair in level {n + 1}")
    return 0 if nest_ok and bound_ok and split_ok else 1


def cmd_nonatomic_build(inst, args, out: Report) -> int:
    name, dec = _decomposition(inst, args)
    try:
        mu, certs = cluster_measure(dec)
    except ConditionFailure as exc:
        out(f"decomposition {name}: conditions fail, no measure: {exc}")
        return 1
    out(f"decomposition {name}: deepest-level measure, certified on all {len(certs)} levels")
    out(f"measure = {out.measure(mu)}")
    for c in certs:
        out(f"  level {c.level}: min measure {out.q(c.min_measure)} >= {out.q(c.required)}")
    out("note: a finite algebra is atomic; these certificates hold up to the truncation depth")
    return 0


def cmd_small_subset(inst, args, out: Report) -> int:
    if args.eps is None:
        raise InputError("small-subset needs --eps")
    name, dec = _decomposition(inst, args)
    level = args.n or 0
    if not 0 <= level <= dec.depth:
        raise InputError(f"level {level} out of range [0, {dec.depth}]")
    fam = dec.levels[level]
    if not 0 <= args.member < len(fam):
        raise InputError(f"member {args.member} out of range for level {level}")
    a = fam[args.member]
    try:
        mu, _ = cluster_measure(dec)
        b = small_positive_subset(dec, mu, a, level, args.eps)
    except DepthInsufficient as exc:
        out(f"no subset: needs depth {exc.needed}, decomposition {name} stops at {exc.available}")
        return 1
    except ConditionFailure as exc:
        out(f"no subset: {exc}")
        return 1
    out(f"inside {out.set(a)} (level {level}): {out.set(b)} "
        f"with measure {out.q(mu(b))} < {out.q(args.eps)}")
    return 0


def cmd_linked(inst, args, out: Report) -> int:
    n_max = args.n if args.n is not None else 2
    status = 0
    for name, fam in _families(inst, args):
        out(f"family {name}:")
        for n, linked, value in linked_vs_int_report(fam, n_max):
            out(f"  n = {n}: {'linked' if linked else 'not linked'}, int = {out.q(value)}")
        ok, witness = is_n_linked(fam, n_max)
        if not ok:
            out(f"  not {n_max}-linked: members " + " ".join(map(str, witness))
                + " have empty intersection")
            status = 1
    return status


def cmd_min_pieces(inst, args, out: Report) -> int:
    if args.n is not None and args.beta is not None:
        raise InputError("give at most one of --n and --beta")
    if args.n is not None:
        crit = Criterion.n_linked(args.n)
    elif args.beta is not None:
        crit = Criterion.int_at_least(args.beta)
    else:
        crit = Criterion.centered()
    for name, fam in _families(inst, args):
        count, partition = min_pieces(fam, crit)
        out(f"family {name}: minimum pieces = {count} ({crit}; finite count, not a sigma-property)")
        for k, piece in enumerate(partition):
            out(f"  piece {k}: " + " ".join(out.set(e) for e in piece))
    return 0


def cmd_dyadic(inst, args, out: Report) -> int:
    if args.depth is None:
        raise InputError("dyadic needs --depth")
    dec = dyadic_decomposition(args.depth, unions=args.unions)
    out.out.write(serialize(instance_from_decomposition(dec)))
    return 0


HANDLERS: dict[str, Callable[..., int]] = {
    "intnum": cmd_intnum,
    "kelley-check": cmd_kelley_check,
    "kelley-build": cmd_kelley_build,
    "approx-check": cmd_approx_check,
    "nonatomic-check": cmd_nonatomic_check,
    "nonatomic-build": cmd_nonatomic_build,
    "small-subset": cmd_small_subset,
    "linked": cmd_linked,
    "min-pieces": cmd_min_pieces,
    "dyadic": cmd_dyadic,
}


def run_command(argv: list[str], stdout: TextIO | None = None,
                stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        inst = None
        if args.command != "dyadic":
            if args.instance is None:
                raise InputError(f"{args.command} needs an instance file")
            inst = load_instance(args.instance)
        return HANDLERS[args.command](inst, args, Report(inst, args.decimal, stdout))
    except MRPError as exc:
        print(f"mrp: error: {exc}", file=stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
