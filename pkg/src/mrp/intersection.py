"""Intersection numbers of families of sets.

``int(A)`` is the largest ``alpha`` such that every finite sequence drawn from
``A`` (repetitions allowed) has a proportion ``>= alpha`` of its terms sharing
a common point. Two independent routes are provided:

* :func:`int_bruteforce` enumerates sequences (as multisets) directly;
* :func:`int_exact` solves the atom-versus-member 0/1 matrix game exactly,
  where the row player picks a probability measure on atoms and the column
  player a distribution over members.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Element, Family
from .errors import InputError
from .exact_lp import solve_game
from .measure import Measure, evaluate


@dataclass(frozen=True)
class IntResult:
    value: Fraction
    measure: Measure
    adversary: tuple[Fraction, ...]


@dataclass(frozen=True)
class BruteForceResult:
    value: Fraction
    witness: tuple[int, ...]  # multiplicity of each member in the minimizing multiset
    exact: bool


def _multisets(k: int, max_size: int):
    # Count vectors over k members with total size in [1, max_size].
    counts = [0] * k

    def rec(i, remaining):
        if i == k - 1:
            for c in range(remaining + 1):
                counts[i] = c
                yield counts
            return
        for c in range(remaining + 1):
            counts[i] = c
            yield from rec(i + 1, remaining - c)

    for counts_ in rec(0, max_size):
        if any(counts_):
            yield counts_


def int_bruteforce(family: Family, max_multiset_size: int,
                   reference: Fraction | None = None) -> BruteForceResult:
    """Minimize ``max coverage / size`` over member multisets of bounded size.

    The result is an upper bound on ``int(family)`` that becomes tight once
    the size bound is large enough. ``exact`` compares it to ``reference``
    (computed with :func:`int_exact` when not supplied).
    """
    if max_multiset_size < 1:
        raise InputError("max_multiset_size must be at least 1")
    members = family.members
    k, width = len(members), family.width
    atom_rows = [[j for j in range(k) if members[j].bits >> i & 1] for i in range(width)]
    best, witness = Fraction(2), None
    for counts in _multisets(k, max_multiset_size):
        size = sum(counts)
        cover = max(sum(counts[j] for j in row) for row in atom_rows)
        ratio = Fraction(cover, size)
        if ratio < best:
            best, witness = ratio, tuple(counts)
    if reference is None:
        reference = int_exact(family).value
    return BruteForceResult(best, witness, best == reference)


def int_exact(family: Family) -> IntResult:
    """Exact intersection number via the atom-by-member matrix game."""
    for k, e in enumerate(family.members):
        if not e:
            raise InputError(f"member {k} is the empty set")
    game = solve_game(family.incidence())
    return IntResult(game.value, Measure(game.row_strategy), game.col_strategy)


def kelley_check(pieces: Sequence[Family]) -> tuple[list[Fraction], bool]:
    if not pieces:
        raise InputError("need at least one piece")
    values = [int_exact(p).value for p in pieces]
    return values, all(v > 0 for v in values)


def kelley_weights(n: int) -> list[Fraction]:
    """Dyadic weights 1/2, 1/4, ... with the last one doubled so they sum to 1."""
    if n < 1:
        raise InputError("need at least one weight")
    ws = [Fraction(1, 2 ** (i + 1)) for i in range(n - 1)]
    ws.append(Fraction(1, 2 ** (n - 1)))
    return ws


def kelley_build_measure(pieces: Sequence[Family]) -> tuple[Measure, list[Fraction]]:
    """Mix the optimal measures of the pieces with dyadic weights.

    Every member of piece ``n`` gets measure at least ``w_n * int(piece_n)``;
    these bounds are returned after being checked by evaluation.
    """
    if not pieces:
        raise InputError("need at least one piece")
    width = pieces[0].width
    weights = kelley_weights(len(pieces))
    results = [int_exact(p) for p in pieces]
    mixed = [sum((w * r.measure.weights[i] for w, r in zip(weights, results)), Fraction(0))
             for i in range(width)]
    mu = Measure(mixed)
    bounds = [w * r.value for w, r in zip(weights, results)]
    for n, piece in enumerate(pieces):
        for a in piece:
            if evaluate(mu, a) < bounds[n]:
                raise ArithmeticError(f"piece {n}: {a.bitstring()} below bound {bounds[n]}")
    return mu, bounds


def approximability_check(pieces: Sequence[Family], eps) -> tuple[list[Fraction], bool]:
    """Whether every piece has intersection number at least ``1 - eps``."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise InputError("eps must lie strictly between 0 and 1")
    values, _ = kelley_check(pieces)
    return values, all(v >= 1 - eps for v in values)


def check_approximating_sequence(measures: Sequence[Measure],
                                 targets: Sequence[Element]) -> tuple[bool, list[Element]]:
    """Every target must get measure > 1/2 under some measure of the list."""
    half = Fraction(1, 2)
    failures = [a for a in targets if not any(evaluate(mu, a) > half for mu in measures)]
    return not failures, failures
