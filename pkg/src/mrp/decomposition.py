"""Linkedness predicates and minimum partitions of families into good pieces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .algebra import Family, meet_all
from .errors import InputError
from .intersection import int_exact


def is_n_linked(family: Family, n: int) -> tuple[bool, tuple[int, ...] | None]:
    """Every at most ``n`` members share an atom; else a violating index tuple.

    Only subsets of size ``min(n, len(family))`` are examined: a smaller
    subset is contained in one of them, and a meet only shrinks.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    size = min(n, len(family))
    for combo in combinations(range(len(family)), size):
        if not meet_all((family[i] for i in combo), family.width):
            return False, combo
    return True, None


def is_centered(family: Family) -> tuple[bool, int | None]:
    """Whether all members share an atom; the smallest common atom if so."""
    common = meet_all(family, family.width)
    if common:
        return True, common.indices()[0]
    return False, None


@dataclass(frozen=True)
class Criterion:
    """What every piece of a partition must satisfy.

    ``kind`` is ``"centered"``, ``"n_linked"`` (with ``n``) or
    ``"int_at_least"`` (with ``beta``). All three are inherited by
    subfamilies, which the search relies on.
    """

    kind: str
    n: int | None = None
    beta: Fraction | None = None

    @classmethod
    def centered(cls) -> Criterion:
        return cls("centered")

    @classmethod
    def n_linked(cls, n: int) -> Criterion:
        if n < 1:
            raise InputError("n must be at least 1")
        return cls("n_linked", n=n)

    @classmethod
    def int_at_least(cls, beta) -> Criterion:
        beta = Fraction(beta)
        if beta <= 0:
            raise InputError("beta must be positive")
        if beta > 1:
            raise InputError("no piece, not even a single set, has intersection number above 1")
        return cls("int_at_least", beta=beta)

    def holds(self, piece: Family) -> bool:
        if self.kind == "centered":
            return is_centered(piece)[0]
        if self.kind == "n_linked":
            return is_n_linked(piece, self.n)[0]
        if self.kind == "int_at_least":
            return int_exact(piece).value >= self.beta
        raise InputError(f"unknown criterion {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "n_linked":
            return f"{self.n}-linked"
        if self.kind == "int_at_least":
            return f"int >= {self.beta.numerator}/{self.beta.denominator}"
        return self.kind


def _piece_test(family: Family, criterion: Criterion) -> Callable[[tuple[int, ...]], bool]:
    cache: dict[tuple[int, ...], bool] = {}

    def ok(indices: tuple[int, ...]) -> bool:
        key = tuple(sorted(indices))
        if key not in cache:
            cache[key] = criterion.holds(family.subfamily(key))
        return cache[key]

    return ok


def min_pieces(family: Family, criterion: Criterion) -> tuple[int, list[Family]]:
    """Fewest pieces partitioning the members so that each piece satisfies ``criterion``.

    Exact branch and bound. Members are placed smallest first; a member either
    joins an existing piece or opens the next one, so piece labels are never
    permuted. The bound is a greedy set of pairwise incompatible members.
    """
    k = len(family)
    ok = _piece_test(family, criterion)
    order = sorted(range(k), key=lambda i: (len(family[i]), i))

    compatible = [[ok((i, j)) if i != j else True for j in range(k)] for i in range(k)]
    core: list[int] = []
    for i in order:
        if all(not compatible[i][j] for j in core):
            core.append(i)
    lower = len(core)

    best: list[list[int]] = [[i] for i in order]
    pieces: list[list[int]] = []

    def search(pos: int) -> bool:
        nonlocal best
        if len(pieces) >= len(best):
            return False
        if pos == k:
            best = [list(p) for p in pieces]
            return len(best) == lower
        i = order[pos]
        for p in pieces:
            if all(compatible[i][j] for j in p) and ok(tuple(p) + (i,)):
                p.append(i)
                done = search(pos + 1)
                p.pop()
                if done:
                    return True
        pieces.append([i])
        done = search(pos + 1)
        pieces.pop()
        return done

    if len(best) > lower:
        search(0)
    partition = [family.subfamily(sorted(p)) for p in sorted(best, key=min)]
    return len(partition), partition


def linked_vs_int_report(family: Family, n_max: int) -> list[tuple[int, bool, Fraction]]:
    """Rows ``(n, is n-linked, int(family))`` for ``n = 1 .. n_max``."""
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    value = int_exact(family).value
    return [(n, is_n_linked(family, n)[0], value) for n in range(1, n_max + 1)]
