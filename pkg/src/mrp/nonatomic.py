"""Finite truncations of leveled decompositions ``B_0 ⊆ B_1 ⊆ ... ⊆ B_K``.

A decomposition is good up to depth ``k`` when

* nesting: every member of level ``n`` is a member of level ``n+1`` (``n < k``);
* bounds: level ``n`` has intersection number at least ``2^-n`` (``n <= k``);
* splitting: each member of level ``n`` contains two disjoint members of
  level ``n+1`` (``n < k``).

From such a decomposition one builds a probability measure giving every
member of level ``n`` measure at least ``2^-n``, and inside any member finds
subsets of arbitrarily small positive measure, as far as the truncation
allows. Finite algebras always have atoms, so these are finite-depth
certificates, not proofs of atomlessness.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import MATERIALIZATION_CAP, Element, Family, SetAlgebra
from .errors import CapExceeded, ConditionFailure, DepthInsufficient, InputError
from .intersection import int_exact
from .measure import Measure, evaluate


@dataclass(frozen=True)
class LeveledDecomposition:
    ambient: SetAlgebra
    levels: tuple[Family, ...]
    verified_depth: int | None = None  # set by verify(); None means unchecked

    def __post_init__(self):
        levels = tuple(self.levels)
        if not levels:
            raise InputError("a decomposition needs at least one level")
        for n, fam in enumerate(levels):
            if fam.ambient != self.ambient:
                raise InputError(f"level {n} lives in a different algebra")
        object.__setattr__(self, "levels", levels)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level_of(self, a: Element) -> int | None:
        """First level containing ``a``."""
        return next((n for n, fam in enumerate(self.levels) if a in fam), None)


@dataclass(frozen=True)
class LevelBound:
    level: int
    value: Fraction
    required: Fraction

    @property
    def ok(self) -> bool:
        return self.value >= self.required


@lru_cache(maxsize=256)
def _int(fam: Family):
    # Families are immutable and hashable; levels are re-solved by several checks.
    return int_exact(fam)


def check_nesting(dec: LeveledDecomposition) -> tuple[bool, tuple[int, Element] | None]:
    for n in range(dec.depth):
        upper = set(dec.levels[n + 1].members)
        for a in dec.levels[n]:
            if a not in upper:
                return False, (n, a)
    return True, None


def check_intersection_bounds(dec: LeveledDecomposition) -> list[LevelBound]:
    return [LevelBound(n, _int(fam).value, Fraction(1, 2 ** n))
            for n, fam in enumerate(dec.levels)]


def _split(members: Sequence[Element], a: Element) -> tuple[Element, Element] | None:
    inside = [b for b in members if b <= a]
    for i, b in enumerate(inside):
        for c in inside[i + 1:]:
            if b.disjoint(c):
                return b, c
    return None


def check_splitting(dec: LeveledDecomposition):
    """Return ``(ok, witnesses, failures)``.

    ``witnesses`` maps ``(n, a)`` to a disjoint pair inside ``a`` from level
    ``n+1``; ``failures`` lists the ``(n, a)`` with no such pair.
    """
    witnesses: dict[tuple[int, Element], tuple[Element, Element]] = {}
    failures: list[tuple[int, Element]] = []
    for n in range(dec.depth):
        nxt = dec.levels[n + 1].members
        for a in dict.fromkeys(dec.levels[n].members):
            pair = _split(nxt, a)
            if pair is None:
                failures.append((n, a))
            else:
                witnesses[(n, a)] = pair
    return not failures, witnesses, failures


@lru_cache(maxsize=64)
def _good_depth(dec: LeveledDecomposition) -> tuple[int, ConditionFailure | None]:
    """Largest k such that all conditions hold up to level k, with the first failure."""
    bounds = check_intersection_bounds(dec)
    if not bounds[0].ok:
        return -1, ConditionFailure(f"level 0 has intersection number {bounds[0].value} < 1", 0)
    for n in range(dec.depth):
        upper = set(dec.levels[n + 1].members)
        for a in dec.levels[n]:
            if a not in upper:
                return n, ConditionFailure(
                    f"level {n} member {a.bitstring()} missing from level {n + 1}", n, a)
            if _split(dec.levels[n + 1].members, a) is None:
                return n, ConditionFailure(
                    f"level {n} member {a.bitstring()} has no disjoint pair below it "
                    f"in level {n + 1}", n, a)
        b = bounds[n + 1]
        if not b.ok:
            return n, ConditionFailure(
                f"level {n + 1} has intersection number {b.value} < {b.required}", n + 1)
    return dec.depth, None


def verify(dec: LeveledDecomposition) -> LeveledDecomposition:
    """Copy of ``dec`` with :attr:`verified_depth` filled in."""
    if dec.verified_depth is not None:
        return dec
    k, _ = _good_depth(dec)
    return dataclasses.replace(dec, verified_depth=k)


def _require(dec: LeveledDecomposition, depth: int) -> LeveledDecomposition:
    dec = verify(dec)
    if dec.verified_depth < depth:
        _, failure = _good_depth(dec)
        raise failure
    return dec


def disjoint_refinement(dec: LeveledDecomposition, a: Element, n: int, k: int) -> list[Element]:
    """``2^(k-n)`` pairwise disjoint members of level ``k`` inside ``a``.

    Built by splitting ``a`` with two disjoint members of level ``n+1`` and
    recursing on each half.
    """
    if not 0 <= n <= k <= dec.depth:
        raise InputError(f"need 0 <= n <= k <= {dec.depth}, got n={n}, k={k}")
    if a not in dec.levels[n]:
        raise InputError(f"{a.bitstring()} is not a member of level {n}")
    pieces = [a]
    for level in range(n, k):
        nxt = dec.levels[level + 1].members
        refined = []
        for p in pieces:
            pair = _split(nxt, p)
            if pair is None:
                raise ConditionFailure(
                    f"{p.bitstring()} at level {level} cannot be split in level {level + 1}",
                    level, p)
            refined.extend(pair)
        pieces = refined
    return pieces


def level_measures(dec: LeveledDecomposition) -> list[Measure]:
    """Optimal measure of each level, checked to give every member ``>= 2^-n``."""
    out = []
    for n, fam in enumerate(dec.levels):
        res = _int(fam)
        need = Fraction(1, 2 ** n)
        for b in fam:
            if evaluate(res.measure, b) < need:
                raise ConditionFailure(
                    f"level {n} has intersection number {res.value} < {need}", n, b)
        out.append(res.measure)
    return out


@dataclass(frozen=True)
class LevelCertificate:
    level: int
    required: Fraction
    min_measure: Fraction  # smallest measure of a member of the level
    refinement_total: Fraction  # smallest summed measure of a member's refinement


def cluster_measure(dec: LeveledDecomposition) -> tuple[Measure, list[LevelCertificate]]:
    """Deepest level measure, certified on every level.

    For ``a`` in level ``n`` the refinement into ``2^(K-n)`` disjoint level-K
    members, each of measure ``>= 2^-K``, shows ``mu(a) >= 2^-n``.
    """
    K = dec.depth
    dec = _require(dec, K)
    mu = _int(dec.levels[K]).measure
    floor = Fraction(1, 2 ** K)
    certs = []
    for n, fam in enumerate(dec.levels):
        need = Fraction(1, 2 ** n)
        lowest = lowest_total = None
        for a in dict.fromkeys(fam.members):
            pieces = disjoint_refinement(dec, a, n, K)
            weights = [evaluate(mu, b) for b in pieces]
            for i, b in enumerate(pieces):
                if weights[i] < floor or not b <= a or any(
                        not b.disjoint(c) for c in pieces[i + 1:]):
                    raise ConditionFailure(f"refinement of {a.bitstring()} is not a certificate",
                                           n, a)
            total = sum(weights, Fraction(0))
            value = evaluate(mu, a)
            if total < need or value < need:
                raise ConditionFailure(f"{a.bitstring()} has measure {value} < {need}", n, a)
            lowest = value if lowest is None else min(lowest, value)
            lowest_total = total if lowest_total is None else min(lowest_total, total)
        certs.append(LevelCertificate(n, need, lowest, lowest_total))
    return mu, certs


def small_positive_subset(dec: LeveledDecomposition, measure: Measure, a: Element,
                          n: int, eps) -> Element:
    """A member of a deeper level inside ``a`` with measure in ``(0, eps)``.

    Uses the least ``k`` with ``2^(n-k) < eps``: ``a`` contains ``2^(k-n)``
    disjoint members of level ``k``, and the lightest of them weighs at most
    ``2^(n-k)``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    k = n
    while Fraction(1, 2 ** (k - n)) >= eps:
        k += 1
    if k > dec.depth:
        raise DepthInsufficient(k, dec.depth, n, a)
    _require(dec, k)
    pieces = disjoint_refinement(dec, a, n, k)
    b = min(pieces, key=lambda p: evaluate(measure, p))
    value = evaluate(measure, b)
    if value == 0:
        raise ConditionFailure(f"measure vanishes on level {k} member {b.bitstring()}", k, b)
    assert value < eps
    return b


def dyadic_cell(depth: int, index: int, width_depth: int) -> Element:
    """Cell ``index`` at ``depth`` of the binary tree with ``2^width_depth`` leaves."""
    size = 1 << (width_depth - depth)
    return Element(((1 << size) - 1) << (index * size), 1 << width_depth)


def dyadic_decomposition(depth: int, unions: bool = False,
                         cap: int = MATERIALIZATION_CAP) -> LeveledDecomposition:
    """Canonical decomposition over the ``2^depth`` leaves of a binary tree.

    Level ``n`` holds every tree cell of depth ``<= n``. With ``unions=True``
    it instead holds every nonempty union of depth-``n`` cells, which has
    ``2^(2^n) - 1`` members and is only practical for small depths.
    Either way level ``n`` has intersection number exactly ``2^-n``.
    """
    if depth < 0:
        raise InputError("depth must be nonnegative")
    if 1 << depth > cap:
        raise CapExceeded(1 << depth, cap)
    width = 1 << depth
    ambient = SetAlgebra.power_set(width)
    levels = []
    if unions:
        if (1 << (1 << depth)) > cap:
            raise CapExceeded(1 << (1 << depth), cap)
        for n in range(depth + 1):
            cells = [dyadic_cell(n, i, depth) for i in range(1 << n)]
            members = []
            for mask in range(1, 1 << len(cells)):
                bits = 0
                for i, c in enumerate(cells):
                    if mask >> i & 1:
                        bits |= c.bits
                members.append(Element(bits, width))
            members.sort(key=lambda e: (-len(e), e.indices()))
            levels.append(Family(members, ambient))
    else:
        members = []
        for n in range(depth + 1):
            members += [dyadic_cell(n, i, depth) for i in range(1 << n)]
            levels.append(Family(list(members), ambient))
    return LeveledDecomposition(ambient, tuple(levels))
