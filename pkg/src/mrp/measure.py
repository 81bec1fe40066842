"""Finitely additive probability measures given by atom weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Element, SetAlgebra
from .errors import InputError, WidthMismatch


@dataclass(frozen=True)
class Measure:
    """Probability weights on the atoms of the universe.

    Additivity holds by construction: an element's measure is the sum of the
    weights of its atoms.
    """

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Sequence):
        ws = tuple(w if isinstance(w, Fraction) else Fraction(w) for w in weights)
        if not ws:
            raise InputError("a measure needs at least one atom")
        if any(w < 0 for w in ws):
            raise InputError("measure weights must be nonnegative")
        if sum(ws) != 1:
            raise InputError(f"measure weights sum to {sum(ws)}, not 1")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def uniform(cls, width: int) -> Measure:
        return cls([Fraction(1, width)] * width)

    @classmethod
    def point_mass(cls, atom: int, width: int) -> Measure:
        return cls([Fraction(int(i == atom)) for i in range(width)])

    @property
    def width(self) -> int:
        return len(self.weights)

    def __call__(self, a: Element) -> Fraction:
        return evaluate(self, a)


def evaluate(measure: Measure, a: Element) -> Fraction:
    if a.width != measure.width:
        raise WidthMismatch(measure.width, a.width)
    return sum((measure.weights[i] for i in a.indices()), Fraction(0))


def is_strictly_positive(measure: Measure, algebra: SetAlgebra) -> tuple[bool, Element | None]:
    """Checked on the algebra's atoms: every nonzero element contains one."""
    if algebra.atom_count != measure.width:
        raise WidthMismatch(measure.width, algebra.atom_count)
    for atom in algebra.atoms():
        if evaluate(measure, atom) == 0:
            return False, atom
    return True, None


def weighted_sum(measures: Sequence[Measure], weights: Sequence) -> Measure:
    if not measures or len(measures) != len(weights):
        raise InputError("need equally many (and at least one) measures and weights")
    ws = [Fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise InputError("mixing weights must be nonnegative")
    if sum(ws) != 1:
        raise InputError(f"mixing weights sum to {sum(ws)}, not 1")
    width = measures[0].width
    for mu in measures:
        if mu.width != width:
            raise WidthMismatch(width, mu.width)
    return Measure([sum((w * mu.weights[i] for w, mu in zip(ws, measures)), Fraction(0))
                    for i in range(width)])


def symdiff_metric(measure: Measure, a: Element, b: Element) -> Fraction:
    return evaluate(measure, a ^ b)


def is_epsilon_nonatomic(measure: Measure, algebra: SetAlgebra, eps) -> tuple[bool, list[Element]]:
    """Whether the algebra's atoms all weigh strictly less than ``eps``.

    On success the witness is the atom partition; otherwise it is the list of
    atoms with measure ``>= eps``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    if algebra.atom_count != measure.width:
        raise WidthMismatch(measure.width, algebra.atom_count)
    atoms = list(algebra.atoms())
    heavy = [a for a in atoms if evaluate(measure, a) >= eps]
    if heavy:
        return False, heavy
    return True, atoms
