"""Finite Boolean set algebras over a fixed atom universe.

An :class:`Element` is a subset of ``{0, ..., width-1}`` stored as an integer
bit mask (bit ``i`` set means atom ``i`` belongs to the set). Bitstrings are
written with atom 0 first, so ``Element.from_bitstring("110")`` is ``{0, 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, InputError, WidthMismatch

MATERIALIZATION_CAP = 1 << 16


@dataclass(frozen=True, slots=True)
class Element:
    bits: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise InputError("element width must be positive")
        if self.bits < 0 or self.bits >> self.width:
            raise InputError(f"bits {self.bits:#x} do not fit in width {self.width}")

    @classmethod
    def zero(cls, width: int) -> Element:
        return cls(0, width)

    @classmethod
    def one(cls, width: int) -> Element:
        return cls((1 << width) - 1, width)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> Element:
        bits = 0
        for i in indices:
            if not 0 <= i < width:
                raise InputError(f"atom index {i} out of range [0, {width})")
            bits |= 1 << i
        return cls(bits, width)

    @classmethod
    def from_bitstring(cls, text: str) -> Element:
        if not text or set(text) - {"0", "1"}:
            raise InputError(f"not a 0/1 bitstring: {text!r}")
        return cls.from_indices((i for i, ch in enumerate(text) if ch == "1"), len(text))

    def _check(self, other: Element) -> None:
        if self.width != other.width:
            raise WidthMismatch(self.width, other.width)

    def __and__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.bits & other.bits, self.width)

    def __or__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.bits | other.bits, self.width)

    def __xor__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.bits ^ other.bits, self.width)

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        return Element(self.bits & ~other.bits, self.width)

    def __invert__(self) -> Element:
        return Element(((1 << self.width) - 1) ^ self.bits, self.width)

    def __le__(self, other: Element) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Element) -> bool:
        return self <= other and self.bits != other.bits

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def indices(self) -> list[int]:
        return [i for i in range(self.width) if self.bits >> i & 1]

    def disjoint(self, other: Element) -> bool:
        return not (self & other)

    def bitstring(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.width))

    def __repr__(self) -> str:
        return f"Element({self.bitstring()!r})"


def meet_all(elements: Iterable[Element], width: int) -> Element:
    out = Element.one(width)
    for e in elements:
        out = out & e
    return out


def join_all(elements: Iterable[Element], width: int) -> Element:
    out = Element.zero(width)
    for e in elements:
        out = out | e
    return out


class SetAlgebra:
    """A field of subsets of ``{0, ..., atom_count-1}``.

    With ``elements=None`` the algebra is the full power set and is never
    enumerated. A materialized algebra is built by :func:`generate_subalgebra`;
    its atoms (the cells of the underlying partition) are kept alongside.
    """

    __slots__ = ("atom_count", "_elements", "_atoms")

    def __init__(self, atom_count: int, elements: Iterable[Element] | None = None,
                 _atoms: Sequence[Element] | None = None):
        if atom_count < 1:
            raise InputError("atom_count must be positive")
        self.atom_count = atom_count
        self._elements = None if elements is None else frozenset(elements)
        self._atoms = None if _atoms is None else tuple(_atoms)
        if self._elements is not None:
            for e in self._elements:
                if e.width != atom_count:
                    raise WidthMismatch(atom_count, e.width)
            if self._atoms is None:
                self._atoms = partition_cells(self._elements, atom_count)
            if len(self._elements) != 1 << len(self._atoms):
                raise InputError("element collection is not closed under the Boolean operations")

    @classmethod
    def power_set(cls, atom_count: int) -> SetAlgebra:
        return cls(atom_count)

    @property
    def is_power_set(self) -> bool:
        return self._elements is None or len(self._atoms) == self.atom_count

    @property
    def materialized(self) -> bool:
        return self._elements is not None

    @property
    def zero(self) -> Element:
        return Element.zero(self.atom_count)

    @property
    def one(self) -> Element:
        return Element.one(self.atom_count)

    def atoms(self) -> tuple[Element, ...]:
        if self._atoms is None:
            return tuple(Element(1 << i, self.atom_count) for i in range(self.atom_count))
        return self._atoms

    def __contains__(self, e: Element) -> bool:
        if e.width != self.atom_count:
            return False
        if self._elements is None:
            return True
        return e in self._elements

    def __len__(self) -> int:
        if self._elements is None:
            return 1 << self.atom_count
        return len(self._elements)

    def __iter__(self) -> Iterator[Element]:
        """Elements in increasing order of bit mask."""
        if self._elements is None:
            if self.atom_count > 20:
                raise CapExceeded(1 << self.atom_count, MATERIALIZATION_CAP)
            return (Element(b, self.atom_count) for b in range(1 << self.atom_count))
        return iter(sorted(self._elements, key=lambda e: e.bits))

    def nonzero_elements(self) -> list[Element]:
        return [e for e in self if e]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetAlgebra) or other.atom_count != self.atom_count:
            return NotImplemented if not isinstance(other, SetAlgebra) else False
        return set(self.atoms()) == set(other.atoms())

    def __hash__(self) -> int:
        return hash((self.atom_count, frozenset(self.atoms())))

    def __repr__(self) -> str:
        kind = "power set" if self._elements is None else f"{len(self)} elements"
        return f"SetAlgebra(atom_count={self.atom_count}, {kind})"


def partition_cells(elements: Iterable[Element], width: int) -> tuple[Element, ...]:
    """Atoms of the algebra generated by ``elements``, without materializing it."""
    # Universe atoms are equivalent when no element separates them.
    signature: dict[int, list[int]] = {i: [] for i in range(width)}
    for k, e in enumerate(elements):
        for i in range(width):
            if e.bits >> i & 1:
                signature[i].append(k)
    cells: dict[tuple, int] = {}
    for i in range(width):
        key = tuple(signature[i])
        cells[key] = cells.get(key, 0) | 1 << i
    return tuple(sorted((Element(b, width) for b in cells.values()), key=lambda e: e.bits))


def _check_widths(elements: Sequence[Element]) -> int | None:
    widths = {e.width for e in elements}
    if len(widths) > 1:
        a, b = sorted(widths)[:2]
        raise WidthMismatch(a, b)
    return widths.pop() if widths else None


def generate_subalgebra(generators: Sequence[Element], width: int | None = None,
                        cap: int = MATERIALIZATION_CAP) -> SetAlgebra:
    """Smallest algebra containing ``generators``.

    The cells of the partition cut out by the generators are computed first;
    the algebra is then every union of cells. ``width`` is only needed when
    ``generators`` is empty.
    """
    w = _check_widths(generators)
    if w is None:
        if width is None:
            raise InputError("width is required when there are no generators")
        w = width
    elif width is not None and width != w:
        raise WidthMismatch(width, w)
    cells = partition_cells(generators, w)
    if 1 << len(cells) > cap:
        raise CapExceeded(1 << len(cells), cap)
    elements = []
    for r in range(len(cells) + 1):
        for combo in combinations(cells, r):
            elements.append(join_all(combo, w))
    return SetAlgebra(w, elements, _atoms=cells)


def atoms_of(algebra: SetAlgebra) -> list[Element]:
    """Minimal nonzero elements; together they partition the unit."""
    return list(algebra.atoms())


def is_antichain(members: Sequence[Element]) -> tuple[bool, tuple[int, int] | None]:
    """Whether all members are pairwise disjoint; else the first offending index pair."""
    for i, j in combinations(range(len(members)), 2):
        if not members[i].disjoint(members[j]):
            return False, (i, j)
    return True, None


def is_atomless(algebra: SetAlgebra) -> tuple[bool, Element]:
    """Always false for a finite algebra; the witness is its first atom."""
    return False, algebra.atoms()[0]


class Family:
    """Nonempty indexed list of nonzero elements of a common algebra.

    Repeated members are kept: intersection numbers count repetitions.
    """

    __slots__ = ("ambient", "members")

    def __init__(self, members: Iterable[Element], ambient: SetAlgebra | None = None):
        members = tuple(members)
        if not members:
            raise InputError("a family needs at least one member")
        w = _check_widths(members)
        if ambient is None:
            ambient = SetAlgebra.power_set(w)
        elif ambient.atom_count != w:
            raise WidthMismatch(ambient.atom_count, w)
        for k, e in enumerate(members):
            if not e:
                raise InputError(f"member {k} is the empty set")
            if e not in ambient:
                raise InputError(f"member {k} ({e.bitstring()}) is not in the ambient algebra")
        self.ambient = ambient
        self.members = members

    @property
    def width(self) -> int:
        return self.ambient.atom_count

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def __contains__(self, e: Element) -> bool:
        return e in self.members

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.members == other.members and self.ambient == other.ambient

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Family([{', '.join(e.bitstring() for e in self.members)}])"

    def deduplicated(self) -> Family:
        return Family(dict.fromkeys(self.members), self.ambient)

    def subfamily(self, indices: Iterable[int]) -> Family:
        return Family((self.members[i] for i in indices), self.ambient)

    def incidence(self) -> list[list[int]]:
        """Atom-by-member 0/1 matrix."""
        return [[e.bits >> i & 1 for e in self.members] for i in range(self.width)]
