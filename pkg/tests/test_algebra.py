import pytest
from hypothesis import given, strategies as st

from mrp.algebra import (
    Element,
    Family,
    SetAlgebra,
    atoms_of,
    generate_subalgebra,
    is_antichain,
    is_atomless,
    join_all,
)
from mrp.errors import CapExceeded, InputError, WidthMismatch

from helpers import FANO_LINES


def closure_fixpoint(generators, width):
    """Worklist closure under meet and complement, independent of the cell route."""
    seen = {Element.zero(width), Element.one(width), *generators}
    todo = list(seen)
    while todo:
        x = todo.pop()
        new = [~x] + [x & y for y in list(seen)]
        for z in new:
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return seen


def bs(*strings):
    return [Element.from_bitstring(s) for s in strings]


def test_bitstring_order():
    e = Element.from_bitstring("110")
    assert e.indices() == [0, 1]
    assert e.bitstring() == "110"
    assert Element.from_indices([2], 3).bitstring() == "001"


def test_lattice_ops():
    a, b = bs("1100", "0110")
    assert (a & b).bitstring() == "0100"
    assert (a | b).bitstring() == "1110"
    assert (~a).bitstring() == "0011"
    assert (a ^ b).bitstring() == "1010"
    assert Element.from_bitstring("0100") <= a
    assert not a <= b


def test_width_mismatch_rejected():
    with pytest.raises(WidthMismatch):
        Element.from_bitstring("10") & Element.from_bitstring("100")
    with pytest.raises(WidthMismatch):
        generate_subalgebra(bs("10", "100"))


def test_trivial_algebra():
    alg = generate_subalgebra([], width=3)
    assert {e.bitstring() for e in alg} == {"000", "111"}


def test_singletons_generate_power_set():
    alg = generate_subalgebra(bs("100", "010", "001"))
    assert len(alg) == 8
    assert alg == SetAlgebra.power_set(3)


def test_overlapping_generators():
    alg = generate_subalgebra(bs("110", "011"))
    assert len(alg) == 8
    assert set(alg) == closure_fixpoint(bs("110", "011"), 3)
    assert sorted(e.bitstring() for e in atoms_of(alg)) == ["001", "010", "100"]


def test_atoms_of_power_set_and_trivial():
    assert [e.bitstring() for e in atoms_of(SetAlgebra.power_set(3))] == ["100", "010", "001"]
    assert atoms_of(generate_subalgebra([], width=4)) == [Element.one(4)]


def test_atoms_are_minimal_by_pairwise_subset_tests():
    alg = generate_subalgebra(bs("11000", "01110"))
    nonzero = alg.nonzero_elements()
    minimal = {a for a in nonzero if not any(b < a for b in nonzero)}
    assert set(atoms_of(alg)) == minimal


def test_cap():
    gens = [Element(1 << i, 17) for i in range(17)]
    with pytest.raises(CapExceeded):
        generate_subalgebra(gens)
    assert len(generate_subalgebra(gens[:3], cap=16)) == 16  # 3 singletons + the rest


def test_antichain():
    assert is_antichain(bs("1000", "0100", "0010", "0001")) == (True, None)
    assert is_antichain(bs("1100", "0110")) == (False, (0, 1))
    lines = [Element.from_indices(l, 7) for l in FANO_LINES]
    assert is_antichain(lines)[0] is False


def test_atomless_is_false_for_finite_algebras():
    ok, witness = is_atomless(SetAlgebra.power_set(3))
    assert not ok and len(witness) == 1
    assert is_atomless(generate_subalgebra([], width=3)) == (False, Element.one(3))
    assert is_atomless(generate_subalgebra(bs("1100", "0110")))[0] is False


def test_family_rejects_empty_member():
    with pytest.raises(InputError):
        Family(bs("110", "000"))
    with pytest.raises(InputError):
        Family([])


def test_family_keeps_duplicates():
    fam = Family(bs("110", "110", "011"))
    assert len(fam) == 3
    assert len(fam.deduplicated()) == 2


def test_family_member_outside_ambient():
    alg = generate_subalgebra(bs("110"))
    with pytest.raises(InputError):
        Family(bs("100"), alg)


def test_materialized_algebra_must_be_closed():
    with pytest.raises(InputError):
        SetAlgebra(2, bs("00", "11", "10"))


def elements(width):
    return st.integers(0, (1 << width) - 1).map(lambda b: Element(b, width))


@given(st.integers(1, 8).flatmap(lambda w: st.tuples(elements(w), elements(w), elements(w))))
def test_de_morgan(triple):
    a, b, c = triple
    assert ~(a | b) == ~a & ~b
    assert ~(a & b) == ~a | ~b
    assert a & (b | c) == (a & b) | (a & c)
    assert ~~a == a


generator_lists = st.integers(1, 6).flatmap(
    lambda w: st.lists(elements(w), max_size=4).map(lambda g: (w, g)))


@given(generator_lists)
def test_atoms_partition_the_unit(case):
    w, gens = case
    alg = generate_subalgebra(gens, width=w)
    atoms = atoms_of(alg)
    assert is_antichain(atoms)[0]
    assert join_all(atoms, w) == Element.one(w)


@given(generator_lists)
def test_idempotent_and_sized_by_partition(case):
    w, gens = case
    alg = generate_subalgebra(gens, width=w)
    assert generate_subalgebra(list(alg), width=w) == alg
    assert set(generate_subalgebra(list(alg), width=w)) == set(alg)
    # Direct partition: atoms with equal membership across generators share a cell.
    classes = {tuple(g.bits >> i & 1 for g in gens) for i in range(w)}
    assert len(alg) == 2 ** len(classes)
    assert set(alg) == closure_fixpoint(gens, w)
