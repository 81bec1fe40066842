"""Shared builders for the test suite."""

from mrp.algebra import Element, Family

FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def family_of(*sets, width=None):
    """Family from bitstrings or index tuples (index tuples need ``width``)."""
    members = [Element.from_bitstring(s) if isinstance(s, str) else Element.from_indices(s, width)
               for s in sets]
    return Family(members)


def random_family(rng, atoms=(3, 5), members=(2, 5)):
    m = rng.randint(*atoms)
    k = rng.randint(*members)
    return Family(Element(rng.randint(1, (1 << m) - 1), m) for _ in range(k))
