import pytest

from src.algebra import (
    FiniteAlgebra,
    chain_algebra,
    cyclic_difference,
    group_difference,
    is_isomorphism,
    left_translation,
    multiply,
    normalize_zero,
    powerset_algebra,
    relabel,
    right_translation,
    subalgebra,
    trivial_algebra,
)
from src.errors import ElementIndexError


def test_construction_validates_shape_and_entries():
    a = FiniteAlgebra(table=((0, 0), (1, 0)))
    assert a.order == 2
    assert list(a.elements) == [0, 1]
    with pytest.raises(ValueError):
        FiniteAlgebra(table=((0, 0), (1,)))
    with pytest.raises(ElementIndexError):
        FiniteAlgebra(table=((0, 2), (1, 0)))
    with pytest.raises(ElementIndexError):
        FiniteAlgebra(table=((0, 0), (1, 0)), zero=5)
    with pytest.raises(ValueError):
        FiniteAlgebra(table=())
    with pytest.raises(ValueError):
        FiniteAlgebra(table=((0, 0), (1, 0)), labels=("a",))


def test_array_is_read_only():
    a = cyclic_difference(3)
    assert not a.array.flags.writeable
    assert a.array.shape == (3, 3)


def test_multiply_and_translations():
    z3 = cyclic_difference(3)
    assert multiply(z3, 1, 2) == 2
    assert left_translation(z3, 1).image == (1, 0, 2)
    assert right_translation(z3, 1).image == (2, 0, 1)
    assert right_translation(z3, 1)(0) == 2
    with pytest.raises(ElementIndexError):
        multiply(z3, 3, 0)
    with pytest.raises(IndexError):
        left_translation(z3, -1)


def test_relabel_and_is_isomorphism():
    z3 = cyclic_difference(3)
    assert relabel(z3, [0, 2, 1]).table == z3.table

    chain = chain_algebra(3)
    moved = relabel(chain, [0, 2, 1])
    assert moved.table == ((0, 0, 0), (1, 0, 2), (2, 0, 0))
    assert is_isomorphism(chain, moved, [0, 2, 1])
    assert not is_isomorphism(chain, moved, [0, 1, 2])
    assert not is_isomorphism(chain, z3, [0, 1, 2])
    with pytest.raises(ValueError):
        relabel(chain, [0, 0, 1])


def test_normalize_zero_moves_zero_to_index_zero():
    shifted = FiniteAlgebra(table=((1, 0), (0, 1)), zero=1)
    normal = normalize_zero(shifted)
    assert normal.zero == 0
    assert normal.table == ((0, 1), (1, 0))
    assert normalize_zero(normal) is normal


def test_subalgebra():
    p2 = powerset_algebra(2)
    sub = subalgebra(p2, [1, 0])
    assert sub.table == ((0, 0), (1, 0))
    assert sub.labels == ("{}", "{a}")
    z3 = cyclic_difference(3)
    with pytest.raises(ValueError):
        subalgebra(z3, [0, 1])
    with pytest.raises(ValueError):
        subalgebra(z3, [1, 2])


def test_named_constructors():
    p2 = powerset_algebra(2)
    assert p2.table == ((0, 0, 0, 0), (1, 0, 1, 0), (2, 2, 0, 0), (3, 2, 1, 0))
    assert p2.labels == ("{}", "{a}", "{b}", "{a,b}")

    klein = group_difference((2, 2))
    assert klein.table == ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    assert klein.label(1) == "(0,1)"

    assert cyclic_difference(1) == trivial_algebra()
    assert chain_algebra(2).table == ((0, 0), (1, 0))
    assert group_difference((3,)).table == cyclic_difference(3).table


def test_flat_and_without_labels():
    p1 = powerset_algebra(1)
    assert p1.flat() == (0, 0, 1, 0)
    assert FiniteAlgebra.from_flat(2, p1.flat()) == p1.without_labels()
    assert p1.without_labels().labels is None
    assert p1.label(1) == "{a}"
    assert chain_algebra(2).label(1) == "1"
