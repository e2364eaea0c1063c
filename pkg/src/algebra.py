from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import ElementIndexError

Table = Tuple[Tuple[int, ...], ...]

_SET_LETTERS = "abcdefghijkl"


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite magma with a distinguished zero, stored as its Cayley table.

    ``table[x][y]`` is ``x * y``. Nothing about BCI is assumed here; every axiom is a computed
    property (see ``src.bci_props``). Rows are left translations and columns right translations.
    """

    table: Table
    zero: int = 0
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(rows)
        if n < 1:
            raise ValueError("an algebra needs at least one element")
        for r, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {r} has {len(row)} entries, expected {n}")
            for c, value in enumerate(row):
                if not 0 <= value < n:
                    raise ElementIndexError(f"table[{r}][{c}] = {value} is outside [0, {n})")
        if not 0 <= int(self.zero) < n:
            raise ElementIndexError(f"zero {self.zero} is outside [0, {n})")
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "zero", int(self.zero))
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != n:
                raise ValueError(f"expected {n} labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.intp)
        arr.setflags(write=False)
        return arr

    @classmethod
    def from_array(cls, arr: np.ndarray, zero: int = 0, labels: Optional[Sequence[str]] = None) -> "FiniteAlgebra":
        return cls(table=tuple(tuple(int(v) for v in row) for row in np.asarray(arr)), zero=zero,
                   labels=tuple(labels) if labels is not None else None)

    @classmethod
    def from_flat(cls, order: int, values: Sequence[int], zero: int = 0) -> "FiniteAlgebra":
        assert len(values) == order * order, f"expected {order * order} entries, got {len(values)}"
        return cls(table=tuple(tuple(values[r * order:(r + 1) * order]) for r in range(order)), zero=zero)

    def flat(self) -> Tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def label(self, x: int) -> str:
        _check_index(self, x)
        return self.labels[x] if self.labels is not None else str(x)

    def without_labels(self) -> "FiniteAlgebra":
        if self.labels is None:
            return self
        return FiniteAlgebra(table=self.table, zero=self.zero)


class TranslationKind(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class TranslationMap:
    kind: TranslationKind
    base: int
    image: Tuple[int, ...]

    def __call__(self, t: int) -> int:
        return self.image[t]


def _check_index(a: FiniteAlgebra, x: int) -> None:
    if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < a.order:
        raise ElementIndexError(f"element {x!r} is not an index of an algebra of order {a.order}")


def multiply(a: FiniteAlgebra, x: int, y: int) -> int:
    _check_index(a, x)
    _check_index(a, y)
    return a.table[x][y]


def left_translation(a: FiniteAlgebra, x: int) -> TranslationMap:
    _check_index(a, x)
    return TranslationMap(kind=TranslationKind.LEFT, base=int(x), image=a.table[x])


def right_translation(a: FiniteAlgebra, x: int) -> TranslationMap:
    _check_index(a, x)
    return TranslationMap(kind=TranslationKind.RIGHT, base=int(x), image=tuple(row[x] for row in a.table))


def relabel(a: FiniteAlgebra, perm: Sequence[int]) -> FiniteAlgebra:
    """Isomorphic copy of ``a`` in which old element ``i`` is renamed ``perm[i]``."""
    p = np.asarray(perm, dtype=np.intp)
    n = a.order
    if p.shape != (n,) or sorted(p.tolist()) != list(range(n)):
        raise ValueError(f"relabeling {list(perm)} is not a permutation of [0, {n})")
    inverse = np.argsort(p)
    table = p[a.array[np.ix_(inverse, inverse)]]
    labels = None
    if a.labels is not None:
        labels = tuple(a.labels[i] for i in inverse.tolist())
    return FiniteAlgebra.from_array(table, zero=int(p[a.zero]), labels=labels)


def normalize_zero(a: FiniteAlgebra) -> FiniteAlgebra:
    """Swap the zero into index 0; every other element keeps its index."""
    if a.zero == 0:
        return a
    perm = list(range(a.order))
    perm[0], perm[a.zero] = a.zero, 0
    return relabel(a, perm)


def subalgebra(a: FiniteAlgebra, elements: Iterable[int]) -> FiniteAlgebra:
    """Restrict ``a`` to a closed subset containing its zero, reindexed in ascending order."""
    members = sorted({int(x) for x in elements})
    for x in members:
        _check_index(a, x)
    if a.zero not in members:
        raise ValueError(f"subset {members} does not contain the zero {a.zero}")
    position = {x: i for i, x in enumerate(members)}
    rows = []
    for x in members:
        row = []
        for y in members:
            product = a.table[x][y]
            if product not in position:
                raise ValueError(f"subset {members} is not closed: {x}*{y}={product}")
            row.append(position[product])
        rows.append(tuple(row))
    labels = tuple(a.labels[x] for x in members) if a.labels is not None else None
    return FiniteAlgebra(table=tuple(rows), zero=position[a.zero], labels=labels)


def is_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra, f: Sequence[int]) -> bool:
    if a.order != b.order or len(f) != a.order:
        return False
    mapping = np.asarray(f, dtype=np.intp)
    if sorted(mapping.tolist()) != list(range(a.order)) or mapping[a.zero] != b.zero:
        return False
    return bool(np.array_equal(mapping[a.array], b.array[np.ix_(mapping, mapping)]))


# Named examples ------------------------------------------------------------


def trivial_algebra() -> FiniteAlgebra:
    return FiniteAlgebra(table=((0,),))


def powerset_algebra(k: int) -> FiniteAlgebra:
    """Subsets of a k-element set under set difference, zero = the empty set.

    Element i is the subset whose members are the set bits of i.
    """
    assert 0 <= k <= len(_SET_LETTERS), f"k must lie in [0, {len(_SET_LETTERS)}]"
    n = 1 << k
    table = tuple(tuple(x & ~y for y in range(n)) for x in range(n))
    labels = []
    for x in range(n):
        members = [_SET_LETTERS[b] for b in range(k) if x >> b & 1]
        labels.append("{" + ",".join(members) + "}")
    return FiniteAlgebra(table=table, labels=tuple(labels))


def cyclic_difference(n: int) -> FiniteAlgebra:
    assert n >= 1, "n must be >= 1"
    return FiniteAlgebra(table=tuple(tuple((x - y) % n for y in range(n)) for x in range(n)))


def group_difference(moduli: Sequence[int]) -> FiniteAlgebra:
    """x * y = x - y on the abelian group Z_m1 x ... x Z_mk (first factor most significant)."""
    moduli = tuple(int(m) for m in moduli)
    assert moduli and all(m >= 1 for m in moduli), "moduli must be positive"
    members = list(itertools.product(*(range(m) for m in moduli)))
    position = {digits: i for i, digits in enumerate(members)}
    table = []
    for x in members:
        table.append(tuple(
            position[tuple((dx - dy) % m for dx, dy, m in zip(x, y, moduli))] for y in members
        ))
    labels = None
    if len(moduli) > 1:
        labels = tuple("(" + ",".join(str(d) for d in digits) + ")" for digits in members)
    return FiniteAlgebra(table=tuple(table), labels=labels)


def chain_algebra(n: int) -> FiniteAlgebra:
    """Truncated subtraction max(x - y, 0) on 0..n-1."""
    assert n >= 1, "n must be >= 1"
    return FiniteAlgebra(table=tuple(tuple(max(x - y, 0) for y in range(n)) for x in range(n)))
