from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from .algebra import FiniteAlgebra, left_translation, right_translation
from .errors import NotAutomorphism, NotAutomorphismGroup, NotBooleanGroup
from .logging_utils import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True, order=True)
class Bijection:
    """A permutation of element indices acting on the right: ``x.compose`` reads "x then other"."""

    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{list(image)} is not a permutation of [0, {len(image)})")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> "Bijection":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "Bijection":
        image = list(range(n))
        image[i], image[j] = image[j], image[i]
        return cls(tuple(image))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.image, dtype=np.intp)

    def compose(self, other: "Bijection") -> "Bijection":
        assert self.size == other.size, "bijections must act on the same set"
        return Bijection(tuple(other.image[v] for v in self.image))

    def inverse(self) -> "Bijection":
        inverse = [0] * self.size
        for x, v in enumerate(self.image):
            inverse[v] = x
        return Bijection(tuple(inverse))

    def is_identity(self) -> bool:
        return all(x == v for x, v in enumerate(self.image))

    def order(self) -> int:
        seen = [False] * self.size
        result = 1
        for start in range(self.size):
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.image[x]
                length += 1
            if length:
                result = math.lcm(result, length)
        return result

    def is_involution(self) -> bool:
        return self.order() == 2

    def to_sympy(self) -> Permutation:
        return Permutation(list(self.image))


def _compose_maps(first: Sequence[int], then: Sequence[int]) -> Tuple[int, ...]:
    return tuple(then[v] for v in first)


@dataclass(frozen=True)
class Autotopism:
    u: Bijection
    v: Bijection
    w: Bijection

    def holds(self, a: FiniteAlgebra) -> bool:
        """xU * yV = (x*y)W for every pair."""
        t = a.array
        return bool(np.array_equal(t[np.ix_(self.u.as_array(), self.v.as_array())], self.w.as_array()[t]))


def _check_size(a: FiniteAlgebra, b: Bijection) -> None:
    if b.size != a.order:
        raise ValueError(f"bijection on {b.size} points cannot act on an algebra of order {a.order}")


def is_automorphism(a: FiniteAlgebra, b: Bijection) -> bool:
    """(x*y)A = xA * yA for all pairs, and A keeps the zero in place."""
    _check_size(a, b)
    if b.image[a.zero] != a.zero:
        return False
    return Autotopism(b, b, b).holds(a)


@dataclass(frozen=True)
class AutomorphismGroup:
    elements: Tuple[Bijection, ...]

    def __post_init__(self) -> None:
        assert self.elements, "a group has at least the identity"
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @property
    def degree(self) -> int:
        return self.elements[0].size

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, b: object) -> bool:
        return b in self.elements

    def index_of(self) -> Dict[Bijection, int]:
        return {b: i for i, b in enumerate(self.elements)}

    def is_closed(self) -> bool:
        members = set(self.elements)
        if Bijection.identity(self.degree) not in members:
            return False
        for f in self.elements:
            if f.inverse() not in members:
                return False
            for g in self.elements:
                if f.compose(g) not in members:
                    return False
        return True

    def is_boolean(self) -> bool:
        if any(not (b.is_identity() or b.is_involution()) for b in self.elements):
            return False
        return all(f.compose(g) == g.compose(f) for f in self.elements for g in self.elements)

    def verify(self, a: FiniteAlgebra) -> None:
        """Raise NotAutomorphismGroup unless this is a group of automorphisms of ``a``."""
        for b in self.elements:
            if b.size != a.order or not is_automorphism(a, b):
                raise NotAutomorphismGroup(f"{list(b.image)} is not an automorphism of the base algebra")
        if not self.is_closed():
            raise NotAutomorphismGroup("set of automorphisms is not closed under composition and inverses")
        generated = PermutationGroup([b.to_sympy() for b in self.elements])
        if generated.order() != self.size:
            raise NotAutomorphismGroup(
                f"elements generate a group of order {generated.order()}, expected {self.size}"
            )

    def require_boolean(self) -> None:
        if not self.is_boolean():
            raise NotBooleanGroup("automorphism group is not an elementary abelian 2-group")


def automorphism_group(a: FiniteAlgebra) -> AutomorphismGroup:
    """All zero-fixing automorphisms, by point-by-point backtracking with forward checks."""
    n = a.order
    t = a.table
    zero = a.zero
    points = [zero] + [x for x in range(n) if x != zero]
    image = [-1] * n
    used = [False] * n
    found: List[Tuple[int, ...]] = []

    def consistent(assigned: Sequence[int]) -> bool:
        for x in assigned:
            for y in assigned:
                xy = t[x][y]
                required = t[image[x]][image[y]]
                if image[xy] >= 0:
                    if image[xy] != required:
                        return False
                elif used[required]:
                    # required image already taken by another point
                    return False
        return True

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(image))
            return
        point = points[k]
        for candidate in range(n):
            if used[candidate]:
                continue
            image[point] = candidate
            used[candidate] = True
            if consistent(points[: k + 1]):
                extend(k + 1)
            image[point] = -1
            used[candidate] = False

    image[zero] = zero
    used[zero] = True
    if consistent([zero]):
        extend(1)
    group = AutomorphismGroup(tuple(Bijection(img) for img in found))
    logger.debug("Automorphism search order=%d found=%d", n, group.size)
    return group


def subgroup_generated(degree: int, generators: Iterable[Bijection]) -> AutomorphismGroup:
    members = {Bijection.identity(degree)}
    frontier = list(members)
    gens = list(generators)
    while frontier:
        grown = []
        for f in frontier:
            for g in gens:
                h = f.compose(g)
                if h not in members:
                    members.add(h)
                    grown.append(h)
        frontier = grown
    return AutomorphismGroup(tuple(members))


def boolean_automorphism_subgroups(g: AutomorphismGroup) -> List[AutomorphismGroup]:
    """Every elementary abelian 2-subgroup of ``g``, trivial group included.

    Grown breadth-first: a Boolean subgroup S and a commuting involution t outside it give S u St.
    Ordered by size, then by the sorted element images.
    """
    identity = Bijection.identity(g.degree)
    involutions = [b for b in g.elements if b.is_involution()]
    start: FrozenSet[Bijection] = frozenset({identity})
    seen = {start}
    frontier = [start]
    while frontier:
        grown = []
        for sub in frontier:
            for inv in involutions:
                if inv in sub or any(inv.compose(s) != s.compose(inv) for s in sub):
                    continue
                bigger = sub | {s.compose(inv) for s in sub}
                if bigger not in seen:
                    seen.add(bigger)
                    grown.append(bigger)
        frontier = grown
    subgroups = [AutomorphismGroup(tuple(sub)) for sub in seen]
    subgroups.sort(key=lambda s: (s.size, [b.image for b in s.elements]))
    for sub in subgroups:
        assert sub.is_boolean() and sub.is_closed(), "Boolean subgroup search produced a non-Boolean set"
    return subgroups


# Regular bijections ---------------------------------------------------------------


def is_lambda_regular(a: FiniteAlgebra, d: Bijection) -> bool:
    """xd * y = (x*y)d for all x, y."""
    _check_size(a, d)
    return Autotopism(d, Bijection.identity(a.order), d).holds(a)


def is_rho_regular(a: FiniteAlgebra, d: Bijection) -> bool:
    """x * yd = (x*y)d for all x, y."""
    _check_size(a, d)
    return Autotopism(Bijection.identity(a.order), d, d).holds(a)


def is_mu_regular(a: FiniteAlgebra, d: Bijection) -> bool:
    """xd * y = x * yd for all x, y (self-adjoint form)."""
    _check_size(a, d)
    t = a.array
    p = d.as_array()
    return bool(np.array_equal(t[p, :], t[:, p]))


@dataclass(frozen=True)
class EquivalenceTriple:
    predicate: bool
    first_form: bool
    second_form: bool

    @property
    def agree(self) -> bool:
        return self.predicate == self.first_form == self.second_form


@dataclass(frozen=True)
class Lemma1Report:
    """Regularity predicates next to their translation-map formulations.

    lambda_: dR_x = R_x d and L_(xd) = L_x d for all x
    rho:     dL_x = L_x d and R_(xd) = R_x d for all x
    mu:      dR_x = R_(xd) and L_(xd) = dL_x for all x
    """

    lambda_: EquivalenceTriple
    rho: EquivalenceTriple
    mu: EquivalenceTriple

    @property
    def agree(self) -> bool:
        return self.lambda_.agree and self.rho.agree and self.mu.agree


def lemma1_check(a: FiniteAlgebra, d: Bijection) -> Lemma1Report:
    _check_size(a, d)
    n = a.order
    lefts = [left_translation(a, x).image for x in range(n)]
    rights = [right_translation(a, x).image for x in range(n)]
    p = d.image
    return Lemma1Report(
        lambda_=EquivalenceTriple(
            predicate=is_lambda_regular(a, d),
            first_form=all(_compose_maps(p, rights[x]) == _compose_maps(rights[x], p) for x in range(n)),
            second_form=all(lefts[p[x]] == _compose_maps(lefts[x], p) for x in range(n)),
        ),
        rho=EquivalenceTriple(
            predicate=is_rho_regular(a, d),
            first_form=all(_compose_maps(p, lefts[x]) == _compose_maps(lefts[x], p) for x in range(n)),
            second_form=all(rights[p[x]] == _compose_maps(rights[x], p) for x in range(n)),
        ),
        mu=EquivalenceTriple(
            predicate=is_mu_regular(a, d),
            first_form=all(_compose_maps(p, rights[x]) == rights[p[x]] for x in range(n)),
            second_form=all(lefts[p[x]] == _compose_maps(p, lefts[x]) for x in range(n)),
        ),
    )


@dataclass(frozen=True)
class Lemma2Report:
    right: bool  # R_y A = A R_(yA) for all y
    left: bool  # L_x A = A L_(xA) for all x

    @property
    def holds(self) -> bool:
        return self.right and self.left


def lemma2_check(a: FiniteAlgebra, automorphism: Bijection) -> Lemma2Report:
    if not is_automorphism(a, automorphism):
        raise NotAutomorphism(f"{list(automorphism.image)} is not an automorphism")
    n = a.order
    lefts = [left_translation(a, x).image for x in range(n)]
    rights = [right_translation(a, x).image for x in range(n)]
    p = automorphism.image
    return Lemma2Report(
        right=all(_compose_maps(rights[y], p) == _compose_maps(p, rights[p[y]]) for y in range(n)),
        left=all(_compose_maps(lefts[x], p) == _compose_maps(p, lefts[p[x]]) for x in range(n)),
    )


def all_bijections(n: int) -> List[Bijection]:
    """Every permutation of [0, n), lexicographic."""
    return [Bijection(p) for p in itertools.permutations(range(n))]
