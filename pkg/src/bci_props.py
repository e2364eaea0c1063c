from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .algebra import FiniteAlgebra
from .errors import NotBci
from .fenyves import fenyves_profile, identity_names
from .models import PropertyWitness
from .morphisms import automorphism_group, boolean_automorphism_subgroups


@dataclass(frozen=True)
class Law:
    """A universally quantified condition over ``arity`` variables.

    ``predicate(table, zero, *variables)`` is written with numpy indexing so the same function
    evaluates one assignment (ints) or a whole grid of assignments (index arrays). It returns True
    where the law holds. Variables are scanned in lexicographic order.
    """

    name: str
    text: str
    arity: int
    predicate: Callable[..., Any]

    def holds_at(self, a: FiniteAlgebra, values: Tuple[int, ...]) -> bool:
        assert len(values) == self.arity, f"{self.name} takes {self.arity} values"
        return bool(self.predicate(a.array, a.zero, *values))

    def first_violation(self, a: FiniteAlgebra) -> Optional[Tuple[int, ...]]:
        grid = np.indices((a.order,) * self.arity)
        holds = np.broadcast_to(self.predicate(a.array, a.zero, *grid), grid.shape[1:])
        bad = np.argwhere(~holds)
        if bad.size == 0:
            return None
        return tuple(int(v) for v in bad[0])


LAWS: Dict[str, Law] = {}


def _law(name: str, text: str, arity: int) -> Callable[[Callable[..., Any]], Law]:
    def register(fn: Callable[..., Any]) -> Law:
        law = Law(name=name, text=text, arity=arity, predicate=fn)
        LAWS[name] = law
        return law
    return register


@_law("bci_1", "((x*y)*(x*z))*(z*y) = 0", 3)
def BCI_1(t, zero, x, y, z):
    return t[t[t[x, y], t[x, z]], t[z, y]] == zero


@_law("right_zero", "x*0 = x", 1)
def RIGHT_ZERO(t, zero, x):
    return t[x, zero] == x


@_law("antisymmetry", "x*y = 0 and y*x = 0 imply x = y", 2)
def ANTISYMMETRY(t, zero, x, y):
    return (t[x, y] != zero) | (t[y, x] != zero) | (x == y)


@_law("associative", "(x*y)*z = x*(y*z)", 3)
def ASSOCIATIVE(t, zero, x, y, z):
    return t[t[x, y], z] == t[x, t[y, z]]


@_law("zero_left_identity", "0*x = x", 1)
def ZERO_LEFT_IDENTITY(t, zero, x):
    return t[zero, x] == x


@_law("commutative", "x*y = y*x", 2)
def COMMUTATIVE(t, zero, x, y):
    return t[x, y] == t[y, x]


@_law("p_semisimple", "0*(0*x) = x", 1)
def P_SEMISIMPLE(t, zero, x):
    return t[zero, t[zero, x]] == x


@_law("medial", "(x*y)*(z*u) = (x*z)*(y*u)", 4)
def MEDIAL(t, zero, x, y, z, u):
    return t[t[x, y], t[z, u]] == t[t[x, z], t[y, u]]


@_law("zero_reversal", "0*(y*x) = x*y", 2)
def ZERO_REVERSAL(t, zero, x, y):
    return t[zero, t[y, x]] == t[x, y]


@_law("left_division", "(x*y)*(x*z) = z*y", 3)
def LEFT_DIVISION(t, zero, x, y, z):
    return t[t[x, y], t[x, z]] == t[z, y]


@_law("left_cancellation", "z*x = z*y implies x = y", 3)
def LEFT_CANCELLATION(t, zero, x, y, z):
    return (t[z, x] != t[z, y]) | (x == y)


@_law("zero_difference", "x*y = 0 implies x = y", 2)
def ZERO_DIFFERENCE(t, zero, x, y):
    return (t[x, y] != zero) | (x == y)


@_law("right_cancellation", "x*z = y*z implies x = y", 3)
def RIGHT_CANCELLATION(t, zero, x, y, z):
    return (t[x, z] != t[y, z]) | (x == y)


@_law("right_division", "(y*x)*(z*x) = y*z", 3)
def RIGHT_DIVISION(t, zero, x, y, z):
    return t[t[y, x], t[z, x]] == t[y, z]


@_law("zero_shift", "(x*y)*(x*z) = 0*(y*z)", 3)
def ZERO_SHIFT(t, zero, x, y, z):
    return t[t[x, y], t[x, z]] == t[zero, t[y, z]]


@_law("bck", "0*x = 0", 1)
def BCK(t, zero, x):
    return t[zero, x] == zero


@_law("exchange", "(x*y)*z = (x*z)*y", 3)
def EXCHANGE(t, zero, x, y, z):
    return t[t[x, y], z] == t[t[x, z], y]


# Externally sourced definition: quasi-associativity is taken to mean (x*y)*z <= x*(y*z) in the
# BCI order. Swap this law to audit another reading.
@_law("quasi_associative", "((x*y)*z)*(x*(y*z)) = 0", 3)
def QUASI_ASSOCIATIVE(t, zero, x, y, z):
    return t[t[t[x, y], z], t[x, t[y, z]]] == zero


@_law("row_latin", "x*y = x*z implies y = z", 3)
def ROW_LATIN(t, zero, x, y, z):
    return (t[x, y] != t[x, z]) | (y == z)


@_law("column_latin", "y*x = z*x implies y = z", 3)
def COLUMN_LATIN(t, zero, x, y, z):
    return (t[y, x] != t[z, x]) | (y == z)


def check_law(a: FiniteAlgebra, law: Law, name: Optional[str] = None) -> PropertyWitness:
    violation = law.first_violation(a)
    label = name or law.name
    if violation is None:
        return PropertyWitness.ok(label)
    return PropertyWitness.failed(label, violation, clause=law.text)


def check_laws(a: FiniteAlgebra, name: str, laws: List[Law]) -> PropertyWitness:
    """Conjunction of ``laws``; a failure cites the first failing law in list order."""
    for law in laws:
        violation = law.first_violation(a)
        if violation is not None:
            return PropertyWitness.failed(name, violation, clause=law.text)
    return PropertyWitness.ok(name)


def require_bci(a: FiniteAlgebra, operation: str) -> None:
    witness = is_bci_def1(a)
    if not witness.holds:
        raise NotBci(f"{operation} needs a BCI-algebra; {witness.clause} fails at {witness.counterexample}")


# BCI checkers ------------------------------------------------------------------


def is_bci_def1(a: FiniteAlgebra) -> PropertyWitness:
    return check_laws(a, "bci", [BCI_1, RIGHT_ZERO, ANTISYMMETRY])


def is_bci_thm1(a: FiniteAlgebra) -> PropertyWitness:
    """Second BCI checker using the x*x = 0 axiomatization; plain loops, no shared predicates."""
    t = [list(row) for row in a.table]
    n = a.order
    zero = a.zero
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[t[x][y]][t[x][z]]][t[z][y]] != zero:
            return PropertyWitness.failed("bci", (x, y, z), clause="((x*y)*(x*z))*(z*y) = 0")
    for x, y in itertools.product(range(n), repeat=2):
        if t[t[x][t[x][y]]][y] != zero:
            return PropertyWitness.failed("bci", (x, y), clause="(x*(x*y))*y = 0")
    for x in range(n):
        if t[x][x] != zero:
            return PropertyWitness.failed("bci", (x,), clause="x*x = 0")
    for x, y in itertools.product(range(n), repeat=2):
        if x != y and t[x][y] == zero and t[y][x] == zero:
            return PropertyWitness.failed("bci", (x, y), clause="x*y = 0 and y*x = 0 imply x = y")
    return PropertyWitness.ok("bci")


# Single properties ---------------------------------------------------------------


def is_associative(a: FiniteAlgebra) -> PropertyWitness:
    return check_law(a, ASSOCIATIVE)


def is_p_semisimple(a: FiniteAlgebra) -> PropertyWitness:
    return check_law(a, P_SEMISIMPLE)


def is_bck(a: FiniteAlgebra) -> PropertyWitness:
    return check_law(a, BCK)


def is_quasigroup(a: FiniteAlgebra) -> PropertyWitness:
    return check_laws(a, "quasigroup", [ROW_LATIN, COLUMN_LATIN])


def _two_sided_identities(a: FiniteAlgebra) -> np.ndarray:
    t = a.array
    ar = np.arange(a.order)
    left = (t == ar[None, :]).all(axis=1)
    right = (t == ar[:, None]).all(axis=0)
    return np.flatnonzero(left & right)


def is_loop(a: FiniteAlgebra) -> PropertyWitness:
    quasigroup = is_quasigroup(a)
    if not quasigroup.holds:
        return quasigroup.renamed("loop")
    if _two_sided_identities(a).size:
        return PropertyWitness.ok("loop")
    # no identity: report where the zero fails to be one
    t, e = a.table, a.zero
    x = next(x for x in a.elements if t[e][x] != x or t[x][e] != x)
    return PropertyWitness.failed("loop", (e, x), clause="some e has e*x = x*e = x")


def theorem6_holds(a: FiniteAlgebra) -> PropertyWitness:
    """(x*y)*z = (x*z)*y as a plain equation check; BCI status is not required."""
    return check_law(a, EXCHANGE)


def is_quasi_associative(a: FiniteAlgebra) -> PropertyWitness:
    require_bci(a, "is_quasi_associative")
    return check_law(a, QUASI_ASSOCIATIVE)


def is_boolean_group(a: FiniteAlgebra) -> PropertyWitness:
    associative = is_associative(a)
    if not associative.holds:
        return associative.renamed("boolean_group")
    loop = is_loop(a)
    if not loop.holds:
        return loop.renamed("boolean_group")
    e = int(_two_sided_identities(a)[0])
    for x in a.elements:
        if a.table[x][x] != e:
            return PropertyWitness.failed("boolean_group", (x,), clause="x*x = e")
    return PropertyWitness.ok("boolean_group")


# Equivalence bundles ---------------------------------------------------------------


def theorem2_equivalents(a: FiniteAlgebra) -> Tuple[PropertyWitness, PropertyWitness, PropertyWitness]:
    """Associativity, 0*x = x and commutativity; on a BCI-algebra all three agree."""
    require_bci(a, "theorem2_equivalents")
    return (
        check_law(a, ASSOCIATIVE),
        check_law(a, ZERO_LEFT_IDENTITY),
        check_law(a, COMMUTATIVE),
    )


P_SEMISIMPLE_BUNDLE = (
    P_SEMISIMPLE,
    MEDIAL,
    ZERO_REVERSAL,
    LEFT_DIVISION,
    LEFT_CANCELLATION,
    ZERO_DIFFERENCE,
    RIGHT_CANCELLATION,
    RIGHT_DIVISION,
    ZERO_SHIFT,
)


def p_semisimple_equivalents(a: FiniteAlgebra) -> Tuple[PropertyWitness, ...]:
    """Nine characterizations of p-semisimplicity, in the order of ``P_SEMISIMPLE_BUNDLE``."""
    require_bci(a, "p_semisimple_equivalents")
    return tuple(check_law(a, law) for law in P_SEMISIMPLE_BUNDLE)


@dataclass(frozen=True)
class Theorem5Audit:
    associative: bool
    p_semisimple: bool
    quasi_associative: bool

    @property
    def agree(self) -> bool:
        return self.associative == (self.p_semisimple and self.quasi_associative)


def theorem5_audit(a: FiniteAlgebra) -> Theorem5Audit:
    require_bci(a, "theorem5_audit")
    return Theorem5Audit(
        associative=is_associative(a).holds,
        p_semisimple=is_p_semisimple(a).holds,
        quasi_associative=check_law(a, QUASI_ASSOCIATIVE).holds,
    )


@dataclass(frozen=True)
class Theorem7Audit:
    quasigroup: bool
    p_semisimple: bool
    loop: bool
    associative: bool
    boolean_group: bool

    @property
    def agree(self) -> bool:
        return (
            self.quasigroup == self.p_semisimple
            and self.loop == self.associative
            and (not self.associative or self.boolean_group)
        )


def theorem7_audit(a: FiniteAlgebra) -> Theorem7Audit:
    require_bci(a, "theorem7_audit")
    return Theorem7Audit(
        quasigroup=is_quasigroup(a).holds,
        p_semisimple=is_p_semisimple(a).holds,
        loop=is_loop(a).holds,
        associative=is_associative(a).holds,
        boolean_group=is_boolean_group(a).holds,
    )


# Classification ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    bci: PropertyWitness
    bck: PropertyWitness
    p_semisimple: PropertyWitness
    associative: PropertyWitness
    commutative: PropertyWitness
    quasi_associative: PropertyWitness
    quasigroup: PropertyWitness
    loop: PropertyWitness
    boolean_group: PropertyWitness
    theorem7_agree: bool
    fenyves_hex: str
    fenyves_satisfied: Tuple[int, ...]
    automorphism_count: int
    boolean_subgroup_count: int

    def flags(self) -> Dict[str, bool]:
        return {
            w.property: w.holds
            for w in (
                self.bci,
                self.bck,
                self.p_semisimple,
                self.associative,
                self.commutative,
                self.quasi_associative,
                self.quasigroup,
                self.loop,
                self.boolean_group,
            )
        }

    def to_dict(self) -> Dict[str, Any]:
        names = identity_names()
        return {
            "order": self.order,
            "properties": self.flags(),
            "witnesses": {name: w.to_dict() for name, w in self._witnesses().items()},
            "theorem7_agree": self.theorem7_agree,
            "fenyves": {
                "fenyves_bci": bool(self.fenyves_satisfied),
                "hex": self.fenyves_hex,
                "satisfied": [f"F{i}" for i in self.fenyves_satisfied],
                "named": [names[i] for i in self.fenyves_satisfied if i in names],
            },
            "automorphism_count": self.automorphism_count,
            "boolean_subgroup_count": self.boolean_subgroup_count,
        }

    def _witnesses(self) -> Dict[str, PropertyWitness]:
        return {w.property: w for w in (self.bci, self.bck, self.p_semisimple, self.associative,
                                        self.commutative, self.quasi_associative, self.quasigroup,
                                        self.loop, self.boolean_group)}


def classify(a: FiniteAlgebra) -> ClassificationReport:
    """Every classical property, the Fenyves profile and automorphism counts of a BCI-algebra."""
    require_bci(a, "classify")
    profile = fenyves_profile(a)
    group = automorphism_group(a)
    return ClassificationReport(
        order=a.order,
        bci=is_bci_def1(a),
        bck=is_bck(a),
        p_semisimple=is_p_semisimple(a),
        associative=is_associative(a),
        commutative=check_law(a, COMMUTATIVE),
        quasi_associative=is_quasi_associative(a),
        quasigroup=is_quasigroup(a),
        loop=is_loop(a),
        boolean_group=is_boolean_group(a),
        theorem7_agree=theorem7_audit(a).agree,
        fenyves_hex=profile.to_hex(),
        fenyves_satisfied=tuple(profile.satisfied()),
        automorphism_count=group.size,
        boolean_subgroup_count=len(boolean_automorphism_subgroups(group)),
    )
