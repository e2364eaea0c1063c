"""Bol-Moufang (Fenyves) identities as data.

The sixty identities live in ``fenyves_identities.yaml`` as text in the dotted juxtaposition
notation and are parsed into term trees on first use. Evaluation is vectorized over all n^3
assignments with numpy fancy indexing; the same term interpreter also runs on single assignments.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import yaml

from .algebra import FiniteAlgebra, multiply
from .errors import ElementIndexError, FenyvesIndexError
from .logging_utils import setup_logger
from .models import PropertyWitness

logger = setup_logger(__name__)

CATALOG_PATH = Path(__file__).with_name("fenyves_identities.yaml")
IDENTITY_COUNT = 60
VARIABLES = ("x", "y", "z")

# Identities documented to hold in x*y = x - y over any abelian group, and in set difference.
ABELIAN_GROUP_IDENTITIES: Tuple[int, ...] = (8, 19, 29, 39, 46, 52, 54, 59)
POWERSET_IDENTITIES: Tuple[int, ...] = (5, 42, 54)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Product:
    left: "Term"
    right: "Term"


Term = Union[Var, Product]


def leaves(term: Term) -> Tuple[str, ...]:
    if isinstance(term, Var):
        return (term.name,)
    return leaves(term.left) + leaves(term.right)


def depth(term: Term) -> int:
    if isinstance(term, Var):
        return 0
    return 1 + max(depth(term.left), depth(term.right))


@dataclass(frozen=True)
class FenyvesIdentity:
    index: int
    lhs: Term
    rhs: Term
    is_associative_class: bool
    name: Optional[str] = None

    @property
    def label(self) -> str:
        return f"F{self.index}"

    @property
    def text(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


# Parsing and printing -------------------------------------------------------------


class _TermParser:
    # expr  := group ("." group)*      left-associated
    # group := atom atom*              left-associated juxtaposition
    # atom  := variable | "(" expr ")"

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = [c for c in text if not c.isspace()]
        self.pos = 0

    def _peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, message: str) -> None:
        raise ValueError(f"cannot parse term {self.text!r}: {message} at token {self.pos}")

    def parse(self) -> Term:
        term = self._expr()
        if self._peek() is not None:
            self._fail(f"unexpected {self._peek()!r}")
        return term

    def _expr(self) -> Term:
        term = self._group()
        while self._peek() == ".":
            self.pos += 1
            term = Product(term, self._group())
        return term

    def _group(self) -> Term:
        term = self._atom()
        while self._peek() is not None and (self._peek() in VARIABLES or self._peek() == "("):
            term = Product(term, self._atom())
        return term

    def _atom(self) -> Term:
        token = self._peek()
        if token in VARIABLES:
            self.pos += 1
            return Var(token)
        if token == "(":
            self.pos += 1
            term = self._expr()
            if self._peek() != ")":
                self._fail("missing ')'")
            self.pos += 1
            return term
        self._fail(f"unexpected {token!r}")
        raise AssertionError("unreachable")


def parse_term(text: str) -> Term:
    return _TermParser(text).parse()


def parse_identity(text: str) -> Tuple[Term, Term]:
    sides = text.split("=")
    if len(sides) != 2:
        raise ValueError(f"identity {text!r} must contain exactly one '='")
    return parse_term(sides[0]), parse_term(sides[1])


def _is_short(term: Term) -> bool:
    return isinstance(term, Var) or (isinstance(term.left, Var) and isinstance(term.right, Var))


def _juxtaposed(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    return term.left.name + term.right.name  # type: ignore[union-attr]


def _wrapped(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    return "(" + format_term(term) + ")"


def format_term(term: Term) -> str:
    """Print a term in the catalog notation, e.g. ``(xy.z)x`` or ``xy.zx``."""
    if isinstance(term, Var):
        return term.name
    if isinstance(term.left, Var) and isinstance(term.right, Var):
        return term.left.name + term.right.name
    if _is_short(term.left) and _is_short(term.right):
        return _juxtaposed(term.left) + "." + _juxtaposed(term.right)
    return _wrapped(term.left) + _wrapped(term.right)


# Catalog ---------------------------------------------------------------------------


def _validate_identity(index: int, lhs: Term, rhs: Term) -> None:
    for side in (lhs, rhs):
        names = leaves(side)
        if len(names) != 4 or depth(side) > 3:
            raise ValueError(f"F{index}: each side needs four variable occurrences")
        counts = sorted(names.count(v) for v in set(names))
        if counts != [1, 1, 2]:
            raise ValueError(f"F{index}: expected three variables with one repeated, got {names}")
    if leaves(lhs) != leaves(rhs):
        raise ValueError(f"F{index}: sides read {leaves(lhs)} and {leaves(rhs)}")
    if lhs == rhs:
        raise ValueError(f"F{index}: both sides are the same term")


@lru_cache(maxsize=None)
def _load_catalog(path: str) -> Tuple[FenyvesIdentity, ...]:
    with open(path, "r", encoding="utf-8") as f:
        raw: Dict[str, Any] = yaml.safe_load(f)
    nonassociative = {int(i) for i in raw["nonassociative"]}
    identities: List[FenyvesIdentity] = []
    for entry in raw["identities"]:
        index = int(entry["index"])
        lhs, rhs = parse_identity(str(entry["text"]))
        _validate_identity(index, lhs, rhs)
        identities.append(
            FenyvesIdentity(
                index=index,
                lhs=lhs,
                rhs=rhs,
                is_associative_class=index not in nonassociative,
                name=entry.get("name"),
            )
        )
    identities.sort(key=lambda ident: ident.index)
    if [ident.index for ident in identities] != list(range(1, IDENTITY_COUNT + 1)):
        raise ValueError(f"catalog {path} must list indices 1..{IDENTITY_COUNT} exactly once")
    logger.debug("Loaded %d Fenyves identities from %s", len(identities), path)
    return tuple(identities)


def identity_catalog() -> List[FenyvesIdentity]:
    return list(_load_catalog(str(CATALOG_PATH)))


def get_identity(i: int) -> FenyvesIdentity:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= IDENTITY_COUNT:
        raise FenyvesIndexError(f"Fenyves index must lie in 1..{IDENTITY_COUNT}, got {i!r}")
    return _load_catalog(str(CATALOG_PATH))[int(i) - 1]


def identity_names() -> Dict[int, str]:
    return {ident.index: ident.name for ident in identity_catalog() if ident.name}


def associative_class_indices() -> List[int]:
    return [ident.index for ident in identity_catalog() if ident.is_associative_class]


def nonassociative_indices() -> List[int]:
    return [ident.index for ident in identity_catalog() if not ident.is_associative_class]


# Evaluation ------------------------------------------------------------------------


def _evaluate(term: Term, table: np.ndarray, env: Mapping[str, Any]) -> Any:
    if isinstance(term, Var):
        return env[term.name]
    return table[_evaluate(term.left, table, env), _evaluate(term.right, table, env)]


def eval_term(term: Term, a: FiniteAlgebra, assignment: Mapping[str, int]) -> int:
    env = {str(k).lower(): v for k, v in assignment.items()}
    if isinstance(term, Var):
        if term.name not in env:
            raise KeyError(f"assignment has no value for {term.name}")
        value = env[term.name]
        if not 0 <= value < a.order:
            raise ElementIndexError(f"{term.name}={value} is not an element of an algebra of order {a.order}")
        return int(value)
    return multiply(a, eval_term(term.left, a, env), eval_term(term.right, a, env))


def _grid_env(n: int) -> Dict[str, np.ndarray]:
    x, y, z = np.indices((n, n, n))
    return {"x": x, "y": y, "z": z}


def satisfies_fenyves(a: FiniteAlgebra, i: int) -> PropertyWitness:
    identity = get_identity(i)
    env = _grid_env(a.order)
    lhs = _evaluate(identity.lhs, a.array, env)
    rhs = _evaluate(identity.rhs, a.array, env)
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return PropertyWitness.ok(identity.label)
    return PropertyWitness.failed(identity.label, tuple(bad[0]), clause=identity.text)


@dataclass(frozen=True)
class FenyvesProfile:
    bits: Tuple[bool, ...]

    def __post_init__(self) -> None:
        assert len(self.bits) == IDENTITY_COUNT, f"a profile has {IDENTITY_COUNT} bits"

    def holds(self, i: int) -> bool:
        return self.bits[get_identity(i).index - 1]

    def satisfied(self) -> List[int]:
        return [i + 1 for i, bit in enumerate(self.bits) if bit]

    def to_int(self) -> int:
        return sum(1 << i for i, bit in enumerate(self.bits) if bit)

    def to_hex(self) -> str:
        return f"{self.to_int():015x}"

    @classmethod
    def from_hex(cls, text: str) -> "FenyvesProfile":
        value = int(text, 16)
        if value >> IDENTITY_COUNT:
            raise ValueError(f"{text!r} sets bits beyond F{IDENTITY_COUNT}")
        return cls(bits=tuple(bool(value >> i & 1) for i in range(IDENTITY_COUNT)))

    def names(self) -> List[str]:
        return [f"F{i}" for i in self.satisfied()]


def fenyves_profile(a: FiniteAlgebra) -> FenyvesProfile:
    env = _grid_env(a.order)
    values: Dict[Term, np.ndarray] = {}

    def value_of(term: Term) -> np.ndarray:
        if term not in values:
            values[term] = _evaluate(term, a.array, env)
        return values[term]

    bits = tuple(
        bool(np.array_equal(value_of(ident.lhs), value_of(ident.rhs))) for ident in identity_catalog()
    )
    return FenyvesProfile(bits=bits)


def fenyves_algebra_kinds(profile: FenyvesProfile) -> List[str]:
    """Names such as "F5-algebra" for every identity the profile satisfies."""
    return [f"F{i}-algebra" for i in profile.satisfied()]


def checklist_rows() -> List[Dict[str, Any]]:
    return [
        {
            "index": ident.index,
            "identity": ident.text,
            "name": ident.name or "",
            "class": "associative" if ident.is_associative_class else "non-associative",
        }
        for ident in identity_catalog()
    ]
