from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Optional, Tuple


@dataclass(frozen=True)
class PropertyWitness:
    """Outcome of an exhaustive property scan.

    ``counterexample`` is the lexicographically first violating tuple; it is present exactly when
    the property fails. ``clause`` names the law that broke when a property bundles several.
    """

    property: str
    holds: bool
    counterexample: Optional[Tuple[int, ...]] = None
    clause: Optional[str] = None

    def __post_init__(self) -> None:
        assert self.holds == (self.counterexample is None), (
            f"{self.property}: holds={self.holds} but counterexample={self.counterexample}"
        )

    @classmethod
    def ok(cls, name: str) -> "PropertyWitness":
        return cls(property=name, holds=True)

    @classmethod
    def failed(cls, name: str, counterexample: Tuple[int, ...], clause: Optional[str] = None) -> "PropertyWitness":
        return cls(property=name, holds=False, counterexample=tuple(int(v) for v in counterexample), clause=clause)

    def renamed(self, name: str) -> "PropertyWitness":
        return PropertyWitness(property=name, holds=self.holds, counterexample=self.counterexample, clause=self.clause)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "property": self.property,
            "holds": self.holds,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "clause": self.clause,
        }


@dataclass(frozen=True)
class EnumerationOptions:
    order: int
    # predicate names understood by src.search.resolve_predicate ("bck", "p_semisimple", "F42", ...)
    require: FrozenSet[str] = frozenset()
    up_to_isomorphism: bool = True
    limit: Optional[int] = None
    allow_slow: bool = False

    def validate(self) -> None:
        assert isinstance(self.order, int) and self.order >= 1, "order must be >= 1"
        assert self.limit is None or self.limit >= 1, "limit must be >= 1 when set"
        assert all(isinstance(name, str) and name for name in self.require), "require holds predicate names"


@dataclass
class Parameters:
    max_order: int = 12
    slow_order: int = 4
    hard_enumeration_cap: int = 6
    canonical_max_order: int = 8
    magma_sweep_order: int = 2
    lemma1_order_max: int = 4
    holomorph_order_max: int = 4
    workers: int = 1
    allow_slow: bool = False

    def validate(self) -> None:
        assert self.max_order >= 1, "max_order must be >= 1"
        assert 1 <= self.slow_order <= self.hard_enumeration_cap, "slow_order must lie in [1, hard_enumeration_cap]"
        assert self.hard_enumeration_cap <= self.max_order, "hard_enumeration_cap cannot exceed max_order"
        assert 1 <= self.canonical_max_order <= self.max_order, "canonical_max_order must lie in [1, max_order]"
        assert 0 <= self.magma_sweep_order <= 3, "arbitrary-magma sweeps are capped at order 3"
        assert self.lemma1_order_max >= 0, "lemma1_order_max must be >= 0"
        assert self.holomorph_order_max >= 0, "holomorph_order_max must be >= 0"
        assert self.workers >= 1, "workers must be >= 1"

    def order_ceiling(self) -> int:
        """Largest order that enumerate / verify-theorems accept under the current flags."""
        return self.hard_enumeration_cap if self.allow_slow else self.slow_order


DEFAULT_PARAMETERS = Parameters()
