"""A-holomorphs of finite algebras and the transfer checks that run on them.

For a Boolean group A of automorphisms of (G, *), the holomorph lives on A x G with
(a, x) o (b, y) = (ab, xb * y). Element (a_k, x) sits at flat index k * n + x and the identity
automorphism is always a_0, so (I, 0) is flat index 0 and every property checker runs on the flat
table unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .algebra import FiniteAlgebra, is_isomorphism, subalgebra
from .bci_props import is_associative, is_bci_def1, is_bck, is_p_semisimple, require_bci
from .errors import UnsupportedIndex
from .fenyves import associative_class_indices, fenyves_profile, satisfies_fenyves
from .logging_utils import setup_logger
from .models import PropertyWitness
from .morphisms import AutomorphismGroup, Bijection, is_lambda_regular, is_rho_regular

logger = setup_logger(__name__)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class HolomorphElement:
    auto_index: int
    elem: int


@dataclass(frozen=True)
class HolomorphAlgebra:
    base: FiniteAlgebra
    autos: AutomorphismGroup
    algebra: FiniteAlgebra

    @property
    def order(self) -> int:
        return self.algebra.order

    @property
    def zero(self) -> HolomorphElement:
        return HolomorphElement(0, self.base.zero)

    def flat_index(self, element: HolomorphElement) -> int:
        n = self.base.order
        if not (0 <= element.auto_index < self.autos.size and 0 <= element.elem < n):
            raise ValueError(f"{element} is not an element of a holomorph of shape {self.autos.size}x{n}")
        return element.auto_index * n + element.elem

    def element(self, flat: int) -> HolomorphElement:
        k, x = divmod(int(flat), self.base.order)
        if not 0 <= k < self.autos.size:
            raise ValueError(f"flat index {flat} is outside [0, {self.order})")
        return HolomorphElement(k, x)

    def product(self, left: HolomorphElement, right: HolomorphElement) -> HolomorphElement:
        """The defining product computed from the base and the automorphisms, not the flat table."""
        alpha = self.autos.elements[left.auto_index]
        beta = self.autos.elements[right.auto_index]
        composed = self.autos.index_of()[alpha.compose(beta)]
        return HolomorphElement(composed, self.base.table[beta.image[left.elem]][right.elem])

    def product_law_holds(self) -> bool:
        for p in range(self.order):
            for q in range(self.order):
                expected = self.flat_index(self.product(self.element(p), self.element(q)))
                if self.algebra.table[p][q] != expected:
                    return False
        return True

    def right_zero_probe(self) -> bool:
        """(a, x) o (I, 0) = (a, x) for every element."""
        z = self.flat_index(self.zero)
        return all(self.algebra.table[p][z] == p for p in range(self.order))


def _validate_autos(base: FiniteAlgebra, autos: AutomorphismGroup) -> None:
    autos.verify(base)
    autos.require_boolean()


def _composition_table(autos: AutomorphismGroup) -> np.ndarray:
    index = autos.index_of()
    return np.array(
        [[index[f.compose(g)] for g in autos.elements] for f in autos.elements], dtype=np.intp
    )


def _images(autos: AutomorphismGroup) -> np.ndarray:
    return np.array([b.image for b in autos.elements], dtype=np.intp)


def _auto_label(k: int) -> str:
    return "I" if k == 0 else f"d{k}"


def build_holomorph(base: FiniteAlgebra, autos: AutomorphismGroup) -> HolomorphAlgebra:
    if base.zero != 0:
        raise ValueError("holomorphs are built over tables whose zero is index 0; normalize_zero first")
    _validate_autos(base, autos)
    n = base.order
    k = autos.size
    t = base.array
    images = _images(autos)
    comp = _composition_table(autos)
    # moved[b, x, y] = x b * y
    moved = t[images[:, :, None], np.arange(n)[None, None, :]]
    flat = comp[:, None, :, None] * n + moved.transpose(1, 0, 2)[None, :, :, :]
    table = flat.reshape(k * n, k * n)
    labels = tuple(f"({_auto_label(a)},{base.label(x)})" for a in range(k) for x in range(n))
    algebra = FiniteAlgebra.from_array(table, zero=0, labels=labels)
    logger.debug("Built holomorph base_order=%d autos=%d order=%d", n, k, algebra.order)
    return HolomorphAlgebra(base=base, autos=autos, algebra=algebra)


def diagonal_embedding(h: HolomorphAlgebra) -> Tuple[int, ...]:
    """Flat indices of (I, x) for each base element x."""
    return tuple(h.flat_index(HolomorphElement(0, x)) for x in range(h.base.order))


def provenance(h: HolomorphAlgebra, base_name: str = "base") -> List[str]:
    """Header comment lines naming the base and the automorphisms used."""
    lines = [f"holomorph of {base_name} (order {h.base.order}) by {h.autos.size} automorphism(s)"]
    for k, b in enumerate(h.autos.elements):
        lines.append(f"{_auto_label(k)} = {list(b.image)}")
    return lines


# theorem9_condition ----------------------------------------------------------------


def _theorem9_scan(base: FiniteAlgebra, autos: AutomorphismGroup) -> PropertyWitness:
    n = base.order
    t = base.array
    images = _images(autos)
    x, y, z, d, g = np.indices((n, n, n, autos.size, autos.size))
    lhs = t[t[t[images[d, x], images[d, y]], t[x, images[g, z]]], t[z, y]]
    bad = np.argwhere(lhs != base.zero)
    if bad.size == 0:
        return PropertyWitness.ok("theorem9_condition")
    return PropertyWitness.failed(
        "theorem9_condition", tuple(bad[0]), clause="[(xd*yd)*(x*zg)]*(z*y) = 0"
    )


def theorem9_condition(base: FiniteAlgebra, autos: AutomorphismGroup) -> PropertyWitness:
    """Scan (x, y, z, d, g) lexicographically; d and g are positions in ``autos``."""
    require_bci(base, "theorem9_condition")
    _validate_autos(base, autos)
    return _theorem9_scan(base, autos)


# Agreement reports ---------------------------------------------------------------


@dataclass(frozen=True)
class AgreementReport:
    """Both sides of an equivalence, plus any side checks that must also hold."""

    claim: str
    left_label: str
    left: bool
    right_label: str
    right: bool
    applicable: bool = True
    checks: Tuple[Tuple[str, bool], ...] = ()
    note: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.left == self.right and all(ok for _, ok in self.checks)

    @property
    def status(self) -> str:
        if not self.applicable:
            return NOT_APPLICABLE
        return PASS if self.agree else FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "status": self.status,
            self.left_label: self.left,
            self.right_label: self.right,
            "agree": self.agree if self.applicable else NOT_APPLICABLE,
            "checks": {name: ok for name, ok in self.checks},
            "note": self.note,
            "details": self.details,
        }


def _witness_details(*witnesses: PropertyWitness) -> Dict[str, Any]:
    return {w.property: w.to_dict() for w in witnesses}


def verify_theorem9(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    condition = theorem9_condition(base, autos)
    h = build_holomorph(base, autos)
    bci = is_bci_def1(h.algebra).renamed("holomorph_bci")
    return AgreementReport(
        claim="theorem9",
        left_label="holomorph_bci",
        left=bci.holds,
        right_label="condition",
        right=condition.holds,
        details=_witness_details(bci, condition),
    )


def verify_theorem10(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    """Works on any magma base: holomorph BCI iff base BCI and theorem9_condition holds."""
    h = build_holomorph(base, autos)
    holo_bci = is_bci_def1(h.algebra).renamed("holomorph_bci")
    base_bci = is_bci_def1(base).renamed("base_bci")
    condition = _theorem9_scan(base, autos)
    checks: List[Tuple[str, bool]] = []
    if holo_bci.holds:
        diagonal = diagonal_embedding(h)
        closed = all(
            h.algebra.table[p][q] == h.flat_index(HolomorphElement(0, base.table[x][y]))
            for x, p in enumerate(diagonal)
            for y, q in enumerate(diagonal)
        )
        isomorphic = closed and is_isomorphism(
            base, subalgebra(h.algebra, diagonal).without_labels(), list(range(base.order))
        )
        checks.append(("diagonal_isomorphic", isomorphic))
    return AgreementReport(
        claim="theorem10",
        left_label="holomorph_bci",
        left=holo_bci.holds,
        right_label="base_bci_and_condition",
        right=base_bci.holds and condition.holds,
        checks=tuple(checks),
        details=_witness_details(holo_bci, base_bci, condition),
    )


def _require_bci_pair(base: FiniteAlgebra, h: HolomorphAlgebra, operation: str) -> None:
    require_bci(base, operation)
    require_bci(h.algebra, f"{operation} (holomorph)")


def verify_theorem11(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    h = build_holomorph(base, autos)
    _require_bci_pair(base, h, "verify_theorem11")
    holo = is_p_semisimple(h.algebra).renamed("holomorph_p_semisimple")
    mine = is_p_semisimple(base).renamed("base_p_semisimple")
    return AgreementReport(
        claim="theorem11",
        left_label="holomorph_p_semisimple",
        left=holo.holds,
        right_label="base_p_semisimple",
        right=mine.holds,
        details=_witness_details(holo, mine),
    )


def verify_theorem12(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    h = build_holomorph(base, autos)
    _require_bci_pair(base, h, "verify_theorem12")
    diagonal = subalgebra(h.algebra, diagonal_embedding(h))
    diag = is_bck(diagonal).renamed("diagonal_bck")
    mine = is_bck(base).renamed("base_bck")
    return AgreementReport(
        claim="theorem12",
        left_label="diagonal_bck",
        left=diag.holds,
        right_label="base_bck",
        right=mine.holds,
        details=_witness_details(diag, mine),
    )


def verify_theorem13(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    """Associativity transfers, and with it every associative-class Fenyves identity."""
    h = build_holomorph(base, autos)
    _require_bci_pair(base, h, "verify_theorem13")
    holo = is_associative(h.algebra).renamed("holomorph_associative")
    mine = is_associative(base).renamed("base_associative")
    holo_profile = fenyves_profile(h.algebra)
    base_profile = fenyves_profile(base)
    checks = tuple(
        (f"F{i}", holo_profile.holds(i) == base_profile.holds(i)) for i in associative_class_indices()
    )
    return AgreementReport(
        claim="theorem13",
        left_label="holomorph_associative",
        left=holo.holds,
        right_label="base_associative",
        right=mine.holds,
        checks=checks,
        details=_witness_details(holo, mine),
    )


def _corollary(claim: str, label: str, base: FiniteAlgebra, autos: AutomorphismGroup, prop) -> AgreementReport:
    h = build_holomorph(base, autos)
    holo_side = is_bci_def1(h.algebra).holds and prop(h.algebra).holds
    condition = _theorem9_scan(base, autos)
    base_side = is_bci_def1(base).holds and prop(base).holds and condition.holds
    return AgreementReport(
        claim=claim,
        left_label=f"holomorph_{label}",
        left=holo_side,
        right_label=f"base_{label}_and_condition",
        right=base_side,
        details=_witness_details(condition),
    )


def verify_corollary1(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    """Holomorph is a p-semisimple BCI-algebra iff the base is and the condition holds."""
    return _corollary("corollary1", "p_semisimple_bci", base, autos, is_p_semisimple)


def verify_corollary2(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    return _corollary("corollary2", "bck", base, autos, is_bck)


def verify_corollary4(base: FiniteAlgebra, autos: AutomorphismGroup) -> AgreementReport:
    return _corollary("corollary4", "associative_bci", base, autos, is_associative)


# Fenyves transfer ------------------------------------------------------------------


@dataclass(frozen=True)
class TransferRule:
    theorem: int
    indices: Tuple[int, ...]
    requires: FrozenSet[str]


TRANSFER_RULES: Tuple[TransferRule, ...] = (
    TransferRule(14, (27, 38), frozenset({"rho", "involution"})),
    TransferRule(15, (30, 40, 50, 53, 55, 56, 58), frozenset({"lambda", "rho", "involution"})),
    TransferRule(16, (4, 5, 6, 10, 20, 21, 25, 31), frozenset({"lambda", "involution"})),
    TransferRule(17, (42, 54), frozenset()),
)


def transfer_rule(i: int) -> TransferRule:
    for rule in TRANSFER_RULES:
        if i in rule.indices:
            return rule
    raise UnsupportedIndex(f"F{i} is not covered by any holomorph transfer theorem")


def supported_transfer_indices() -> List[int]:
    return sorted(i for rule in TRANSFER_RULES for i in rule.indices)


def _precondition_failure(base: FiniteAlgebra, d: Bijection, requires: FrozenSet[str]) -> Optional[str]:
    if "involution" in requires and not d.is_involution():
        return "not an involution"
    if "lambda" in requires and not is_lambda_regular(base, d):
        return "not lambda-regular"
    if "rho" in requires and not is_rho_regular(base, d):
        return "not rho-regular"
    return None


def verify_fenyves_transfer(base: FiniteAlgebra, autos: AutomorphismGroup, i: int) -> AgreementReport:
    rule = transfer_rule(i)
    h = build_holomorph(base, autos)
    _require_bci_pair(base, h, "verify_fenyves_transfer")
    note = None
    for k, d in enumerate(autos.elements):
        if d.is_identity():
            continue
        failure = _precondition_failure(base, d, rule.requires)
        if failure is not None:
            note = f"{_auto_label(k)} {failure}"
            break
    holo = satisfies_fenyves(h.algebra, i)
    mine = satisfies_fenyves(base, i)
    return AgreementReport(
        claim=f"theorem{rule.theorem}:F{i}",
        left_label="holomorph_holds",
        left=holo.holds,
        right_label="base_holds",
        right=mine.holds,
        applicable=note is None,
        note=note,
        details={"theorem": rule.theorem, "index": i, "requires": sorted(rule.requires)},
    )
