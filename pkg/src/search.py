"""Enumeration of small BCI-algebras and the corpus-wide theorem sweep.

Tables are filled cell by cell in row-major order over the cells not forced by x*x = 0 and
x*0 = x. After every assignment the partial table is scanned for violations of identities that
hold in every BCI-algebra; a complete table is kept only if ``is_bci_def1`` accepts it.
"""
from __future__ import annotations

import hashlib
import itertools
import multiprocessing
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .algebra import FiniteAlgebra
from .bci_props import (
    QUASI_ASSOCIATIVE,
    check_law,
    is_associative,
    is_bci_def1,
    is_bci_thm1,
    is_bck,
    is_boolean_group,
    is_loop,
    is_p_semisimple,
    is_quasigroup,
    p_semisimple_equivalents,
    theorem2_equivalents,
    theorem5_audit,
    theorem6_holds,
    theorem7_audit,
)
from .errors import NotBci, OrderTooLarge
from .fenyves import associative_class_indices, fenyves_profile, nonassociative_indices, satisfies_fenyves
from .holomorph import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    AgreementReport,
    supported_transfer_indices,
    transfer_rule,
    verify_corollary1,
    verify_corollary2,
    verify_corollary4,
    verify_fenyves_transfer,
    verify_theorem9,
    verify_theorem10,
    verify_theorem11,
    verify_theorem12,
    verify_theorem13,
)
from .logging_utils import setup_logger
from .models import DEFAULT_PARAMETERS, EnumerationOptions, Parameters
from .morphisms import (
    all_bijections,
    automorphism_group,
    boolean_automorphism_subgroups,
    lemma1_check,
    lemma2_check,
)

logger = setup_logger(__name__)

NAIVE_MAX_ORDER = 3

Predicate = Callable[[FiniteAlgebra], bool]


# Canonical forms -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    order: int
    table: Tuple[int, ...]

    def digest(self) -> str:
        payload = f"{self.order}:" + ",".join(str(v) for v in self.table)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def to_algebra(self) -> FiniteAlgebra:
        return FiniteAlgebra.from_flat(self.order, self.table)


@lru_cache(maxsize=None)
def _zero_fixing_relabelings(n: int) -> Tuple[np.ndarray, np.ndarray]:
    perms = np.array([(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.intp)
    return perms, np.argsort(perms, axis=1)


def canonical_form(a: FiniteAlgebra, params: Parameters = DEFAULT_PARAMETERS) -> CanonicalForm:
    """Lexicographically least row-major table over every relabeling that keeps 0 in place."""
    if a.zero != 0:
        raise ValueError("canonical_form expects the zero at index 0")
    n = a.order
    if n > params.canonical_max_order:
        raise OrderTooLarge(f"canonical form is brute force and capped at order {params.canonical_max_order}")
    if n == 1:
        return CanonicalForm(order=1, table=a.flat())
    perms, inverses = _zero_fixing_relabelings(n)
    t = a.array
    moved = t[inverses[:, :, None], inverses[:, None, :]]
    relabeled = perms[np.arange(len(perms))[:, None, None], moved]
    rows = relabeled.reshape(len(perms), n * n)
    best = min(tuple(int(v) for v in row) for row in rows)
    return CanonicalForm(order=n, table=best)


# Predicates ------------------------------------------------------------------------


def _quasi_associative(a: FiniteAlgebra) -> bool:
    return is_bci_def1(a).holds and check_law(a, QUASI_ASSOCIATIVE).holds


_PREDICATES: Dict[str, Predicate] = {
    "bci": lambda a: is_bci_def1(a).holds,
    "bck": lambda a: is_bck(a).holds,
    "p_semisimple": lambda a: is_p_semisimple(a).holds,
    "associative": lambda a: is_associative(a).holds,
    "quasigroup": lambda a: is_quasigroup(a).holds,
    "loop": lambda a: is_loop(a).holds,
    "boolean_group": lambda a: is_boolean_group(a).holds,
    "quasi_associative": _quasi_associative,
}


def predicate_names() -> List[str]:
    return sorted(_PREDICATES) + [f"F{i}" for i in range(1, 61)]


def resolve_predicate(name: Union[str, Predicate]) -> Predicate:
    """Accepts a callable, a property name such as ``p-semisimple``, or ``F42``."""
    if callable(name):
        return name
    key = str(name).strip().lower().replace("-", "_")
    if key in _PREDICATES:
        return _PREDICATES[key]
    if key.startswith("f") and key[1:].isdigit():
        index = int(key[1:])
        if not 1 <= index <= 60:
            raise ValueError(f"unknown predicate {name!r}: Fenyves indices run 1..60")
        return lambda a: satisfies_fenyves(a, index).holds
    raise ValueError(f"unknown predicate {name!r}; known: {', '.join(sorted(_PREDICATES))}, F1..F60")


# Enumeration -----------------------------------------------------------------------


def _check_order(order: int, allow_slow: bool, params: Parameters) -> None:
    ceiling = min(params.max_order, params.hard_enumeration_cap)
    if order > ceiling:
        raise OrderTooLarge(f"order {order} exceeds the enumeration cap of {ceiling}")
    if order > params.slow_order and not (allow_slow or params.allow_slow):
        raise OrderTooLarge(f"order {order} is above {params.slow_order}; pass allow_slow to enumerate it")


def _free_cells(n: int) -> List[int]:
    return [x * n + y for x in range(n) for y in range(1, n) if x != y]


def _forced_table(n: int) -> List[int]:
    t = [-1] * (n * n)
    for x in range(n):
        t[x * n + x] = 0
        t[x * n] = x
    return t


def _violates(t: Sequence[int], n: int) -> bool:
    """True if some fully determined instance of a BCI consequence fails (zero is index 0)."""
    for x in range(n):
        base = x * n
        for y in range(n):
            xy = t[base + y]
            if xy < 0:
                continue
            if x != y and xy == 0 and t[y * n + x] == 0:
                return True
            xxy = t[base + xy]
            if xxy >= 0:
                v = t[xxy * n + y]
                if v > 0:
                    return True
            for z in range(n):
                xz = t[base + z]
                if xz < 0:
                    continue
                # (x*y)*z = (x*z)*y
                left = t[xy * n + z]
                right = t[xz * n + y]
                if left >= 0 and right >= 0 and left != right:
                    return True
                zy = t[z * n + y]
                p = t[xy * n + xz]
                if zy >= 0 and p >= 0:
                    v = t[p * n + zy]
                    if v > 0:
                        return True
    return False


def _search_branch(n: int, first_value: Optional[int] = None) -> List[Tuple[int, ...]]:
    t = _forced_table(n)
    cells = _free_cells(n)
    found: List[Tuple[int, ...]] = []

    def extend(k: int) -> None:
        if k == len(cells):
            found.append(tuple(t))
            return
        pos = cells[k]
        values = range(n) if (k > 0 or first_value is None) else (first_value,)
        for v in values:
            t[pos] = v
            if not _violates(t, n):
                extend(k + 1)
        t[pos] = -1

    if not _violates(t, n):
        extend(0)
    return found


def _raw_tables(n: int, workers: int) -> List[Tuple[int, ...]]:
    if workers <= 1 or not _free_cells(n):
        return _search_branch(n)
    with multiprocessing.Pool(processes=min(workers, n)) as pool:
        branches = pool.starmap(_search_branch, [(n, v) for v in range(n)])
    return [table for branch in branches for table in branch]


def _finish(
    algebras: Iterable[FiniteAlgebra],
    opts: EnumerationOptions,
    params: Parameters,
) -> List[FiniteAlgebra]:
    required = [resolve_predicate(name) for name in sorted(opts.require)]
    kept = [a for a in algebras if all(pred(a) for pred in required)]
    if opts.up_to_isomorphism:
        forms = sorted({canonical_form(a, params) for a in kept})
        result = [form.to_algebra() for form in forms]
    else:
        result = sorted(kept, key=lambda a: a.flat())
    if opts.limit is not None:
        result = result[: opts.limit]
    return result


def enumerate_bci(opts: EnumerationOptions, params: Parameters = DEFAULT_PARAMETERS) -> List[FiniteAlgebra]:
    opts.validate()
    _check_order(opts.order, opts.allow_slow, params)
    for name in opts.require:
        resolve_predicate(name)
    n = opts.order
    raw = _raw_tables(n, params.workers)
    algebras = []
    for flat in raw:
        a = FiniteAlgebra.from_flat(n, flat)
        if is_bci_def1(a).holds:
            algebras.append(a)
    result = _finish(algebras, opts, params)
    logger.info(
        "Enumerated order=%d labeled=%d kept=%d up_to_iso=%s", n, len(algebras), len(result), opts.up_to_isomorphism
    )
    return result


def enumerate_naive(opts: EnumerationOptions, params: Parameters = DEFAULT_PARAMETERS) -> List[FiniteAlgebra]:
    """Every n^(n^2) table filtered by ``is_bci_def1``; the oracle for ``enumerate_bci``."""
    opts.validate()
    if opts.order > NAIVE_MAX_ORDER:
        raise OrderTooLarge(f"naive enumeration is capped at order {NAIVE_MAX_ORDER}")
    n = opts.order
    algebras = []
    for flat in itertools.product(range(n), repeat=n * n):
        a = FiniteAlgebra.from_flat(n, flat)
        if is_bci_def1(a).holds:
            algebras.append(a)
    return _finish(algebras, opts, params)


def all_magmas(order: int) -> Iterable[FiniteAlgebra]:
    if order > NAIVE_MAX_ORDER:
        raise OrderTooLarge(f"magma sweeps are capped at order {NAIVE_MAX_ORDER}")
    for flat in itertools.product(range(order), repeat=order * order):
        yield FiniteAlgebra.from_flat(order, flat)


@dataclass
class CrossValidation:
    order: int
    total: int = 0
    bci: int = 0
    disagreements: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.disagreements


def checker_cross_validation(order: int) -> CrossValidation:
    """Run both BCI checkers over every magma of the given order."""
    result = CrossValidation(order=order)
    for a in all_magmas(order):
        first = is_bci_def1(a).holds
        second = is_bci_thm1(a).holds
        result.total += 1
        result.bci += int(first)
        if first != second:
            result.disagreements.append(a.flat())
    logger.info("Checker cross-validation order=%d magmas=%d bci=%d disagreements=%d",
                order, result.total, result.bci, len(result.disagreements))
    return result


def find_witness(
    opts: EnumerationOptions,
    want: Union[str, Predicate],
    avoid: Union[str, Predicate],
    params: Parameters = DEFAULT_PARAMETERS,
) -> Optional[FiniteAlgebra]:
    """First enumerated algebra, scanning orders 1..opts.order, satisfying want and not avoid."""
    opts.validate()
    _check_order(opts.order, opts.allow_slow, params)
    want_fn = resolve_predicate(want)
    avoid_fn = resolve_predicate(avoid)
    for order in range(1, opts.order + 1):
        for a in enumerate_bci(replace(opts, order=order, limit=None), params):
            if want_fn(a) and not avoid_fn(a):
                return a
    return None


def bci_corpus(order_max: int, params: Parameters = DEFAULT_PARAMETERS, allow_slow: bool = False) -> List[FiniteAlgebra]:
    corpus: List[FiniteAlgebra] = []
    for order in range(1, order_max + 1):
        corpus.extend(enumerate_bci(EnumerationOptions(order=order, allow_slow=allow_slow), params))
    return corpus


def nonassociative_witnesses(corpus: Sequence[FiniteAlgebra]) -> Dict[int, Optional[FiniteAlgebra]]:
    """For each non-associative-class index, the first corpus algebra with F_i but not associativity."""
    found: Dict[int, Optional[FiniteAlgebra]] = {i: None for i in nonassociative_indices()}
    for a in corpus:
        if is_associative(a).holds:
            continue
        profile = fenyves_profile(a)
        for i in found:
            if found[i] is None and profile.holds(i):
                found[i] = a
    return found


# Theorem matrix --------------------------------------------------------------------

THEOREM_ROWS: Tuple[str, ...] = (
    "enumeration_oracle",
    "theorem1",
    "theorem2",
    "theorem3_4",
    "theorem5",
    "theorem6",
    "theorem7",
    "theorem8",
    "remark2",
    "remark2_witness",
    "lemma1",
    "lemma2",
    "theorem9",
    "theorem10",
    "theorem11",
    "theorem12",
    "theorem13",
    "corollary1",
    "corollary2",
    "corollary4",
    "theorem14",
    "theorem15",
    "theorem16",
    "theorem17",
)


@dataclass(frozen=True)
class MatrixRecord:
    theorem: str
    instance: str
    status: str
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"theorem": self.theorem, "instance": self.instance, "status": self.status, "detail": self.detail}


@dataclass
class TheoremMatrix:
    order_max: int
    records: List[MatrixRecord] = field(default_factory=list)
    # non-associative index -> instance name of the first witness, None when the corpus has none
    witnesses: Dict[int, Optional[str]] = field(default_factory=dict)

    def add(self, theorem: str, instance: str, status: str, detail: Optional[str] = None) -> None:
        assert theorem in THEOREM_ROWS, f"unknown theorem row {theorem}"
        assert status in (PASS, FAIL, NOT_APPLICABLE), f"unknown status {status}"
        self.records.append(MatrixRecord(theorem, instance, status, detail))

    def add_check(self, theorem: str, instance: str, ok: bool, detail: Optional[str] = None) -> None:
        self.add(theorem, instance, PASS if ok else FAIL, None if ok else detail)

    def add_report(self, theorem: str, instance: str, report: AgreementReport) -> None:
        detail = None if report.status == PASS else (report.note or _describe(report))
        self.add(theorem, instance, report.status, detail)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def failures(self) -> List[MatrixRecord]:
        return [r for r in self.records if r.status == FAIL]

    def first_failure(self) -> Optional[MatrixRecord]:
        failures = self.failures()
        return failures[0] if failures else None

    def counts(self) -> Dict[str, Dict[str, int]]:
        counts = {row: {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0} for row in THEOREM_ROWS}
        for r in self.records:
            counts[r.theorem][r.status] += 1
        return counts

    def summary(self) -> pd.DataFrame:
        rows = [{"theorem": row, **c} for row, c in self.counts().items()]
        return pd.DataFrame(rows, columns=["theorem", PASS, FAIL, NOT_APPLICABLE])

    def records_df(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_dict() for r in self.records], columns=["theorem", "instance", "status", "detail"])

    def witnesses_df(self) -> pd.DataFrame:
        rows = [
            {"identity": f"F{i}", "found": name is not None, "instance": name}
            for i, name in sorted(self.witnesses.items())
        ]
        return pd.DataFrame(rows, columns=["identity", "found", "instance"])

    def to_dict(self) -> Dict[str, Any]:
        first = self.first_failure()
        return {
            "order_max": self.order_max,
            "ok": self.ok,
            "counts": self.counts(),
            "first_failure": first.to_dict() if first else None,
            "records": [r.to_dict() for r in self.records],
            "nonassociative_witnesses": {f"F{i}": name for i, name in sorted(self.witnesses.items())},
        }


def _describe(report: AgreementReport) -> str:
    broken = [name for name, ok in report.checks if not ok]
    text = f"{report.left_label}={report.left} {report.right_label}={report.right}"
    if broken:
        text += f" failed checks: {', '.join(broken)}"
    return text


def instance_name(a: FiniteAlgebra, params: Parameters = DEFAULT_PARAMETERS) -> str:
    return f"o{a.order}:{canonical_form(a, params).digest()}"


def _sweep_algebra(matrix: TheoremMatrix, a: FiniteAlgebra, name: str, params: Parameters) -> None:
    t1, t2 = is_bci_def1(a), is_bci_thm1(a)
    matrix.add_check("theorem1", name, t1.holds == t2.holds, f"def1={t1.holds} thm1={t2.holds}")

    equivalents = theorem2_equivalents(a)
    matrix.add_check("theorem2", name, len({w.holds for w in equivalents}) == 1,
                     " ".join(f"{w.property}={w.holds}" for w in equivalents))
    bundle = p_semisimple_equivalents(a)
    matrix.add_check("theorem3_4", name, len({w.holds for w in bundle}) == 1,
                     " ".join(f"{w.property}={w.holds}" for w in bundle))
    audit5 = theorem5_audit(a)
    matrix.add_check("theorem5", name, audit5.agree, str(audit5))
    exchange = theorem6_holds(a)
    matrix.add_check("theorem6", name, exchange.holds, f"counterexample {exchange.counterexample}")
    audit7 = theorem7_audit(a)
    matrix.add_check("theorem7", name, audit7.agree, str(audit7))

    profile = fenyves_profile(a)
    associative = is_associative(a).holds
    offending = [i for i in associative_class_indices() if profile.holds(i) and not associative]
    matrix.add_check("theorem8", name, not offending, f"non-associative yet satisfies {offending}")
    matrix.add_check("remark2", name, profile.holds(54), "F54 fails")

    if a.order <= params.lemma1_order_max:
        broken = [b.image for b in all_bijections(a.order) if not lemma1_check(a, b).agree]
        matrix.add_check("lemma1", name, not broken, f"disagreement for {broken[:3]}")
    else:
        matrix.add("lemma1", name, NOT_APPLICABLE, f"order above {params.lemma1_order_max}")

    group = automorphism_group(a)
    broken = [b.image for b in group.elements if not lemma2_check(a, b).holds]
    matrix.add_check("lemma2", name, not broken, f"fails for {broken[:3]}")

    if a.order > params.holomorph_order_max:
        return
    for j, autos in enumerate(boolean_automorphism_subgroups(group)):
        _sweep_holomorph(matrix, a, autos, f"{name}/A{j}")


def _sweep_holomorph(matrix: TheoremMatrix, base: FiniteAlgebra, autos, name: str) -> None:
    matrix.add_report("theorem9", name, verify_theorem9(base, autos))
    matrix.add_report("theorem10", name, verify_theorem10(base, autos))
    matrix.add_report("corollary1", name, verify_corollary1(base, autos))
    matrix.add_report("corollary2", name, verify_corollary2(base, autos))
    matrix.add_report("corollary4", name, verify_corollary4(base, autos))
    for theorem, verify in (("theorem11", verify_theorem11), ("theorem12", verify_theorem12),
                            ("theorem13", verify_theorem13)):
        try:
            matrix.add_report(theorem, name, verify(base, autos))
        except NotBci:
            matrix.add(theorem, name, NOT_APPLICABLE, "holomorph is not BCI")
    for i in supported_transfer_indices():
        try:
            report = verify_fenyves_transfer(base, autos, i)
        except NotBci:
            matrix.add(f"theorem{_transfer_theorem(i)}", f"{name}/F{i}", NOT_APPLICABLE, "holomorph is not BCI")
            continue
        matrix.add_report(f"theorem{report.details['theorem']}", f"{name}/F{i}", report)


def _transfer_theorem(i: int) -> int:
    return transfer_rule(i).theorem


def corpus_sweep(order_max: int, params: Parameters = DEFAULT_PARAMETERS) -> TheoremMatrix:
    """Drive every verification over the enumerated corpus and its Boolean automorphism subgroups."""
    if order_max < 1:
        raise ValueError("order_max must be >= 1")
    if order_max > params.order_ceiling():
        raise OrderTooLarge(
            f"order_max {order_max} exceeds {params.order_ceiling()}"
            + ("" if params.allow_slow else "; pass allow_slow to go further")
        )
    matrix = TheoremMatrix(order_max=order_max)

    for order in range(1, min(order_max, NAIVE_MAX_ORDER) + 1):
        opts = EnumerationOptions(order=order)
        pruned = [a.flat() for a in enumerate_bci(opts, params)]
        naive = [a.flat() for a in enumerate_naive(opts, params)]
        matrix.add_check("enumeration_oracle", f"order{order}", pruned == naive,
                         f"pruned={len(pruned)} naive={len(naive)}")

    corpus = bci_corpus(order_max, params, allow_slow=params.allow_slow)
    for a in corpus:
        _sweep_algebra(matrix, a, instance_name(a, params), params)

    found = nonassociative_witnesses(corpus)
    matrix.witnesses = {i: None if a is None else instance_name(a, params) for i, a in found.items()}
    if order_max >= 2:
        matrix.add_check("remark2_witness", "F54", found[54] is not None, "no non-associative F54 algebra found")
    else:
        matrix.add("remark2_witness", "F54", NOT_APPLICABLE, "needs order 2")

    # verify_theorem10 and the corollaries take an arbitrary groupoid base
    for order in range(1, min(params.magma_sweep_order, NAIVE_MAX_ORDER) + 1):
        for k, magma in enumerate(all_magmas(order)):
            if is_bci_def1(magma).holds:
                continue
            group = automorphism_group(magma)
            for j, autos in enumerate(boolean_automorphism_subgroups(group)):
                name = f"magma{order}#{k}/A{j}"
                matrix.add_report("theorem10", name, verify_theorem10(magma, autos))
                matrix.add_report("corollary1", name, verify_corollary1(magma, autos))
                matrix.add_report("corollary2", name, verify_corollary2(magma, autos))
                matrix.add_report("corollary4", name, verify_corollary4(magma, autos))

    logger.info("Corpus sweep order_max=%d algebras=%d records=%d failures=%d",
                order_max, len(corpus), len(matrix.records), len(matrix.failures()))
    return matrix
