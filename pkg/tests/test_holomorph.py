import pytest

from src.algebra import FiniteAlgebra, chain_algebra, cyclic_difference, group_difference, is_isomorphism, powerset_algebra
from src.bci_props import is_bci_def1
from src.errors import NotAutomorphismGroup, NotBci, NotBooleanGroup, UnsupportedIndex
from src.holomorph import (
    PASS,
    HolomorphElement,
    build_holomorph,
    diagonal_embedding,
    provenance,
    supported_transfer_indices,
    theorem9_condition,
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
from src.morphisms import AutomorphismGroup, Bijection, automorphism_group, boolean_automorphism_subgroups


def trivial_group(n):
    return AutomorphismGroup((Bijection.identity(n),))


def z3_negation_group():
    return AutomorphismGroup((Bijection.identity(3), Bijection((0, 2, 1))))


def test_trivial_subgroup_reproduces_base():
    chain = chain_algebra(2)
    h = build_holomorph(chain, trivial_group(2))
    assert h.order == 2
    assert h.algebra.table == chain.table
    assert h.algebra.labels == ("(I,0)", "(I,1)")
    assert is_isomorphism(chain, h.algebra.without_labels(), diagonal_embedding(h))


def test_z3_negation_holomorph():
    z3 = cyclic_difference(3)
    h = build_holomorph(z3, z3_negation_group())
    assert h.order == 6
    assert h.product_law_holds()
    assert h.right_zero_probe()
    assert h.zero == HolomorphElement(0, 0)
    assert h.flat_index(HolomorphElement(1, 2)) == 5
    assert h.element(4) == HolomorphElement(1, 1)
    assert diagonal_embedding(h) == (0, 1, 2)
    assert not is_bci_def1(h.algebra).holds
    with pytest.raises(ValueError):
        h.element(6)


def test_theorem9_condition_counterexample():
    z3 = cyclic_difference(3)
    condition = theorem9_condition(z3, z3_negation_group())
    assert not condition.holds
    assert condition.counterexample == (0, 0, 1, 0, 1)
    assert theorem9_condition(z3, trivial_group(3)).holds
    with pytest.raises(NotBci):
        theorem9_condition(FiniteAlgebra(table=((0, 0), (0, 0))), trivial_group(2))


def test_build_rejects_bad_groups():
    klein = group_difference((2, 2))
    with pytest.raises(NotBooleanGroup):
        build_holomorph(klein, automorphism_group(klein))
    with pytest.raises(NotAutomorphismGroup):
        build_holomorph(chain_algebra(2), AutomorphismGroup((Bijection.identity(2), Bijection.swap(2, 0, 1))))
    with pytest.raises(ValueError):
        build_holomorph(FiniteAlgebra(table=((1, 0), (0, 1)), zero=1), trivial_group(2))


def test_theorem9_and_10_agree_on_examples():
    for base in (chain_algebra(3), cyclic_difference(3), cyclic_difference(4), powerset_algebra(2),
                 group_difference((2, 2))):
        for autos in boolean_automorphism_subgroups(automorphism_group(base)):
            assert verify_theorem9(base, autos).agree
            report = verify_theorem10(base, autos)
            assert report.agree, report.to_dict()
            for corollary in (verify_corollary1, verify_corollary2, verify_corollary4):
                assert corollary(base, autos).status == PASS


def test_theorem9_report_for_negation():
    report = verify_theorem9(cyclic_difference(3), z3_negation_group())
    assert report.status == PASS
    assert not report.left and not report.right
    data = report.to_dict()
    assert data["claim"] == "theorem9"
    assert data["details"]["theorem9_condition"]["counterexample"] == [0, 0, 1, 0, 1]


def test_theorem10_on_a_non_bci_magma():
    magma = FiniteAlgebra(table=((0, 0), (0, 0)))
    report = verify_theorem10(magma, trivial_group(2))
    assert report.agree
    assert not report.left and not report.right
    assert report.checks == ()


def test_theorem10_checks_diagonal_when_bci():
    report = verify_theorem10(powerset_algebra(2), trivial_group(4))
    assert report.left and report.right
    assert report.checks == (("diagonal_isomorphic", True),)


def test_property_transfer_theorems_on_trivial_subgroup():
    z2 = cyclic_difference(2)
    chain = chain_algebra(2)
    p2 = powerset_algebra(2)

    assert verify_theorem11(z2, trivial_group(2)).left
    assert not verify_theorem11(chain, trivial_group(2)).left
    assert verify_theorem12(p2, trivial_group(4)).right
    assert not verify_theorem12(z2, trivial_group(2)).right
    assert verify_theorem13(z2, trivial_group(2)).right
    t13 = verify_theorem13(chain, trivial_group(2))
    assert t13.status == PASS
    assert len(t13.checks) == 46
    for base, autos in ((z2, trivial_group(2)), (chain, trivial_group(2)), (p2, trivial_group(4))):
        for verify in (verify_theorem11, verify_theorem12, verify_theorem13):
            assert verify(base, autos).status == PASS


def test_transfer_checks_need_bci_holomorph():
    with pytest.raises(NotBci):
        verify_theorem11(cyclic_difference(3), z3_negation_group())
    swap = AutomorphismGroup((Bijection.identity(4), Bijection.swap(4, 1, 2)))
    with pytest.raises(NotBci):
        verify_fenyves_transfer(powerset_algebra(2), swap, 42)


def test_fenyves_transfer():
    report = verify_fenyves_transfer(powerset_algebra(2), trivial_group(4), 42)
    assert report.status == PASS
    assert report.left and report.right
    assert report.claim == "theorem17:F42"
    assert verify_fenyves_transfer(cyclic_difference(2), trivial_group(2), 54).status == PASS
    for i in supported_transfer_indices():
        assert verify_fenyves_transfer(chain_algebra(2), trivial_group(2), i).status != "fail"
    with pytest.raises(UnsupportedIndex):
        verify_fenyves_transfer(chain_algebra(2), trivial_group(2), 19)


def test_transfer_rules():
    assert transfer_rule(27).theorem == 14
    assert transfer_rule(30).requires == frozenset({"lambda", "rho", "involution"})
    assert transfer_rule(54).requires == frozenset()
    assert len(supported_transfer_indices()) == 19
    with pytest.raises(UnsupportedIndex):
        transfer_rule(1)


def test_provenance_lines():
    h = build_holomorph(cyclic_difference(3), z3_negation_group())
    lines = provenance(h, base_name="z3")
    assert lines[0] == "holomorph of z3 (order 3) by 2 automorphism(s)"
    assert lines[2] == "d1 = [0, 2, 1]"
