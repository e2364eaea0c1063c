import pytest

from src.models import DEFAULT_PARAMETERS, EnumerationOptions, Parameters, PropertyWitness


def test_parameters_validation():
    p = Parameters()
    p.validate()  # should not raise
    for bad in (
        Parameters(max_order=0),
        Parameters(slow_order=7),
        Parameters(magma_sweep_order=4),
        Parameters(workers=0),
        Parameters(max_order=5),
    ):
        with pytest.raises(AssertionError):
            bad.validate()


def test_order_ceiling():
    assert DEFAULT_PARAMETERS.order_ceiling() == 4
    assert Parameters(allow_slow=True).order_ceiling() == 6


def test_enumeration_options_validation():
    EnumerationOptions(order=3, require=frozenset({"bck"}), limit=2).validate()
    with pytest.raises(AssertionError):
        EnumerationOptions(order=0).validate()
    with pytest.raises(AssertionError):
        EnumerationOptions(order=2, limit=0).validate()


def test_property_witness_invariant():
    ok = PropertyWitness.ok("bci")
    assert ok.holds and ok.counterexample is None
    failed = PropertyWitness.failed("bci", (1, 0), clause="x*0 = x")
    assert failed.to_dict() == {"property": "bci", "holds": False, "counterexample": [1, 0], "clause": "x*0 = x"}
    assert failed.renamed("loop").property == "loop"
    with pytest.raises(AssertionError):
        PropertyWitness(property="bci", holds=True, counterexample=(0,))
    with pytest.raises(AssertionError):
        PropertyWitness(property="bci", holds=False)
