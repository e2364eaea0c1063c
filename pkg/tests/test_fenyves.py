import pytest

from src.algebra import chain_algebra, cyclic_difference, group_difference, powerset_algebra
from src.errors import ElementIndexError, FenyvesIndexError
from src.fenyves import (
    ABELIAN_GROUP_IDENTITIES,
    IDENTITY_COUNT,
    POWERSET_IDENTITIES,
    FenyvesProfile,
    Product,
    Var,
    associative_class_indices,
    checklist_rows,
    eval_term,
    fenyves_algebra_kinds,
    fenyves_profile,
    format_term,
    get_identity,
    identity_catalog,
    identity_names,
    nonassociative_indices,
    parse_identity,
    parse_term,
    satisfies_fenyves,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_catalog_shape():
    catalog = identity_catalog()
    assert len(catalog) == IDENTITY_COUNT
    assert [ident.index for ident in catalog] == list(range(1, 61))
    assert nonassociative_indices() == [3, 5, 8, 19, 21, 29, 39, 42, 46, 52, 54, 55, 56, 59]
    assert len(associative_class_indices()) == 46


def test_parse_term_notation():
    assert parse_term("xy") == Product(x, y)
    assert parse_term("(xy.z)x") == Product(Product(Product(x, y), z), x)
    assert parse_term("xy.zx") == Product(Product(x, y), Product(z, x))
    assert parse_term("x(y.zx)") == Product(x, Product(y, Product(z, x)))
    assert format_term(Product(Product(Product(x, y), z), x)) == "(xy.z)x"


def test_catalog_text_round_trips():
    for ident in identity_catalog():
        assert parse_identity(ident.text) == (ident.lhs, ident.rhs)


def test_parse_errors():
    for bad in ("", "x(y", "xw", "xy."):
        with pytest.raises(ValueError):
            parse_term(bad)
    with pytest.raises(ValueError):
        parse_identity("xy = zx = xz")


def test_get_identity_bounds():
    assert get_identity(1).label == "F1"
    assert get_identity(60).index == 60
    for bad in (0, 61, -3):
        with pytest.raises(FenyvesIndexError):
            get_identity(bad)


def test_names():
    names = identity_names()
    assert names[2] == "Moufang identity"
    assert names[19] == "left Bol identity"
    assert 1 not in names


def test_eval_term():
    z3 = cyclic_difference(3)
    square = Product(x, x)
    for value in range(3):
        assert eval_term(square, z3, {"x": value}) == 0
    assert eval_term(parse_term("(xy.z)x"), z3, {"x": 1, "y": 2, "z": 0}) == 1
    with pytest.raises(ElementIndexError):
        eval_term(square, z3, {"x": 3})
    with pytest.raises(KeyError):
        eval_term(Product(x, y), z3, {"x": 0})


def test_boolean_group_satisfies_everything():
    profile = fenyves_profile(cyclic_difference(2))
    assert profile.satisfied() == list(range(1, 61))
    for i in (1, 30, 60):
        assert satisfies_fenyves(cyclic_difference(2), i).holds


def test_abelian_group_and_powerset_identities():
    for a in (cyclic_difference(3), cyclic_difference(4), group_difference((2, 2))):
        for i in ABELIAN_GROUP_IDENTITIES:
            assert satisfies_fenyves(a, i).holds, f"F{i}"
    for k in (1, 2, 3):
        for i in POWERSET_IDENTITIES:
            assert satisfies_fenyves(powerset_algebra(k), i).holds, f"F{i}"


def test_chain_profile():
    profile = fenyves_profile(chain_algebra(2))
    for i in associative_class_indices():
        assert not profile.holds(i)
    for i in (5, 42, 54):
        assert profile.holds(i)

    witness = satisfies_fenyves(chain_algebra(2), 1)
    assert not witness.holds
    assert len(witness.counterexample) == 3
    assert witness.clause == "xy.zx = (xy.z)x"


def test_profile_agrees_with_single_checks():
    a = powerset_algebra(2)
    profile = fenyves_profile(a)
    for i in range(1, 61):
        assert profile.holds(i) == satisfies_fenyves(a, i).holds


def test_profile_hex():
    profile = fenyves_profile(chain_algebra(2))
    text = profile.to_hex()
    assert len(text) == 15
    assert FenyvesProfile.from_hex(text) == profile
    assert profile.names()[0] == f"F{profile.satisfied()[0]}"
    assert fenyves_algebra_kinds(profile)[0].endswith("-algebra")
    with pytest.raises(ValueError):
        FenyvesProfile.from_hex("1" + "0" * 15)


def test_checklist_rows():
    rows = checklist_rows()
    assert len(rows) == 60
    assert rows[0] == {"index": 1, "identity": "xy.zx = (xy.z)x", "name": "", "class": "associative"}
    assert rows[53]["class"] == "non-associative"


def test_every_identity_counterexample_separates_the_sides(witness_sample):
    failures = 0
    for a in witness_sample:
        for identity in identity_catalog():
            witness = satisfies_fenyves(a, identity.index)
            if witness.holds:
                continue
            failures += 1
            x, y, z = witness.counterexample
            assignment = {"X": int(x), "Y": int(y), "Z": int(z)}
            lhs = eval_term(identity.lhs, a, assignment)
            rhs = eval_term(identity.rhs, a, assignment)
            assert lhs != rhs, (identity.label, a.flat())
    assert failures > 0
