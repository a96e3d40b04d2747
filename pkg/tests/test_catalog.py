import pytest

from tensorcat.algebra import validate_algebra
from tensorcat.catalog import (CocycleInvalid, UnknownEntry, make_algebra,
                               make_category, standard_entries)
from tensorcat.fincat import validate_category


def test_every_entry_validates(cats):
    for name, cat in cats.items():
        rep = validate_category(cat)
        assert rep.ok, (name, rep.failures)


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        make_category("nope", {})


def test_invalid_cocycle_rejected():
    with pytest.raises(CocycleInvalid):
        # omega(g,g,g) = 2 over Q is not a cocycle for Z/2
        make_category("pointed", {"n": 2, "omega": {(1, 1, 1): 2}})


def test_matrix_multifusion_structure(cats):
    mmf = cats["mmf2"]
    assert len(mmf.labels) == 4
    assert len(mmf.unit_components) == 2
    # e12 (x) e21 = e11
    t = mmf.tensor(mmf.simple("e12"), mmf.simple("e21"))
    assert t.describe() == {"e11": 1}
    assert mmf.tensor(mmf.simple("e12"), mmf.simple("e12")).is_zero()


def test_fibonacci_field(cats):
    fib = cats["fibonacci"]
    phi = fib.field.gen()
    assert phi * phi == phi + fib.field.one()


def test_ising_field(cats):
    isg = cats["ising"]
    s = isg.field.gen()
    assert s * s == isg.field.scalar(2)


def test_graded_char_p_requires_char_p():
    from tensorcat.fields import Field
    with pytest.raises(UnknownEntry):
        make_category("graded_char_p", {"p": 3, "field": Field.prime(2)})


def test_all_generated_algebras_validate(cats):
    for name, cat in cats.items():
        assert validate_algebra(make_algebra(cat, "trivial")).ok
        for a in cat.labels:
            A = make_algebra(cat, "internal_end", {"obj": {a: 1}})
            assert validate_algebra(A).ok, (name, a)
    for name in ("z2", "z3", "z4", "z2_f2", "z3_f3"):
        A = make_algebra(cats[name], "regular_pointed", {})
        assert validate_algebra(A).ok, name
