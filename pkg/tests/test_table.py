import json

import pytest

from audioactive.core import jhc, max_run_length, sym
from audioactive.splitting import split_atoms
from audioactive.table import (
    Common,
    NoClosure,
    PeriodicTable,
    Transuranic,
    Unstable,
    classify,
    decay_products,
    derive_common_elements,
    derive_transuranic,
)

# Conway's names for the two transuranic families, with the hole written as *
NEPTUNIUM = "1311222113321132211221121332211*"
PLUTONIUM = "31221132221222112112322211*"


def test_ninety_two_elements(table):
    assert len(table) == 92
    assert [e.id for e in table.elements] == list(range(1, 93))
    strings = table.strings()
    assert strings == sorted(strings)
    assert len(set(strings)) == 92


@pytest.mark.parametrize("seed", ["2", "3", "11131"])
def test_seed_independence(table, seed):
    assert derive_common_elements(seed).strings() == table.strings()


def test_hydrogen_is_a_fixed_point(table):
    h = table.lookup("22")
    assert h is not None
    assert h.products == (h.id,)


def test_closure_and_products(table):
    for e in table.elements:
        products = decay_products(e, table)
        assert sorted(products.elements()) == sorted(e.products)
        assert all(1 <= p <= len(table) for p in e.products)


def test_elements_are_clean_atoms(table):
    for s in table.strings():
        assert set(s) <= set("123")
        assert max_run_length(s) < 4
        assert split_atoms(s) == [s]


def test_known_elements_present(table):
    # a few of Conway's common elements: uranium, protactinium, hafnium, calcium
    for s in ["3", "13", "11132", "1112", "312"]:
        assert table.lookup(s) is not None


def test_transients_are_unstable(table):
    assert classify("1", table) == Unstable()
    assert classify("11", table) == Unstable()
    assert classify("22", table) == Common(table.lookup("22").id)


def test_transuranic_templates(table):
    assert sorted(t.literal() for t in table.transuranic) == [NEPTUNIUM, PLUTONIUM]


@pytest.mark.parametrize("n", range(4, 10))
def test_transuranic_family_uniform(table, n):
    templates = derive_transuranic(n)
    assert [t.literal() for t in templates] == [t.literal() for t in table.transuranic]
    instances = {t.instantiate(n) for t in templates}
    for t in templates:
        s = t.instantiate(n)
        assert split_atoms(s) == [s]
        products = split_atoms(jhc(s))
        exotic = [p for p in products if max(p) > "3"]
        assert len(exotic) == 1 and exotic[0] in instances and exotic[0] != s
        for p in products:
            if p not in instances:
                assert isinstance(classify(p, table), Common)


def test_classify_transuranic(table):
    s = table.transuranic[0].instantiate(7)
    assert classify(s, table) == Transuranic(0, 7)
    assert classify(table.transuranic[1].instantiate(12), table) == Transuranic(1, 12)


def test_transuranic_rejects_small_digit():
    with pytest.raises(ValueError):
        derive_transuranic(3)


def test_bad_seed():
    with pytest.raises(ValueError):
        derive_common_elements("14")


def test_atom_cap():
    with pytest.raises(NoClosure):
        derive_common_elements("1", atom_cap=10)


def test_json_roundtrip(table):
    data = json.loads(table.dumps())
    assert list(data) == ["seed", "elements", "transuranic"]
    assert list(data["elements"][0]) == ["id", "string", "products"]
    again = PeriodicTable.from_json(data)
    assert again.strings() == table.strings()
    assert [e.products for e in again.elements] == [e.products for e in table.elements]
    assert [t.pattern for t in again.transuranic] == [t.pattern for t in table.transuranic]


def test_exotic_hole_symbol(table):
    t = table.transuranic[1]
    assert t.instantiate(4)[-1] == sym(4)
    assert t.match(t.instantiate(4)) == 4
    assert t.match(t.instantiate(4)[:-1] + "3") is None
