"""Smoke test for the nonorient_py extension.

Install first with `pip install --no-build-isolation -e crates/nonorient-py`,
then run `python python/smoke_test.py` or `pytest python/`.
"""

import nonorient_py as nn


def test_parse_and_word():
    assert nn.parse("(12)^2", 3) == "1212"
    w = nn.Word("1 1' 2", 3)
    assert str(w.reduce()) == "2"
    assert len(w) == 3
    assert w.genus == 3
    assert str(w * w.inverse()) == "11'22'11'"
    assert len((w * w.inverse()).reduce()) == 0


def test_evaluate():
    phi = nn.evaluate("1 1'", 3)
    assert phi.is_identity()
    assert phi.images() == ["x1", "x2", "x3"]
    psi = nn.Word("(123)^2", 4).evaluate()
    assert psi.homology_z2()[0] == [0, 0, 1, 0]


def test_equality_and_involutions():
    status, witness = nn.outer_equal("121", "212", 3)
    assert status == "yes" and witness is not None
    assert nn.outer_equal("1", "2", 3)[0] != "yes"
    assert nn.is_involution("(123)^2", 4)[0] == "yes"
    assert nn.is_involution("1", 3)[0] != "yes"


def test_classify_and_catalog():
    counts = [len(nn.classify(g)) for g in range(2, 6)]
    assert counts == [5, 3, 14, 8]
    recs = nn.catalog_records()
    assert len(recs) == 30
    assert ("4;7", "(123)^2", "(2,-,2,0)", "(2,0,0)") in recs


def test_errors():
    try:
        nn.parse("(1", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("unbalanced word parsed")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)
