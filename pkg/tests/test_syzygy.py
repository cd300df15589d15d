import pytest

from jacsyz.errors import BoundTooSmall, InconsistentProfile
from jacsyz.parse import parse_polynomial
from jacsyz.syzygy import (
    Free,
    MSyzygy,
    PlusOneGenerated,
    classify,
    d0_dim,
    free_d0_dim,
    hilbert_polynomial_d0,
    mdr,
    minimal_generator_degrees,
    syzygy_space,
)

import oracles

P = parse_polynomial


def test_syzygy_space_dimensions():
    assert len(syzygy_space(P("x*(x*y - z^2)"), 1)) == 2
    assert len(syzygy_space(P("x^3 + y^3 + z^3"), 1)) == 0
    for text in ("x*(x*y - z^2)", "x^3 + y^3 + z^3", "x*z*(x - z)*(x*y - z^2)"):
        assert syzygy_space(P(text), 0) == []


@pytest.mark.parametrize("text", ["x*(x + y)*(x*y - z^2)", "(x^3 + y^3)*(x^3 + y^3 + z^3)"])
def test_syzygies_are_relations(text):
    f = P(text)
    for k in range(0, 4):
        basis = syzygy_space(f, k)
        assert len(basis) == d0_dim(f, k) == oracles.d0_dim(f.coeffs, f.degree, k)
        assert all(v.check(f) for v in basis)


def test_generators_are_relations():
    f = P("(x^3 + y^3)*(x^3 + y^3 + z^3)*(x + 2*y - z)")
    prof = minimal_generator_degrees(f)
    assert len(prof.generators) == prof.m
    assert all(g.check(f) for g in prof.generators)
    assert [g.degree for g in prof.generators] == list(prof.exponents)


@pytest.mark.parametrize(
    "text, exponents, label",
    [
        ("x*(x + y)*(x*y - z^2)", (2, 2, 2), "nearly_free"),
        ("(x^3 + y^3)*(x^3 + y^3 + z^3)", (2, 3), "free"),
        ("x*(x*y - z^2)", (1, 1), "free"),
        ("(x^3 + y^3)*(x^3 + y^3 + z^3)*(x + 2*y - z)", (3, 4, 5), "plus_one_generated"),
    ],
)
def test_minimal_generator_degrees(text, exponents, label):
    prof = minimal_generator_degrees(P(text))
    assert prof.exponents == exponents
    assert prof.classification.label == label
    assert prof.complete


def test_degree_twelve_plus_one_generated():
    prof = minimal_generator_degrees(P("(x^4 + z^4)*(x^8 + (x*z + y^2)^4)"))
    assert prof.exponents == (5, 7, 9)
    assert prof.classification == PlusOneGenerated(5, 7, 9, False)


def test_classify_examples():
    assert classify((5, 7), 13) == Free(5, 7)
    c = classify((3, 4, 5), 7)
    assert isinstance(c, PlusOneGenerated) and c.level == 5 and not c.nearly_free
    assert classify((2, 3, 3), 5) == PlusOneGenerated(2, 3, 3, True)
    assert classify((3, 3, 3, 3), 5) == MSyzygy(4, (3, 3, 3, 3))


@pytest.mark.parametrize("degrees, d", [((1, 2), 5), ((1, 1, 1), 3), ((2, 2, 3, 3), 4), ((3,), 4), ((1, 1), 5)])
def test_classify_rejects_contradictions(degrees, d):
    with pytest.raises(InconsistentProfile):
        classify(degrees, d)


def test_mdr():
    assert mdr(P("x*(x*y - z^2)")) == 1
    assert mdr(P("(z*y + x^2)^2*z - x^5")) == 2
    assert mdr(P("x^3 + y^3 + z^3")) == 2


def test_free_curves_follow_free_hilbert_function():
    for text in ("x*z*(x - z)*(x*y - z^2)", "x*y*(x - z)*(y - z)*(x*y - z^2)"):
        prof = minimal_generator_degrees(P(text))
        d1, d2 = prof.exponents
        assert list(prof.d0_dims) == [free_d0_dim(d1, d2, k) for k in range(prof.bound + 1)]


def test_hilbert_polynomial_at_bound():
    f = P("x*(x + y)*(x*y - z^2)")
    prof = minimal_generator_degrees(f)
    assert prof.d0_dims[-1] == hilbert_polynomial_d0(4, 6, prof.bound)


def test_bound_too_small():
    with pytest.raises(BoundTooSmall):
        minimal_generator_degrees(P("(x^3 + y^3)*(x^3 + y^3 + z^3)"), bound=3)


def test_explicit_bound():
    prof = minimal_generator_degrees(P("x*(x*y - z^2)"), bound=6)
    assert prof.bound == 6 and prof.exponents == (1, 1)


def test_prime_filter_off_gives_same_profile(monkeypatch):
    from jacsyz.syzygy import _syzygy_basis

    f = P("x*y*(x + y + z)*(x*y - z^2)")
    on = minimal_generator_degrees(f)
    monkeypatch.setenv("SYZ_PRIME_FILTER", "off")
    _syzygy_basis.cache_clear()
    off = minimal_generator_degrees(f)
    _syzygy_basis.cache_clear()
    assert on == off
    assert off.exponents == (2, 3, 3)
