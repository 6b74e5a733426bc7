import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from cangrow.errors import NotArtinian, UnitInIdeal
from cangrow.exactla import FieldSpec
from cangrow.polyring import (Polynomial, buchberger, is_zero_dimensional,
                              monomial_ideal_quotient_size, normal_form, standard_monomials)

F = FieldSpec.prime()


def var(i, n):
    return Polynomial.variable(i, n, F)


@st.composite
def artinian_monomial_ideals(draw):
    n = draw(st.integers(1, 3))
    gens = [tuple(draw(st.integers(1, 4)) if i == j else 0 for i in range(n)) for j in range(n)]
    extra = draw(st.lists(st.tuples(*[st.integers(0, 3)] * n), max_size=4))
    gens += [m for m in extra if sum(m) > 0]
    return n, gens


@settings(max_examples=80, deadline=None)
@given(artinian_monomial_ideals())
def test_standard_monomial_count_matches_direct_count(data):
    n, gens = data
    gb = buchberger([Polynomial.monomial(m, F) for m in gens])
    assert len(standard_monomials(gb)) == monomial_ideal_quotient_size(gens)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(1, 9)),
                min_size=1, max_size=3))
def test_generators_reduce_to_zero(tail):
    # x^3 + tail, y^3 keeps the ideal zero-dimensional for any tail below x^3
    x, y = var(0, 2), var(1, 2)
    f = x ** 3
    for a, b, c in tail:
        if a + b < 3:
            f = f + Polynomial.monomial((a, b), F, c) * x * y
    gb = buchberger([f, y ** 3])
    assert is_zero_dimensional(gb)
    for g in (f, y ** 3, f * x + y ** 3 * y):
        assert not normal_form(g, gb)


def test_reduced_basis_is_monic_and_interreduced():
    x, y = var(0, 2), var(1, 2)
    gb = buchberger([x * x - y * y, x * y, y ** 3])
    for g in gb.generators:
        lead = max(g.terms, key=gb.key)
        assert g.terms[lead] == 1
    for i, g in enumerate(gb.generators):
        others = [h for j, h in enumerate(gb.generators) if j != i]
        assert not any(all(a <= b for a, b in zip(max(h.terms, key=gb.key), m))
                       for h in others for m in g.terms)


def test_lex_and_degrevlex_give_same_dimension():
    x, y, z = (var(i, 3) for i in range(3))
    gens = [x * x - y * z, y * y - x * z, z * z - x * y, x * y * z]
    a = standard_monomials(buchberger(gens, "degrevlex"))
    b = standard_monomials(buchberger(gens, "lex"))
    assert len(a) == len(b)


def test_unit_and_positive_dimension():
    x, y = var(0, 2), var(1, 2)
    with pytest.raises(UnitInIdeal):
        buchberger([x, Polynomial.constant(1, 2, F)])
    assert not is_zero_dimensional(buchberger([x * y]))
    with pytest.raises(NotArtinian):
        monomial_ideal_quotient_size([(1, 1)])


def test_format_round_trip_text():
    x, y = var(0, 2), var(1, 2)
    f = x ** 2 * y - Polynomial.constant(3, 2, F) * y + x
    assert f.format(["x", "y"]) in ("x^2*y + x - 3*y", "x^2*y - 3*y + x")
