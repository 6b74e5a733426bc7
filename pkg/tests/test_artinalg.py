from hypothesis import given, settings
import hypothesis.strategies as st

from cangrow.artinalg import is_commutative_associative, local_tensor
from cangrow.criteria import ScanConfig, monomial_ring, random_monomial_ring

import random


def test_quad3_profile(quad3):
    p = quad3.profile()
    assert quad3.dim == 6
    assert p.hilbert == (1, 3, 2)
    assert p.socle_dim == 2
    assert not quad3.is_gorenstein()


def test_b3_is_gorenstein(b3):
    assert b3.dim == 5
    assert b3.is_gorenstein()
    assert b3.socle_equals_m2()


def test_basis_starts_with_one(x3y3):
    assert x3y3.basis[0] == (0, 0)
    assert x3y3.dim == 9
    assert x3y3.is_gorenstein()


def test_tables_are_associative(quad3, b3, ring_a):
    for R in (quad3, b3, ring_a):
        assert is_commutative_associative(R)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_monomial_rings_are_local_algebras(seed):
    names, monos = random_monomial_ring(random.Random(seed), ScanConfig(max_socle_degree=3))
    R = monomial_ring(names, monos)
    assert is_commutative_associative(R)
    # socle is never empty in an Artinian local ring
    assert R.profile().socle_dim >= 1
    assert sum(R.profile().hilbert) == R.dim


def test_local_tensor_dimensions(ring_a, b3):
    T = local_tensor(ring_a, b3)
    assert T.dim == ring_a.dim * b3.dim
    assert T.profile().socle_dim == ring_a.profile().socle_dim * b3.profile().socle_dim


def test_parent_paths_factor_basis(quad3):
    for j, par in enumerate(quad3.parent):
        if par is None:
            continue
        v, i = par
        assert quad3.multiply_var(v, {i: 1}) == {j: 1}
