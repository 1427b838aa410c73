import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diotrans.errors import DependentInput, NotSaturated
from diotrans.exactlinalg import (
    Lattice,
    gram_det,
    grassmann,
    hnf,
    integer_kernel,
    mat_mul,
    orthogonal_lattice,
    saturate,
    wedge_norm_squared,
)


def test_gram_det_example_matches_minors():
    vecs = ((1, 2, 0), (0, 1, 1))
    assert gram_det(vecs) == 6
    g = grassmann(vecs)
    assert g.norm_squared() == 6  # 1^2 + 1^2 + 2^2


def test_wedge_of_dependent_vectors_is_zero():
    assert wedge_norm_squared(((1, 2), (2, 4))) == 0


def test_hnf_is_unimodular_transform():
    mat = [[4, 6, 2], [2, 2, 0]]
    h, u = hnf(mat)  # column-style: H = mat @ U with U unimodular
    assert mat_mul(mat, u) == h
    # u is square integer with det +-1: recover via gram determinant
    assert gram_det(u) == 1


def test_integer_kernel_annihilates():
    mat = [[1, 2, 3], [0, 1, 1]]
    ker = integer_kernel(mat)
    assert len(ker) == 1
    (k,) = ker
    for row in mat:
        assert sum(a * b for a, b in zip(row, k)) == 0


def test_lattice_contains():
    lat = Lattice.from_basis([(2, 0), (1, 3)])
    assert lat.contains((3, 3))
    assert not lat.contains((1, 0))


def test_from_basis_rejects_dependent():
    with pytest.raises(DependentInput):
        Lattice.from_basis([(1, 1), (2, 2)])


def test_saturate_divides_out_content():
    lat = saturate([(2, 0, 0)])
    assert lat.rank == 1
    assert lat.det_squared == 1
    assert lat.contains((1, 0, 0))


def test_orthogonal_lattice_requires_saturated():
    unsat = Lattice.from_basis([(2, 0, 0)])
    with pytest.raises(NotSaturated):
        orthogonal_lattice(unsat)


def test_orthogonal_covolume_equality_example():
    lat = saturate([(1, 2, 0), (0, 1, 1)])
    perp = orthogonal_lattice(lat)
    assert perp.rank == 1
    assert perp.det_squared == lat.det_squared == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_covolume_equality_random(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 6)
    k = rng.randint(1, d - 1)
    vecs = [[rng.randint(-5, 5) for _ in range(d)] for _ in range(k)]
    if gram_det(vecs) == 0:
        return
    lat = saturate(vecs)
    perp = orthogonal_lattice(lat)
    assert perp.rank == d - lat.rank
    assert perp.det_squared == lat.det_squared
    # double-orthogonal returns to the original lattice
    back = orthogonal_lattice(perp)
    assert back.det_squared == lat.det_squared
    for v in lat.basis:
        assert back.contains(v)


def test_grassmann_norm_equals_gram_det_random():
    rng = random.Random(7)
    for _ in range(25):
        d = rng.randint(2, 5)
        k = rng.randint(1, d)
        vecs = [[rng.randint(-4, 4) for _ in range(d)] for _ in range(k)]
        assert grassmann(vecs).norm_squared() == gram_det(vecs)
