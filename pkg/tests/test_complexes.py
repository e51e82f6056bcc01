import pytest
from hypothesis import given
from hypothesis import strategies as st

from linearize.complexes import (
    ChainMap,
    GradedChainComplex,
    GradedModule,
    HomologyTable,
    InvalidChainMapError,
    NotAComplexError,
    cone,
    differential_ranks,
    euler_characteristic,
    gdim,
    homology,
    shift,
    verify_chain_map,
    verify_complex,
)
from linearize.laurent import Q, QINV, LaurentPoly
from linearize.matrix import RationalMatrix, ShapeError, rank
from linearize.simplicial import SimplicialComplex, boundary_complex, sphere
from generators import random_chain_map, random_complex
from oracles import dense_rank

modules = st.lists(st.integers(-4, 4), max_size=6).map(lambda ds: GradedModule(tuple(ds)))


def _euler_from_table(t: HomologyTable) -> LaurentPoly:
    total = LaurentPoly()
    for (n, m), d in t.items():
        total = total + LaurentPoly({m: (-1) ** (n % 2) * d})
    return total


# -- graded modules ----------------------------------------------------------

def test_gdim_examples():
    assert gdim(GradedModule((-1, 1))) == Q + QINV
    assert gdim(GradedModule(())) == LaurentPoly()
    assert gdim(GradedModule((-2, 0, 0, 2))) == LaurentPoly({2: 1, 0: 2, -2: 1})


def test_shifted_algebra():
    a = GradedModule((-1, 1))
    assert gdim(a.shift(-1)) == 1 + LaurentPoly({-2: 1})


@given(modules, modules)
def test_gdim_additive_and_multiplicative(v, w):
    assert gdim(v + w) == gdim(v) + gdim(w)
    assert gdim(v @ w) == gdim(v) * gdim(w)
    assert gdim(v).is_nonnegative()


# -- verify_complex -----------------------------------------------------------

def _interval():
    # Q -> Q -> Q with d = [1], [0]: a two-term piece plus a lone generator
    return GradedChainComplex({1: [0], 0: [0]}, {1: RationalMatrix.identity(1)})


def test_zero_differentials_is_complex():
    c = GradedChainComplex({0: [0, 1], 1: [2]})
    assert verify_complex(c)


def test_simplicial_boundary_is_complex():
    assert verify_complex(boundary_complex(sphere(2)))


def test_corrupted_sign_detected():
    c = boundary_complex(SimplicialComplex([["a", "b", "c"]]))  # a filled triangle
    assert verify_complex(c)
    d2 = c.differentials[2]
    (i, j), v = next(iter(d2.items()))
    flipped = dict(d2.items())
    flipped[i, j] = -v
    bad = GradedChainComplex(c.modules, {**c.differentials, 2: RationalMatrix(d2.rows, d2.cols, flipped)})
    assert verify_complex(bad) is False


def test_q_degree_violation_detected():
    c = GradedChainComplex({1: [0], 0: [2]}, {1: RationalMatrix.identity(1)})
    assert verify_complex(c) is False


def test_shape_mismatch_raises():
    c = GradedChainComplex({1: [0], 0: [0, 0]}, {1: RationalMatrix.identity(1)})
    with pytest.raises(ShapeError):
        verify_complex(c)


# -- homology -----------------------------------------------------------------

def test_homology_of_point():
    assert homology(GradedChainComplex({0: [0]})) == {(0, 0): 1}


def test_identity_is_acyclic():
    assert homology(_interval()) == {}


def test_tetrahedron_boundary_homology():
    c = boundary_complex(sphere(2))
    for n, d in c.differentials.items():
        assert rank(d) == dense_rank(d.to_dense())
    assert homology(c) == {(0, 0): 1, (2, 0): 1}


def test_homology_rejects_non_complex():
    c = GradedChainComplex({2: [0], 1: [0], 0: [0]},
                           {2: RationalMatrix.identity(1), 1: RationalMatrix.identity(1)})
    with pytest.raises(NotAComplexError):
        homology(c)


def test_euler_examples():
    assert euler_characteristic(GradedChainComplex({0: [-1, 1]})) == Q + QINV
    assert euler_characteristic(GradedChainComplex({})) == LaurentPoly()


def test_homology_table_json_and_poincare():
    t = HomologyTable({(0, 1): 1, (-2, 5): 2})
    assert HomologyTable.from_json(t.to_json()) == t
    assert t.poincare() == "2*t^-2*q^5 + q"
    assert t.euler_characteristic() == LaurentPoly({5: 2, 1: 1})


@pytest.mark.parametrize("step", [-1, 1])
def test_random_complexes(rng, step):
    for _ in range(40):
        c = random_complex(rng, max_dim=40, step=step)
        assert c.total_dim <= 40
        assert verify_complex(c)
        h = homology(c)
        assert _euler_from_table(h) == euler_characteristic(c)
        ranks = differential_ranks(c)
        for n in c.degrees():
            for m, count in c.module(n).gdim().terms():
                assert ranks.get((n, m), 0) + ranks.get((n - step, m), 0) <= count


# -- shift ----------------------------------------------------------------------

def test_shift_identity(rng):
    c = random_complex(rng)
    s = shift(c, 0, 0)
    assert s.modules == c.modules
    assert s.differentials == c.differentials


def test_shift_euler(rng):
    for _ in range(10):
        c = random_complex(rng)
        s = shift(c, 1, 2)
        assert verify_complex(s)
        assert euler_characteristic(s) == -LaurentPoly({2: 1}) * euler_characteristic(c)
        assert homology(s) == {(n + 1, m + 2): d for (n, m), d in homology(c).items()}


# -- cone -----------------------------------------------------------------------

def test_cone_of_identity_is_acyclic(rng):
    for _ in range(10):
        c = random_complex(rng)
        k = cone(ChainMap.identity(c))
        assert verify_complex(k)
        assert homology(k) == {}


def test_cone_of_zero_map(rng):
    v, w = random_complex(rng), random_complex(rng)
    k = cone(ChainMap.zero(v, w))
    assert euler_characteristic(k) == euler_characteristic(w) - euler_characteristic(v)


def test_cone_from_zero_complex(rng):
    w = random_complex(rng)
    k = cone(ChainMap.zero(GradedChainComplex({}), w))
    assert homology(k) == homology(w)


def test_cone_rejects_non_chain_map():
    v = GradedChainComplex({1: [0], 0: [0]}, {1: RationalMatrix.identity(1)})
    w = GradedChainComplex({1: [0], 0: [0]})
    f = ChainMap(v, w, {0: RationalMatrix.identity(1)})  # f d_V != d_W f = 0
    assert not verify_chain_map(f)
    with pytest.raises(InvalidChainMapError):
        cone(f)


@pytest.mark.parametrize("step", [-1, 1])
def test_cone_of_random_chain_maps(rng, step):
    for _ in range(25):
        f, _ = random_chain_map(rng, max_total=40, step=step)
        assert f.source.total_dim + f.target.total_dim <= 40
        assert verify_chain_map(f)
        k = cone(f)
        assert verify_complex(k)
        assert euler_characteristic(k) == euler_characteristic(f.target) - euler_characteristic(f.source)
        assert _euler_from_table(homology(k)) == euler_characteristic(k)
