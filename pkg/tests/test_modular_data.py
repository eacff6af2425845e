from __future__ import annotations

import itertools

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cftbench.modular_data import (AffineWeight, check_modular, dims_and_ideal, fusion_kac_walton,
                                   fusion_verlinde, kw_fusion_tensor, su_datum, verlinde_tensor)
from conftest import su


def S_complex(d):
    return d.W.to_complex() / np.sqrt(d.s2)


def idx(d, *dynkin):
    return d.index(AffineWeight.from_dynkin(d.lie[1], dynkin))


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_su2_sine_formula(k):
    # oracle: S_ab = sqrt(2/kappa) sin(pi (a+1)(b+1)/kappa), evaluated in mpmath
    d = su(2, k)
    kap = k + 2
    S = S_complex(d)
    for a, b in itertools.product(range(k + 1), repeat=2):
        want = mpmath.sqrt(mpmath.mpf(2) / kap) * mpmath.sin(mpmath.pi * (a + 1) * (b + 1) / kap)
        assert abs(S[idx(d, a), idx(d, b)] - complex(want)) < 1e-12


def test_su2_level1_hadamard():
    S = S_complex(su(2, 1))
    assert np.allclose(S, np.array([[1, 1], [1, -1]]) / np.sqrt(2))


@pytest.mark.parametrize("n,k", [(2, 4), (3, 2), (3, 3), (4, 2), (5, 1)])
def test_modular_relations(n, k):
    assert check_modular(su(n, k)).ok


@pytest.mark.parametrize("k", [3, 6, 10])
def test_su2_quantum_dimension_is_path_eigenvalue(k):
    d = su(2, k)
    S = S_complex(d)
    qd = S[idx(d, 1), 0] / S[0, 0]
    path = np.diag(np.ones(k), 1) + np.diag(np.ones(k), -1)
    assert abs(qd - max(np.linalg.eigvalsh(path))) < 1e-10
    assert abs(qd - 2 * np.cos(np.pi / (k + 2))) < 1e-12


@pytest.mark.parametrize("n,k", [(2, 5), (3, 3), (4, 2)])
def test_vacuum_row_positive(n, k):
    S = S_complex(su(n, k))
    assert np.all(S[0].real > 0) and np.allclose(S[0].imag, 0)


def test_su2_level1_fusion():
    d = su(2, 1)
    v = fusion_verlinde(d, idx(d, 1), idx(d, 1))
    assert v.tolist() == [1, 0]


def test_vacuum_is_unit():
    d = su(3, 2)
    T = verlinde_tensor(d, [0])[0]
    assert np.array_equal(T, np.eye(d.size, dtype=T.dtype))


def test_su3_level1_is_z3():
    d = su(3, 1)
    T = verlinde_tensor(d)
    for a, b in itertools.product(range(3), repeat=2):
        row = T[a, b]
        assert row.sum() == 1
    assert len(d.simple_currents) == 3


def test_kw_su2_level16_folding():
    # sigma_9 x sigma_9 = sigma_1 + sigma_3 + ... + sigma_17 truncated at the wall: Dynkin 0, 2, ..., 16
    v = fusion_kac_walton(2, 16, (8,), (8,))
    weights = [w.dynkin[0] for w in su(2, 16).primaries]
    got = sorted(weights[i] for i in np.nonzero(v)[0])
    assert got == list(range(0, 17, 2))


def test_dims():
    dims, _ = dims_and_ideal(2, 4, depth=0)
    assert all(dims[w] == w.dynkin[0] + 1 for w in dims)
    dims3, _ = dims_and_ideal(3, 1, depth=0)
    assert dims3[AffineWeight.from_dynkin(1, (1, 0))] == 3 and dims3[AffineWeight.from_dynkin(1, (0, 1))] == 3


@pytest.mark.parametrize("n,k", [(2, 6), (3, 3), (4, 2)])
def test_verlinde_equals_kac_walton(n, k):
    d = su(n, k)
    assert np.array_equal(verlinde_tensor(d).astype(np.int64), kw_fusion_tensor(n, k).astype(np.int64))


def test_conductor_cap():
    from cftbench.cyclotomic import ConductorOverflow
    with pytest.raises(ConductorOverflow):
        su_datum(5, 30, cap=50)


@given(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9), st.integers(0, 2), st.integers(0, 2))
def test_simple_current_fusion_symmetry(a, b, c, i, j):
    # N_{J^i lam, J^j mu}^{J^{i+j} nu} = N_{lam, mu}^nu on SU(3) level 4
    d = su(3, 4)
    W = d.primaries
    lam, mu, nu = W[a % len(W)], W[b % len(W)], W[c % len(W)]
    T = verlinde_tensor(d)
    lhs = T[d.index(lam.rotate(i)), d.index(mu.rotate(j)), d.index(nu.rotate(i + j))]
    assert lhs == T[d.index(lam), d.index(mu), d.index(nu)]


@given(st.sampled_from([(2, 3), (2, 7), (3, 2), (3, 4), (4, 1)]), st.data())
def test_conjugation_and_current_phases(nk, data):
    n, k = nk
    d = su(n, k)
    S = S_complex(d)
    lam = data.draw(st.integers(0, d.size - 1))
    assert np.allclose(S[d.conj[lam]], S[lam].conj())
    assert d.t[d.conj[lam]] == d.t[lam]
    for J in d.simple_currents:
        for mu in range(d.size):
            ph = np.exp(2j * np.pi * float(J.Q[mu]))
            assert abs(S[J.perm[lam], mu] - ph * S[lam, mu]) < 1e-10
