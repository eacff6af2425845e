from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cftbench.invariants import permutation_matrix, simple_current_invariant
from cftbench.nimreps import (Nimrep, ade_nimrep, case_a, compatible, exponents, find_isomorphism,
                              naive_orbit_coefficients, perron_frobenius_check, theorem4_nimrep,
                              theorem5_nimrep, to_dot, verify_nimrep, verlinde_nimrep)
from cftbench.repring import su3_cc_nimrep
from conftest import su


def _zj(d, power=1):
    return simple_current_invariant(d, d.simple_currents[power].index).Z


def test_verlinde_nimrep():
    d = su(2, 4)
    N = verlinde_nimrep(d)
    assert verify_nimrep(d, N).ok
    assert np.array_equal(exponents(d, N), np.ones(d.size, dtype=np.int64))
    assert compatible(d, N, np.eye(d.size, dtype=np.int64))


def test_a_series_is_verlinde():
    d = su(2, 4)
    assert find_isomorphism(ade_nimrep("A5", 4), verlinde_nimrep(d)) is not None


def test_negative_control_names_the_axiom():
    d = su(2, 4)
    N = ade_nimrep("D4", 4)
    bad = N.mats.copy()
    col = bad[:, :, 0].copy()
    bad[:, :, 0] = bad[:, :, 3]
    bad[:, :, 3] = col
    rep = verify_nimrep(d, Nimrep(N.boundary, bad))
    assert not rep.ok
    assert not (rep.unit and rep.transpose and rep.homomorphism)


def test_d7_exponents():
    d = su(2, 10)
    ex = exponents(d, ade_nimrep("D7", 10))
    labels = [w.dynkin[0] for w in d.primaries]
    got = sorted(l + 1 for l, m in zip(labels, ex) for _ in range(m))
    # D7 has Coxeter number 12: odd exponents plus h/2 = 6
    assert got == [1, 3, 5, 6, 7, 9, 11]


def test_e_series():
    d = su(2, 16)
    E7 = ade_nimrep("E7", 16)
    assert E7.size == 7 and verify_nimrep(d, E7).ok
    assert not compatible(d, ade_nimrep("A17", 16), np.diag(exponents(d, E7)))
    d10 = su(2, 10)
    assert verify_nimrep(d10, ade_nimrep("E6", 10)).ok


def test_d4_threefold_symmetry():
    N = ade_nimrep("D4", 4)
    d = su(2, 4)
    s3 = [i for i, w in enumerate(d.primaries) if w.dynkin == (2,)][0]
    M = N[s3]
    legs = [i for i in range(4) if M[i, i] == 0 and i != int(np.argmax(N[1].sum(axis=1)))]
    assert len(legs) == 3
    # sigma_3 permutes the three legs cyclically or fixes them, and fixes the centre
    centre = int(np.argmax(N[1].sum(axis=1)))
    assert M[centre, centre] == 2


def test_case_a():
    assert case_a(2, 4, 2)
    assert not case_a(2, 6, 2)
    assert case_a(3, 5, 3)


def test_simple_current_nimrep_examples():
    N = theorem4_nimrep(2, 4, 2)
    assert N.size == 4
    d = su(2, 4)
    assert verify_nimrep(d, N).ok and compatible(d, N, _zj(d))
    assert find_isomorphism(N, ade_nimrep("D4", 4)) is not None
    N333 = theorem4_nimrep(3, 3, 3)
    assert N333.size == 6
    d1 = su(3, 2)
    assert find_isomorphism(theorem4_nimrep(3, 2, 1), verlinde_nimrep(d1)) is not None


def test_conjugation_twisted_nimrep_examples():
    d = su(3, 1)
    _, Nc = su3_cc_nimrep(1, d)
    N = theorem5_nimrep(Nc, 3, 1, 3)
    assert N.size == 3 and verify_nimrep(d, N).ok
    for lam, w in enumerate(d.primaries):
        tri = (w.dynkin[0] + 2 * w.dynkin[1]) % 3
        # each lam shifts the Z_3 label by its triality
        assert np.array_equal(N[lam], np.roll(np.eye(3, dtype=np.int64), tri, axis=1))
    same = theorem5_nimrep(Nc, 3, 1, 1)
    assert np.array_equal(same.mats, Nc.mats)


def test_conjugation_twisted_exponents_k3():
    d = su(3, 3)
    _, Nc = su3_cc_nimrep(3, d)
    N = theorem5_nimrep(Nc, 3, 3, 3)
    assert verify_nimrep(d, N).ok
    ex = exponents(d, N)
    want = np.zeros(d.size, dtype=np.int64)
    for mu, w in enumerate(d.primaries):
        if d.conj[mu] == mu:
            orbit = {w.rotate(j) for j in range(3)}
            for v in orbit:
                want[d.index(v)] += 3 // len(orbit)
    assert np.array_equal(ex, want)


@pytest.mark.parametrize("n,k,dd", [(2, 4, 2), (2, 8, 2), (3, 3, 3), (4, 4, 2)])
def test_naive_sum_identity(n, k, dd):
    # summing the closed-form coefficients over the target resolver labels gives the orbit-module coefficients
    d = su(n, k)
    N = theorem4_nimrep(n, k, dd, datum=d)
    reps, naive = naive_orbit_coefficients(d, dd)
    rep_labels = [d.primaries[r].dynkin for r in reps]
    orbit_of = [rep_labels.index(b.rep) for b in N.boundary]
    summed = np.zeros_like(naive)
    for x, ox in enumerate(orbit_of):
        if N.boundary[x].l != 0:
            continue
        for y, oy in enumerate(orbit_of):
            summed[:, ox, oy] += N.mats[:, x, y]
    assert np.array_equal(summed, naive)


def test_dot_export():
    text = to_dot(ade_nimrep("D4", 4), 1)
    assert text.startswith("graph") and text.count("--") == 3


@given(st.sampled_from([2, 4, 6, 8]))
def test_d_series_properties(k):
    d = su(2, k)
    diag = f"D{k // 2 + 2}" if k >= 4 else "A3"
    N = ade_nimrep(diag, k)
    assert verify_nimrep(d, N).ok
    assert perron_frobenius_check(d, N)
    for J in d.simple_currents:
        M = N[J.index]
        assert (M.sum(axis=0) == 1).all() and (M.sum(axis=1) == 1).all()
