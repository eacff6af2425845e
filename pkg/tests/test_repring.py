from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cftbench.invariants import permutation_matrix, simple_current_invariant
from cftbench.nimreps import ade_nimrep, compatible, exponents, find_isomorphism, theorem4_nimrep, verify_nimrep
from cftbench.repring import (CharacterElement as CE, RepringError, induct, so3_neutral, so3_nimrep,
                              su2_verlinde_presentation, su3_cc_nimrep)
from cftbench.repring import su2_verlinde_nimrep
from conftest import su


def test_inductions():
    assert induct("Dirac_T_to_SU2", CE.sym("R_T", "a", 0)).coeffs == ()
    assert induct("Dirac_T_to_SU2", CE.sym("R_T", "a", -3)) == CE.sym("R_SU2", "s", 3).scale(-1)
    two_k2 = induct("T_to_O2", CE.make("R_T", {("a", -2): 1, ("a", 2): 1}))
    assert two_k2 == CE.sym("R_O2", "k", 2).scale(2)


def test_o2_products():
    k1 = CE.sym("R_O2", "k", 1)
    k2 = CE.sym("R_O2", "k", 2)
    assert k1 * k1 == k2 + CE.one("R_O2") + CE.sym("R_O2", "d")
    assert CE.sym("R_O2", "d") * k2 == k2


def test_su2_presentation_k2():
    m = su2_verlinde_presentation(2)
    assert m.basis == [("a", -1), ("a", 0), ("a", 1)]
    assert m.actions["a+a^-1"].tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert m.reducer(("a", 2)) == {}
    assert m.reducer(("a", 3)) == {("a", 1): -1}
    with pytest.raises(RepringError):
        su2_verlinde_presentation(3)


@pytest.mark.parametrize("k", [2, 4, 8])
def test_su2_presentation_is_fusion_ring(k):
    mod, N, iso = su2_verlinde_nimrep(k)
    assert iso is not None and verify_nimrep(su(2, k), N).ok
    # basis involution l -> -l matches the simple current sigma_{k+1}
    d = su(2, k)
    J = d.simple_currents[1].index
    inv = [mod.basis.index(("a", -b[1])) for b in mod.basis]
    assert np.array_equal(N[J], permutation_matrix(inv))


def test_so3_k4_star():
    mod, N = so3_nimrep(4)
    assert mod.actions["kappa_1"].tolist() == [[0, 0, 1, 0], [0, 0, 1, 0], [1, 1, 0, 1], [0, 0, 1, 0]]
    assert mod.reducer(("k", 3)) == {}


@pytest.mark.parametrize("k", [4, 8, 12, 16])
def test_so3_is_d_series(k):
    d = su(2, k)
    mod, N = so3_nimrep(k, d)
    D = ade_nimrep(f"D{k // 2 + 2}", k)
    assert find_isomorphism(N, D) is not None
    assert find_isomorphism(N, theorem4_nimrep(2, k, 2, datum=d)) is not None
    assert verify_nimrep(d, N).ok
    assert compatible(d, N, simple_current_invariant(d, d.simple_currents[1].index).Z)


def test_so3_odd_rejected():
    with pytest.raises(RepringError):
        so3_nimrep(5)


@pytest.mark.parametrize("k,size", [(4, 3), (8, 4), (12, 5)])
def test_so3_neutral(k, size):
    ns = so3_neutral(k)
    assert len(ns.module.labels) == size
    assert ns.intertwines
    mod, _ = so3_nimrep(k)
    # images land on delta and the even kappa's: [kbar_i] -> [kappa_2i]
    for row, lab in zip(ns.embedding, ns.module.labels):
        support = [mod.basis[j] for j in np.nonzero(row)[0]]
        if lab.startswith("kbar_") and lab != "kbar_0":
            assert support == [("k", 2 * int(lab[5:]))]
    with pytest.raises(RepringError):
        so3_neutral(6)


@pytest.mark.parametrize("k", range(0, 7))
def test_su3_cc(k):
    d = su(3, k)
    mod, N = su3_cc_nimrep(k, d)
    selfconj = sum(1 for i in range(d.size) if d.conj[i] == i)
    assert N.size == selfconj
    assert verify_nimrep(d, N).ok
    assert compatible(d, N, permutation_matrix(d.conj))


def test_su3_level1_spinor():
    mod, N = su3_cc_nimrep(1)
    assert mod.basis == [("s", 2)]


@given(st.sampled_from([4, 6, 8, 10]), st.integers(0, 40), st.integers(1, 6))
def test_rewriting_is_module_map(k, m, a):
    mod, _ = so3_nimrep(k)
    ka = CE.sym("R_O2", "k", a)
    assert mod.kernel_is_submodule(ka, 3 * (k + 2))
    x = CE.sym("R_O2", "k", m)
    # reducing before or after multiplying agrees
    red = CE.make("R_O2", mod.reducer(("k", m)) if m else {("1",): 1, ("d",): 1})
    assert np.array_equal(mod.reduce(ka * x), mod.reduce(ka * red))


@given(st.sampled_from([1, 2, 3, 4]), st.integers(1, 40))
def test_su3_reduction_idempotent(k, l):
    mod, _ = su3_cc_nimrep(k)
    if l % 2 != mod.basis[0][1] % 2:
        return
    once = mod.reducer(("s", l))
    again = {}
    for b, c in once.items():
        for t, e in mod.reducer(b).items():
            again[t] = again.get(t, 0) + c * e
    assert {b: c for b, c in again.items() if c} == once
