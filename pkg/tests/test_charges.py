from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cftbench.charges import (AbelianGroup, charge_group, chgpsc_predict, forget_equivariance_assignment,
                              m_k_su, verlinde_charge_gcd)
from cftbench.nimreps import ade_nimrep, theorem4_nimrep, verlinde_nimrep
from conftest import su


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_a_series(k):
    d = su(2, k)
    res = charge_group(d, verlinde_nimrep(d))
    assert res.group == AbelianGroup.of(k + 2)
    # generated by q_[sigma_l] = l, up to a unit
    q = res.generators[0]
    l = [w.dynkin[0] + 1 for w in d.primaries]
    u = q[0]
    assert all((u * li - qi) % (k + 2) == 0 for li, qi in zip(l, q))


@pytest.mark.parametrize("diagram,k,factors", [("D5", 6, (4,)), ("D6", 8, (2, 2)), ("E6", 10, (3,)),
                                               ("E7", 16, (2,)), ("E8", 28, ())])
def test_ade_charge_groups(diagram, k, factors):
    d = su(2, k)
    assert charge_group(d, ade_nimrep(diagram, k)).group == AbelianGroup.of(*factors)


def test_canonical_form():
    assert AbelianGroup.of(6, 2) == AbelianGroup.of(2, 6) == AbelianGroup.of(3, 2, 2)
    assert AbelianGroup.of(1, 1).invariant_factors == ()


def test_m_k():
    assert [m_k_su(2, k) for k in (1, 4, 16)] == [3, 6, 18]
    assert m_k_su(3, 1) == 2
    assert m_k_su(4, 2) == 1


def test_verlinde_gcd():
    assert verlinde_charge_gcd(2, 2) == 4
    assert verlinde_charge_gcd(2, 16) == 18
    assert verlinde_charge_gcd(3, 3) == 3


def test_chgpsc_trivial_d():
    assert chgpsc_predict(3, 3, 1) == AbelianGroup.of(m_k_su(3, 3))


def test_chgpsc_444_plain_variant():
    assert chgpsc_predict(4, 4, 4) == AbelianGroup.of(4, 4, 2, 2)  # reported mismatch, see notes


def test_forget_equivariance():
    q = forget_equivariance_assignment(2, 4)
    assert q[(2,)] == 3 and q[(0,)] == 1
    q16 = forget_equivariance_assignment(2, 16)
    assert all(v == (lab[0] + 1) % 18 for lab, v in q16.items())


@given(st.sampled_from([(2, 4, 2), (2, 8, 2), (3, 3, 3), (4, 4, 2), (3, 6, 3)]))
def test_charge_solutions_satisfy_relations(nkd):
    n, k, dd = nkd
    d = su(n, k)
    N = theorem4_nimrep(n, k, dd, datum=d)
    res = charge_group(d, N)
    for q, m in zip(res.generators, res.group.invariant_factors):
        for lam in range(d.size):
            for x in range(N.size):
                lhs = d.dims[lam] * q[x] - sum(int(N.mats[lam, x, y]) * q[y] for y in range(N.size))
                assert m == 0 and lhs == 0 or m and lhs % m == 0
