from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from sympy import divisor_count

from cftbench.invariants import enumerate_invariants
from cftbench.lattice_cft import (EvenLattice, LatticeCapExceeded, LatticeError, classify_invariants,
                                  classify_nimreps, discriminant, gluing_lattice_ok, theorem2_pipeline,
                                  torus_datum)
from cftbench.modular_data import check_modular
from cftbench.nimreps import exponents

A2 = [[2, -1], [-1, 2]]
D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]


def test_validation():
    with pytest.raises(LatticeError):
        EvenLattice.of([[3]])
    with pytest.raises(LatticeError):
        EvenLattice.of([[2, 1], [0, 2]])
    with pytest.raises(LatticeError):
        EvenLattice.of([[2, 3], [3, 2]])


@pytest.mark.parametrize("gram,orders,qs", [
    ([[2]], (2,), ["0", "1/2"]),
    ([[4]], (4,), ["0", "1/4", "1", "1/4"]),
    (A2, (3,), ["0", "2/3", "2/3"]),
])
def test_discriminant_forms(gram, orders, qs):
    D = discriminant(EvenLattice.of(gram))
    assert D.orders == orders
    assert sorted(str(D.q(x)) for x in D.elements()) == sorted(qs)


def test_torus_datum_sign():
    D = discriminant(EvenLattice.of([[6]]))
    d = torus_datum(D)
    assert check_modular(d).ok
    assert d.t[0] == Fraction(-1, 24) % 1


@pytest.mark.parametrize("N", range(1, 13))
def test_rank_one_counts(N):
    # oracle: the invariants of [2N] correspond to divisors of N
    invs = classify_invariants(EvenLattice.of([[2 * N]]))
    assert len(invs) == divisor_count(N)


@pytest.mark.parametrize("N", [4, 6, 9])
def test_rank_one_brute_force(N):
    L = EvenLattice.of([[2 * N]])
    D = discriminant(L)
    d = torus_datum(D)
    bf = {inv.Z.tobytes() for inv in enumerate_invariants(d, bounds=np.ones((d.size, d.size), dtype=np.int64))}
    assert bf == {inv.invariant.Z.tobytes() for inv in classify_invariants(L)}


def test_d4_triality():
    assert len(classify_invariants(EvenLattice.of(D4))) == 6


def test_cap():
    with pytest.raises(LatticeCapExceeded):
        classify_invariants(EvenLattice.of([[2 * 80]]), cap=100)


def test_nimreps_and_exponents():
    L = EvenLattice.of([[8]])
    D = discriminant(L)
    d = torus_datum(D)
    nims = classify_nimreps(L)
    assert len(nims) == 4  # one per subgroup of Z_8
    for E, N in nims:
        assert N.size == len(E)
        assert sum(exponents(d, N)) == len(E)


@st.composite
def rank2(draw):
    a = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    b = draw(st.integers(-3, 3))
    assume(4 * a * c - b * b > 0 and 4 * a * c - b * b <= 48)
    return [[2 * a, b], [b, 2 * c]]


@given(rank2())
def test_invariant_properties(gram):
    L = EvenLattice.of(gram)
    D = discriminant(L)
    assert D.order == L.det
    d = torus_datum(D)
    invs = classify_invariants(D)
    assert invs, "the diagonal invariant always exists"
    for inv in invs:
        Z = inv.invariant.Z
        assert set(np.unique(Z)) <= {0, 1}
        g = gluing_lattice_ok(D, Z)
        assert g["additive"] and g["even"] and g["self_dual_count"]
        assert len(inv.D_plus) == len(inv.D_minus)


@given(rank2())
def test_pipeline_recovers(gram):
    D = discriminant(EvenLattice.of(gram))
    for inv in classify_invariants(D):
        rec = theorem2_pipeline(D, inv)
        assert rec.meta["recovers_Z"] and rec.meta["nimrep_ok"] and rec.meta["compatible"]
        assert rec.meta["charge_is_Z"]
        assert len(rec.full_system) == (D.order // len(inv.D_minus)) * len(inv.D_plus)
        # sigma restriction unravels each neutral D_- coset into |D_-| classes
        assert all(len(v) == len(inv.D_minus) for v in rec.sigma_restriction.values())
