from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cftbench.cyclotomic import root_of_unity
from cftbench.doubles import (TABLE1, _quotient_chars, dihedral_parity_report, dihedral_sc_invariant,
                              dihedral_so_theory, lagrangian_invariant, omega_from_images, omega_on_primaries,
                              sigma_restrict_stages, twisted_diagonal_nimrep, zn_automorphism_count,
                              zp_classify, zp_datum, zp_invariant, zpn_bruteforce_count, zpn_census,
                              zpn_pair_count, zpn_pairs)
from cftbench.groups import cyclic_group, dihedral_group
from cftbench.invariants import enumerate_invariants, is_automorphism, permutation_matrix, verify_invariant
from cftbench.modular_data import check_modular, verlinde_tensor
from cftbench.nimreps import compatible, find_isomorphism, verify_nimrep, verlinde_nimrep
from conftest import dihedral, zn


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cyclic_double_modular(n):
    assert check_modular(zn(n).datum).ok


def test_zp3_entries():
    d = zp_datum(3).datum
    i, j = d.index((1, 0)), d.index((0, 1))
    # conj convention, see notes: S_{(1,0),(0,1)} = zeta_3^{-1} / 3
    # W = |G| S, so W_{(1,0),(0,1)} = zeta_3^{-1}
    assert d.W.entry(i, j) == root_of_unity(3, 2)
    for a in range(3):
        for b in range(3):
            assert d.t[d.index((a, b))] == Fraction(a * b % 3, 3)
    T = verlinde_tensor(d)
    out = np.nonzero(T[d.index((1, 2)), d.index((2, 1))])[0]
    assert [d.primaries[x] for x in out] == [(0, 0)]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_zp_classification(p):
    rows = zp_classify(p)
    assert len(rows) == 2 * p + 2
    for r in rows:
        assert r.matches_table and r.alpha_ok and r.lagrangian_ok
        assert verify_invariant(zp_datum(p).datum, r.invariant.Z).ok


def test_zp_brute_force_p3():
    d = zp_datum(3).datum
    found = {inv.Z.tobytes() for inv in enumerate_invariants(d, cap_size=100)}
    mine = {r.invariant.Z.astype(np.int64).tobytes() for r in zp_classify(3)}
    assert found == mine


def test_table1_z00_row():
    rec = {r.name: r for r in TABLE1(3)}["Z^{0,0}"]
    assert rec.nimrep == "R_G" and rec.D_plus == "Gx0" and rec.D_minus == "Gx0"


def test_alpha_minus_pattern():
    rows = {r.record.name: r for r in zp_classify(3)}
    assert rows["Z^(1)"].alpha_ok


def test_zpn_counts():
    for (p, nu), want in {(2, 2): 22, (2, 3): 66, (3, 2): 41, (3, 1): 8}.items():
        assert zpn_pair_count(p, nu) == want
        assert len(zpn_pairs(p, nu)) == want
        assert zpn_bruteforce_count(p ** nu) == want


def test_zp_reconciles_with_classification():
    for p in (2, 3, 5):
        assert zpn_pair_count(p, 1) == 2 * p + 2


def test_automorphism_counts():
    assert [zn_automorphism_count(n) for n in (2, 3, 4)] == [2, 4, 4]


def test_z4_census():
    c = zpn_census(2, 2, enumerate_all=True)
    assert c.realised == 22 and c.invariants == 22 and not c.unmatched


@pytest.mark.parametrize("n,size", [(2, 22), (3, 32), (4, 46)])
def test_dihedral_datum(n, size):
    fd = dihedral(n)
    assert fd.size == size == 2 * n * n + 14
    assert len(fd.datum.simple_currents) == 8
    assert check_modular(fd.datum).ok


def test_dihedral_corrected_table_matches():
    for n in (2, 3):
        assert dihedral_parity_report(dihedral(n), corrected=True).ok


def test_dihedral_printed_table_reports_mismatches():
    rep = dihedral_parity_report(dihedral(3))
    assert len(rep.mismatches) == 16 and rep.currents_found == 8


def test_z010_fixed_points():
    n = 2
    fd = dihedral(n)
    d = fd.datum
    J = {j.index: j for j in d.simple_currents}[d.index((("s", 0), ("psi", 1, 0)))]
    for x, lab in enumerate(d.primaries):
        (kind, a), ch = lab
        if kind == "s" and a % n == 0 and ch[0] == "chi":
            assert J.perm[x] == x


def test_phi_parity():
    n = 3
    fd = dihedral(n)
    d = fd.datum
    cur = {j.index: j for j in d.simple_currents}
    for h in (0, 1):
        for j in (0, 1):
            J = cur[d.index((("s", h * n), ("psi", 0, j)))]
            for x, ((kind, a), ch) in enumerate(d.primaries):
                if kind == "s" and ch[0] == "phi":
                    assert int(2 * J.Q[x]) % 2 == (j * a + h * ch[1]) % 2


def test_dihedral_sc_invariants():
    fd = dihedral(3)
    assert is_automorphism(dihedral_sc_invariant(3, 1, 0, 1, fd).Z)
    fd2 = dihedral(2)
    Z100 = dihedral_sc_invariant(2, 1, 0, 0, fd2).Z
    Z010 = dihedral_sc_invariant(2, 0, 1, 0, fd2).Z
    assert verify_invariant(fd2.datum, Z100).ok and not is_automorphism(Z100)
    assert verify_invariant(fd2.datum, Z100 @ Z010).ok


@pytest.mark.parametrize("n", [2, 3])
def test_so_theory(n):
    fd = dihedral(n)
    th = dihedral_so_theory(n, fd)
    assert np.array_equal(th.matched_invariant, dihedral_sc_invariant(n, 1, 0, 0, fd).Z)
    assert verify_nimrep(fd.datum, th.nimrep).ok
    assert compatible(fd.datum, th.nimrep, th.matched_invariant)
    zc = fd.group.index((0, n))
    for i in range(fd.size):
        differs = not np.array_equal(th.alpha_plus[i], th.alpha_minus[i])
        chi = fd.chars[i]
        assert differs == (chi.value(zc) != chi.value(0))


def test_sigma_restriction_identity():
    G = cyclic_group(3)
    fd = zn(3)
    Q, prims = _quotient_chars(G, range(3), (0,))
    images = [sigma_restrict_stages(G, range(3), (0,), r, c, fd) for r, c in prims]
    assert sorted(tuple(im.items()) for im in images) == sorted(((i, 1),) for i in range(fd.size))


def test_sigma_restriction_unravels():
    G = cyclic_group(4)
    fd = zn(4)
    N = (0, 2)
    Q, prims = _quotient_chars(G, range(4), N)
    for r, c in prims:
        im = sigma_restrict_stages(G, range(4), N, r, c, fd)
        assert len(im) == 2 and all(v == 1 for v in im.values())


def test_sigma_restriction_induces():
    G = dihedral_group(2)
    fd = dihedral(2)
    s = G.index((0, 1))
    K = G.generate([s])
    Q, prims = _quotient_chars(G, K, (0,))
    for r, c in prims:
        im = sigma_restrict_stages(G, K, (0,), r, c, fd)
        k = Q.labels[r]
        ZG = G.centralizer(k)
        ZK = G.centralizer(k, K)
        total = sum(m * int(fd.chars[i].degree) for i, m in im.items())
        assert total == len(ZG) // len(ZK)


def test_twisted_nimreps():
    fd = dihedral(3)
    G = fd.group
    ident = omega_from_images(G, fd.tag, [G.index((1, 0)), G.index((0, 1))])
    N0 = twisted_diagonal_nimrep(fd, ident)
    assert find_isomorphism(N0, verlinde_nimrep(fd.datum)) is not None
    outer = omega_from_images(G, fd.tag, [G.index((1, 1)), G.index((0, 1))])
    N = twisted_diagonal_nimrep(fd, outer)
    assert N.size == 20 and verify_nimrep(fd.datum, N).ok
    Zw = permutation_matrix(omega_on_primaries(fd, outer))
    assert verify_invariant(fd.datum, Zw).ok and compatible(fd.datum, N, Zw)


@given(st.sampled_from([4, 5, 6]))
def test_inversion_twist(n):
    fd = zn(n)
    omega = [(-x) % n for x in range(n)]
    N = twisted_diagonal_nimrep(fd, omega)
    assert N.size == (1 if n % 2 else 4)
    Zw = permutation_matrix(omega_on_primaries(fd, omega))
    assert verify_nimrep(fd.datum, N).ok and compatible(fd.datum, N, Zw)


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_lagrangian_pairs_verify(p, data):
    n = p if p != 4 else 4
    pair = data.draw(st.sampled_from(zpn_pairs(2, 2) if n == 4 else zpn_pairs(p, 1)))
    d = zn(n).datum
    Z = lagrangian_invariant(n, pair)
    idx = {lab: i for i, lab in enumerate(d.primaries)}
    order = [idx[(i // n, i % n)] for i in range(n * n)]
    Zd = np.zeros_like(Z)
    Zd[np.ix_(order, order)] = Z
    assert verify_invariant(d, Zd).ok
