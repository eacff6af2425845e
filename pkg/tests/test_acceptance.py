"""End-to-end acceptance checks AC1..AC9.

Each test prints one line ``ACn PASS|FAIL <detail>`` to the terminal. Every
comparison is exact (integers, Fractions or cyclotomic integers), so the pinned
tolerance is zero throughout; the runtime limits are pinned below.
"""
from __future__ import annotations

import time

import numpy as np
import pytest

from cftbench.charges import AbelianGroup, charge_group, chgpsc_validation
from cftbench.cli import su2_ade_name
from cftbench.doubles import (dihedral_datum, dihedral_parity_report, dihedral_sc_invariant, dihedral_so_theory,
                              zp_classify, zpn_pair_count, zpn_pairs)
from cftbench.invariants import enumerate_invariants, permutation_matrix, simple_current_invariant
from cftbench.lattice_cft import EvenLattice, classify_invariants, discriminant, theorem2_pipeline, torus_datum
from cftbench.modular_data import (check_modular, fusion_kac_walton, fusion_verlinde, kw_fusion_tensor, su_datum,
                                   verlinde_tensor)
from cftbench.nimreps import (Nimrep, NimrepError, ade_adjacency, ade_nimrep, case_a, compatible, exponents, find_isomorphism,
                              theorem4_nimrep, verify_nimrep, verlinde_nimrep)
from cftbench.repring import so3_nimrep, su3_cc_nimrep

TOLERANCE = 0  # exact arithmetic everywhere
AC1_SECONDS = 300
AC3_SECONDS = 600

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    def emit(tag: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{tag} {'PASS' if ok else 'FAIL'} {detail}")
        return ok
    return emit


def _ade_expected(k: int) -> set[str]:
    names = {f"A{k + 1}"}
    if k % 2 == 0:
        names.add(f"D{k // 2 + 2}")
    names |= {10: {"E6"}, 16: {"E7"}, 28: {"E8"}}.get(k, set())
    return names


def test_ac1_su2_ade(report):
    t0 = time.perf_counter()
    bad = {}
    for k in (3, 5, 7, 4, 6, 8, 12, 14, 10, 16, 28):
        d = su_datum(2, k)
        got = {su2_ade_name(d, inv.Z) or "?" for inv in enumerate_invariants(d)}
        if got != _ade_expected(k):
            bad[k] = sorted(got)
    dt = time.perf_counter() - t0
    ok = not bad and dt < AC1_SECONDS
    report("AC1", ok, f"11 levels, mismatches={bad}, {dt:.1f}s (limit {AC1_SECONDS}s), tol={TOLERANCE}")
    assert ok


def test_ac2_charge_groups(report):
    cases = [(f"A{k + 1}", k, (k + 2,)) for k in range(1, 17)]
    cases += [("D5", 6, (4,)), ("D6", 8, (2, 2)), ("E6", 10, (3,)), ("E7", 16, (2,)), ("E8", 28, ())]
    bad = []
    for diagram, k, factors in cases:
        d = su_datum(2, k)
        N = verlinde_nimrep(d) if diagram[0] == "A" else ade_nimrep(diagram, k)
        g = charge_group(d, N).group
        if g != AbelianGroup.of(*factors):
            bad.append((diagram, k, g.invariant_factors))
    report("AC2", not bad, f"{len(cases)} nimreps, mismatches={bad}")
    assert not bad


def test_ac3_theorem4(report):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(2, 5):
        for k in range(1, 9):
            d = su_datum(n, k)
            for dd in range(2, n + 1):
                if n % dd:
                    continue
                try:
                    if not case_a(n, k, dd):
                        continue
                except NimrepError:  # no simple-current invariant at this (n, k, d)
                    continue
                N = theorem4_nimrep(n, k, dd, d)
                Z = simple_current_invariant(d, d.simple_currents[n // dd].index).Z
                ok = verify_nimrep(d, N).ok and compatible(d, N, Z)
                if n == 2:
                    D = ade_nimrep(f"D{k // 2 + 2}", k)
                    ok = ok and find_isomorphism(N, D) is not None
                    ok = ok and find_isomorphism(N, so3_nimrep(k, d)[1]) is not None
                checked += 1
                if not ok:
                    bad.append((n, k, dd))
    dt = time.perf_counter() - t0
    ok = checked > 0 and not bad and dt < AC3_SECONDS
    report("AC3", ok, f"{checked} Case-A triples, failures={bad}, {dt:.1f}s (limit {AC3_SECONDS}s)")
    assert ok


def test_ac4_torus(report):
    bad = []
    triples = 0
    for N in range(1, 13):
        L = EvenLattice.of([[2 * N]])
        D = discriminant(L)
        d = torus_datum(D)
        if not check_modular(d).ok:
            bad.append((N, "datum"))
            continue
        ones = np.ones((d.size, d.size), dtype=np.int64)
        brute = {inv.Z.tobytes() for inv in enumerate_invariants(d, bounds=ones)}
        invs = classify_invariants(L)
        if brute != {inv.invariant.Z.tobytes() for inv in invs}:
            bad.append((N, "classification"))
        for inv in invs:
            triples += 1
            meta = theorem2_pipeline(D, inv).meta
            if not (meta["recovers_Z"] and meta["charge_is_Z"]):
                bad.append((N, "pipeline", meta))
    report("AC4", not bad, f"[2N], N<=12: {triples} triples, failures={bad}")
    assert not bad


def test_ac5_zp(report):
    bad = []
    for p in (2, 3, 5, 7):
        rows = zp_classify(p)
        if len(rows) != 2 * p + 2 or len({r.invariant.Z.tobytes() for r in rows}) != 2 * p + 2:
            bad.append((p, "count"))
        bad += [(p, r.record.name) for r in rows if not (r.matches_table and r.alpha_ok and r.lagrangian_ok)]
    for p, nu in ((2, 2), (2, 3), (3, 2)):
        pairs = zpn_pairs(p, nu)
        if len(set(pairs)) != zpn_pair_count(p, nu):
            bad.append((p, nu, len(set(pairs)), zpn_pair_count(p, nu)))
    report("AC5", not bad, f"Z_p p in 2,3,5,7 and Z_(p^nu) pair counts, failures={bad}")
    assert not bad


def test_ac6_dihedral(report):
    lines, ok = [], True
    for n in (2, 3, 4):
        fd = dihedral_datum(n)
        modular = check_modular(fd.datum).ok
        printed = dihedral_parity_report(fd)
        corrected = dihedral_parity_report(fd, corrected=True)
        th = dihedral_so_theory(n, fd)
        so = np.array_equal(th.matched_invariant, dihedral_sc_invariant(n, 1, 0, 0, fd).Z)
        currents = sorted({"".join(map(str, m.current))
                           for m in printed.mismatches + printed.fixed_point_mismatches})
        lines.append(f"n={n}: modular={modular} so_theory={so} table_mismatches={len(printed.mismatches)} "
                     f"fixed_point_mismatches={len(printed.fixed_point_mismatches)} in z{currents} "
                     f"corrected_table_ok={corrected.ok}")
        ok = ok and modular and so and printed.ok
    # The hard-coded table disagrees with S at every z_{1ij}; the S-derived (corrected)
    # table agrees everywhere. This stays red until the printed table is amended.
    report("AC6", ok, "; ".join(lines))
    assert ok, "hard-coded dihedral table disagrees with S (README, known reds)"


def test_ac7_oracles(report):
    compared = 0
    bad = []
    for n, kmax in ((2, 20), (3, 6), (4, 4)):
        for k in range(kmax + 1):
            d = su_datum(n, k)
            a, b = verlinde_tensor(d), kw_fusion_tensor(n, k)
            compared += a.size
            if a.shape != b.shape or not np.array_equal(a, b):
                bad.append((n, k))
    # spot-check the per-pair entry points agree with the tensors
    d = su_datum(3, 4)
    if not np.array_equal(fusion_verlinde(d, 2, 5), fusion_kac_walton(3, 4, d.primaries[2], d.primaries[5])):
        bad.append("pairwise")
    report("AC7", not bad, f"{compared} integer comparisons, mismatches={len(bad)}")
    assert not bad


def test_ac8_chgpsc(report):
    recs = chgpsc_validation(4, 8)
    mismatches = [r.as_dict() for r in recs if not r.match]
    # a counterexample counts as a valid outcome when it is reported with its SNF
    reported = all(set(m) >= {"n", "k", "d", "snf", "predicted", "M_orbit"} for m in mismatches)
    ok = bool(recs) and reported
    report("AC8", ok, f"{len(recs)} Case-A triples, {len(recs) - len(mismatches)} match; "
                      f"counterexamples={mismatches}")
    assert ok


def test_ac9_repring(report):
    bad = []
    for k in (4, 8, 16):
        mod, N = so3_nimrep(k)
        G = mod.actions["kappa_1"]
        D = ade_adjacency(f"D{k // 2 + 2}")
        if find_isomorphism(Nimrep(list(range(len(G))), np.array([G])),
                            Nimrep(list(range(len(D))), np.array([D]))) is None:
            bad.append(("so3", k))
    for k in range(0, 7):
        d = su_datum(3, k)
        mod, N = su3_cc_nimrep(k, d)
        selfconj = [i for i in range(d.size) if d.conj[i] == i]
        if N.size != len(selfconj):
            bad.append(("su3cc size", k))
        diag = np.diag(permutation_matrix(d.conj))
        if not np.array_equal(exponents(d, N), diag):
            bad.append(("su3cc exponents", k))
    report("AC9", not bad, f"so3 k in 4,8,16 and su3cc k<=6, failures={bad}")
    assert not bad
