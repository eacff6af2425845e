from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cftbench.groups import UnsupportedGroup, cyclic_group, dihedral_group, product_group


def groups():
    return st.sampled_from([cyclic_group(1), cyclic_group(6), cyclic_group(8), dihedral_group(2),
                            dihedral_group(3), dihedral_group(4), product_group(cyclic_group(2), cyclic_group(2)),
                            product_group(cyclic_group(3), cyclic_group(3))])


@given(groups())
def test_character_orthonormality(G):
    chars = G.character_table()
    assert len(chars) == len(G.classes())
    for a in chars:
        for b in chars:
            assert a.inner(b) == (1 if a is b else 0)
    assert sum(c.degree ** 2 for c in chars) == G.order


@given(groups(), st.data())
def test_induction_frobenius(G, data):
    subs = G.all_subgroups()
    H = data.draw(st.sampled_from(subs))
    try:
        chH = G.character_table(H)
    except UnsupportedGroup:
        return
    chi = data.draw(st.sampled_from(chH))
    ind = chi.induce(G.generate(range(G.order)))
    for psi in G.character_table():
        assert ind.inner(psi) == chi.inner(psi.restrict(H))


def test_dihedral_counts():
    G = dihedral_group(4)
    assert G.order == 16
    assert len(G.all_subgroups()) == 19
    assert len(G.classes()) == 7


def test_regular_representation():
    G = dihedral_group(3)
    reg = [G.order if g == 0 else 0 for g in range(G.order)]
    for c in G.character_table():
        total = sum(Fraction(reg[g]) * c.value(g).conj().as_rational() for g in range(G.order)) / G.order
        assert total == c.degree
