"""Small finite groups by multiplication table, with exact character theory.

Character values live in Z[zeta_N] for N the exponent of the ambient group,
stored as rows of a :class:`CycMatrix`.  Character tables are produced by
brute force over homomorphisms for abelian groups and by the standard formulas
for dihedral-type groups (a cyclic subgroup of index 2 inverted by every other
element); this covers every subgroup and quotient of cyclic and dihedral groups.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Callable, Hashable, Sequence

import numpy as np

from .cyclotomic import CycMatrix, CycNumber, euler_phi, lcm, root_of_unity

__all__ = [
    "FiniteGroup", "Character", "cyclic_group", "dihedral_group", "product_group",
    "UnsupportedGroup", "group_ring_values",
]


class UnsupportedGroup(NotImplementedError):
    pass


class FiniteGroup:
    """Group on elements 0..n-1 with multiplication table ``mul``; element 0 is the identity."""

    def __init__(self, labels: Sequence[Hashable], mul: np.ndarray, name: str = ""):
        self.labels = list(labels)
        self.mul = np.asarray(mul, dtype=np.int64)
        self.name = name
        n = len(self.labels)
        if self.mul.shape != (n, n):
            raise ValueError("multiplication table has the wrong shape")
        if not np.array_equal(self.mul[0], np.arange(n)):
            raise ValueError("element 0 must be the identity")
        self.inv = np.argmax(self.mul == 0, axis=1)
        self._index = {x: i for i, x in enumerate(self.labels)}

    @property
    def order(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            x, o = g, 1
            while x != 0:
                x = self.mul[x, g]
                o += 1
            out[g] = o
        return out

    @cached_property
    def exponent(self) -> int:
        return lcm(*(int(x) for x in self.element_orders))

    def power(self, g: int, e: int) -> int:
        e %= int(self.element_orders[g])
        x = 0
        for _ in range(e):
            x = int(self.mul[x, g])
        return x

    def generate(self, gens: Sequence[int]) -> tuple[int, ...]:
        """Subgroup generated by ``gens``, as a sorted tuple of elements."""
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.mul[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def is_subgroup(self, H: Sequence[int]) -> bool:
        S = set(H)
        return 0 in S and all(int(self.mul[a, b]) in S for a in S for b in S)

    def is_normal(self, N: Sequence[int], K: Sequence[int] | None = None) -> bool:
        K = range(self.order) if K is None else K
        S = set(N)
        return all(self.conj(g, x) in S for g in K for x in S)

    def is_abelian(self, H: Sequence[int] | None = None) -> bool:
        H = range(self.order) if H is None else H
        H = list(H)
        sub = self.mul[np.ix_(H, H)]
        return bool(np.array_equal(sub, sub.T))

    def centralizer(self, x: int, within: Sequence[int] | None = None) -> tuple[int, ...]:
        within = range(self.order) if within is None else within
        return tuple(g for g in within if self.mul[g, x] == self.mul[x, g])

    def classes(self, within: Sequence[int] | None = None) -> list[tuple[int, ...]]:
        """Conjugacy classes of the subgroup ``within`` (default: the group), each sorted,
        listed in order of their least element."""
        K = list(range(self.order)) if within is None else list(within)
        seen = set()
        out = []
        for x in K:
            if x in seen:
                continue
            cl = tuple(sorted({self.conj(g, x) for g in K}))
            seen.update(cl)
            out.append(cl)
        return out

    def all_subgroups(self) -> list[tuple[int, ...]]:
        """Every subgroup, via closures of at most two generators plus joins (fine for small groups)."""
        subs = {self.generate([a, b]) for a in range(self.order) for b in range(a, self.order)}
        changed = True
        while changed:
            changed = False
            cur = list(subs)
            for A in cur:
                for B in cur:
                    C = self.generate(list(A) + list(B))
                    if C not in subs:
                        subs.add(C)
                        changed = True
        return sorted(subs, key=lambda s: (len(s), s))

    # characters -----------------------------------------------------------
    def character_table(self, H: Sequence[int] | None = None) -> list["Character"]:
        H = tuple(range(self.order)) if H is None else tuple(H)
        if self.is_abelian(H):
            return self._abelian_characters(H)
        dih = self._dihedral_structure(H)
        if dih is None:
            raise UnsupportedGroup("character tables are only built for abelian and dihedral-type groups")
        return self._dihedral_characters(H, *dih)

    def _abelian_characters(self, H: tuple[int, ...]) -> list["Character"]:
        N = self.exponent
        gens: list[int] = []
        span = (0,)
        for x in sorted(H, key=lambda g: -int(self.element_orders[g])):
            if x not in span:
                gens.append(x)
                span = self.generate(gens)
            if len(span) == len(H):
                break
        words = _words(self, H, gens)
        chars = []
        choices = [range(0, N, N // int(self.element_orders[g])) for g in gens]
        for exps in itertools.product(*choices):
            vals = [sum(e * w for e, w in zip(exps, words[h])) % N for h in H]
            chi = Character.from_root_exponents(self, H, vals, label=("hom",) + tuple(exps))
            chars.append(chi)
        seen = set()
        out = []
        for c in chars:
            key = c.key()
            if key not in seen and c.is_homomorphism():
                seen.add(key)
                out.append(c)
        if len(out) != len(H):
            raise AssertionError("abelian character count mismatch")
        return out

    def _dihedral_structure(self, H: tuple[int, ...]):
        m = len(H) // 2
        if len(H) % 2 or m < 3:
            return None
        for rho in H:
            if int(self.element_orders[rho]) != m:
                continue
            C = set(self.generate([rho]))
            rest = [x for x in H if x not in C]
            if all(self.conj(x, rho) == int(self.inv[rho]) and self.element_orders[x] == 2 for x in rest):
                return rho, rest[0]
        return None

    def _dihedral_characters(self, H, rho: int, tau: int) -> list["Character"]:
        """psi_{ij}(tau^a rho^b) = (-1)^{ia} eps_j^b and chi_k(rho^b) = z^{kb} + z^{-kb}, chi_k = 0 off <rho>."""
        m = len(H) // 2
        N = self.exponent
        step = N // m
        coords = {}
        x = 0
        for b in range(m):
            coords[x] = (0, b)
            coords[int(self.mul[tau, x])] = (1, b)
            x = int(self.mul[x, rho])
        out = []
        for i in (0, 1):
            for j in ((0, 1) if m % 2 == 0 else (0,)):
                vals = [((N // 2) * (i * coords[h][0] + j * coords[h][1])) % N for h in H]
                out.append(Character.from_root_exponents(self, H, vals, label=("psi", i, j)))
        for k in range(1, (m + 1) // 2):
            rows = []
            for h in H:
                a, b = coords[h]
                if a:
                    rows.append({})
                else:
                    e = (step * k * b) % N
                    rows.append({e: 1, (-e) % N: 1} if e != (-e) % N else {e: 2})
            out.append(Character.from_group_ring(self, H, rows, label=("chi", k)))
        return out


def _words(G: FiniteGroup, H, gens) -> dict[int, tuple[int, ...]]:
    """Exponent vectors expressing each element of an abelian H in the generators."""
    out = {0: (0,) * len(gens)}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = int(G.mul[x, g])
                if y not in out:
                    w = list(out[x])
                    w[i] += 1
                    out[y] = tuple(w)
                    nxt.append(y)
        frontier = nxt
    return out


def group_ring_values(G: FiniteGroup, rows: Sequence[dict[int, int]]) -> np.ndarray:
    N = G.exponent
    gr = np.zeros((1, len(rows), N), dtype=np.int64)
    for i, r in enumerate(rows):
        for e, c in r.items():
            gr[0, i, e % N] += c
    return CycMatrix.from_group_ring(N, gr).data


@dataclass
class Character:
    """A class function on a subgroup H (tuple of ambient elements) with values in Z[zeta_N]."""

    group: FiniteGroup
    H: tuple[int, ...]
    values: np.ndarray  # (1, |H|, phi(N)) power-basis coordinates
    label: Hashable = None

    @property
    def N(self) -> int:
        return self.group.exponent

    @classmethod
    def from_root_exponents(cls, G: FiniteGroup, H, exps: Sequence[int], label=None) -> "Character":
        return cls(G, tuple(H), group_ring_values(G, [{e: 1} for e in exps]), label)

    @classmethod
    def from_group_ring(cls, G: FiniteGroup, H, rows: Sequence[dict[int, int]], label=None) -> "Character":
        return cls(G, tuple(H), group_ring_values(G, rows), label)

    @classmethod
    def from_function(cls, G: FiniteGroup, H, f: Callable[[int], dict[int, int]], label=None) -> "Character":
        return cls.from_group_ring(G, H, [f(h) for h in H], label)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {h: i for i, h in enumerate(self.H)}

    def value(self, h: int) -> CycNumber:
        return CycNumber(self.N, self.values[0, self._pos[h]].tolist())

    def gather(self, elems: Sequence[int]) -> np.ndarray:
        return self.values[0, [self._pos[h] for h in elems]]

    @property
    def degree(self) -> int:
        v = self.values[0, self._pos[0]]
        if np.any(v[1:]):
            raise AssertionError("character degree is not rational")
        return int(v[0])

    def key(self) -> tuple:
        return (self.H, self.values.tobytes())

    def is_homomorphism(self) -> bool:
        G = self.group
        cm = CycMatrix(self.N, self.values)
        for a in self.H:
            for b in self.H:
                x = CycMatrix(self.N, self.values[:, [self._pos[a]]])
                y = CycMatrix(self.N, self.values[:, [self._pos[b]]])
                if not (x.hadamard(y) == CycMatrix(self.N, self.values[:, [self._pos[G.m(a, b)]]])):
                    return False
        return True

    def conj(self) -> "Character":
        return Character(self.group, self.H, CycMatrix(self.N, self.values).conj().data, self.label)

    def __mul__(self, other: "Character") -> "Character":
        if other.H != self.H:
            other = other.restrict(self.H)
        v = CycMatrix(self.N, self.values).hadamard(CycMatrix(self.N, other.values)).data
        return Character(self.group, self.H, v, None)

    def __add__(self, other: "Character") -> "Character":
        return Character(self.group, self.H, self.values + other.gather(self.H)[None], None)

    def restrict(self, K: Sequence[int]) -> "Character":
        return Character(self.group, tuple(K), self.gather(K)[None], self.label)

    def inner(self, other: "Character") -> int:
        """<self, other>_H = |H|^-1 sum_h self(h) conj(other(h)), certified integral."""
        a = CycMatrix(self.N, self.values)
        b = CycMatrix(self.N, other.gather(self.H)[None]).conj()
        s = a.hadamard(b).data.sum(axis=1)[0]
        if np.any(s[1:]) or s[0] % len(self.H):
            raise AssertionError("character inner product is not an integer")
        return int(s[0]) // len(self.H)

    def induce(self, K: Sequence[int]) -> "Character":
        """Ind_H^K: Ind(k) = |H|^-1 sum_{x in K, x k x^-1 in H} chi(x k x^-1)."""
        G = self.group
        K = tuple(K)
        Hs = set(self.H)
        f = self.values.shape[2]
        out = np.zeros((1, len(K), f), dtype=np.int64)
        for i, k in enumerate(K):
            acc = np.zeros(f, dtype=np.int64)
            for x in K:
                y = G.conj(x, k)
                if y in Hs:
                    acc += self.values[0, self._pos[y]]
            if np.any(acc % len(self.H)):
                raise AssertionError("induced character is not integral")
            out[0, i] = acc // len(self.H)
        return Character(G, K, out, None)

    def transport(self, g: int) -> "Character":
        """The character x -> chi(g^-1 x g) on g H g^-1."""
        G = self.group
        newH = tuple(G.conj(g, h) for h in self.H)
        order = sorted(range(len(newH)), key=lambda i: newH[i])
        return Character(G, tuple(newH[i] for i in order), self.values[:, order], self.label)

    def decompose(self, irreps: Sequence["Character"]) -> list[int]:
        mult = [self.inner(c) for c in irreps]
        total = sum(m * c.degree for m, c in zip(mult, irreps))
        if total != self.degree:
            raise AssertionError("decomposition does not account for the full degree")
        return mult


# ---------------------------------------------------------------------------
# constructors

def cyclic_group(n: int) -> FiniteGroup:
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(list(range(n)), mul, name=f"Z_{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """D_{2n} = <r, s : r^2 = s^{2n} = rsrs = 1>, order 4n; element (a, b) = r^a s^b.

    (r^a s^b)(r^c s^d) = r^{a+c} s^{(-1)^c b + d}.
    """
    m = 2 * n
    labels = [(a, b) for a in (0, 1) for b in range(m)]
    idx = {x: i for i, x in enumerate(labels)}
    mul = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            mul[i, j] = idx[((a + c) % 2, ((-1) ** c * b + d) % m)]
    return FiniteGroup(labels, mul, name=f"D_{2 * n}")


def product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    labels = [(x, y) for x in G.labels for y in H.labels]
    nG, nH = G.order, H.order
    mul = np.zeros((nG * nH, nG * nH), dtype=np.int64)
    for i in range(nG):
        for j in range(nH):
            a = i * nH + j
            mul[a] = (G.mul[i][:, None] * nH + H.mul[j][None, :]).reshape(-1)
    return FiniteGroup(labels, mul, name=f"{G.name}x{H.name}")
