"""Even lattices: discriminant forms, their modular invariants and nimreps, and the gluing pipeline.

Elements of L*/L are tuples in the Smith basis Z_{d_1} x ... x Z_{d_r}; subgroups are frozensets
of such tuples.  All arithmetic is over Fraction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .charges import ChargeResult, charge_group
from .cyclotomic import CycMatrix
from .invariants import ModularInvariant, verify_invariant
from .linalg import smith_normal_form
from .modular_data import ModularDatum
from .nimreps import Nimrep, compatible, exponents, verify_nimrep

__all__ = [
    "LatticeError", "LatticeCapExceeded", "EvenLattice", "DiscriminantForm", "discriminant", "torus_datum",
    "LatticeInvariant", "classify_invariants", "classify_nimreps", "Theorem2Record",
    "theorem2_pipeline", "gluing_lattice_ok", "translation_nimrep",
]

Elem = tuple[int, ...]


class LatticeError(ValueError):
    pass


class LatticeCapExceeded(LatticeError):
    pass


@dataclass(frozen=True)
class EvenLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(r) != n for r in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise LatticeError("lattice is not even (odd diagonal entry)")
        for m in range(1, n + 1):
            if _det([row[:m] for row in g[:m]]) <= 0:
                raise LatticeError("Gram matrix is not positive definite")

    @classmethod
    def of(cls, gram) -> "EvenLattice":
        if isinstance(gram, int):
            gram = [[gram]]
        return cls(tuple(tuple(r) for r in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return int(_det(self.gram))


def _det(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            for k in range(c, n):
                A[r][k] -= f * A[c][k]
    return det


@dataclass
class DiscriminantForm:
    """L*/L = Z_{d_1} x ... x Z_{d_r} with generators g_i in L-basis coordinates."""

    lattice: EvenLattice
    orders: tuple[int, ...]
    gens: list[list[Fraction]]

    @property
    def order(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self) -> list[Elem]:
        return [tuple(x) for x in itertools.product(*(range(d) for d in self.orders))]

    @property
    def zero(self) -> Elem:
        return (0,) * len(self.orders)

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: Elem) -> Elem:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def vector(self, x: Elem) -> list[Fraction]:
        n = self.lattice.rank
        return [sum((a * g[i] for a, g in zip(x, self.gens)), Fraction(0)) for i in range(n)]

    def dot(self, x: Elem, y: Elem) -> Fraction:
        G = self.lattice.gram
        u, v = self.vector(x), self.vector(y)
        n = len(u)
        return sum((u[i] * G[i][j] * v[j] for i in range(n) for j in range(n)), Fraction(0))

    def q(self, x: Elem) -> Fraction:
        """u.u mod 2."""
        return self.dot(x, x) % 2

    def b(self, x: Elem, y: Elem) -> Fraction:
        """u.v mod 1."""
        return self.dot(x, y) % 1

    # subgroups -------------------------------------------------------------
    def span(self, gens: Iterable[Elem]) -> frozenset:
        out = {self.zero}
        frontier = [self.zero]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(out)

    def subgroups(self) -> list[frozenset]:
        els = self.elements()
        subs = {self.span([x]) for x in els}
        changed = True
        while changed:
            changed = False
            cur = list(subs)
            for A in cur:
                for B in cur:
                    if A <= B or B <= A:
                        continue
                    C = self.span(list(A) + list(B))
                    if C not in subs:
                        subs.add(C)
                        changed = True
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def perp(self, H: Iterable[Elem]) -> frozenset:
        H = list(H)
        return frozenset(x for x in self.elements() if all(self.b(x, h) == 0 for h in H))

    def is_isotropic(self, H: Iterable[Elem]) -> bool:
        return all(self.q(h) == 0 for h in H)

    def coset(self, x: Elem, H: frozenset) -> frozenset:
        return frozenset(self.add(x, h) for h in H)

    def cosets(self, within: Iterable[Elem], H: frozenset) -> list[frozenset]:
        out, seen = [], set()
        for x in sorted(within):
            if x in seen:
                continue
            c = self.coset(x, H)
            seen |= c
            out.append(c)
        return out


def discriminant(L: EvenLattice) -> DiscriminantForm:
    """Coset representatives of L*/L from the Smith form U G V = D: L* = V D^-1 Z^n in L-coordinates."""
    G = [list(r) for r in L.gram]
    diag, U, V = smith_normal_form(G)
    n = L.rank
    if len(diag) < n or any(d == 0 for d in diag):
        raise LatticeError("Gram matrix is singular")
    orders, gens = [], []
    for i, d in enumerate(diag):
        d = abs(d)
        if d == 1:
            continue
        orders.append(d)
        gens.append([Fraction(V[r][i], d) for r in range(n)])
    return DiscriminantForm(L, tuple(orders), gens)


def torus_datum(D: DiscriminantForm) -> ModularDatum:
    """S_{[u],[v]} = |L*/L|^-1/2 exp(-2 pi i u.v), T_[u] = exp(pi i u.u - 2 pi i n/24).

    The sign in S is the one for which (ST)^3 = S^2 holds with this T.
    """
    els = D.elements()
    n = D.lattice.rank
    bs = [[D.b(x, y) for y in els] for x in els]
    ts = [(D.q(x) / 2 - Fraction(n, 24)) % 1 for x in els]
    N = lcm(1, *(v.denominator for row in bs for v in row))
    P = len(els)
    gr = np.zeros((P, P, N), dtype=np.int64)
    for i in range(P):
        for j in range(P):
            gr[i, j, int((-bs[i][j] * N) % N)] = 1
    W = CycMatrix.from_group_ring(N, gr)
    conj = tuple(els.index(D.neg(x)) for x in els)
    gram = "x".join(str(list(r)) for r in D.lattice.gram)
    return ModularDatum(f"torus{gram}", [str(x) for x in els], W, P, tuple(ts), conj)


# ---------------------------------------------------------------------------
# classification

@dataclass
class LatticeInvariant:
    D_plus: frozenset
    D_minus: frozenset
    beta: dict  # coset of D_+ in D_+^perp -> coset of D_- in D_-^perp
    invariant: ModularInvariant


def _generators(D: DiscriminantForm, cosets: list[frozenset], H: frozenset) -> list[frozenset]:
    """A generating set of the quotient (cosets of H), greedily by decreasing order."""
    def order(c):
        x = min(c)
        k, y = 1, x
        while y not in H:
            y = D.add(y, x)
            k += 1
        return k
    gens: list[frozenset] = []
    span = {frozenset(H)}
    for c in sorted(cosets, key=lambda c: (-order(c), sorted(c))):
        if c in span:
            continue
        gens.append(c)
        span = set(D.cosets(D.span([min(g) for g in gens] + sorted(H)), H))
        if len(span) == len(cosets):
            break
    return gens


def _orthogonal_isos(D: DiscriminantForm, Hp: frozenset, Hm: frozenset) -> list[dict]:
    Qp_space, Qm_space = D.perp(Hp), D.perp(Hm)
    Qp = D.cosets(Qp_space, Hp)
    Qm = D.cosets(Qm_space, Hm)
    if len(Qp) != len(Qm):
        return []
    gens = _generators(D, Qp, Hp)
    cos_of_m = {}
    for c in Qm:
        for x in c:
            cos_of_m[x] = c
    cos_of_p = {}
    for c in Qp:
        for x in c:
            cos_of_p[x] = c
    qmap = {c: D.q(min(c)) for c in Qp + Qm}
    cands = [[c for c in Qm if qmap[c] == qmap[g]] for g in gens]
    out = []
    for imgs in itertools.product(*cands):
        beta = {cos_of_p[D.zero]: cos_of_m[D.zero]}
        frontier = [cos_of_p[D.zero]]
        ok = True
        while frontier and ok:
            nxt = []
            for c in frontier:
                for g, im in zip(gens, imgs):
                    y = cos_of_p[D.add(min(c), min(g))]
                    v = cos_of_m[D.add(min(beta[c]), min(im))]
                    if y in beta:
                        if beta[y] != v:
                            ok = False
                            break
                    else:
                        beta[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(beta) != len(Qp) or len(set(beta.values())) != len(Qm):
            continue
        if all(qmap[c] == qmap[beta[c]] for c in Qp):
            out.append(beta)
    return out


def _z_from(D: DiscriminantForm, Hp, Hm, beta) -> np.ndarray:
    els = D.elements()
    idx = {x: i for i, x in enumerate(els)}
    Z = np.zeros((len(els), len(els)), dtype=np.int64)
    for cp, cm in beta.items():
        for u in cp:
            for v in cm:
                Z[idx[u], idx[v]] = 1
    return Z


def classify_invariants(L: EvenLattice | DiscriminantForm, cap: int = 144,
                        verify: bool = True) -> list[LatticeInvariant]:
    """All (D_+, D_-, beta): isotropic D_+/L, D_-/L of equal order and q-preserving
    isomorphisms beta: D_+^perp/D_+ -> D_-^perp/D_-."""
    D = L if isinstance(L, DiscriminantForm) else discriminant(L)
    if D.order > cap:
        raise LatticeCapExceeded(f"|L*/L| = {D.order} exceeds the cap {cap}")
    iso = [H for H in D.subgroups() if D.is_isotropic(H)]
    d = torus_datum(D) if verify else None
    out = []
    for Hp in iso:
        for Hm in iso:
            if len(Hp) != len(Hm):
                continue
            for beta in _orthogonal_isos(D, Hp, Hm):
                Z = _z_from(D, Hp, Hm, beta)
                if verify and not verify_invariant(d, Z).ok:
                    raise AssertionError("classified invariant fails verification")
                out.append(LatticeInvariant(Hp, Hm, beta, ModularInvariant(Z, f"D+={len(Hp)},D-={len(Hm)}")))
    return out


def gluing_lattice_ok(D: DiscriminantForm, Z: np.ndarray) -> dict:
    """Additivity of the support and the index count sum Z = |L*/L| (self-duality)."""
    els = D.elements()
    idx = {x: i for i, x in enumerate(els)}
    supp = [(els[i], els[j]) for i, j in zip(*np.nonzero(Z))]
    additive = all(Z[idx[D.add(a, c)], idx[D.add(b, e)]] == 1 for a, b in supp for c, e in supp)
    even = all((D.q(a) - D.q(b)) % 2 == 0 for a, b in supp)
    return {"additive": additive, "even": even, "self_dual_count": int(Z.sum()) == len(els)}


def translation_nimrep(D: DiscriminantForm, Estar: frozenset, name: str = "") -> Nimrep:
    """[u].[m]_{E*} = [u+m]_{E*} on B = L*/E*."""
    els = D.elements()
    cos = D.cosets(els, Estar)
    where = {x: i for i, c in enumerate(cos) for x in c}
    mats = np.zeros((len(els), len(cos), len(cos)), dtype=np.int64)
    for li, u in enumerate(els):
        for ci, c in enumerate(cos):
            mats[li, ci, where[D.add(u, min(c))]] = 1
    return Nimrep([str(min(c)) for c in cos], mats, name=name or f"L*/E*, |B|={len(cos)}")


def classify_nimreps(L: EvenLattice | DiscriminantForm) -> list[tuple[frozenset, Nimrep]]:
    """One nimrep for every intermediate E/L: boundary L*/E*, with exponents E/L."""
    D = L if isinstance(L, DiscriminantForm) else discriminant(L)
    d = torus_datum(D)
    els = D.elements()
    out = []
    for E in D.subgroups():
        N = translation_nimrep(D, D.perp(E))
        if not verify_nimrep(d, N).ok:
            raise AssertionError("translation nimrep fails verification")
        ex = exponents(d, N)
        expect = np.array([1 if x in E else 0 for x in els])
        if not np.array_equal(ex, expect):
            raise AssertionError("exponents differ from E/L")
        out.append((E, N))
    return out


@dataclass
class Theorem2Record:
    E: frozenset
    nimrep: Nimrep
    full_system: list[tuple[frozenset, frozenset]]
    alpha_plus: np.ndarray
    alpha_minus: np.ndarray
    recovered: np.ndarray
    neutral: list[frozenset]
    sigma_restriction: dict
    charge: ChargeResult
    meta: dict = field(default_factory=dict)


def theorem2_pipeline(L: EvenLattice | DiscriminantForm, inv: LatticeInvariant) -> Theorem2Record:
    """E = union over [u]_+ of ([u]_+ intersect beta([u]_+)); nimrep L*/E*; full system
    L*/D_- x L*/D_+^*; alpha+([v]) = (beta~[v]_-, [v]_{+*}), alpha-([v]) = ([v]_-, [0]_{+*}).

    beta~ is a homomorphism L*/L -> L*/D_- extending beta on D_+^*; it is searched for by images of
    generators, and meta["alpha_plus_homomorphic"] records whether one exists.
    """
    D = L if isinstance(L, DiscriminantForm) else discriminant(L)
    d = torus_datum(D)
    els = D.elements()
    idx = {x: i for i, x in enumerate(els)}
    Hp, Hm, beta = inv.D_plus, inv.D_minus, inv.beta
    E = frozenset().union(*(cp & cm for cp, cm in beta.items()))
    if D.span(E) != E:
        raise AssertionError("E is not a subgroup")
    nim = translation_nimrep(D, D.perp(E))
    Dps = D.perp(Hp)
    A = D.cosets(els, Hm)  # L*/D_-
    Bc = D.cosets(els, Dps)  # L*/D_+^*
    full = [(a, b) for a in A for b in Bc]
    fidx = {f: i for i, f in enumerate(full)}
    ca = {x: c for c in A for x in c}
    cb = {x: c for c in Bc for x in c}
    bt, homo = _extend_beta(D, Hp, Hm, beta, A, ca)
    ap = np.zeros((len(els), len(full)), dtype=np.int64)
    am = np.zeros((len(els), len(full)), dtype=np.int64)
    for i, v in enumerate(els):
        ap[i, fidx[(bt[v], cb[v])]] = 1
        am[i, fidx[(ca[v], cb[D.zero])]] = 1
    rec = ap @ am.T
    neutral = D.cosets(D.perp(Hm), Hm)
    sigma = {str(min(c)): sorted(str(x) for x in c) for c in neutral}
    ch = charge_group(d, nim, dims=[1] * len(els), all_weights=True)
    meta = {"alpha_plus_homomorphic": homo,
            "recovers_Z": bool(np.array_equal(rec, np.asarray(inv.invariant.Z))),
            "nimrep_ok": verify_nimrep(d, nim).ok,
            "compatible": compatible(d, nim, inv.invariant.Z),
            "charge_is_Z": ch.group.invariant_factors == (0,)}
    return Theorem2Record(E, nim, full, ap, am, rec, neutral, sigma, ch, meta)


def _extend_beta(D, Hp, Hm, beta, A, ca):
    """Map u -> coset in L*/D_- agreeing with beta on D_+^*, homomorphic when possible."""
    on_perp = {x: cm for cp, cm in beta.items() for x in cp}
    gens = [tuple(1 if j == i else 0 for j in range(len(D.orders))) for i in range(len(D.orders))]
    els = D.elements()
    for imgs in itertools.product(A, repeat=len(gens)):
        ok = True
        table = {}
        for x in els:
            acc = D.zero
            for a, im in zip(x, imgs):
                for _ in range(a):
                    acc = D.add(acc, min(im))
            table[x] = ca[acc]
        # well defined on Z_{d_i} and extends beta
        for g, im, dd in zip(gens, imgs, D.orders):
            acc = D.zero
            for _ in range(dd):
                acc = D.add(acc, min(im))
            if ca[acc] != ca[D.zero]:
                ok = False
                break
        if ok and all(table[x] == on_perp[x] for x in on_perp):
            return table, True
    table = {x: on_perp.get(x, ca[D.zero]) for x in els}
    return table, False
