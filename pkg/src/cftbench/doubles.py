"""Doubles of finite groups: modular data, cyclic and dihedral invariants, restriction and twisted nimreps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Sequence

import numpy as np

from .cyclotomic import CycMatrix, root_of_unity
from .groups import Character, FiniteGroup, cyclic_group, dihedral_group
from .invariants import ModularInvariant, simple_current_invariant, verify_invariant
from .modular_data import ModularDatum, SimpleCurrent, verlinde_tensor
from .nimreps import Nimrep

__all__ = [
    "FiniteGroupDatum", "double_datum", "zn_datum", "zp_datum", "derive_simple_currents",
    "PairHPsi", "Table1Record", "TABLE1", "zp_invariant", "lagrangian_invariant", "zp_classify",
    "zpn_pair_count", "zpn_pairs", "zpn_bruteforce_count", "zpn_census", "ZpnCensus", "zn_automorphism_count", "dihedral_datum", "dihedral_label",
    "dihedral_current_table", "dihedral_parity_report", "dihedral_sc_invariant",
    "sigma_restrict_stages", "pushforward_module", "twisted_diagonal_nimrep", "SOTheory",
    "dihedral_so_theory", "group_from_tag", "omega_from_images",
]


# ---------------------------------------------------------------------------
# generic double

@dataclass
class FiniteGroupDatum:
    """Modular data of the untwisted double D(G) together with the group-theoretic labels."""

    group: FiniteGroup
    tag: tuple[str, int]
    reps: list[int]  # class representative of each primary
    centralizers: dict[int, tuple[int, ...]]
    chars: list[Character]  # centralizer irrep of each primary
    datum: ModularDatum
    irreps: dict[int, list[Character]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.datum.size

    def index(self, label) -> int:
        return self.datum.index(label)

    def class_of(self, rep: int) -> tuple[int, ...]:
        G = self.group
        return tuple(sorted({G.conj(g, rep) for g in range(G.order)}))

    def qdims(self) -> list[int]:
        """|K_g| dim(chi), read off W_{sigma,1} / W_{1,1}."""
        W = self.datum.W
        out = []
        for s in range(self.size):
            q = (W.entry(s, 0) / W.entry(0, 0)).as_rational()
            out.append(q)
        return out


def double_datum(G: FiniteGroup, tag: tuple[str, int] | None = None, name: str | None = None,
                 labeller=None) -> FiniteGroupDatum:
    """D(G) with S_{(a,chi),(b,chi')} = (|Z_a| |Z_b|)^-1 sum_{g: [a, g b g^-1] = 1} conj(chi(g b g^-1) chi'(g^-1 a g)).

    W = |G| S is integral with s2 = |G|^2, and T_{(a,chi)} = chi(a)/chi(1).
    ``labeller(rep, char)`` names the primaries; the default uses group and character labels.
    """
    N = G.exponent
    reps = [cl[0] for cl in G.classes()]
    cents = {a: G.centralizer(a) for a in reps}
    irreps = {a: G.character_table(cents[a]) for a in reps}
    prim_rep, prim_chi, labels = [], [], []
    for a in reps:
        for c in irreps[a]:
            prim_rep.append(a)
            prim_chi.append(c)
            labels.append(labeller(a, c) if labeller else (G.labels[a], c.label))
    P = len(labels)
    f = irreps[reps[0]][0].values.shape[2]
    W = np.zeros((P, P, f), dtype=np.int64)
    offs = {}
    pos = 0
    for a in reps:
        offs[a] = pos
        pos += len(irreps[a])
    for a in reps:
        for b in reps:
            gs = [g for g in range(G.order)
                  if G.m(a, G.conj(g, b)) == G.m(G.conj(g, b), a)]
            xs = [G.conj(g, b) for g in gs]
            ys = [G.conj(int(G.inv[g]), a) for g in gs]
            A = CycMatrix(N, np.stack([c.gather(xs) for c in irreps[a]]))
            B = CycMatrix(N, np.stack([c.gather(ys) for c in irreps[b]]))
            blk = (A @ B.transpose()).conj().data * G.order
            den = len(cents[a]) * len(cents[b])
            if np.any(blk % den):
                raise AssertionError("double S matrix is not integral after scaling")
            W[offs[a]:offs[a] + len(irreps[a]), offs[b]:offs[b] + len(irreps[b])] = blk // den
    Wm = CycMatrix(N, W)
    t = []
    for a, c in zip(prim_rep, prim_chi):
        t.append(_root_exponent(c.value(a) / c.degree, N))
    conj = _conj_from_w(Wm, G.order ** 2)
    dm = ModularDatum(name or f"D({G.name})", labels, Wm, G.order ** 2, tuple(t), conj)
    fg = FiniteGroupDatum(G, tag or ("group", G.order), prim_rep, cents, prim_chi, dm, irreps)
    dm.simple_currents = derive_simple_currents(dm)
    return fg


def _root_exponent(z, N: int) -> Fraction:
    for e in range(N):
        if z == root_of_unity(N, e):
            return Fraction(e, N)
    raise ValueError("value is not an N-th root of unity")


def _conj_from_w(W: CycMatrix, s2: int) -> tuple[int, ...]:
    C = (W @ W).rational_part()
    if C is None or np.any(C % s2):
        raise AssertionError("S^2 is not a permutation matrix")
    C = C // s2
    perm = [int(np.flatnonzero(row)[0]) for row in C]
    return tuple(perm)


def derive_simple_currents(d: ModularDatum) -> list[SimpleCurrent]:
    """Simple currents from the S matrix: quantum dimension 1, permutation from fusion, Q from S phases."""
    W = d.W
    qd1 = [s for s in range(d.size) if W.take(rows=[s], cols=[0]) == W.take(rows=[0], cols=[0])]
    if not qd1:
        return []
    Nt = verlinde_tensor(d, qd1)
    N = W.N
    row0 = W.take(rows=[0])
    shifted = [row0.scale_columns_by_roots([e] * d.size).data[0] for e in range(N)]
    out = []
    for a, s in enumerate(qd1):
        perm = tuple(int(np.flatnonzero(Nt[a, lam])[0]) for lam in range(d.size))
        rowj = W.data[s]
        Q = []
        for mu in range(d.size):
            for e in range(N):
                if np.array_equal(shifted[e][mu], rowj[mu]):
                    Q.append(Fraction(e, N))
                    break
            else:
                raise AssertionError("S phase of a simple current is not a root of unity")
        h = (d.t[s] - d.t[0]) % 1
        out.append(SimpleCurrent(s, perm, tuple(Q), h))
    return out


def zn_datum(n: int) -> FiniteGroupDatum:
    """D(Z_n): primaries (a, b) with chi_b(x) = zeta_n^{bx}; S = zeta_n^{-(ab'+a'b)}/n, T = zeta_n^{ab}.

    The sign in S is forced by (ST)^3 = S^2 once T = zeta_n^{ab}.
    """
    G = cyclic_group(n)

    def lab(a, c):
        return (G.labels[a], _cyclic_char_index(c, n))
    return double_datum(G, ("cyclic", n), f"D(Z_{n})", lab)


def zp_datum(p: int) -> FiniteGroupDatum:
    from sympy import isprime
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return zn_datum(p)


def _cyclic_char_index(c: Character, n: int) -> int:
    """b with chi(1) = zeta_n^b."""
    return int(_root_exponent(c.value(1 % n), n) * n) % n if n > 1 else 0


# ---------------------------------------------------------------------------
# Z_p: classification table

@dataclass(frozen=True)
class PairHPsi:
    """Subgroup H of G x G (given by generators) and a cocycle label psi mod gcd of its factors."""

    H: tuple[tuple[int, int], ...]
    psi: int = 0

    def elements(self, n: int) -> frozenset[tuple[int, int]]:
        out = {(0, 0)}
        frontier = [(0, 0)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.H:
                    y = ((x[0] + g[0]) % n, (x[1] + g[1]) % n)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(out)


@dataclass
class Table1Record:
    name: str
    pair: PairHPsi
    nimrep: str
    neutral: str
    full: str
    E: str
    D_plus: str
    D_minus: str

    def columns(self) -> dict:
        return {"name": self.name, "H": [list(g) for g in self.pair.H], "psi": self.pair.psi,
                "nimrep": self.nimrep, "neutral": self.neutral, "full": self.full,
                "E": self.E, "D+": self.D_plus, "D-": self.D_minus}


def TABLE1(p: int) -> list[Table1Record]:
    """The hard-coded rows for G = Z_p."""
    rows = []
    for l in range(1, p):
        rows.append(Table1Record(f"Z^({l})", PairHPsi(((1, l),), 0), "Ver(G)" if l == 1 else "Z",
                                 "Ver(G)", "Ver(G)", "GxG" if l == 1 else "0", "0", "0"))
    for l in range(1, p):
        rows.append(Table1Record(f"Z'^({l})", PairHPsi(((1, 0), (0, 1)), l), "R_G", "Ver(G)",
                                 "R_GxG", f"<({l},1)>", "0", "0"))
    rows.append(Table1Record("Z^{0,0}", PairHPsi(((1, 0), (0, 1)), 0), "R_G", "Z", "R_GxG",
                             "Gx0", "Gx0", "Gx0"))
    rows.append(Table1Record("Z^{1,1}", PairHPsi((), 0), "Z(G)", "Z", "Z(G)xZ(G)", "0xG", "0xG", "0xG"))
    rows.append(Table1Record("Z^{0,1}", PairHPsi(((1, 0),), 0), "Z", "Z", "R_GxZ(G)", "0", "Gx0", "0xG"))
    rows.append(Table1Record("Z^{1,0}", PairHPsi(((0, 1),), 0), "Z", "Z", "Z(G)xR_G", "0", "0xG", "Gx0"))
    return rows


def zp_invariant(p: int, name: str) -> np.ndarray:
    """Closed forms: Z^(l)_{(a,b),(la,b/l)}, Z'^(l)_{(a,b),(lb,a/l)}, Z^{m,n} supported on
    (a p^m, b p^{1-m}) x (a' p^n, b' p^{1-n})."""
    P = p * p
    Z = np.zeros((P, P), dtype=np.int64)

    def ix(a, b):
        return (a % p) * p + (b % p)
    if name.startswith("Z^(") or name.startswith("Z'^("):
        l = int(name[name.index("(") + 1:name.index(")")])
        li = pow(l, -1, p)
        for a in range(p):
            for b in range(p):
                tgt = ix(l * a, li * b) if name[1] == "^" else ix(l * b, li * a)
                Z[ix(a, b), tgt] = 1
        return Z
    m, n = int(name[3]), int(name[5])
    rows = [ix(a * p ** m, b * p ** (1 - m)) for a in range(p) for b in range(p)]
    cols = [ix(a * p ** n, b * p ** (1 - n)) for a in range(p) for b in range(p)]
    Z[np.ix_(sorted(set(rows)), sorted(set(cols)))] = 1
    return Z


def lagrangian_invariant(n: int, pair: PairHPsi) -> np.ndarray:
    """Z from (H, psi): L = {(h, chi) : h in H, chi|_H = eps_psi(h, .)}, and (h, chi) contributes
    to Z_{(h1,chi1),(h2,chi2^-1)}.

    With H = <g1> + <g2> of orders d >= d', eps_psi(x, y) = exp(2 pi i psi (a b' - a' b)/d') for
    x = a g1 + b g2 and y = a' g1 + b' g2.
    """
    coords = _coordinates(n, pair.H)
    d2 = min((_add_order(g, n) for g in pair.H), default=1)
    Z = np.zeros((n * n, n * n), dtype=np.int64)
    for h, (a, b) in coords.items():
        for c1 in range(n):
            for c2 in range(n):
                # chi(y) = zeta_n^{c1 y1 + c2 y2} must equal eps(h, y) on all of H
                if all((Fraction(c1 * y[0] + c2 * y[1], n)
                        - Fraction(pair.psi * (a * yb - ya * b), d2)).denominator == 1
                       for y, (ya, yb) in coords.items()):
                    Z[h[0] * n + c1, h[1] * n + (-c2) % n] += 1
    return Z


def _coordinates(n: int, gens) -> dict[tuple[int, int], tuple[int, int]]:
    """x -> (a, b) with x = a g1 + b g2, for H = <g1> + <g2> an internal direct sum."""
    gens = list(gens) + [(0, 0)] * (2 - len(gens))
    g1, g2 = gens
    o1, o2 = _add_order(g1, n), _add_order(g2, n)
    out = {}
    for a in range(o1):
        for b in range(o2):
            x = ((a * g1[0] + b * g2[0]) % n, (a * g1[1] + b * g2[1]) % n)
            if x in out:
                raise ValueError("generators do not span a direct sum")
            out[x] = (a, b)
    return out


def _subgroup_name(S: frozenset, p: int) -> str:
    Gx0 = frozenset((a, 0) for a in range(p))
    OxG = frozenset((0, b) for b in range(p))
    if len(S) == 1:
        return "0"
    if len(S) == p * p:
        return "GxG"
    if S == Gx0:
        return "Gx0"
    if S == OxG:
        return "0xG"
    g = min(x for x in S if x != (0, 0) and x[1] == 1)
    return f"<({g[0]},1)>"


def _subgroup_set(name: str, p: int) -> frozenset:
    if name == "Gx0":
        return frozenset((a, 0) for a in range(p))
    return frozenset((0, b) for b in range(p))


def _annihilator(S: frozenset, n: int) -> frozenset:
    """S^* under the pairing (a,b).(a',b') = ab' + a'b."""
    return frozenset((a, b) for a in range(n) for b in range(n)
                     if all((a * y[1] + b * y[0]) % n == 0 for y in S))


def _quotient_name(X: frozenset, p: int) -> str:
    if len(X) == p * p:
        return "Z"
    if len(X) == 1:
        return "GxG"
    return {"Gx0": "R_G", "0xG": "Z(G)"}.get(_subgroup_name(X, p), "G")


@dataclass
class ZpClassified:
    invariant: ModularInvariant
    pair: PairHPsi
    record: Table1Record
    derived: dict
    alpha_ok: bool
    lagrangian_ok: bool
    nimrep: Nimrep

    @property
    def matches_table(self) -> bool:
        r = self.record
        return all(self.derived[k] == v for k, v in
                   [("nimrep", r.nimrep), ("neutral", r.neutral), ("full", r.full),
                    ("E", r.E), ("D+", r.D_plus), ("D-", r.D_minus)])


def zp_classify(p: int, fd: FiniteGroupDatum | None = None) -> list[ZpClassified]:
    """The 2p+2 invariants of D(Z_p), each with its table row and re-derived columns.

    Derived columns: D+ = {Z_{lam,0} = 1}, D- = {Z_{0,lam} = 1}, E = {Z_{lam,lam} = 1};
    nimrep group (GxG)/E^*, neutral system D+^*/D+, full system (GxG)/D+^* x (GxG)/D-.
    """
    fd = fd or zp_datum(p)
    d = fd.datum
    idx = {lab: i for i, lab in enumerate(d.primaries)}
    lab_of = list(d.primaries)
    out = []
    for rec in TABLE1(p):
        Zr = zp_invariant(p, rec.name)
        # reorder from (a*p+b) to the datum's ordering
        order = [idx[(i // p, i % p)] for i in range(p * p)]
        Z = np.zeros_like(Zr)
        Z[np.ix_(order, order)] = Zr
        rep = verify_invariant(d, Z)
        if not rep.ok:
            raise AssertionError(f"{rec.name} fails verification: {rep.failures()}")
        elems = [lab_of[i] for i in range(d.size)]
        Dp = frozenset(elems[i] for i in range(d.size) if Z[i, 0] == 1)
        Dm = frozenset(elems[i] for i in range(d.size) if Z[0, i] == 1)
        E = frozenset(elems[i] for i in range(d.size) if Z[i, i] == 1)
        Estar = _annihilator(E, p)
        Dps = _annihilator(Dp, p)
        Dms = _annihilator(Dm, p)
        # B = (GxG)/E^* has order |E|; an order-p quotient by 0xG is read as the group ring
        nim = {1: "Z", p * p: "Ver(G)"}.get(len(E)) or ("Z(G)" if Estar == _subgroup_set("0xG", p) else "R_G")
        neutral_size = len(Dps) // len(Dp)
        neutral = {1: "Z", p * p: "Ver(G)"}.get(neutral_size, f"order {neutral_size}")
        if len(Dp) == 1 and len(Dm) == 1:
            swaps = any(Z[idx[(a, 0)], idx[(0, 1)]] for a in range(p)) if p > 1 else False
            full = "R_GxG" if swaps else "Ver(G)"
        else:
            f1, f2 = _quotient_name(Dps, p), _quotient_name(Dm, p)
            full = "R_GxG" if (f1, f2) == ("R_G", "R_G") else f"{f1}x{f2}"
        derived = {"nimrep": nim, "neutral": neutral, "full": full, "E": _subgroup_name(E, p),
                   "D+": _subgroup_name(Dp, p), "D-": _subgroup_name(Dm, p)}
        # alpha induction into (GxG)/D- x (GxG)/D+^*, with beta the permutation part on D+^*
        alpha = _zp_alpha_pairing(p, Z, idx, Dp, Dm, Dps, rec.name)
        lag = lagrangian_invariant(p, _lagrangian_pair(rec, p))
        Zl = np.zeros_like(lag)
        Zl[np.ix_(order, order)] = lag
        nimrep = _translation_nimrep(fd, Estar)
        out.append(ZpClassified(ModularInvariant(Z, rec.name), rec.pair, rec, derived,
                                bool(np.array_equal(alpha, Z)), bool(np.array_equal(Zl, Z)), nimrep))
    return out


def _lagrangian_pair(rec: Table1Record, p: int) -> PairHPsi:
    """The table label l of (G x G, l) corresponds to the cocycle psi = -l^-1 of the Lagrangian rule."""
    if rec.name.startswith("Z'^("):
        return PairHPsi(rec.pair.H, (-pow(rec.pair.psi, -1, p)) % p)
    return rec.pair


def _zp_alpha_pairing(p, Z, idx, Dp, Dm, Dps, name) -> np.ndarray:
    """<alpha+_lam, alpha-_mu> with alpha+_lam = (beta(lam) + D-, lam + D+^*), alpha-_mu = (mu + D-, D+^*)."""
    P = p * p
    labels = [(a, b) for a in range(p) for b in range(p)]

    def beta(lam):
        a, b = lam
        if name.startswith("Z^("):
            l = int(name[3:-1])
            return ((l * a) % p, (pow(l, -1, p) * b) % p)
        if name.startswith("Z'^("):
            l = int(name[4:-1])
            return ((l * b) % p, (pow(l, -1, p) * a) % p)
        return (0, 0)

    def coset(x, S):
        return frozenset(((x[0] + y[0]) % p, (x[1] + y[1]) % p) for y in S)
    out = np.zeros((P, P), dtype=np.int64)
    for lam in labels:
        ap = (coset(beta(lam), Dm), coset(lam, Dps))
        for mu in labels:
            am = (coset(mu, Dm), coset((0, 0), Dps))
            out[idx[lam], idx[mu]] = int(ap == am)
    return out


def _translation_nimrep(fd: FiniteGroupDatum, Estar: frozenset) -> Nimrep:
    """Nimrep of D(Z_n) on B = (G x G)/E^*: lam acts by translation."""
    d = fd.datum
    n = fd.group.order
    cosets = []
    where = {}
    for x in d.primaries:
        if x in where:
            continue
        c = frozenset(((x[0] + y[0]) % n, (x[1] + y[1]) % n) for y in Estar)
        for y in c:
            where[y] = len(cosets)
        cosets.append(min(c))
    B = len(cosets)
    mats = np.zeros((d.size, B, B), dtype=np.int64)
    for i, lam in enumerate(d.primaries):
        for x, c in enumerate(cosets):
            y = ((lam[0] + c[0]) % n, (lam[1] + c[1]) % n)
            mats[i, x, where[y]] = 1
    return Nimrep([str(c) for c in cosets], mats, name=f"(GxG)/E*, |B|={B}")


# ---------------------------------------------------------------------------
# Z_{p^nu}

def zpn_pair_count(p: int, nu: int) -> int:
    """((nu+1) p^{nu+2} - 2 p^{nu+1} - (nu+1) p^nu + 2) / (p-1)^2."""
    num = (nu + 1) * p ** (nu + 2) - 2 * p ** (nu + 1) - (nu + 1) * p ** nu + 2
    assert num % (p - 1) ** 2 == 0
    return num // (p - 1) ** 2


def zpn_pairs(p: int, nu: int) -> list[PairHPsi]:
    """The two parametric families of pairs (H, psi) with H <= Z_n x Z_n, n = p^nu.

    family 1: H = <(n/d, l n/d), (0, n/d')>, psi in Z_{d'}, d' | d | n, 0 <= l < d/d';
    family 2: H = <(l p n/d, n/d), (n/d', 0)>, psi in Z_{d'}, d' < d, 0 <= l < d/(d' p).
    """
    n = p ** nu
    divs = [p ** i for i in range(nu + 1)]
    out = []
    for d in divs:
        for d2 in divs:
            if d % d2:
                continue
            for l in range(d // d2):
                for psi in range(d2):
                    out.append(PairHPsi((((n // d) % n, (l * n // d) % n), (0, (n // d2) % n)), psi))
            if d2 < d:
                for l in range(d // (d2 * p)):
                    for psi in range(d2):
                        out.append(PairHPsi((((l * p * n // d) % n, (n // d) % n), ((n // d2) % n, 0)), psi))
    return out


def zpn_bruteforce_count(n: int) -> int:
    """sum over H <= Z_n^2 of |H^2(H; T)| = the smaller invariant factor of H."""
    G = cyclic_group(n)
    from .groups import product_group
    GG = product_group(G, G)
    total = 0
    for H in GG.all_subgroups():
        els = [GG.labels[i] for i in H]
        orders = [_add_order(x, n) for x in els]
        e = max(orders)
        total += len(H) // e
    return total


def _add_order(x, n):
    o = 1
    y = x
    while y != (0, 0):
        y = ((y[0] + x[0]) % n, (y[1] + x[1]) % n)
        o += 1
    return o


def zn_automorphism_count(n: int) -> int:
    """Automorphisms of (Z_n^2, q(a,b) = ab/n) by brute force over 2x2 matrices mod n."""
    count = 0
    pts = [(a, b) for a in range(n) for b in range(n)]
    for m in itertools.product(range(n), repeat=4):
        a, b, c, dd = m
        if gcd((a * dd - b * c) % n, n) != 1:
            continue
        if all(((a * x + b * y) * (c * x + dd * y) - x * y) % n == 0 for x, y in pts):
            count += 1
    return count


@dataclass
class ZpnCensus:
    p: int
    nu: int
    formula: int
    family_pairs: int
    bruteforce_pairs: int
    automorphisms: int
    automorphisms_formula: int
    realised: int  # distinct verified invariants produced by the pairs
    invariants: int | None  # brute-force commutant search, when requested
    unmatched: list = field(default_factory=list)  # invariants no pair realises
    tally: int | None = None  # automorphisms + (nu+1)^2 + (p-1)(p+3), stated for nu = 2

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if k != "unmatched"} | {"unmatched": len(self.unmatched)}


def zpn_census(p: int, nu: int, enumerate_all: bool = False, cap_size: int = 200) -> ZpnCensus:
    """Pairs (H, psi) for Z_{p^nu} against the modular invariants they realise.

    Each pair goes through :func:`lagrangian_invariant`; with ``enumerate_all`` the commutant
    search lists every invariant and those not realised are reported, not asserted away.
    """
    from .invariants import enumerate_invariants, is_automorphism
    n = p ** nu
    pairs = zpn_pairs(p, nu)
    fd = zn_datum(n)
    d = fd.datum
    idx = {lab: i for i, lab in enumerate(d.primaries)}
    order = [idx[(i // n, i % n)] for i in range(n * n)]
    realised = set()
    for pr in pairs:
        L = lagrangian_invariant(n, pr)
        Z = np.zeros_like(L)
        Z[np.ix_(order, order)] = L
        if verify_invariant(d, Z).ok:
            realised.add(Z.tobytes())
    total = None
    unmatched = []
    if enumerate_all:
        found = enumerate_invariants(d, cap_size=cap_size)
        total = len(found)
        unmatched = [z for z in found if np.asarray(z.Z, dtype=np.int64).tobytes() not in realised]
    autos = 2 * p ** nu - 2 * p ** (nu - 1)
    return ZpnCensus(p, nu, zpn_pair_count(p, nu), len(pairs), zpn_bruteforce_count(n),
                     zn_automorphism_count(n), autos, len(realised), total, unmatched,
                     autos + (nu + 1) ** 2 + (p - 1) * (p + 3) if nu == 2 else None)


# ---------------------------------------------------------------------------
# dihedral

def _dihedral_identify(G: FiniteGroup, n: int, rep: int, c: Character) -> tuple:
    """Conventional (kind, character) label of a centralizer irrep, identified by its values."""
    a, b = G.labels[rep]
    m = 2 * n
    N = G.exponent

    def val(x):
        return c.value(G.index(x))
    if a == 0 and b % n == 0:
        for i, j in itertools.product((0, 1), repeat=2):
            if all(val((x, y)) == root_of_unity(2, (i * x + j * y) % 2) for x in (0, 1) for y in range(m)):
                return ("psi", i, j)
        for k in range(1, n):
            if all(val((0, y)) == root_of_unity(N, (k * y) % N) + root_of_unity(N, (-k * y) % N)
                   for y in range(m)):
                return ("chi", k)
    elif a == 0:
        for l in range(m):
            if val((0, 1)) == root_of_unity(N, l % N):
                return ("phi", l)
    else:
        h = b
        for i, j in itertools.product((0, 1), repeat=2):
            # (r s^h)^x s^{y n}
            ok = True
            for x in (0, 1):
                for y in (0, 1):
                    el = (x, (h * x + y * n) % m)
                    ok &= val(el) == root_of_unity(2, (x * i + y * j) % 2)
            if ok:
                return ("psi'", i, j)
    raise AssertionError("character could not be identified")


def dihedral_label(G: FiniteGroup, n: int, rep: int, c: Character) -> tuple:
    a, b = G.labels[rep]
    cls = ("rs", b) if a else ("s", b)
    return (cls, _dihedral_identify(G, n, rep, c))


def dihedral_datum(n: int) -> FiniteGroupDatum:
    """D(D_{2n}): classes {1}, {s^n}, {s^{+-a}}, {r s^even}, {r s^odd}; 2n^2 + 14 primaries."""
    if n < 2:
        raise ValueError("n >= 2 required")
    G = dihedral_group(n)
    fd = double_datum(G, ("dihedral", n), f"D(D_{2 * n})", lambda a, c: dihedral_label(G, n, a, c))
    return fd


def dihedral_current_table(n: int, h: int, i: int, j: int, label: tuple,
                           corrected: bool = False) -> tuple[tuple, int]:
    """Hard-coded image and parity of ``label`` under z_{hij} = (s^{hn}, psi_ij).

    As printed, the psi' index of (rs^h', psi'_{i'j'}) moves to i' + i + h'j.  Moving back from
    r s^{h'+n} to the class representative conjugates the centraliser by s^{n/2}, which swaps
    the two reflections in it, so the true index is i' + i + h'j + hj' (+ hj when n is odd, for
    the representatives r and rs).  ``corrected=True`` uses that version; the two differ only on
    odd-parity primaries.
    """
    (kind, x), ch = label
    m = 2 * n
    if kind == "s" and x % n == 0 and ch[0] == "psi":
        hp = x // n
        _, ip, jp = ch
        return ((("s", (n * (h + hp)) % m), ("psi", (i + ip) % 2, (j + jp) % 2)), (n * (j * hp + jp * h)) % 2)
    if kind == "s" and x % n == 0 and ch[0] == "chi":
        hp = x // n
        k = ch[1]
        return ((("s", (n * (h + hp)) % m), ("chi", n * j + (-1) ** j * k)), (h * k + n * hp * j) % 2)
    if kind == "s":
        a, l = x, ch[1]
        return ((("s", (n * h + (-1) ** h * a) % m), ("phi", ((-1) ** h * l + n * j) % m)), (j * a + h * l) % 2)
    hp = x
    _, ip, jp = ch
    shift = i + hp * j + (h * jp + n * h * j if corrected else 0)
    return ((("rs", (hp + n * h) % 2), ("psi'", (ip + shift) % 2, (jp + n * j) % 2)),
            (jp * h + i + hp * j) % 2)


@dataclass
class Mismatch:
    current: tuple[int, int, int]
    primary: tuple
    table_image: tuple | None
    table_parity: int
    derived_image: tuple
    derived_Q: Fraction

    def as_dict(self) -> dict:
        return {"z": "".join(map(str, self.current)), "primary": _lab(self.primary),
                "table_image": _lab(self.table_image) if self.table_image else None,
                "table_parity": self.table_parity, "derived_image": _lab(self.derived_image),
                "derived_parity": str(2 * self.derived_Q)}


def _lab(x) -> str:
    (kind, e), ch = x
    return f"({kind}^{e},{ch[0]}_{''.join(map(str, ch[1:]))})"


@dataclass
class ParityReport:
    n: int
    mismatches: list[Mismatch] = field(default_factory=list)
    fixed_point_mismatches: list[Mismatch] = field(default_factory=list)
    currents_found: int = 0
    corrected: bool = False

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.fixed_point_mismatches and self.currents_found == 8

    @property
    def all_odd_parity(self) -> bool:
        """True when every disagreement sits at a primary of odd parity (invisible to Z^(hij))."""
        return all(m.table_parity == 1 for m in self.mismatches + self.fixed_point_mismatches)


def _expected_fixed(n: int, h: int, i: int, j: int, label: tuple) -> bool:
    """Fixed points of nontrivial z_{hij}, as listed for D(D_{2n})."""
    (kind, x), ch = label
    if (h, i, j) == (0, 1, 0) and kind == "s" and (ch[0] in ("chi", "phi")):
        return True
    if n % 2 == 0 and kind == "rs" and ((h, i, j) == (1, 0, 0) or (j == 1 and x == i)):
        return True
    if h == 0 and j == 1 and kind == "s" and x % n == 0 and ch == ("chi", n // 2) and n % 2 == 0:
        return True
    if h == 1 and j == 1 and kind == "s" and n % 2 == 0 and x == n // 2 and ch[0] == "phi" \
            and ch[1] % (2 * n) in (n // 2, (3 * n) // 2):
        return True
    if h == 1 and j == 0 and kind == "s" and n % 2 == 0 and x == n // 2 and ch in (("phi", 0), ("phi", n)):
        return True
    return False


def dihedral_parity_report(fd: FiniteGroupDatum, corrected: bool = False) -> ParityReport:
    """Compare S-derived permutations and parities 2Q of every z_{hij} with the hard-coded table."""
    n = fd.tag[1]
    d = fd.datum
    rep = ParityReport(n, corrected=corrected)
    by_index = {j.index: j for j in d.simple_currents}
    rep.currents_found = len(by_index)
    for h, i, j in itertools.product((0, 1), repeat=3):
        z = d.index((("s", h * n), ("psi", i, j)))
        J = by_index.get(z)
        if J is None:
            rep.mismatches.append(((h, i, j), "not a simple current"))
            continue
        for lam, lab in enumerate(d.primaries):
            img, par = dihedral_current_table(n, h, i, j, lab, corrected)
            got_img = d.primaries[J.perm[lam]]
            q2 = 2 * J.Q[lam]
            if got_img != img or q2.denominator != 1 or int(q2) % 2 != par:
                rep.mismatches.append(Mismatch((h, i, j), lab, img, par, got_img, J.Q[lam]))
            if (h, i, j) != (0, 0, 0):
                fixed = J.perm[lam] == lam
                expected = img == lab if corrected else _expected_fixed(n, h, i, j, lab)
                if fixed != expected:
                    rep.fixed_point_mismatches.append(Mismatch((h, i, j), lab, None, par, got_img, J.Q[lam]))
    return rep


def dihedral_sc_invariant(n: int, h: int, i: int, j: int, fd: FiniteGroupDatum | None = None) -> ModularInvariant:
    if (h, i, j) == (0, 0, 0):
        raise ValueError("(h, i, j) must be nontrivial")
    fd = fd or dihedral_datum(n)
    d = fd.datum
    z = d.index((("s", h * n), ("psi", i, j)))
    J = next(x for x in d.simple_currents if x.index == z)
    Z = simple_current_invariant(d, J)
    if Z is None:
        raise AssertionError("z_{hij} does not define a simple-current invariant")
    Z.name = f"Z^({h}{i}{j})"
    return Z


# ---------------------------------------------------------------------------
# sigma restriction in stages

def _quotient(G: FiniteGroup, K: Sequence[int], N: Sequence[int]):
    """K/N as a FiniteGroup, with the projection K -> K/N and the coset list."""
    Ns = set(N)
    cosets: list[tuple[int, ...]] = []
    where = {}
    for k in sorted(K, key=lambda x: (x not in Ns, x)):
        if k in where:
            continue
        c = tuple(sorted(G.m(k, x) for x in N))
        for y in c:
            where[y] = len(cosets)
        cosets.append(c)
    m = len(cosets)
    mul = np.zeros((m, m), dtype=np.int64)
    for i, c in enumerate(cosets):
        for j, e in enumerate(cosets):
            mul[i, j] = where[G.m(c[0], e[0])]
    Q = FiniteGroup([c[0] for c in cosets], mul, name=f"{G.name}/N")
    return Q, where, cosets


def sigma_restrict_stages(G: FiniteGroup, K: Sequence[int], N: Sequence[int], rep_coset: int,
                          chi: Character, target: FiniteGroupDatum) -> dict[int, int]:
    """[kN, chi] -> sum_n [kn, Ind_{Z_kn(K)}^{Z_kn(G)} (chi o pi)], as multiplicities on D(G) primaries.

    ``rep_coset`` indexes an element of K/N (from ``_quotient``) and ``chi`` is an irrep of its
    centralizer in K/N.  The kn run over K-class representatives inside the coset kN whose
    images are K/N-conjugate to kN.
    """
    K = tuple(sorted(K))
    if not G.is_subgroup(K) or not G.is_normal(N, K):
        raise ValueError("need N normal in K <= G")
    Q, where, cosets = _quotient(G, K, N)
    coset = cosets[rep_coset]
    out: dict[int, int] = {}
    seen: set[int] = set()
    for kn in coset:
        if kn in seen:
            continue
        kcls = {G.conj(g, kn) for g in K}
        seen.update(kcls)
        ZK = G.centralizer(kn, K)
        # chi o pi on Z_kn(K)
        vals = np.stack([chi.values[0, chi._pos[where[z]]] for z in ZK])[None]
        pulled = Character(G, ZK, _lift_values(vals, chi.N, G.exponent), None)
        ind = pulled.induce(G.centralizer(kn))
        for idx, mult in _decompose_at(target, kn, ind).items():
            out[idx] = out.get(idx, 0) + mult
    return {k: v for k, v in out.items() if v}


def _lift_values(vals: np.ndarray, N_from: int, N_to: int) -> np.ndarray:
    if N_from == N_to:
        return vals
    return CycMatrix(N_from, vals).lift(N_to).data


def _decompose_at(target: FiniteGroupDatum, g: int, ch: Character) -> dict[int, int]:
    """Express a character of Z_g(G) as a sum of primaries (rep, irrep) of D(G)."""
    G = target.group
    for x in range(G.order):
        r = G.conj(x, g)
        if r in target.centralizers and any(target.reps[i] == r for i in range(target.size)):
            moved = ch.transport(x)
            out = {}
            for i in range(target.size):
                if target.reps[i] == r:
                    mlt = moved.inner(target.chars[i])
                    if mlt:
                        out[i] = mlt
            return out
    raise AssertionError("element has no class representative")


def _quotient_chars(G: FiniteGroup, K, N):
    """Primaries of D(K/N): (coset index of a class rep, centralizer irrep)."""
    Q, where, cosets = _quotient(G, K, N)
    out = []
    for cl in Q.classes():
        r = cl[0]
        for c in Q.character_table(Q.centralizer(r)):
            out.append((r, c))
    return Q, out


# ---------------------------------------------------------------------------
# push-forward modules

def pushforward_module(fd: FiniteGroupDatum, act: np.ndarray, mult: np.ndarray,
                       point_labels: Sequence[Hashable] | None = None) -> tuple[list, np.ndarray]:
    """Module over D(G) on G-equivariant bundles over a finite G-set X.

    ``act[h, p]`` is h.p and ``mult[x, p]`` is an equivariant map G x X -> X (x acting on p).
    The basis is (orbit representative p, irrep of Stab(p)); the action of a primary (a, chi)
    on (p, rho) is the push-forward of E_(a,chi) boxtimes F_(p,rho) along ``mult``.
    Returns (basis, mats) with mats[lam, F, F'] the multiplicity of F' in lam . F.
    """
    G = fd.group
    X = act.shape[1]
    orbit_rep = {}
    mover = {}  # q -> d with d . rep = q
    reps = []
    for p in range(X):
        if p in orbit_rep:
            continue
        reps.append(p)
        for d in range(G.order):
            q = int(act[d, p])
            if q not in orbit_rep:
                orbit_rep[q] = p
                mover[q] = d
    stab = {p: tuple(h for h in range(G.order) if act[h, p] == p) for p in reps}
    irr = {p: G.character_table(stab[p]) for p in reps}
    basis = [(p, c) for p in reps for c in irr[p]]
    B = len(basis)
    P = fd.size
    mats = np.zeros((P, B, B), dtype=np.int64)
    f = fd.chars[0].values.shape[2]
    Nexp = G.exponent
    classes = {}
    for a in set(fd.reps):
        cx = {}
        for c in range(G.order):
            x = G.conj(c, a)
            cx.setdefault(x, c)
        classes[a] = cx
    for li in range(P):
        a, chi = fd.reps[li], fd.chars[li]
        for Fi, (p, rho) in enumerate(basis):
            orbit = [q for q in range(X) if orbit_rep[q] == p]
            for yr in reps:
                S = stab[yr]
                acc = np.zeros((len(S), f), dtype=np.int64)
                for x, cxe in classes[a].items():
                    for q in orbit:
                        if int(mult[x, q]) != yr:
                            continue
                        dq = mover[q]
                        for hi, h in enumerate(S):
                            if G.conj(h, x) != x or int(act[h, q]) != q:
                                continue
                            u = G.conj(int(G.inv[cxe]), h)
                            v = G.conj(int(G.inv[dq]), h)
                            prod = CycMatrix(Nexp, chi.values[:, [chi._pos[u]]]).hadamard(
                                CycMatrix(Nexp, rho.values[:, [rho._pos[v]]])).data[0, 0]
                            acc[hi] += prod
                if not acc.any():
                    continue
                ch = Character(G, S, acc[None], None)
                for Fj, (p2, rho2) in enumerate(basis):
                    if p2 == yr:
                        mats[li, Fi, Fj] = ch.inner(rho2)
    labels = point_labels or list(range(X))
    names = [f"({labels[p]},{c.label})" for p, c in basis]
    return names, mats


def group_from_tag(tag: tuple[str, int]) -> FiniteGroup:
    kind, n = tag
    if kind == "cyclic":
        return cyclic_group(n)
    if kind == "dihedral":
        return dihedral_group(n)
    raise ValueError(f"unsupported group tag {tag!r}")


def _generators(G: FiniteGroup, tag) -> list[int]:
    if tag[0] == "cyclic":
        return [1 % G.order]
    return [G.index((1, 0)), G.index((0, 1))]


def omega_from_images(G: FiniteGroup, tag, images: Sequence[int]) -> list[int]:
    """Extend generator images to a map on G and check it is an automorphism."""
    gens = _generators(G, tag)
    if len(images) != len(gens):
        raise ValueError("one image per generator is required")
    om = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = G.m(x, g)
                v = G.m(om[x], im)
                if y in om:
                    if om[y] != v:
                        raise ValueError("images do not define a homomorphism")
                else:
                    om[y] = v
                    nxt.append(y)
        frontier = nxt
    omega = [om[x] for x in range(G.order)]
    if len(set(omega)) != G.order or any(omega[G.m(x, y)] != G.m(omega[x], omega[y])
                                         for x in range(G.order) for y in range(G.order)):
        raise ValueError("omega is not an automorphism")
    return omega


def twisted_diagonal_nimrep(fd: FiniteGroupDatum, omega: Sequence[int]) -> Nimrep:
    """Basis (g, chi): g an omega-twisted class representative (g ~ h g omega(h)^-1), chi an irrep of
    its twisted stabiliser; D(G) acts by push-forward along multiplication."""
    G = fd.group
    n = G.order
    act = np.zeros((n, n), dtype=np.int64)
    for h in range(n):
        for g in range(n):
            act[h, g] = G.m(G.m(h, g), int(G.inv[omega[h]]))
    names, mats = pushforward_module(fd, act, G.mul, G.labels)
    return Nimrep(names, mats, name="omega-twisted")


def omega_on_primaries(fd: FiniteGroupDatum, omega: Sequence[int]) -> list[int]:
    """(a, chi) -> (omega(a), chi o omega^-1), transported back to class representatives."""
    G = fd.group
    inv = [0] * G.order
    for x, y in enumerate(omega):
        inv[y] = x
    out = []
    for i in range(fd.size):
        a, chi = fd.reps[i], fd.chars[i]
        b = omega[a]
        H = tuple(sorted(omega[h] for h in chi.H))
        vals = np.stack([chi.values[0, chi._pos[inv[h]]] for h in H])[None]
        image = Character(G, H, vals, None)
        dec = _decompose_at(fd, b, image)
        (j, m), = dec.items()
        assert m == 1
        out.append(j)
    return out


# ---------------------------------------------------------------------------
# the SO-type theory for D(D_{2n})

@dataclass
class SOTheory:
    n: int
    nimrep: Nimrep
    full_system: list[str]
    alpha_plus: np.ndarray  # (P, |full|)
    alpha_minus: np.ndarray
    matched_invariant: np.ndarray


def dihedral_so_theory(n: int, fd: FiniteGroupDatum | None = None) -> SOTheory:
    """H = <(s^n, 1), (a, a), (b, b)>: nimrep on bundles over G/Z, Z = <s^n>, with G acting by
    conjugation; the full system is two copies labelled by the Z-character.

    alpha+ (a, chi) = (0; Za, Ind chi); alpha- (a, chi) = (eps; Za, Ind chi) where eps records the
    s^n-eigenvalue chi(s^n)/chi(1) = +-1.
    """
    fd = fd or dihedral_datum(n)
    G = fd.group
    zc = G.index((0, n))
    Zs = (0, zc)
    cosets = []
    where = {}
    for g in range(G.order):
        if g in where:
            continue
        c = tuple(sorted((g, G.m(zc, g))))
        where[c[0]] = where[c[1]] = len(cosets)
        cosets.append(c)
    X = len(cosets)
    act = np.zeros((G.order, X), dtype=np.int64)
    mult = np.zeros((G.order, X), dtype=np.int64)
    for h in range(G.order):
        for i, c in enumerate(cosets):
            act[h, i] = where[G.conj(h, c[0])]
            mult[h, i] = where[G.m(h, c[0])]
    names, mats = pushforward_module(fd, act, mult, [G.labels[c[0]] for c in cosets])
    nim = Nimrep(names, mats, name=f"SO-type D_{2 * n}")
    # bases for alpha maps
    orbit_rep, mover, reps = {}, {}, []
    for p in range(X):
        if p in orbit_rep:
            continue
        reps.append(p)
        for dd in range(G.order):
            q = int(act[dd, p])
            if q not in orbit_rep:
                orbit_rep[q], mover[q] = p, dd
    stab = {p: tuple(h for h in range(G.order) if act[h, p] == p) for p in reps}
    irr = {p: G.character_table(stab[p]) for p in reps}
    basis = [(p, c) for p in reps for c in irr[p]]
    B = len(basis)
    P = fd.size
    ap = np.zeros((P, 2 * B), dtype=np.int64)
    am = np.zeros((P, 2 * B), dtype=np.int64)
    for i in range(P):
        a, chi = fd.reps[i], fd.chars[i]
        p = where[a]
        ind = chi.induce(stab[orbit_rep[p]] if p == orbit_rep[p] else
                         tuple(sorted(G.conj(mover[p], h) for h in stab[orbit_rep[p]])))
        moved = ind.transport(int(G.inv[mover[p]])) if p != orbit_rep[p] else ind
        vec = np.zeros(B, dtype=np.int64)
        for j, (q, c) in enumerate(basis):
            if q == orbit_rep[p]:
                vec[j] = moved.inner(c)
        eps = 0 if chi.value(zc) == chi.value(0) else 1
        ap[i, :B] = vec
        am[i, eps * B:(eps + 1) * B] = vec
    Zm = ap @ am.T
    full = [f"{e}:{nm}" for e in (0, 1) for nm in names]
    return SOTheory(n, nim, full, ap, am, Zm)
