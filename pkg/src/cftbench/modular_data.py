"""Modular data: primaries, S and T, fusion, simple currents and charge conjugation.

S is stored as an integral matrix W over Z[zeta_N] with S = W / sqrt(s2), so
fusion coefficients, quantum dimensions and S-phase relations are ratios in
which the surd cancels.  T is stored as phases in Q/Z.

SU(n) level k primaries are ordered lexicographically by their Dynkin labels
(lambda_1, ..., lambda_{n-1}); the vacuum (k; 0, ..., 0) comes first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Any, Hashable, Sequence

import numpy as np

from .cyclotomic import (
    ConductorOverflow, CycMatrix, CycNumber, DEFAULT_CONDUCTOR_CAP, euler_phi, lcm,
    matmul_mod, split_primes, sqrt_integer, _reduction_table,
)

__all__ = [
    "AffineWeight", "SimpleCurrent", "ModularDatum", "su_weights", "su_datum",
    "fusion_verlinde", "fusion_kac_walton", "kw_fusion_matrix", "kw_fusion_tensor",
    "verlinde_tensor", "dims_and_ideal", "weyl_dimension", "weight_multiplicities",
    "check_modular", "check_current_phase", "ModularCheckReport", "affine_fold",
]


@dataclass(frozen=True, order=True)
class AffineWeight:
    """Affine SU(n) weight (lambda_0; lambda_1, ..., lambda_{n-1})."""

    comps: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.comps)

    @property
    def level(self) -> int:
        return sum(self.comps)

    @property
    def dynkin(self) -> tuple[int, ...]:
        return self.comps[1:]

    @classmethod
    def from_dynkin(cls, k: int, dynkin: Sequence[int]) -> "AffineWeight":
        lam0 = k - sum(dynkin)
        if lam0 < 0 or any(x < 0 for x in dynkin):
            raise ValueError(f"{tuple(dynkin)} is not a level-{k} weight")
        return cls((lam0, *dynkin))

    def rotate(self, d: int = 1) -> "AffineWeight":
        """Apply J^d: (l0; l1, ..., l_{n-1}) -> (l_{n-1}; l0, ..., l_{n-2})."""
        d %= self.n
        return AffineWeight(self.comps[-d:] + self.comps[:-d]) if d else self

    def conjugate(self) -> "AffineWeight":
        return AffineWeight((self.comps[0],) + tuple(reversed(self.comps[1:])))

    def __str__(self):
        return f"({self.comps[0]};" + ",".join(map(str, self.comps[1:])) + ")"


@dataclass(frozen=True)
class SimpleCurrent:
    """A simple current: permutation of primaries, its S-phase map Q and T-ratio exponent h."""

    index: int
    perm: tuple[int, ...]
    Q: tuple[Fraction, ...]
    h: Fraction

    @property
    def order(self) -> int:
        o, x = 1, self.perm[0]
        while x != 0:
            x = self.perm[x]
            o += 1
        return o

    def power(self, l: int) -> tuple[int, ...]:
        p = list(range(len(self.perm)))
        for _ in range(l % self.order):
            p = [self.perm[x] for x in p]
        return tuple(p)


@dataclass
class ModularDatum:
    """Finite modular data with S = W / sqrt(s2) and T_lambda = exp(2 pi i t_lambda)."""

    name: str
    primaries: list[Hashable]
    W: CycMatrix
    s2: int
    t: tuple[Fraction, ...]
    conj: tuple[int, ...]
    simple_currents: list[SimpleCurrent] = field(default_factory=list)
    lie: tuple[int, int] | None = None  # (n, k) for SU(n) level k
    dims: tuple[int, ...] | None = None  # classical dimensions, Lie case
    _fusion: np.ndarray | None = field(default=None, repr=False)
    _index: dict | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.primaries)

    def index(self, label) -> int:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.primaries)}
        if isinstance(label, (int, np.integer)) and not isinstance(self.primaries[0], int):
            return int(label)
        return self._index[label]

    @property
    def t_conductor(self) -> int:
        return lcm(*(x.denominator for x in self.t))

    @property
    def conductor(self) -> int:
        return lcm(self.W.N, self.t_conductor)

    def T_matrix(self, N: int | None = None, inverse: bool = False) -> CycMatrix:
        N = N or self.conductor
        sgn = -1 if inverse else 1
        return CycMatrix.diagonal_roots(N, [sgn * int(x * N) for x in self.t])

    def quantum_dim(self, lam) -> CycNumber:
        i = self.index(lam)
        return self.W.entry(i, 0) / self.W.entry(0, 0)

    def quantum_dims(self) -> list[CycNumber]:
        return [self.quantum_dim(i) for i in range(self.size)]

    def fusion_tensor(self) -> np.ndarray:
        """N[lam, mu, nu] = N_{lam, mu}^nu (cached)."""
        if self._fusion is None:
            if self.lie is not None:
                self._fusion = kw_fusion_tensor(*self.lie)
            else:
                self._fusion = verlinde_tensor(self)
        return self._fusion

    def fusion_matrix(self, lam) -> np.ndarray:
        return self.fusion_tensor()[self.index(lam)]

    def fundamental_indices(self) -> list[int]:
        """Indices of ring generators: fundamental weights (Lie case) or all primaries."""
        if self.lie is None:
            return list(range(self.size))
        n, k = self.lie
        if k == 0:
            return []
        out = []
        for i in range(1, n):
            dyn = [0] * (n - 1)
            dyn[i - 1] = 1
            out.append(self.index(AffineWeight.from_dynkin(k, dyn)))
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "primaries": [str(p) for p in self.primaries],
            "S": {"conductor": self.W.N, "scale_sqrt": self.s2,
                  "W": self.W.data.tolist()},
            "T": [str(x) for x in self.t],
            "conj": list(self.conj),
            "simple_currents": [{"primary": str(self.primaries[j.index]), "perm": list(j.perm),
                                 "Q": [str(q) for q in j.Q], "h": str(j.h)}
                                for j in self.simple_currents],
        }


# ---------------------------------------------------------------------------
# SU(n) weights

@lru_cache(maxsize=None)
def su_weights(n: int, k: int) -> tuple[AffineWeight, ...]:
    out = []
    for dyn in itertools.product(range(k + 1), repeat=n - 1):
        if sum(dyn) <= k:
            out.append(AffineWeight.from_dynkin(k, dyn))
    out.sort(key=lambda w: w.dynkin)
    return tuple(out)


def _partition(dynkin: Sequence[int]) -> tuple[int, ...]:
    n = len(dynkin) + 1
    return tuple(sum(dynkin[i:]) for i in range(n - 1)) + (0,)


def _shifted(dynkin: Sequence[int]) -> tuple[int, ...]:
    n = len(dynkin) + 1
    p = _partition(dynkin)
    return tuple(p[i] + n - 1 - i for i in range(n))


def weyl_dimension(dynkin: Sequence[int]) -> int:
    v = _shifted(dynkin)
    n = len(v)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= v[i] - v[j]
            den *= j - i
    return num // den


def _inner_n(x: Sequence[int], y: Sequence[int]) -> int:
    """n times the SU(n) inner product of epsilon-coordinate vectors."""
    n = len(x)
    return n * sum(a * b for a, b in zip(x, y)) - sum(x) * sum(y)


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def su_datum(n: int, k: int, cap: int = DEFAULT_CONDUCTOR_CAP) -> ModularDatum:
    """SU(n) level k modular data; S by the Kac-Peterson Weyl sum."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2, k >= 0")
    kappa = k + n
    npos = n * (n - 1) // 2
    N = lcm(n * kappa, 4 if npos % 2 else 1)
    if N > cap:
        raise ConductorOverflow(f"conductor {N} exceeds cap {cap}")
    weights = su_weights(n, k)
    P = len(weights)
    X = np.array([_shifted(w.dynkin) for w in weights], dtype=np.int64)
    sx = X.sum(axis=1)
    base = np.mod(np.outer(sx, sx), n * kappa)
    step = N // (n * kappa)
    # i^{|Delta+|}: a quarter-turn shift when |Delta+| is odd, a sign otherwise
    ishift = (npos % 4) * (N // 4) if npos % 2 else 0
    isign = -1 if npos % 4 == 2 else 1
    f = euler_phi(N)
    table = _reduction_table(N)[:N]
    counts = np.zeros((P, P, N), dtype=np.int16)
    rows = np.arange(P)[:, None]
    cols = np.arange(P)[None, :]
    for perm in itertools.permutations(range(n)):
        sgn = _perm_sign(perm)
        E = np.mod(base - n * (X[:, list(perm)] @ X.T), n * kappa) * step + ishift
        E = np.mod(E, N)
        counts[rows, cols, E] += sgn * isign
    data = np.empty((P, P, f), dtype=np.int64)
    chunk = max(1, 2_000_000 // max(1, P * N))
    for a in range(0, P, chunk):
        data[a:a + chunk] = (counts[a:a + chunk].reshape(-1, N).astype(np.int64) @ table).reshape(-1, P, f)
    W = CycMatrix(N, data)
    s2 = n * kappa ** (n - 1)

    # T phases h - c/24
    rho = tuple(n - 1 - i for i in range(n))
    rr = _inner_n(rho, rho)
    c24 = Fraction(k * (n * n - 1), 24 * kappa)
    t = []
    for w in weights:
        x = _shifted(w.dynkin)
        h = Fraction(_inner_n(x, x) - rr, 2 * n * kappa)
        t.append((h - c24) % 1)
    idx = {w: i for i, w in enumerate(weights)}
    conj = tuple(idx[w.conjugate()] for w in weights)
    currents = []
    if k >= 1:
        for d in range(n):
            perm = tuple(idx[w.rotate(d)] for w in weights)
            Q = tuple(Fraction(d * sum(i * li for i, li in enumerate(w.comps)), n) % 1 for w in weights)
            h = Fraction(k * d * (n - d), 2 * n)
            currents.append(SimpleCurrent(index=perm[0], perm=perm, Q=Q, h=h))
    dims = tuple(weyl_dimension(w.dynkin) for w in weights)
    return ModularDatum(name=f"SU({n})_{k}", primaries=list(weights), W=W, s2=s2, t=tuple(t),
                        conj=conj, simple_currents=currents, lie=(n, k), dims=dims)


# ---------------------------------------------------------------------------
# modular relations, certified through split primes

@dataclass
class ModularCheckReport:
    symmetric: bool
    unitary: bool
    s_squared_is_c: bool
    st_cubed: bool
    c_involution: bool
    conj_compatible: bool
    current_phases: bool
    primes_used: int

    @property
    def ok(self) -> bool:
        return (self.symmetric and self.unitary and self.s_squared_is_c and self.st_cubed
                and self.c_involution and self.conj_compatible and self.current_phases)


def _entry_abs_bound(M: CycMatrix) -> int:
    d = M.data
    if d.dtype == object:
        return max(sum(abs(int(x)) for x in row) for row in d.reshape(-1, d.shape[2]))
    return int(np.abs(d).sum(axis=2).max())


def check_modular(d: ModularDatum) -> ModularCheckReport:
    """Exact check of S^t = S, S S^dagger = 1, S^2 = C, S T S = T^-1 S T^-1.

    Both sides live in Z[zeta_N]; they are compared through every embedding
    into F_p for primes p = 1 mod N.  A nonzero difference of algebraic integers
    whose conjugates are bounded by B cannot vanish modulo primes with product
    greater than B (its norm would be divisible by that product to the power
    phi(N)), which turns the modular comparison into a proof.
    """
    N = lcm(d.conductor, sqrt_integer(d.s2).N)
    W = d.W.lift(N)
    root = sqrt_integer(d.s2).lift(N)
    P = d.size
    wb = _entry_abs_bound(W)
    rb = sum(abs(x) for x in root.num)
    bound = 2 * (P * wb * wb * max(rb, 1) + d.s2) + 1
    primes = []
    prod = 1
    count = 1
    while prod <= bound:
        count += 1
        primes = split_primes(N, count)
        prod = 1
        for p, _ in primes:
            prod *= p
    units = [a for a in range(1, N + 1) if gcd(a, N) == 1]
    texp = [int(x * N) for x in d.t]
    sym = bool(np.array_equal(W.data, W.data.transpose(1, 0, 2)))
    C = np.zeros((P, P), dtype=np.int64)
    C[np.arange(P), list(d.conj)] = 1
    cinv = all(d.conj[d.conj[i]] == i for i in range(P))
    unitary = s2c = stc = True
    neg_index = {a: units.index((-a) % N if N > 1 else 1) for a in units}
    for p, g in primes:
        img = W.images_mod(p, g)  # (U, P, P)
        root_img = np.array([sum(c * pow(g, a * e, p) for e, c in enumerate(root.num)) % p for a in units])
        tim = np.array([[pow(g, (a * e) % N, p) for e in texp] for a in units], dtype=np.int64)
        tinv = np.array([[pow(g, (-a * e) % N, p) for e in texp] for a in units], dtype=np.int64)
        conj_img = img[[neg_index[a] for a in units]].transpose(0, 2, 1)
        # S S^dagger = 1  <=>  W conj(W)^t = s2 I
        prod1 = matmul_mod(img, conj_img, p)
        eye = (d.s2 % p) * np.eye(P, dtype=np.int64)
        unitary &= bool(np.all(prod1 == eye[None]))
        prod2 = matmul_mod(img, img, p)
        s2c &= bool(np.all(prod2 == ((d.s2 % p) * C)[None]))
        lhs = matmul_mod(np.mod(img * tim[:, None, :], p), img, p)
        rhs = np.mod(tinv[:, :, None] * img, p)
        rhs = np.mod(rhs * tinv[:, None, :], p)
        rhs = np.mod(rhs * root_img[:, None, None], p)
        stc &= bool(np.all(lhs == rhs))
    conj_ok = bool(np.array_equal(d.W.take(rows=list(d.conj)).data, d.W.conj().data))
    conj_ok &= all(d.t[d.conj[i]] == d.t[i] for i in range(P))
    return ModularCheckReport(sym, unitary, s2c, stc, cinv, conj_ok,
                              all(check_current_phase(d, j) for j in d.simple_currents), len(primes))


def check_current_phase(d: ModularDatum, j: SimpleCurrent) -> bool:
    """S_{j lam, mu} = exp(2 pi i Q_j(mu)) S_{lam, mu}, exactly."""
    N = lcm(d.W.N, *(q.denominator for q in j.Q))
    W = d.W.lift(N)
    return W.take(rows=list(j.perm)) == W.scale_columns_by_roots([int(q * N) for q in j.Q])


# ---------------------------------------------------------------------------
# Verlinde formula

def verlinde_tensor(d: ModularDatum, lams: Sequence[int] | None = None) -> np.ndarray:
    """N[lam, mu, nu] = (1/s2) sum_s W_lam,s W_mu,s conj(W_nu,s) / (W_1,s / W'...) computed exactly.

    With r_{lam,s} = W_{lam,s}/W_{1,s} (an algebraic integer), N_lam = W diag(r_lam) W^dagger / s2.
    Integrality and nonnegativity are certified; failure raises AssertionError.
    """
    W = d.W
    P = d.size
    N = W.N
    invs = [W.entry(0, s).inverse() for s in range(P)]
    D = lcm(*(x.den for x in invs))
    inv_data = np.empty((1, P, euler_phi(N)), dtype=object)
    for s, x in enumerate(invs):
        inv_data[0, s] = [c * (D // x.den) for c in x.num]
    INV = CycMatrix(N, _to_int(inv_data))
    lams = range(P) if lams is None else lams
    Wc = W.conj().transpose()
    out = np.zeros((len(lams), P, P), dtype=np.int64)
    rows = [W.take(rows=[lam]) for lam in lams]
    Blocks = Wc.multiplication_blocks()
    for a, lam in enumerate(lams):
        r = rows[a].hadamard(INV)
        rd = r.data
        if rd.dtype == object:
            ok = all(int(x) % D == 0 for x in rd.flat)
        else:
            ok = bool(np.all(rd % D == 0))
        assert ok, "S ratio is not an algebraic integer"
        r = CycMatrix(N, rd // D)
        A = W.hadamard(CycMatrix(N, np.broadcast_to(r.data, (P, P, r.data.shape[2])).copy()))
        M = _block_product(A, Blocks)
        rat = M.rational_part()
        assert rat is not None, "Verlinde output is not rational"
        assert np.all(rat % d.s2 == 0), "Verlinde output is not integral"
        Nl = rat // d.s2
        assert np.all(Nl >= 0), "Verlinde output is negative"
        out[a] = Nl.astype(np.int64)
    return out


def _to_int(a: np.ndarray) -> np.ndarray:
    if a.size == 0 or max(abs(int(x)) for x in a.flat) < 2 ** 62:
        return a.astype(np.int64)
    return a


def _block_product(A: CycMatrix, Blocks: np.ndarray) -> CycMatrix:
    r, c, f = A.data.shape
    d = Blocks.shape[1]
    from .cyclotomic import _absmax
    bound = _absmax(A.data) * _absmax(Blocks) * c * f
    A2 = A.data.reshape(r, c * f)
    M2 = Blocks.transpose(0, 2, 1, 3).reshape(c * f, d * f)
    if bound < 2 ** 52:
        res = np.rint(A2.astype(np.float64) @ M2.astype(np.float64)).astype(np.int64)
    elif bound < 2 ** 62:
        res = A2.astype(np.int64) @ M2.astype(np.int64)
    else:
        res = A2.astype(object).dot(M2.astype(object))
    return CycMatrix(A.N, res.reshape(r, d, f))


def fusion_verlinde(d: ModularDatum, lam, mu) -> np.ndarray:
    i, j = d.index(lam), d.index(mu)
    return verlinde_tensor(d, [i])[0, j]


# ---------------------------------------------------------------------------
# Kac-Walton

@lru_cache(maxsize=None)
def weight_multiplicities(part: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Weights (content vectors) of the U(m) irrep with highest weight ``part``, with multiplicities.

    Gelfand-Tsetlin branching U(m) -> U(m-1); the multiplicity of a content is a Kostka number.
    """
    m = len(part)
    if m == 1:
        return {part: 1}
    total = sum(part)
    out: dict[tuple[int, ...], int] = {}
    ranges = [range(part[i + 1], part[i] + 1) for i in range(m - 1)]
    for mu in itertools.product(*ranges):
        last = total - sum(mu)
        for w, c in weight_multiplicities(tuple(mu)).items():
            key = w + (last,)
            out[key] = out.get(key, 0) + c
    return out


def affine_fold(V: np.ndarray, kappa: int) -> tuple[np.ndarray, np.ndarray]:
    """Fold rows of shifted weights into the open alcove; returns (folded rows, signs in {-1,0,1})."""
    V = np.array(V, dtype=np.int64, copy=True)
    M, n = V.shape
    sign = np.ones(M, dtype=np.int64)
    active = np.ones(M, dtype=bool)
    for _ in range(10000):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        sub = V[idx]
        order = np.argsort(-sub, axis=1, kind="stable")
        inv = np.zeros(idx.size, dtype=np.int64)
        for a in range(n):
            for b in range(a + 1, n):
                inv += order[:, a] > order[:, b]
        sub = np.take_along_axis(sub, order, axis=1)
        s = np.where(inv % 2 == 1, -1, 1)
        sign[idx] *= s
        dup = np.any(sub[:, :-1] == sub[:, 1:], axis=1) if n > 1 else np.zeros(idx.size, bool)
        spread = sub[:, 0] - sub[:, -1]
        wall = spread == kappa
        zero = dup | wall
        sign[idx[zero]] = 0
        refl = (~zero) & (spread > kappa)
        r = sub[refl]
        first, last = r[:, 0].copy(), r[:, -1].copy()
        r[:, 0] = last + kappa
        r[:, -1] = first - kappa
        sub[refl] = r
        sign[idx[refl]] *= -1
        V[idx] = sub
        active[idx[~refl]] = False
    else:
        raise RuntimeError("affine folding did not terminate")
    return V, sign


def _dynkin_key(n: int, k: int):
    weights = su_weights(n, k)
    base = k + 1
    size = base ** (n - 1)
    lookup = -np.ones(size, dtype=np.int64)
    for i, w in enumerate(weights):
        key = 0
        for j, x in enumerate(w.dynkin):
            key += x * base ** j
        lookup[key] = i
    return base, lookup


@lru_cache(maxsize=None)
def _kw_setup(n: int, k: int):
    weights = su_weights(n, k)
    shifted = np.array([_shifted(w.dynkin) for w in weights], dtype=np.int64)
    base, lookup = _dynkin_key(n, k)
    return weights, shifted, base, lookup


def kw_fusion_matrix(n: int, k: int, lam: AffineWeight | Sequence[int]) -> np.ndarray:
    """Matrix M[mu, nu] = N_{lam, mu}^nu by Brauer-Klimyk tensoring and affine Weyl folding."""
    weights, shifted, base, lookup = _kw_setup(n, k)
    dyn = lam.dynkin if isinstance(lam, AffineWeight) else tuple(lam)
    wm = weight_multiplicities(_partition(dyn))
    wts = np.array(list(wm.keys()), dtype=np.int64)
    mults = np.array(list(wm.values()), dtype=np.int64)
    P = len(weights)
    V = (shifted[:, None, :] + wts[None, :, :]).reshape(-1, n)
    Vf, sgn = affine_fold(V, k + n)
    mu_idx = np.repeat(np.arange(P), len(wts))
    coeff = sgn * np.tile(mults, P)
    keep = coeff != 0
    Vf, mu_idx, coeff = Vf[keep], mu_idx[keep], coeff[keep]
    labels = Vf[:, :-1] - Vf[:, 1:] - 1
    key = np.zeros(len(labels), dtype=np.int64)
    for j in range(n - 1):
        key += labels[:, j] * base ** j
    nu_idx = lookup[key]
    if np.any(nu_idx < 0):
        raise AssertionError("folded weight outside the alcove")
    out = np.zeros((P, P), dtype=np.int64)
    np.add.at(out, (mu_idx, nu_idx), coeff)
    if np.any(out < 0):
        raise AssertionError("Kac-Walton produced a negative coefficient")
    return out


@lru_cache(maxsize=None)
def kw_fusion_tensor(n: int, k: int) -> np.ndarray:
    weights = su_weights(n, k)
    out = np.stack([kw_fusion_matrix(n, k, w) for w in weights])
    out.setflags(write=False)
    return out


def fusion_kac_walton(n: int, k: int, lam, mu) -> np.ndarray:
    weights = su_weights(n, k)
    lam = lam if isinstance(lam, AffineWeight) else AffineWeight.from_dynkin(k, lam)
    mu = mu if isinstance(mu, AffineWeight) else AffineWeight.from_dynkin(k, mu)
    return kw_fusion_matrix(n, k, lam)[weights.index(mu)]


# ---------------------------------------------------------------------------
# classical dimensions and the fusion ideal

def dims_and_ideal(n: int, k: int, depth: int | None = None):
    """Classical dimensions on the level-k weights and a generating family of I_k(SU(n)).

    The fusion ideal is spanned over Z by chi_nu for nu on an affine wall and by
    chi_nu - sign * chi_{fold(nu)} otherwise; we list every dominant nu of level
    in (k, k + depth].  Each generator is (dynkin labels of nu, its dimension
    contribution).
    """
    kappa = k + n
    depth = 2 * kappa if depth is None else depth
    weights, shifted, base, lookup = _kw_setup(n, k)
    dims = {w: weyl_dimension(w.dynkin) for w in weights}
    gens = []
    cands = [dyn for dyn in itertools.product(range(k + depth + 1), repeat=n - 1)
             if k < sum(dyn) <= k + depth]
    if not cands:
        return dims, gens
    V = np.array([_shifted(dyn) for dyn in cands], dtype=np.int64)
    Vf, sgn = affine_fold(V, kappa)
    for dyn, v, s in zip(cands, Vf, sgn):
        dim = weyl_dimension(dyn)
        if s == 0:
            gens.append((dyn, dim))
        else:
            lab = tuple(int(x) for x in (v[:-1] - v[1:] - 1))
            gens.append((dyn, dim - int(s) * weyl_dimension(lab)))
    return dims, gens
