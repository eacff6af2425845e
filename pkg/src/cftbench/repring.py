"""Representation-ring quotients: the SU(2) Verlinde presentation, the SO(3)/D-series nimrep,
the SO(3) neutral system and the SU(3) charge-conjugation nimrep, as explicit Z-modules.

Symbols: ("a", i) for a^i in R_T, ("s", i) for the i-dimensional SU(2) irrep sigma_i,
("k", i) for kappa_i in R_O2, ("d",) for delta and ("1",) for the unit.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import numpy as np

from .invariants import permutation_matrix, simple_current_invariant
from .modular_data import ModularDatum, su_datum
from .nimreps import Nimrep, ade_nimrep, compatible, exponents, find_isomorphism, verify_nimrep

__all__ = [
    "RepringError", "CharacterElement", "QuotientModule", "induct", "su2_verlinde_presentation",
    "so3_nimrep", "so3_neutral", "su3_cc_nimrep", "su3_restriction", "su2_restriction_to_o2",
]

RINGS = ("R_T", "R_SU2", "R_SO3", "R_O2")
ONE = ("1",)
DELTA = ("d",)
_UNIT = {"R_T": ("a", 0), "R_SU2": ("s", 1), "R_SO3": ("s", 1)}


class RepringError(ValueError):
    pass


def _normal_terms(sym: tuple) -> dict:
    """Conventions sigma_0 = 0, sigma_{-n} = -sigma_n, kappa_0 = 1 + delta, kappa_{-n} = kappa_n."""
    kind = sym[0]
    if kind == "s":
        n = sym[1]
        if n == 0:
            return {}
        return {("s", abs(n)): 1 if n > 0 else -1}
    if kind == "k":
        n = abs(sym[1])
        if n == 0:
            return {ONE: 1, DELTA: 1}
        return {("k", n): 1}
    return {sym: 1}


def _sym_product(x: tuple, y: tuple) -> dict:
    if x == ONE:
        return {y: 1}
    if y == ONE:
        return {x: 1}
    kx, ky = x[0], y[0]
    if kx == "a" and ky == "a":
        return {("a", x[1] + y[1]): 1}
    if kx == "s" and ky == "s":
        a, b = x[1], y[1]
        return {("s", abs(a - b) + 1 + 2 * i): 1 for i in range(min(a, b))}
    if kx == "d" and ky == "d":
        return {ONE: 1}
    if {kx, ky} == {"d", "k"}:
        return {x if kx == "k" else y: 1}
    if kx == "k" and ky == "k":
        out: dict = defaultdict(int)
        for s in (("k", x[1] + y[1]), ("k", x[1] - y[1])):
            for t, c in _normal_terms(s).items():
                out[t] += c
        return dict(out)
    raise RepringError(f"no product rule for {x} * {y}")


@dataclass(frozen=True)
class CharacterElement:
    ring: str
    coeffs: tuple  # sorted (symbol, coefficient) pairs, zero coefficients dropped

    @classmethod
    def make(cls, ring: str, coeffs: Mapping | Iterable) -> "CharacterElement":
        if ring not in RINGS:
            raise RepringError(f"unknown ring {ring}")
        acc: dict = defaultdict(int)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for sym, c in items:
            sym = tuple(sym)
            if sym == ONE and ring in _UNIT:
                sym = _UNIT[ring]
            for t, e in _normal_terms(sym).items():
                acc[t] += c * e
        return cls(ring, tuple(sorted((s, c) for s, c in acc.items() if c)))

    @classmethod
    def sym(cls, ring: str, *sym) -> "CharacterElement":
        return cls.make(ring, {tuple(sym): 1})

    @classmethod
    def one(cls, ring: str) -> "CharacterElement":
        return cls.make(ring, {ONE: 1})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "CharacterElement") -> "CharacterElement":
        d = defaultdict(int, self.as_dict())
        for s, c in other.coeffs:
            d[s] += c
        return CharacterElement.make(self.ring, d)

    def __neg__(self) -> "CharacterElement":
        return CharacterElement(self.ring, tuple((s, -c) for s, c in self.coeffs))

    def __sub__(self, other: "CharacterElement") -> "CharacterElement":
        return self + (-other)

    def scale(self, c: int) -> "CharacterElement":
        return CharacterElement.make(self.ring, {s: c * v for s, v in self.coeffs})

    def __mul__(self, other: "CharacterElement") -> "CharacterElement":
        d: dict = defaultdict(int)
        for s, c in self.coeffs:
            for t, e in other.coeffs:
                for u, f in _sym_product(s, t).items():
                    d[u] += c * e * f
        return CharacterElement.make(self.ring, d)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{''.join(map(str, s))}" for s, c in self.coeffs)


def induct(kind: str, x: CharacterElement) -> CharacterElement:
    """Dirac induction T -> SU(2) sends a^i to sigma_i; induction T -> O(2) sends a^i to kappa_i."""
    if x.ring != "R_T":
        raise RepringError("induction starts from R_T")
    if kind == "Dirac_T_to_SU2":
        return CharacterElement.make("R_SU2", {("s", sym[1]): c for sym, c in x.coeffs})
    if kind == "T_to_O2":
        d = defaultdict(int)
        for sym, c in x.coeffs:
            d[("k", sym[1])] += c
        return CharacterElement.make("R_O2", d)
    raise RepringError(f"unknown induction {kind}")


# ---------------------------------------------------------------------------

@dataclass
class QuotientModule:
    ring: str
    relations: str
    basis: list[tuple]
    reducer: Callable[[tuple], dict] = field(repr=False)
    actions: dict = field(default_factory=dict)
    labels: list[str] | None = None

    def index(self, sym) -> int:
        return self.basis.index(sym)

    def reduce(self, x: CharacterElement) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        for s, c in x.coeffs:
            for b, e in self.reducer(s).items():
                v[self.index(b)] += c * e
        return v

    def element(self, sym) -> CharacterElement:
        return CharacterElement.make(self.ring, {sym: 1})

    def action_matrix(self, m: CharacterElement) -> np.ndarray:
        """M[x, y] = coefficient of basis y in m * x (rows index the source, as in nimreps)."""
        return np.array([self.reduce(m * self.element(b)) for b in self.basis], dtype=np.int64)

    def is_idempotent(self, window: int) -> bool:
        """A second reduction pass changes nothing on every symbol up to the window."""
        for sym in self._window(window):
            once = self.reducer(sym)
            twice = defaultdict(int)
            for b, c in once.items():
                for t, e in self.reducer(b).items():
                    twice[t] += c * e
            if {b: c for b, c in twice.items() if c} != {b: c for b, c in once.items() if c}:
                return False
        return True

    def kernel_is_submodule(self, m: CharacterElement, window: int) -> bool:
        """For every symbol s in the window, m*s and m*reduce(s) reduce to the same vector."""
        for sym in self._window(window):
            lhs = self.reduce(m * self.element(sym))
            red = CharacterElement.make(self.ring, self.reducer(sym))
            if not np.array_equal(lhs, self.reduce(m * red)):
                return False
        return True

    def _window(self, window: int):
        kind = self.basis[-1][0]
        if kind == "a":
            return [("a", i) for i in range(-window, window + 1)]
        if kind == "k":
            return [("k", i) for i in range(window + 1)] + [ONE, DELTA]
        par = self.basis[0][1] % 2
        return [("s", i) for i in range(1, window + 1) if i % 2 == par]


def _reflect(m: int, walls: tuple[int, int]) -> tuple[int, int] | None:
    """Reduce an index into the open interval between two walls by reflections; sign flips
    with each reflection.  Returns None when the index sits on a wall."""
    lo, hi = walls
    sign = 1
    while True:
        if m == lo or m == hi:
            return None
        if m > hi:
            m, sign = 2 * hi - m, -sign
        elif m < lo:
            m, sign = 2 * lo - m, -sign
        else:
            return m, sign


def su2_verlinde_presentation(k: int) -> QuotientModule:
    """R_T / span{a^{+-kappa/2}, a^{i+kappa/2} + a^{-i+kappa/2}, a^{j-kappa/2} + a^{-j-kappa/2}}."""
    kappa = k + 2
    if kappa % 2:
        raise RepringError("kappa = k + 2 must be even")
    h = kappa // 2

    def red(sym):
        if sym == ONE:
            sym = ("a", 0)
        r = _reflect(sym[1], (-h, h))
        return {} if r is None else {("a", r[0]): r[1]}

    basis = [("a", i) for i in range(-h + 1, h)]
    mod = QuotientModule("R_T", "a^{+-kappa/2}, a^{i+kappa/2}+a^{-i+kappa/2}, a^{j-kappa/2}+a^{-j-kappa/2}",
                         basis, red)
    mod.actions["a+a^-1"] = mod.action_matrix(CharacterElement.make("R_T", {("a", 1): 1, ("a", -1): 1}))
    return mod


def _su2_on_torus(n: int) -> CharacterElement:
    return CharacterElement.make("R_T", {("a", n - 1 - 2 * i): 1 for i in range(n)})


def su2_verlinde_nimrep(k: int, datum: ModularDatum | None = None) -> tuple[QuotientModule, Nimrep, list[int] | None]:
    """The Verlinde presentation as a nimrep (sigma_{lam+1} acting by its restriction to T),
    with the boundary bijection onto the fusion ring when one exists."""
    mod = su2_verlinde_presentation(k)
    d = datum or su_datum(2, k)
    mats = np.array([mod.action_matrix(_su2_on_torus(p.dynkin[0] + 1)) for p in d.primaries])
    N = Nimrep([f"a^{b[1]}" for b in mod.basis], mats, name=f"su2verl k={k}")
    V = Nimrep(list(d.primaries), np.asarray(d.fusion_tensor()), name="verlinde")
    return mod, N, find_isomorphism(N, V)


def su2_restriction_to_o2(n: int) -> CharacterElement:
    """Restriction of sigma_n to O(2): sigma_1 -> 1, sigma_2 -> kappa_1, then the Chebyshev recursion."""
    prev, cur = CharacterElement.make("R_O2", {}), CharacterElement.one("R_O2")
    k1 = CharacterElement.sym("R_O2", "k", 1)
    for _ in range(n - 1):
        prev, cur = cur, k1 * cur - prev
    return cur


def _o2_reflector(wall: int, zero_wall: bool):
    def red(sym):
        if sym in (ONE, DELTA):
            return {sym: 1}
        m = abs(sym[1])
        sign = 1
        while True:
            if zero_wall and m == wall:
                return {}
            if m > wall:
                m, sign = abs(2 * wall - m), -sign
                continue
            break
        if m == 0:
            return {ONE: sign, DELTA: sign}
        return {("k", m): sign}
    return red


def so3_nimrep(k: int, datum: ModularDatum | None = None) -> tuple[QuotientModule, Nimrep]:
    """R_O2 / span{kappa_{kappa/2}, kappa_{j+kappa/2} + kappa_{-j+kappa/2}} on the basis
    {1, delta, kappa_1, ..., kappa_{k/2}}; sigma_{lam+1} acts by its restriction to O(2)."""
    if k % 2 or k < 2:
        raise RepringError("k must be even and positive")
    kappa = k + 2
    h = kappa // 2
    basis = [ONE, DELTA] + [("k", i) for i in range(1, h)]
    mod = QuotientModule("R_O2", "kappa_{kappa/2}, kappa_{j+kappa/2}+kappa_{-j+kappa/2}", basis,
                         _o2_reflector(h, zero_wall=True))
    mod.actions["kappa_1"] = mod.action_matrix(CharacterElement.sym("R_O2", "k", 1))
    d = datum or su_datum(2, k)
    mats = np.array([mod.action_matrix(su2_restriction_to_o2(p.dynkin[0] + 1)) for p in d.primaries])
    names = ["1", "delta"] + [f"kappa_{i}" for i in range(1, h)]
    return mod, Nimrep(names, mats, name=f"so3nim k={k}")


@dataclass
class NeutralSystem:
    module: QuotientModule
    embedding: np.ndarray  # rows: neutral basis, columns: so3_nimrep basis
    intertwines: bool


def so3_neutral(k: int) -> NeutralSystem:
    """R_O2 / span{kbar_{kappa/4+i} + kbar_{kappa/4-i}}, i = 1/2, 3/2, ..., on the basis
    [delta], [kbar_0], ..., [kbar_{k/4}], with the injection [delta] -> [delta], [kbar_i] -> [kappa_{2i}]."""
    if k % 4:
        raise RepringError("k must be divisible by 4")
    # kbar_m = -kbar_{k/2+1-m}: reflection about (k/2+1)/2, a half-integer, so no index is killed
    top = k // 2 + 1

    def red(sym):
        if sym in (ONE, DELTA):
            return {sym: 1}
        m = abs(sym[1])
        sign = 1
        while 2 * m > top:
            m, sign = abs(top - m), -sign
        if m == 0:
            return {ONE: sign, DELTA: sign}
        return {("k", m): sign}

    inner_basis = [ONE, DELTA] + [("k", i) for i in range(1, k // 4 + 1)]
    mod = QuotientModule("R_O2", "kbar_{kappa/4+i}+kbar_{kappa/4-i}", inner_basis, red)
    big, _ = so3_nimrep(k)
    # the displayed basis [delta], [kbar_0] = 1 + delta, [kbar_1], ...
    shown = [CharacterElement.make("R_O2", {DELTA: 1})] + \
        [CharacterElement.make("R_O2", {("k", i): 1}) for i in range(0, k // 4 + 1)]
    emb = np.array([big.reduce(_double(x)) for x in shown], dtype=np.int64)
    ok = True
    for i in range(0, k // 2 + 2):
        kb = CharacterElement.make("R_O2", {("k", i): 1})
        for x in shown:
            lhs = big.reduce(_double(CharacterElement.make("R_O2", _vec_to_dict(mod, mod.reduce(kb * x)))))
            rhs = big.reduce(_double(kb) * _double(x))
            if not np.array_equal(lhs, rhs):
                ok = False
    mod.labels = ["delta"] + [f"kbar_{i}" for i in range(0, k // 4 + 1)]
    return NeutralSystem(mod, emb, ok)


def _vec_to_dict(mod: QuotientModule, v: np.ndarray) -> dict:
    return {b: int(c) for b, c in zip(mod.basis, v) if c}


def _double(x: CharacterElement) -> CharacterElement:
    return CharacterElement.make(x.ring, {(("k", 2 * s[1]) if s[0] == "k" else s): c for s, c in x.coeffs})


# ---------------------------------------------------------------------------
# SU(3) charge conjugation

@lru_cache(maxsize=None)
def _su3_res(a: int, b: int) -> CharacterElement:
    """Restriction of the SU(3) irrep (a, b) to SO(3) in R_SU2, from 3 -> sigma_3 and
    (1,0)(a,b) = (a+1,b) + (a-1,b+1) + (a,b-1), (0,1)(0,b) = (0,b+1) + (1,b-1)."""
    if a < 0 or b < 0:
        return CharacterElement.make("R_SU2", {})
    if a == 0 and b == 0:
        return CharacterElement.sym("R_SU2", "s", 1)
    s3 = CharacterElement.sym("R_SU2", "s", 3)
    if a >= 1:
        return s3 * _su3_res(a - 1, b) - _su3_res(a - 2, b + 1) - _su3_res(a - 1, b - 1)
    return s3 * _su3_res(0, b - 1) - _su3_res(1, b - 2)


def su3_restriction(a: int, b: int) -> CharacterElement:
    return _su3_res(a, b)


def su3_cc_nimrep(k: int, datum: ModularDatum | None = None) -> tuple[QuotientModule, Nimrep]:
    """R_SO3/(sigma_kappa, sigma_{2i+kappa} + sigma_{kappa-2i}) for kappa = k+3 odd, and the
    same quotient of the even-index (spinor) part for kappa even; SU(3) acts by restriction."""
    kappa = k + 3
    parity = kappa % 2  # odd kappa: odd-dimensional sigma; even kappa: even-dimensional
    basis = [("s", l) for l in range(1, kappa) if l % 2 == (1 if parity else 0)]

    def red(sym):
        if sym == ONE:
            sym = ("s", 1)
        r = _reflect(sym[1], (0, kappa))
        if r is None:
            return {}
        if r[0] % 2 != (1 if parity else 0):
            raise RepringError(f"sigma_{sym[1]} lies outside the ambient parity")
        return {("s", r[0]): r[1]}

    mod = QuotientModule("R_SO3" if parity else "R_SU2",
                         "sigma_kappa, sigma_{2i+kappa}+sigma_{kappa-2i}", basis, red)
    d = datum or su_datum(3, k)
    mats = np.array([mod.action_matrix(_su3_res(*p.dynkin)) for p in d.primaries])
    mod.actions["sigma_(1,0)"] = mod.action_matrix(_su3_res(1, 0))
    return mod, Nimrep([f"sigma_{b[1]}" for b in basis], mats, name=f"su3cc k={k}")


def self_conjugate_count(k: int) -> int:
    return k // 2 + 1


def charge_conjugation_invariant(d: ModularDatum) -> np.ndarray:
    return permutation_matrix(list(d.conj))
