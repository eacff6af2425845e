"""D-brane charge groups as the universal solution of dim(lam) q_x = sum_y N_{lam,x}^y q_y (mod M)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Sequence

import numpy as np
from sympy import factorint

from .linalg import smith_normal_form
from .modular_data import ModularDatum, dims_and_ideal, su_datum, weyl_dimension
from .nimreps import Nimrep, NimrepError, case_a, theorem4_nimrep

__all__ = [
    "AbelianGroup", "ChargeResult", "charge_group", "m_k_su", "verlinde_charge_gcd",
    "chgpsc_predict", "chgpsc_validation", "ChgpscRecord", "forget_equivariance_assignment",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form d_1 | d_2 | ...; 0 is a free Z."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", _canonical(self.invariant_factors))

    @classmethod
    def of(cls, *orders: int) -> "AbelianGroup":
        return cls(tuple(orders))

    @property
    def order(self) -> int | None:
        if 0 in self.invariant_factors:
            return None
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join("Z" if d == 0 else f"Z_{d}" for d in self.invariant_factors)


def _canonical(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of cyclic groups Z_{orders[i]}."""
    free = sum(1 for x in orders if x == 0)
    tors = [abs(int(x)) for x in orders if x not in (0, 1, -1)]
    primes: dict[int, list[int]] = {}
    for x in tors:
        for p, e in factorint(x).items():
            primes.setdefault(p, []).append(p ** e)
    m = max((len(v) for v in primes.values()), default=0)
    inv = [1] * m
    for p, pows in primes.items():
        pows.sort(reverse=True)
        for i, q in enumerate(pows):
            inv[m - 1 - i] *= q
    return tuple(x for x in inv if x != 1) + (0,) * free


@dataclass
class ChargeResult:
    group: AbelianGroup
    generators: list[list[int]]  # one charge assignment q_x per invariant factor
    relation_rank: int
    meta: dict = field(default_factory=dict)


def charge_group(d: ModularDatum, N: Nimrep, dims: Sequence[int] | None = None,
                 all_weights: bool = False) -> ChargeResult:
    """Z^B modulo the rows of dim(lam) I - N_lam, lam over ring generators (or all primaries).

    Invariant factors come from the Smith normal form; generator i assigns
    q_x = V[x, i] mod d_i where U R V = diag.
    """
    dims = list(d.dims if dims is None else dims)
    if dims is None:
        raise ValueError("classical dimensions are required")
    M = np.asarray(N.mats)
    B = M.shape[1]
    lams = range(d.size) if all_weights else (d.fundamental_indices() or range(d.size))
    rows = []
    for lam in lams:
        R = dims[lam] * np.eye(B, dtype=np.int64) - M[lam]
        rows.extend(R.tolist())
    if not rows:
        rows = [[0] * B]
    diag, U, V = smith_normal_form(rows)
    diag = diag + [0] * (B - len(diag))
    factors = []
    gens = []
    for i, di in enumerate(diag):
        if abs(di) == 1:
            continue
        factors.append(abs(di))
        col = [V[x][i] for x in range(B)]
        gens.append([c % abs(di) for c in col] if di else col)
    rank = sum(1 for x in diag if x)
    # order generators to follow the canonical factor list when it is already a chain
    return ChargeResult(AbelianGroup(tuple(factors)), gens, rank,
                        meta={"raw_factors": factors})


def m_k_su(n: int, k: int) -> int:
    """kappa / gcd(kappa, lcm(1, ..., n-1))."""
    kappa = n + k
    y = 1
    for i in range(1, n):
        y = y * i // gcd(y, i)
    return kappa // gcd(kappa, y)


def verlinde_charge_gcd(n: int, k: int, depth: int | None = None) -> int:
    """gcd of dimensions over a generating family of the fusion ideal."""
    _, gens = dims_and_ideal(n, k, depth)
    g = reduce(gcd, (abs(x) for _, x in gens), 0)
    return g


def chgpsc_predict(n: int, k: int, dd: int, M: int | None = None) -> AbelianGroup:
    """Z_M + sum_{p | gcd(d,M)} sum_{i=1}^{delta} (p^i - p^{i-1}) Z_{p^{min(mu, nu-i+1)}}.

    p^nu || n, p^delta || d, p^mu || M; M defaults to m_k_su(n, k).
    """
    case_a(n, k, dd)  # raises outside the existence range
    M = m_k_su(n, k) if M is None else M
    orders = [M]
    for p in factorint(gcd(dd, M)):
        nu = _val(n, p)
        delta = _val(dd, p)
        mu = _val(M, p)
        for i in range(1, delta + 1):
            orders += [p ** min(mu, nu - i + 1)] * (p ** i - p ** (i - 1))
    return AbelianGroup(tuple(orders))


def _val(x: int, p: int) -> int:
    v = 0
    while x and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass
class ChgpscRecord:
    n: int
    k: int
    d: int
    snf: AbelianGroup
    predicted: AbelianGroup
    M: int
    M_orbit: int

    @property
    def match(self) -> bool:
        return self.snf == self.predicted

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "snf": list(self.snf.invariant_factors),
                "predicted": list(self.predicted.invariant_factors), "match": self.match,
                "M": self.M, "M_orbit": self.M_orbit,
                "predicted_with_M_orbit": list(chgpsc_predict(self.n, self.k, self.d, self.M_orbit)
                                               .invariant_factors)}


def chgpsc_validation(n_max: int = 4, k_max: int = 8, include_trivial_d: bool = False) -> list[ChgpscRecord]:
    """SNF of every Case-A simple-current nimrep against the closed-form prediction.

    ``M_orbit`` = gcd(M, dim(J^{n'} lam) - dim(lam) over all lam) is recorded as
    a diagnostic: it is the largest modulus compatible with the orbit relations.
    """
    out = []
    for n in range(2, n_max + 1):
        for k in range(1, k_max + 1):
            d = None
            for dd in range(1 if include_trivial_d else 2, n + 1):
                if n % dd:
                    continue
                try:
                    if not case_a(n, k, dd):
                        continue
                except NimrepError:
                    continue
                d = d or su_datum(n, k)
                N = theorem4_nimrep(n, k, dd, d)
                snf = charge_group(d, N).group
                M = m_k_su(n, k)
                J = d.simple_currents[(n // dd) % n]
                Mo = reduce(gcd, (d.dims[J.perm[l]] - d.dims[l] for l in range(d.size)), M)
                out.append(ChgpscRecord(n, k, dd, snf, chgpsc_predict(n, k, dd), M, abs(Mo)))
    return out


def forget_equivariance_assignment(n: int, k: int) -> dict[tuple[int, ...], int]:
    """q_lam = dim(lam) mod M_k(SU(n)) on Dynkin labels."""
    M = m_k_su(n, k)
    dims, _ = dims_and_ideal(n, k, depth=0)
    return {w.dynkin: dims[w] % M for w in dims}
