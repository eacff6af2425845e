"""Modular invariants: verification, simple-current invariants and exhaustive enumeration.

A modular invariant is a nonnegative integer matrix Z with ZS = SZ, ZT = TZ and
Z[vac, vac] = 1.  Since S = W / sqrt(s2) with W integral, ZS = SZ is checked as
ZW = WZ in Z[zeta_N] with no surds involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .linalg import rational_nullspace
from .modular_data import ModularDatum, SimpleCurrent

__all__ = [
    "ModularInvariant", "InvariantReport", "SearchCapExceeded", "verify_invariant",
    "simple_current_invariant", "enumerate_invariants", "twist_by_automorphism",
    "entry_bounds", "commutant_basis", "permutation_matrix", "is_automorphism",
]


class SearchCapExceeded(RuntimeError):
    """The integer-point search hit its node cap; ``partial`` holds what was found."""

    def __init__(self, msg: str, partial: list["ModularInvariant"]):
        super().__init__(msg)
        self.partial = partial


@dataclass(frozen=True)
class InvariantReport:
    square: bool
    nonnegative: bool
    vacuum: bool
    commutes_s: bool
    commutes_t: bool

    @property
    def ok(self) -> bool:
        return self.square and self.nonnegative and self.vacuum and self.commutes_s and self.commutes_t

    def failures(self) -> list[str]:
        return [name for name in ("square", "nonnegative", "vacuum", "commutes_s", "commutes_t")
                if not getattr(self, name)]


@dataclass
class ModularInvariant:
    Z: np.ndarray
    name: str = ""
    tags: dict = field(default_factory=dict)

    def exponents(self) -> dict[int, int]:
        """Exponent multiset: index mu with multiplicity Z[mu, mu]."""
        return {i: int(x) for i, x in enumerate(np.diag(self.Z)) if x}

    @property
    def is_automorphism(self) -> bool:
        return is_automorphism(self.Z)

    def key(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.Z.flat)

    def to_json(self, d: ModularDatum | None = None) -> dict:
        out = {"name": self.name, "matrix": self.Z.tolist(),
               "tags": {"automorphism": self.is_automorphism,
                        "exponents": [int(x) for x in np.diag(self.Z)]}}
        if d is not None:
            out["primaries"] = [str(p) for p in d.primaries]
        return out


def is_automorphism(Z: np.ndarray) -> bool:
    Z = np.asarray(Z)
    return bool(np.all((Z == 0) | (Z == 1)) and np.all(Z.sum(axis=0) == 1) and np.all(Z.sum(axis=1) == 1))


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """P[i, perm[i]] = 1."""
    P = len(perm)
    M = np.zeros((P, P), dtype=np.int64)
    M[np.arange(P), list(perm)] = 1
    return M


def _commutes_w(d: ModularDatum, Z: np.ndarray) -> bool:
    W = d.W.data
    Zo = Z.astype(W.dtype) if W.dtype != object else Z.astype(object)
    left = np.tensordot(Zo, W, axes=(1, 0))          # (Z W)[i, j, :]
    right = np.einsum("imf,mj->ijf", W, Zo) if W.dtype != object else \
        np.tensordot(W, Zo, axes=(1, 0)).transpose(0, 2, 1)
    return bool(np.array_equal(left, right))


def verify_invariant(d: ModularDatum, Z) -> InvariantReport:
    """Check Definition-1 style conditions in exact arithmetic."""
    Z = np.asarray(Z)
    P = d.size
    if Z.shape != (P, P):
        raise ValueError(f"matrix shape {Z.shape} does not match {P} primaries")
    Z = Z.astype(np.int64)
    nonneg = bool(np.all(Z >= 0))
    vac = bool(Z[0, 0] == 1)
    t = d.t
    rows, cols = np.nonzero(Z)
    ct = all(t[i] == t[j] for i, j in zip(rows, cols))
    cs = _commutes_w(d, Z)
    return InvariantReport(True, nonneg, vac, cs, ct)


def simple_current_invariant(d: ModularDatum, j: SimpleCurrent | int) -> ModularInvariant | None:
    """Z_{lam, mu} = sum_{l=1}^{n} delta^Z(Q_j(lam) - l h_j) delta_{mu, j^l lam}.

    Returns None unless n h_j is an integer, i.e. T_jj / T_11 has order dividing
    the order n of j.
    """
    if isinstance(j, (int, np.integer)):
        j = _current_by_index(d, int(j))
    n = j.order
    if (n * j.h).denominator != 1:
        return None
    P = d.size
    Z = np.zeros((P, P), dtype=np.int64)
    powers = [j.power(l) for l in range(1, n + 1)]
    for lam in range(P):
        for l, perm in enumerate(powers, start=1):
            if (j.Q[lam] - l * j.h).denominator == 1:
                Z[lam, perm[lam]] += 1
    ratio_order = (j.h % 1).denominator
    inv = ModularInvariant(Z, name=f"Z<{d.primaries[j.index]}>",
                           tags={"automorphism_predicted": ratio_order == n})
    return inv


def _current_by_index(d: ModularDatum, idx: int) -> SimpleCurrent:
    for j in d.simple_currents:
        if j.index == idx:
            return j
    raise ValueError(f"primary {idx} is not a listed simple current")


def twist_by_automorphism(d: ModularDatum, Z, omega: Sequence[int]) -> ModularInvariant:
    """(Z^omega)_{lam, mu} = Z_{lam, omega(mu)}; omega must itself be an automorphism invariant."""
    if not verify_invariant(d, permutation_matrix(omega)).ok:
        raise ValueError("omega is not an automorphism invariant")
    Zm = Z.Z if isinstance(Z, ModularInvariant) else np.asarray(Z)
    out = Zm[:, list(omega)].copy()
    rep = verify_invariant(d, out)
    if not rep.ok:
        raise AssertionError(f"twisted matrix fails {rep.failures()}")
    return ModularInvariant(out)


# ---------------------------------------------------------------------------
# enumeration

def entry_bounds(d: ModularDatum) -> np.ndarray:
    """B[lam, mu] = floor(d_lam d_mu), certified.

    Products are evaluated in floating point and recomputed exactly whenever
    they sit within 1e-6 of an integer.
    """
    W = d.W
    col = W.take(cols=[0]).to_complex()[:, 0].real
    qd = col / col[0]
    prod = np.outer(qd, qd)
    B = np.floor(prod).astype(np.int64)
    near = np.abs(prod - np.rint(prod)) < 1e-6
    if np.any(near):
        dims = d.quantum_dims()
        for i, j in zip(*np.nonzero(near)):
            B[i, j] = (dims[i] * dims[j]).floor()
    return B


def _t_pairs(d: ModularDatum) -> list[tuple[int, int]]:
    groups: dict[Fraction, list[int]] = {}
    for i, x in enumerate(d.t):
        groups.setdefault(x, []).append(i)
    pairs = [(i, j) for g in groups.values() for i in g for j in g]
    pairs.sort()
    return pairs


def commutant_basis(d: ModularDatum) -> tuple[list[tuple[int, int]], list[list[Fraction]], list[int]]:
    """Rational basis of {Z : ZT = TZ, ZW = WZ} in coordinates on the T-allowed entries.

    Returns (pairs, basis, free) in the format of :func:`rational_nullspace`.
    """
    pairs = _t_pairs(d)
    W = d.W.data
    P, _, f = W.shape
    U = len(pairs)
    # equation (a, b, comp): sum_m Z[a,m] W[m,b] - W[a,m] Z[m,b] = 0
    A = np.zeros((P, P, f, U), dtype=object if W.dtype == object else np.int64)
    for u, (i, j) in enumerate(pairs):
        A[i, :, :, u] += W[j, :, :]
        A[:, j, :, u] -= W[:, i, :]
    A = A.reshape(P * P * f, U)
    basis, free = rational_nullspace(A)
    return pairs, basis, free


def enumerate_invariants(d: ModularDatum, bounds: np.ndarray | None = None, cap_size: int = 40,
                         node_cap: int = 5_000_000) -> list[ModularInvariant]:
    """All modular invariants with Z[lam, mu] <= bounds[lam, mu] (default floor(d_lam d_mu)).

    The commutant is solved exactly; integer points are found by depth-first
    search over the free coordinates, pruning with interval bounds on every
    determined entry.  Output is sorted lexicographically by flattened matrix.
    """
    P = d.size
    if P > cap_size:
        raise SearchCapExceeded(f"{P} primaries exceed the cap {cap_size}", [])
    B = entry_bounds(d) if bounds is None else np.asarray(bounds)
    pairs, basis, free = commutant_basis(d)
    U = len(pairs)
    nb = len(basis)
    if nb == 0:
        return []
    # coordinates: Z_u = sum_i c_i basis[i][u], with c_i = Z at free[i]
    den = 1
    for v in basis:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    Cm = np.array([[int(x * den) for x in v] for v in basis], dtype=object).T  # (U, nb)
    if np.max(np.abs(Cm.astype(float))) < 2 ** 40:
        Cm = Cm.astype(np.int64)
    ub = np.array([int(B[i, j]) for (i, j) in pairs], dtype=np.int64)
    vac_u = pairs.index((0, 0))
    var_ub = ub[free].copy()
    # vacuum constraint on a free coordinate pins it
    lo = np.zeros(nb, dtype=np.int64)
    hi = var_ub.copy()
    if vac_u in free:
        fi = free.index(vac_u)
        lo[fi] = hi[fi] = 1
    order = _variable_order(Cm, free, lo, hi)
    pos = np.where(Cm > 0, Cm, 0).astype(np.int64) if Cm.dtype != object else None
    neg = np.where(Cm < 0, Cm, 0).astype(np.int64) if Cm.dtype != object else None
    if pos is None:
        raise SearchCapExceeded("commutant coefficients too large for the integer search", [])
    found: list[ModularInvariant] = []
    nodes = 0
    ubd = ub * den
    # suffix maxima/minima of the unassigned contribution for each entry
    suffix_max = np.zeros((nb + 1, U), dtype=np.int64)
    suffix_min = np.zeros((nb + 1, U), dtype=np.int64)
    for t in range(nb - 1, -1, -1):
        v = order[t]
        suffix_max[t] = suffix_max[t + 1] + pos[:, v] * hi[v] + neg[:, v] * lo[v]
        suffix_min[t] = suffix_min[t + 1] + pos[:, v] * lo[v] + neg[:, v] * hi[v]

    def emit(vec: np.ndarray):
        if np.any(vec % den):
            return
        z = vec // den
        if z[vac_u] != 1:
            return
        Z = np.zeros((P, P), dtype=np.int64)
        for u, (i, j) in enumerate(pairs):
            Z[i, j] = z[u]
        found.append(ModularInvariant(Z))

    def dfs(t: int, partial: np.ndarray):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchCapExceeded(f"node cap {node_cap} exceeded", sorted(found, key=ModularInvariant.key))
        if t == nb:
            emit(partial)
            return
        v = order[t]
        col = Cm[:, v]
        for c in range(int(lo[v]), int(hi[v]) + 1):
            cur = partial + col * c
            if np.any(cur + suffix_max[t + 1] < 0) or np.any(cur + suffix_min[t + 1] > ubd):
                continue
            dfs(t + 1, cur)

    dfs(0, np.zeros(U, dtype=np.int64))
    out = []
    for inv in sorted(found, key=ModularInvariant.key):
        rep = verify_invariant(d, inv.Z)
        if not rep.ok:
            raise AssertionError(f"enumerated matrix fails {rep.failures()}")
        out.append(inv)
    return out


def _variable_order(Cm: np.ndarray, free: list[int], lo: np.ndarray, hi: np.ndarray) -> list[int]:
    """Pinned and narrow variables first, then by how many entries each one touches."""
    nb = Cm.shape[1]
    touch = [(int(np.count_nonzero(Cm[:, v])), v) for v in range(nb)]
    return [v for _, v in sorted(touch, key=lambda tv: (hi[tv[1]] - lo[tv[1]], -tv[0], tv[1]))]
