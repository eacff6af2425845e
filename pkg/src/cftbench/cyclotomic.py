"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1) reduced modulo
the N-th cyclotomic polynomial, with integer numerators over one positive
common denominator.  The representation is canonical for a fixed conductor, so
equality is plain tuple comparison after lifting to a common conductor.

:class:`CycMatrix` is the bulk counterpart used for S-matrices and friends: an
integer array of shape ``(rows, cols, phi(N))`` holding elements of Z[zeta_N].
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import mpmath
import numpy as np
from sympy import factorint
from sympy.functions.combinatorial.numbers import jacobi_symbol
from sympy.ntheory import isprime, primitive_root

__all__ = [
    "CyclotomicError", "CycZeroDivisionError", "ConductorOverflow",
    "DEFAULT_CONDUCTOR_CAP", "CycNumber", "CycMatrix", "root_of_unity", "arith",
    "as_rational", "cyclotomic_poly", "euler_phi", "sqrt_integer", "lcm",
]

DEFAULT_CONDUCTOR_CAP = 20000


class CyclotomicError(ArithmeticError):
    pass


class CycZeroDivisionError(ZeroDivisionError, CyclotomicError):
    """Division by the zero element of a cyclotomic field."""


class ConductorOverflow(CyclotomicError):
    """Raised when an operation would exceed the configured conductor cap."""


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def _mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # b monic up to sign, division exact
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] // b[-1]
        q[i - db] = c
        if c:
            for j, y in enumerate(b):
                a[i - db + j] -= c * y
    if any(a[:db]):
        raise CyclotomicError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of Phi_N, by Moebius-factored division of x^N - 1."""
    if N < 1:
        raise ValueError("conductor must be positive")
    num, den = [1], [1]
    for d in _divisors(N):
        mu = _mobius(N // d)
        if mu == 0:
            continue
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _polymul(num, f)
        else:
            den = _polymul(den, f)
    return tuple(_polydiv_exact(num, den))


def euler_phi(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _reduction_table(N: int) -> np.ndarray:
    """Row e holds the reduced coefficients of x^e for 0 <= e < 2N."""
    phi_poly = cyclotomic_poly(N)
    f = len(phi_poly) - 1
    rows = np.zeros((2 * N, f), dtype=np.int64)
    cur = [0] * f
    if f:
        cur[0] = 1
    for e in range(2 * N):
        if e < f:
            cur = [0] * f
            cur[e] = 1
        elif e > 0:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(f):
                    cur[j] -= top * phi_poly[j]
        rows[e] = cur
    if f == 0:  # never happens, Phi_N has degree >= 1
        raise CyclotomicError("degenerate conductor")
    return rows


def _reduce_exponent_vector(N: int, vec: np.ndarray) -> np.ndarray:
    """Reduce a coefficient vector indexed by exponent (length <= 2N) onto the power basis."""
    table = _reduction_table(N)
    if vec.dtype == object:
        return vec.dot(table[: len(vec)].astype(object))
    return vec @ table[: len(vec)]


class CycNumber:
    """An element sum_k (num[k]/den) zeta_N^k of Q(zeta_N)."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num: Iterable[int], den: int = 1):
        num = tuple(int(x) for x in num)
        if len(num) != euler_phi(N):
            raise ValueError("coefficient vector has wrong length for conductor")
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
        self.N = N
        self.num = num
        self.den = den

    # construction
    @classmethod
    def from_exponents(cls, N: int, coeffs: dict[int, int | Fraction]) -> "CycNumber":
        """Build from {exponent: rational coefficient} with arbitrary integer exponents."""
        den = 1
        for c in coeffs.values():
            den = lcm(den, Fraction(c).denominator)
        vec = [0] * (2 * N)
        for e, c in coeffs.items():
            c = Fraction(c)
            vec[e % N] += c.numerator * (den // c.denominator)
        red = _reduce_exponent_vector(N, np.array(vec, dtype=object))
        return cls(N, red, den)

    @classmethod
    def rational(cls, q: int | Fraction, N: int = 1) -> "CycNumber":
        q = Fraction(q)
        num = [0] * euler_phi(N)
        num[0] = q.numerator
        return cls(N, num, q.denominator)

    @classmethod
    def _coerce(cls, x) -> "CycNumber":
        if isinstance(x, CycNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNumber")

    # conductor handling
    def lift(self, M: int, cap: int = DEFAULT_CONDUCTOR_CAP) -> "CycNumber":
        if M == self.N:
            return self
        if M % self.N:
            raise CyclotomicError(f"conductor {self.N} does not divide {M}")
        if M > cap:
            raise ConductorOverflow(f"conductor {M} exceeds cap {cap}")
        step = M // self.N
        vec = [0] * M
        for k, c in enumerate(self.num):
            vec[k * step] += c
        return CycNumber(M, _reduce_exponent_vector(M, np.array(vec, dtype=object)), self.den)

    def _common(self, other: "CycNumber") -> tuple["CycNumber", "CycNumber"]:
        M = lcm(self.N, other.N)
        return self.lift(M), other.lift(M)

    # arithmetic
    def __add__(self, other):
        try:
            other = CycNumber._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        d = lcm(a.den, b.den)
        fa, fb = d // a.den, d // b.den
        return CycNumber(a.N, (x * fa + y * fb for x, y in zip(a.num, b.num)), d)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.N, (-x for x in self.num), self.den)

    def __sub__(self, other):
        try:
            other = CycNumber._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CycNumber._coerce(other) - self

    def __mul__(self, other):
        try:
            other = CycNumber._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        conv = _polymul(a.num, b.num)
        red = _reduce_exponent_vector(a.N, np.array(conv, dtype=object))
        return CycNumber(a.N, red, a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return (CycNumber.rational(1, self.N) / self) ** (-e)
        out = CycNumber.rational(1, self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise CycZeroDivisionError("division by zero in Q(zeta_N)")
        from sympy import QQ
        from sympy.polys.matrices import DomainMatrix

        f = len(self.num)
        cols = []
        for e in range(f):
            vec = [0] * (2 * self.N)
            for k, c in enumerate(self.num):
                vec[k + e] += c
            cols.append(list(_reduce_exponent_vector(self.N, np.array(vec, dtype=object))))
        M = DomainMatrix([[QQ(int(cols[j][i])) for j in range(f)] for i in range(f)], (f, f), QQ)
        rhs = DomainMatrix([[QQ(1 if i == 0 else 0)] for i in range(f)], (f, 1), QQ)
        sol = M.lu_solve(rhs).to_list_flat()
        fr = [Fraction(int(x.numerator), int(x.denominator)) for x in sol]
        d = lcm(*(x.denominator for x in fr))
        return CycNumber(self.N, (x.numerator * (d // x.denominator) * self.den for x in fr), d)

    def __truediv__(self, other):
        try:
            other = CycNumber._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycNumber._coerce(other) / self

    def conj(self) -> "CycNumber":
        vec = [0] * self.N
        for k, c in enumerate(self.num):
            vec[(-k) % self.N] += c
        return CycNumber(self.N, _reduce_exponent_vector(self.N, np.array(vec, dtype=object)), self.den)

    def galois(self, a: int) -> "CycNumber":
        """Apply zeta -> zeta^a for a coprime to N."""
        if gcd(a, self.N) != 1:
            raise ValueError("Galois exponent must be a unit")
        vec = [0] * self.N
        for k, c in enumerate(self.num):
            vec[(a * k) % self.N] += c
        return CycNumber(self.N, _reduce_exponent_vector(self.N, np.array(vec, dtype=object)), self.den)

    # predicates
    def is_zero(self) -> bool:
        return not any(self.num)

    def as_rational(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def is_real(self) -> bool:
        return self == self.conj()

    def minimal_conductor(self) -> int:
        """Smallest M | N with the element in Q(zeta_M): fixed by zeta -> zeta^a, a = 1 mod M."""
        units = [a for a in range(1, self.N) if gcd(a, self.N) == 1]
        for M in _divisors(self.N):
            if all(self.galois(a) == self for a in units if a % M == 1 % M):
                return M
        return self.N

    def __eq__(self, other):
        try:
            other = CycNumber._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        q = self.as_rational()
        if q is not None:
            return hash(q)
        return hash(self.minimal_conductor())

    # numerics (certificates only)
    def _interval(self, dps: int):
        iv = mpmath.iv
        saved = iv.prec
        iv.prec = int(dps * 3.33) + 10
        try:
            re = iv.mpf(0)
            im = iv.mpf(0)
            for k, c in enumerate(self.num):
                if c:
                    ang = 2 * iv.pi * k / self.N
                    re += c * iv.cos(ang)
                    im += c * iv.sin(ang)
            return re / self.den, im / self.den
        finally:
            iv.prec = saved

    def certified_sign(self) -> int:
        """Sign of a real element, certified by interval arithmetic."""
        if self.is_zero():
            return 0
        if not self.is_real():
            raise CyclotomicError("sign requested for a non-real number")
        dps = 30
        while dps < 4000:
            re, _ = self._interval(dps)
            if re.a > 0:
                return 1
            if re.b < 0:
                return -1
            dps *= 2
        raise CyclotomicError("sign certificate failed")

    def floor(self) -> int:
        """Floor of a real element; exact for rationals, certified otherwise."""
        q = self.as_rational()
        if q is not None:
            return q.numerator // q.denominator
        if not self.is_real():
            raise CyclotomicError("floor requested for a non-real number")
        dps = 30
        while dps < 4000:
            re, _ = self._interval(dps)
            lo, hi = int(mpmath.floor(re.a)), int(mpmath.floor(re.b))
            if lo == hi:
                return lo
            dps *= 2
        raise CyclotomicError("floor certificate failed")

    def to_complex(self) -> complex:
        """Floating-point value, for display and debugging only."""
        z = np.exp(2j * np.pi * np.arange(len(self.num)) / self.N)
        return complex(np.dot(np.array(self.num, dtype=float), z) / self.den)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.num):
            if c:
                coef = Fraction(c, self.den)
                terms.append(f"{coef}" if k == 0 else f"{coef}*z{self.N}^{k}")
        return " + ".join(terms) if terms else "0"


def root_of_unity(N: int, k: int) -> CycNumber:
    if N < 1:
        raise ValueError("N must be positive")
    return CycNumber.from_exponents(N, {k % N: 1})


def arith(a: CycNumber, b: CycNumber, op: str) -> CycNumber:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def as_rational(a: CycNumber) -> Fraction | None:
    return a.as_rational()


def _squarefree_split(m: int) -> tuple[int, int]:
    a, r = 1, 1
    for p, e in factorint(m).items():
        a *= p ** (e // 2)
        if e % 2:
            r *= p
    return a, r


def sqrt_integer(m: int) -> CycNumber:
    """The positive square root of a positive integer as a cyclotomic integer (Gauss sums)."""
    if m <= 0:
        raise ValueError("need a positive integer")
    a, r = _squarefree_split(m)
    out = CycNumber.rational(a)
    if r % 2 == 0:
        out = out * (root_of_unity(8, 1) + root_of_unity(8, 7))
        r //= 2
    if r > 1:
        g = CycNumber.from_exponents(r, {t: jacobi_symbol(t, r) for t in range(1, r) if gcd(t, r) == 1})
        if r % 4 == 3:
            g = g * root_of_unity(4, 3)
        out = out * g
    if out * out != CycNumber.rational(m):
        raise CyclotomicError("Gauss sum square root check failed")
    if out.certified_sign() < 0:
        out = -out
    return out


# ---------------------------------------------------------------------------
# Bulk matrices over Z[zeta_N]

_INT64_SAFE = 2 ** 62


class CycMatrix:
    """Matrix with entries in Z[zeta_N], stored as (rows, cols, phi(N)) integers."""

    __slots__ = ("N", "data")

    def __init__(self, N: int, data: np.ndarray):
        if data.ndim != 3 or data.shape[2] != euler_phi(N):
            raise ValueError("data must have shape (rows, cols, phi(N))")
        self.N = N
        self.data = data

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @classmethod
    def from_group_ring(cls, N: int, arr: np.ndarray) -> "CycMatrix":
        """Reduce an array of shape (r, c, m) of coefficients of x^e, e < m <= 2N."""
        r, c, m = arr.shape
        table = _reduction_table(N)[:m]
        if arr.dtype == object:
            red = arr.reshape(r * c, m).dot(table.astype(object))
        else:
            red = arr.reshape(r * c, m) @ table
        return cls(N, red.reshape(r, c, -1))

    @classmethod
    def from_int_matrix(cls, N: int, M: np.ndarray) -> "CycMatrix":
        M = np.asarray(M)
        data = np.zeros(M.shape + (euler_phi(N),), dtype=M.dtype if M.dtype == object else np.int64)
        data[..., 0] = M
        return cls(N, data)

    @classmethod
    def diagonal_roots(cls, N: int, exps: Sequence[int]) -> "CycMatrix":
        n = len(exps)
        gr = np.zeros((n, n, N), dtype=np.int64)
        for i, e in enumerate(exps):
            gr[i, i, e % N] = 1
        return cls.from_group_ring(N, gr)

    @classmethod
    def from_numbers(cls, rows: Sequence[Sequence[CycNumber]]) -> "CycMatrix":
        N = lcm(*(x.N for row in rows for x in row))
        f = euler_phi(N)
        r, c = len(rows), len(rows[0])
        data = np.zeros((r, c, f), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                y = x.lift(N)
                if y.den != 1:
                    raise ValueError("CycMatrix holds algebraic integers in the power basis only")
                data[i, j] = y.num
        return cls(N, _shrink(data))

    def entry(self, i: int, j: int) -> CycNumber:
        return CycNumber(self.N, self.data[i, j].tolist(), 1)

    def lift(self, M: int) -> "CycMatrix":
        if M == self.N:
            return self
        if M % self.N:
            raise CyclotomicError("conductor does not divide target")
        step = M // self.N
        r, c, f = self.data.shape
        gr = np.zeros((r, c, M), dtype=self.data.dtype)
        gr[:, :, : f * step : step] = self.data
        return CycMatrix.from_group_ring(M, gr)

    def _common(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix"]:
        M = lcm(self.N, other.N)
        return self.lift(M), other.lift(M)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._common(other)
        return CycMatrix(a.N, _shrink(_promote(a.data) + _promote(b.data)))

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._common(other)
        return CycMatrix(a.N, _shrink(_promote(a.data) - _promote(b.data)))

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.N, -self.data)

    def scale(self, k: int) -> "CycMatrix":
        return CycMatrix(self.N, _shrink(_promote(self.data) * k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        a, b = self._common(other)
        return a.shape == b.shape and bool(np.array_equal(a.data, b.data))

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.N, self.data.transpose(1, 0, 2).copy())

    @property
    def T(self) -> "CycMatrix":
        return self.transpose()

    def take(self, rows=None, cols=None) -> "CycMatrix":
        d = self.data
        if rows is not None:
            d = d[np.asarray(rows)]
        if cols is not None:
            d = d[:, np.asarray(cols)]
        return CycMatrix(self.N, d)

    def conj(self) -> "CycMatrix":
        f = self.data.shape[2]
        neg = (-np.arange(f)) % self.N
        table = _reduction_table(self.N)[neg]
        return CycMatrix(self.N, _matmul_last(self.data, table))

    def hadamard(self, other: "CycMatrix") -> "CycMatrix":
        """Entrywise product."""
        a, b = self._common(other)
        f = a.data.shape[2]
        A, B = _promote(a.data), _promote(b.data)
        bound = _absmax(A) * _absmax(B) * f
        dt = object if bound >= _INT64_SAFE else np.int64
        conv = np.zeros(a.data.shape[:2] + (2 * f - 1,), dtype=dt)
        A = A.astype(dt)
        B = B.astype(dt)
        for e in range(f):
            conv[:, :, e:e + f] += A[:, :, e:e + 1] * B
        return CycMatrix.from_group_ring(a.N, conv)

    def scale_columns_by_roots(self, exps: Sequence[int]) -> "CycMatrix":
        """Multiply column j by zeta_N^exps[j]."""
        r, c, f = self.data.shape
        N = self.N
        table = _reduction_table(N)
        out = np.empty_like(self.data)
        exps = np.mod(np.asarray(exps, dtype=np.int64), N)
        for e in np.unique(exps):
            cols = np.nonzero(exps == e)[0]
            # zeta^e * zeta^i reduces through row (i + e) of the table
            block = table[np.arange(f) + e]
            if self.data.dtype == object:
                block = block.astype(object)
            out[:, cols] = (self.data[:, cols].reshape(-1, f) @ block).reshape(r, len(cols), f)
        return CycMatrix(N, out)

    def multiplication_blocks(self) -> np.ndarray:
        """Array M[j, k, e, f]: coefficient f of zeta^e times entry (j, k)."""
        c, d, f = self.data.shape
        N = self.N
        gr = np.zeros((c, d, N), dtype=self.data.dtype)
        gr[:, :, :f] = self.data
        table = _reduction_table(N)[:N]
        if gr.dtype == object:
            table = table.astype(object)
        out = np.empty((c, d, f, f), dtype=gr.dtype)
        for e in range(f):
            out[:, :, e, :] = np.roll(gr, e, axis=2).reshape(c * d, N).dot(table).reshape(c, d, f)
        return out

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._common(other)
        r, c, f = a.data.shape
        c2, d, _ = b.data.shape
        if c != c2:
            raise ValueError("shape mismatch")
        M = b.multiplication_blocks()  # (c, d, e, f)
        bound = _absmax(a.data) * _absmax(M) * c * f
        dt = object if bound >= _INT64_SAFE else np.int64
        A2 = a.data.astype(dt).reshape(r, c * f)
        M2 = M.astype(dt).transpose(0, 2, 1, 3).reshape(c * f, d * f)
        return CycMatrix(a.N, _shrink(A2.dot(M2).reshape(r, d, f)))

    def rational_part(self) -> np.ndarray | None:
        """The integer matrix if every entry is rational, else None."""
        if np.any(self.data[:, :, 1:] != 0):
            return None
        return self.data[:, :, 0].copy()

    # multimodular images --------------------------------------------------
    def images_mod(self, p: int, g: int) -> np.ndarray:
        """Images under all embeddings zeta -> g^a mod p, a a unit mod N; shape (U, r, c)."""
        f = self.data.shape[2]
        units = [a for a in range(1, self.N + 1) if gcd(a, self.N) == 1] if self.N > 1 else [1]
        V = np.array([[pow(g, a * e, p) for a in units] for e in range(f)], dtype=np.int64)
        D = self.data
        if D.dtype == object:
            D = np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(D)
        else:
            D = np.mod(D, p)
        r, c, _ = D.shape
        img = np.mod(D.reshape(r * c, f) @ V, p)
        return img.T.reshape(len(units), r, c)

    def to_complex(self) -> np.ndarray:
        z = np.exp(2j * np.pi * np.arange(self.data.shape[2]) / self.N)
        return self.data.astype(float) @ z

    def __repr__(self):
        return f"CycMatrix(N={self.N}, shape={self.shape})"


def _absmax(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.max(np.abs(a)))


def _promote(a: np.ndarray) -> np.ndarray:
    if a.dtype != object and _absmax(a) >= 2 ** 61:
        return a.astype(object)
    return a


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        if a.size == 0 or _absmax(a) < _INT64_SAFE:
            return a.astype(np.int64)
    return a


def _matmul_last(data: np.ndarray, table: np.ndarray) -> np.ndarray:
    r, c, f = data.shape
    if data.dtype == object:
        return data.reshape(r * c, f).dot(table.astype(object)).reshape(r, c, -1)
    return (data.reshape(r * c, f) @ table).reshape(r, c, -1)


# multimodular certification -------------------------------------------------

@lru_cache(maxsize=None)
def split_primes(N: int, count: int, below: int = 2 ** 20) -> tuple[tuple[int, int], ...]:
    """Primes p = 1 mod N below ``below`` (largest first) with a primitive N-th root g."""
    out = []
    p = below - ((below - 1) % N)
    while len(out) < count and p > N:
        if p < below and isprime(p):
            r = primitive_root(p)
            g = pow(r, (p - 1) // N, p)
            out.append((p, g))
        p -= N
    if len(out) < count:
        raise CyclotomicError(f"not enough split primes for conductor {N}")
    return tuple(out)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Batched product of residues mod p < 2^20; exact through float64 BLAS."""
    if a.shape[-1] >= 2 ** 12:
        raise CyclotomicError("inner dimension too large for exact float products")
    # contiguous operands keep numpy on the BLAS path
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    out = np.matmul(a, b)
    return np.mod(out, p).astype(np.int64)
