"""Exact arithmetic over Q and over the cyclotomic fields Q(zeta_N).

Every scalar in this package is a ``CycScalar``: a residue modulo the N-th
cyclotomic polynomial, written in the power basis 1, zeta_N, ..., zeta_N^(phi(N)-1)
with Fraction coefficients.  Purely rational values are kept at conductor 1,
and after every operation the conductor is minimized (the residue is moved
into the smallest cyclotomic subfield that contains it), so equal algebraic
numbers always compare equal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

Rational = Fraction

ScalarLike = Union["CycScalar", Fraction, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Dense integer coefficients of the n-th cyclotomic polynomial, ascending."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if n == 1:
        return (-1, 1)
    # (t^n - 1) divided by Phi_d for every proper divisor d of n.
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in divisors(n)[:-1]:
        poly = _int_poly_div_exact(poly, list(cyclotomic_coeffs(d)))
    return tuple(poly)


def _int_poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials; remainder must vanish
    num = list(num)
    dd = len(den) - 1
    lead = den[dd]
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        quot[i - dd] = q
        for j, dc in enumerate(den):
            num[i - dd + j] -= q * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


def _mod_phi(coeffs: list[Fraction], n: int) -> list[Fraction]:
    """Remainder of a dense Fraction polynomial modulo Phi_n (monic)."""
    phi = cyclotomic_coeffs(n)
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c == 0:
            continue
        work[i] = _ZERO
        for j in range(deg):
            work[i - deg + j] -= c * phi[j]
    out = work[:deg]
    out += [_ZERO] * (deg - len(out))
    return out


@lru_cache(maxsize=None)
def _embedding_basis(L: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Images of the Q(zeta_d) power basis inside Q(zeta_L), as rows."""
    step = L // d
    rows = []
    for k in range(euler_phi(d)):
        e = k * step
        vec = [_ZERO] * (e + 1)
        vec[e] = _ONE
        rows.append(tuple(_mod_phi(vec, L)))
    return tuple(rows)


def _solve_in_subfield(L: int, d: int, target: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve sum_k c_k * zeta_L^(k*L/d) = target; None if no solution."""
    basis = _embedding_basis(L, d)
    ncols = len(basis)
    nrows = euler_phi(L)
    # columns are the basis vectors, augmented with the target
    aug = [[basis[c][r] for c in range(ncols)] + [target[r]] for r in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, nrows):
        if aug[r][ncols] != 0:
            return None
    sol = [_ZERO] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][ncols]
    return sol


def _minimized(L: int, coeffs: list[Fraction]) -> "CycScalar":
    if L == 1 or all(c == 0 for c in coeffs[1:]):
        return CycScalar._raw(1, (coeffs[0] if coeffs else _ZERO,))
    for d in divisors(L):
        if d == L:
            break
        sol = _solve_in_subfield(L, d, coeffs)
        if sol is not None:
            return _minimized(d, sol)
    return CycScalar._raw(L, tuple(coeffs))


class CycScalar:
    """An element of some Q(zeta_N), stored at its minimal conductor.

    >>> i = CycScalar.zeta(4)
    >>> i * i
    CycScalar(-1)
    >>> CycScalar.zeta(3) + CycScalar.zeta(3) ** 2
    CycScalar(-1)
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, value: ScalarLike = 0):
        if isinstance(value, CycScalar):
            object.__setattr__(self, "conductor", value.conductor)
            object.__setattr__(self, "coeffs", value.coeffs)
        elif isinstance(value, (int, Fraction)):
            object.__setattr__(self, "conductor", 1)
            object.__setattr__(self, "coeffs", (Fraction(value),))
        else:
            raise TypeError(f"cannot build a scalar from {value!r}")

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @staticmethod
    def _raw(conductor: int, coeffs: tuple[Fraction, ...]) -> "CycScalar":
        self = object.__new__(CycScalar)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @staticmethod
    def zeta(n: int, power: int = 1) -> "CycScalar":
        """zeta(n)^power, a primitive n-th root of unity raised to a power."""
        if n < 1:
            raise ValueError("zeta index must be >= 1")
        e = power % n
        vec = [_ZERO] * (e + 1)
        vec[e] = _ONE
        return _minimized(n, _mod_phi(vec, n))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 1

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_rational(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -------------------------------------------------------

    def _lifted(self, L: int) -> list[Fraction]:
        if L == self.conductor:
            return list(self.coeffs)
        step = L // self.conductor
        vec = [_ZERO] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                vec[i * step] = c
        return _mod_phi(vec, L)

    @staticmethod
    def _coerce(value: ScalarLike) -> "CycScalar":
        if isinstance(value, CycScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return CycScalar(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: ScalarLike) -> "CycScalar":
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return CycScalar(self.coeffs[0] + other.coeffs[0])
        L = _lcm(self.conductor, other.conductor)
        a, b = self._lifted(L), other._lifted(L)
        return _minimized(L, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        return CycScalar._raw(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other: ScalarLike) -> "CycScalar":
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "CycScalar":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "CycScalar":
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return CycScalar(self.coeffs[0] * other.coeffs[0])
        if self.conductor == 1:
            q = self.coeffs[0]
            if q == 0:
                return CycScalar(0)
            return CycScalar._raw(other.conductor, tuple(q * c for c in other.coeffs))
        if other.conductor == 1:
            q = other.coeffs[0]
            if q == 0:
                return CycScalar(0)
            return CycScalar._raw(self.conductor, tuple(q * c for c in self.coeffs))
        L = _lcm(self.conductor, other.conductor)
        a, b = self._lifted(L), other._lifted(L)
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    prod[i + j] += x * y
        return _minimized(L, _mod_phi(prod, L))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.conductor == 1:
            return CycScalar(1 / self.coeffs[0])
        # extended gcd of the residue with Phi_N; Phi_N is irreducible so
        # the gcd is a nonzero constant
        u = _poly_xgcd_mod(list(self.coeffs), self.conductor)
        return _minimized(self.conductor, u)

    def __truediv__(self, other: ScalarLike) -> "CycScalar":
        other = CycScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "CycScalar":
        return CycScalar._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "CycScalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycScalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycScalar(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self.conductor == 1:
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        if self.conductor == 1:
            return str(self.coeffs[0])
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            q = self.coeffs[e]
            if q == 0:
                continue
            if e == 0:
                body = str(abs(q))
            else:
                base = f"zeta({self.conductor})" + (f"^{e}" if e > 1 else "")
                body = base if abs(q) == 1 else f"{abs(q)}*{base}"
            if not parts:
                parts.append(("-" if q < 0 else "") + body)
            else:
                parts.append((" - " if q < 0 else " + ") + body)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"CycScalar({self})"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _poly_xgcd_mod(a: list[Fraction], n: int) -> list[Fraction]:
    """Return u with u*a = 1 modulo Phi_n, via the extended Euclid algorithm."""
    phi = [Fraction(c) for c in cyclotomic_coeffs(n)]
    r0, r1 = phi, _trim(a)
    s0, s1 = [_ZERO], [_ONE]
    while _degree(r1) > 0:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if _degree(r1) < 0:
        raise ZeroDivisionError("residue shares a factor with the modulus")
    c = r1[0]
    return _mod_phi([v / c for v in s1], n)


def _trim(p: list[Fraction]) -> list[Fraction]:
    end = len(p)
    while end > 0 and p[end - 1] == 0:
        end -= 1
    return p[:end]


def _degree(p: list[Fraction]) -> int:
    return len(_trim(p)) - 1


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _trim(out)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for j in range(len(b)):
            r[k + j] -= c * b[j]
        r = _trim(r)
        if not r:
            break
    return _trim(q), r


def zeta(n: int, power: int = 1) -> CycScalar:
    return CycScalar.zeta(n, power)


def root_of_unity_order(a: ScalarLike) -> Optional[int]:
    """Least k >= 1 with a^k = 1, or None if a is not a root of unity.

    The roots of unity inside Q(zeta_N) form the group generated by -zeta_N,
    whose order divides 2N, so iterating up to 2N is a complete search.
    """
    a = CycScalar._coerce(a)
    if a.is_zero():
        return None
    cap = 2 * a.conductor
    power = a
    for k in range(1, cap + 1):
        if power.is_one():
            return k
        power = power * a
    return None


def cyclotomic_polynomial(n: int):
    """The n-th cyclotomic polynomial as a univariate polynomial in ``t``."""
    from .multipoly import MultiPoly

    coeffs = cyclotomic_coeffs(n)
    return MultiPoly.from_pairs(
        ("t",), [((e,), Fraction(c)) for e, c in enumerate(coeffs) if c]
    )
