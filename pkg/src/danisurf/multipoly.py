"""Sparse multivariate polynomials over cyclotomic scalars.

A ``MultiPoly`` stores a map from exponent tuples to nonzero ``CycScalar``
coefficients, together with a sorted tuple of variable names.  Unused
variables are pruned, so two polynomials describing the same function have
identical representations and compare equal.  Term order everywhere is
graded lexicographic with respect to the variable tuple.

>>> x, y = MultiPoly.variable("x"), MultiPoly.variable("y")
>>> print((x + y) ** 2)
x^2 + 2*x*y + y^2
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .exactnum import CycScalar, ScalarLike

PolyLike = Union["MultiPoly", CycScalar, Fraction, int]


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple[int, ...], ScalarLike] | None = None):
        vars_in = tuple(variables)
        cleaned: dict[tuple[int, ...], CycScalar] = {}
        for exps, coeff in (terms or {}).items():
            c = coeff if isinstance(coeff, CycScalar) else CycScalar(coeff)
            if c.is_zero():
                continue
            exps = tuple(exps)
            if len(exps) != len(vars_in):
                raise ValueError("exponent tuple does not match variable list")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            cleaned[exps] = cleaned.get(exps, CycScalar(0)) + c
        # prune unused variables and sort the rest
        used = [i for i in range(len(vars_in)) if any(e[i] for e in cleaned)]
        names = sorted(vars_in[i] for i in used)
        order = [vars_in.index(n) for n in names]
        final: dict[tuple[int, ...], CycScalar] = {}
        for exps, c in cleaned.items():
            if c.is_zero():
                continue
            final[tuple(exps[i] for i in order)] = c
        object.__setattr__(self, "variables", tuple(names))
        object.__setattr__(self, "terms", final)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): CycScalar(1)})

    @staticmethod
    def constant(value: ScalarLike) -> "MultiPoly":
        return MultiPoly((), {(): value})

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def one() -> "MultiPoly":
        return MultiPoly.constant(1)

    @staticmethod
    def from_pairs(variables: Iterable[str], pairs: Iterable[tuple[tuple[int, ...], ScalarLike]]) -> "MultiPoly":
        return MultiPoly(variables, dict(pairs))

    @staticmethod
    def univariate(name: str, coeffs: Iterable[ScalarLike]) -> "MultiPoly":
        """Polynomial in one variable from ascending coefficients."""
        return MultiPoly((name,), {(e,): c for e, c in enumerate(coeffs)})

    @staticmethod
    def _coerce(value: PolyLike) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (CycScalar, Fraction, int)):
            return MultiPoly.constant(value)
        return NotImplemented  # type: ignore[return-value]

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.variables

    def as_scalar(self) -> CycScalar:
        if self.variables:
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((), CycScalar(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, a polynomial in the other variables."""
        if var not in self.variables:
            return self if power == 0 else MultiPoly.zero()
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        picked = {
            e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == power
        }
        return MultiPoly(rest, picked)

    def leading_coefficient(self, var: str) -> CycScalar:
        lc = self.coefficient_of(var, self.degree_in(var))
        return lc.as_scalar()

    def exponent_support(self, var: str) -> tuple[int, ...]:
        """Sorted exponents of a nonzero polynomial depending only on ``var``."""
        if self.is_zero():
            raise ValueError("zero polynomial has no exponent support")
        if any(v != var for v in self.variables):
            raise ValueError(f"polynomial depends on more than {var!r}")
        if not self.variables:
            return (0,)
        return tuple(sorted(e[0] for e in self.terms))

    def depends_only_on(self, var: str) -> bool:
        return all(v == var for v in self.variables)

    # -- arithmetic -------------------------------------------------------

    def _aligned(self, other: "MultiPoly") -> tuple[tuple[str, ...], dict, dict]:
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = tuple(sorted(set(self.variables) | set(other.variables)))

        def remap(p: "MultiPoly") -> dict:
            idx = [p.variables.index(n) if n in p.variables else -1 for n in names]
            out = {}
            for e, c in p.terms.items():
                out[tuple(e[i] if i >= 0 else 0 for i in idx)] = c
            return out

        return names, remap(self), remap(other)

    def __add__(self, other: PolyLike) -> "MultiPoly":
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._aligned(other)
        merged = dict(a)
        for e, c in b.items():
            merged[e] = merged[e] + c if e in merged else c
        return MultiPoly(names, merged)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.zero()
        object.__setattr__(out, "variables", self.variables)
        object.__setattr__(out, "terms", {e: -c for e, c in self.terms.items()})
        return out

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        other = MultiPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._aligned(other)
        prod: dict[tuple[int, ...], CycScalar] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                prod[e] = prod[e] + c if e in prod else c
        return MultiPoly(names, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly.zero()
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            reduced = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[reduced] = c * e[i]
        return MultiPoly(self.variables, out)

    def substitute(self, images: Mapping[str, PolyLike]) -> "MultiPoly":
        """Ring-homomorphism evaluation; variables without an image map to themselves."""
        table = {
            v: MultiPoly._coerce(images[v]) if v in images else MultiPoly.variable(v)
            for v in self.variables
        }
        powers: dict[str, list[MultiPoly]] = {v: [MultiPoly.one()] for v in self.variables}

        def power(v: str, k: int) -> MultiPoly:
            cache = powers[v]
            while len(cache) <= k:
                cache.append(cache[-1] * table[v])
            return cache[k]

        acc = MultiPoly.zero()
        for e, c in self.terms.items():
            term = MultiPoly.constant(c)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * power(v, k)
            acc = acc + term
        return acc

    def divide_by_variable(self, var: str) -> "MultiPoly":
        """Exact division by ``var``; every term must contain it."""
        if self.is_zero():
            return self
        if var not in self.variables:
            raise ValueError(f"{self} is not divisible by {var}")
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                raise ValueError(f"{self} is not divisible by {var}")
            out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c
        return MultiPoly(self.variables, out)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (CycScalar, Fraction, int)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- rendering --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], CycScalar]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def _monomial_str(self, exps: tuple[int, ...]) -> str:
        pieces = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                pieces.append(v)
            elif e > 1:
                pieces.append(f"{v}^{e}")
        return "*".join(pieces)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps, coeff in self.sorted_terms():
            mono = self._monomial_str(exps)
            if coeff.is_rational():
                q = coeff.as_rational()
                sign = "-" if q < 0 else "+"
                mag = abs(q)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            else:
                sign = "+"
                body = f"({coeff})*{mono}" if mono else f"({coeff})"
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"
