"""Automorphism generator families and isotropy-group verification suites.

For a surface f(x)y = phi(z) the relevant generator families are

  * hyperbolic rotations  H = (lam*x, lam^(-j)*y, z), with lam^s = 1 when
    f(x) = x^j*h(x^s) is not a monomial (j minimal exponent, s maximal),
  * the involution        I = (y, x, z), only when f = c*x,
  * triangular maps       T = (x, y + h*psi, z + h*f), psi the exact
    quotient (phi(z + h*f) - phi(z)) / f,
  * rescalings            R = (x, lam^d*y, lam*z + (1-lam)*a), when
    phi = c*(z - a)^d,
  * symmetries            S = (x, mu^i*y, mu*z), when phi = z^i*phi0(z^m)
    with m maximal and mu^m = 1.

A hyperbolic rotation commutes with the canonical derivation
D = (0, g*phi_z, g*f) exactly when the order of lam divides
gcd{j + e : e in the exponent support of g} (and divides s where f forces
it); the suites sweep parameters on both sides of that criterion.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import CycScalar, ScalarLike, divisors, root_of_unity_order, zeta
from .multipoly import MultiPoly, PolyLike
from .surface import SurfaceSpec
from .diffmaps import Derivation, RingMap, commutes


class ShapeMismatchError(ValueError):
    """The requested generator family does not exist for this surface shape."""


# ---------------------------------------------------------------------------
# shape analysis


@dataclass(frozen=True)
class PhiShape:
    """Shape data of a univariate phi: degree, power form, periodic form.

    power:    (c, a) with phi = c*(z - a)^degree, when phi has that form.
    periodic: (i, m, phi0) with phi = z^i * phi0(z^m) and m the gcd of the
              support-exponent differences; m = 0 marks a pure monomial
              (every period works), with phi0 the leading constant.
    """

    degree: int
    power: Optional[tuple[CycScalar, CycScalar]]
    periodic: Optional[tuple[int, int, MultiPoly]]

    def reconstruct_power(self) -> Optional[MultiPoly]:
        if self.power is None:
            return None
        c, a = self.power
        z = MultiPoly.variable("z")
        return MultiPoly.constant(c) * (z - MultiPoly.constant(a)) ** self.degree

    def reconstruct_periodic(self) -> Optional[MultiPoly]:
        if self.periodic is None:
            return None
        i, m, phi0 = self.periodic
        z = MultiPoly.variable("z")
        inner = z ** m if m > 0 else MultiPoly.one()
        return z ** i * phi0.substitute({"z": inner})


def classify_phi(phi: PolyLike) -> PhiShape:
    phi = MultiPoly._coerce(phi)
    if not phi.depends_only_on("z") or phi.degree_in("z") < 1:
        raise ValueError("phi must be univariate in z with deg phi >= 1")
    d = phi.degree_in("z")
    c = phi.leading_coefficient("z")

    # power form c*(z - a)^d: read a off the subleading coefficient, verify
    a = -(phi.coefficient_of("z", d - 1).as_scalar() / (c * d))
    z = MultiPoly.variable("z")
    power = None
    if MultiPoly.constant(c) * (z - MultiPoly.constant(a)) ** d == phi:
        power = (c, a)

    support = phi.exponent_support("z")
    i = support[0]
    diffs = [e - i for e in support[1:]]
    if not diffs:
        m = 0
        phi0 = MultiPoly.constant(phi.coefficient_of("z", i).as_scalar())
    else:
        m = math.gcd(*diffs) if len(diffs) > 1 else diffs[0]
        phi0 = MultiPoly(
            ("z",),
            {((e - i) // m,): phi.coefficient_of("z", e).as_scalar() for e in support},
        )
    return PhiShape(d, power, (i, m, phi0))


def monomial_split(f: PolyLike, var: str = "x") -> tuple[int, int]:
    """(j, s) with f = x^j * h(x^s), j the minimal exponent and s maximal.

    s = 0 marks a monomial f (any period works and no root-of-unity
    condition is imposed on hyperbolic rotations).
    """
    f = MultiPoly._coerce(f)
    support = f.exponent_support(var)
    j = support[0]
    diffs = [e - j for e in support[1:]]
    if not diffs:
        return j, 0
    return j, (math.gcd(*diffs) if len(diffs) > 1 else diffs[0])


def surface_class(S: SurfaceSpec) -> str:
    """One of "xy" (f = c*x), "xn" (f = c*x^n, n > 1), "fx" (anything else)."""
    if S.is_free:
        raise ValueError("free rings have no Danielewski class")
    j, s = monomial_split(S.f)
    if s == 0:
        return "xy" if j == 1 else "xn"
    return "fx"


def hyperbolic_order_bound(g: PolyLike, n: int) -> int:
    """gcd of {n + e : e in the exponent support of g}.

    The hyperbolic rotations commuting with the canonical derivation built
    from g on x^n*y = phi(z) are exactly those whose parameter is a root of
    unity of order dividing this bound.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g = MultiPoly._coerce(g)
    if g.is_zero():
        raise ValueError("g must be nonzero")
    support = g.exponent_support("x")
    return math.gcd(*(n + e for e in support)) if len(support) > 1 else n + support[0]


def _effective_hyperbolic_bound(S: SurfaceSpec, g: MultiPoly) -> int:
    # orders admissible both for well-definedness (s) and commutation (j + support)
    j, s = monomial_split(S.f)
    support = g.exponent_support("x")
    g0 = math.gcd(*(j + e for e in support)) if len(support) > 1 else j + support[0]
    return math.gcd(s, g0)


# ---------------------------------------------------------------------------
# generator factories


def hyperbolic_rotation(S: SurfaceSpec, lam: ScalarLike) -> RingMap:
    lam = CycScalar(lam) if not isinstance(lam, CycScalar) else lam
    if lam.is_zero():
        raise ValueError("hyperbolic parameter must be a unit")
    j, s = monomial_split(S.f)
    if s > 0 and lam ** s != 1:
        raise ShapeMismatchError(
            f"lambda = {lam} does not satisfy lambda^{s} = 1 required by f = {S.f}")
    x, y, z = (MultiPoly.variable(v) for v in "xyz")
    return RingMap(S, {
        "x": MultiPoly.constant(lam) * x,
        "y": MultiPoly.constant(lam ** (-j)) * y,
        "z": z,
    })


def involution(S: SurfaceSpec) -> RingMap:
    if surface_class(S) != "xy":
        raise ShapeMismatchError("the involution exists only when f = c*x")
    x, y, z = (MultiPoly.variable(v) for v in "xyz")
    return RingMap(S, {"x": y, "y": x, "z": z})


def triangular(S: SurfaceSpec, h: PolyLike) -> RingMap:
    h = MultiPoly._coerce(h)
    if not h.depends_only_on("x"):
        raise ValueError("h must be a polynomial in x")
    x, y, z = (MultiPoly.variable(v) for v in "xyz")
    w = h * S.f
    u = MultiPoly.variable("u")
    psi = (S.phi.substitute({"z": z + u}) - S.phi).divide_by_variable("u")
    bump = h * psi.substitute({"u": w})
    return RingMap(S, {"x": x, "y": y + bump, "z": z + w})


def rescaling(S: SurfaceSpec, lam: ScalarLike) -> RingMap:
    lam = CycScalar(lam) if not isinstance(lam, CycScalar) else lam
    if lam.is_zero():
        raise ValueError("rescaling parameter must be a unit")
    shape = classify_phi(S.phi)
    if shape.power is None:
        raise ShapeMismatchError(f"phi = {S.phi} is not of the form c*(z - a)^d")
    _, a = shape.power
    x, y, z = (MultiPoly.variable(v) for v in "xyz")
    # R(z) - a = lam*(z - a); relation preservation forces this shift
    return RingMap(S, {
        "x": x,
        "y": MultiPoly.constant(lam ** shape.degree) * y,
        "z": MultiPoly.constant(lam) * z + MultiPoly.constant((1 - lam) * a),
    })


def symmetry(S: SurfaceSpec, mu: ScalarLike) -> RingMap:
    mu = CycScalar(mu) if not isinstance(mu, CycScalar) else mu
    shape = classify_phi(S.phi)
    i, m, _ = shape.periodic
    if m == 0:
        raise ShapeMismatchError(
            "phi is a monomial; its symmetries are covered by rescalings")
    if mu ** m != 1:
        raise ShapeMismatchError(f"mu = {mu} does not satisfy mu^{m} = 1")
    x, y, z = (MultiPoly.variable(v) for v in "xyz")
    return RingMap(S, {
        "x": x,
        "y": MultiPoly.constant(mu ** i) * y,
        "z": MultiPoly.constant(mu) * z,
    })


@dataclass(frozen=True)
class GeneratorRequest:
    family: str  # hyperbolic | involution | triangular | rescaling | symmetry
    parameter: object = None


_FACTORIES = {
    "hyperbolic": lambda S, p: hyperbolic_rotation(S, p),
    "involution": lambda S, p: involution(S),
    "triangular": lambda S, p: triangular(S, p),
    "rescaling": lambda S, p: rescaling(S, p),
    "symmetry": lambda S, p: symmetry(S, p),
}


def make_generator(request: GeneratorRequest, S: SurfaceSpec) -> RingMap:
    try:
        factory = _FACTORIES[request.family]
    except KeyError:
        raise ValueError(f"unknown generator family {request.family!r}") from None
    return factory(S, request.parameter)


# ---------------------------------------------------------------------------
# canonical locally nilpotent derivations


@dataclass(frozen=True)
class CanonicalLND:
    """The derivation D = (0, g*phi_z, g*f) realized on its surface."""

    surface: SurfaceSpec
    g: MultiPoly
    derivation: Derivation


def canonical_lnd(S: SurfaceSpec, g: PolyLike) -> CanonicalLND:
    if S.is_free:
        raise ValueError("canonical derivations live on relation surfaces")
    g = MultiPoly._coerce(g)
    if not g.depends_only_on("x"):
        raise ValueError("g must be a polynomial in x")
    D = Derivation(S, {
        "x": MultiPoly.zero(),
        "y": g * S.phi.partial_derivative("z"),
        "z": g * S.f,
    })
    return CanonicalLND(S, g, D)


# ---------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class CheckRecord:
    family: str
    params: str
    expected: bool
    observed: bool
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    surface: str
    g: str
    checks: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(rec.ok for rec in self.checks)

    def to_dict(self) -> dict:
        out_checks = []
        for rec in sorted(self.checks, key=lambda r: (r.family, r.params)):
            entry = {
                "family": rec.family,
                "params": rec.params,
                "expected": rec.expected,
                "observed": rec.observed,
            }
            if rec.witness is not None:
                entry["witness"] = rec.witness
            out_checks.append(entry)
        return {
            "suite": self.suite,
            "surface": self.surface,
            "g": self.g,
            "checks": out_checks,
            "pass": self.passed,
        }

    def render_text(self) -> str:
        lines = [f"suite: {self.suite}", f"surface: {self.surface}", f"g: {self.g}"]
        for rec in sorted(self.checks, key=lambda r: (r.family, r.params)):
            status = "ok " if rec.ok else "BAD"
            line = (f"  [{status}] {rec.family:<11} {rec.params:<40} "
                    f"expected={str(rec.expected):<5} observed={rec.observed}")
            if rec.witness:
                line += f"  witness: {rec.witness}"
            lines.append(line)
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


@dataclass(frozen=True)
class SamplingPlan:
    h_degrees: tuple[int, ...] = (0, 1, 2, 3, 4)
    seed: int = 0


def _random_univariate(rnd: random.Random, var: str, degree: int) -> MultiPoly:
    coeffs = [Fraction(rnd.randint(-2, 2)) for _ in range(degree)]
    coeffs.append(Fraction(rnd.choice([1, -1, 2, -2])))
    return MultiPoly.univariate(var, coeffs)


def _witness_str(result) -> Optional[str]:
    if result.commutes:
        return None
    return f"{result.generator}: {result.difference}"


def _order_str(lam: CycScalar) -> str:
    order = root_of_unity_order(lam)
    return str(order) if order is not None else "none"


def verify_isotropy_theorem(S: SurfaceSpec, g: PolyLike,
                            plan: SamplingPlan | None = None) -> VerifyReport:
    """Sweep all applicable generator families against D = (0, g*phi_z, g*f).

    Triangular parameters must always commute; the involution (f = c*x)
    must never; hyperbolic parameters commute exactly when their order
    divides the gcd bound; rescalings and symmetries only at the identity.
    """
    plan = plan or SamplingPlan()
    g = MultiPoly._coerce(g)
    if S.is_free:
        raise ValueError("theorem suites run on relation surfaces")
    if S.d < 2:
        raise ValueError("theorem suites require deg phi >= 2")
    if g.is_zero():
        raise ValueError("theorem suites require g != 0")
    rnd = random.Random(plan.seed)
    D = canonical_lnd(S, g).derivation
    cls = surface_class(S)
    checks: list[CheckRecord] = []

    # triangular family: every h must commute
    hs: list[MultiPoly] = [MultiPoly.zero(), MultiPoly.one()]
    for degree in plan.h_degrees:
        hs.append(_random_univariate(rnd, "x", degree))
    for h in hs:
        res = commutes(triangular(S, h), D)
        checks.append(CheckRecord("triangular", f"h = {h}", True, bool(res),
                                  _witness_str(res)))

    # involution: never in the isotropy group of a nonzero derivation
    if cls == "xy":
        res = commutes(involution(S), D)
        checks.append(CheckRecord("involution", "I = (y, x, z)", False, bool(res),
                                  _witness_str(res)))

    # hyperbolic rotations: commute iff order(lambda) divides the bound
    bound = _effective_hyperbolic_bound(S, g)
    checks.append(CheckRecord("hyperbolic", f"gcd order bound = {bound}", True, True))
    orders = list(divisors(bound))
    non_divisors = [k for k in range(2, bound + 5) if bound % k][:2]
    for k in orders + non_divisors:
        lam = zeta(k)
        expected = bound % k == 0
        checks.append(_parameter_check(S, D, "hyperbolic", "lambda", lam, expected))
    checks.append(_parameter_check(S, D, "hyperbolic", "lambda", CycScalar(2), False))

    # rescalings: only the identity parameter commutes
    shape = classify_phi(S.phi)
    if shape.power is not None:
        for lam in (CycScalar(1), CycScalar(-1), CycScalar(2), zeta(3)):
            expected = lam == 1
            checks.append(_parameter_check(S, D, "rescaling", "lambda", lam, expected))

    # symmetries: only the identity parameter commutes
    i, m, _ = shape.periodic
    if m >= 1:
        for t in range(m):
            mu = zeta(m, t)
            checks.append(_parameter_check(S, D, "symmetry", "mu", mu, mu == 1))
        checks.append(_parameter_check(S, D, "symmetry", "mu", zeta(m + 1), False))

    return VerifyReport(f"isotropy-{cls}", str(S), str(g), tuple(checks))


def _parameter_check(S: SurfaceSpec, D: Derivation, family: str, pname: str,
                     value: CycScalar, expected: bool) -> CheckRecord:
    params = f"{pname} = {value} (order {_order_str(value)})"
    try:
        gen = make_generator(GeneratorRequest(family, value), S)
    except ShapeMismatchError as exc:
        return CheckRecord(family, params, expected, False, f"rejected: {exc}")
    res = commutes(gen, D)
    return CheckRecord(family, params, expected, bool(res), _witness_str(res))


def plane_example_suite(s: int, p: ScalarLike,
                        plan: SamplingPlan | None = None) -> VerifyReport:
    """Isotropy sweep for d = X d/dX + (Y^s + p*X) d/dY on the plane K[X,Y].

    The maps (c*X, c*Y) with c^(s-1) = 1 all commute (s - 1 of them);
    other dilations, translations and shears must fail.
    """
    plan = plan or SamplingPlan()
    if s < 2:
        raise ValueError("s must be >= 2")
    p = CycScalar(p) if not isinstance(p, CycScalar) else p
    if p.is_zero():
        raise ValueError("p must be nonzero")
    rnd = random.Random(plan.seed)
    F = SurfaceSpec.free_ring(("X", "Y"))
    X, Y = MultiPoly.variable("X"), MultiPoly.variable("Y")
    d = Derivation(F, {"X": X, "Y": Y ** s + MultiPoly.constant(p) * X})
    checks: list[CheckRecord] = []

    members = 0
    for t in range(s - 1):
        c = zeta(s - 1, t)
        rho = RingMap(F, {"X": MultiPoly.constant(c) * X, "Y": MultiPoly.constant(c) * Y})
        res = commutes(rho, d)
        if res.commutes:
            members += 1
        checks.append(CheckRecord("dilation", f"c = {c} (order {_order_str(c)})",
                                  True, bool(res), _witness_str(res)))
    checks.append(CheckRecord("member-count", f"expected group order {s - 1}",
                              True, members == s - 1))

    bad_order = next(k for k in range(2, s + 3) if (s - 1) % k)
    for c in (CycScalar(2), zeta(bad_order)):
        rho = RingMap(F, {"X": MultiPoly.constant(c) * X, "Y": MultiPoly.constant(c) * Y})
        res = commutes(rho, d)
        checks.append(CheckRecord("dilation", f"c = {c} (order {_order_str(c)})",
                                  False, bool(res), _witness_str(res)))

    res = commutes(RingMap(F, {"X": X + 1, "Y": Y}), d)
    checks.append(CheckRecord("translation", "(X + 1, Y)", False, bool(res),
                              _witness_str(res)))

    q = _random_univariate(rnd, "X", rnd.randint(0, 2))
    res = commutes(RingMap(F, {"X": X, "Y": Y + q}), d)
    checks.append(CheckRecord("shear", f"(X, Y + {q})", False, bool(res),
                              _witness_str(res)))

    return VerifyReport("plane-example", str(F), f"s={s}; p={p}", tuple(checks))
