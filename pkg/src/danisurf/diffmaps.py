"""Derivations and ring endomorphisms of a surface, given by generator images.

A derivation or map is a table generator -> SurfaceElement.  On a relation
surface the images must be compatible with the defining relation; the
constructors verify this and refuse ill-defined tables.  Commutation with a
derivation is decided on generators alone: the defect rho∘D - D∘rho obeys
a twisted Leibniz rule, so vanishing on generators forces it to vanish
everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .multipoly import MultiPoly, PolyLike
from .surface import SurfaceElement, SurfaceSpec


class CapExceededError(RuntimeError):
    """An iteration bound was hit before the computation settled."""


def _image_table(images: Mapping[str, object], S: SurfaceSpec) -> dict[str, SurfaceElement]:
    table = {}
    for name in S.variables:
        if name not in images:
            raise ValueError(f"missing image for generator {name!r}")
        table[name] = SurfaceElement._coerce(images[name], S)
    extra = set(images) - set(S.variables)
    if extra:
        raise ValueError(f"images given for unknown generators {sorted(extra)}")
    for el in table.values():
        if el.surface != S:
            raise ValueError("image lives on a different surface")
    return table


def _derivation_residue(table: Mapping[str, SurfaceElement], S: SurfaceSpec) -> SurfaceElement:
    # D applied to the defining polynomial f(x)y - phi(z)
    fx = S.f.partial_derivative("x")
    phiz = S.phi.partial_derivative("z")
    y = MultiPoly.variable("y")
    value = (S.element(fx * y) * table["x"]
             + S.element(S.f) * table["y"]
             - S.element(phiz) * table["z"])
    return value


def check_derivation_well_defined(images: Mapping[str, object], S: SurfaceSpec) -> bool:
    """True iff the image table extends to a derivation of the quotient ring."""
    table = _image_table(images, S)
    if S.is_free:
        return True
    return _derivation_residue(table, S).is_zero()


def check_map_well_defined(images: Mapping[str, object], S: SurfaceSpec) -> bool:
    """True iff the image table preserves the relation ideal."""
    table = _image_table(images, S)
    if S.is_free:
        return True
    fx = S.f.substitute({"x": table["x"].rep})
    phiz = S.phi.substitute({"z": table["z"].rep})
    return S.element(fx * table["y"].rep - phiz).is_zero()


class Derivation:
    """A K-linear derivation of the surface ring, defined by generator images."""

    __slots__ = ("surface", "images")

    def __init__(self, surface: SurfaceSpec, images: Mapping[str, object]):
        table = _image_table(images, surface)
        if not surface.is_free and not _derivation_residue(table, surface).is_zero():
            raise ValueError("images do not define a derivation of the quotient ring")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "images", table)

    def __setattr__(self, name, value):
        raise AttributeError("Derivation is immutable")

    @staticmethod
    def zero(surface: SurfaceSpec) -> "Derivation":
        return Derivation(surface, {v: 0 for v in surface.variables})

    def is_zero(self) -> bool:
        return all(el.is_zero() for el in self.images.values())

    def apply(self, p: SurfaceElement | PolyLike) -> SurfaceElement:
        p = SurfaceElement._coerce(p, self.surface)
        if p.surface != self.surface:
            raise ValueError("element lives on a different surface")
        acc = self.surface.element(0)
        for v in self.surface.variables:
            dv = self.images[v]
            if dv.is_zero():
                continue
            part = p.rep.partial_derivative(v)
            if part.is_zero():
                continue
            acc = acc + self.surface.element(part) * dv
        return acc

    def __call__(self, p) -> SurfaceElement:
        return self.apply(p)

    def scaled_by(self, w: SurfaceElement | PolyLike) -> "Derivation":
        """The derivation w*D for a kernel element w (w*D stays a derivation)."""
        w = SurfaceElement._coerce(w, self.surface)
        if not self.apply(w).is_zero():
            raise ValueError("scaling factor is not in the kernel of the derivation")
        return Derivation(self.surface, {v: w * el for v, el in self.images.items()})

    def default_cap(self) -> int:
        if self.surface.is_free:
            return 32
        degx = max(el.rep.degree_in("x") for el in self.images.values())
        return 2 + self.surface.d * (1 + max(degx, 0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.surface == other.surface and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.surface, tuple(sorted((v, e.rep) for v, e in self.images.items()))))

    def __str__(self) -> str:
        body = "; ".join(f"{v} -> {self.images[v]}" for v in self.surface.variables)
        return f"D: {body}"

    def __repr__(self) -> str:
        return f"Derivation({self})"


class RingMap:
    """A ring endomorphism of the surface ring, defined by generator images."""

    __slots__ = ("surface", "images")

    def __init__(self, surface: SurfaceSpec, images: Mapping[str, object]):
        table = _image_table(images, surface)
        if not surface.is_free and not check_map_well_defined(table, surface):
            raise ValueError("images do not preserve the relation ideal")
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "images", table)

    def __setattr__(self, name, value):
        raise AttributeError("RingMap is immutable")

    @staticmethod
    def identity(surface: SurfaceSpec) -> "RingMap":
        return RingMap(surface, {v: surface.gen(v) for v in surface.variables})

    def is_identity(self) -> bool:
        return all(self.images[v] == self.surface.gen(v) for v in self.surface.variables)

    def apply(self, p: SurfaceElement | PolyLike) -> SurfaceElement:
        p = SurfaceElement._coerce(p, self.surface)
        if p.surface != self.surface:
            raise ValueError("element lives on a different surface")
        image = p.rep.substitute({v: self.images[v].rep for v in self.surface.variables})
        return self.surface.element(image)

    def __call__(self, p) -> SurfaceElement:
        return self.apply(p)

    def compose(self, inner: "RingMap") -> "RingMap":
        """self after inner: (self.compose(inner))(p) = self(inner(p))."""
        if self.surface != inner.surface:
            raise ValueError("maps live on different surfaces")
        return RingMap(self.surface, {v: self.apply(el) for v, el in inner.images.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMap):
            return NotImplemented
        return self.surface == other.surface and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.surface, tuple(sorted((v, e.rep) for v, e in self.images.items()))))

    def __str__(self) -> str:
        body = "; ".join(f"{v} -> {self.images[v]}" for v in self.surface.variables)
        return f"M: {body}"

    def __repr__(self) -> str:
        return f"RingMap({self})"


def apply_derivation(D: Derivation, p: SurfaceElement) -> SurfaceElement:
    return D.apply(p)


def apply_map(rho: RingMap, p: SurfaceElement) -> SurfaceElement:
    return rho.apply(p)


def compose_maps(rho: RingMap, sigma: RingMap) -> RingMap:
    return rho.compose(sigma)


@dataclass(frozen=True)
class CommutationResult:
    commutes: bool
    generator: Optional[str] = None
    difference: Optional[SurfaceElement] = None

    def __bool__(self) -> bool:
        return self.commutes


def commutes(rho: RingMap, D: Derivation) -> CommutationResult:
    """Decide rho∘D = D∘rho, with a generator witness on failure."""
    if rho.surface != D.surface:
        raise ValueError("map and derivation live on different surfaces")
    for v in rho.surface.variables:
        left = rho.apply(D.images[v])
        right = D.apply(rho.images[v])
        diff = left - right
        if not diff.is_zero():
            return CommutationResult(False, v, diff)
    return CommutationResult(True)


@dataclass(frozen=True)
class NilpotencyReport:
    indices: dict[str, Optional[int]]  # None marks "exceeded cap"
    cap: int

    @property
    def all_nilpotent(self) -> bool:
        return all(k is not None for k in self.indices.values())

    @property
    def inconclusive(self) -> bool:
        return any(k is None for k in self.indices.values())

    def __str__(self) -> str:
        parts = [
            f"{v}: {'exceeded cap' if k is None else k}"
            for v, k in self.indices.items()
        ]
        verdict = "locally nilpotent" if self.all_nilpotent else "inconclusive"
        return f"{'; '.join(parts)} (cap {self.cap}) -> {verdict}"


def is_locally_nilpotent(D: Derivation, cap: Optional[int] = None) -> NilpotencyReport:
    """Iterate D on each generator; exceeding the cap is inconclusive, not a disproof."""
    if cap is None:
        cap = D.default_cap()
    if cap < 1:
        raise ValueError("cap must be positive")
    indices: dict[str, Optional[int]] = {}
    for v in D.surface.variables:
        current = D.images[v]
        found: Optional[int] = None
        for k in range(1, cap + 1):
            if current.is_zero():
                found = k
                break
            current = D.apply(current)
        indices[v] = found
    return NilpotencyReport(indices, cap)


def kernel_contains(D: Derivation, p: SurfaceElement | PolyLike) -> bool:
    return D.apply(p).is_zero()


def scale_by_kernel(D: Derivation, w: SurfaceElement | PolyLike) -> Derivation:
    return D.scaled_by(w)


def exp_derivation(D: Derivation, cap: Optional[int] = None) -> RingMap:
    """The exponential automorphism v -> sum_k D^k(v)/k! of a locally nilpotent D."""
    if cap is None:
        cap = D.default_cap()
    if cap < 1:
        raise ValueError("cap must be positive")
    images = {}
    for v in D.surface.variables:
        acc = D.surface.gen(v)
        current = D.images[v]
        k = 1
        while not current.is_zero():
            if k > cap:
                raise CapExceededError(
                    f"derivation is not nilpotent on {v!r} within cap {cap}")
            acc = acc + current * Fraction(1, math.factorial(k))
            current = D.apply(current)
            k += 1
        images[v] = acc
    rho = RingMap(D.surface, images)
    return rho
