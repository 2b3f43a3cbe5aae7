"""Batch command-line interface.

One surface and one command per invocation.  Exit codes: 0 when the command
succeeds and any checked property holds, 1 when a verification check fails
(the report is still emitted), 2 on parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .diffmaps import (CapExceededError, Derivation, RingMap, commutes,
                       exp_derivation, is_locally_nilpotent)
from .exactnum import CycScalar
from .isotropy import (SamplingPlan, classify_phi, hyperbolic_order_bound,
                       plane_example_suite, verify_isotropy_theorem)
from .multipoly import MultiPoly
from .parsing import (ParseError, parse_expression, parse_images,
                      parse_scalar, parse_surface)
from .surface import SurfaceSpec

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


@dataclass
class Session:
    surface: Optional[SurfaceSpec] = None
    derivations: dict[str, Derivation] = field(default_factory=dict)
    maps: dict[str, RingMap] = field(default_factory=dict)
    cap: Optional[int] = None
    seed: int = 0
    fmt: str = "text"

    def emit(self, payload: dict, text: str) -> None:
        if self.fmt == "json":
            print(json.dumps(payload))
        else:
            print(text)


def _argvalue(value: Optional[str]) -> Optional[str]:
    """Argument values beginning with @ are read from the named file."""
    if value is not None and value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as stream:
            return stream.read().strip()
    return value


def _build_session(args: argparse.Namespace) -> Session:
    session = Session(cap=getattr(args, "cap", None),
                      seed=getattr(args, "seed", 0) or 0,
                      fmt=getattr(args, "format", "text"))
    surface_text = _argvalue(getattr(args, "surface", None))
    if surface_text is not None:
        session.surface = parse_surface(surface_text)
    else:
        f_text = _argvalue(getattr(args, "f", None))
        n = getattr(args, "n", None)
        phi_text = _argvalue(getattr(args, "phi", None))
        if phi_text is not None and (f_text is not None or n is not None):
            if f_text is not None:
                f = parse_expression(f_text, ("x",))
            else:
                f = MultiPoly.variable("x") ** n
            session.surface = SurfaceSpec.danielewski(f, parse_expression(phi_text, ("z",)))
    der_text = _argvalue(getattr(args, "derivation", None))
    if der_text is not None and not getattr(args, "skip_session_derivation", False):
        session.derivations["D"] = Derivation(
            _need_surface(session), parse_images(der_text, _need_surface(session)))
    map_text = _argvalue(getattr(args, "map", None))
    if map_text is not None and not getattr(args, "skip_session_map", False):
        session.maps["M"] = RingMap(
            _need_surface(session), parse_images(map_text, _need_surface(session)))
    h_text = _argvalue(getattr(args, "h", None))
    if h_text is not None:
        if "M" in session.maps:
            raise ValueError("give either --map or --h, not both")
        from .isotropy import triangular

        session.maps["M"] = triangular(
            _need_surface(session), parse_expression(h_text, ("x",)))
    return session


def _need_surface(session: Session) -> SurfaceSpec:
    if session.surface is None:
        raise ValueError("this command needs --surface (or --phi with --f/--n)")
    return session.surface


def _cmd_nf(session: Session, args: argparse.Namespace) -> int:
    S = _need_surface(session)
    element = S.element(parse_expression(_argvalue(args.expr), S.variables))
    session.emit({"normal_form": str(element)}, str(element))
    return EXIT_OK


def _cmd_eq(session: Session, args: argparse.Namespace) -> int:
    S = _need_surface(session)
    left = S.element(parse_expression(_argvalue(args.left), S.variables))
    right = S.element(parse_expression(_argvalue(args.right), S.variables))
    equal = left == right
    session.emit({"equal": equal}, "true" if equal else "false")
    return EXIT_OK if equal else EXIT_CHECK_FAILED


def _cmd_dwf(session: Session, args: argparse.Namespace) -> int:
    from .diffmaps import check_derivation_well_defined

    S = _need_surface(session)
    images = parse_images(_argvalue(args.derivation), S)
    ok = check_derivation_well_defined(images, S)
    session.emit({"well_defined": ok}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_mwf(session: Session, args: argparse.Namespace) -> int:
    from .diffmaps import check_map_well_defined

    S = _need_surface(session)
    images = parse_images(_argvalue(args.map), S)
    ok = check_map_well_defined(images, S)
    session.emit({"well_defined": ok}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_apply(session: Session, args: argparse.Namespace) -> int:
    S = _need_surface(session)
    target = S.element(parse_expression(_argvalue(args.expr), S.variables))
    if "D" in session.derivations:
        result = session.derivations["D"].apply(target)
    elif "M" in session.maps:
        result = session.maps["M"].apply(target)
    else:
        raise ValueError("apply needs --derivation or --map")
    session.emit({"result": str(result)}, str(result))
    return EXIT_OK


def _cmd_commute(session: Session, args: argparse.Namespace) -> int:
    if "M" not in session.maps or "D" not in session.derivations:
        raise ValueError("commute needs both --map and --derivation")
    result = commutes(session.maps["M"], session.derivations["D"])
    payload: dict = {"commutes": result.commutes}
    if result.commutes:
        session.emit(payload, "true")
        return EXIT_OK
    payload["witness"] = {"generator": result.generator,
                          "difference": str(result.difference)}
    session.emit(payload, f"false (witness {result.generator}: {result.difference})")
    return EXIT_CHECK_FAILED


def _cmd_lnd(session: Session, args: argparse.Namespace) -> int:
    if "D" not in session.derivations:
        raise ValueError("lnd needs --derivation")
    report = is_locally_nilpotent(session.derivations["D"], session.cap)
    payload = {
        "indices": {v: k for v, k in report.indices.items()},
        "cap": report.cap,
        "locally_nilpotent": report.all_nilpotent,
    }
    session.emit(payload, str(report))
    return EXIT_OK if report.all_nilpotent else EXIT_CHECK_FAILED


def _cmd_exp(session: Session, args: argparse.Namespace) -> int:
    if "D" not in session.derivations:
        raise ValueError("exp needs --derivation")
    D = session.derivations["D"]
    scale_text = _argvalue(getattr(args, "scale", None))
    if scale_text is not None:
        S = _need_surface(session)
        w = S.element(parse_expression(scale_text, S.variables))
        D = D.scaled_by(w)
    try:
        rho = exp_derivation(D, session.cap)
    except CapExceededError as exc:
        session.emit({"error": str(exc)}, f"error: {exc}")
        return EXIT_CHECK_FAILED
    session.emit({"map": str(rho)}, str(rho))
    return EXIT_OK


def _cmd_bound(session: Session, args: argparse.Namespace) -> int:
    g = parse_expression(_argvalue(args.g), ("x",))
    bound = hyperbolic_order_bound(g, args.n)
    session.emit({"bound": bound}, str(bound))
    return EXIT_OK


def _cmd_classify(session: Session, args: argparse.Namespace) -> int:
    phi = parse_expression(_argvalue(args.phi), ("z",))
    shape = classify_phi(phi)
    payload: dict = {"degree": shape.degree}
    text = [f"degree: {shape.degree}"]
    if shape.power is not None:
        c, a = shape.power
        payload["power"] = {"c": str(c), "a": str(a)}
        text.append(f"power form: c = {c}, a = {a}")
    else:
        payload["power"] = None
        text.append("power form: none")
    i, m, phi0 = shape.periodic
    payload["periodic"] = {"i": i, "m": m, "phi0": str(phi0)}
    text.append(f"periodic form: i = {i}, m = {m}, phi0 = {phi0}")
    session.emit(payload, "\n".join(text))
    return EXIT_OK


def _suite_surface(session: Session, args: argparse.Namespace) -> SurfaceSpec:
    S = session.surface
    if S is None:
        raise ValueError("verify needs a surface (--phi with --f or --n, or --surface)")
    return S


def _cmd_verify(session: Session, args: argparse.Namespace) -> int:
    S = _suite_surface(session, args)
    g = parse_expression(_argvalue(args.g), ("x",)) if args.g else MultiPoly.one()
    plan = SamplingPlan(h_degrees=tuple(range(args.hdeg + 1)), seed=session.seed)
    report = verify_isotropy_theorem(S, g, plan)
    session.emit(report.to_dict(), report.render_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_plane_example(session: Session, args: argparse.Namespace) -> int:
    p = parse_scalar(_argvalue(args.p))
    report = plane_example_suite(args.s, p, SamplingPlan(seed=session.seed))
    session.emit(report.to_dict(), report.render_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="danisurf",
        description="exact computations on Danielewski surfaces and their "
                    "locally nilpotent derivations")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, surface=False, derivation=False,
               map_=False, cap=False, seed=False) -> None:
        if surface:
            p.add_argument("--surface", help="'f=<expr>; phi=<expr>' or 'free: X,Y' (@file allowed)")
            p.add_argument("--f", help="f(x) for a relation surface")
            p.add_argument("--n", type=int, help="shorthand for f = x^n")
            p.add_argument("--phi", help="phi(z) for a relation surface")
        if derivation:
            p.add_argument("--derivation", help="'x -> <expr>; ...' image table (@file allowed)")
        if map_:
            p.add_argument("--map", help="'x -> <expr>; ...' image table (@file allowed)")
            p.add_argument("--h", help="shorthand for --map: the triangular generator with this h(x)")
        if cap:
            p.add_argument("--cap", type=int, help="iteration cap override")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="sampling seed")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("nf", help="normal form of an expression")
    common(p, surface=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=_cmd_nf)

    p = sub.add_parser("eq", help="equality of two elements")
    common(p, surface=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=_cmd_eq)

    p = sub.add_parser("dwf", help="is the image table a well-defined derivation")
    common(p, surface=True)
    p.add_argument("--derivation", required=True)
    p.set_defaults(handler=_cmd_dwf, skip_session_derivation=True)

    p = sub.add_parser("mwf", help="is the image table a well-defined ring map")
    common(p, surface=True)
    p.add_argument("--map", required=True)
    p.set_defaults(handler=_cmd_mwf, skip_session_map=True)

    p = sub.add_parser("apply", help="apply a derivation or map to an expression")
    common(p, surface=True, derivation=True, map_=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(handler=_cmd_apply)

    p = sub.add_parser("commute", help="does the map commute with the derivation")
    common(p, surface=True, derivation=True, map_=True)
    p.set_defaults(handler=_cmd_commute)

    p = sub.add_parser("lnd", help="local nilpotency report")
    common(p, surface=True, derivation=True, cap=True)
    p.set_defaults(handler=_cmd_lnd)

    p = sub.add_parser("exp", help="exponential automorphism of a derivation")
    common(p, surface=True, derivation=True, cap=True)
    p.add_argument("--scale", help="kernel element w: exponentiate w*D")
    p.set_defaults(handler=_cmd_exp)

    p = sub.add_parser("bound", help="gcd order bound for hyperbolic rotations")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("classify", help="shape classification of phi")
    p.add_argument("--phi", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("verify", help="isotropy theorem suite on one surface")
    common(p, surface=True, seed=True)
    p.add_argument("--suite", choices=("xy", "xn", "fx"),
                   help="expected surface class (checked against f)")
    p.add_argument("--g", help="g(x) defining the derivation (default 1)")
    p.add_argument("--hdeg", type=int, default=4, help="max sampled degree of h")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("plane-example", help="plane isotropy sweep for d = X dX + (Y^s + pX) dY")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--p", required=True, help="nonzero scalar")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_plane_example)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        session = _build_session(args)
        if getattr(args, "suite", None):
            from .isotropy import surface_class

            S = _need_surface(session)
            actual = surface_class(S)
            if actual != args.suite:
                raise ValueError(
                    f"surface has class {actual!r}, not requested {args.suite!r}")
        return args.handler(session, args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
