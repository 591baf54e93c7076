"""Command-line front end.

Every command loads a problem bundle (a path or the name of a bundled example),
runs one verification suite and prints a report.  Exit status: 0 pass,
1 refutation, 2 inconclusive, 3 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .actions import (ActionError, covering_presentation, smash_product, verify_covering_iso,
                      verify_module_algebra)
from .dg import (DGError, cohomology_algebra, dg_smash_cohomology_check,
                 euler_characteristic_check, verify_dg)
from .ext import (associativity_check, product_rank_profile, smash_presentation,
                  verify_cor_ext, verify_thm_koszul_transfer, yoneda_ext_algebra)
from .fdalgebra import truncated_algebra
from .frobenius import cy_check, graded_symmetric_check
from .hopf import left_integral, verify_hopf_axioms
from .io import BundleError, ProblemBundle, load_bundle, parse_action
from .modules import adjoint_phi, regular_module, resolution_piece, theta
from .quiver import Presentation, hilbert_function
from .report import Report
from .resolution import d_koszul_check, gorenstein_check_bounded, minimal_resolution
from .superpotential import (SuperpotentialError, cyclic_derivative, euler_identity_check,
                             ideal_equality_check, jacobian_presentation, lift_superpotential)

ERROR_EXIT = 3


class CommandError(ValueError):
    pass


def _bounds(args, b: ProblemBundle) -> tuple[int, int]:
    N = args.hmax if args.hmax is not None else b.bounds.get("N", 4)
    D = args.dmax if args.dmax is not None else b.bounds.get("D", 6)
    return int(N), int(D)


def _d(args, b: ProblemBundle) -> int:
    return int(args.d if args.d is not None else b.bounds.get("d", 2))


def _seed(args, b: ProblemBundle) -> int:
    return int(args.seed if args.seed is not None else b.seed)


def _range(args, b: ProblemBundle):
    r = args.range if args.range is not None else b.bounds.get("range")
    return None if r is None else int(r)


def _graded_by_dual(b: ProblemBundle) -> bool:
    G = b.group
    return (G is not None and b.hopf is not None and b.action is not None
            and b.hopf.labels == tuple(f"p_{g}" for g in G.labels))


def _target(args, b: ProblemBundle) -> Presentation:
    """The algebra a single-algebra command works on: R#kG* via the covering
    for dual-group bundles (unless --base), R otherwise."""
    b.require("presentation")
    if _graded_by_dual(b) and not args.base:
        S, _ = covering_presentation(b.presentation)
        return replace(S, name=f"{b.presentation.name or 'R'}#{b.hopf.name}")
    return b.presentation


# commands -------------------------------------------------------------------

def cmd_verify_hopf(args, b: ProblemBundle) -> Report:
    b.require("hopf")
    rep = verify_hopf_axioms(b.hopf)
    L = left_integral(b.hopf)
    rep.details["integral"] = b.hopf.element_label(L.element)
    rep.details["semisimple"] = L.semisimple
    rep.check("normalized integral exists (semisimple)", L.normalized and L.semisimple)
    return rep


def cmd_smash(args, b: ProblemBundle) -> Report:
    b.require("presentation", "hopf", "action")
    N, D = _bounds(args, b)
    P, H, act = b.presentation, b.hopf, b.action
    rep = Report(f"smash product {P.name or b.name}#{H.name}", bounds={"D": D})
    ma = verify_module_algebra(P, H, act, D)
    if not rep.check("H-module algebra", bool(ma), ma.first_failure or ""):
        return rep
    A = smash_product(P, H, act, D)
    base = hilbert_function(P, D)
    rep.details["dims R"] = base
    rep.details["dims R#H"] = A.dims
    rep.check("dim (R#H)_d = dim R_d * dim H", A.dims == [d * H.dim for d in base])
    assoc = A.associativity_check(seed=_seed(args, b))
    rep.check("associativity on random homogeneous triples", bool(assoc),
              assoc.first_failure or "")
    return rep


def cmd_cover(args, b: ProblemBundle) -> Report:
    b.require("presentation")
    P = b.presentation
    if P.group is None:
        raise CommandError("the cover command needs a G-graded presentation")
    N, D = _bounds(args, b)
    rep = verify_covering_iso(P, D=D)
    S, _ = covering_presentation(P)
    rep.details["covering"] = {"vertices": [v for v in S.quiver.vertices],
                               "arrows": [f"{a.label}: {S.quiver.vertices[a.source]} -> "
                                          f"{S.quiver.vertices[a.target]}" for a in S.quiver.arrows],
                               "relations": [str(r) for r in S.relations]}
    return rep


def _resolution(args, b: ProblemBundle, P: Presentation):
    N, D = _bounds(args, b)
    equivariant = None
    if getattr(args, "equivariant", None) is not None:
        b.require("hopf")
        if args.equivariant == "bundle":
            b.require("action")
            act = b.action
        else:
            act = parse_action(json.loads(Path(args.equivariant).read_text()), b.hopf, P)
        equivariant = (act.hopf, act)
    return minimal_resolution(P, N=N, D=D, equivariant=equivariant)


def cmd_resolve(args, b: ProblemBundle) -> Report:
    P = _target(args, b) if args.equivariant is None else b.presentation
    res = _resolution(args, b, P)
    rep = res.certificate()
    rep.details["length"] = res.length
    return rep


def cmd_ext(args, b: ProblemBundle) -> Report:
    P = _target(args, b)
    N, D = _bounds(args, b)
    res = minimal_resolution(P, N=N, D=D)
    E = yoneda_ext_algebra(res, _range(args, b))
    rep = associativity_check(E)
    rep.bounds.update(N=N, D=D)
    rep.details["dims"] = E.dims
    rep.details["bigraded dims"] = {f"{n},{j}": c for (n, j), c in sorted(E.bigraded_dims.items())}
    if args.products:
        rep.details["product ranks"] = {f"{i}*{j}": r for (i, j), r in
                                        sorted(product_rank_profile(E).items())}
        table = {}
        for x in range(E.dim):
            for y in range(E.dim):
                if E.hdeg(x) + E.hdeg(y) > E.range:
                    continue
                prod = E.mul({x: 1}, {y: 1})
                if prod:
                    table[f"{E.label(x)} * {E.label(y)}"] = " + ".join(
                        f"{c}*{E.label(k)}" for k, c in sorted(prod.items()))
        rep.details["products"] = table
    return rep


def cmd_koszul(args, b: ProblemBundle) -> Report:
    P = _target(args, b)
    N, D = _bounds(args, b)
    rep = d_koszul_check(minimal_resolution(P, N=N, D=D), _d(args, b))
    rep.bounds.update(N=N, D=D)
    return rep


def cmd_gorenstein(args, b: ProblemBundle) -> Report:
    N, D = _bounds(args, b)
    return gorenstein_check_bounded(_target(args, b), N=N, D=D)


def cmd_symmetric(args, b: ProblemBundle) -> Report:
    P = _target(args, b)
    N, D = _bounds(args, b)
    res = minimal_resolution(P, N=N, D=D)
    E = yoneda_ext_algebra(res, _range(args, b) or res.length)
    rep = graded_symmetric_check(E, seed=_seed(args, b)).report()
    rep.bounds.update(N=N, D=D)
    rep.details["ext dims"] = E.dims
    return rep


def cmd_cy(args, b: ProblemBundle) -> Report:
    N, D = _bounds(args, b)
    return cy_check(_target(args, b), d=_d(args, b), N=N, D=D, seed=_seed(args, b))


def cmd_superpotential(args, b: ProblemBundle) -> Report:
    b.require("presentation", "superpotential")
    W, P = b.superpotential, b.presentation
    N, D = _bounds(args, b)
    if args.action == "derive":
        rep = Report("cyclic derivatives", bounds={"D": D})
        rep.details["W"] = repr(W)
        rep.details["derivatives"] = {a.label: str(cyclic_derivative(W, i))
                                      for i, a in enumerate(P.quiver.arrows)}
        rep.check("Euler identity sum_a a d_a W = rotation sum of W", euler_identity_check(W))
        J = jacobian_presentation(W)
        eq = ideal_equality_check(P.quiver, J.relations, P.relations, D)
        rep.check("derivatives generate the ideal of relations", bool(eq), eq.first_failure or "")
        rep.details["dims"] = eq.details["dims_A"]
        return rep
    if args.action == "lift":
        rep = Report("lifted superpotential", bounds={"D": D})
        Wl, cov = lift_superpotential(W)
        S, _ = covering_presentation(P)
        rep.details["W"] = repr(W)
        rep.details["lift"] = repr(Wl)
        J = jacobian_presentation(Wl)
        eq = ideal_equality_check(S.quiver, J.relations, S.relations, D)
        rep.check("Jacobian ideal of the lift equals the covering relations", bool(eq),
                  eq.first_failure or "")
        rep.details["dims"] = eq.details["dims_A"]
        return rep
    rep = Report("Jacobian algebra", bounds={"D": D})
    J = jacobian_presentation(W)
    hj, hp = hilbert_function(J, D), hilbert_function(P, D)
    rep.details["relations"] = [str(r) for r in J.relations]
    rep.details["dims J(Q,W)"] = hj
    rep.details["dims R"] = hp
    rep.check("Hilbert function of J(Q,W) equals that of R", hj == hp)
    return rep


def _truncation(args, b: ProblemBundle):
    b.require("presentation", "hopf", "action")
    t = args.trunc
    A = truncated_algebra(b.presentation, t)
    return A, b.hopf, b.action.truncate(A)


def cmd_verify_theta(args, b: ProblemBundle) -> Report:
    A, H, act = _truncation(args, b)
    th = theta(regular_module(A, H, act), random_pairs=args.pairs, seed=_seed(args, b))
    rep = th.report
    rep.bounds.update(truncation=args.trunc)
    return rep


def cmd_verify_adjoint(args, b: ProblemBundle) -> Report:
    b.require("presentation", "hopf", "action")
    N, D = _bounds(args, b)
    H, P = b.hopf, b.presentation
    A = truncated_algebra(P, args.trunc)
    res = minimal_resolution(P, N=max(N, args.piece + 1), D=D, equivariant=(H, b.action))
    M = resolution_piece(res, args.piece, A, args.trunc)
    phi = adjoint_phi(H.left_regular, M, M)
    rep = phi.report
    rep.bounds.update(truncation=args.trunc, piece=args.piece)
    return rep


def cmd_verify_cor_ext(args, b: ProblemBundle) -> Report:
    b.require("presentation", "hopf", "action")
    N, D = _bounds(args, b)
    return verify_cor_ext(b.presentation, b.hopf, b.action, N=N, D=D, range_=_range(args, b))


def cmd_verify_koszul_transfer(args, b: ProblemBundle) -> Report:
    b.require("presentation", "hopf", "action")
    N, D = _bounds(args, b)
    return verify_thm_koszul_transfer(b.presentation, b.hopf, b.action, d=_d(args, b), N=N, D=D)


def cmd_verify_prop_cohomology(args, b: ProblemBundle) -> Report:
    b.require("dg")
    A = b.dg
    rep = Report(f"dg algebra {A.name}")
    vd = verify_dg(A)
    if not rep.check("dg axioms", bool(vd), vd.first_failure or ""):
        return rep
    HA = cohomology_algebra(A, alternate_seed=_seed(args, b))
    rep.details["dims H(A)"] = HA.dims
    rep.check("Euler characteristic of A equals that of H(A)", euler_characteristic_check(A, HA))
    if b.dg_action is not None:
        sm = dg_smash_cohomology_check(A, b.dg_action.hopf, b.dg_action)
        rep.details.update(sm.details)
        rep.check("H(A#H) = H(A)#H", bool(sm), sm.first_failure or "")
    return rep


def cmd_demo(args, b: ProblemBundle) -> Report:
    b.require("presentation", "hopf", "action")
    N, D = _bounds(args, b)
    d = _d(args, b)
    P, H, act = b.presentation, b.hopf, b.action
    rep = Report(f"demo on {b.name}", bounds={"N": N, "D": D, "d": d})
    steps = []
    if _graded_by_dual(b):
        steps.append(("covering iso R#kG* = S", verify_covering_iso(P, D=min(D, 5))))
    steps.append(("Koszul transfer", verify_thm_koszul_transfer(P, H, act, d=d, N=N, D=D)))
    steps.append(("Calabi-Yau (base)", cy_check(P, d=d, N=N, D=D, seed=_seed(args, b))))
    B = _target(argparse.Namespace(base=False), b) if _graded_by_dual(b) else None
    if B is not None:
        steps.append(("Calabi-Yau (smash)", cy_check(B, d=d, N=N, D=D, seed=_seed(args, b))))
    for label, sub in steps:
        rep.details[label] = sub.to_dict()
        if sub.passed is None:
            rep.inconclusive(f"{label}: {sub.first_failure}")
        else:
            rep.check(label, sub.passed, sub.first_failure or "")
    return rep


COMMANDS = {
    "verify-hopf": (cmd_verify_hopf, "Hopf axioms, integral and semisimplicity"),
    "smash": (cmd_smash, "module-algebra axioms, dims and associativity of R#H"),
    "cover": (cmd_cover, "covering quiver S and the isomorphism R#kG* = S"),
    "resolve": (cmd_resolve, "minimal graded resolution of R_0 and its Betti table"),
    "ext": (cmd_ext, "Yoneda Ext algebra"),
    "koszul": (cmd_koszul, "d-Koszul test"),
    "gorenstein": (cmd_gorenstein, "bounded AS-Gorenstein test"),
    "symmetric": (cmd_symmetric, "graded symmetric form on the Ext algebra"),
    "cy": (cmd_cy, "Calabi-Yau test through the Ext algebra"),
    "superpotential": (cmd_superpotential, "cyclic derivatives, lifts and Jacobian algebras"),
    "verify-theta": (cmd_verify_theta, "theta: End_A(M)#H -> End_{A#H}(M (x) H)"),
    "verify-adjoint": (cmd_verify_adjoint, "H-equivariance of the adjunction isomorphism"),
    "verify-cor-ext": (cmd_verify_cor_ext, "Ext over A#H as H-invariants"),
    "verify-koszul-transfer": (cmd_verify_koszul_transfer, "Koszulity and Ext of R#H"),
    "verify-prop-cohomology": (cmd_verify_prop_cohomology, "H(A#H) = H(A)#H for dg algebras"),
    "demo": (cmd_demo, "covering iso, Koszul transfer and CY on one bundle"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfsmash", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        if name == "superpotential":
            p.add_argument("action", choices=["derive", "lift", "jacobian"])
        p.add_argument("bundle", nargs="?" if name == "demo" else None,
                       default="kxyz_n3" if name == "demo" else None,
                       help="bundle file or bundled example name")
        p.add_argument("--hmax", type=int, help="homological bound N (default 4)")
        p.add_argument("--dmax", type=int, help="internal degree bound D (default 6)")
        p.add_argument("--seed", type=int, help="seed for random checks (default 0)")
        p.add_argument("--range", type=int, help="homological range for Ext products")
        p.add_argument("--d", type=int, help="relation degree for d-Koszul tests (default 2)")
        p.add_argument("--json", metavar="OUT", help="also write the report as JSON")
        p.add_argument("--base", action="store_true",
                       help="work on R instead of R#kG* for dual-group bundles")
        p.add_argument("--quiet", action="store_true", help="print only the status line")
        if name == "resolve":
            p.add_argument("--equivariant", nargs="?", const="bundle", metavar="ACTION_JSON",
                           help="H-equivariant resolution (bundle action or action file)")
        if name == "ext":
            p.add_argument("--products", action="store_true", help="print the product table")
        if name in ("verify-theta", "verify-adjoint"):
            p.add_argument("--trunc", type=int, default=2, help="truncation degree (default 2)")
        if name == "verify-theta":
            p.add_argument("--pairs", type=int, default=100, help="random pairs (default 100)")
        if name == "verify-adjoint":
            p.add_argument("--piece", type=int, default=1, help="resolution piece P^-n (default 1)")
    return parser


def run(command: str, b: ProblemBundle, args) -> Report:
    fn, _ = COMMANDS[command]
    rep = fn(args, b)
    rep.details.setdefault("bundle", b.name)
    rep.details.setdefault("seed", _seed(args, b))
    return rep


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        b = load_bundle(args.bundle)
        rep = run(args.command, b, args)
    except (BundleError, CommandError, ActionError, DGError, SuperpotentialError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT
    if args.quiet:
        print(f"[{rep.status.upper()}] {rep.name}")
    else:
        print(rep.text())
    if args.json:
        Path(args.json).write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
