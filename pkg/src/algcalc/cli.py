"""Batch command-line front end.

Exit codes: 0 every check passed, 1 a mathematical check failed, 2 the input
could not be read or parsed.
"""

import argparse
import random
import sys

from . import io
from .io import ParseError
from .report import Report
from .scalar import Scalar, format_scalar
from .linalg import span_rank
from .algebra import FDAlgebra, center, derivations, inner_derivation
from .lie import JacobiError, LieAlgebra, Representation, betti_table
from .ncdiff import matrix_geometry, maurer_cartan_matrix
from .connections import LinearConnectionMn, mn_curvature, mn_torsion
from .hopf import (HopfAlgebra, RMatrix, UQ_DEFAULT_CAP, dual_pairing_check, evaluation_pairing,
                   qybe_check, uq_bplus, verify_hopf)

__all__ = ["main", "build_parser", "run"]

DEFAULT_SEED = 0


def _expect(obj, cls, ref):
    if not isinstance(obj, cls):
        raise ParseError(f"{ref!r} is not a {cls.__name__} file")
    return obj


# check-algebra --------------------------------------------------------------------------

def cmd_check_algebra(args, rep):
    alg = _expect(io.load(args.path, check=False), FDAlgebra, args.path)
    rep.instance.update(name=alg.name or args.path, dim=alg.dim)
    failure = alg.find_violation()
    rep.verdict("associativity and unit", failure is None, rows=[[failure]] if failure else ())
    if failure:
        return
    z = center(alg)
    rep.info("center", ["dim"], [[len(z)]])
    ders = derivations(alg)
    rep.info("derivations", ["dim"], [[len(ders)]])
    inner = [inner_derivation(alg.element(alg.basis_vector(i))).vector() for i in range(alg.dim)]
    rep.info("inner derivations", ["dim"], [[span_rank(inner)]])


# cohomology -----------------------------------------------------------------------------

def _format_cochain(c, names):
    parts = []
    for key, vec in sorted(c.components.items()):
        if any(vec):
            label = "^".join(names[i] for i in key) or "1"
            vals = ", ".join(format_scalar(x) for x in vec)
            parts.append(f"{label}: [{vals}]")
    return "; ".join(parts)


def cmd_cohomology(args, rep):
    try:
        g = _expect(io.load(args.path, check=False), LieAlgebra, args.path)
    except JacobiError as exc:
        rep.verdict("Jacobi identity", False, ["witness"], [[exc.witness]], notes=[str(exc)])
        return
    rep.instance.update(name=g.name or args.path, dim=g.dim)
    w = g.jacobi_violation()
    rep.verdict("Jacobi identity", w is None, ["witness"], [[w]] if w else ())
    if w:
        return
    if args.module == "trivial":
        module = Representation.trivial(g)
    elif args.module == "adjoint":
        module = Representation.adjoint(g)
    else:
        try:
            module = _expect(io.load(args.module, check=False), Representation, args.module)
        except JacobiError as exc:
            rep.verdict("representation identity", False, ["witness"], [[exc.witness]])
            return
        if module.lie != g:
            raise ParseError(f"module {args.module!r} is over a different Lie algebra")
        w = module.violation()
        rep.verdict("representation identity", w is None, ["witness"], [[w]] if w else ())
        if w:
            return
    rep.instance.update(module=args.module, module_dim=module.module_dim)
    top = g.dim if args.max_degree is None else min(args.max_degree, g.dim)
    res = betti_table(module, top, representatives=args.representatives)
    rep.info("Betti numbers", ["degree", "betti", "rank d"],
             [[k, b, r] for k, (b, r) in enumerate(zip(res.betti, res.ranks))],
             notes=["betti: " + " ".join(str(b) for b in res.betti)])
    if args.representatives:
        rows = [[k, i + 1, _format_cochain(c, g.basis_names)] for k, cs in enumerate(res.representatives)
                for i, c in enumerate(cs)]
        rep.info("cocycle representatives", ["degree", "#", "components"], rows)


# matrix-geometry ------------------------------------------------------------------------

def _random_matrix_element(alg, rng):
    return [Scalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(alg.dim)]


def cmd_matrix_geometry(args, rep):
    basis = None
    if args.basis:
        b = io.load(args.basis)
        if not isinstance(b, dict) or "epsilon" not in b:
            raise ParseError(f"{args.basis!r} is not a basis file")
        if b["n"] != args.n:
            raise ParseError(f"basis file is for n={b['n']}, not n={args.n}")
        basis = b["epsilon"]
    try:
        geo = matrix_geometry(args.n, basis)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    N = geo.dim
    rep.instance.update(n=args.n, derivations=N, basis=geo.metadata["basis"], connection=args.connection)
    c = geo.structure_constants()
    rows = [[f"c^{s + 1}_{r + 1}{q + 1}" if N < 10 else f"c^{s + 1}_{r + 1},{q + 1}", c[r][q][s]]
            for r in range(N) for q in range(r + 1, N) for s in range(N) if c[r][q][s]]
    rep.info("structure constants [u_r, u_q] = c^s_rq u_s (r < q, nonzero)", ["entry", "value"], rows)
    w = geo.dual_basis_violation()
    rep.verdict("theta^r(u_q) = delta^r_q", w is None, ["witness"], [[w]] if w else ())
    mc = maurer_cartan_matrix(geo)
    rep.check("Maurer-Cartan residuals d theta^r + 1/2 c^r_qs theta^q theta^s", ["r"], [[r + 1] for r, _ in mc])
    de = geo.d_epsilon_residuals()
    rep.check("d eps_r = c^s_qr eps_s theta^q", ["r"], [[r + 1] for r, _ in de])
    rng = random.Random(args.seed)
    bad = []
    for k in range(args.samples):
        a = _random_matrix_element(geo.algebra, rng)
        if not geo.da_residual(a).is_zero():
            bad.append([k])
    rep.check(f"da = a theta - theta a on {args.samples} random a", ["sample"], bad)

    if args.connection == "flat":
        conn = LinearConnectionMn.flat(geo)
    elif args.connection == "torsion-free":
        conn = LinearConnectionMn.scaled_structure(geo, Scalar(-1, 0) / 2)
    else:
        cf = io.load(args.connection)
        if not isinstance(cf, dict) or "omega" not in cf:
            raise ParseError(f"{args.connection!r} is not a connection file")
        if cf["n"] != args.n or len(cf["omega"]) != N or any(len(m) != N or any(len(r) != N for r in m)
                                                            for m in cf["omega"]):
            raise ParseError(f"connection file must hold an {N} x {N} x {N} omega array for n={args.n}")
        conn = LinearConnectionMn(geo, cf["omega"])
    T = mn_torsion(conn)
    trows = [[f"T^{p + 1}_{r + 1}{q + 1}", T[p][r][q]] for p in range(N) for r in range(N)
             for q in range(r + 1, N) if T[p][r][q]]
    rep.info("torsion (r < q, nonzero)", ["entry", "value"], trows, notes=[] if trows else ["all zero"])
    if args.connection == "flat":
        off = [[p + 1, r + 1, q + 1] for p in range(N) for r in range(N) for q in range(N)
               if T[p][r][q] != -c[r][q][p]]
        rep.check("flat connection: torsion = -c^p_rq", ["p", "r", "q"], off)
    elif args.connection == "torsion-free":
        off = [[p + 1, r + 1, q + 1] for p in range(N) for r in range(N) for q in range(N) if T[p][r][q]]
        rep.check("torsion vanishes", ["p", "r", "q"], off)
    R = mn_curvature(conn)
    rrows = [[f"R^{p + 1}_{t + 1} {r + 1}{q + 1}", R[p][t][r][q]] for p in range(N) for t in range(N)
             for r in range(N) for q in range(r + 1, N) if R[p][t][r][q]]
    rep.info("curvature (r < q, nonzero)", ["entry", "value"], rrows, notes=[] if rrows else ["all zero"])
    if args.connection == "flat":
        rep.check("flat connection: curvature vanishes", ["entry"], [[r[0]] for r in rrows])


# hopf -------------------------------------------------------------------------------------

def _laws(rep, report):
    for law in report.laws:
        rep.verdict(law.name, law.passed, ["witness"] if not law.passed else (),
                    [[law.witness]] if not law.passed else ())


def _load_hopf(ref):
    return _expect(io.load(ref, check=False), HopfAlgebra, ref)


def cmd_hopf_check(args, rep):
    h = _load_hopf(args.path)
    rep.instance.update(name=h.name or args.path, dim=h.dim)
    failure = h.algebra.find_violation()
    rep.verdict("associativity and unit", failure is None, rows=[[failure]] if failure else ())
    if failure:
        return
    _laws(rep, verify_hopf(h))
    rep.info("properties", ["property", "value"],
             [["commutative", h.is_commutative()], ["cocommutative", h.is_cocommutative()],
              ["S^2 = Id", h.antipode_squared_is_identity()]])


def cmd_hopf_qybe(args, rep):
    h = _load_hopf(args.path)
    rep.instance.update(name=h.name or args.path, dim=h.dim, r=args.r)
    try:
        if args.r == "identity":
            R = RMatrix.identity(h)
        else:
            rf = io.load(args.r)
            if not isinstance(rf, dict) or "coords" not in rf:
                raise ParseError(f"{args.r!r} is not an R-matrix file")
            if len(rf["coords"]) != h.dim ** 2:
                raise ParseError(f"R-matrix needs {h.dim ** 2} coordinates")
            R = RMatrix(h, rf["coords"])
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        rep.verdict("R-matrix invertible", False, notes=[str(exc)])
        return
    rep.verdict("R-matrix invertible", True)
    res = qybe_check(R, h, quasi_triangular=not args.no_quasi)
    for law in res.laws:
        w = law.witness
        if isinstance(w, dict):
            rows = [[k, v] for k, v in w.items()]
            rep.verdict(law.name, law.passed, ["index", "residual"] if rows else (), rows)
        else:
            if isinstance(w, int):
                w = f"{w} ({h.algebra.basis_names[w]})"
            rep.verdict(law.name, law.passed, ["witness"] if w is not None else (),
                        [[w]] if w is not None else ())


def cmd_hopf_pairing(args, rep):
    hA, hB = _load_hopf(args.first), _load_hopf(args.second)
    rep.instance.update(first=hA.name or args.first, second=hB.name or args.second, pairing=args.pairing)
    if args.pairing == "evaluation":
        if hA.dim != hB.dim:
            raise ParseError("evaluation pairing needs algebras of equal dimension")
        P = evaluation_pairing(hA, hB)
    else:
        P = io.load(args.pairing)
        if not isinstance(P, list) or len(P) != hA.dim or any(len(r) != hB.dim for r in P):
            raise ParseError(f"pairing matrix must be {hA.dim} x {hB.dim}")
    _laws(rep, dual_pairing_check(hA, hB, P))


def cmd_hopf_uq(args, rep):
    q = io.scalar_in(args.q, "--q")
    if not q:
        raise ParseError("q must be nonzero")
    if not q.is_real():
        raise ParseError("q must be rational")
    if args.cap < 1:
        raise ParseError("--cap must be positive")
    U = uq_bplus(q, args.cap)
    rep.instance.update(q=format_scalar(q), degree_cap=args.cap)
    rep.info("generators", ["expression", "normal form"],
             [["g a", _uq_str(U.normal_form("ga"))], ["Delta(a)", _uq_tensor_str(U.delta(U.a()))],
              ["S(a)", _uq_str(U.S(U.a()))]])
    _laws(rep, U.verify())
    rep.info("scope", notes=[f"laws checked on monomials a^m g^k with m + |k| <= {args.cap}"])


def _uq_mono(m, k):
    parts = []
    if m:
        parts.append("a" if m == 1 else f"a^{m}")
    if k:
        parts.append("g" if k == 1 else f"g^{k}")
    return " ".join(parts) or "1"


def _uq_str(x):
    return " + ".join(f"({format_scalar(c)}) {_uq_mono(*key)}" for key, c in sorted(x.items())) or "0"


def _uq_tensor_str(t):
    return " + ".join(f"({format_scalar(c)}) {_uq_mono(*a)} (x) {_uq_mono(*b)}"
                      for (a, b), c in sorted(t.items())) or "0"


# driver ---------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="algcalc", description="Exact noncommutative differential calculus checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-algebra", parents=[common], help="associativity, center, derivations")
    s.add_argument("path")
    s.set_defaults(func=cmd_check_algebra)

    s = sub.add_parser("cohomology", parents=[common], help="Chevalley-Eilenberg Betti numbers")
    s.add_argument("path")
    s.add_argument("--module", default="trivial", help="trivial, adjoint or a representation file")
    s.add_argument("--max-degree", type=int, default=None)
    s.add_argument("--representatives", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("matrix-geometry", parents=[common], help="derivation calculus over M_n")
    s.add_argument("n", type=int)
    s.add_argument("--connection", default="flat", help="flat, torsion-free or a connection file")
    s.add_argument("--basis", default=None, help="file with the eps_r matrices")
    s.add_argument("--samples", type=int, default=20)
    s.set_defaults(func=cmd_matrix_geometry)

    h = sub.add_parser("hopf", help="Hopf algebra checks")
    hsub = h.add_subparsers(dest="hopf_command", required=True)
    s = hsub.add_parser("check", parents=[common])
    s.add_argument("path")
    s.set_defaults(func=cmd_hopf_check)
    s = hsub.add_parser("qybe", parents=[common])
    s.add_argument("path")
    s.add_argument("--r", default="identity", help="identity or an R-matrix file")
    s.add_argument("--no-quasi", action="store_true", help="skip the quasi-triangularity laws")
    s.set_defaults(func=cmd_hopf_qybe)
    s = hsub.add_parser("pairing", parents=[common])
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--pairing", default="evaluation", help="evaluation or a pairing-matrix file")
    s.set_defaults(func=cmd_hopf_pairing)
    s = hsub.add_parser("uq", parents=[common])
    s.add_argument("--q", default="2/1")
    s.add_argument("--cap", type=int, default=UQ_DEFAULT_CAP)
    s.set_defaults(func=cmd_hopf_uq)
    return p


def run(argv):
    """Returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    rep = Report("algcalc " + " ".join(argv), seed=args.seed)
    try:
        args.func(args, rep)
    except ParseError as exc:
        return 2, "", f"algcalc: error: {exc}\n"
    return rep.exit_code, rep.render(args.format), ""


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else list(argv))
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
