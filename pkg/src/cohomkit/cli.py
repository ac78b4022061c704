"""Command-line front end.

Subcommands mirror the library layers:

    cohomkit lie        validate | perfect | cohomology | generate | ideal
    cohomkit group      h | cocycles | extension build/equiv/split | correspondence
    cohomkit modular    analyze
    cohomkit spacetime  boost | boost-generation | complement

Every command prints a report (JSON by default, `--format text` for humans)
and exits 0 on success, 1 on mathematical failure (validation defect, failed
generation, refusal), 2 on usage or parse errors.  Reports are deterministic
for fixed inputs and seed: timing is only included under `--timing`, and any
randomized computation requires an explicit `--seed`.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2


class MathFailure(Exception):
    """Carries a payload describing a mathematically failed run."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "mathematical failure"))
        self.payload = payload


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SystemExit(
            f"cannot parse {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _fractions(values):
    return [Fraction(v) if isinstance(v, str) else Fraction(v) for v in values]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TOOLKIT_THREADS", "1")))
    except ValueError:
        return 1


def _emit(args, payload: dict, inputs: dict[str, str], started: float,
          seed=None, failed: bool = False) -> int:
    report = {
        "command": args._command_echo,
        "inputs": inputs,
        "result": payload,
        "version": __version__,
        "threads": _threads(),
    }
    if seed is not None:
        report["seed"] = seed
    if args.timing:
        report["elapsed_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        _print_text(report)
    return EXIT_MATH if failed else EXIT_OK


def _print_text(report: dict, indent: int = 0) -> None:
    for key in sorted(report):
        value = report[key]
        pad = "  " * indent
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _print_text(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            print(f"{pad}{key}: [{len(value)} entries]")
        else:
            print(f"{pad}{key}: {value}")


# ---------------------------------------------------------------------------
# lie


def _get_algebra(spec: str, inputs: dict):
    from . import liealg

    if os.path.exists(spec):
        inputs[spec] = _digest(spec)
        with open(spec, "r", encoding="utf-8") as fh:
            return liealg.algebra_from_json(fh.read(), name=os.path.basename(spec))
    return liealg.builtin(spec)


def cmd_lie(args) -> tuple[dict, bool, dict]:
    from . import liealg, liecoh

    inputs: dict[str, str] = {}
    failed = False
    if args.lie_cmd == "validate":
        from .liealg import StructureConstantError

        try:
            g = _get_algebra(args.algebra, inputs)
            payload = {
                "algebra": g.name,
                "dim": g.dim,
                "valid": True,
                "antisymmetry_defect": str(g.antisymmetry_defect()),
                "jacobi_defect": str(g.jacobi_defect()),
            }
        except StructureConstantError as exc:
            payload = {"valid": False, "error": str(exc),
                       "violating_indices": list(exc.triple)}
            failed = True
    elif args.lie_cmd == "perfect":
        g = _get_algebra(args.algebra, inputs)
        der = liealg.derived_subalgebra(g)
        payload = {"algebra": g.name, "dim": g.dim,
                   "derived_dim": der.dim, "perfect": liealg.is_perfect(g)}
    elif args.lie_cmd == "cohomology":
        g = _get_algebra(args.algebra, inputs)
        payload = liecoh.cohomology_report(g, args.degree)
    elif args.lie_cmd == "generate":
        g = _get_algebra(args.algebra, inputs)
        inputs[args.generators] = _digest(args.generators)
        obj = _load_json(args.generators)
        gens = [g.element(_fractions(vec)) for vec in obj["generators"]]
        span = liealg.generated_subalgebra(g, gens)
        payload = {"algebra": g.name, "generator_count": len(gens),
                   "closure_dim": span.dim, "full": span.dim == g.dim}
    elif args.lie_cmd == "ideal":
        g = _get_algebra(args.algebra, inputs)
        inputs[args.element] = _digest(args.element)
        obj = _load_json(args.element)
        x = g.element(_fractions(obj["element"]))
        ideal = liealg.ideal_closure(g, x)
        payload = {"algebra": g.name, "ideal_dim": ideal.dim}
        if g.name.startswith("poincare"):
            trans = [g.by_label(l) for l in g.labels if l.startswith("P_")]
            payload["contains_translations"] = all(ideal.contains(t) for t in trans)
    else:  # pragma: no cover
        raise SystemExit(f"unknown lie subcommand {args.lie_cmd}")
    return payload, failed, inputs


# ---------------------------------------------------------------------------
# group


def _get_group(spec: str, inputs: dict):
    from . import grpcoh

    if os.path.exists(spec):
        inputs[spec] = _digest(spec)
        obj = _load_json(spec)
        return grpcoh.FiniteGroup.from_table(
            obj["table"], obj.get("identity"), name=os.path.basename(spec))
    return grpcoh.group_by_name(spec)


def cmd_group(args) -> tuple[dict, bool, dict]:
    from . import ext, grpcoh

    inputs: dict[str, str] = {}
    failed = False
    if args.group_cmd == "h":
        P = _get_group(args.group, inputs)
        A = grpcoh.coefficients_by_name(args.coeff)
        factors = grpcoh.cohomology_group(P, A, args.degree)
        payload = {"group": P.name, "coefficients": list(A.orders),
                   "degree": args.degree, "invariant_factors": factors,
                   "order": 1 if not factors else _prod(factors),
                   "trivial": not factors}
    elif args.group_cmd == "cocycles":
        P = _get_group(args.group, inputs)
        A = grpcoh.coefficients_by_name(args.coeff)
        space = grpcoh.cocycle_space(P, A, args.degree)
        payload = {"group": P.name, "coefficients": list(A.orders),
                   "degree": args.degree, "order": space.order,
                   "generator_orders": [o for _, o in space.generators],
                   "generators": [[list(v) for v in gen.values]
                                  for gen, _ in space.generators]}
    elif args.group_cmd == "extension":
        payload, failed = _cmd_group_extension(args, inputs)
    elif args.group_cmd == "correspondence":
        E = _get_group(args.cover, inputs)
        P = _get_group(args.base, inputs)
        A = grpcoh.coefficients_by_name(args.coeff)
        sigma = _get_sigma(args, E, P, inputs)
        report = ext.h1_h2_correspondence_check(E, sigma, A)
        payload = report.to_json()
        failed = not report.applicable
    else:  # pragma: no cover
        raise SystemExit(f"unknown group subcommand {args.group_cmd}")
    return payload, failed, inputs


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _get_sigma(args, E, P, inputs):
    from .grpcoh import GroupHom

    if args.sigma == "canonical":
        if E.order % P.order:
            raise SystemExit("canonical sigma needs |base| dividing |cover|")
        # canonical quotient for cyclic-style tables: x -> x mod |P|
        values = tuple(g % P.order for g in E.elements())
        hom = GroupHom(E, P, values)
        hom.validate()
        return hom
    inputs[args.sigma] = _digest(args.sigma)
    obj = _load_json(args.sigma)
    hom = GroupHom(E, P, tuple(int(v) for v in obj["values"]))
    hom.validate()
    return hom


def _cmd_group_extension(args, inputs) -> tuple[dict, bool]:
    from . import ext, grpcoh

    P = _get_group(args.group, inputs)
    A = grpcoh.coefficients_by_name(args.coeff)

    def load_cocycle(path):
        inputs[path] = _digest(path)
        return grpcoh.Cochain.from_json(_load_json(path), P, A)

    if args.ext_cmd == "build":
        omega = load_cocycle(args.cocycle)
        try:
            built = ext.build_extension(P, A, omega)
        except ext.NotACocycleError as exc:
            raise MathFailure({"error": str(exc), "violating_triple": list(exc.triple)})
        split = ext.is_split(built)
        payload = {
            "base": P.name, "kernel": list(A.orders),
            "carrier_order": built.carrier.order,
            "carrier_table": [list(r) for r in built.carrier.table],
            "projection": list(built.projection.values),
            "is_split": split is not None,
        }
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(built.to_json())
            payload["written"] = args.out
        return payload, False
    if args.ext_cmd == "equiv":
        w1 = load_cocycle(args.cocycle1)
        w2 = load_cocycle(args.cocycle2)
        e1 = ext.build_extension(P, A, w1)
        e2 = ext.build_extension(P, A, w2)
        phi = ext.are_equivalent(e1, e2)
        payload = {"equivalent": phi is not None}
        if phi is not None:
            payload["witness"] = [list(v) for v in phi.values]
        return payload, phi is None
    if args.ext_cmd == "split":
        omega = load_cocycle(args.cocycle)
        built = ext.build_extension(P, A, omega)
        hom = ext.is_split(built)
        payload = {"is_split": hom is not None}
        if hom is not None:
            payload["splitting_section"] = list(hom.values)
        return payload, hom is None
    raise SystemExit(f"unknown extension subcommand {args.ext_cmd}")


# ---------------------------------------------------------------------------
# modular


def _complex_matrix(entries):
    import numpy as np

    return np.array([[complex(re, im) for re, im in row] for row in entries])


def cmd_modular(args) -> tuple[dict, bool, dict]:
    import numpy as np

    from . import modular

    inputs: dict[str, str] = {}
    if args.example:
        if args.example == "tracial":
            algebra = modular.qubit_factor()
            omega = modular.schmidt_state(0.5)
        elif args.example == "product":
            algebra = modular.qubit_factor()
            omega = modular.StateVector(np.array([1, 0, 0, 0], dtype=complex))
        elif args.example.startswith("p:"):
            algebra = modular.qubit_factor()
            omega = modular.schmidt_state(float(Fraction(args.example[2:])))
        else:
            raise SystemExit(f"unknown --example {args.example}; "
                             "use tracial, product, or p:<value>")
    else:
        if not (args.algebra and args.state):
            raise SystemExit("modular analyze needs --algebra and --state, or --example")
        inputs[args.algebra] = _digest(args.algebra)
        inputs[args.state] = _digest(args.state)
        aobj = _load_json(args.algebra)
        gens = [_complex_matrix(m) for m in aobj["generators"]]
        algebra = modular.algebra_closure(gens)
        sobj = _load_json(args.state)
        omega = modular.StateVector(
            np.array([complex(re, im) for re, im in sobj["vector"]]))

    cyclic = modular.is_cyclic(algebra, omega)
    witness = modular.separating_violation(algebra, omega)
    payload = {
        "ambient_dim": algebra.dim,
        "algebra_dim": algebra.size,
        "cyclic": cyclic,
        "separating": witness is None,
    }
    if witness is not None or not cyclic:
        payload["error"] = "state is not cyclic and separating; no modular data"
        if witness is not None:
            payload["annihilating_element"] = [
                [[round(z.real, 12), round(z.imag, 12)] for z in row] for row in witness]
        raise MathFailure(payload)

    triple = modular.tomita(algebra, omega)
    comm = modular.commutant(algebra)
    t_samples = [0.1, 0.5, 1.0, float(np.pi)]
    jmj_defect = max(
        max(comm.distance(triple.conjugate_by_j(b)) for b in algebra.basis),
        max(algebra.distance(triple.conjugate_by_j(b)) for b in comm.basis))
    payload.update({
        "delta_spectrum": [round(float(v), 12) for v in np.sort(triple.eigenvalues)],
        "basis_conditioning": round(triple.basis_conditioning, 6),
        "flow_defect": float(modular.modular_flow_defect(triple, algebra, t_samples)),
        "kms_defect": float(modular.kms_defect(
            algebra, omega, samples=args.samples, seed=args.seed, triple=triple)),
        "jmj_commutant_defect": float(jmj_defect),
        "t_samples": t_samples,
        "samples": args.samples,
    })
    return payload, False, inputs


# ---------------------------------------------------------------------------
# spacetime


def _load_wedge(path, inputs):
    from . import spacetime

    inputs[path] = _digest(path)
    obj = _load_json(path)
    lorentz = [_fractions(row) for row in obj["lorentz"]]
    translation = _fractions(obj.get("translation", [0, 0, 0, 0]))
    return spacetime.Wedge.from_frame(lorentz, translation)


def cmd_spacetime(args) -> tuple[dict, bool, dict]:
    import numpy as np

    from . import spacetime

    inputs: dict[str, str] = {}
    failed = False
    if args.st_cmd == "boost":
        m = spacetime.boost_matrix(args.t)
        payload = {"t": args.t, "matrix": [[float(x) for x in row] for row in m],
                   "is_identity": bool(np.allclose(m, np.eye(4)))}
    elif args.st_cmd == "boost-generation":
        if args.wedges == "six":
            family = spacetime.six_wedge_family()
        elif args.wedges == "coordinate-only":
            family = spacetime.coordinate_wedge_family()
        else:
            raise SystemExit("--wedges must be six or coordinate-only")
        payload = spacetime.boost_generation_check(family)
        payload["wedges"] = args.wedges
        failed = not payload["success"]
    elif args.st_cmd == "complement":
        wedge = _load_wedge(args.wedge, inputs) if args.wedge else spacetime.Wedge.standard()
        comp = spacetime.wedge_complement(wedge)
        ts = [0.1, 0.5, 1.0]
        defect = 0.0
        for t in ts:
            lhs = spacetime.wedge_boost(comp, t)
            rhs = spacetime.wedge_boost(wedge, -t)
            defect = max(defect, float(np.max(np.abs(
                np.array(lhs.lorentz, dtype=float) - np.array(rhs.lorentz, dtype=float)))),
                float(np.max(np.abs(
                    np.array(lhs.translation, dtype=float)
                    - np.array(rhs.translation, dtype=float)))))
        payload = {
            "complement_lorentz": [[str(x) for x in row] for row in comp.frame.lorentz],
            "complement_translation": [str(x) for x in comp.frame.translation],
            "boost_identity_defect": defect,
            "involution": spacetime.wedge_complement(comp) == wedge,
            "t_samples": ts,
        }
    else:  # pragma: no cover
        raise SystemExit(f"unknown spacetime subcommand {args.st_cmd}")
    return payload, failed, inputs


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true",
                        help="include elapsed time (breaks byte-identical output)")

    parser = argparse.ArgumentParser(
        prog="cohomkit",
        parents=[common],
        description="group/Lie cohomology, central extensions, wedge boosts, "
                    "and finite-dimensional modular theory")
    sub = parser.add_subparsers(dest="domain", required=True)

    lie = sub.add_parser("lie", help="Lie algebra computations")
    lie_sub = lie.add_subparsers(dest="lie_cmd", required=True)
    for name in ("validate", "perfect"):
        p = lie_sub.add_parser(name, parents=[common])
        p.add_argument("--algebra", required=True, help="builtin name or JSON file")
    p = lie_sub.add_parser("cohomology", parents=[common])
    p.add_argument("--algebra", required=True)
    p.add_argument("--degree", type=int, required=True)
    p = lie_sub.add_parser("generate", parents=[common])
    p.add_argument("--algebra", required=True)
    p.add_argument("--generators", required=True, help="JSON file with coefficient vectors")
    p = lie_sub.add_parser("ideal", parents=[common])
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True, help="JSON file with one coefficient vector")

    grp = sub.add_parser("group", help="finite group cohomology and extensions")
    grp_sub = grp.add_subparsers(dest="group_cmd", required=True)
    p = grp_sub.add_parser("h", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--degree", type=int, required=True)
    p = grp_sub.add_parser("cocycles", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--degree", type=int, required=True)
    extp = grp_sub.add_parser("extension")
    ext_sub = extp.add_subparsers(dest="ext_cmd", required=True)
    p = ext_sub.add_parser("build", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--out")
    p = ext_sub.add_parser("equiv", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--cocycle1", required=True)
    p.add_argument("--cocycle2", required=True)
    p = ext_sub.add_parser("split", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--cocycle", required=True)
    p = grp_sub.add_parser("correspondence", parents=[common])
    p.add_argument("--cover", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--sigma", default="canonical",
                   help="'canonical' (x mod |base|) or a JSON hom table")

    mod = sub.add_parser("modular", help="modular objects of a matrix algebra")
    mod_sub = mod.add_subparsers(dest="mod_cmd", required=True)
    p = mod_sub.add_parser("analyze", parents=[common])
    p.add_argument("--algebra", help="JSON file with complex generator matrices")
    p.add_argument("--state", help="JSON file with a complex vector")
    p.add_argument("--example", help="tracial | product | p:<value>")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True,
                   help="seed for the randomized KMS sampling")

    st = sub.add_parser("spacetime", help="wedges and boosts")
    st_sub = st.add_subparsers(dest="st_cmd", required=True)
    p = st_sub.add_parser("boost", parents=[common])
    p.add_argument("--t", type=float, required=True)
    p = st_sub.add_parser("boost-generation", parents=[common])
    p.add_argument("--wedges", default="six", help="six | coordinate-only")
    p = st_sub.add_parser("complement", parents=[common])
    p.add_argument("--wedge", help="JSON wedge file (default: the standard wedge)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._command_echo = " ".join(argv if argv is not None else sys.argv[1:])
    started = time.perf_counter()
    seed = getattr(args, "seed", None)
    try:
        if args.domain == "lie":
            payload, failed, inputs = cmd_lie(args)
        elif args.domain == "group":
            payload, failed, inputs = cmd_group(args)
        elif args.domain == "modular":
            payload, failed, inputs = cmd_modular(args)
        elif args.domain == "spacetime":
            payload, failed, inputs = cmd_spacetime(args)
        else:  # pragma: no cover
            return EXIT_USAGE
    except MathFailure as exc:
        return _emit(args, exc.payload, {}, started, seed=seed, failed=True)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _emit(args, payload, inputs, started, seed=seed, failed=failed)


if __name__ == "__main__":
    sys.exit(main())
