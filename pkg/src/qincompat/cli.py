"""Command line interface.

Verbs: compare, report, emulate, parent, random, check.  Exit codes follow
the decision: 0 when the queried relation holds, 1 when it does not, 2 on
errors or indeterminate outcomes.  Machine output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    BISTOCHASTIC,
    COLUMN_STOCHASTIC,
    Basis,
    DensityState,
    Povm,
    overlap_matrix,
    overlap_matrix_povm,
    pad_povms,
)
from .emulation import build_emulation, emulation_residual, probability_chain_residual
from .errors import IndeterminateError, QincompatError
from .lp import TAU_LP
from .majorization import matrix_majorizes, qubit_bloch_angle
from .monotones import (
    REL_ENTROPY,
    TWO_COHERENCE,
    builtin_functionals,
    coherence_average,
    f_phi,
)
from .parent import default_basis_samples, is_parent, parent_implies_relative
from .sampling import haar_random_basis, random_povm, rng_from_seed
from .serialization import dump_object, load_object, to_payload
from .uncertainty import mu_bound, q_bound, q_exact

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_ERROR = 2


def _emit(args, human: str, machine: dict) -> None:
    text = json.dumps(machine, indent=2) if args.format == "machine" else human
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _load_basis(path: str) -> Basis:
    obj = load_object(path)
    if not isinstance(obj, Basis):
        raise QincompatError(f"{path}: expected a basis file")
    return obj


def _load_measurement(path: str) -> Basis | Povm:
    obj = load_object(path)
    if isinstance(obj, DensityState):
        raise QincompatError(f"{path}: expected a basis or povm file")
    return obj


def _overlap_pair(m1: Basis | Povm, m2: Basis | Povm, b0: Basis, klass: str):
    """Overlap matrices of two measurements against the reference basis."""
    if isinstance(m1, Basis) and isinstance(m2, Basis) and klass == BISTOCHASTIC:
        return overlap_matrix(m1, b0), overlap_matrix(m2, b0)
    p1 = Povm.from_basis(m1) if isinstance(m1, Basis) else m1
    p2 = Povm.from_basis(m2) if isinstance(m2, Basis) else m2
    if klass == BISTOCHASTIC:
        p1, p2 = pad_povms(p1, p2)
    return overlap_matrix_povm(p1, b0), overlap_matrix_povm(p2, b0)


def cmd_compare(args) -> int:
    b0 = _load_basis(args.b0)
    m1 = _load_measurement(args.m1)
    m2 = _load_measurement(args.m2)
    klass = BISTOCHASTIC if args.klass == "bi" else COLUMN_STOCHASTIC
    x1, x2 = _overlap_pair(m1, m2, b0, klass)
    decision = matrix_majorizes(x1, x2, mclass=klass, tol=args.tol)
    machine = {
        "relation": "majorizes",
        "class": klass,
        "holds": decision.holds,
        "tol": args.tol,
    }
    lines = [
        f"class: {klass}",
        f"tolerance: {args.tol:g}",
        f"X(M1,B0) majorizes X(M2,B0): {'yes' if decision.holds else 'no'}",
    ]
    if decision.holds:
        machine["m"] = decision.m.tolist()
        lines.append("post-processing matrix M:")
        lines.extend("  " + "  ".join(f"{v: .6f}" for v in row) for row in decision.m)
    elif decision.witness is not None:
        w = decision.witness
        machine["witness"] = {
            "coefficients": w.coeffs.tolist(),
            "offsets": w.offsets.tolist(),
            "homogeneous": w.homogeneous,
            "margin": w.row_sum(x2.x) - w.row_sum(x1.x),
        }
        lines.append("separating witness (max-of-affine per row, summed over rows):")
        lines.append(f"  margin f(X2) - f(X1) = {machine['witness']['margin']:.3e} > 0")
    if b0.dim == 2 and isinstance(m1, Basis) and isinstance(m2, Basis):
        a1 = qubit_bloch_angle(m1, b0)
        a2 = qubit_bloch_angle(m2, b0)
        machine["bloch_angles"] = [a1, a2]
        lines.append(f"qubit Bloch angles vs B0: {a1:.6f}, {a2:.6f} rad")
    _emit(args, "\n".join(lines), machine)
    return EXIT_HOLDS if decision.holds else EXIT_FAILS


def cmd_report(args) -> int:
    b0 = _load_basis(args.b0)
    b1 = _load_basis(args.b1)
    x = overlap_matrix(b1, b0)
    d = b0.dim
    funs = builtin_functionals(d, seed=args.seed or 0)
    machine = {
        "dim": d,
        "tol": args.tol,
        "overlap": x.x.tolist(),
        "monotones": {phi.name: f_phi(x, phi) for phi in funs},
        "mu_bound": mu_bound(x),
        "q_exact": q_exact(b1, b0),
        "q_bound": q_bound(x),
        "coherence_average": {
            "rel_entropy": coherence_average(b1, b0, REL_ENTROPY).value,
            "two_coherence": coherence_average(b1, b0, TWO_COHERENCE).value,
        },
    }
    if args.samples:
        if args.seed is None:
            raise QincompatError("--seed is required with --samples")
        mc = {}
        for kind in (REL_ENTROPY, TWO_COHERENCE):
            est = coherence_average(
                b1, b0, kind, method="montecarlo", n=args.samples, seed=args.seed
            )
            mc[kind.replace("-", "_")] = {"value": est.value, "stderr": est.stderr}
        machine["coherence_average_mc"] = mc
    lines = [f"dim: {d}", f"tolerance: {args.tol:g}", "overlap matrix X(B1,B0):"]
    lines.extend("  " + "  ".join(f"{v: .6f}" for v in row) for row in x.x)
    lines.append("convex monotones f_phi:")
    lines.extend(f"  {name}: {val:.6f}" for name, val in machine["monotones"].items())
    lines.append(f"Maassen-Uffink bound: {machine['mu_bound']:.6f} bits")
    lines.append(f"fluctuation Q: {machine['q_exact']:.6f}   bound q: {machine['q_bound']:.6f}")
    ca = machine["coherence_average"]
    lines.append(
        f"flat-simplex coherence averages: rel-entropy {ca['rel_entropy']:.6f}, "
        f"2-coherence {ca['two_coherence']:.6f}"
    )
    if args.samples:
        for kind, est in machine["coherence_average_mc"].items():
            lines.append(
                f"  Monte Carlo {kind}: {est['value']:.6f} +/- {est['stderr']:.1e}"
                f" ({args.samples} samples, seed {args.seed})"
            )
    _emit(args, "\n".join(lines), machine)
    return EXIT_HOLDS


def cmd_emulate(args) -> int:
    b0 = _load_basis(args.b0)
    b1 = _load_basis(args.b1)
    b2 = _load_basis(args.b2)
    seq = build_emulation(b0, b1, b2, tol=args.tol)
    resid = emulation_residual(seq)
    chain = probability_chain_residual(seq)
    machine = {
        "length": seq.length,
        "residual": resid,
        "chain_residual": chain,
        "tol": args.tol,
        "final_unitary": [[[z.real, z.imag] for z in row] for row in seq.u],
    }
    lines = [
        f"tolerance: {args.tol:g}",
        f"auxiliary dephasing bases: {seq.length}",
        f"operator residual: {resid:.3e}",
        f"probability chain residual: {chain:.3e}",
    ]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = []
        for k, b in enumerate(seq.aux_bases):
            p = outdir / f"aux_{k:03d}.json"
            dump_object(b, p)
            paths.append(str(p))
        machine["aux_paths"] = paths
        lines.append(f"auxiliary bases written to {outdir}/")
        args.out = None  # report goes to stdout; files already written
    _emit(args, "\n".join(lines), machine)
    return EXIT_HOLDS


def cmd_parent(args) -> int:
    f = _load_measurement(args.f)
    g = _load_measurement(args.g)
    f = Povm.from_basis(f) if isinstance(f, Basis) else f
    g = Povm.from_basis(g) if isinstance(g, Basis) else g
    decision = is_parent(f, g, tol=args.tol)
    machine = {"is_parent": decision.is_parent, "tol": args.tol}
    lines = [f"tolerance: {args.tol:g}", f"F is a parent of G: {'yes' if decision.is_parent else 'no'}"]
    if decision.is_parent:
        samples = default_basis_samples(f.dim, n_haar=args.n_bases, seed=args.seed)
        consistent = parent_implies_relative(f, g, decision.m, samples, tol=args.tol)
        machine["m"] = decision.m.tolist()
        machine["relative_consistent"] = consistent
        machine["n_reference_bases"] = len(samples)
        lines.append(
            f"X(G,B0) = M X(F,B0) on {len(samples)} reference bases: "
            f"{'yes' if consistent else 'no'}"
        )
    _emit(args, "\n".join(lines), machine)
    return EXIT_HOLDS if decision.is_parent else EXIT_FAILS


def cmd_random(args) -> int:
    if args.kind == "basis":
        obj = haar_random_basis(args.dim, args.seed)
    elif args.kind == "povm":
        obj = random_povm(args.dim, args.n_effects or args.dim, args.seed)
    else:
        rng = rng_from_seed(args.seed, stream=2)
        g = rng.normal(size=(args.dim, args.dim)) + 1j * rng.normal(size=(args.dim, args.dim))
        rho = g @ g.conj().T
        obj = DensityState(rho=rho / np.trace(rho).real)
    dump_object(obj, args.out)
    if args.format == "machine":
        print(json.dumps({"kind": args.kind, "dim": args.dim, "seed": args.seed, "path": args.out}))
    else:
        print(f"wrote random {args.kind} (dim {args.dim}, seed {args.seed}) to {args.out}")
    return EXIT_HOLDS


def cmd_check(args) -> int:
    results = []
    ok = True
    for path in args.paths:
        try:
            obj = load_object(path)
            results.append({"path": path, "valid": True, "kind": to_payload(obj)["kind"]})
        except QincompatError as exc:
            ok = False
            results.append({"path": path, "valid": False, "error": str(exc)})
    if args.format == "machine":
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            if r["valid"]:
                print(f"{r['path']}: ok ({r['kind']})")
            else:
                print(f"{r['path']}: INVALID: {r['error']}")
    return EXIT_HOLDS if ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qincompat",
        description="Basis-relative incompatibility of quantum measurements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--tol", type=float, default=TAU_LP, help="numerical tolerance")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        if out:
            p.add_argument("--out", default=None, help="write the report to this path")

    p = sub.add_parser("compare", help="decide the basis-relative preorder between two measurements")
    p.add_argument("b0", help="reference basis file")
    p.add_argument("m1", help="candidate stronger measurement (basis or povm file)")
    p.add_argument("m2", help="candidate weaker measurement (basis or povm file)")
    p.add_argument("--class", dest="klass", choices=("bi", "stoch"), default="bi")
    common(p)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("report", help="scalar quantifiers of a measurement relative to a basis")
    p.add_argument("b0", help="reference basis file")
    p.add_argument("b1", help="measured basis file")
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("emulate", help="build a dephasing sequence emulating B2 from B1")
    p.add_argument("b0")
    p.add_argument("b1")
    p.add_argument("b2")
    common(p)
    p.set_defaults(fn=cmd_emulate)

    p = sub.add_parser("parent", help="decide the parent relation between two POVMs")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--n-bases", type=int, default=20, help="Haar reference bases for consistency")
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_parent)

    p = sub.add_parser("random", help="sample a random basis, POVM, or state to a file")
    p.add_argument("--kind", choices=("basis", "povm", "state"), required=True)
    p.add_argument("-d", "--dim", type=int, required=True)
    p.add_argument("--n-effects", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.set_defaults(fn=cmd_random)

    p = sub.add_parser("check", help="validate files against the type invariants")
    p.add_argument("paths", nargs="+")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except QincompatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
