"""``projpair`` command-line front end.

Each invocation prints one JSON report on stdout; matrices are written to
files only. Exit codes: 0 ok, 2 parse/usage error, 3 invalid input,
4 no swap unitary exists, 5 precondition or numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import errors
from .core import (
    ToleranceConfig,
    _reject_constant,
    fro,
    load_matrix,
    matrix_from_dict,
    operator_norm,
    save_matrix,
    validate_projection,
)
from .index import fredholm_dims, fredholm_map, pair_index
from .kato import kato_unitary
from .perturbation import ContourSpec, polynomial_family, reduce_family, riesz_quadrature
from .randpairs import random_pair
from .subspaces import halmos_split, kernel_quadruple, principal_angles
from .supersym import build_super, identity_residuals, swap_unitary

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_NO_SWAP = 4
EXIT_PRECONDITION = 5

_EXIT_CODES = [
    (errors.MatrixFormatError, EXIT_PARSE),
    (errors.NoSwapExists, EXIT_NO_SWAP),
    (
        (
            errors.NotSquare,
            errors.NotHermitian,
            errors.NotIdempotent,
            errors.DimensionMismatch,
            errors.DimensionTooLarge,
            errors.FrameNotOrthonormal,
            errors.InvalidTolerance,
        ),
        EXIT_INVALID,
    ),
    (errors.ProjPairError, EXIT_PRECONDITION),
    (ValueError, EXIT_PARSE),
]


def exit_code_for(exc):
    for kinds, code in _EXIT_CODES:
        if isinstance(exc, kinds):
            return code
    raise exc


def _cx(z):
    z = complex(z)
    return [z.real, z.imag]


class Report:
    """Accumulates one command's report."""

    def __init__(self, command, inputs):
        self.command = command
        self.inputs = list(inputs)
        self.outputs = {}
        self.residuals = {}
        self.error = None

    def write_matrix(self, name, path, m):
        if path is None:
            return
        save_matrix(path, m)
        self.outputs[name] = path

    def to_json(self):
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "residuals": self.residuals,
            "status": "ok" if self.error is None else "error",
        }
        if self.error is not None:
            doc["error"] = self.error
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _tol(args):
    return ToleranceConfig(
        tol_herm=args.tol_herm,
        tol_idem=args.tol_idem,
        tol_spec=args.tol_spec,
        tol_resid=args.tol_resid,
        quad_tol=args.quad_tol,
    )


def _load_pair(args, tol):
    p = validate_projection(load_matrix(args.p), tol)
    q = validate_projection(load_matrix(args.q), tol)
    if p.dim != q.dim:
        raise errors.DimensionMismatch(f"P is {p.dim}x{p.dim} but Q is {q.dim}x{q.dim}")
    return p, q


def _contour(args):
    return ContourSpec(complex(args.center), args.radius, args.nodes)


# --- commands --------------------------------------------------------------


def cmd_validate(args, rep, tol):
    m = load_matrix(args.path)
    rep.outputs["dim"] = m.shape[0]
    p = validate_projection(m, tol)
    rep.outputs["rank"] = p.rank
    rep.residuals["hermiticity"] = p.herm_residual
    rep.residuals["idempotency"] = p.idem_residual


def cmd_swap(args, rep, tol):
    p, q = _load_pair(args, tol)
    try:
        res = swap_unitary(p, q, tol)
    except errors.NoSwapExists as exc:
        rep.outputs.update(dim_ker=exc.dim_ker, dim_coker=exc.dim_coker, index=exc.index)
        raise
    rep.write_matrix("u", args.out, res.u)
    rep.outputs["is_symmetry"] = res.is_symmetry
    rep.outputs["t_block_dims"] = res.t_block_dims
    rep.residuals["upu_minus_q"] = res.residuals["upu_q"]
    rep.residuals["uqu_minus_p"] = res.residuals["uqu_p"]
    rep.residuals["u_squared_minus_i"] = res.residuals["square"]
    rep.residuals["unitarity"] = res.residuals["unitarity"]


def cmd_kato(args, rep, tol):
    p, q = _load_pair(args, tol)
    rep.outputs["norm_p_minus_q"] = operator_norm(p.mat - q.mat)
    u = kato_unitary(p, q, tol)
    rep.write_matrix("u", args.out, u)
    rep.outputs["det"] = _cx(np.linalg.det(u))
    rep.residuals["up_minus_qu"] = fro(u @ p.mat - q.mat @ u)
    rep.residuals["unitarity"] = fro(u.conj().T @ u - np.eye(p.dim))


def cmd_index(args, rep, tol):
    p, q = _load_pair(args, tol)
    r = pair_index(p, q, tol)
    k = fredholm_map(p, q)
    ker, coker = fredholm_dims(k, tol)
    rep.outputs.update(
        dim_ker=r.dim_ker,
        dim_coker=r.dim_coker,
        index=r.index,
        trace=r.trace_pq,
        swap_possible=r.swap_possible,
        fredholm_shape=list(k.shape),
        fredholm_dim_ker=ker,
        fredholm_dim_coker=coker,
    )
    rep.residuals["trace_minus_index"] = abs(r.trace_pq - r.index)


def cmd_decompose(args, rep, tol):
    p, q = _load_pair(args, tol)
    kq = kernel_quadruple(p, q, tol)
    split = halmos_split(p, q, tol)
    angles = principal_angles(p, q, tol)
    rep.outputs.update(
        dims=list(kq.dims),
        generic_dim=kq.generic_dim,
        h1_dim=split.h1_frame.k,
        h2_dim=split.h2_frame.k,
        principal_angles=angles,
    )
    rep.residuals["h2_invariance_p"] = split.invariance_residuals[0]
    rep.residuals["h2_invariance_q"] = split.invariance_residuals[1]
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        named = {
            "k_pq": kq.k_pq.mat,
            "k_p_1q": kq.k_p_1q.mat,
            "k_1p_q": kq.k_1p_q.mat,
            "k_1p_1q": kq.k_1p_1q.mat,
            "h1": split.h1_frame.mat,
            "h2": split.h2_frame.mat,
            "p2": split.p2,
            "q2": split.q2,
        }
        for name, m in named.items():
            # The file format has no empty matrices; empty frames are reported by dimension only.
            if m.size:
                rep.write_matrix(name, os.path.join(args.out_dir, name + ".json"), m)


def cmd_identities(args, rep, tol):
    p, q = _load_pair(args, tol)
    rep.residuals.update(identity_residuals(build_super(p, q), p, q).as_dict())


def cmd_riesz(args, rep, tol):
    m = load_matrix(args.path)
    res = riesz_quadrature(m, _contour(args), tol)
    rep.write_matrix("projection", args.out, res.projection)
    rep.outputs.update(
        rank=int(round(np.trace(res.projection).real)),
        nodes=res.nodes,
        convergence_history=res.history,
    )
    rep.residuals["idempotency"] = res.idempotency_residual
    rep.residuals["commutator"] = res.commutator_residual


def load_family(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh, parse_constant=_reject_constant)
    except OSError as exc:
        raise errors.MatrixFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise errors.MatrixFormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, list) or not doc:
        raise errors.MatrixFormatError("family file must be a non-empty JSON array of matrices")
    return [matrix_from_dict(entry) for entry in doc]


def cmd_reduce(args, rep, tol):
    family = polynomial_family(load_family(args.path))
    z = complex(args.z)
    red = reduce_family(family, z, _contour(args), tol)
    rep.write_matrix("block", args.out, red.block)
    ev = np.linalg.eigvals(red.block) if red.rank else np.zeros(0)
    ev = sorted(ev, key=lambda x: (x.real, x.imag))
    rep.outputs.update(rank=red.rank, eigenvalues=[_cx(x) for x in ev])
    if red.rank == 1:
        rep.outputs["block_value"] = _cx(red.block[0, 0])


def cmd_random(args, rep, tol):
    p, q = random_pair(
        args.dim,
        args.rankP,
        args.rankQ,
        kernel_dims=tuple(args.kernel_dims),
        seed=args.seed,
        generic=args.generic,
        max_angle=args.max_angle,
    )
    rep.write_matrix("p", args.out_p, p)
    rep.write_matrix("q", args.out_q, q)
    pp = validate_projection(p, tol)
    qp = validate_projection(q, tol)
    rep.outputs.update(dim=args.dim, seed=args.seed)
    rep.residuals["p_hermiticity"] = pp.herm_residual
    rep.residuals["p_idempotency"] = pp.idem_residual
    rep.residuals["q_hermiticity"] = qp.herm_residual
    rep.residuals["q_idempotency"] = qp.idem_residual


# --- parser ----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-herm", type=float, default=1e-10)
    common.add_argument("--tol-idem", type=float, default=1e-10)
    common.add_argument("--tol-spec", type=float, default=1e-8)
    common.add_argument("--tol-resid", type=float, default=1e-8)
    common.add_argument("--quad-tol", type=float, default=1e-10)

    parser = argparse.ArgumentParser(
        prog="projpair", description="Constructions for pairs of orthogonal projections."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_command(name, func, help_, out=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("p", help="matrix file for P")
        sp.add_argument("q", help="matrix file for Q")
        if out:
            sp.add_argument("--out", help="where to write the resulting matrix")
        sp.set_defaults(func=func, inputs=("p", "q"))
        return sp

    sp = sub.add_parser("validate", parents=[common], help="check a matrix is an orthogonal projection")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_validate, inputs=("path",))

    pair_command("swap", cmd_swap, "unitary exchanging P and Q", out=True)
    pair_command("kato", cmd_kato, "Kato unitary with UP = QU", out=True)
    pair_command("index", cmd_index, "index and trace of P - Q")
    sp = pair_command("decompose", cmd_decompose, "kernel subspaces, splitting and angles")
    sp.add_argument("--out-dir", help="directory for the non-empty frames and compressions")
    pair_command("identities", cmd_identities, "residuals of the A/B identities")

    for name, func, help_ in (
        ("riesz", cmd_riesz, "Riesz projection of a matrix by contour quadrature"),
        ("reduce", cmd_reduce, "reduce an eigenvalue group of a polynomial family"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("path", help="matrix file" if name == "riesz" else "family file")
        sp.add_argument("--center", required=True, help="contour center, e.g. 1 or 1+0.5j")
        sp.add_argument("--radius", type=float, required=True)
        sp.add_argument("--nodes", type=int, default=16)
        sp.add_argument("--out")
        if name == "reduce":
            sp.add_argument("--z", required=True, help="family parameter, real or complex")
        sp.set_defaults(func=func, inputs=("path",))

    sp = sub.add_parser("random", parents=[common], help="seeded random projection pair")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--rankP", type=int, required=True)
    sp.add_argument("--rankQ", type=int, required=True)
    sp.add_argument("--kernel-dims", type=int, nargs=2, default=[0, 0], metavar=("A", "B"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--generic", type=int, help="number of 2x2 generic blocks")
    sp.add_argument("--max-angle", type=float, help="upper bound on generic block angles")
    sp.add_argument("--out-p", default="P.json")
    sp.add_argument("--out-q", default="Q.json")
    sp.set_defaults(func=cmd_random, inputs=())
    return parser


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    rep = Report(args.command, [getattr(args, name) for name in args.inputs])
    code = EXIT_OK
    try:
        tol = _tol(args)
        args.func(args, rep, tol)
    except (errors.ProjPairError, ValueError) as exc:
        code = exit_code_for(exc)
        rep.error = {"code": type(exc).__name__, "exit_code": code, "message": str(exc)}
    stdout.write(rep.to_json())
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
