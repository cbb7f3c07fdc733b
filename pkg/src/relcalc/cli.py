"""Command-line front end: JSON problem files in, machine-readable reports out.

Every command is a thin wrapper around one library operation; the CLI does no
mathematics of its own.  Exit codes: 0 success, 2 when the posed problem has
no solution (a legitimate mathematical answer), 1 for operational errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConsistencyError,
    DimensionMismatchError,
    NoSolutionError,
    NotRepresentableError,
    ProblemFormatError,
)
from .subspaces import Coset, Subspace, Tolerance, null_space, orthonormalize
from .relations import (
    LinearRelation,
    as_matrix,
    compose,
    from_graph_basis,
    graph_of_matrix,
    identity_minus,
    identity_on,
    parts,
    product_of_subspaces,
    relation_equals,
    zero_on,
)
from .mvproj import assemble_representation, classify, make_pmn
from .weighted import Weight, complementability, krein_classify, make_pws, shorted
from .lss import LssProblem, solve, w1w2_solve
from .splines import SmoothingProblem, SplineProblem, smooth_solve, spline_solve
from . import oracles

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# problem files


@dataclass
class ProblemFile:
    version: int
    field_kind: str
    tolerance: Tolerance | None
    matrices: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    subspaces: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    problem: dict = field(default_factory=dict)
    rho: float | None = None


def _complex_entry(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(part, (int, float)) for part in value)
    ):
        raise ProblemFormatError(f"{where}: complex scalars must be [re, im] pairs")
    return complex(float(value[0]), float(value[1]))


def _parse_vector(raw, where: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise ProblemFormatError(f"{where}: expected a list of [re, im] pairs")
    return np.array([_complex_entry(v, f"{where}[{i}]") for i, v in enumerate(raw)], dtype=complex)


def _parse_matrix(raw, where: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise ProblemFormatError(f"{where}: expected a nonempty list of rows")
    rows = [_parse_vector(row, f"{where} row {i}") for i, row in enumerate(raw)]
    width = rows[0].shape[0]
    for i, row in enumerate(rows):
        if row.shape[0] != width:
            raise ProblemFormatError(
                f"{where} row {i} has {row.shape[0]} entries, expected {width}"
            )
    return np.vstack(rows)


def parse(path: str | Path) -> ProblemFile:
    """Load and validate a problem file; all shape checks happen here."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(
            f"{path.name}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ProblemFormatError(f"{path.name}: top level must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise ProblemFormatError(f"{path.name}: unsupported version {version!r}")
    field_kind = data.get("field", "complex")
    if field_kind != "complex":
        raise ProblemFormatError(f"{path.name}: unsupported field {field_kind!r}")

    tolerance = None
    if "tolerance" in data:
        spec = data["tolerance"]
        if not isinstance(spec, dict):
            raise ProblemFormatError("tolerance: expected an object")
        tolerance = Tolerance(
            abs_eps=float(spec.get("abs_eps", 1e-10)),
            rel_eps=None if spec.get("rel_eps") is None else float(spec["rel_eps"]),
        )

    pf = ProblemFile(version=version, field_kind=field_kind, tolerance=tolerance)
    for name, raw in data.get("matrices", {}).items():
        pf.matrices[name] = _parse_matrix(raw, f"matrices.{name}")
    for name, raw in data.get("vectors", {}).items():
        pf.vectors[name] = _parse_vector(raw, f"vectors.{name}")
    for name, raw in data.get("subspaces", {}).items():
        pf.subspaces[name] = _validate_subspace_spec(raw, f"subspaces.{name}")
    for name, raw in data.get("relations", {}).items():
        pf.relations[name] = _validate_relation_spec(raw, f"relations.{name}")
    for name, raw in data.get("weights", {}).items():
        pf.weights[name] = _validate_weight_spec(raw, f"weights.{name}")
    problem = data.get("problem", {})
    if not isinstance(problem, dict):
        raise ProblemFormatError("problem: expected an object")
    pf.problem = problem
    if "rho" in data:
        pf.rho = float(data["rho"])
    return pf


def _validate_subspace_spec(raw, where: str) -> dict:
    if not isinstance(raw, dict) or "ambient" not in raw:
        raise ProblemFormatError(f"{where}: expected an object with an 'ambient' field")
    ambient = int(raw["ambient"])
    span = [
        _parse_vector(v, f"{where}.span[{i}]") for i, v in enumerate(raw.get("span", []))
    ]
    for i, v in enumerate(span):
        if v.shape[0] != ambient:
            raise ProblemFormatError(
                f"{where}.span[{i}] has length {v.shape[0]}, expected ambient {ambient}"
            )
    return {"ambient": ambient, "span": span}


def _validate_relation_spec(raw, where: str) -> dict:
    if not isinstance(raw, dict):
        raise ProblemFormatError(f"{where}: expected an object")
    kinds = [k for k in ("matrix", "graph_span", "identity_on", "zero_on", "product_of") if k in raw]
    if len(kinds) != 1:
        raise ProblemFormatError(
            f"{where}: exactly one of matrix/graph_span/identity_on/zero_on/product_of is required"
        )
    kind = kinds[0]
    spec = {"kind": kind}
    if kind == "matrix":
        spec["matrix"] = raw["matrix"] if isinstance(raw["matrix"], str) else _parse_matrix(
            raw["matrix"], f"{where}.matrix"
        )
    elif kind == "graph_span":
        if "dim_in" not in raw or "dim_out" not in raw:
            raise ProblemFormatError(f"{where}: graph_span needs dim_in and dim_out")
        n, m = int(raw["dim_in"]), int(raw["dim_out"])
        span = [
            _parse_vector(v, f"{where}.graph_span[{i}]")
            for i, v in enumerate(raw["graph_span"])
        ]
        for i, v in enumerate(span):
            if v.shape[0] != n + m:
                raise ProblemFormatError(
                    f"{where}.graph_span[{i}] has length {v.shape[0]}, expected {n + m}"
                )
        spec.update(dim_in=n, dim_out=m, span=span)
    elif kind == "product_of":
        pair = raw["product_of"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise ProblemFormatError(f"{where}: product_of needs two subspace names")
        spec["pair"] = pair
    else:
        spec["subspace"] = raw[kind]
    return spec


def _validate_weight_spec(raw, where: str) -> dict:
    if not isinstance(raw, dict) or "matrix" not in raw:
        raise ProblemFormatError(f"{where}: expected an object with a 'matrix' field")
    kind = raw.get("kind", "selfadjoint")
    matrix = raw["matrix"] if isinstance(raw["matrix"], str) else _parse_matrix(
        raw["matrix"], f"{where}.matrix"
    )
    return {"matrix": matrix, "kind": kind}


# ---------------------------------------------------------------------------
# resolving named objects


def _get(pf_section: dict, name: str, section: str):
    if name not in pf_section:
        raise ProblemFormatError(f"undefined {section} {name!r}")
    return pf_section[name]


def _matrix(pf: ProblemFile, ref, where: str) -> np.ndarray:
    if isinstance(ref, str):
        return _get(pf.matrices, ref, "matrix")
    if isinstance(ref, np.ndarray):
        return ref
    raise ProblemFormatError(f"{where}: expected a matrix name")


def _vector(pf: ProblemFile, ref, where: str) -> np.ndarray:
    if isinstance(ref, str):
        return _get(pf.vectors, ref, "vector")
    raise ProblemFormatError(f"{where}: expected a vector name")


def _subspace(pf: ProblemFile, ref, tol: Tolerance, where: str) -> Subspace:
    if not isinstance(ref, str):
        raise ProblemFormatError(f"{where}: expected a subspace name")
    spec = _get(pf.subspaces, ref, "subspace")
    return orthonormalize(spec["span"], tol, ambient_dim=spec["ambient"])


def _relation(pf: ProblemFile, ref, tol: Tolerance, where: str) -> LinearRelation:
    if not isinstance(ref, str):
        raise ProblemFormatError(f"{where}: expected a relation name")
    spec = _get(pf.relations, ref, "relation")
    kind = spec["kind"]
    if kind == "matrix":
        return graph_of_matrix(_matrix(pf, spec["matrix"], where), tol)
    if kind == "graph_span":
        return from_graph_basis(spec["dim_in"], spec["dim_out"], spec["span"], tol)
    if kind == "identity_on":
        return identity_on(_subspace(pf, spec["subspace"], tol, where))
    if kind == "zero_on":
        return zero_on(_subspace(pf, spec["subspace"], tol, where))
    first = _subspace(pf, spec["pair"][0], tol, where)
    second = _subspace(pf, spec["pair"][1], tol, where)
    return product_of_subspaces(first, second)


def _weight(pf: ProblemFile, ref, where: str) -> Weight:
    if not isinstance(ref, str):
        raise ProblemFormatError(f"{where}: expected a weight name")
    spec = _get(pf.weights, ref, "weight")
    return Weight(_matrix(pf, spec["matrix"], where), spec["kind"])


def _need(pf: ProblemFile, key: str):
    if key not in pf.problem:
        raise ProblemFormatError(f"problem section is missing required field {key!r}")
    return pf.problem[key]


# ---------------------------------------------------------------------------
# serialization


def _num(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _ser_vector(v: np.ndarray) -> list:
    return [_num(z) for z in v]


def _ser_matrix(m: np.ndarray) -> list:
    return [_ser_vector(row) for row in m]


def _ser_subspace(s: Subspace) -> dict:
    return {
        "ambient": s.ambient_dim,
        "dim": s.dim,
        "basis": [_ser_vector(s.basis[:, j]) for j in range(s.dim)],
    }


def _ser_coset(c: Coset) -> dict:
    if c.is_empty:
        return {"empty": True}
    return {"empty": False, "point": _ser_vector(c.point), "direction": _ser_subspace(c.direction)}


def _ser_parts(rel: LinearRelation, tol: Tolerance) -> dict:
    p = parts(rel, tol)
    return {
        "dom": _ser_subspace(p.dom),
        "ran": _ser_subspace(p.ran),
        "ker": _ser_subspace(p.ker),
        "mul": _ser_subspace(p.mul),
        "graph_dim": rel.graph.dim,
    }


# ---------------------------------------------------------------------------
# command handlers: each returns (status, result, extra diagnostics)


def _cmd_relation_analyze(pf, tol, verify):
    rel = _relation(pf, _need(pf, "relation"), tol, "problem.relation")
    result = _ser_parts(rel, tol)
    diag = {}
    if verify:
        diag["oracle_delta"] = _parts_oracle_delta(rel, tol)
    return "ok", result, diag


def _parts_oracle_delta(rel: LinearRelation, tol: Tolerance) -> float:
    # recompute kernel/multivalued part from graph-block null spaces
    p = parts(rel, tol)
    ker_alt = orthonormalize(
        rel.in_block @ null_space(rel.out_block, tol).basis, tol, ambient_dim=rel.dim_in
    )
    mul_alt = orthonormalize(
        rel.out_block @ null_space(rel.in_block, tol).basis, tol, ambient_dim=rel.dim_out
    )
    return float(
        max(
            np.linalg.norm(p.ker.projector() - ker_alt.projector()),
            np.linalg.norm(p.mul.projector() - mul_alt.projector()),
        )
    )


def _cmd_proj_build(pf, tol, verify):
    m = _subspace(pf, _need(pf, "range"), tol, "problem.range")
    n = _subspace(pf, _need(pf, "kernel"), tol, "problem.kernel")
    proj = make_pmn(m, n, tol)
    flags = classify(proj, tol)
    result = _ser_parts(proj, tol)
    result["is_idempotent"] = flags.is_idempotent
    result["is_mvproj"] = flags.is_mvproj
    diag = {}
    if verify:
        squared = compose(proj, proj, tol)
        diag["oracle_delta"] = _graph_delta(squared, proj)
    return "ok", result, diag


def _graph_delta(rel_a: LinearRelation, rel_b: LinearRelation) -> float:
    return float(np.linalg.norm(rel_a.graph.projector() - rel_b.graph.projector()))


def _cmd_proj_represent(pf, tol, verify):
    m = _subspace(pf, _need(pf, "range"), tol, "problem.range")
    n = _subspace(pf, _need(pf, "kernel"), tol, "problem.kernel")
    rep = assemble_representation(m, n, tol)
    regenerated = rep.generate(tol)
    direct = make_pmn(m, n, tol)
    result = {
        "splitter_dim": rep.splitter.dim,
        "x_block": _ser_parts(rep.b, tol),
        "regenerates": relation_equals(regenerated, direct, tol),
    }
    diag = {}
    if verify:
        diag["oracle_delta"] = _graph_delta(regenerated, direct)
    return "ok", result, diag


def _cmd_lss_solve(pf, tol, verify):
    rel = _relation(pf, _need(pf, "relation"), tol, "problem.relation")
    weight = _weight(pf, _need(pf, "weight"), "problem.weight")
    b = _vector(pf, _need(pf, "b"), "problem.b")
    sol = solve(LssProblem(rel, weight, b), tol)
    result = {
        "exists": sol.exists,
        "min_value": None if not sol.exists else sol.min_value,
        "witness": None if sol.witness is None else _ser_vector(sol.witness),
        "solution_set": _ser_coset(sol.solution_set),
        "minimizing_outputs": _ser_coset(sol.minimizing_outputs),
    }
    diag = {}
    if verify and sol.exists:
        ran_basis = parts(rel, tol).ran.basis
        diag["oracle_delta"] = abs(
            sol.min_value - oracles.weighted_min_over_span(weight.matrix, ran_basis, b)
        )
    return ("ok" if sol.exists else "no-solution"), result, diag


def _cmd_w1w2_solve(pf, tol, verify):
    rel = _relation(pf, _need(pf, "relation"), tol, "problem.relation")
    w1 = _weight(pf, _need(pf, "weight1"), "problem.weight1")
    w2 = _weight(pf, _need(pf, "weight2"), "problem.weight2")
    b = _vector(pf, _need(pf, "b"), "problem.b")
    try:
        coset = w1w2_solve(rel, w1, w2, b, tol)
    except NoSolutionError:
        return "no-solution", {"solution_set": {"empty": True}}, {}
    result = {"solution_set": _ser_coset(coset)}
    diag = {}
    if verify:
        first = solve(LssProblem(rel, w1, b), tol)
        point, flat = oracles.minimize_seminorm_over_coset(
            w2.matrix, first.solution_set.point, first.solution_set.direction.basis
        )
        direction = orthonormalize(flat, tol, ambient_dim=rel.dim_in)
        delta = max(
            np.linalg.norm(coset.direction.projector() - direction.projector()),
            0.0 if coset.contains(point, tol) else 1.0,
        )
        diag["oracle_delta"] = float(delta)
    return "ok", result, diag


def _cmd_spline(pf, tol, verify):
    T = _matrix(pf, _need(pf, "T"), "problem.T")
    V = _matrix(pf, _need(pf, "V"), "problem.V")
    b = _vector(pf, _need(pf, "b"), "problem.b")
    sol = spline_solve(SplineProblem(T, V, b), tol)
    result = {
        "exists": sol.exists,
        "min_value": sol.min_value,
        "spline_set": _ser_coset(sol.spline_set),
    }
    diag = {}
    if verify:
        oracle_min, _, _ = oracles.spline_kkt(T, V, b)
        diag["oracle_delta"] = abs(sol.min_value - oracle_min)
    return "ok", result, diag


def _cmd_smooth(pf, tol, verify):
    T = _matrix(pf, _need(pf, "T"), "problem.T")
    V = _matrix(pf, _need(pf, "V"), "problem.V")
    b = _vector(pf, _need(pf, "b"), "problem.b")
    if pf.rho is None:
        raise ProblemFormatError("smooth requires a top-level 'rho' parameter")
    sol = smooth_solve(SmoothingProblem(SplineProblem(T, V, b), pf.rho), tol)
    result = {
        "rho": pf.rho,
        "min_value": sol.min_value,
        "argmin_set": _ser_coset(sol.argmin_set),
    }
    diag = {}
    if verify:
        x_check = oracles.smoothing_normal_equations(T, V, b, pf.rho)
        value = float(
            np.sqrt(
                np.linalg.norm(T @ x_check) ** 2
                + pf.rho * np.linalg.norm(V @ x_check - b) ** 2
            )
        )
        diag["oracle_delta"] = abs(sol.min_value - value)
    return "ok", result, diag


def _cmd_shorted(pf, tol, verify):
    weight = _weight(pf, _need(pf, "weight"), "problem.weight")
    s = _subspace(pf, _need(pf, "subspace"), tol, "problem.subspace")
    mat = shorted(weight, s, tol)
    diag = {}
    if verify:
        from .subspaces import subspace_complement

        rel = compose(
            graph_of_matrix(weight.matrix, tol),
            identity_minus(make_pws(weight, subspace_complement(s, tol), tol), tol),
            tol,
        )
        diag["oracle_delta"] = float(np.linalg.norm(mat - as_matrix(rel, tol)))
    return "ok", {"shorted": _ser_matrix(mat)}, diag


def _cmd_complementable(pf, tol, verify):
    weight = _weight(pf, _need(pf, "weight"), "problem.weight")
    s = _subspace(pf, _need(pf, "subspace"), tol, "problem.subspace")
    report = complementability(weight, s, tol)
    result = {
        "is_complementable": report.is_complementable,
        "criterion_ab": report.criterion_ab,
        "domain": _ser_subspace(report.domain),
        "mul": _ser_subspace(report.mul),
        "borderline_weight": report.borderline_weight,
    }
    diag = {}
    if verify:
        if report.pws_blocks is None:
            diag["oracle_delta"] = 0.0
        else:
            diag["oracle_delta"] = _graph_delta(
                report.pws_blocks.generate(tol), make_pws(weight, s, tol)
            )
    return "ok", result, diag


def _cmd_krein_classify(pf, tol, verify):
    weight = _weight(pf, _need(pf, "weight"), "problem.weight")
    s = _subspace(pf, _need(pf, "subspace"), tol, "problem.subspace")
    report = krein_classify(s, weight, tol)
    result = {
        "isotropic": _ser_subspace(report.isotropic),
        "nondegenerate": report.nondegenerate,
        "pseudo_regular": report.pseudo_regular,
        "regular": report.regular,
        "note": report.note,
    }
    diag = {}
    if verify:
        proj = make_pws(weight, s, tol)
        p = parts(proj, tol)
        operator_like = p.mul.dim == 0 and p.dom.dim == weight.ambient_dim
        diag["oracle_delta"] = 0.0 if operator_like == report.regular else 1.0
    return "ok", result, diag


COMMANDS = {
    "relation-analyze": _cmd_relation_analyze,
    "proj-build": _cmd_proj_build,
    "proj-represent": _cmd_proj_represent,
    "lss-solve": _cmd_lss_solve,
    "w1w2-solve": _cmd_w1w2_solve,
    "spline": _cmd_spline,
    "smooth": _cmd_smooth,
    "shorted": _cmd_shorted,
    "complementable": _cmd_complementable,
    "krein-classify": _cmd_krein_classify,
}


# ---------------------------------------------------------------------------
# dispatch / emit / entry point


def dispatch(command: str, pf: ProblemFile, tol: Tolerance, verify: bool = False) -> dict:
    """Run one command against a parsed problem file and build its report."""
    if command not in COMMANDS:
        raise ProblemFormatError(f"unknown command {command!r}")
    status, result, diag = COMMANDS[command](pf, tol, verify)
    diagnostics = {"tolerance": {"abs_eps": tol.abs_eps, "rel_eps": tol.rel_eps}}
    diagnostics.update(diag)
    return {
        "command": command,
        "status": status,
        "result": result,
        "diagnostics": diagnostics,
    }


def emit(report: dict, fmt: str = "json") -> bytes:
    """Serialize a report; json output is stable-key-ordered and deterministic."""
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        lines: list[str] = []
        _render_text(report, "", lines)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _render_text(value, prefix: str, lines: list[str]):
    if isinstance(value, dict):
        for key in sorted(value):
            _render_text(value[key], f"{prefix}{key}.", lines)
    elif isinstance(value, list):
        lines.append(f"{prefix[:-1]} = {json.dumps(value)}")
    else:
        lines.append(f"{prefix[:-1]} = {value}")


_EXIT_BY_STATUS = {"ok": 0, "no-solution": 2}


def _resolve_tolerance(arg_tol: float | None, pf: ProblemFile) -> Tolerance:
    if arg_tol is not None:
        return Tolerance(abs_eps=arg_tol)
    env = os.environ.get("RELCALC_TOL")
    if env is not None:
        return Tolerance(abs_eps=float(env))
    if pf.tolerance is not None:
        return pf.tolerance
    return Tolerance()


def _run_file(command: str, path: Path, args) -> tuple[bytes, int]:
    pf = parse(path)
    tol = _resolve_tolerance(args.tol, pf)
    report = dispatch(command, pf, tol, verify=args.verify)
    return emit(report, args.format), _EXIT_BY_STATUS[report["status"]]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcalc",
        description="Linear-relation calculus: projections, weighted least squares, splines, smoothing.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("file", nargs="?", help="problem file (omit with --batch)")
    parser.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
    parser.add_argument("--verify", action="store_true", help="run the oracle cross-check")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--batch", metavar="DIR", default=None, help="process every .json file in DIR")
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    stream = out if out is not None else sys.stdout.buffer
    if (args.file is None) == (args.batch is None):
        print("error: provide exactly one of a problem file or --batch DIR", file=sys.stderr)
        return 1
    if args.batch is None:
        try:
            payload, code = _run_file(args.command, Path(args.file), args)
        except (ProblemFormatError, DimensionMismatchError, NotRepresentableError,
                ConsistencyError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        stream.write(payload)
        return code

    directory = Path(args.batch)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return 1
    worst = 0
    ranking = {0: 0, 2: 1, 1: 2}
    for path in sorted(directory.glob("*.json")):
        if path.name.endswith(".report.json"):
            continue
        try:
            payload, code = _run_file(args.command, path, args)
            path.with_name(path.stem + ".report.json").write_bytes(payload)
            status = "ok" if code == 0 else "no-solution"
        except (ProblemFormatError, DimensionMismatchError, NotRepresentableError,
                ConsistencyError, ValueError) as exc:
            print(f"error: {path.name}: {exc}", file=sys.stderr)
            code, status = 1, "error"
        stream.write(f"{path.name}: {status}\n".encode("utf-8"))
        if ranking[code] > ranking[worst]:
            worst = code
    return worst


def entrypoint():  # console-script shim
    raise SystemExit(main())
