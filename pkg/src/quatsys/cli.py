"""Command-line front end.

Input files are JSON documents whose quaternion entries are literal strings
such as ``"1 - 5/2i - 1/2j + k"``. Every command prints ``key = value`` lines
in a fixed order. Exit status: 0 success, 1 failed verification or internal
inconsistency, 2 singular input or unmet precondition, 3 unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cramer import cramer_left, cramer_right, inv_general, inv_hermitian
from .drazin import drazin_det, matrix_index
from .eigen import normal_diagonalize, real_roots, transported_eigs
from .errors import NonRealRootError, ParseError, PreconditionError, QuatError, ShapeError, SingularMatrixError
from .expm import mat_exp
from .lqds import LqdsProblem, PolynomialVector, general_solution_diagonalizable, residual, solve
from .matrix import QMatrix, inverse_rowreduce, is_hermitian, qrank
from .oracle import compare
from .rcdet import cdet, char_poly_hermitian, ddet, det_hermitian, minor_sum, rdet
from .scalar import Backend
from .textio import parse_quat, render_quat, render_scalar, render_vector

EXIT_OK, EXIT_FAILED, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2, 3
DEFAULT_GRID = ("0", "1/4", "1/2", "3/4", "1")


class Document:
    """Ordered key/value output."""

    def __init__(self):
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, value if isinstance(value, str) else str(value)))

    def matrix(self, name: str, M: QMatrix) -> None:
        for i in range(M.rows):
            self.add(f"{name}[{i + 1}]", render_vector(M.row(i)))

    def render(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in self.lines)


# ---------------------------------------------------------------------------
# input


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def _require(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    return doc[key]


def read_vector(items, what: str = "vector") -> tuple:
    if not isinstance(items, list):
        raise ParseError(f"{what} must be a list of literals")
    return tuple(parse_quat(s) for s in items)


def read_matrix(rows, what: str = "matrix") -> QMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{what} must be a non-empty list of rows")
    return QMatrix.from_rows([[parse_quat(s) for s in r] for r in rows])


def read_scalar(value) -> Fraction:
    q = parse_quat(str(value))
    if not q.is_real():
        raise ParseError(f"expected a real number, got {value!r}")
    return q.w


def read_source(doc: dict, n: int) -> PolynomialVector:
    coeffs = _require(doc, "b")
    if not isinstance(coeffs, list) or not coeffs:
        raise ParseError("b must be a non-empty list of coefficient vectors")
    vectors = [read_vector(c, "source coefficient") for c in coeffs]
    if any(len(v) != n for v in vectors):
        raise ShapeError("source coefficient length does not match the matrix order")
    return PolynomialVector(vectors)


def _backend(args, doc: dict, default: str) -> Backend:
    name = args.backend or doc.get("backend", default)
    try:
        return Backend(name)
    except ValueError:
        raise ParseError(f"unknown backend {name!r}") from None


def _on(backend: Backend, value):
    """Move a parsed (exact) object onto ``backend``."""
    if backend is Backend.EXACT:
        return value
    if isinstance(value, tuple):
        return tuple(q.to_float() for q in value)
    return value.to_float()


def _parse_anchor(text: str):
    if text in ("auto", "det", "ddet"):
        return text, None
    kind, _, index = text.partition(":")
    if kind not in ("row", "col") or not index.isdigit() or int(index) < 1:
        raise ParseError(f"bad anchor {text!r}; use row:i, col:j, det, ddet or auto")
    return kind, int(index)


# ---------------------------------------------------------------------------
# commands


def cmd_det(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    A = _on(backend, read_matrix(_require(doc, "A")))
    kind, index = _parse_anchor(args.anchor)
    if kind == "auto":
        kind = "det" if is_hermitian(A) else "ddet"
    if kind in ("row", "col") and index > A.rows:
        raise PreconditionError(f"anchor {index} out of range for order {A.rows}")
    out.add("kind", {"row": "rdet", "col": "cdet"}.get(kind, kind))
    if index is not None:
        out.add("anchor", index)
    if kind == "row":
        value = render_quat(rdet(index, A))
    elif kind == "col":
        value = render_quat(cdet(index, A))
    elif kind == "det":
        value = render_scalar(det_hermitian(A))
    else:
        value = render_scalar(ddet(A))
    out.add("value", value)
    return EXIT_OK


def cmd_inv(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    A = _on(backend, read_matrix(_require(doc, "A")))
    method = args.method
    if method == "auto":
        method = "hermitian" if is_hermitian(A) else "general"
    X = inv_hermitian(A) if method == "hermitian" else inv_general(A)
    out.add("method", method)
    out.matrix("inverse", X)
    return EXIT_OK


def cmd_solve(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    A = _on(backend, read_matrix(_require(doc, "A")))
    b = _on(backend, read_vector(_require(doc, "b")))
    side = args.side or doc.get("side", "right")
    solver = {"right": cramer_right, "left": cramer_left}.get(side)
    if solver is None:
        raise ParseError(f"unknown side {side!r}")
    x, method = solver(A, b, args.method)
    out.add("side", side)
    out.add("method", method)
    out.add("solution", render_vector(x))
    return EXIT_OK


def cmd_drazin(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    A = _on(backend, read_matrix(_require(doc, "A")))
    res = drazin_det(A, args.method)
    out.add("index", res.index)
    out.add("rank", res.rank)
    out.add("method", res.method)
    core = A.power(res.index + 1)
    out.matrix("power", core)
    if res.rank:
        out.add("principal_minor_sum", render_scalar(minor_sum(core, res.rank)))
    out.matrix("drazin", res.AD)
    return EXIT_OK


def cmd_eig_normal(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    N = _on(backend, read_matrix(_require(doc, "A")))
    gram = N.H @ N
    poly = char_poly_hermitian(gram)
    out.add("gram_charpoly", str(poly).replace("t", "x"))
    out.add("gram_eigenvalues", ", ".join(render_scalar(r) for r in reversed(real_roots(poly))))
    dec = normal_diagonalize(N)
    out.add("eigenvalues", render_vector(dec.eigenvalues))
    out.add("unitary", str(dec.unitary).lower())
    out.matrix("U", dec.U)
    out.matrix("D", dec.D)
    status = EXIT_OK
    if args.similarity is not None:
        tdoc = load_document(args.similarity) if args.similarity else doc
        T = _on(backend, read_matrix(_require(tdoc, "T"), "similarity"))
        moved = transported_eigs(T, N)
        A = T @ N @ (inv_general(T) if backend is Backend.EXACT else inverse_rowreduce(T, 1e-12))
        out.matrix("similar", A)
        out.matrix("V", moved.U)
        lhs, rhs = A @ moved.U, moved.U @ moved.D
        ok = lhs == rhs if backend is Backend.EXACT else lhs.isclose(rhs, 1e-9)
        out.add("similar_check", "ok" if ok else "failed")
        status = EXIT_OK if ok else EXIT_FAILED
    expected = doc.get("expected", {}).get("eigenvalues")
    if expected is not None:
        want = read_vector(expected, "expected eigenvalues")
        match = len(want) == len(dec.eigenvalues) and all(
            (w.to(q.backend) - q).abs() <= 1e-9 for w, q in zip(want, dec.eigenvalues))
        out.add("expected", "match" if match else "mismatch")
        if not match:
            status = EXIT_FAILED
    return status


def cmd_exp(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "float")
    A = _on(backend, read_matrix(_require(doc, "A")))
    res = mat_exp(A, float(read_scalar(args.t)))
    out.add("t", render_scalar(float(read_scalar(args.t))))
    out.add("scaling_steps", res.scaling_steps)
    out.matrix("exp", res.value)
    return EXIT_OK


# ---------------------------------------------------------------------------
# differential systems


def read_problem(doc: dict, backend: Backend):
    side = _require(doc, "side")
    if side not in ("right", "left"):
        raise ParseError(f"unknown side {side!r}")
    A = read_matrix(_require(doc, "A"))
    if A.rows != A.cols:
        raise ShapeError("coefficient matrix must be square")
    b = read_source(doc, A.rows)
    t0 = x0 = None
    if "x0" in doc:
        x0 = _on(backend, read_vector(doc["x0"], "x0"))
        t0 = read_scalar(doc.get("t0", "0"))
        if backend is Backend.FLOAT:
            t0 = float(t0)
    fundamental = None
    if "P" in doc or "D" in doc:
        P = _on(backend, read_matrix(_require(doc, "P"), "P"))
        D = _on(backend, QMatrix.diag(read_vector(_require(doc, "D"), "D")))
        fundamental = (P, D)
    problem = LqdsProblem(side, _on(backend, A), b.to_float() if backend is Backend.FLOAT else b, t0, x0)
    return problem, A, fundamental


def _closed_form(problem: LqdsProblem, exact_A: QMatrix, fundamental):
    if fundamental is None:
        return solve(problem), "drazin" if qrank(exact_A) < exact_A.rows else "direct"
    P, D = fundamental
    sol = general_solution_diagonalizable(problem.side, problem.A, P, D, problem.b, problem.t0, problem.x0)
    return sol, "diagonalizable"


def _problem_header(out: Document, problem: LqdsProblem, exact_A: QMatrix, backend: Backend):
    out.add("side", problem.side)
    out.add("backend", backend.value)
    out.add("order", exact_A.rows)
    out.add("rank", qrank(exact_A))
    out.add("index", matrix_index(exact_A))


def cmd_lqds_solve(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    problem, exact_A, fundamental = read_problem(doc, backend)
    sol, method = _closed_form(problem, exact_A, fundamental)
    _problem_header(out, problem, exact_A, backend)
    out.add("method", method)
    out.add("degree", sol.poly_part.degree)
    for m, c in enumerate(sol.poly_part.coeffs):
        out.add(f"coefficient[{m}]", render_vector(c))
    if sol.hom_vector is None:
        out.add("homogeneous", "none")
    else:
        out.add("homogeneous", "exp(A(t - t0)) g" if problem.side == "right" else "g exp(A(t - t0))")
        out.add("homogeneous.t0", render_scalar(sol.t0))
        out.add("homogeneous.g", render_vector(sol.hom_vector))
    for s in doc.get("samples", []):
        t = read_scalar(s)
        value = sol(float(t) if sol.has_homogeneous or backend is Backend.FLOAT else t)
        out.add(f"x({s})", render_vector(value))
    return EXIT_OK


def cmd_lqds_verify(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "exact")
    problem, exact_A, fundamental = read_problem(doc, backend)
    sol, method = _closed_form(problem, exact_A, fundamental)
    _problem_header(out, problem, exact_A, backend)
    out.add("method", method)
    rep = residual(problem.side, sol, problem.A, problem.b)
    out.add("residual", render_scalar(rep.value))
    out.add("residual_kind", "exact" if rep.exact else "finite-difference")
    ok = rep.is_zero if rep.exact else rep.value <= args.tol
    expected = doc.get("expected")
    if expected is not None:
        coeffs = [read_vector(c, "expected coefficient") for c in _require(expected, "coefficients")]
        tol = float(read_scalar(expected.get("tolerance", "0")))
        got = sol.poly_part.coeffs
        if len(coeffs) != len(got):
            dev = float("inf")
        else:
            dev = max(((p.to_float() - q.to_float()).abs() for c, g in zip(coeffs, got) for p, q in zip(c, g)),
                      default=0.0)
        out.add("expected.max_deviation", render_scalar(float(dev)))
        out.add("expected.tolerance", render_scalar(tol))
        matched = dev <= tol
        out.add("expected", "match" if matched else "mismatch")
        ok = ok and matched
    out.add("status", "ok" if ok else "failed")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle(args, out: Document) -> int:
    doc = load_document(args.file)
    backend = _backend(args, doc, "float")
    problem, exact_A, fundamental = read_problem(doc, backend)
    sol, method = _closed_form(problem, exact_A, fundamental)
    grid = [float(read_scalar(s)) for s in doc.get("grid", DEFAULT_GRID)]
    dev = compare(sol, problem, grid, args.steps)
    out.add("side", problem.side)
    out.add("method", method)
    out.add("steps_per_interval", args.steps)
    out.add("grid", ", ".join(render_scalar(t) for t in grid))
    out.add("max_deviation", format(dev, ".3e"))
    out.add("tolerance", format(args.tol, ".3e"))
    ok = dev <= args.tol
    out.add("status", "ok" if ok else "failed")
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quatsys", description="Quaternion matrix algebra and linear differential systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="JSON input document")
        p.add_argument("--backend", choices=[b.value for b in Backend], help="override the arithmetic backend")
        p.set_defaults(func=func)
        return p

    p = command("det", cmd_det, "row/column determinants, Hermitian determinant or double determinant")
    p.add_argument("--anchor", default="auto", help="row:i, col:j, det, ddet or auto (default)")
    p = command("inv", cmd_inv, "inverse through determinantal cofactors")
    p.add_argument("--method", choices=["auto", "hermitian", "general"], default="auto")
    p = command("solve", cmd_solve, "Cramer's rule for A x = b (right) or x A = b (left)")
    p.add_argument("--side", choices=["right", "left"])
    p.add_argument("--method", choices=["auto", "hermitian", "general"], default="auto")
    p = command("drazin", cmd_drazin, "index, rank and determinantal Drazin inverse")
    p.add_argument("--method", choices=["auto", "hermitian", "general"], default="auto")
    p = command("eig-normal", cmd_eig_normal, "standard eigenvalues and unitary diagonalization of a normal matrix")
    p.add_argument("--similarity", nargs="?", const="", default=None, metavar="FILE",
                   help="also diagonalize T N T^-1; T is read from FILE or, without FILE, from the input's 'T' key")
    p = command("exp", cmd_exp, "matrix exponential e^(A t)")
    p.add_argument("--t", default="1", help="time (default 1)")
    p = command("lqds-solve", cmd_lqds_solve, "closed-form solution of a linear differential system")
    p = command("lqds-verify", cmd_lqds_verify, "residual check of the closed-form solution")
    p.add_argument("--tol", type=float, default=1e-6, help="finite-difference residual tolerance")
    p = command("oracle", cmd_oracle, "compare the closed form with RK4")
    p.add_argument("--steps", type=int, default=2000, help="RK4 steps per grid interval")
    p.add_argument("--tol", type=float, default=1e-6)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Document()
    try:
        status = args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, SingularMatrixError, ShapeError, NonRealRootError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except QuatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    sys.stdout.write(out.render())
    return status


if __name__ == "__main__":
    sys.exit(main())
