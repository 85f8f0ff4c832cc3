"""Command-line entry point: ``dsdkit {gen,dsd,hist,walk-compare,verify,oracle}``.

Exit codes: 0 success, 1 verification failure, 2 disconnected input,
3 unreadable/unparsable input, 4 non-convergent walk requested,
5 invalid arguments.
"""
import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .closed_form import (
    cycle_dsd_q_asymptotic,
    cycle_dsd_q_exact,
    hypercube_dsd_q,
    path_dsd_q_asymptotic,
    path_dsd_q_exact,
)
from .dsd import (
    check_alpha,
    check_q,
    dsd,
    dsd2_upper_bound,
    dsd_all_pairs,
    fundamental_matrix,
    lambda1_diameter_bound,
    pairwise_row_distances,
)
from .errors import (
    Disconnected,
    DsdError,
    DuplicateEdge,
    NonconvergentWalk,
    ParseError,
    SelfLoopInInput,
)
from .graph import cycle_graph, from_edge_list, hypercube_graph, is_bipartite, is_connected, path_graph
from .random_graphs import WeightSequence, chung_lu, gnp
from .spectral import greens_function, normalized_laplacian, spectrum
from .walk import convergence_rate, optimal_alpha, walk_estimates

EXIT_OK, EXIT_VERIFY, EXIT_DISCONNECTED, EXIT_PARSE, EXIT_NONCONVERGENT, EXIT_USAGE = range(6)

DEFAULT_BINS = 50
GREEN_TOL = 1e-8
FUNDAMENTAL_TOL = 1e-7
METRIC_TOL = 1e-8


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class Histogram:
    """Equal-width counts; bins are right-open except the last."""

    bin_edges: np.ndarray
    counts: np.ndarray

    @property
    def total(self):
        return int(self.counts.sum())


def make_histogram(values, bins=DEFAULT_BINS):
    """Bin ``values`` into ``bins`` equal intervals over [min, max].

    If every value is equal (up to rounding, relative 1e-9) the range is
    widened to ``v +- 0.5`` with a single bin so nothing is dropped.
    """
    if bins < 1:
        raise CliError(EXIT_USAGE, "bins must be >= 1")
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return Histogram(np.array([0.0, 1.0]), np.zeros(1, dtype=np.int64))
    lo, hi = float(values.min()), float(values.max())
    if hi - lo <= 1e-9 * max(1.0, abs(hi)):
        lo, hi, bins = lo - 0.5, hi + 0.5, 1
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    return Histogram(edges, counts.astype(np.int64))


def fmt(x):
    """Shortest round-trip representation of a float."""
    return repr(float(x))


def _parse_q(text):
    if str(text).lower() in ("inf", "infinity", "max"):
        return math.inf
    try:
        return check_q(float(text))
    except (ValueError, DsdError) as exc:
        raise argparse.ArgumentTypeError(f"invalid q {text!r}: need a real >= 1 or 'inf'") from exc


def _read_text(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc


def _load_graph(path):
    try:
        return from_edge_list(_read_text(path))
    except (ParseError, DuplicateEdge, SelfLoopInInput) as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}") from exc


def _load_connected(path):
    g = _load_graph(path)
    if not is_connected(g):
        raise CliError(EXIT_DISCONNECTED, "input graph is disconnected")
    return g


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout
    return open(path, "w", newline="")


def _write(args, text):
    out = _open_out(args.out)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


def _parse_pairs(text):
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a, b = item.split(":")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise CliError(EXIT_USAGE, f"bad pair {item!r}; expected u:v") from None
    return pairs


# -- subcommands ----------------------------------------------------------

def cmd_gen(args):
    family = args.family
    if family == "gnp":
        g = gnp(args.n, args.p, args.seed)
    elif family == "chung-lu":
        if not args.weights_file:
            raise CliError(EXIT_USAGE, "chung-lu needs --weights-file")
        try:
            w = WeightSequence.from_text(_read_text(args.weights_file))
        except ValueError as exc:
            raise CliError(EXIT_PARSE, f"bad weights file: {exc}") from exc
        g = chung_lu(w, args.seed)
    elif family == "path":
        g = path_graph(args.n)
    elif family == "cycle":
        g = cycle_graph(args.n)
    else:
        g = hypercube_graph(args.n)

    edges = [(u, v) for u, v in g.edges() if u != v or args.keep_loops]
    dropped = g.num_edges - len(edges)
    if dropped:
        print(f"note: dropped {dropped} self-loop(s); use --keep-loops to emit them",
              file=sys.stderr)
    lines = [f"# n={g.n} m={len(edges)}"] + [f"{u} {v}" for u, v in edges]
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_dsd(args):
    g = _load_connected(args.input)
    gm = greens_function(spectrum(g), g)
    scale = 1.0 / (1.0 - check_alpha(args.alpha))
    shift = 1 if args.one_based else 0
    rows = ["u,v,dsd"]
    if args.pairs == "all":
        D = dsd_all_pairs(gm, args.q)
        iu, iv, vals = D.upper_triangle()
        for u, v, d in zip(iu, iv, vals):
            rows.append(f"{u + shift},{v + shift},{fmt(d * scale)}")
    else:
        for u, v in _parse_pairs(args.pairs):
            d = dsd(gm, u - shift, v - shift, args.q) * scale
            rows.append(f"{u},{v},{fmt(d)}")
    _write(args, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_hist(args):
    g = _load_connected(args.input)
    gm = greens_function(spectrum(g), g)
    _, _, vals = dsd_all_pairs(gm, args.q).upper_triangle()
    h = make_histogram(vals, args.bins)
    doc = {
        "q": "inf" if math.isinf(args.q) else args.q,
        "n": g.n,
        "bin_edges": [float(x) for x in h.bin_edges],
        "counts": [int(c) for c in h.counts],
    }
    _write(args, json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_walk_compare(args):
    g = _load_connected(args.input)
    u, v = g.check_vertex(args.u), g.check_vertex(args.v)
    sd = spectrum(g)
    gm = greens_function(sd, g)
    if args.alpha == "auto":
        alpha, _ = optimal_alpha(sd.lambda1, sd.lambda_max)
    else:
        try:
            alpha = float(args.alpha)
        except ValueError:
            raise CliError(EXIT_USAGE, f"alpha must be a number or 'auto', got {args.alpha!r}") from None
    if alpha == 0.0 and is_bipartite(g):
        raise CliError(EXIT_NONCONVERGENT,
                       "alpha=0 on a bipartite graph: the walk difference does not converge")
    truth = dsd(gm, u, v, args.q)
    rate = convergence_rate(sd.lambda1, sd.lambda_max, alpha)
    est = walk_estimates(g, u, v, args.q, alpha, args.k_max)
    err = np.abs(est - truth)
    target = 1e-4 * truth if truth > 0 else 1e-12
    hit = np.nonzero(err <= target)[0]
    stop = int(hit[0]) if len(hit) else args.k_max
    rows = ["k,alpha,estimate,truth,abs_error,predicted_rate"]
    for k in range(stop + 1):
        rows.append(f"{k},{fmt(alpha)},{fmt(est[k])},{fmt(truth)},{fmt(err[k])},{fmt(rate)}")
    if not len(hit):
        print(f"warning: k_max={args.k_max} reached before abs_error <= 1e-4 * truth",
              file=sys.stderr)
    _write(args, "\n".join(rows) + "\n")
    return EXIT_OK


def run_checks(g):
    """All self-consistency checks on one connected graph, as a list of dicts."""
    checks = []

    def add(name, value, tol, ok=None):
        ok = bool(value <= tol) if ok is None else bool(ok)
        checks.append({"check": name, "value": float(value), "tol": float(tol), "pass": ok})

    sd = spectrum(g)
    O, n = sd.eigenvectors, g.n
    add("eigenvector_orthonormality", np.abs(O.T @ O - np.eye(n)).max(), GREEN_TOL)
    add("spectral_reassembly", np.abs(sd.reassemble() - normalized_laplacian(g)).max(), GREEN_TOL)
    gm = greens_function(sd, g)
    add("greens_g1", gm.residual_g1, GREEN_TOL)
    add("greens_g2", gm.residual_g2, GREEN_TOL)
    add("greens_conjugation", gm.residual_conjugation, GREEN_TOL)

    Z = fundamental_matrix(g)
    worst = 0.0
    for q in (1.0, 2.0, math.inf):
        a = pairwise_row_distances(gm.G, q)
        b = pairwise_row_distances(Z, q)
        worst = max(worst, float(np.abs(a - b).max()))
    add("fundamental_equivalence", worst, FUNDAMENTAL_TOL)

    D = dsd_all_pairs(gm, 1.0).values
    add("metric_symmetry", np.abs(D - D.T).max(), METRIC_TOL)
    add("metric_zero_diagonal", np.abs(np.diag(D)).max(), METRIC_TOL)
    viol = 0.0
    for w in range(n):
        viol = max(viol, float((D - (D[:, w][:, None] + D[w, :][None, :])).max()))
    add("metric_triangle", max(viol, 0.0), METRIC_TOL)

    D2 = pairwise_row_distances(gm.G, 2.0)
    bound = dsd2_upper_bound(sd, g)
    add("dsd2_upper_bound", D2.max() - bound, METRIC_TOL)
    lb = lambda1_diameter_bound(g)
    add("lambda1_diameter_bound", lb, sd.lambda1, ok=sd.lambda1 > lb)
    return checks


def cmd_verify(args):
    g = _load_connected(args.input)
    checks = run_checks(g)
    ok = all(c["pass"] for c in checks)
    report = {"n": g.n, "m": g.num_edges, "pass": ok, "checks": checks}
    if args.json:
        _write(args, json.dumps(report, indent=2) + "\n")
    else:
        lines = [f"graph: n={g.n} m={g.num_edges}"]
        for c in checks:
            status = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{status} {c['check']}: value={c['value']:.6g} tol={c['tol']:.6g}")
        lines.append("all checks passed" if ok else
                     "FAILED: " + ", ".join(c["check"] for c in checks if not c["pass"]))
        _write(args, "\n".join(lines) + "\n")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args):
    n, q = args.n, args.q
    if args.family == "path":
        exact, lead = path_dsd_q_exact(n, q), path_dsd_q_asymptotic(n, q)
    elif args.family == "cycle":
        exact, lead = cycle_dsd_q_exact(n, q), cycle_dsd_q_asymptotic(n, q)
    else:
        exact, lead = hypercube_dsd_q(n, q), None
    qs = "inf" if math.isinf(q) else fmt(q)
    row = [args.family, str(n), qs, fmt(exact)]
    row += ["", ""] if lead is None else [fmt(lead), fmt(exact / lead)]
    _write(args, "family,n,q,exact,leading,ratio\n" + ",".join(row) + "\n")
    return EXIT_OK


# -- argument parsing -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="dsdkit", description="Diffusion state distance toolkit")
    p.add_argument("--threads", type=int, default=None,
                   help="cap on kernel threads (env DSDKIT_THREADS)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_out(sp):
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        return sp

    sp = with_out(sub.add_parser("gen", help="emit a graph as an edge list"))
    sp.add_argument("family", choices=["gnp", "chung-lu", "path", "cycle", "hypercube"])
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--weights-file")
    sp.add_argument("--keep-loops", action="store_true",
                    help="emit Chung-Lu self-loops as 'v v' lines (not re-readable)")
    sp.set_defaults(func=cmd_gen)

    sp = with_out(sub.add_parser("dsd", help="DSD values as CSV"))
    sp.add_argument("input", help="edge-list file or '-'")
    sp.add_argument("--q", type=_parse_q, default=1.0)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--pairs", default="all", help="'all' or a list like 0:3,1:2")
    sp.add_argument("--one-based", action="store_true")
    sp.set_defaults(func=cmd_dsd)

    sp = with_out(sub.add_parser("hist", help="histogram of all-pairs DSD as JSON"))
    sp.add_argument("input")
    sp.add_argument("--q", type=_parse_q, default=1.0)
    sp.add_argument("--bins", type=int, default=DEFAULT_BINS)
    sp.set_defaults(func=cmd_hist)

    sp = with_out(sub.add_parser("walk-compare", help="lazy-walk estimate vs spectral value per k"))
    sp.add_argument("input")
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--q", type=_parse_q, default=1.0)
    sp.add_argument("--alpha", default="auto")
    sp.add_argument("--k-max", type=int, default=10_000)
    sp.set_defaults(func=cmd_walk_compare)

    sp = with_out(sub.add_parser("verify", help="identity and metric self-checks"))
    sp.add_argument("input")
    sp.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    sp.add_argument("--report", default=None, help="also write the JSON report here")
    sp.set_defaults(func=cmd_verify)

    sp = with_out(sub.add_parser("oracle", help="closed-form DSD for path/cycle/hypercube"))
    sp.add_argument("family", choices=["path", "cycle", "hypercube"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=_parse_q, default=1.0)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.threads is not None:
        _kernels.set_threads(args.threads)
    if args.command == "gen" and args.family != "chung-lu" and args.n is None:
        print("dsdkit gen: --n is required", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "gen" and args.family == "gnp" and args.p is None:
        print("dsdkit gen gnp: --p is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"dsdkit: {exc}", file=sys.stderr)
        return exc.code
    except Disconnected as exc:
        print(f"dsdkit: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except NonconvergentWalk as exc:
        print(f"dsdkit: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except DsdError as exc:
        print(f"dsdkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
