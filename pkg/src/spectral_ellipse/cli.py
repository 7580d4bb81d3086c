"""Command line surface: analyze a matrix file, run seeded verification
campaigns, print the tightness table, and compute eigensolver-free bounds.

Exit codes: 0 success, 1 ParseError, 2 NonSquare, 3 NonConvergence,
4 MomentMismatch.  `verify` exits 0 iff its CSV contains no Violated row.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import ellipse as el
from . import hull as hl
from . import matrix as mx
from . import spectrum as sp
from .ensembles import KINDS, EnsembleSpec, counter_value, generate
from .matrixio import NonSquare, ParseError, load_matrix
from .numerics import NonConvergence, principal_sqrt
from .report import SCHEMA, canonical_json, complex_obj, csv_row, fmt_float
from .spectrum import MomentMismatch
from .svgplot import render_svg

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NONSQUARE = 2
EXIT_NONCONVERGENCE = 3
EXIT_MOMENT = 4

CSV_HEADER = "seed,n,q_abs,a,b,min_margin,sweep_min,verdict"


@dataclass(frozen=True)
class PipelineSettings:
    """Knobs shared by the analysis pipeline and verification campaigns."""

    moment_tol: float = 1e-8
    slack_scale: float = 1e-8
    sweep_k: int = 720

    def slack(self, values) -> float:
        return self.slack_scale * (1.0 + max(abs(v) for v in values))


@dataclass(frozen=True)
class AnalysisArtifacts:
    spectrum: sp.Spectrum
    hull: hl.HullPolygon
    ellipse: el.SpectralEllipse | None


def analyze_matrix(a, settings: PipelineSettings = PipelineSettings()):
    """Full pipeline: decompose, eigensolve, shifted ellipse, hull,
    containment, trace-only bound.  Returns (report dict, artifacts)."""
    n = a.shape[0]
    d = mx.decompose(a)
    spectrum = sp.eigenvalues(a, settings.moment_tol)
    observed = max(abs(v) for v in spectrum.values)
    hull = hl.convex_hull(spectrum.values)

    report = {
        "schema": SCHEMA,
        "n": n,
        "gamma": complex_obj(d.gamma),
        "q_total": complex_obj(d.q_total),
        "q_traceless": complex_obj(d.q_traceless),
        "eigenvalues": [complex_obj(v) for v in spectrum.values],
    }

    if n < 2:
        report["ellipse"] = None
        report["hull_vertices"] = [complex_obj(v) for v in hull.vertices]
        report["containment"] = None
        report["bounds"] = {
            "trace_only_lower": None,
            "observed_spectral_radius": observed,
        }
        report["note"] = "dimension < 2"
        return report, AnalysisArtifacts(spectrum, hull, None)

    shape = el.shifted_ellipse(d, spectrum)
    containment = hl.contains_ellipse(hull, shape, settings.slack(spectrum.values))
    lower = el.trace_only_bound(mx.trace(a), d.q_total, n)

    report["ellipse"] = {
        "center": complex_obj(shape.center),
        "semimajor": shape.semimajor,
        "semiminor": shape.semiminor,
        "major_dir_angle_rad": math.atan2(shape.major_dir.imag, shape.major_dir.real),
        "foci": [complex_obj(f) for f in shape.foci],
    }
    report["hull_vertices"] = [complex_obj(v) for v in hull.vertices]
    report["containment"] = {
        "verdict": containment.verdict,
        "min_margin": containment.min_margin,
        "worst_direction_angle_rad": containment.worst_direction.angle(),
    }
    report["bounds"] = {
        "trace_only_lower": lower,
        "observed_spectral_radius": observed,
    }
    return report, AnalysisArtifacts(spectrum, hull, shape)


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    n: int
    q_abs: float | None
    semimajor: float | None
    semiminor: float | None
    min_margin: float | None
    sweep_min: float | None
    verdict: str

    def csv(self) -> str:
        return csv_row(
            (
                self.seed,
                self.n,
                self.q_abs,
                self.semimajor,
                self.semiminor,
                self.min_margin,
                self.sweep_min,
                self.verdict,
            )
        )


def run_trial(kind: str, n: int, trial_seed: int, settings: PipelineSettings) -> TrialRecord:
    """One verification trial: generate, eigensolve, build the ellipse from
    the normalized spectrum, certify containment, and sweep the directional
    oracle.  MomentMismatch is recorded, not raised."""
    a = generate(EnsembleSpec(kind=kind, n=n, seed=trial_seed))
    try:
        spectrum = sp.eigenvalues(a, settings.moment_tol)
    except MomentMismatch:
        return TrialRecord(trial_seed, n, None, None, None, None, None, "MomentMismatch")
    d = mx.decompose(a)
    shifted = tuple(v - d.gamma for v in spectrum.values)
    q0 = sum(v * v for v in shifted)
    ns = el.normalize_mu(shifted, q0)
    ax = el.axis_sums(ns)
    shape = el.ellipse_from_normalized(ns, n, center=d.gamma)
    hull = hl.convex_hull(spectrum.values)
    containment = hl.contains_ellipse(hull, shape, settings.slack(spectrum.values))
    sweep = hl.sweep_margins(ns, ax, n, settings.sweep_k)
    return TrialRecord(
        seed=trial_seed,
        n=n,
        q_abs=ns.q_abs,
        semimajor=shape.semimajor,
        semiminor=shape.semiminor,
        min_margin=containment.min_margin,
        sweep_min=min(sweep),
        verdict=containment.verdict,
    )


def run_verify(kind: str, n: int, trials: int, seed: int, settings: PipelineSettings):
    """Seeded campaign; trial t uses the derived seed counter_value(seed, t)."""
    records = [run_trial(kind, n, counter_value(seed, t), settings) for t in range(trials)]
    return records


def _summarize(records) -> str:
    contained = sum(1 for r in records if r.verdict == hl.CONTAINED)
    mismatched = sum(1 for r in records if r.verdict == "MomentMismatch")
    evaluated = len(records) - mismatched
    margins = [r.min_margin for r in records if r.min_margin is not None]
    worst = fmt_float(min(margins)) if margins else "n/a"
    return (
        f"{contained}/{evaluated} contained, {mismatched} moment-mismatch skipped, "
        f"worst margin {worst}"
    )


def tightness_rows(n_max: int):
    """Rows of the extremal-family table: spectrum of n-1 eigenvalues -1 and
    one eigenvalue n-1 has sqrt(Q) = sqrt(n(n-1)), hull [-1, n-1], and its
    ellipse degenerates to a segment of half-length sqrt(n/(2(n-1))) <= 1."""
    if n_max < 2:
        raise ValueError(f"table needs n_max >= 2, got {n_max}")
    rows = []
    for n in range(2, n_max + 1):
        sqrt_q = math.sqrt(n * (n - 1))
        semimajor = math.sqrt(n / (2.0 * (n - 1)))
        rows.append(
            {
                "n": n,
                "sqrt_q": sqrt_q,
                "semimajor": semimajor,
                "hull": (-1.0, float(n - 1)),
                "left_margin": 1.0 - semimajor,
            }
        )
    return rows


def _format_tightness_table(rows) -> str:
    lines = [f"{'n':>4}  {'sqrt_Q':>22}  {'semimajor_a':>22}  {'hull':>16}  {'left_margin':>22}"]
    for r in rows:
        hull_txt = f"[-1, {int(r['hull'][1])}]"
        lines.append(
            f"{r['n']:>4}  {fmt_float(r['sqrt_q']):>22}  {fmt_float(r['semimajor']):>22}  "
            f"{hull_txt:>16}  {fmt_float(r['left_margin']):>22}"
        )
    lines.append(f"limit: semimajor -> 1/sqrt(2) = {fmt_float(1.0 / math.sqrt(2.0))}")
    return "\n".join(lines) + "\n"


def bound_report(a) -> dict:
    """Eigensolver-free report: gamma, Q of the traceless part, the two foci,
    and the spectral radius lower bound."""
    n = a.shape[0]
    d = mx.decompose(a)
    report = {
        "schema": SCHEMA,
        "n": n,
        "gamma": complex_obj(d.gamma),
        "q_traceless": complex_obj(d.q_traceless),
    }
    if n < 2:
        report["foci"] = None
        report["trace_only_lower"] = None
        report["note"] = "dimension < 2"
        return report
    f = principal_sqrt(d.q_traceless) / (math.sqrt(2.0) * (n - 1))
    report["foci"] = [complex_obj(d.gamma + f), complex_obj(d.gamma - f)]
    report["trace_only_lower"] = el.trace_only_bound(mx.trace(a), d.q_total, n)
    return report


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-ellipse",
        description=(
            "Inscribed spectral ellipses: per-matrix analysis, bulk verification, "
            "the extremal tightness table, and trace-only spectral radius bounds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full pipeline report for one matrix file")
    pa.add_argument("path")
    pa.add_argument("--format", choices=("mtx", "json"), default=None)
    pa.add_argument("--tol", type=float, default=1e-8, help="moment tolerance scale")
    pa.add_argument("--slack", type=float, default=1e-8, help="containment slack scale")
    pa.add_argument("--json", dest="json_path", default=None, help="also write the report here")
    pa.add_argument("--svg", dest="svg_path", default=None, help="write an SVG plot here")

    pv = sub.add_parser("verify", help="seeded ensemble verification campaign")
    pv.add_argument("--ensemble", choices=KINDS, required=True)
    pv.add_argument("-n", "--dimension", dest="n", type=int, required=True)
    pv.add_argument("--trials", type=_positive_int, default=100)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.add_argument("--slack", type=float, default=1e-8)
    pv.add_argument("--sweep-k", type=int, default=720)
    pv.add_argument("--csv", dest="csv_path", default=None, help="write the trial CSV here")

    pt = sub.add_parser("tightness", help="extremal family table for n = 2..n_max")
    pt.add_argument("n_max", type=int)

    pb = sub.add_parser("bound", help="trace-only spectral radius lower bound")
    pb.add_argument("path")
    pb.add_argument("--format", choices=("mtx", "json"), default=None)
    pb.add_argument("--json", dest="json_path", default=None)

    return parser


def _cmd_analyze(args) -> int:
    a = load_matrix(args.path, args.format)
    settings = PipelineSettings(moment_tol=args.tol, slack_scale=args.slack)
    report, artifacts = analyze_matrix(a, settings)
    text = canonical_json(report)
    sys.stdout.write(text)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.svg_path:
        svg = render_svg(artifacts.spectrum.values, artifacts.hull, artifacts.ellipse)
        with open(args.svg_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.n < 2:
        raise argparse.ArgumentTypeError("verification needs dimension >= 2")
    settings = PipelineSettings(
        moment_tol=args.tol, slack_scale=args.slack, sweep_k=args.sweep_k
    )
    records = run_verify(args.ensemble, args.n, args.trials, args.seed, settings)
    csv_text = CSV_HEADER + "\n" + "".join(r.csv() + "\n" for r in records)
    if args.csv_path:
        with open(args.csv_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        sys.stdout.write(_summarize(records) + "\n")
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(_summarize(records) + "\n")
    violated = any(r.verdict == hl.VIOLATED for r in records)
    return EXIT_PARSE if violated else EXIT_OK


def _cmd_tightness(args) -> int:
    rows = tightness_rows(args.n_max)
    sys.stdout.write(_format_tightness_table(rows))
    return EXIT_OK


def _cmd_bound(args) -> int:
    a = load_matrix(args.path, args.format)
    text = canonical_json(bound_report(a))
    sys.stdout.write(text)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "verify": _cmd_verify,
        "tightness": _cmd_tightness,
        "bound": _cmd_bound,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except NonSquare as exc:
        sys.stderr.write(f"not square: {exc}\n")
        return EXIT_NONSQUARE
    except NonConvergence as exc:
        sys.stderr.write(f"eigensolver did not converge: {exc}\n")
        return EXIT_NONCONVERGENCE
    except MomentMismatch as exc:
        sys.stderr.write(f"moment validation failed: {exc}\n")
        return EXIT_MOMENT


if __name__ == "__main__":
    sys.exit(main())
