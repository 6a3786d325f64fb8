"""Command-line front end: invariant checks, sweeps, cloning, sampling.

Subcommands
-----------
check   run the package invariant suites and report residuals
sweep   tabulate fidelity surfaces over an (alpha, eta) grid (CSV/JSON)
clone   clone one pure state and print the full diagnostic record (JSON)
sample  draw joint-measurement outcomes and chi-square them (JSON)

Exit codes: 0 success, 1 invariant failure, 2 usage or configuration
error.  All numeric output is serialized with 17 significant digits and
is byte-identical across reruns with the same configuration and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import cloner, fidelity, linalg, measurement
from .measurement import NonSaturating

SWEEP_COLUMNS = (
    "alpha", "beta", "eta", "p", "epsilon",
    "f_av_quad", "f_av_closed", "f_m_quad", "f_a_quad", "f_a_closed",
    "f_b_closed", "f_ma_closed", "f_mb_closed", "discrepancy_flags",
)


@dataclass(frozen=True)
class SweepConfig:
    alpha_steps: int
    eta_steps: int
    eta_min: float
    eta_max: float
    beta_policy: str | float
    resolution: int
    seed: int
    out: str
    fmt: str

    def validate(self) -> None:
        if self.alpha_steps < 2 or self.eta_steps < 2:
            raise ValueError("alpha-steps and eta-steps must both be >= 2")
        if not (-1e-9 <= self.eta_min <= self.eta_max <= math.pi + 1e-9):
            raise ValueError("eta range must satisfy 0 <= eta-min <= eta-max <= pi")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if self.resolution < 1:
            raise ValueError("quad-res must be >= 1")


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return _fmt(x)
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    raise TypeError(f"cannot serialize {type(v)!r}")


def _render_rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)  # default dialect emits CRLF line endings
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(
            [row[c] if isinstance(row[c], str) else _fmt(row[c]) for c in SWEEP_COLUMNS]
        )
    return buf.getvalue()


def _render_rows_json(rows: list[dict]) -> str:
    body = ",\n".join(
        "  {" + ", ".join(f"{json.dumps(c)}: {_json_value(row[c])}" for c in SWEEP_COLUMNS) + "}"
        for row in rows
    )
    return "[\n" + body + "\n]\n"


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _angles(args, names):
    scale = math.pi / 180.0 if getattr(args, "degrees", False) else 1.0
    return tuple(getattr(args, n) * scale for n in names)


def _resolve_beta(policy: str | float, alpha: float, eta: float) -> float:
    if policy == "max":
        return measurement.beta_max(alpha, eta)
    return float(policy)


def _bloch_state(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


# ----------------------------------------------------------------------
# check

def _random_geometry(rng) -> measurement.MeasurementGeometry:
    a = rng.normal(size=3)
    a /= np.linalg.norm(a)
    b = rng.normal(size=3)
    b /= np.linalg.norm(b)
    alpha = rng.uniform(0.0, 1.0)
    eta = float(np.arccos(np.clip(a @ b, -1.0, 1.0)))
    return measurement.build_geometry(a, b, alpha, measurement.beta_max(alpha, eta))


def _random_state(rng) -> np.ndarray:
    raw = rng.normal(size=2) + 1j * rng.normal(size=2)
    return raw / np.linalg.norm(raw)


def run_checks(trials: int = 200, grid: int = 15, seed: int = 0,
               resolution: int = 32) -> list[CheckResult]:
    """Run every invariant suite; each result carries its worst residual."""
    rng = np.random.default_rng(seed)
    results: list[CheckResult] = []

    def record(name: str, tolerance: float, fn) -> None:
        try:
            residual = float(fn())
            note = ""
        except Exception as exc:  # a crash counts as a failed invariant
            residual = float("inf")
            note = f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, residual, tolerance, note))

    unit_vecs = rng.normal(size=(trials, 3))
    unit_vecs /= np.linalg.norm(unit_vecs, axis=1, keepdims=True)

    def pauli_square():
        return max(
            np.max(np.abs(linalg.pauli_dot(n) @ linalg.pauli_dot(n) - linalg.IDENTITY_2))
            for n in unit_vecs
        )

    record("pauli square is identity", 1e-12, pauli_square)

    def eigenstates():
        worst = 0.0
        for n in unit_vecs:
            plus, minus = linalg.spin_eigenstates(n)
            op = linalg.pauli_dot(n)
            worst = max(
                worst,
                np.linalg.norm(op @ plus - plus),
                np.linalg.norm(op @ minus + minus),
                abs(np.vdot(plus, minus)),
                abs(np.vdot(plus, plus) - 1),
                abs(np.vdot(minus, minus) - 1),
            )
        return worst

    record("spin eigenstates orthonormal eigenpairs", 1e-12, eigenstates)

    def bloch_round_trip():
        worst = 0.0
        for _ in range(trials):
            c = rng.normal(size=3)
            c *= rng.uniform(0, 1) / np.linalg.norm(c)
            back = linalg.bloch_from_density(linalg.density_from_bloch(c))
            worst = max(worst, np.max(np.abs(back - c)))
        return worst

    record("bloch round trip", 1e-12, bloch_round_trip)

    def trace_preserved():
        worst = 0.0
        for _ in range(trials):
            raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho = raw @ raw.conj().T
            rho /= np.trace(rho).real
            for keep in (1, 2):
                worst = max(worst, abs(np.trace(linalg.partial_trace(rho, keep)).real - 1))
        return worst

    record("partial trace preserves trace", 1e-12, trace_preserved)

    alphas = np.linspace(0.0, 1.0, grid)
    etas = np.linspace(0.0, math.pi, grid)

    def grid_geometries():
        for alpha in alphas:
            for eta in etas:
                yield measurement.geometry_from_angles(
                    alpha, measurement.beta_max(alpha, eta), eta
                )

    def povm_completeness():
        return max(
            np.max(np.abs(sum(measurement.build_povm(g).elements) - linalg.IDENTITY_2))
            for g in grid_geometries()
        )

    record("povm completeness", 1e-12, povm_completeness)

    def povm_positivity():
        worst = 0.0
        for g in grid_geometries():
            for e in measurement.build_povm(g).elements:
                worst = max(worst, -float(np.linalg.eigvalsh(e).min()))
        return max(worst, 0.0)

    record("povm positivity", 1e-12, povm_positivity)

    def saturation():
        return max(
            abs(measurement.optimality_lhs(a, measurement.beta_max(a, e), e) - 2.0)
            for a in alphas
            for e in etas
        )

    record("saturation at maximal sharpness", 1e-9, saturation)

    def unbiasedness():
        worst = 0.0
        for _ in range(trials):
            g = _random_geometry(rng)
            psi = _random_state(rng)
            rho = np.outer(psi, psi.conj())
            (ap, am), (bp, bm) = measurement.marginal_operators(measurement.build_povm(g))
            got_a = np.trace(rho @ (ap - am)).real
            want_a = g.alpha * np.trace(rho @ linalg.pauli_dot(g.a)).real
            got_b = np.trace(rho @ (bp - bm)).real
            want_b = g.beta * np.trace(rho @ linalg.pauli_dot(g.b)).real
            worst = max(worst, abs(got_a - want_a), abs(got_b - want_b))
        return worst

    record("marginal unbiasedness", 1e-10, unbiasedness)

    def rank_one_form():
        worst = 0.0
        for _ in range(trials):
            g = _random_geometry(rng)
            povm = measurement.build_povm(g)
            m_plus, m_minus = linalg.spin_eigenstates(g.m)
            l_plus, l_minus = linalg.spin_eigenstates(g.l)
            for element, weight, state in (
                (povm.pp, g.p, m_plus),
                (povm.mm, g.p, m_minus),
                (povm.pm, 1 - g.p, l_plus),
                (povm.mp, 1 - g.p, l_minus),
            ):
                worst = max(
                    worst, np.max(np.abs(element - weight * np.outer(state, state.conj())))
                )
        return worst

    record("povm rank-one form", 1e-12, rank_one_form)

    def dilation_orthonormality():
        worst = 0.0
        for _ in range(trials):
            basis = cloner.naimark_basis(_random_geometry(rng))
            gram = np.array([[np.vdot(v, w) for w in basis.vectors] for v in basis.vectors])
            worst = max(worst, np.max(np.abs(gram - np.eye(4))))
        return worst

    record("dilation orthonormality", 1e-12, dilation_orthonormality)

    def dilation_born():
        worst = 0.0
        for _ in range(trials):
            g = _random_geometry(rng)
            basis = cloner.naimark_basis(g)
            povm = measurement.build_povm(g)
            psi = _random_state(rng)
            full = np.kron(psi, linalg.spin_eigenstates(g.b)[0])
            for vec, element in zip(basis.vectors, povm.elements):
                worst = max(
                    worst,
                    abs(abs(np.vdot(vec, full)) ** 2 - np.vdot(psi, element @ psi).real),
                )
        return worst

    record("dilation reproduces born probabilities", 1e-10, dilation_born)

    def unitarity():
        worst = 0.0
        for _ in range(trials):
            u = cloner.clone_unitary(_random_geometry(rng))
            worst = max(worst, np.max(np.abs(u.conj().T @ u - np.eye(4))))
        return worst

    record("cloning unitary unitarity", 1e-12, unitarity)

    def statistics_equivalence():
        worst = 0.0
        for _ in range(trials):
            g = _random_geometry(rng)
            psi = _random_state(rng)
            born = measurement.joint_distribution(
                np.outer(psi, psi.conj()), measurement.build_povm(g)
            ).as_array()
            clone_probs = cloner.clone_pure(g, psi).probabilities
            prepared = cloner.measure_and_prepare(g, psi)
            diag = np.array(
                [np.vdot(prod, prepared @ prod).real for prod in cloner.product_basis(g)]
            )
            worst = max(worst, np.max(np.abs(clone_probs - born)), np.max(np.abs(diag - born)))
        return worst

    record("statistics equivalence across schemes", 1e-10, statistics_equivalence)

    def bloch_transfer():
        worst = 0.0
        for _ in range(trials):
            g = _random_geometry(rng)
            if abs(np.sin(g.eta)) < 1e-6:
                continue
            psi = _random_state(rng)
            out = cloner.clone_pure(g, psi)
            c_in = linalg.bloch_from_density(np.outer(psi, psi.conj()))
            normal = np.cross(g.a, g.b)
            normal /= np.linalg.norm(normal)
            worst = max(
                worst,
                abs(g.a @ out.bloch_a - g.alpha * (g.a @ c_in)),
                abs(g.b @ out.bloch_b - g.beta * (g.b @ c_in)),
                abs(normal @ out.bloch_a - math.sqrt(1 - g.beta**2) * (normal @ c_in)),
                abs(normal @ out.bloch_b),
            )
        return worst

    record("bloch component transfer", 1e-10, bloch_transfer)

    def closed_forms():
        worst = 0.0
        for alpha, eta in ((0.2, 0.8), (0.6, math.pi / 2), (0.85, 2.4), (1.0, 0.0)):
            g = measurement.geometry_from_angles(alpha, measurement.beta_max(alpha, eta), eta)
            report = fidelity.fidelity_report(g, resolution=resolution)
            worst = max(
                worst,
                abs(report.f_b_quad - report.f_b_closed),
                abs(report.f_mb_closed - report.f_b_closed),
            )
        return worst

    record("single-clone closed forms vs quadrature", 1e-9, closed_forms)

    def ordering():
        worst = 0.0
        for alpha in np.linspace(0.0, 1.0, grid):
            for eta in np.linspace(0.0, math.pi, grid):
                g = measurement.geometry_from_angles(
                    alpha, measurement.beta_max(alpha, eta), eta
                )
                report = fidelity.fidelity_report(g, resolution=resolution)
                worst = max(worst, report.f_m_quad - report.f_av_quad)
        return max(worst, 0.0)

    record("cloner dominates measure-and-prepare", 1e-10, ordering)

    return results


def cmd_check(args) -> int:
    results = run_checks(trials=args.trials, grid=args.grid, seed=args.seed)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "ok  " if r.passed else "FAIL"
        line = f"{status}  {r.name:<{width}}  residual {r.residual:9.3e}  (tol {r.tolerance:.0e})"
        if r.note:
            line += f"  [{r.note}]"
        print(line)
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} invariant suites passed")
    return 1 if failed else 0


# ----------------------------------------------------------------------
# sweep

def sweep_rows(cfg: SweepConfig) -> list[dict]:
    """Compute the sweep table in grid order (alpha outer, eta inner)."""
    cfg.validate()
    rows = []
    for alpha in np.linspace(0.0, 1.0, cfg.alpha_steps):
        for eta in np.linspace(cfg.eta_min, cfg.eta_max, cfg.eta_steps):
            beta = _resolve_beta(cfg.beta_policy, alpha, eta)
            g = measurement.geometry_from_angles(alpha, beta, eta)
            rep = fidelity.fidelity_report(g, resolution=cfg.resolution)
            rows.append({
                "alpha": rep.alpha,
                "beta": rep.beta,
                "eta": rep.eta,
                "p": rep.p,
                "epsilon": rep.epsilon,
                "f_av_quad": rep.f_av_quad,
                "f_av_closed": rep.f_av_closed,
                "f_m_quad": rep.f_m_quad,
                "f_a_quad": rep.f_a_quad,
                "f_a_closed": rep.f_a_closed,
                "f_b_closed": rep.f_b_closed,
                "f_ma_closed": rep.f_ma_closed,
                "f_mb_closed": rep.f_mb_closed,
                "discrepancy_flags": ";".join(rep.discrepancies),
            })
    return rows


def cmd_sweep(args) -> int:
    eta_min, eta_max = _angles(args, ("eta_min", "eta_max"))
    beta = args.beta if args.beta == "max" else float(args.beta)
    cfg = SweepConfig(
        alpha_steps=args.alpha_steps,
        eta_steps=args.eta_steps,
        eta_min=eta_min,
        eta_max=eta_max,
        beta_policy=beta,
        resolution=args.quad_res,
        seed=args.seed,
        out=args.out,
        fmt=args.format,
    )
    rows = sweep_rows(cfg)
    text = _render_rows_csv(rows) if cfg.fmt == "csv" else _render_rows_json(rows)
    _write_text(cfg.out, text)
    return 0


# ----------------------------------------------------------------------
# clone

def cmd_clone(args) -> int:
    eta, theta, phi = _angles(args, ("eta", "theta", "phi"))
    beta = _resolve_beta(args.beta, args.alpha, eta)
    g = measurement.geometry_from_angles(args.alpha, beta, eta)
    psi = _bloch_state(theta, phi)
    out = cloner.clone_pure(g, psi)
    c_in = linalg.bloch_from_density(np.outer(psi, psi.conj()))
    normal = np.array([0.0, 1.0, 0.0])  # plane normal in the canonical frame
    record = {
        "alpha": g.alpha,
        "beta": g.beta,
        "eta": g.eta,
        "p": g.p,
        "epsilon": g.epsilon,
        "state": {"theta": theta, "phi": phi},
        "lambdas": [[lam.real, lam.imag] for lam in out.lambdas],
        "probabilities": list(out.probabilities),
        "bloch_in": list(c_in),
        "bloch_a": list(out.bloch_a),
        "bloch_b": list(out.bloch_b),
        "residuals": {
            "axis_a_transfer": abs(g.a @ out.bloch_a - g.alpha * (g.a @ c_in)),
            "axis_b_transfer": abs(g.b @ out.bloch_b - g.beta * (g.b @ c_in)),
            "normal_transfer_a": abs(
                normal @ out.bloch_a - math.sqrt(max(1 - g.beta**2, 0.0)) * (normal @ c_in)
            ),
            "normal_component_b": abs(normal @ out.bloch_b),
        },
    }
    _write_text(args.out, _json_value(record) + "\n")
    return 0


# ----------------------------------------------------------------------
# sample

def cmd_sample(args) -> int:
    eta, theta, phi = _angles(args, ("eta", "theta", "phi"))
    beta = _resolve_beta(args.beta, args.alpha, eta)
    g = measurement.geometry_from_angles(args.alpha, beta, eta)
    if not 0.0 <= args.bloch_r <= 1.0:
        raise ValueError("bloch-r must lie in [0, 1]")
    direction = np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )
    rho = linalg.density_from_bloch(args.bloch_r * direction)
    counts = measurement.sample_outcomes(rho, g, args.n, seed=args.seed)
    expected = measurement.joint_distribution(rho, measurement.build_povm(g)).as_array()
    observed = np.array([counts[k] for k in measurement.OUTCOME_LABELS], dtype=float)
    supported = expected > 0
    chi2 = float(np.sum(
        (observed[supported] - args.n * expected[supported]) ** 2
        / (args.n * expected[supported])
    ))
    dof = int(supported.sum()) - 1
    p_value = float(stats.chi2.sf(chi2, dof)) if dof > 0 else 1.0
    record = {
        "alpha": g.alpha,
        "beta": g.beta,
        "eta": g.eta,
        "n": args.n,
        "seed": args.seed,
        "labels": list(measurement.OUTCOME_LABELS),
        "counts": [counts[k] for k in measurement.OUTCOME_LABELS],
        "frequencies": list(observed / args.n),
        "expected": list(expected),
        "chi_square": chi2,
        "dof": dof,
        "p_value": p_value,
    }
    _write_text(args.out, _json_value(record) + "\n")
    return 0


# ----------------------------------------------------------------------

def _add_geometry_flags(sub, with_state: bool = True) -> None:
    sub.add_argument("--alpha", type=float, required=True, help="sharpness of the a component")
    sub.add_argument("--beta", default="max",
                     help="sharpness of the b component, or 'max' for the saturating value")
    sub.add_argument("--eta", type=float, required=True, help="angle between the a and b axes")
    if with_state:
        sub.add_argument("--theta", type=float, default=0.0, help="polar Bloch angle of the input state")
        sub.add_argument("--phi", type=float, default=0.0, help="azimuthal Bloch angle of the input state")
    sub.add_argument("--degrees", action="store_true", help="interpret input angles as degrees")
    sub.add_argument("--out", default="-", help="output path, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinclone",
        description="Optimal joint measurement of two qubit spin components via cloning.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_check = subs.add_parser("check", help="run all invariant suites")
    p_check.add_argument("--trials", type=int, default=200, help="random draws per suite")
    p_check.add_argument("--grid", type=int, default=15, help="grid steps per axis for grid suites")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_check)

    p_sweep = subs.add_parser("sweep", help="tabulate fidelity surfaces over (alpha, eta)")
    p_sweep.add_argument("--alpha-steps", type=int, default=41)
    p_sweep.add_argument("--eta-steps", type=int, default=41)
    p_sweep.add_argument("--eta-min", type=float, default=0.0)
    p_sweep.add_argument("--eta-max", type=float, default=math.pi)
    p_sweep.add_argument("--beta", default="max",
                         help="'max' (saturating) or a fixed numeric sharpness")
    p_sweep.add_argument("--quad-res", type=int, default=fidelity.DEFAULT_RESOLUTION)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", required=True, help="output path, '-' for stdout")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--degrees", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_clone = subs.add_parser("clone", help="clone one pure state and print diagnostics")
    _add_geometry_flags(p_clone)
    p_clone.set_defaults(func=cmd_clone)

    p_sample = subs.add_parser("sample", help="sample joint-measurement outcomes")
    _add_geometry_flags(p_sample)
    p_sample.add_argument("--bloch-r", type=float, default=1.0,
                          help="Bloch vector length of the measured state (0 = maximally mixed)")
    p_sample.add_argument("--n", type=int, required=True, help="number of draws")
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
