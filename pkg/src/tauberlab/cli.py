"""Command-line front end: growth-spec parsing, pipeline orchestration, and
deterministic CSV/JSON artifacts with companion plot scripts.

Subcommands
    rate        evaluate the log-augmented rate (or two-function variant) and
                its right inverse at a time value
    invert      right inverse of the growth function itself
    specialfn   build a strip kernel, serialize it, and report its checks
    witness     one optimized decay-floor certificate as JSON
    sweep       certificate sweep over a time grid (CSV + JSON summary)
    truncate    split a witness at zero and verify the half-plane and
                continuation-agreement bounds
    semigroup   multiplication-model decay norms or shift-model certified
                lower bounds (CSV + JSON + plot script)
    verify      run the full deterministic property suite, write a report

Exit codes: 0 success; 1 verification failure (or runtime failure of a
requested computation); 2 configuration/usage error.  All floats are
serialized with 17 significant digits, so artifact round trips are exact and
identical configurations yield byte-identical outputs.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import growth, regions, semigroup, specialfn, truncate, witness, xforms
from .errors import ConfigurationError, TauberlabError

__all__ = ["main", "build_parser", "emit_plot_script"]


# ---------------------------------------------------------------------------
# helpers


def _fmt(x) -> str:
    if x is None:
        return "nan"
    return f"{float(x):.17g}"


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")


def _out_dir(args) -> Path:
    out = Path(getattr(args, "out", ".") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _default_eps(args, m: growth.GrowthFunction) -> float:
    if getattr(args, "eps", None) is not None:
        return float(args.eps)
    return math.pi * m.m0 / 6.0


def _t_grid(args) -> np.ndarray:
    if not (args.t_max > args.t_min > 0):
        raise ConfigurationError(
            f"need 0 < t-min < t-max, got [{args.t_min}, {args.t_max}]"
        )
    if args.t_count < 2:
        raise ConfigurationError(f"t-count must be at least 2, got {args.t_count}")
    return np.geomspace(args.t_min, args.t_max, args.t_count)


def emit_plot_script(report: semigroup.DecayReport, path) -> tuple[Path, Path]:
    """Write the report as <path>.csv plus a plain-text log-log plotting
    script <path>.plt (one series per curve); errors on an empty report
    before creating any file."""
    if report.t_grid.size == 0:
        raise ConfigurationError("cannot emit a plot script for an empty report")
    base = Path(path)
    csv_path = base.with_suffix(".csv")
    plt_path = base.with_suffix(".plt")
    report.to_csv(csv_path)
    lines = [
        f"# {report.kind} decay curves; render with: gnuplot {plt_path.name}",
        "set datafile separator ','",
        "set logscale xy",
        "set xlabel 't'",
        "set ylabel 'norm value'",
        "set key left bottom",
        f"plot '{csv_path.name}' using 1:2 with linespoints title 'measured or lower bound', \\",
        f"     '{csv_path.name}' using 1:3 with lines title 'd1 over log-augmented rate inverse', \\",
        f"     '{csv_path.name}' using 1:4 with lines title 'd2 over growth inverse'",
        "",
    ]
    plt_path.write_text("\n".join(lines))
    return csv_path, plt_path


# ---------------------------------------------------------------------------
# config files (key=value lines mirroring long flag names)


def _read_config_file(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigurationError(f"{path}:{lineno}: empty key")
        cfg[key.replace("-", "_")] = value
    return cfg


def _coerce_unknown(raw: str):
    try:
        return float(raw)
    except ValueError:
        return raw


def _coerce_like(raw: str, current):
    if isinstance(current, bool):
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigurationError(f"expected a boolean, got {raw!r}")
    try:
        if isinstance(current, int) and not isinstance(current, bool):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
    except ValueError as exc:
        raise ConfigurationError(f"bad numeric value {raw!r}") from exc
    return raw


def _apply_config(args: argparse.Namespace, argv: list[str]) -> None:
    if not getattr(args, "config", None):
        return
    explicit = set()
    for token in argv:
        if token.startswith("--"):
            explicit.add(token[2:].split("=", 1)[0].replace("-", "_"))
    for key, raw in _read_config_file(args.config).items():
        if not hasattr(args, key):
            raise ConfigurationError(f"unknown config key {key!r}")
        if key in explicit or key in ("config", "command"):
            continue
        current = getattr(args, key)
        setattr(args, key, _coerce_unknown(raw) if current is None else _coerce_like(raw, current))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_rate(args) -> int:
    _require(args, "m", "t")
    m = growth.parse_growth_spec(args.m)
    k = growth.parse_growth_spec(args.k) if args.k else None
    rate = growth.m_k(m, k) if k is not None else growth.m_log(m)
    name = "m_k" if k is not None else "m_log"
    print(f"m: {m.label}")
    if k is not None:
        print(f"k: {k.label}")
    print(f"{name}(s={_fmt(args.t)}) = {_fmt(rate(args.t))}")
    print(f"{name}_inverse(t={_fmt(args.t)}) = {_fmt(growth.right_inverse(rate, args.t))}")
    print(f"m_inverse(t={_fmt(args.t)}) = {_fmt(growth.right_inverse(m, args.t))}")
    return 0


def _cmd_invert(args) -> int:
    _require(args, "m", "t")
    m = growth.parse_growth_spec(args.m)
    print(f"m: {m.label}")
    print(f"m_inverse(t={_fmt(args.t)}) = {_fmt(growth.right_inverse(m, args.t))}")
    return 0


def _cmd_specialfn(args) -> int:
    out = _out_dir(args)
    strip = specialfn.build_strip_function(args.m0)
    kernel = specialfn.build_kernel(strip)
    data_path, header_path = specialfn.save_kernel(kernel, out / "kernel")
    grid = regions.sample(regions.strip(growth.constant(args.m0)), 12.0 / args.m0, 21, 241)
    checks = {
        "roundtrip_max_dev": specialfn.roundtrip_max_deviation(kernel),
        "reality_ratio": specialfn.reality_ratio(kernel),
        "strip_weighted_sup": specialfn.verify_strip_decay(strip, strip.epsilon, grid.points),
    }
    ok = (
        checks["roundtrip_max_dev"] <= 1e-6
        and checks["reality_ratio"] < 1e-8
        and checks["strip_weighted_sup"] <= math.e
    )
    report = {
        "m0": args.m0,
        "epsilon": strip.epsilon,
        "t0": kernel.t0,
        "l1_norm": kernel.l1_norm,
        "linf_norm": kernel.linf_norm,
        "deriv_l1_norm": kernel.deriv_l1_norm,
        "deriv_linf_norm": kernel.deriv_linf_norm,
        "checks": checks,
        "ok": ok,
        "files": [data_path.name, header_path.name],
    }
    _write_json(out / "specialfn_report.json", report)
    for key in ("epsilon", "t0", "l1_norm", "linf_norm"):
        print(f"{key} = {_fmt(report[key])}")
    for key, value in checks.items():
        print(f"{key} = {_fmt(value)}")
    print(f"verification: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def _parse_prescribed_c(args):
    return None if args.prescribed_c is None else float(args.prescribed_c)


def _cmd_witness(args) -> int:
    _require(args, "m", "t")
    m = growth.parse_growth_spec(args.m)
    k = growth.parse_growth_spec(args.k) if args.k else None
    eps = _default_eps(args, m)
    cert = witness.optimize_R(
        m, args.t, eps, k=k, variant=args.variant, R_max=args.r_max,
        prescribed_C=_parse_prescribed_c(args),
    )
    if args.with_kappa:
        kernel = specialfn.build_kernel(specialfn.build_strip_function(m.m0))
        cal = witness.calibrate_kappa(kernel, m, eps, k=k, variant=args.variant)
        cert = dataclasses.replace(
            cert, kappa=cal.kappa, calibration_grid_id=cal.grid_id, t0=kernel.t0
        )
    out = _out_dir(args)
    _write_json(out / "witness_certificate.json", cert.to_json_dict())
    print(f"m: {m.label}  variant: {cert.variant}  t = {_fmt(cert.t)}")
    print(f"R_star = {_fmt(cert.R_star)}")
    print(f"N = {_fmt(cert.N)}")
    print(f"implied_floor = {_fmt(cert.implied_floor)}")
    print(f"admissible: {str(cert.admissible).lower()}")
    return 0


def _cmd_sweep(args) -> int:
    _require(args, "m")
    m = growth.parse_growth_spec(args.m)
    k = growth.parse_growth_spec(args.k) if args.k else None
    eps = _default_eps(args, m)
    ts = _t_grid(args)
    curve = witness.sharpness_curve(
        m, ts, eps, k=k, variant=args.variant, R_max=args.r_max,
        prescribed_C=_parse_prescribed_c(args),
    )
    out = _out_dir(args)
    rows = ["t,R_star,N,implied_floor,rate_comparison,admissible"]
    for t, cert in zip(curve.t_values, curve.certificates):
        rows.append(
            ",".join([
                _fmt(t), _fmt(cert.R_star), _fmt(cert.N), _fmt(cert.implied_floor),
                _fmt(cert.rate_comparison), "1" if cert.admissible else "0",
            ])
        )
    (out / "sharpness.csv").write_text("\n".join(rows) + "\n")
    summary = {
        "m_spec": m.label,
        "k_spec": None if k is None else k.label,
        "variant": curve.variant,
        "epsilon": eps,
        "n_points": int(ts.size),
        "t_range": [float(ts[0]), float(ts[-1])],
        "band_ratio": curve.band_ratio,
        "c_ref": curve.c_ref,
        "all_feasible": curve.all_feasible,
        "prescribed_all_admissible": curve.prescribed_all_admissible,
    }
    _write_json(out / "sharpness.json", summary)
    print(f"points: {ts.size}  band_ratio = {_fmt(curve.band_ratio)}")
    print(f"all_feasible: {str(curve.all_feasible).lower()}")
    if curve.prescribed_all_admissible is not None:
        print(f"prescribed_all_admissible: {str(curve.prescribed_all_admissible).lower()}")
    return 0


def _truncate_lambda_seeds(rng: np.random.Generator, count: int) -> np.ndarray:
    res = rng.uniform(0.05, 2.5, size=count)
    ims = rng.uniform(-30.0, 30.0, size=count)
    return res + 1j * ims


def _cmd_truncate(args) -> int:
    _require(args, "m")
    m = growth.parse_growth_spec(args.m)
    kernel = specialfn.build_kernel(specialfn.build_strip_function(m.m0))
    w = witness.modulated_translate(kernel, args.r, args.t)
    pair = truncate.split(w.samples)
    rng = np.random.default_rng(args.seed)
    plus = _truncate_lambda_seeds(rng, args.n_lambda)
    minus = -_truncate_lambda_seeds(rng, args.n_lambda)
    lams = np.concatenate([plus, minus])
    hp_plain = truncate.verify_halfplane_bounds(pair, lams, "plain")
    hp_deriv = truncate.verify_halfplane_bounds(pair, lams, "derivative")

    width = 1.0 / float(m(0.5))
    xs = np.linspace(-0.9 * width, -0.02, 5)
    ys = np.linspace(-0.5, 0.5, 5)
    grid = (xs[None, :] + 1j * ys[:, None]).ravel()
    agreement = truncate.verify_agreement(w, m, grid)

    ok = (
        hp_plain.min_margin >= -1e-8
        and hp_deriv.min_margin >= -1e-8
        and agreement.residual < 1e-5
        and agreement.cauchy_residual < 1e-8
    )
    report = {
        "m_spec": m.label,
        "R": args.r,
        "t": args.t,
        "seed": args.seed,
        "n_lambda_per_side": args.n_lambda,
        "parent_checksum": pair.parent_checksum,
        "min_margin_plain": hp_plain.min_margin,
        "min_margin_derivative": hp_deriv.min_margin,
        "agreement_residual": agreement.residual,
        "cauchy_residual": agreement.cauchy_residual,
        "ok": ok,
    }
    out = _out_dir(args)
    _write_json(out / "truncate_report.json", report)
    for key in ("min_margin_plain", "min_margin_derivative",
                "agreement_residual", "cauchy_residual"):
        print(f"{key} = {_fmt(report[key])}")
    print(f"verification: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def _default_rate_params(args, m: growth.GrowthFunction) -> growth.RateParams:
    if args.c is not None:
        c = float(args.c)
    else:
        env = m.envelope
        c = 1.0 + 1.0 / env.beta if env is not None and env.has_lower() else 1.0
    return growth.RateParams(c=c, C_choice=float(args.c_choice))


def _cmd_semigroup(args) -> int:
    _require(args, "m")
    m = growth.parse_growth_spec(args.m)
    ts = _t_grid(args)
    rp = _default_rate_params(args, m)
    out = _out_dir(args)
    if args.kind == "mult":
        freqs = semigroup.geometric_frequencies(args.freq_count, args.freq_base)
        spec = semigroup.mult_semigroup(m, freqs)
        report = semigroup.compare_rates(semigroup.mult_decay_report(spec, ts), m, rp)
    else:
        kernel = specialfn.build_kernel(specialfn.build_strip_function(m.m0))
        report = semigroup.shift_witness_lower(
            m, kernel, ts, _default_eps(args, m), R_max=args.r_max, rate_params=rp
        )
    base = out / f"semigroup_{args.kind}"
    csv_path, plt_path = emit_plot_script(report, base)
    report.to_json(base.with_suffix(".json"))
    print(f"kind: {report.kind}  points: {ts.size}")
    print(f"measured_slope = {_fmt(report.slopes['measured'])}")
    print(f"d1 = {_fmt(report.constants['d1'])}  d2 = {_fmt(report.constants['d2'])}")
    print(f"non_decaying: {str(report.slopes['non_decaying']).lower()}")
    print(f"wrote {csv_path.name}, {plt_path.name}, {base.with_suffix('.json').name}")
    return 0


# ---------------------------------------------------------------------------
# verify: the deterministic property suite


def _check(name: str, measured: float, threshold: float, kind: str = "le") -> dict:
    if kind == "le":
        ok = measured <= threshold
    elif kind == "ge":
        ok = measured >= threshold
    else:
        raise ValueError(kind)
    return {"name": name, "measured": float(measured), "threshold": float(threshold),
            "comparison": kind, "ok": bool(ok)}


def _verification_corpus(kernel: specialfn.StripKernel):
    """Five full-line sampled functions with 0 on the grid and closed-form
    transforms, exercising smooth, kinked, modulated, and compact shapes."""
    from .xforms import SampledComplexFunction

    def sampled(t0, step, values, tail):
        return SampledComplexFunction(t0_grid=t0, step=step, values=values,
                                      support="full", tail_bound=tail, meta={})

    corpus = []

    t = np.arange(-12.0, 12.0 + 1e-12, 0.005)
    corpus.append((
        "gaussian",
        sampled(-12.0, 0.005, np.exp(-t * t).astype(complex), 0.0),
        lambda lam: math.sqrt(math.pi) * np.exp(lam * lam / 4.0),
    ))

    t = np.arange(-40.0, 40.0 + 1e-12, 0.01)
    corpus.append((
        "two-sided-exponential",
        sampled(-40.0, 0.01, np.exp(-np.abs(t)).astype(complex), math.exp(-40.0)),
        lambda lam: 2.0 / (1.0 - lam * lam),
    ))

    w = witness.modulated_translate(kernel, 8.0, 2.0)
    corpus.append(("witness", w.samples, w.transform))

    t = np.arange(-12.0, 12.0 + 1e-12, 0.005)
    mod = np.exp(3j * t) * np.exp(-t * t)
    corpus.append((
        "modulated-gaussian",
        sampled(-12.0, 0.005, mod.astype(complex), 0.0),
        lambda lam: math.sqrt(math.pi) * np.exp((lam - 3j) * (lam - 3j) / 4.0),
    ))

    t = np.arange(-6.0, 6.0 + 1e-12, 0.004)
    inside = np.abs(t) < 5.0
    bump = np.zeros(t.size, dtype=complex)
    bump[inside] = np.exp(-1.0 / (1.0 - (t[inside] / 5.0) ** 2))
    corpus.append(("compact-bump", sampled(-6.0, 0.004, bump, 0.0), None))

    return corpus


def _run_verify(args) -> tuple[list[dict], dict]:
    seed = args.seed
    checks: list[dict] = []
    m = growth.poly(2.0)
    eps = math.pi / 6.0
    strip = specialfn.build_strip_function(1.0)
    kernel = specialfn.build_kernel(strip)

    # 1. modulus identity of the exponential comb
    rng = np.random.default_rng([seed, 1])
    lam = rng.uniform(-6, 6, 1000) + 1j * rng.uniform(-5, 5, 1000)
    direct = np.abs(specialfn.exp_cosine(eps, lam))
    closed = np.exp(2.0 * np.cos(eps * lam.real)
                    * (np.exp(eps * lam.imag) + np.exp(-eps * lam.imag)))
    rel = np.max(np.abs(direct - closed) / closed)
    checks.append(_check("comb_modulus_identity_rel", rel, 1e-12))
    anchor = abs(complex(specialfn.exp_cosine(eps, 0.0)) - math.exp(4.0)) / math.exp(4.0)
    checks.append(_check("comb_origin_anchor_rel", anchor, 1e-12))

    # 2. strip decay with a double-exponential weight, stable in grid extent
    grid12 = regions.sample(regions.strip(m), 12.0, 21, 241).points
    grid16 = regions.sample(regions.strip(m), 16.0, 21, 321).points
    sup12 = specialfn.verify_strip_decay(strip, eps, grid12)
    sup16 = specialfn.verify_strip_decay(strip, eps, grid16)
    checks.append(_check("strip_weighted_sup", sup12, math.e))
    checks.append(_check("strip_sup_extent_stability", abs(sup16 - sup12) / sup12, 1e-6))

    # 3. kernel round trip, reality, and L1 stability under decimation
    checks.append(_check("kernel_roundtrip_dev", specialfn.roundtrip_max_deviation(kernel), 1e-6))
    checks.append(_check("kernel_reality_ratio", specialfn.reality_ratio(kernel), 1e-8))
    g = kernel.samples
    l1_half = xforms.l1_norm_samples(g.values[::2], 2.0 * g.step)
    checks.append(_check("kernel_l1_decimation_rel", abs(l1_half - kernel.l1_norm) / kernel.l1_norm, 1e-6))

    # 4. rate calculus: inverse lands on the nose; two-function rate matches
    rate = growth.m_log(m)
    worst = 0.0
    for t in np.geomspace(10.0, 1e8, 50):
        s = growth.right_inverse(rate, t)
        worst = max(worst, (t - rate(s)) / t)
        if rate(s) > t:
            worst = math.inf
    checks.append(_check("rate_inverse_on_the_nose", worst, 1e-6))
    ss = np.geomspace(1e-3, 1e6, 1000)
    mk = growth.m_k(m, m)
    checks.append(_check("two_function_rate_identity", float(np.max(np.abs(mk(ss) - rate(ss)))), 0.0))

    # 5. frozen kappa bound holds on fresh admissible pairs
    cal = witness.calibrate_kappa(kernel, m, eps)
    rng = np.random.default_rng([seed, 5])
    violations = 0
    worst_ratio = 0.0
    for _ in range(200):
        R = math.exp(rng.uniform(math.log(8.0), math.log(120.0)))
        t_cap = 0.85 * min(0.9 * math.exp(min(eps * R / 2.0, 600.0)), 600.0 * float(m(R / 2.0)), 1e6)
        t = math.exp(rng.uniform(0.0, math.log(max(t_cap, 1.001))))
        wit = witness.modulated_translate(kernel, R, t)
        total = witness.x_norm(wit, m).total
        value, admissible = witness.bound_rhs(m, R, t, eps)
        if not admissible:
            continue
        ratio = total / (cal.kappa * value)
        worst_ratio = max(worst_ratio, ratio)
        if total > cal.kappa * value:
            violations += 1
    checks.append(_check("kappa_violations", violations, 0.0))
    checks.append(_check("kappa_worst_ratio", worst_ratio, 1.0))

    # 6. sharpness band and the explicit admissible selection rule
    curve = witness.sharpness_curve(m, np.geomspace(1e2, 1e6, 25), eps, prescribed_C=6.0)
    checks.append(_check("sharpness_band_ratio", curve.band_ratio, 10.0))
    checks.append(_check("sharpness_prescribed_admissible", 1.0 if curve.prescribed_all_admissible else 0.0, 1.0, "ge"))

    # 7. multiplication-model slope and per-frequency sup property
    spec = semigroup.mult_semigroup(m)
    rep = semigroup.mult_decay_report(spec, np.geomspace(1e2, 1e6, 25))
    rep = semigroup.compare_rates(rep, m, growth.RateParams(c=1.5, C_choice=1.0))
    checks.append(_check("mult_slope_dev", abs(rep.slopes["measured"] + 0.5), 0.05))
    rng = np.random.default_rng([seed, 7])
    per_n_bad = 0
    for t in (10.0, 500.0, 2e4):
        d = semigroup.decay_norm(spec, t)
        for n in rng.integers(0, spec.frequencies.size, 5):
            per = math.exp(-t / float(m(spec.frequencies[n]))) / abs(spec.eigenvalues[n])
            if d < per - 1e-15:
                per_n_bad += 1
    checks.append(_check("mult_per_frequency_violations", per_n_bad, 0.0))

    # 8. separation of the shift lower bounds from the diagonal decay
    taus = np.geomspace(1e3, 1e6, 41)
    sh = semigroup.shift_witness_lower(m, kernel, taus, eps)
    dense = semigroup.mult_semigroup(m, semigroup.geometric_frequencies(80, 2.0 ** 0.25))
    dvals = np.array([semigroup.decay_norm(dense, t) for t in taus])
    norm_ratio = (sh.values / sh.values[0]) / (dvals / dvals[0])
    checks.append(_check("separation_min_ratio", float(np.min(norm_ratio)), 1.0 - 1e-12, "ge"))
    checks.append(_check("separation_end_ratio_low", float(norm_ratio[-1]), 1.3, "ge"))
    checks.append(_check("separation_end_ratio_high", float(norm_ratio[-1]), 1.9))

    # 9. half-plane bounds and continuation agreement over the corpus
    corpus = _verification_corpus(kernel)
    rng = np.random.default_rng([seed, 9])
    min_margin = math.inf
    for _, g, _tf in corpus:
        pair = truncate.split(g)
        plus = rng.uniform(0.05, 2.0, 100) + 1j * rng.uniform(-20, 20, 100)
        minus = -rng.uniform(0.05, 2.0, 100) + 1j * rng.uniform(-20, 20, 100)
        for variant in ("plain", "derivative"):
            hp = truncate.verify_halfplane_bounds(pair, np.concatenate([plus, minus]), variant)
            min_margin = min(min_margin, hp.min_margin)
    checks.append(_check("halfplane_min_margin", min_margin, -1e-8, "ge"))

    w = witness.modulated_translate(kernel, 8.0, 10.0)
    xs = np.linspace(-0.35, -0.02, 5)
    ys = np.linspace(-0.5, 0.5, 5)
    agrid = (xs[None, :] + 1j * ys[:, None]).ravel()
    ag = truncate.verify_agreement(w, m, agrid)
    checks.append(_check("witness_agreement_residual", ag.residual, 1e-5))
    checks.append(_check("witness_cauchy_residual", ag.cauchy_residual, 1e-8))

    kinked = corpus[1][1]
    tf = corpus[1][2]
    fine = truncate.verify_agreement(kinked, m, agrid, transform=tf)
    coarse = truncate.verify_agreement(kinked, m, agrid, transform=tf, coarsen=2)
    checks.append(_check("agreement_refinement_gain", coarse.residual / fine.residual, 2.0, "ge"))

    summary = {
        "seed": seed,
        "n_checks": len(checks),
        "n_failed": sum(0 if c["ok"] else 1 for c in checks),
        "ok": all(c["ok"] for c in checks),
    }
    return checks, summary


def _cmd_verify(args) -> int:
    checks, summary = _run_verify(args)
    out = _out_dir(args)
    payload = {"summary": summary, "checks": checks}
    blob = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    digest = hashlib.sha256(blob.encode()).hexdigest()
    payload["report_digest"] = digest
    _write_json(out / "verify_report.json", payload)
    lines = []
    for c in checks:
        cmp_sym = "<=" if c["comparison"] == "le" else ">="
        lines.append(
            f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}: "
            f"{_fmt(c['measured'])} {cmp_sym} {_fmt(c['threshold'])}"
        )
    lines.append(f"{summary['n_checks'] - summary['n_failed']}/{summary['n_checks']} checks passed")
    lines.append(f"report digest: {digest}")
    text = "\n".join(lines) + "\n"
    (out / "verify_report.txt").write_text(text)
    print(text, end="")
    return 0 if summary["ok"] else 1


# ---------------------------------------------------------------------------
# parser


def _require(args, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigurationError(f"missing required option(s): {', '.join(missing)} "
                                 f"(set on the command line or in a config file)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", default=None, help="growth spec, e.g. poly:beta=2")
    p.add_argument("--config", default=None, help="key=value config file supplying defaults")
    p.add_argument("--out", default=".", help="output directory for artifacts")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tauberlab",
        description="decay-rate laboratory: rates, kernels, certificates, semigroup models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate", help="rate values and right inverses at a time value")
    _add_common(p)
    p.add_argument("--k", default=None, help="second growth spec for the two-function rate")
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("invert", help="right inverse of the growth function")
    _add_common(p)
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("specialfn", help="build, verify, and serialize a strip kernel")
    _add_common(p)
    p.add_argument("--m0", type=float, default=1.0, help="growth value at the origin")
    p.set_defaults(func=_cmd_specialfn)

    p = sub.add_parser("witness", help="one optimized certificate as JSON")
    _add_common(p)
    p.add_argument("--k", default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--variant", choices=("plain", "derivative"), default="plain")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--r-max", type=float, default=1e6)
    p.add_argument("--prescribed-c", type=float, default=None,
                   help="explicit selection constant for the comparison record")
    p.add_argument("--with-kappa", action="store_true",
                   help="calibrate and attach the bound-chain constant")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("sweep", help="certificate sweep over a time grid")
    _add_common(p)
    p.add_argument("--k", default=None)
    p.add_argument("--t-min", type=float, default=1e2)
    p.add_argument("--t-max", type=float, default=1e6)
    p.add_argument("--t-count", type=int, default=25)
    p.add_argument("--variant", choices=("plain", "derivative"), default="plain")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--r-max", type=float, default=1e6)
    p.add_argument("--prescribed-c", type=float, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("truncate", help="split a witness at zero and verify bounds")
    _add_common(p)
    p.add_argument("--r", type=float, default=8.0, help="witness modulation frequency")
    p.add_argument("--t", type=float, default=2.0, help="witness translation")
    p.add_argument("--n-lambda", type=int, default=100, help="transform samples per half-plane")
    p.set_defaults(func=_cmd_truncate)

    p = sub.add_parser("semigroup", help="decay report for a semigroup model")
    _add_common(p)
    p.add_argument("--kind", choices=("mult", "shift"), default="mult")
    p.add_argument("--t-min", type=float, default=1e2)
    p.add_argument("--t-max", type=float, default=1e6)
    p.add_argument("--t-count", type=int, default=25)
    p.add_argument("--freq-count", type=int, default=20)
    p.add_argument("--freq-base", type=float, default=2.0)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--r-max", type=float, default=1e6)
    p.add_argument("--c", type=float, default=None, help="time constant in the rate curve")
    p.add_argument("--c-choice", type=float, default=1.0, help="growth-inverse curve constant")
    p.set_defaults(func=_cmd_semigroup)

    p = sub.add_parser("verify", help="run the deterministic property suite")
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, argv)
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except TauberlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
