"""Command-line interface: ``lattice-wce <command> [options]``.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 size guard,
4 search space too large for exhaustive mode.
"""

from __future__ import annotations

import argparse
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _backend
from .average import (
    ConjectureConstants,
    corollary_bound,
    corollary_constant,
    ebar2_reports,
    ebar2_total,
    ebar2_total_brute_force,
    ebar2_u,
    ebar2_u_brute_force,
    j_definition,
    j_series_all,
    x_closed_form,
    x_definition_oracle,
)
from .conjecture import check_conjecture, scaled_series, t_profile
from .core import GeneratingVector, PrimeModulus, mod_inverse, primes_up_to
from .errors import LatticeError, SizeGuard
from .svg import line_plot
from .wce import wce_squared_pairwise, wce_squared_subset
from .weights import parse_weights

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_SIZE, EXIT_SEARCH = 0, 1, 2, 3, 4
SEARCH_CAP = 10 ** 6


class SearchSpaceTooLarge(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: list[int]
    s: int = 1
    weights_spec: str = "product:1"
    alpha: float = 2.0
    c1: float = 20.0
    c2: float = 10.0
    output_path: Path | None = None
    format: str = "json"
    threads: int = 1
    override_size_guard: bool = False
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def constants(self) -> ConjectureConstants:
        return ConjectureConstants(self.alpha, self.c1, self.c2)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _write(cfg: RunConfig, text: str, path: Path | None = None) -> None:
    path = path or cfg.output_path
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _single_n(cfg: RunConfig) -> PrimeModulus:
    if len(cfg.n) != 1:
        raise LatticeError(f"{cfg.command} takes a single --n")
    return PrimeModulus(cfg.n[0])


# -- commands -------------------------------------------------------------


def cmd_wce(cfg: RunConfig) -> int:
    m = _single_n(cfg)
    w = parse_weights(cfg.weights_spec, cfg.s)
    z_arg = cfg.extra.get("z")
    if z_arg is not None:
        z = GeneratingVector(tuple(z_arg), m)
    elif cfg.extra.get("random"):
        rng = np.random.default_rng(cfg.seed)
        z = GeneratingVector(tuple(int(v) for v in rng.integers(1, m.n, size=cfg.s)), m)
    else:
        raise LatticeError("wce needs --z or --random")
    if z.s != cfg.s:
        raise LatticeError(f"--z has {z.s} components but --s is {cfg.s}")
    if cfg.extra.get("per_subset"):
        report = wce_squared_subset(z, w)
    else:
        report = wce_squared_pairwise(z, w, cfg.threads, cfg.override_size_guard)
    out = report.to_dict()
    out["weights"] = cfg.weights_spec
    _write(cfg, _dump(out))
    return EXIT_OK


def cmd_average(cfg: RunConfig) -> int:
    m = _single_n(cfg)
    w = parse_weights(cfg.weights_spec, cfg.s)
    cc = cfg.constants
    sums = w.cardinality_sums()
    reports = ebar2_reports(m, cfg.s, cc, cfg.threads, cfg.override_size_guard)
    total = ebar2_total(m, w, cfg.threads, cfg.override_size_guard)
    out = {
        "n": m.n,
        "s": cfg.s,
        "weights": cfg.weights_spec,
        "alpha": cc.alpha,
        "c1": cc.c1,
        "c2": cc.c2,
        "per_cardinality": [dict(r.to_dict(), weight_sum=g) for r, g in zip(reports, sums)],
        "ebar2_total": total,
        "corollary_constant": corollary_constant(w, cc),
        "corollary_bound": corollary_bound(m, w, cc),
    }
    if cfg.extra.get("brute_force"):
        if (m.n - 1) ** cfg.s > SEARCH_CAP:
            raise SearchSpaceTooLarge(f"(N-1)^s = {(m.n - 1) ** cfg.s} exceeds {SEARCH_CAP}")
        brute = ebar2_total_brute_force(m, w, cfg.threads)
        out["brute_force_ebar2_total"] = brute
        out["brute_force_match"] = math.isclose(brute, total, rel_tol=1e-12, abs_tol=1e-15)
    _write(cfg, _dump(out))
    return EXIT_OK


def _tnk_rows(profile, alpha: float):
    xs, ys = scaled_series(profile, alpha)
    for j, (kappa, t, x, y) in enumerate(zip(profile.kappas, profile.values, xs, ys), start=1):
        yield j, int(kappa), float(t), float(x), float(y)


def _tnk_text(profile, alpha: float, fmt: str) -> str:
    rows = list(_tnk_rows(profile, alpha))
    if fmt == "json":
        keys = ("j", "kappa", "T", "j_scaled", "T_scaled")
        return _dump({"n": profile.n, "alpha": alpha, "rows": [dict(zip(keys, r)) for r in rows]})
    buf = io.StringIO()
    buf.write("j,kappa,T,j_scaled,T_scaled\n")
    for j, kappa, t, x, y in rows:
        buf.write(f"{j},{kappa},{t!r},{x!r},{y!r}\n")
    return buf.getvalue()


def cmd_tnk(cfg: RunConfig) -> int:
    moduli = [PrimeModulus(n) for n in cfg.n]
    fmt = cfg.format
    target = cfg.output_path
    multi = len(moduli) > 1
    if multi and target is None:
        raise LatticeError("several --n values need --output DIR")
    for m in moduli:
        profile = t_profile(m, cfg.alpha, cfg.threads, cfg.override_size_guard)
        text = _tnk_text(profile, cfg.alpha, fmt)
        path = target
        if target is not None and (multi or target.is_dir()):
            path = target / f"tnk_N{m.n}.{fmt}"
        _write(cfg, text, path)
    return EXIT_OK


def cmd_conjecture(cfg: RunConfig) -> int:
    cc = cfg.constants
    results = []
    series = {}
    for n in cfg.n:
        profile = t_profile(PrimeModulus(n), cc.alpha, cfg.threads, cfg.override_size_guard)
        results.append(check_conjecture(profile, cc).to_dict())
        series[f"N={n}"] = scaled_series(profile, cc.alpha)
    plot = cfg.extra.get("plot")
    if plot is not None:
        svg = line_plot(
            {k: (x.tolist(), y.tolist()) for k, (x, y) in series.items()},
            title=f"alpha = {cc.alpha:g}",
            xlabel="j / (ln N)^alpha",
            ylabel="T_N(kappa_j) N / (ln N)^alpha",
            hline=cc.c1,
            vline=cc.c2,
        )
        Path(plot).write_text(svg, encoding="utf-8")
    out = {"alpha": cc.alpha, "c1": cc.c1, "c2": cc.c2, "results": results}
    out["all_pass"] = all(r["pass"] for r in results)
    _write(cfg, _dump(out))
    return EXIT_OK


def cmd_search(cfg: RunConfig) -> int:
    m = _single_n(cfg)
    w = parse_weights(cfg.weights_spec, cfg.s)
    cc = cfg.constants
    n, s = m.n, cfg.s
    if cfg.extra.get("random"):
        rng = np.random.default_rng(cfg.seed)
        samples = cfg.extra.get("samples") or 100
        candidates = (tuple(int(v) for v in rng.integers(1, n, size=s)) for _ in range(samples))
        mode = "random"
    else:
        if (n - 1) ** s > SEARCH_CAP:
            raise SearchSpaceTooLarge(
                f"(N-1)^s = {(n - 1) ** s} exceeds {SEARCH_CAP}; use --random --samples M"
            )
        # z -> c z permutes the point set, so z_1 = 1 loses nothing
        candidates = ((1,) + rest for rest in itertools.product(range(1, n), repeat=s - 1))
        mode = "exhaustive"
    best_z, best_e2, count = None, math.inf, 0
    for z in candidates:
        e2 = wce_squared_pairwise(GeneratingVector(z, m), w, cfg.threads, cfg.override_size_guard).e2
        count += 1
        if e2 < best_e2:
            best_z, best_e2 = z, e2
    average = ebar2_total(m, w, cfg.threads, cfg.override_size_guard)
    bound = corollary_bound(m, w, cc)
    out = {
        "n": n,
        "s": s,
        "weights": cfg.weights_spec,
        "mode": mode,
        "candidates": count,
        "best_z": list(best_z),
        "best_e2": best_e2,
        "average_e2": average,
        "best_le_average": best_e2 <= average,
        "corollary_bound": bound,
        "best_le_corollary_bound": best_e2 <= bound,
        "alpha": cc.alpha,
        "c1": cc.c1,
        "c2": cc.c2,
    }
    _write(cfg, _dump(out))
    return EXIT_OK


def run_verification(max_n: int = 31, tail_eps: float = 1e-10, fault: bool = False) -> dict:
    """Oracle-equivalence checks; returns a JSON-ready summary."""
    primes = primes_up_to(max_n)
    checks = []

    worst, bad = Fraction(0), 0
    for n in primes:
        for k in range(n):
            for kp in range(n):
                diff = abs(x_definition_oracle(k, kp, n) - x_closed_form(k, kp, n))
                bad += diff != 0
                worst = max(worst, diff)
    checks.append({"name": "x_closed_form", "max_deviation": float(worst), "tolerance": 0.0, "passed": bad == 0})

    worst_f = 0.0
    for n in primes:
        approx = j_series_all(n, tail_eps)
        for kappa in range(1, n):
            exact = j_definition(kappa, 1, n)
            value = approx[kappa] + (1e-6 if fault else 0.0)
            worst_f = max(worst_f, abs(value - float(exact)))
    checks.append(
        {"name": "j_series", "max_deviation": worst_f, "tolerance": tail_eps, "passed": worst_f <= tail_eps}
    )

    bad = 0
    for n in primes:
        base = {kappa: j_definition(kappa, 1, n) for kappa in range(1, n)}
        for k in range(1, n):
            for kp in range(1, n):
                bad += j_definition(k, kp, n) != base[k * mod_inverse(kp, n) % n]
    checks.append({"name": "kappa_reduction", "mismatches": bad, "tolerance": 0.0, "passed": bad == 0})

    worst_f = 0.0
    for n in (3, 5, 7):
        for d in (1, 2):
            fast = ebar2_u(n, d).ebar2_u
            brute = ebar2_u_brute_force(n, d)
            worst_f = max(worst_f, abs(fast - brute) / abs(brute))
    checks.append(
        {"name": "averaging_identity", "max_rel_deviation": worst_f, "tolerance": 1e-12, "passed": worst_f <= 1e-12}
    )
    return {
        "max_n": max_n,
        "backend": _backend.BACKEND,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def cmd_verify(cfg: RunConfig) -> int:
    summary = run_verification(cfg.extra.get("max_n", 31), cfg.extra.get("tail_eps", 1e-10), cfg.extra.get("fault", False))
    _write(cfg, _dump(summary))
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


COMMANDS = {
    "wce": cmd_wce,
    "average": cmd_average,
    "tnk": cmd_tnk,
    "conjecture": cmd_conjecture,
    "search": cmd_search,
    "verify": cmd_verify,
}


# -- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-wce",
        description="Worst-case errors of unshifted rank-one lattice rules and T_N profiles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, multi_n=False, needs_n=True):
        if needs_n:
            p.add_argument("--n", type=_int_list, required=True,
                           help="prime number of points" + (" (comma-separated list allowed)" if multi_n else ""))
        p.add_argument("--output", type=Path, default=None, help="output file (default stdout)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default $LATTICE_WCE_THREADS or CPU count)")
        p.add_argument("--override-size-guard", action="store_true")

    def weights(p):
        p.add_argument("--s", type=int, default=1, help="dimension")
        p.add_argument("--weights", default="product:1",
                       help="product:g1,g2,... | product-fill:c,p | explicit:@file.json")

    def constants(p):
        p.add_argument("--alpha", type=float, default=2.0)
        p.add_argument("--c1", type=float, default=20.0)
        p.add_argument("--c2", type=float, default=10.0)

    p = sub.add_parser("wce", help="squared worst-case error e^2(N, z)")
    common(p)
    weights(p)
    p.add_argument("--z", type=_int_list, default=None, help="generating vector, comma-separated")
    p.add_argument("--random", action="store_true", help="sample z uniformly (use --seed)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--per-subset", action="store_true", help="subset decomposition with per-u values")

    p = sub.add_parser("average", help="generating-vector-averaged error and bounds")
    common(p)
    weights(p)
    constants(p)
    p.add_argument("--brute-force", action="store_true", help="also average e^2 over every z")

    p = sub.add_parser("tnk", help="sorted T_N(kappa) profile as CSV/JSON")
    common(p, multi_n=True)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("conjecture", help="check the T_N conjecture for given constants")
    common(p, multi_n=True)
    constants(p)
    p.add_argument("--plot", type=Path, default=None, help="write an SVG of the scaled profiles")

    p = sub.add_parser("search", help="best generating vector by exhaustive or random search")
    common(p)
    weights(p)
    constants(p)
    p.add_argument("--random", action="store_true")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("verify", help="run the oracle-equivalence checks")
    common(p, needs_n=False)
    p.add_argument("--max-n", type=int, default=31)
    p.add_argument("--tail-eps", type=float, default=1e-10)
    p.add_argument("--self-test-fault", action="store_true", help="inject a fault (must exit 1)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("z", "random", "per_subset", "brute_force", "plot", "samples", "max_n", "tail_eps"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    if getattr(args, "self_test_fault", False):
        extra["fault"] = True
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None) or [],
        s=getattr(args, "s", 1),
        weights_spec=getattr(args, "weights", "product:1"),
        alpha=getattr(args, "alpha", 2.0),
        c1=getattr(args, "c1", 20.0),
        c2=getattr(args, "c2", 10.0),
        output_path=args.output,
        format=getattr(args, "format", "json"),
        threads=args.threads or _backend.default_threads(),
        override_size_guard=args.override_size_guard,
        seed=getattr(args, "seed", None),
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except SizeGuard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except SearchSpaceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except LatticeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
