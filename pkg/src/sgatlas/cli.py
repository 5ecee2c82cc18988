"""Command-line front end.

Every command writes machine-readable artifacts with a reproducibility
header (tool version, n, spin scale, seed) and prints a one-line summary
to stdout.  Exit codes: 0 success, 2 invalid arguments, 3 size cap
exceeded, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .atlas import (
    MAX_ENUM_SITES,
    MAX_ENUM_SITES_OVERRIDE,
    classify_phase,
    distinct_sg_q_census,
    fit_linear_law,
    k1_deviation_report,
    write_atlas_csv,
    write_atlas_json,
    write_scatter_csv,
)
from .entanglement import density_matrix, negativity, negativity_report
from .errors import SizeCapError
from .hamiltonian import (
    MAX_CENSUS_SITES,
    couplings_to_csv,
    frustration_census,
    sample_couplings,
)
from .observables import DEFAULT_SPIN_SCALE, observables
from .states import (
    DENSE_SITE_CAP,
    BasisState,
    EnsembleWord,
    SuperpositionSpec,
    expand_ensemble_word,
    word_family,
)

COMMANDS = ("atlas", "scatter", "law", "ensemble", "negativity", "ham", "census")


@dataclass
class RunConfig:
    command: str
    n: int = 0
    seed: int = 0
    format: str = "json"
    out: Optional[str] = None
    steps: int = 101
    spin_scale: float = DEFAULT_SPIN_SCALE
    word: Optional[str] = None
    pair: Optional[str] = None
    w1sq: float = 0.5
    j_scale: float = 1.0
    dense: bool = False
    allow_large: bool = False
    normalize_q: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgatlas",
        description="Exact enumeration of two-term superposition states: "
        "phase atlases, order parameters, negativity, couplings.",
    )
    parser.add_argument("--version", action="version", version=f"sgatlas {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), help="output format")
    common.add_argument("--out", help="output path (default: derived from the command)")
    common.add_argument("--seed", type=int, default=0, help="seed recorded in exports")
    common.add_argument(
        "--spin-scale", type=float, default=DEFAULT_SPIN_SCALE,
        dest="spin_scale", help="spin magnitude per site (default 0.5)",
    )

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--n", type=int, required=True, help="site count")
    sized.add_argument(
        "--allow-large", action="store_true", dest="allow_large",
        help=f"raise the enumeration cap from {MAX_ENUM_SITES} to "
        f"{MAX_ENUM_SITES_OVERRIDE} (slow, large output)",
    )

    p = sub.add_parser("atlas", parents=[common, sized],
                       help="all canonical equal-weight pairs with phases")
    p.add_argument("--normalize-q", action="store_true", dest="normalize_q",
                   help="add a q_ea/q_max column")

    p = sub.add_parser("scatter", parents=[common, sized],
                       help="(m, q_ea) sweep over a weight grid")
    p.add_argument("--steps", type=int, default=101, help="weight-grid points")

    sub.add_parser("law", parents=[common, sized],
                   help="linear law fit of q_ea against average negativity")

    p = sub.add_parser("ensemble", parents=[common],
                       help="expand a word family, e.g. --word C,C,e,g")
    p.add_argument("--word", required=True, help="comma-separated letters over {C,e,g}")
    p.add_argument("--allow-large", action="store_true", dest="allow_large")

    p = sub.add_parser("negativity", parents=[common],
                       help="negativity report for one state")
    p.add_argument("--word", help="word with optional :variant suffix, e.g. C,C,e,g:1")
    p.add_argument("--pair", help="two basis states, e.g. eeeg,ggeg")
    p.add_argument("--w1sq", type=float, default=0.5,
                   help="weight square of the first member (pairs only)")
    p.add_argument("--dense", action="store_true",
                   help=f"cross-check per-cut values on the dense path (n <= {DENSE_SITE_CAP})")

    p = sub.add_parser("ham", parents=[common],
                       help="sample Gaussian couplings and census frustration")
    p.add_argument("--n", type=int, required=True, help="site count")
    p.add_argument("--j-scale", type=float, default=1.0, dest="j_scale",
                   help="coupling scale (variance j_scale^2/n)")

    sub.add_parser("census", parents=[common, sized],
                   help="distinct q_ea values over SG cells")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if args.format is None:
        cfg.format = "csv" if args.command in ("scatter", "ham") else "json"
    return cfg


def _meta(cfg: RunConfig, n: int) -> dict:
    return {
        "tool": "sgatlas",
        "version": __version__,
        "n": n,
        "spin_scale": float(cfg.spin_scale),
        "seed": cfg.seed,
    }


def _meta_comment(cfg: RunConfig, n: int) -> str:
    return (
        f"# sgatlas={__version__} n={n} spin_scale={float(cfg.spin_scale)!r} "
        f"seed={cfg.seed}"
    )


def _enum_cap(cfg: RunConfig) -> int:
    if cfg.allow_large:
        print(
            f"warning: enumeration cap raised to {MAX_ENUM_SITES_OVERRIDE} sites; "
            "expect long runtimes and large files",
            file=sys.stderr,
        )
        return MAX_ENUM_SITES_OVERRIDE
    return MAX_ENUM_SITES


def _default_out(cfg: RunConfig) -> str:
    stem = {
        "atlas": f"atlas_n{cfg.n}",
        "scatter": f"scatter_n{cfg.n}",
        "law": f"law_n{cfg.n}",
        "census": f"census_n{cfg.n}",
        "ham": f"couplings_n{cfg.n}_seed{cfg.seed}",
    }.get(cfg.command)
    if cfg.command == "ensemble":
        stem = "ensemble_" + cfg.word.replace(",", "").replace(":", "v")
    elif cfg.command == "negativity":
        if cfg.word:
            stem = "negativity_" + cfg.word.replace(",", "").replace(":", "v")
        elif cfg.pair:
            stem = "negativity_" + cfg.pair.replace(",", "_")
        else:
            stem = "negativity"  # handler rejects the config before writing
    return f"{stem}.{cfg.format}"


def _spec_rows(specs, words, cfg: RunConfig):
    from .entanglement import negativity_report as _report

    for spec, word in zip(specs, words):
        obs = observables(spec, cfg.spin_scale)
        rep = _report(spec)
        yield {
            "word": str(word),
            "b1": str(spec.b1),
            "b2": str(spec.b2),
            "k": spec.k,
            "q_ea": obs.q_ea,
            "m": obs.m,
            "neg": rep.avg_normalized,
            "phase": classify_phase(obs),
        }


def _cmd_atlas(cfg: RunConfig, out: str) -> str:
    writer = write_atlas_csv if cfg.format == "csv" else write_atlas_json
    with open(out, "w", newline="\n") as fh:
        summary = writer(
            cfg.n, fh, scale=cfg.spin_scale, seed=cfg.seed, version=__version__,
            max_n=_enum_cap(cfg), normalize_q=cfg.normalize_q,
        )
    counts = summary["phase_counts"]
    counts_text = " ".join(f"{label}={counts[label]}" for label in counts)
    return f"atlas n={cfg.n} cells={summary['cells']} {counts_text} -> {out}"


def _cmd_scatter(cfg: RunConfig, out: str) -> str:
    if cfg.format != "csv":
        raise ValueError("scatter supports only --format csv")
    with open(out, "w", newline="\n") as fh:
        summary = write_scatter_csv(
            cfg.n, cfg.steps, fh, scale=cfg.spin_scale, seed=cfg.seed,
            version=__version__, max_n=_enum_cap(cfg),
        )
    return (
        f"scatter n={cfg.n} pairs={summary['pairs']} "
        f"points={summary['points']} -> {out}"
    )


def _cmd_law(cfg: RunConfig, out: str) -> str:
    fit = fit_linear_law(cfg.n, cfg.spin_scale, max_n=_enum_cap(cfg))
    payload = _meta(cfg, cfg.n)
    payload.update(
        slope=fit.slope,
        intercept=fit.intercept,
        max_residual=fit.max_residual,
        excluded_k1_count=fit.excluded_k1_count,
        k1_report=k1_deviation_report(cfg.n, cfg.spin_scale),
    )
    with open(out, "w", newline="\n") as fh:
        if cfg.format == "json":
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(_meta_comment(cfg, cfg.n) + "\n")
            fh.write("n,slope,intercept,max_residual,excluded_k1_count\n")
            fh.write(
                f"{cfg.n},{fit.slope!r},{fit.intercept!r},"
                f"{fit.max_residual!r},{fit.excluded_k1_count}\n"
            )
    return (
        f"law n={cfg.n} slope={fit.slope!r} intercept={fit.intercept!r} "
        f"max_residual={fit.max_residual!r} excluded_k1={fit.excluded_k1_count} -> {out}"
    )


def _cmd_ensemble(cfg: RunConfig, out: str) -> str:
    word = EnsembleWord.parse(cfg.word) if ":" in cfg.word else None
    letters = EnsembleWord.parse(cfg.word).letters
    n = len(letters)
    if n > _enum_cap(cfg):
        raise SizeCapError(f"word length {n} above the enumeration cap")
    if word is not None:
        words = [word]
    else:
        words = word_family(letters)
    specs = [expand_ensemble_word(w) for w in words]
    rows = list(_spec_rows(specs, words, cfg))
    with open(out, "w", newline="\n") as fh:
        if cfg.format == "json":
            payload = _meta(cfg, n)
            payload.update(word=",".join(letters), count=len(rows), specs=rows)
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(_meta_comment(cfg, n) + "\n")
            fh.write("word,b1,b2,k,q_ea,m,neg,phase\n")
            for row in rows:
                fh.write(
                    f"\"{row['word']}\",{row['b1']},{row['b2']},{row['k']},"
                    f"{row['q_ea']!r},{row['m']!r},{row['neg']!r},{row['phase']}\n"
                )
    distinct_q = sorted({row["q_ea"] for row in rows})
    return (
        f"ensemble word={','.join(letters)} specs={len(rows)} "
        f"distinct_q_ea={distinct_q!r} -> {out}"
    )


def _parse_state_pair(cfg: RunConfig) -> SuperpositionSpec:
    if (cfg.word is None) == (cfg.pair is None):
        raise ValueError("provide exactly one of --word or --pair")
    if cfg.word is not None:
        return expand_ensemble_word(EnsembleWord.parse(cfg.word))
    parts = cfg.pair.split(",")
    if len(parts) != 2:
        raise ValueError(f"--pair expects two states, got {cfg.pair!r}")
    b1 = BasisState.from_string(parts[0].strip())
    b2 = BasisState.from_string(parts[1].strip())
    if b1 == b2:
        return SuperpositionSpec.single(b1)
    return SuperpositionSpec.weighted(b1, b2, cfg.w1sq)


def _cmd_negativity(cfg: RunConfig, out: str) -> str:
    spec = _parse_state_pair(cfg)
    n = spec.n
    if n > _enum_cap(cfg):
        raise SizeCapError(f"state size {n} above the enumeration cap")
    rep = negativity_report(spec)
    obs = observables(spec, cfg.spin_scale)
    payload = _meta(cfg, n)
    payload.update(
        b1=str(spec.b1),
        b2=str(spec.b2),
        w1sq=float(abs(spec.w1) ** 2),
        k=spec.k,
        q_ea=obs.q_ea,
        m=obs.m,
        phase=classify_phase(obs),
    )
    payload.update(rep.to_dict())
    if cfg.dense:
        if n > DENSE_SITE_CAP:
            raise SizeCapError(
                f"dense cross-check refuses {n} sites (cap {DENSE_SITE_CAP})"
            )
        rho = density_matrix(spec)
        payload["per_cut_dense"] = [negativity(rho, (s,)) for s in range(1, n + 1)]
    with open(out, "w", newline="\n") as fh:
        if cfg.format == "json":
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(_meta_comment(cfg, n) + "\n")
            fh.write("site,negativity\n")
            for site, value in enumerate(payload["per_cut"], start=1):
                fh.write(f"{site},{value!r}\n")
            fh.write(f"# avg_raw={payload['avg_raw']!r} "
                     f"avg_normalized={payload['avg_normalized']!r}\n")
    return (
        f"negativity b1={payload['b1']} b2={payload['b2']} "
        f"avg_normalized={payload['avg_normalized']!r} -> {out}"
    )


def _cmd_ham(cfg: RunConfig, out: str) -> str:
    if cfg.n < 2:
        raise ValueError(f"need at least 2 sites, got {cfg.n}")
    if cfg.n > MAX_CENSUS_SITES:
        raise SizeCapError(f"site count {cfg.n} above the cap {MAX_CENSUS_SITES}")
    couplings = sample_couplings(cfg.n, cfg.j_scale, cfg.seed)
    census = frustration_census(couplings) if cfg.n >= 3 else None
    with open(out, "w", newline="\n") as fh:
        if cfg.format == "csv":
            fh.write(couplings_to_csv(couplings, cfg.spin_scale, __version__))
        else:
            payload = _meta(cfg, cfg.n)
            payload.update(
                j_scale=float(cfg.j_scale),
                couplings=[
                    [i + 1, k + 1, float(couplings.j[i, k])]
                    for i in range(cfg.n)
                    for k in range(i + 1, cfg.n)
                ],
            )
            if census is not None:
                payload["frustration"] = {
                    "total_triangles": census.total_triangles,
                    "frustrated": census.frustrated,
                    "fraction": census.fraction,
                }
            fh.write(json.dumps(payload, indent=2) + "\n")
    summary = f"ham n={cfg.n} seed={cfg.seed} j_scale={float(cfg.j_scale)!r}"
    if census is not None:
        summary += (
            f" triangles={census.total_triangles} frustrated={census.frustrated}"
            f" fraction={census.fraction!r}"
        )
    return summary + f" -> {out}"


def _cmd_census(cfg: RunConfig, out: str) -> str:
    values = distinct_sg_q_census(cfg.n, cfg.spin_scale, max_n=_enum_cap(cfg))
    with open(out, "w", newline="\n") as fh:
        if cfg.format == "json":
            payload = _meta(cfg, cfg.n)
            payload.update(count=len(values), values=[float(v) for v in values])
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(_meta_comment(cfg, cfg.n) + "\n")
            fh.write("index,q_ea\n")
            for i, v in enumerate(values):
                fh.write(f"{i},{float(v)!r}\n")
    return f"census n={cfg.n} count={len(values)} values={[float(v) for v in values]!r} -> {out}"


_HANDLERS = {
    "atlas": _cmd_atlas,
    "scatter": _cmd_scatter,
    "law": _cmd_law,
    "ensemble": _cmd_ensemble,
    "negativity": _cmd_negativity,
    "ham": _cmd_ham,
    "census": _cmd_census,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        out = cfg.out or _default_out(cfg)
        summary = _HANDLERS[cfg.command](cfg, out)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    print(summary)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


def console_main() -> None:
    sys.exit(main())
