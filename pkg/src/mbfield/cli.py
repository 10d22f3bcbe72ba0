"""Command-line front end: configuration, orchestration, bit-exact artifact I/O.

Subcommands
    synth    write binary field dumps (.mbf) plus a manifest
    cov      analytic-vs-empirical covariance CSV with z-scores
    holder   regularity-exponent estimates per base point, CSV (+ PGM heatmap)
    lass     local rescaled-increment limit classification, JSON report
    report   synth + estimates + matplotlib figures alongside the CSV output

One JSON config document drives everything; flags only select the config
file, the output directory and verbosity.  Exit codes: 0 ok, 1 config error,
2 numerical failure, 3 acceptance failure.  The environment variable
MBF_TABLE_CACHE selects an on-disk cache directory for the quadrature table.

Binary field format ("MBF1"): magic bytes, dimension (u32 LE), per-axis
resolutions (u32 LE each), replicate count (u32 LE), seed (u64 LE), then
replicates x lattice-size IEEE-754 float64 LE in row-major lattice order.
All numeric text output uses repr(), the shortest round-trip decimal form.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import struct
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .analysis import (
    directional_exponent,
    empirical_cov,
    lass_field,
    lass_sheet,
    local_exponent,
    pointwise_exponent,
    tightness_sweep,
)
from .geometry import GridSpec
from .hurst import UNBOUNDED, from_config as hurst_from_config
from .kernels import KernelModel, _table
from .special import QuadratureError
from .synth import FactorizationError, FieldSample, synthesize

log = logging.getLogger("mbfield")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_ACCEPTANCE = 3

CSV_SEP = ";"
COV_HEADER = "s;t;analytic;empirical;stderr;z"


class ConfigError(ValueError):
    """Invalid configuration document or file."""


# -- config schema ---------------------------------------------------------------

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 1}

_HURST_FUNCTION = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"family": {"const": "constant"}, "h": {"type": "number"}},
            "required": ["family", "h"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "family": {"const": "affine"},
                "gradient": _POINT,
                "offset": {"type": "number"},
            },
            "required": ["family", "gradient", "offset"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "family": {"const": "sine"},
                "base": {"type": "number"},
                "amplitude": {"type": "number"},
                "frequency": {"type": "number"},
            },
            "required": ["family", "base", "amplitude", "frequency"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "family": {"const": "sqrt"},
                "base": {"type": "number"},
                "anchor": _POINT,
            },
            "required": ["family", "base", "anchor"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "family": {"const": "weierstrass"},
                "base": {"type": "number"},
                "amplitude": {"type": "number"},
                "target": {"type": "number"},
                "lacunarity": {"type": "number"},
                "terms": {"type": "integer"},
            },
            "required": ["family", "base", "amplitude", "target"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "family": {"const": "table"},
                "order": {"enum": [1, 3]},
                "grid": {
                    "type": "object",
                    "properties": {
                        "lower": _POINT,
                        "upper": _POINT,
                        "resolution": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 2},
                        },
                    },
                    "required": ["lower", "upper", "resolution"],
                    "additionalProperties": False,
                },
                "values": {"type": "array", "items": {"type": "number"}},
            },
            "required": ["family", "grid", "values"],
            "additionalProperties": False,
        },
    ]
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "model": {
            "type": "object",
            "properties": {
                "family": {"enum": ["levy", "fbs", "mbf", "mbs"]},
                "hurst": {
                    "oneOf": [
                        {"type": "number"},
                        {"type": "array", "items": {"type": "number"}},
                        _HURST_FUNCTION,
                        {"type": "array", "items": _HURST_FUNCTION},
                    ]
                },
                "normalization": {"enum": ["unit", "paperd"]},
            },
            "required": ["family", "hurst"],
            "additionalProperties": False,
        },
        "grid": {
            "type": "object",
            "properties": {
                "lower": _POINT,
                "upper": _POINT,
                "resolution": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 2},
                    "minItems": 1,
                },
            },
            "required": ["lower", "upper", "resolution"],
            "additionalProperties": False,
        },
        "seed": {"type": "integer", "minimum": 0},
        "replicates": {"type": "integer", "minimum": 1},
        "tolerances": {
            "type": "object",
            "properties": {
                "z_max": {"type": "number", "exclusiveMinimum": 0},
                "exponent_tol": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "cov": {
            "type": "object",
            "properties": {
                "pairs": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": _POINT,
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
                "max_pairs": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "holder": {
            "type": "object",
            "properties": {
                "t0": {"type": "array", "items": _POINT, "minItems": 1},
                "directions": {"type": "array", "items": _POINT},
                "heatmap": {"type": "boolean"},
                "min_points": {"type": "integer", "minimum": 2},
            },
            "required": ["t0"],
            "additionalProperties": False,
        },
        "lass": {
            "type": "object",
            "properties": {
                "t0": _POINT,
                "alpha": {
                    "oneOf": [
                        {"type": "number"},
                        {"type": "array", "items": {"type": "number"}},
                    ]
                },
                "rho_levels": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 1},
                    "minItems": 4,
                },
                "probes": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": _POINT,
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "minItems": 1,
                },
                "tightness": {
                    "type": "object",
                    "properties": {"gamma": {"type": "number"}},
                    "required": ["gamma"],
                    "additionalProperties": False,
                },
            },
            "required": ["t0", "alpha", "rho_levels", "probes"],
            "additionalProperties": False,
        },
    },
    "required": ["model", "grid"],
    "additionalProperties": False,
}


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc
    return raw


def build_grid(config: dict) -> GridSpec:
    g = config["grid"]
    try:
        return GridSpec(tuple(g["lower"]), tuple(g["upper"]), tuple(g["resolution"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_model(config: dict, grid: GridSpec) -> KernelModel:
    m = config["model"]
    family = m["family"]
    hcfg = m["hurst"]
    try:
        if family == "levy":
            hurst = float(hcfg)
        elif family == "fbs":
            hurst = tuple(float(h) for h in hcfg)
        elif family == "mbf":
            hurst = hurst_from_config(hcfg, grid)
        else:
            hurst = tuple(hurst_from_config(c, grid) for c in hcfg)
        return KernelModel(family, grid.dimension, hurst, m.get("normalization"))
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"invalid model: {exc}") from exc


# -- artifact writers --------------------------------------------------------------

def write_mbf(path: Path, samples: list[FieldSample]) -> None:
    """Binary field dump: magic, dim, resolutions, replicates, seed, data."""
    spec = samples[0].spec
    with open(path, "wb") as fh:
        fh.write(b"MBF1")
        fh.write(struct.pack("<I", spec.dimension))
        for r in spec.resolution:
            fh.write(struct.pack("<I", r))
        fh.write(struct.pack("<I", len(samples)))
        fh.write(struct.pack("<Q", samples[0].seed))
        for s in samples:
            fh.write(np.asarray(s.values, dtype="<f8").tobytes())


def read_mbf(path: Path) -> dict:
    """Parse a binary field dump; returns header fields and data (R, n)."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != b"MBF1":
            raise ValueError(f"bad magic {magic!r}")
        (dim,) = struct.unpack("<I", fh.read(4))
        res = struct.unpack(f"<{dim}I", fh.read(4 * dim))
        (reps,) = struct.unpack("<I", fh.read(4))
        (seed,) = struct.unpack("<Q", fh.read(8))
        size = int(np.prod(res))
        data = np.frombuffer(fh.read(8 * reps * size), dtype="<f8")
    return {
        "dimension": dim,
        "resolution": res,
        "replicates": reps,
        "seed": seed,
        "values": data.reshape(reps, size),
    }


def write_pgm(path: Path, values: np.ndarray) -> None:
    """16-bit binary PGM (P5) of a 2D array, linearly rescaled to [0, 65535]."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 2:
        raise ValueError("PGM output needs a 2D array")
    lo, hi = float(v.min()), float(v.max())
    span = hi - lo if hi > lo else 1.0
    pix = np.round((v - lo) / span * 65535.0).astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{v.shape[1]} {v.shape[0]}\n65535\n".encode("ascii"))
        fh.write(pix.tobytes())


def _fmt_point(p) -> str:
    return "(" + ",".join(repr(float(c)) for c in np.atleast_1d(p)) + ")"


def _fmt(x) -> str:
    return repr(float(x))


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(
    out_dir: Path, command: str, config: dict, model: KernelModel, files: list[Path]
) -> Path:
    """Manifest embedding the config hash, code version and table checksum."""
    dims = {model.dimension} | ({1} if model.family in ("fbs", "mbs") else set())
    manifest = {
        "command": command,
        "version": __version__,
        "config_sha256": hashlib.sha256(
            json.dumps(config, sort_keys=True).encode()
        ).hexdigest(),
        "model_hash": model.model_hash(),
        "table_checksums": {str(d): _table(d).checksum() for d in sorted(dims)},
        "outputs": {f.name: _sha256(f) for f in files},
    }
    path = out_dir / "manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


# -- subcommands --------------------------------------------------------------------

def _synthesize(config: dict):
    grid = build_grid(config)
    model = build_model(config, grid)
    seed = config.get("seed", 0)
    replicates = config.get("replicates", 1)
    log.info(
        "synthesizing %d replicate(s) of %s on %d points",
        replicates,
        model.family,
        grid.size,
    )
    samples, cov = synthesize(model, grid, seed=seed, replicates=replicates)
    log.info("factorization jitter %s", cov.jitter)
    return grid, model, samples, cov


def cmd_synth(config: dict, out_dir: Path) -> int:
    _, model, samples, _ = _synthesize(config)
    field_path = out_dir / "field.mbf"
    write_mbf(field_path, samples)
    write_manifest(out_dir, "synth", config, model, [field_path])
    return EXIT_OK


def cmd_cov(config: dict, out_dir: Path) -> int:
    grid, model, samples, cov = _synthesize(config)
    cov_cfg = config.get("cov", {})
    pts = grid.points()
    if "pairs" in cov_cfg:
        pairs = [(tuple(s), tuple(t)) for s, t in cov_cfg["pairs"]]
    else:
        idx = [(i, j) for i in range(len(pts)) for j in range(i, len(pts))]
        idx = idx[: cov_cfg.get("max_pairs", 4096)]
        pairs = [(tuple(pts[i]), tuple(pts[j])) for i, j in idx]

    rows = []
    max_z = 0.0
    for s, t in pairs:
        analytic = model.cov(s, t)
        # the sampler's exact target is C + jitter I (except at exact-zero
        # variance points, which stay zero); z-scores measure Monte-Carlo
        # consistency with that target, while the analytic column stays the
        # kernel value
        target = analytic + (cov.jitter if s == t and analytic > 0.0 else 0.0)
        emp = empirical_cov(samples, s, t)
        if emp.stderr > 0.0:
            z = (emp.estimate - target) / emp.stderr
        else:
            z = 0.0 if emp.estimate == target else float("inf")
        max_z = max(max_z, abs(z))
        rows.append(
            CSV_SEP.join(
                [
                    _fmt_point(s),
                    _fmt_point(t),
                    _fmt(analytic),
                    _fmt(emp.estimate),
                    _fmt(emp.stderr),
                    _fmt(z),
                ]
            )
        )
    csv_path = out_dir / "cov.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(COV_HEADER + "\n")
        fh.write("\n".join(rows) + "\n")
        fh.write(f"# max_abs_z{CSV_SEP}{_fmt(max_z)}\n")
    write_manifest(out_dir, "cov", config, model, [csv_path])
    z_max = config.get("tolerances", {}).get("z_max", 4.0)
    print(f"max |z| = {_fmt(max_z)} over {len(pairs)} pairs (budget {z_max})")
    return EXIT_OK if max_z < z_max else EXIT_ACCEPTANCE


def _ground_truth(model: KernelModel, t0) -> tuple[float, float]:
    """Analytic (pointwise, local) exponents min(beta, H) at t0."""
    h_min = model.min_hurst_at(tuple(t0))
    if model.family == "levy":
        return h_min, h_min
    if model.family == "fbs":
        return h_min, h_min
    metas = (
        [model.hurst.meta(tuple(t0))]
        if model.family == "mbf"
        else [hm.meta(tuple(t0)) for hm in model.hurst]
    )
    beta_pw = min(m.pointwise for m in metas)
    beta_loc = min(m.local for m in metas)
    pw = h_min if beta_pw is UNBOUNDED else min(beta_pw, h_min)
    loc = h_min if beta_loc is UNBOUNDED else min(beta_loc, h_min)
    return min(pw, h_min), min(loc, h_min)


HOLDER_HEADER = (
    "t0;kind;direction;estimate;band;r2;ground_truth;abs_error;pass"
)


def _holder_rows(config: dict, model: KernelModel, samples, tol: float):
    hcfg = config.get("holder")
    if hcfg is None:
        raise ConfigError("holder command needs a 'holder' config section")
    rows = []
    all_pass = True
    for t0 in hcfg["t0"]:
        t0 = tuple(float(c) for c in t0)
        gt_pw, gt_loc = _ground_truth(model, t0)
        ests = [
            (pointwise_exponent(samples, t0, min_points=hcfg.get("min_points", 32)),
             gt_pw),
            (local_exponent(samples, t0), gt_loc),
        ]
        for u in hcfg.get("directions", []):
            est = directional_exponent(samples, t0, tuple(u))
            axis = int(np.argmax(np.abs(u)))
            h_dir = float(model.hurst_at(t0)[axis]) if model.family in (
                "fbs", "mbs") else model.min_hurst_at(t0)
            ests.append((est, min(gt_pw, h_dir) if model.family in ("fbs", "mbs")
                         else gt_pw))
        for est, gt in ests:
            err = abs(est.value - gt)
            ok = err <= tol
            all_pass &= ok
            rows.append(
                CSV_SEP.join(
                    [
                        _fmt_point(t0),
                        est.kind,
                        _fmt_point(est.direction) if est.direction else "",
                        _fmt(est.value),
                        _fmt(est.band),
                        _fmt(est.r2),
                        _fmt(gt),
                        _fmt(err),
                        "pass" if ok else "fail",
                    ]
                )
            )
    return rows, all_pass


def cmd_holder(config: dict, out_dir: Path) -> int:
    grid, model, samples, _ = _synthesize(config)
    tol = config.get("tolerances", {}).get("exponent_tol", 0.1)
    rows, all_pass = _holder_rows(config, model, samples, tol)
    csv_path = out_dir / "holder.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(HOLDER_HEADER + "\n")
        fh.write("\n".join(rows) + "\n")
    files = [csv_path]
    if config.get("holder", {}).get("heatmap") and grid.dimension == 2:
        # analytic exponent surface min(beta, H) over the lattice
        pts = grid.points()
        gt = np.array([_ground_truth(model, tuple(p))[0] for p in pts])
        pgm_path = out_dir / "holder.pgm"
        write_pgm(pgm_path, gt.reshape(grid.resolution))
        files.append(pgm_path)
    write_manifest(out_dir, "holder", config, model, files)
    print(f"{len(rows)} estimate(s); {'all pass' if all_pass else 'FAILURES'}")
    return EXIT_OK if all_pass else EXIT_ACCEPTANCE


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _lass_report_dict(report) -> dict:
    return _jsonable(
        {
            "t0": report.t0,
            "alpha": report.alpha,
            "probes": report.probes,
            "rhos": report.rhos,
            "moments": report.moments,
            "classification": report.classification,
            "limits": report.limits,
            "coefficient": report.coefficient,
            "cross_limits": report.cross_limits,
            "numeric_trend": report.numeric_trend,
            "axis_reports": [_lass_report_dict(r) for r in report.axis_reports],
            "product_residual": report.product_residual,
        }
    )


def _run_lass(config: dict, grid: GridSpec, model: KernelModel):
    lcfg = config.get("lass")
    if lcfg is None:
        raise ConfigError("lass command needs a 'lass' config section")
    if model.family not in ("mbf", "mbs"):
        raise ConfigError("lass analysis needs an mbf or mbs model")
    t0 = tuple(float(c) for c in lcfg["t0"])
    rhos = [2.0**-k for k in lcfg["rho_levels"]]
    probes = [(tuple(u), tuple(v)) for u, v in lcfg["probes"]]
    alpha = lcfg["alpha"]
    if model.family == "mbf":
        if not np.isscalar(alpha):
            raise ConfigError("mbf models take a scalar alpha")
        report = lass_field(model, t0, float(alpha), rhos, probes)
    else:
        alphas = [float(a) for a in np.atleast_1d(alpha)]
        if len(alphas) != model.dimension:
            raise ConfigError("mbs models take one alpha per axis")
        report = lass_sheet(model, t0, alphas, rhos, probes)
    tight = None
    if "tightness" in lcfg and model.family == "mbf":
        tight = tightness_sweep(
            model, t0, float(alpha), lcfg["tightness"]["gamma"], rhos, probes
        )
    return report, tight


def cmd_lass(config: dict, out_dir: Path) -> int:
    grid = build_grid(config)
    model = build_model(config, grid)
    report, tight = _run_lass(config, grid, model)
    doc = _lass_report_dict(report)
    if tight is not None:
        doc["tightness"] = _jsonable(
            {
                "gamma": tight.gamma,
                "sup_ratio": tight.sup_ratio,
                "per_rho_max": tight.per_rho_max,
                "bounded": tight.bounded,
            }
        )
    path = out_dir / "lass.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    write_manifest(out_dir, "lass", config, model, [path])
    print(f"classification: {report.classification}")
    return EXIT_OK


def cmd_report(config: dict, out_dir: Path) -> int:
    """Synthesis + exponent table + rendered figures next to the CSV."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    grid, model, samples, cov = _synthesize(config)
    files = []

    field_path = out_dir / "field.mbf"
    write_mbf(field_path, samples)
    files.append(field_path)

    # figure: sampled field
    fig, ax = plt.subplots(figsize=(7, 4))
    if grid.dimension == 1:
        xs = grid.axes()[0]
        for s in samples:
            ax.plot(xs, s.values, lw=0.7)
        ax.set_xlabel("t")
        ax.set_ylabel("X(t)")
    else:
        im = ax.imshow(
            samples[0].values.reshape(grid.resolution).T,
            origin="lower",
            extent=(grid.lower[0], grid.upper[0], grid.lower[1], grid.upper[1]),
            aspect="auto",
        )
        fig.colorbar(im, ax=ax)
        ax.set_xlabel("t1")
        ax.set_ylabel("t2")
    ax.set_title(f"{model.family} field, {len(samples)} replicate(s)")
    fig_path = out_dir / "field.png"
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    files.append(fig_path)

    rows = []
    if "holder" in config:
        tol = config.get("tolerances", {}).get("exponent_tol", 0.1)
        rows, _ = _holder_rows(config, model, samples, tol)
        # figure: estimates vs ground truth
        ests = [float(r.split(CSV_SEP)[3]) for r in rows]
        gts = [float(r.split(CSV_SEP)[6]) for r in rows]
        bands = [float(r.split(CSV_SEP)[4]) for r in rows]
        fig, ax = plt.subplots(figsize=(6, 4))
        xs = np.arange(len(ests))
        ax.errorbar(xs, ests, yerr=bands, fmt="o", label="estimate")
        ax.plot(xs, gts, "k_", markersize=14, label="analytic")
        ax.set_xlabel("estimate index")
        ax.set_ylabel("exponent")
        ax.legend()
        ax.set_title("regularity exponents: estimate vs analytic")
        fig_path = out_dir / "exponents.png"
        fig.savefig(fig_path, dpi=120)
        plt.close(fig)
        files.append(fig_path)

    csv_path = out_dir / "report.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(HOLDER_HEADER + "\n")
        if rows:
            fh.write("\n".join(rows) + "\n")
    files.insert(0, csv_path)

    if "lass" in config and model.family in ("mbf", "mbs"):
        report, _ = _run_lass(config, grid, model)
        fig, ax = plt.subplots(figsize=(6, 4))
        for i, (u, v) in enumerate(report.probes):
            ax.semilogx(report.rhos, report.moments[i], "o-", label=f"pair {i}")
        ax.set_xlabel("rho")
        ax.set_ylabel("normalized increment second moment / 2")
        ax.set_title(f"rescaled-increment trend: {report.classification}")
        ax.legend(fontsize=7)
        fig_path = out_dir / "lass.png"
        fig.savefig(fig_path, dpi=120)
        plt.close(fig)
        files.append(fig_path)

    write_manifest(out_dir, "report", config, model, files)
    print(f"report written to {out_dir}")
    return EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "cov": cmd_cov,
    "holder": cmd_holder,
    "lass": cmd_lass,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbfield",
        description="Gaussian random fields with position-dependent regularity: "
        "synthesis, covariance checks and exponent analysis.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](config, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FactorizationError, QuadratureError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
