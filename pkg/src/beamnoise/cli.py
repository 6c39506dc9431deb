"""Command-line front end.

    beamnoise moments --basis hg:0,0,hg:2,0 --out moments.json
    beamnoise noise --mode hg:0,0 --state fock:5 --normalize coherent
    beamnoise sweep --mode hg:0,0 --states coherent,fock,thermal --nbar 0.1:20:200 --out sweep.csv
    beamnoise detection-mode --mode hg1d:0 --decompose hg:6 --out v0.csv
    beamnoise optimize-squeezing --mode hg:0,0 --nbar 10
    beamnoise figure fig2a --out fig2a.csv

Numbers are written with 12 significant digits; rows come out in input order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .detection import (
    angular_detection_mode,
    decompose_on_basis,
    line_profile,
    profile_peaks,
    width_detection_mode,
)
from .modes import FlattenedGaussian, HermiteGauss1D, LaguerreGauss, ModeSpecError, parse_basis, parse_mode, split_specs
from .moments import BasisError, build_matrices, mode_moments
from .noise import VacuumError, optimal_squeezing, width_variance_from_moments
from .quadrature import default_quadrature
from .states import (
    DisplacedSqueezed,
    DisplacedThermal,
    StateSpecError,
    mandel_q,
    parse_state,
    squeezing_from_db,
)

COMMANDS = ("moments", "noise", "sweep", "detection-mode", "optimize-squeezing", "figure")
FIGURES = ("fig2a", "fig2b", "fig3a", "fig3b")
FIG2A_COLUMNS = ("coherent", "fock", "sqvac", "thermal", "dispthermal(nth=2)", "dispsq(-3dB)")


def fmt(value: float) -> str:
    return f"{value + 0.0:.12g}"  # + 0.0 folds -0 into 0


@dataclass
class RunConfig:
    command: str
    mode: Optional[str] = None
    state: Optional[str] = None
    states: Optional[str] = None
    basis: Optional[str] = None
    figure: Optional[str] = None
    waist: float = 1.0
    k: float = 1.0
    nodes: Optional[int] = None
    nbar: Optional[str] = None
    normalize: str = "coherent"
    angular: bool = False
    decompose: Optional[str] = None
    points: Optional[int] = None
    extent: Optional[float] = None
    lmax: int = 10
    out: Optional[str] = None
    format: str = "csv"

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in names})

    def to_argv(self) -> list[str]:
        """Command line that parses back to this config."""
        argv = [self.command]
        if self.figure is not None:
            argv.append(self.figure)
        defaults = RunConfig(self.command)
        for f in fields(self):
            if f.name in ("command", "figure"):
                continue
            value = getattr(self, f.name)
            if value == getattr(defaults, f.name):
                continue
            flag = "--" + f.name.replace("_", "-")
            if isinstance(value, bool):
                if value:
                    argv.append(flag)
            else:
                argv.append(f"{flag}={value}")
        return argv


# ---------------------------------------------------------------------------
# parsing helpers


def parse_range(text: str) -> np.ndarray:
    """``start:stop:steps`` (inclusive) or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) != 3:
            raise ValueError
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected start:stop:steps") from None
    if steps < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} needs at least one step")
    return np.linspace(start, stop, steps)


def template_mandel_q(template: str, nbar: float) -> float:
    """Mandel Q of the state family ``template`` at mean photon number ``nbar``.

    Templates: coherent, fock, sqvac, thermal, dispthermal:<nth>,
    dispsq:<s> or dispsq:<dB>dB. The fock column is the sub-Poissonian
    limit Q = -1 at every nbar (exact at integer nbar). Displaced families
    give NaN when nbar is below their fixed non-displaced photon number.
    """
    head, _, arg = template.partition(":")
    head = head.lower()
    if head == "coherent":
        return 0.0
    if head == "fock":
        return -1.0
    if head == "sqvac":
        return 2 * nbar + 1
    if head == "thermal":
        return float(nbar)
    if head == "dispthermal":
        nth = float(arg) if arg else 2.0
        if nbar < nth:
            return math.nan
        return mandel_q(DisplacedThermal(math.sqrt(nbar - nth), nth))
    if head == "dispsq":
        if not arg or arg.lower().endswith("db"):
            s = squeezing_from_db(float(arg[:-2]) if arg else -3.0)
        else:
            s = float(arg)
        sh2 = math.sinh(s) ** 2
        if nbar < sh2:
            return math.nan
        return mandel_q(DisplacedSqueezed(math.sqrt(nbar - sh2), s))
    raise StateSpecError(f"unknown state family {template!r} in --states")


def _normalized(d00, f00, nbar, qv, normalize):
    if math.isnan(qv):
        return math.nan
    var = width_variance_from_moments(d00, f00, nbar, qv)
    if normalize == "coherent":
        return var / (f00 / nbar)
    if normalize == "mean":
        return var / d00**2
    return var


def sweep_table(mode, templates: Sequence[str], nbars, normalize="coherent", q=None):
    """Rows [nbar, value per template]; points evaluated concurrently, kept in order."""
    d00, f00 = mode_moments(mode, q)
    for t in templates:
        template_mandel_q(t, 1.0)  # validate before spawning work
    for nb in nbars:
        if not nb > 0:
            raise VacuumError(f"sweep needs nbar > 0, got {nb}")

    def row(nb):
        return [float(nb)] + [_normalized(d00, f00, nb, template_mandel_q(t, nb), normalize) for t in templates]

    with ThreadPoolExecutor() as pool:
        return list(pool.map(row, nbars))


# ---------------------------------------------------------------------------
# output


class _Output:
    def __init__(self, path: Optional[str]):
        self.path = path

    def write(self, text: str) -> None:
        if self.path in (None, "-"):
            sys.stdout.write(text)
        else:
            Path(self.path).write_text(text)


def csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit_table(cfg: RunConfig, header, rows, extra: Optional[dict] = None):
    if cfg.format == "json":
        doc = {"columns": list(header), "rows": [[float(v) for v in r] for r in rows]}
        if extra:
            doc.update(extra)
        _Output(cfg.out).write(json_text(_clean(doc)))
    else:
        _Output(cfg.out).write(csv_text(header, rows))


def _clean(obj):
    # NaN is not valid JSON
    if isinstance(obj, float):
        return None if math.isnan(obj) else float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# commands


def _quadrature_for(modes, nodes):
    if nodes is None:
        return None
    return default_quadrature(modes, nodes)


def cmd_moments(cfg: RunConfig) -> None:
    if not cfg.basis:
        raise ModeSpecError("moments needs --basis")
    basis = parse_basis(cfg.basis, cfg.waist)
    m = build_matrices(basis, cfg.k, _quadrature_for(basis, cfg.nodes))
    doc = m.to_dict()
    doc["basis"] = [b.spec for b in basis]
    doc["waist"] = cfg.waist
    _Output(cfg.out).write(json_text(doc))


def cmd_noise(cfg: RunConfig) -> None:
    mode = parse_mode(_required(cfg.mode, "--mode"), cfg.waist)
    state = parse_state(_required(cfg.state, "--state"))
    nbar = state.mean_photon
    if not nbar > 0:
        raise VacuumError("vacuum has undefined relative width noise (state has zero mean photon number)")
    q = _quadrature_for([mode], cfg.nodes)
    d00, f00 = mode_moments(mode, q)
    qv = mandel_q(state)
    value = _normalized(d00, f00, nbar, qv, cfg.normalize)
    if cfg.format == "json":
        doc = {
            "mode": mode.spec,
            "state": cfg.state,
            "waist": cfg.waist,
            "nbar": nbar,
            "mandel_q": qv,
            "D00": d00,
            "F00": f00,
            "mean_width": d00,
            "width_variance": width_variance_from_moments(d00, f00, nbar, qv),
            "normalize": cfg.normalize,
            "value": value,
        }
        _Output(cfg.out).write(json_text(_clean(doc)))
    else:
        _Output(cfg.out).write(fmt(value) + "\n")


def cmd_sweep(cfg: RunConfig) -> None:
    mode = parse_mode(_required(cfg.mode, "--mode"), cfg.waist)
    templates = split_specs(_required(cfg.states, "--states"))
    nbars = parse_range(_required(cfg.nbar, "--nbar"))
    rows = sweep_table(mode, templates, nbars, cfg.normalize, _quadrature_for([mode], cfg.nodes))
    _emit_table(cfg, ["nbar", *templates], rows)


def cmd_optimize(cfg: RunConfig) -> None:
    mode = parse_mode(_required(cfg.mode, "--mode"), cfg.waist)
    nbar = float(_required(cfg.nbar, "--nbar"))
    s, ratio = optimal_squeezing(mode, nbar, _quadrature_for([mode], cfg.nodes))
    alpha = math.sqrt(max(nbar - math.sinh(s) ** 2, 0.0))
    doc = {"mode": mode.spec, "nbar": nbar, "s": s, "alpha": alpha, "squeezing_db": 10 * math.log10(math.exp(-2 * s)), "ratio": ratio}
    if cfg.format == "json":
        _Output(cfg.out).write(json_text(_clean(doc)))
    else:
        _Output(cfg.out).write(csv_text(list(doc), [list(doc.values())]))


def _profile_grid(mode, points, extent):
    if extent is None:
        order = getattr(mode, "order", 0)
        extent = 3.0 * mode.waist * math.sqrt(order + 1) + 1.0 * mode.waist
    points = points or (401 if mode.ndim == 1 else 61)
    return np.linspace(-extent, extent, points)


def cmd_detection(cfg: RunConfig) -> None:
    mode = parse_mode(_required(cfg.mode, "--mode"), cfg.waist)
    q = _quadrature_for([mode], cfg.nodes)
    det = angular_detection_mode(mode, cfg.k, q) if cfg.angular else width_detection_mode(mode, q)
    xs = _profile_grid(mode, cfg.points, cfg.extent)
    if mode.ndim == 1:
        vals = det.func(xs)
        header, rows = ["x", "re", "im"], [[x, v.real, v.imag] for x, v in zip(xs, vals)]
    else:
        xx, yy = np.meshgrid(xs, xs, indexing="ij")
        vals = det.func(xx.ravel(), yy.ravel())
        header = ["x", "y", "re", "im"]
        rows = [[x, y, v.real, v.imag] for x, y, v in zip(xx.ravel(), yy.ravel(), vals)]
    decomposition = None
    if cfg.decompose:
        family, _, order = cfg.decompose.partition(":")
        try:
            max_order = int(order)
        except ValueError:
            raise ModeSpecError(f"bad --decompose {cfg.decompose!r}; expected hg:<max_order> or lg:<max_order>") from None
        decomposition = decompose_on_basis(det, family, max_order, det.quadrature).to_dict()
    if cfg.format == "json":
        doc = {"mode": mode.spec, "detection_mode": det.label, "columns": header, "rows": rows}
        if decomposition is not None:
            doc["decomposition"] = decomposition
        _Output(cfg.out).write(json_text(_clean(doc)))
        return
    _Output(cfg.out).write(csv_text(header, rows))
    if decomposition is not None:
        text = json_text(_clean(decomposition))
        if cfg.out in (None, "-"):
            sys.stderr.write(text)
        else:
            Path(cfg.out).with_suffix(".decomposition.json").write_text(text)


def cmd_figure(cfg: RunConfig) -> None:
    name = cfg.figure
    if name == "fig2a":
        # fundamental Gaussian, six state families normalized to the coherent state;
        # the -3 dB curve is a displaced squeezed state with exp(-2s) = 1/2, alpha set by nbar
        mode = parse_mode(cfg.mode or "hg:0,0", cfg.waist)
        nbars = parse_range(cfg.nbar or "0.1:20:200")
        templates = ["coherent", "fock", "sqvac", "thermal", "dispthermal:2", "dispsq:-3dB"]
        rows = sweep_table(mode, templates, nbars, "coherent")
        _emit_table(cfg, ["nbar", *FIG2A_COLUMNS], rows)
    elif name == "fig2b":
        # coherent state in LG_l0, normalized by the squared mean width, at a finite nbar
        nbar = float(cfg.nbar or 1.0)
        if not nbar > 0:
            raise VacuumError("fig2b needs nbar > 0")
        rows = []
        for l in range(cfg.lmax + 1):
            d00, f00 = mode_moments(LaguerreGauss(l, 0, cfg.waist))
            rows.append([l, width_variance_from_moments(d00, f00, nbar, 0.0) / d00**2])
        _emit_table(cfg, ["l", "noise_by_mean"], rows)
    elif name in ("fig3a", "fig3b"):
        if name == "fig3a":
            u0 = HermiteGauss1D(0, cfg.waist)
            xs = np.linspace(-4 * cfg.waist, 4 * cfg.waist, cfg.points or 401)
        else:
            u0 = FlattenedGaussian(30, cfg.waist)
            xs = np.linspace(-9 * cfg.waist, 9 * cfg.waist, cfg.points or 721)
        v0 = width_detection_mode(u0)
        uvals = line_profile(u0, xs).real
        vvals = line_profile(v0, xs).real
        rows = [[x, a, b] for x, a, b in zip(xs, uvals, vvals)]
        extra = {"mode": u0.spec, "detection_peaks": profile_peaks(xs, vvals)}
        _emit_table(cfg, ["x", "u0", "v0"], rows, extra)
    else:
        raise ModeSpecError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


def _required(value, flag):
    if value is None:
        raise ModeSpecError(f"missing required option {flag}")
    return value


HANDLERS = {
    "moments": cmd_moments,
    "noise": cmd_noise,
    "sweep": cmd_sweep,
    "detection-mode": cmd_detection,
    "optimize-squeezing": cmd_optimize,
    "figure": cmd_figure,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beamnoise", description="Quantum noise in the width of paraxial beams.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_help="output path (default stdout)"):
        p.add_argument("--waist", type=float, default=1.0, help="waist w, the unit of length (default 1)")
        p.add_argument("--nodes", type=int, default=None, help="quadrature nodes (per axis, or radial)")
        p.add_argument("--out", default=None, help=out_help)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("moments", help="D, F, Dtilde, Ftilde over a basis (JSON)")
    p.add_argument("--basis", required=True, help="comma-separated mode specs, e.g. hg:0,0,hg:2,0")
    p.add_argument("--k", type=float, default=1.0, help="wavenumber (default 1/w units)")
    common(p)

    p = sub.add_parser("noise", help="width noise of one mode in one state")
    p.add_argument("--mode", required=True, help="hg:<nx>,<ny> | hg1d:<n> | lg:<l>,<p> | fg:<N>")
    p.add_argument("--state", required=True, help="coherent:<a> | fock:<n> | sqvac:<s> | dispsq:<a>,<s> | thermal:<n> | dispthermal:<a>,<n>")
    p.add_argument("--normalize", choices=("coherent", "mean", "none"), default="coherent")
    common(p)

    p = sub.add_parser("sweep", help="relative width noise against mean photon number")
    p.add_argument("--mode", required=True)
    p.add_argument("--states", required=True, help="families: coherent,fock,sqvac,thermal,dispthermal:<nth>,dispsq:<s>|<dB>dB")
    p.add_argument("--nbar", required=True, help="start:stop:steps")
    p.add_argument("--normalize", choices=("coherent", "mean", "none"), default="coherent")
    common(p)

    p = sub.add_parser("detection-mode", help="width (or angular) detection mode profile")
    p.add_argument("--mode", required=True)
    p.add_argument("--angular", action="store_true", help="angular-spread detection mode m0")
    p.add_argument("--decompose", default=None, help="hg:<max_order> or lg:<max_order>")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--extent", type=float, default=None)
    common(p)

    p = sub.add_parser("optimize-squeezing", help="best amplitude squeezing at fixed photon number")
    p.add_argument("--mode", required=True)
    p.add_argument("--nbar", required=True)
    common(p)

    p = sub.add_parser(
        "figure",
        help="figure datasets (state comparison, LG sweep, detection-mode profiles)",
        description="fig2a: state comparison for HG00 (the -3 dB curve uses exp(-2s)=1/2 with alpha "
        "filling the swept nbar); fig2b: coherent LG_l0 noise over <W>^2 at --nbar (default 1); "
        "fig3a/fig3b: mean-field and detection-mode profiles for HG0 (1-D) and FG30.",
    )
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--mode", default=None)
    p.add_argument("--nbar", default=None)
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--points", type=int, default=None)
    common(p)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    return RunConfig.from_namespace(build_parser().parse_args(argv))


def run(cfg: RunConfig) -> int:
    try:
        HANDLERS[cfg.command](cfg)
    except (ModeSpecError, StateSpecError, argparse.ArgumentTypeError) as exc:
        print(f"beamnoise {cfg.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (VacuumError, BasisError, ValueError) as exc:
        print(f"beamnoise {cfg.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
