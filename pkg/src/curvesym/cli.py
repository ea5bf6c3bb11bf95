"""Command-line front end: detect and report the symmetries of a rational space curve."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra.roots import decimal_string
from .curve import (
    BUILTINS,
    ParamCurve3,
    builtin_curve,
    curve_from_json_text,
    curve_to_json,
    degeneracy,
    invariants,
)
from .errors import CurveParseError, DegenerateCurveError
from .isometry import SymmetryRecord, find_symmetries

EXIT_OK, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2
SIGNS = {"plus": (1,), "minus": (-1,), "both": (1, -1)}


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    builtin: str | None = None
    signs: str = "both"
    output_format: str = "text"
    decimal_digits: int = 30
    emit_plot_data: str | None = None
    seed: int | None = None

    def __post_init__(self):
        if (self.input is None) == (self.builtin is None):
            raise ValueError("exactly one of input and builtin is required")
        if self.signs not in SIGNS:
            raise ValueError(f"signs must be one of {', '.join(SIGNS)}")
        if self.output_format not in ("text", "json"):
            raise ValueError("output format must be text or json")
        if self.decimal_digits < 1:
            raise ValueError("decimal digits must be at least 1")


@dataclass
class Report:
    curve: dict
    degeneracy: dict
    direct: dict | None
    opposite: dict | None
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(**{k: data[k] for k in ("curve", "degeneracy", "direct", "opposite", "timings")})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# -- input -----------------------------------------------------------------


def parse_curve_file(path) -> ParamCurve3:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return curve_from_json_text(text)
    except CurveParseError as exc:
        raise CurveParseError(f"{path}: {exc}") from None


def load_curve(cfg: RunConfig) -> ParamCurve3:
    if cfg.builtin is not None:
        try:
            return builtin_curve(cfg.builtin, cfg.seed)
        except ValueError as exc:
            raise CurveParseError(str(exc)) from None
    try:
        return parse_curve_file(cfg.input)
    except OSError as exc:
        raise CurveParseError(f"{cfg.input}: {exc.strerror or exc}") from None


# -- serialization of records ---------------------------------------------------


def _exact(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return x.to_str("xi")


def _decimal(x, digits: int) -> str:
    if isinstance(x, Fraction):
        return decimal_string(x, digits)
    return x.to_decimal(digits)


def _vec(v, digits):
    return {"exact": [_exact(x) for x in v], "decimal": [_decimal(x, digits) for x in v]}


def _mat(m, digits):
    return {"exact": [[_exact(x) for x in row] for row in m],
            "decimal": [[_decimal(x, digits) for x in row] for row in m]}


def _scalar(x, digits):
    return {"exact": _exact(x), "decimal": _decimal(x, digits)}


def _fixed_set_dict(fs, digits) -> dict:
    out = {"kind": fs.kind}
    if fs.kind == "Point":
        out["point"] = _vec(fs.point, digits)
    elif fs.kind == "Line":
        out["point"] = _vec(fs.point, digits)
        out["direction"] = _vec(fs.direction, digits)
    elif fs.kind == "Plane":
        out["normal"] = _vec(fs.normal, digits)
        out["offset"] = _scalar(fs.offset, digits)
    return out


def record_dict(rec: SymmetryRecord, digits: int) -> dict:
    cand = rec.mobius
    xi = cand.xi
    lo, hi = xi.interval
    out = {
        "kind": rec.kind,
        "mobius": {
            "phi": cand.to_str(),
            "branch": cand.branch,
            "coefficients": {k: _scalar(v, digits) for k, v in zip("abcd", cand.coeffs())},
            "xi": {"min_poly": xi.min_poly.to_str("xi"), "interval": [str(lo), str(hi)],
                   "decimal": xi.to_decimal(digits)},
        },
        "Q": _mat(rec.isometry.Q, digits),
        "b": _vec(rec.isometry.b, digits),
        "det": rec.isometry.detSign,
        "fixed_set": _fixed_set_dict(rec.fixed_set, digits),
    }
    if rec.kind == "Rotation":
        out["cos_angle"] = _scalar(rec.cos_angle, digits)
    return out


def _sign_block(records, digits) -> dict:
    return {"count": len(records), "records": [record_dict(r, digits) for r in records]}


# -- run ------------------------------------------------------------------------


def run(cfg: RunConfig):
    """(Report or None, exit code, message)."""
    try:
        curve = load_curve(cfg)
    except CurveParseError as exc:
        return None, EXIT_INPUT, f"error: {exc}"
    summary = {"parametrization": curve_to_json(curve), "text": str(curve),
               "degree": curve.degree, "bitsize": curve.bitsize}
    t0 = time.perf_counter()
    try:
        inv = invariants(curve)
    except DegenerateCurveError as exc:
        return _refusal(summary, exc.kind, exc.reason)
    deg = degeneracy(inv)
    if deg.degenerate:
        return _refusal(summary, deg.kind, deg.reason)
    signs = SIGNS[cfg.signs]
    sym = find_symmetries(curve, signs, parallel=len(signs) > 1)
    digits = cfg.decimal_digits
    timings = {k: sym.timings[k] for k in ("invariants", "equations")}
    for s, res in sym.results.items():
        tag = "direct" if s > 0 else "opposite"
        for stage in ("candidates", "speed"):
            timings[f"{tag}.{stage}"] = res.timings.get(stage, 0.0)
    timings["reconstruct"] = sym.timings["reconstruct"]
    timings["total"] = time.perf_counter() - t0
    report = Report(
        curve=summary,
        degeneracy={"kind": deg.kind, "reason": deg.reason},
        direct=_sign_block(sym.records[1], digits) if 1 in sym.records else None,
        opposite=_sign_block(sym.records[-1], digits) if -1 in sym.records else None,
        timings=timings,
    )
    if cfg.emit_plot_data:
        records = [r for s in signs for r in sym.records[s]]
        emit_plot_data(curve, records, cfg.emit_plot_data, digits)
    return report, EXIT_OK, ""


def _refusal(summary, kind, reason):
    report = Report(curve=summary, degeneracy={"kind": kind, "reason": reason},
                    direct=None, opposite=None)
    return report, EXIT_REFUSED, f"refused: {kind}: {reason}"


# -- plot data ------------------------------------------------------------------


def _sample_params(n: int = 241):
    # uniform in [-6, 6] plus two far samples
    half = n // 2
    pts = [Fraction(6 * k, half) for k in range(-half, half + 1)]
    return pts + [Fraction(-40), Fraction(40)]


def emit_plot_data(curve: ParamCurve3, records, path, digits: int = 30) -> None:
    """CSV of curve samples followed by fixed-set descriptors."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["type", "label", "v1", "v2", "v3", "v4", "v5", "v6"])
        for t in sorted(_sample_params()):
            if curve.is_defined_at(t):
                w.writerow(["sample", str(t)] + [decimal_string(v, digits) for v in curve(t)])
        for i, rec in enumerate(records):
            fs = rec.fixed_set
            label = f"{i}:{rec.kind}"

            def dec(v):
                return _decimal(v, digits)
            if fs.kind == "Plane":
                w.writerow(["plane", label] + [dec(v) for v in fs.normal] + [dec(fs.offset)])
            elif fs.kind == "Line":
                w.writerow(["axis", label] + [dec(v) for v in fs.point + fs.direction])
            elif fs.kind == "Point":
                w.writerow(["center", label] + [dec(v) for v in fs.point])


# -- text rendering -------------------------------------------------------------


def _fmt_matrix(m, indent):
    width = max(len(x) for row in m for x in row)
    return "\n".join(indent + "[" + ", ".join(x.rjust(width) for x in row) + "]" for row in m)


def render_text(report: Report) -> str:
    lines = [f"curve: {report.curve['text']}",
             f"degree {report.curve['degree']}, bitsize {report.curve['bitsize']}",
             f"degeneracy: {report.degeneracy['kind']}"]
    for tag, title in (("direct", "direct"), ("opposite", "opposite")):
        block = getattr(report, tag)
        if block is None:
            continue
        lines.append(f"{title} symmetries: {block['count']}")
        for i, rec in enumerate(block["records"], 1):
            xi = rec["mobius"]["xi"]
            lines.append(f"  [{i}] {rec['kind']}: phi(t) = {rec['mobius']['phi']}")
            if xi["min_poly"] != "xi" and "xi" in rec["mobius"]["phi"]:
                lines.append(f"      xi: root of {xi['min_poly']} near {xi['decimal']}")
            lines.append("      Q =")
            lines.append(_fmt_matrix(rec["Q"]["exact"], "        "))
            lines.append(f"      b = ({', '.join(rec['b']['exact'])})")
            lines.append(f"      fixed set: {_fixed_text(rec['fixed_set'])}")
            if "cos_angle" in rec:
                lines.append(f"      cos(angle) = {rec['cos_angle']['exact']}"
                             f" ~ {rec['cos_angle']['decimal']}")
    if report.timings:
        lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timings.items()))
    return "\n".join(lines)


def _fixed_text(fs) -> str:
    kind = fs["kind"]
    if kind == "Point":
        return f"point ({', '.join(fs['point']['exact'])})"
    if kind == "Line":
        return (f"line through ({', '.join(fs['point']['exact'])}) "
                f"with direction ({', '.join(fs['direction']['exact'])})")
    if kind == "Plane":
        return f"plane {_linear_equation(fs['normal']['exact'], fs['offset']['exact'])}"
    return "all of space" if kind == "AllSpace" else "empty"


def _linear_equation(normal, offset) -> str:
    terms = []
    for coef, var in zip(normal, "xyz"):
        if coef == "0":
            continue
        if coef in ("1", "-1"):
            term = var if coef == "1" else f"-{var}"
        elif " " in coef:
            term = f"({coef})*{var}"
        else:
            term = f"{coef}*{var}"
        terms.append(term)
    lhs = " + ".join(terms).replace("+ -", "- ")
    return f"{lhs} = {offset}"


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvesym", description=__doc__)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="curve file (JSON with integer-string coefficients)")
    src.add_argument("--builtin", help=f"built-in curve: {', '.join(BUILTINS)}")
    p.add_argument("--signs", choices=list(SIGNS), default="both")
    p.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    p.add_argument("--digits", dest="decimal_digits", type=int, default=30)
    p.add_argument("--plot", dest="emit_plot_data", help="write CSV plot data to this path")
    p.add_argument("--seed", type=int, help="seed for random built-in curves")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
    except ValueError as exc:
        parser.error(str(exc))
    report, code, message = run(cfg)
    if message:
        print(message, file=sys.stderr)
    if report is not None:
        out = report.to_json() if cfg.output_format == "json" else render_text(report)
        print(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
