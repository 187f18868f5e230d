"""Command-line front end.

Subcommands:
  certify   write the guaranteed-scattering certificate for one incidence
  scan      sweep incidence angles, reporting h0/h1/full_spectrum per angle
  verify    run the quadrature verification suites on a configured domain
  slab      evaluate the 1-D slab non-scattering detector and oracle
  disk      locate the radial-wave non-scattering wave numbers for a disk

Reports are deterministic: identical configuration (including --seed)
produces byte-identical output.  Exit codes: 0 ok, 1 verification failure,
2 input error, 3 regime error.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .certificates import Material, certify, h_extrema, probe_vector_from_direction
from .errors import GeometryError, MethodError, ParameterError, RegimeError
from .geometry import (
    STRICTLY_CONVEX,
    Direction,
    classify_convexity,
    complex_direction_from_real,
    domain_from_dict,
    domain_to_dict,
    area as domain_area,
    width as domain_width,
)
from .onedim import SlabModel, disk_herglotz_residual, disk_herglotz_roots, slab_nonscattering, slab_reflection
from .oscillatory import (
    _anchor_shift,
    area_integral,
    contrast_coefficient,
    evanescent_test_vector,
    nonscattering_identity_residual,
    plane_wave_integral,
    sign_properties,
    slice_oscillatory_integral,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_REGIME_ERROR = 3

DEFAULT_TOL = 1e-8


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scatcert",
        description="Guaranteed-scattering wave-number certificates for planar obstacles.",
    )
    parser.add_argument("--version", action="version", version=f"scatcert {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_material=True, with_format=True):
        p.add_argument("--config", help="TOML or JSON file providing any of the options")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized suites (default 0)")
        p.add_argument("--tol", type=float, default=None, help="verification tolerance override")
        if with_format:
            p.add_argument("--format", choices=["json", "csv"], default=None, help="output format")
        if with_material:
            p.add_argument("--domain", help="domain description JSON file")
            p.add_argument("--a", type=float, default=None, help="material parameter a")
            p.add_argument("--q", type=float, default=None, help="material parameter q")

    p_cert = sub.add_parser("certify", help="certificate for one incidence direction")
    add_common(p_cert)
    p_cert.add_argument("--eta", type=float, default=None, help="incidence angle in radians")
    p_cert.add_argument("--k", type=float, default=None, help="bound for the coverage report")
    p_cert.add_argument("--k-range", default=None, help="LO:HI:N sweep; HI bounds the report")

    p_scan = sub.add_parser("scan", help="sweep incidence angles")
    add_common(p_scan)
    p_scan.add_argument("--angles", type=int, default=None, help="number of incidence angles (default 360)")
    p_scan.add_argument("--k", type=float, default=None, help="bound for the coverage report")
    p_scan.add_argument("--k-range", default=None, help="LO:HI:N sweep; HI bounds the report")
    p_scan.add_argument("--jobs", type=int, default=None, help="parallel workers (default 1)")

    p_ver = sub.add_parser("verify", help="quadrature verification suites")
    add_common(p_ver)
    p_ver.add_argument("--eta", type=float, default=None, help="incidence angle in radians")
    p_ver.add_argument("--cases", type=int, default=None, help="randomized cases per suite (default 50)")

    p_slab = sub.add_parser("slab", help="1-D slab non-scattering detector")
    add_common(p_slab, with_material=False, with_format=False)
    p_slab.add_argument("--w", type=float, default=None, help="slab thickness")
    p_slab.add_argument("--a", type=float, default=None, help="material parameter a (must be 1)")
    p_slab.add_argument("--q", type=float, default=None, help="material parameter q")
    p_slab.add_argument("--k", type=float, default=None, help="wave number")

    p_disk = sub.add_parser("disk", help="radial-wave non-scattering wave numbers")
    add_common(p_disk, with_material=False, with_format=False)
    p_disk.add_argument("--radius", type=float, default=None, help="disk radius")
    p_disk.add_argument("--a", type=float, default=None, help="material parameter a (must be 1)")
    p_disk.add_argument("--q", type=float, default=None, help="material parameter q")
    p_disk.add_argument("--k-max", type=float, default=None, help="scan bound")

    return parser


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def _load_config_file(path):
    try:
        if path.endswith(".toml"):
            try:
                import tomllib  # py >= 3.11
            except ModuleNotFoundError:
                import tomli as tomllib
            with open(path, "rb") as fh:
                return tomllib.load(fh)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise CliError(f"config file not found: {path}", EXIT_INPUT_ERROR) from exc
    except (json.JSONDecodeError, ValueError) as exc:
        raise CliError(f"malformed config file {path}: {exc}", EXIT_INPUT_ERROR) from exc


def _effective(ns, key, default=None):
    """Command-line value, else config-file value, else default."""
    value = getattr(ns, key, None)
    if value is not None:
        return value
    config = getattr(ns, "_config_data", {})
    return config.get(key, config.get(key.replace("_", "-"), default))


def _parse_k_range(text):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except (ValueError, AttributeError) as exc:
        raise CliError(f"bad --k-range {text!r}, expected LO:HI:N", EXIT_INPUT_ERROR) from exc
    if not (lo > 0.0 and hi > lo and steps >= 1):
        raise CliError(f"bad --k-range {text!r}: need 0 < LO < HI and N >= 1", EXIT_INPUT_ERROR)
    return lo, hi, steps


def _k_bound(ns, default=1000.0):
    k = _effective(ns, "k")
    if k is not None:
        if k <= 0.0:
            raise CliError(f"--k must be positive, got {k}", EXIT_INPUT_ERROR)
        return float(k)
    k_range = _effective(ns, "k_range")
    if k_range is not None:
        return _parse_k_range(k_range)[1]
    return default


def _load_domain(ns):
    path = _effective(ns, "domain")
    if path is None:
        raise CliError("a --domain file is required", EXIT_INPUT_ERROR)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise CliError(f"domain file not found: {path}", EXIT_INPUT_ERROR) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed domain JSON {path}: {exc}", EXIT_INPUT_ERROR) from exc
    try:
        return domain_from_dict(doc)
    except GeometryError as exc:
        raise CliError(f"invalid domain: {exc}", EXIT_INPUT_ERROR) from exc


def _load_material(ns):
    a = _effective(ns, "a")
    q = _effective(ns, "q")
    if a is None or q is None:
        raise CliError("material parameters --a and --q are required", EXIT_INPUT_ERROR)
    try:
        return Material(float(a), float(q))
    except ParameterError as exc:
        raise CliError(f"invalid material: {exc}", EXIT_INPUT_ERROR) from exc


def _tolerances(ns):
    return {
        "verification": float(_effective(ns, "tol", DEFAULT_TOL)),
        "band_endpoints": 1e-12,
        "exceptional_angle": 1e-9,
        "sign_guard": 1e-9,
    }


def _envelope(ns, command, result):
    config_keys = {}
    for key, value in sorted(vars(ns).items()):
        if key.startswith("_") or key in ("command", "out", "config") or value is None:
            continue
        config_keys[key] = value
    config_keys.update(getattr(ns, "_config_data", {}))
    config_keys.pop("out", None)
    config_keys.pop("config", None)
    digest = hashlib.sha256(
        json.dumps(config_keys, sort_keys=True, default=str).encode("utf-8")
    ).hexdigest()
    return {
        "tool": "scatcert",
        "version": __version__,
        "command": command,
        "config_sha256": digest,
        "seed": int(_effective(ns, "seed", 0)),
        "tolerances": _tolerances(ns),
        "result": result,
    }


def _emit(ns, payload, csv_rows=None, csv_header=None, default_fmt="json"):
    fmt = _effective(ns, "format", default_fmt)
    if fmt == "csv":
        if csv_rows is None:
            raise CliError("csv format is not available for this command", EXIT_INPUT_ERROR)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = _effective(ns, "out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def cmd_certify(ns):
    dom = _load_domain(ns)
    mat = _load_material(ns)
    eta = Direction(float(_effective(ns, "eta", 0.0)))
    k_max = _k_bound(ns)
    cert = certify(dom, eta, mat, k_max=k_max)
    doc = cert.to_dict()
    doc["domain"] = domain_to_dict(dom)
    first = cert.first_uncovered()
    if first is None:
        summary = "full_spectrum=true; every k > 0 is certified"
    else:
        summary = f"full_spectrum={str(cert.full_spectrum).lower()}; first uncovered k near {first:.9g}"
    print(summary, file=sys.stderr)
    rows = [
        [b["lo"], b["hi"] if b["hi"] is not None else "inf", b["lo_closed"], b["hi_closed"],
         b["source"], ";".join(repr(p) for p in b["punctures"])]
        for b in doc["bands"]
    ]
    _emit(ns, _envelope(ns, "certify", doc), rows, ["lo", "hi", "lo_closed", "hi_closed", "source", "punctures"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def _scan_one(domain_doc, a, q, angle, k_max):
    dom = domain_from_dict(domain_doc)
    mat = Material(a, q)
    cert = certify(dom, Direction(angle), mat, k_max=k_max)
    return {
        "eta_angle": angle,
        "h0": cert.h0,
        "h1": cert.h1,
        "full_spectrum": cert.full_spectrum,
        "gaps": [list(g) for g in cert.coverage_gaps],
        "punctures": cert.punctures(),
    }


def cmd_scan(ns):
    dom = _load_domain(ns)
    mat = _load_material(ns)
    n_angles = int(_effective(ns, "angles", 360))
    if n_angles < 1:
        raise CliError(f"--angles must be >= 1, got {n_angles}", EXIT_INPUT_ERROR)
    k_max = _k_bound(ns)
    jobs = int(_effective(ns, "jobs", 1))
    domain_doc = domain_to_dict(dom)
    angles = [2.0 * math.pi * i / n_angles for i in range(n_angles)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(
                pool.map(_scan_one, *zip(*[(domain_doc, mat.a, mat.q, ang, k_max) for ang in angles]))
            )
    else:
        entries = [_scan_one(domain_doc, mat.a, mat.q, ang, k_max) for ang in angles]
    result = {
        "domain": domain_doc,
        "material": {"a": mat.a, "q": mat.q, "n": mat.n},
        "angles": n_angles,
        "k_max": k_max,
        "entries": entries,
        "all_full_spectrum": all(e["full_spectrum"] for e in entries),
    }
    n_full = sum(1 for e in entries if e["full_spectrum"])
    print(f"full_spectrum for {n_full}/{n_angles} incidence angles", file=sys.stderr)
    rows = [
        [e["eta_angle"], e["h0"], e["h1"], e["full_spectrum"],
         e["gaps"][0][0] if e["gaps"] else "", e["gaps"][0][1] if e["gaps"] else ""]
        for e in entries
    ]
    _emit(ns, _envelope(ns, "scan", result), rows,
          ["eta_angle", "h0", "h1", "full_spectrum", "first_gap_lo", "first_gap_hi"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_suites(dom, mat, eta, cases, tol, rng):
    """Yield evidence rows; raises nothing, flags failures per row."""
    rows = []
    failures = []
    dom_area = domain_area(dom)
    strictly_convex = classify_convexity(dom) == STRICTLY_CONVEX
    n = mat.n

    def record(case_id, method, i_val, c_val, est, ok, detail):
        rows.append([case_id, method, i_val.real, i_val.imag, c_val.real, c_val.imag, est, ok])
        if not ok:
            failures.append((case_id, detail))

    # 1. method agreement: slice vs area over random real exponents
    for idx in range(cases):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        lam = Direction(angle)
        w = domain_width(dom, lam)
        rate = rng.uniform(0.1, 40.0) / w
        v_slice, e_slice = slice_oscillatory_integral(dom, lam, rate)
        kappa = (rate * lam.vector).astype(complex)
        v_area, e_area = area_integral(dom, kappa, _anchor_shift(dom, kappa))
        bound = max(tol * max(abs(v_slice), dom_area), 10.0 * (e_slice + e_area))
        ok = abs(v_slice - v_area) <= bound
        record(f"agreement-{idx}", "slice", v_slice, complex(0), e_slice, ok,
               f"slice {v_slice} vs area {v_area} (rate {rate}, angle {angle})")

    # 2. sign suite: low band, then resonances when strictly convex
    for idx in range(cases):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        lam = Direction(angle)
        w = domain_width(dom, lam)
        rate = rng.uniform(0.05, 1.0) * math.pi / w
        checks = sign_properties(dom, lam, rate)
        ok = checks.im_positive is True
        record(f"low-band-sign-{idx}", "slice", complex(checks.re_value, checks.im_value),
               complex(0), checks.guard, ok, f"Im={checks.im_value} at rate {rate}, angle {angle}")
    if strictly_convex:
        for m in (1, 2, 3):
            angle = rng.uniform(0.0, 2.0 * math.pi)
            lam = Direction(angle)
            w = domain_width(dom, lam)
            checks = sign_properties(dom, lam, 2.0 * math.pi * m / w)
            ok = checks.re_negative_at_resonance is True
            record(f"resonance-sign-m{m}", "slice", complex(checks.re_value, checks.im_value),
                   complex(0), checks.guard, ok, f"Re={checks.re_value} at m={m}, angle {angle}")

    # 3. non-scattering identity residual
    for idx in range(max(1, cases // 5)):
        k = rng.uniform(0.3, 6.0)
        if n > 1.0:
            xi = probe_vector_from_direction(Direction(rng.uniform(0.0, 2 * math.pi)), eta, mat, k)
        elif n < 1.0:
            xi = evanescent_test_vector(mat, eta)
        else:
            xi = complex_direction_from_real(Direction(rng.uniform(0.0, 2 * math.pi)))
        residual = nonscattering_identity_residual(dom, eta, mat, k, xi)
        rep = plane_wave_integral(dom, eta, mat, k, xi)
        ok = residual <= tol
        record(f"identity-{idx}", rep.method, rep.I_value, rep.C_value, rep.est_error, ok,
               f"residual {residual} at k {k}")

    return rows, failures


def cmd_verify(ns):
    dom = _load_domain(ns)
    mat = _load_material(ns)
    eta = Direction(float(_effective(ns, "eta", 0.0)))
    cases = int(_effective(ns, "cases", 50))
    tol = float(_effective(ns, "tol", DEFAULT_TOL))
    seed = int(_effective(ns, "seed", 0))
    rng = np.random.default_rng(seed)
    rows, failures = _verify_suites(dom, mat, eta, cases, tol, rng)
    result = {
        "cases": cases,
        "rows": len(rows),
        "failures": [{"case": c, "detail": d} for c, d in failures],
        "passed": not failures,
    }
    header = ["domain_id", "method", "re_I", "im_I", "re_C", "im_C", "est_error", "checks_passed"]
    _emit(ns, _envelope(ns, "verify", result), rows, header, default_fmt="csv")
    if failures:
        for case_id, detail in failures:
            print(f"FAIL {case_id}: {detail}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f"verify: all {len(rows)} checks passed", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# slab and disk
# ---------------------------------------------------------------------------


def cmd_slab(ns):
    w = _effective(ns, "w")
    q = _effective(ns, "q")
    k = _effective(ns, "k")
    if w is None or q is None or k is None:
        raise CliError("slab requires --w, --q and --k", EXIT_INPUT_ERROR)
    a = float(_effective(ns, "a", 1.0))
    try:
        model = SlabModel(thickness=float(w), material=Material(a, float(q)), k=float(k))
    except ParameterError as exc:
        raise CliError(str(exc), EXIT_INPUT_ERROR) from exc
    report = slab_nonscattering(model)
    doc = report.to_dict()
    doc["reflection_magnitude"] = abs(slab_reflection(model))
    _emit(ns, _envelope(ns, "slab", doc))
    return EXIT_OK


def cmd_disk(ns):
    radius = _effective(ns, "radius")
    q = _effective(ns, "q")
    k_max = _effective(ns, "k_max")
    if radius is None or q is None or k_max is None:
        raise CliError("disk requires --radius, --q and --k-max", EXIT_INPUT_ERROR)
    a = float(_effective(ns, "a", 1.0))
    try:
        mat = Material(a, float(q))
    except ParameterError as exc:
        raise CliError(str(exc), EXIT_INPUT_ERROR) from exc
    roots = disk_herglotz_roots(float(radius), mat, float(k_max))
    doc = {
        "radius": float(radius),
        "k_max": float(k_max),
        "roots": roots,
        "residuals": [disk_herglotz_residual(float(radius), mat, r) for r in roots],
    }
    _emit(ns, _envelope(ns, "disk", doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


_COMMANDS = {
    "certify": cmd_certify,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "slab": cmd_slab,
    "disk": cmd_disk,
}


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    config_path = getattr(ns, "config", None)
    try:
        ns._config_data = _load_config_file(config_path) if config_path else {}
        return _COMMANDS[ns.command](ns)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME_ERROR
    except (ParameterError, GeometryError, MethodError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
