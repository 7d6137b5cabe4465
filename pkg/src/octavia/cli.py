"""Command-line front end.

Usage: octavia <subcommand> [options].  Subcommands: units, roots, group,
euclid, coset, eisenstein, fourier, green, geodesic, orbit-length,
verify, export.

Configuration: an optional key=value file (--config) provides defaults;
explicit flags win.  OCTAVIA_THREADS caps numeric parallelism.  All JSON
output is UTF-8 and newline-terminated; elements are serialized with
their doubled coordinates ("coords2") so every value is an integer.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import tempfile
import time

import numpy as np

from . import algebra, autoforms, hyperweyl, rings, rootsys, uhp
from .algebra import AlgElem, from_text, norm_sq
from .hyperweyl import GroupWord, Inv, Rot, Trans
from .rings import HURWITZ, OCTAVIAN, Z, Ring, ring_by_name
from .uhp import UhpPoint

__all__ = ["main"]


def _apply_thread_cap() -> None:
    cap = os.environ.get("OCTAVIA_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, cap)


# -- serialization -----------------------------------------------------------


def elem_json(a: AlgElem) -> dict:
    return {"dim": a.dim, "coords2": list(a.coords2)}


def word_json(w: GroupWord) -> list:
    out = []
    for tok in w.tokens:
        if isinstance(tok, Inv):
            out.append("inv")
        elif isinstance(tok, Trans):
            out.append({"trans": elem_json(tok.y)})
        elif isinstance(tok, Rot):
            out.append({"rot": elem_json(tok.eps)})
        else:
            raise TypeError(f"unknown token {tok!r}")
    return out


def _complex_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _atomic_write(path: str, data: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".octavia-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, payload, csv_rows=None, csv_header=None) -> None:
    """Write JSON (default) or CSV (--csv, when rows are available)."""
    if getattr(args, "csv", False) and csv_rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if csv_header:
            w.writerow(csv_header)
        w.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True) + "\n"
    out = getattr(args, "out", None)
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)


# -- argument parsing --------------------------------------------------------


def _parse_complex(text: str) -> complex:
    return complex(text.strip().replace("i", "j").replace(" ", ""))


def _parse_vector(text: str) -> np.ndarray:
    return np.array([float(t) for t in text.split(",")], dtype=float)


def _parse_elem_or_vector(text: str):
    if ":" in text:
        return from_text(text)
    return _parse_vector(text)


def _parse_z(text: str) -> UhpPoint:
    """'<u1,...,un>;<v>' -> point on the upper half plane."""
    try:
        upart, vpart = text.split(";")
    except ValueError:
        raise ValueError("expected z as '<u-coords>;<v>'") from None
    return UhpPoint(_parse_vector(upart), float(vpart))


def _load_config(path: str) -> dict:
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, val = line.split("=", 1)
            cfg[key.strip()] = val.strip()
    return cfg


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill arguments that were left at None from the config file."""
    path = getattr(args, "config", None)
    if not path:
        return args
    cfg = _load_config(path)
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, val)
    return args


def _ring(args) -> Ring:
    return ring_by_name(args.ring or "hurwitz")


# -- subcommands -------------------------------------------------------------


def cmd_units(args) -> int:
    ring = _ring(args)
    us = rings.units(ring)
    payload = {"ring": ring.name, "count": len(us),
               "elements": [elem_json(u) for u in us]}
    if ring is OCTAVIAN:
        real, brandt, imag = rings.octavian_unit_classes()
        payload["partition"] = {"real": len(real), "brandt": len(brandt),
                                "imaginary": len(imag)}
    _emit(args, payload,
          csv_rows=[list(u.coords2) for u in us],
          csv_header=[f"c2_{i}" for i in range(ring.dim)])
    return 0


def cmd_roots(args) -> int:
    name = (args.algebra or "d4").lower()
    roots = rootsys.all_roots(name)
    payload = {"algebra": name, "count": len(roots)}
    if args.cartan:
        payload["cartan"] = rootsys.cartan_matrix(name)
        payload["theta_marks"] = rootsys.theta_marks(name)
    if args.elements:
        payload["roots"] = [elem_json(r) for r in roots]
    _emit(args, payload,
          csv_rows=[list(r.coords2) for r in roots],
          csv_header=[f"c2_{i}" for i in range(roots[0].dim)])
    return 0


def cmd_group(args) -> int:
    which = (args.which or "g2").lower()
    t0 = time.perf_counter()
    if which == "d4":
        order, elements = rootsys.d4_even_count(), None
    elif which == "g2":
        maps = rootsys.generate_G2_2()
        order, elements = len(maps), maps
    elif which == "e7":
        if not args.heavy:
            raise SystemExit("the W+(E7) closure is minutes-scale; pass --heavy")
        order, elements = rootsys.generate_w_e7(), None
    elif which == "e8":
        order, elements = rootsys.w_e8_order(), None
    else:
        raise SystemExit(f"unknown group {which!r}; expected d4, g2, e7 or e8")
    payload = {"group": which, "order": order,
               "seconds": round(time.perf_counter() - t0, 3)}
    if args.elements and elements is not None:
        payload["elements"] = [[list(row) for row in m.rows2] for m in elements]
    _emit(args, payload)
    return 0


def cmd_euclid(args) -> int:
    ring = _ring(args)
    a = from_text(args.a)
    c = from_text(args.c)
    side = (args.side or "right").lower()
    if side == "right":
        tr = rings.right_euclid(ring, a, c)
    elif side == "left":
        tr = rings.left_euclid(ring, a, c)
    else:
        raise SystemExit("--side must be left or right")
    payload = {
        "ring": ring.name,
        "side": side,
        "inputs": [elem_json(x) for x in tr.inputs],
        "quotients": [elem_json(q) for q in tr.quotients],
        "remainders": [elem_json(r) for r in tr.remainders],
        "remainder_norms": [str(norm_sq(r)) for r in tr.remainders],
        "last_divisor": elem_json(tr.last_divisor),
        "coprime": norm_sq(tr.last_divisor) == 1,
    }
    _emit(args, payload)
    return 0


def cmd_coset(args) -> int:
    ring = _ring(args)
    bound = int(args.bound or 1)
    reps = hyperweyl.coset_reps(ring, bound)
    out = []
    for c, d in reps:
        entry = {"c": elem_json(c), "d": elem_json(d)}
        if args.words:
            entry["word"] = word_json(hyperweyl.build_w_tilde_cd(ring, c, d))
        out.append(entry)
    _emit(args, {"ring": ring.name, "bound": bound, "count": len(reps),
                 "representatives": out})
    return 0


def cmd_eisenstein(args) -> int:
    ring = _ring(args)
    z = _parse_z(args.z or "0,0,0,0;1")
    s = _parse_complex(args.s or "5")
    radius = int(args.radius or 9)
    p = autoforms.SeriesParams(ring, s, radius, z, exploratory=True)
    value = autoforms.eisenstein_truncated(p)
    # exact truncation-set symmetries: inversion, a unit rotation, conjugation
    zi = uhp.act_word(GroupWord(ring, (Inv(),)), z)
    res_inv = abs(value - autoforms.eisenstein_truncated(
        autoforms.SeriesParams(ring, s, radius, zi, exploratory=True)))
    eps = rings.units(ring)[0]
    zr = uhp.act_word(GroupWord(ring, (Rot(eps),)), z)
    res_rot = abs(value - autoforms.eisenstein_truncated(
        autoforms.SeriesParams(ring, s, radius, zr, exploratory=True)))
    uc = z.u_vector().copy()
    uc[0] = -uc[0]  # u-part of -conj(z)
    zc = UhpPoint(uc, z.v)
    res_conj = abs(value - autoforms.eisenstein_truncated(
        autoforms.SeriesParams(ring, s, radius, zc, exploratory=True)))
    _emit(args, {"ring": ring.name, "s": _complex_json(s), "radius": radius,
                 "z": {"u": list(z.u), "v": z.v},
                 "value": _complex_json(value),
                 "residual_inv": res_inv, "residual_rot": res_rot,
                 "residual_conj": res_conj})
    return 0


def cmd_fourier(args) -> int:
    ring = _ring(args)
    mu = _parse_elem_or_vector(args.mu or "0,0,0,0")
    v = float(args.v or 1.0)
    s = _parse_complex(args.s or "5")
    radius = int(args.radius or 9)
    grid = int(args.grid or 4)
    d = autoforms.fourier_coefficient(mu, v, s, radius, ring, grid=grid)
    _emit(args, {"ring": ring.name, "mu": list(d.mu), "v": d.v,
                 "s": _complex_json(s), "radius": radius, "grid": grid,
                 "coefficient": _complex_json(d.coefficient),
                 "error_estimate": d.error_estimate})
    return 0


def cmd_green(args) -> int:
    lam = float(args.lam or 1.0)
    s = float(args.s or 4.0)
    n = int(args.n or 4)
    _emit(args, {"lam": lam, "s": s, "n": n,
                 "value": autoforms.green_function(lam, s, n)})
    return 0


def _as_float_vec(text: str) -> np.ndarray:
    x = _parse_elem_or_vector(text)
    if isinstance(x, AlgElem):
        return np.array([float(c) for c in x.coords])
    return x


def cmd_geodesic(args) -> int:
    u1 = _as_float_vec(args.u1)
    u2 = _as_float_vec(args.u2)
    samples = int(args.samples or 100)
    ts = np.exp(np.linspace(math.log(1e-2), math.log(1e2), samples))
    rows = []
    for t in ts:
        z = uhp.geodesic_point(u1, u2, float(t))
        rows.append([float(t)] + [float(x) for x in z.u] + [z.v])
    header = ["t"] + [f"u{i}" for i in range(len(u1))] + ["v"]
    _emit(args, {"u1": list(u1), "u2": list(u2),
                 "points": [dict(zip(header, r)) for r in rows]},
          csv_rows=rows, csv_header=header)
    return 0


def cmd_orbit_length(args) -> int:
    entries = json.loads(args.matrix)
    M = tuple(tuple(np.asarray(x, dtype=float) for x in row) for row in entries)
    (a, _), (_, d) = M
    a0 = float(np.atleast_1d(a)[0])
    d0 = float(np.atleast_1d(d)[0])
    length = uhp.periodic_orbit_length(M)
    _emit(args, {"matrix": entries, "re_trace": a0 + d0, "length": length,
                 "dilation": math.exp(length)})
    return 0


def cmd_export(args) -> int:
    kind = args.kind
    outdir = args.outdir or "."
    os.makedirs(outdir, exist_ok=True)
    if kind == "units":
        ring = _ring(args)
        us = rings.units(ring)
        path = os.path.join(outdir, f"units-{ring.name}.json")
        _atomic_write(path, json.dumps(
            {"ring": ring.name, "count": len(us),
             "elements": [elem_json(u) for u in us]}, sort_keys=True) + "\n")
    elif kind == "roots":
        name = (args.algebra or "e8").lower()
        roots = rootsys.all_roots(name)
        path = os.path.join(outdir, f"roots-{name}.json")
        _atomic_write(path, json.dumps(
            {"algebra": name, "count": len(roots),
             "cartan": rootsys.cartan_matrix(name),
             "roots": [elem_json(r) for r in roots]}, sort_keys=True) + "\n")
    elif kind == "cosets":
        ring = _ring(args)
        bound = int(args.bound or 1)
        reps = hyperweyl.coset_reps(ring, bound)
        path = os.path.join(outdir, f"cosets-{ring.name}-{bound}.json")
        _atomic_write(path, json.dumps(
            {"ring": ring.name, "bound": bound, "count": len(reps),
             "representatives": [
                 {"c": elem_json(c), "d": elem_json(d),
                  "word": word_json(hyperweyl.build_w_tilde_cd(ring, c, d))}
                 for c, d in reps]}, sort_keys=True) + "\n")
    elif kind == "series-grid":
        ring = _ring(args)
        radius = int(args.radius or 9)
        s_values = [_parse_complex(t) for t in (args.s or "4;5").split(";")]
        v_values = [float(t) for t in (args.v or "1;2").split(";")]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re_s", "im_s", "v", "re_E", "im_E", "radius"])
        for s in s_values:
            for v in v_values:
                z = UhpPoint(np.zeros(ring.dim), v)
                val = autoforms.eisenstein_truncated(
                    autoforms.SeriesParams(ring, s, radius, z, exploratory=True))
                w.writerow([s.real, s.imag, v, val.real, val.imag, radius])
        path = os.path.join(outdir, f"series-{ring.name}-{radius}.csv")
        _atomic_write(path, buf.getvalue())
    elif kind == "fourier":
        ring = _ring(args)
        mu = _parse_elem_or_vector(args.mu or "0,0,0,0")
        radius = int(args.radius or 9)
        s = _parse_complex(args.s or "5")
        v_values = [float(t) for t in (args.v or "1;2").split(";")]
        data = []
        for v in v_values:
            d = autoforms.fourier_coefficient(mu, v, s, radius, ring,
                                              grid=int(args.grid or 4))
            data.append({"v": d.v, "coefficient": _complex_json(d.coefficient),
                         "error_estimate": d.error_estimate})
        path = os.path.join(outdir, f"fourier-{ring.name}.json")
        _atomic_write(path, json.dumps(
            {"ring": ring.name, "mu": [float(x) for x in np.atleast_1d(
                mu.coords if isinstance(mu, AlgElem) else mu)],
             "s": _complex_json(s), "radius": radius, "data": data},
            sort_keys=True) + "\n")
    elif kind == "orbits":
        entries = json.loads(args.matrix or "[[[2],[1]],[[1],[1]]]")
        M = tuple(tuple(np.asarray(x, dtype=float) for x in row)
                  for row in entries)
        path = os.path.join(outdir, "orbit-lengths.json")
        _atomic_write(path, json.dumps(
            {"matrix": entries, "length": uhp.periodic_orbit_length(M)},
            sort_keys=True) + "\n")
    else:
        raise SystemExit(f"unknown export kind {kind!r}")
    sys.stdout.write(json.dumps({"written": kind, "outdir": outdir}) + "\n")
    return 0


# -- verification suites -----------------------------------------------------


def _check(report, name, value, expected, provenance, t0, tol=None):
    if tol is None:
        passed = value == expected
    else:
        passed = abs(value - expected) <= tol
    report.append({
        "name": name, "value": repr(value), "expected": repr(expected),
        "passed": bool(passed), "provenance": provenance,
        "seconds": round(time.perf_counter() - t0, 3),
    })
    return passed


def _suite_algebra(report, rng):
    t0 = time.perf_counter()
    images = algebra.verify_octonion_table()
    _check(report, "octonion table consistent", len(images), 7,
           "algebra.verify_octonion_table", t0)
    t0 = time.perf_counter()
    ok = True
    for _ in range(20):
        a, x, y = (rings.random_element(OCTAVIAN, rng) for _ in range(3))
        ok &= all(m.is_zero() for m in algebra.moufang_residuals(a, x, y))
    _check(report, "Moufang identities (octonions)", ok, True,
           "algebra.moufang_residuals", t0)
    t0 = time.perf_counter()
    p, q, nz, np_, nq = algebra.find_sedenion_zero_divisors()
    _check(report, "sedenion zero divisor", (nz == 0, np_ > 0, nq > 0),
           (True, True, True), "algebra.find_sedenion_zero_divisors", t0)


def _suite_rings(report, rng):
    t0 = time.perf_counter()
    _check(report, "Hurwitz unit count", len(rings.units(HURWITZ)), 24,
           "rings.units", t0)
    t0 = time.perf_counter()
    _check(report, "octavian unit count", len(rings.units(OCTAVIAN)), 240,
           "rings.units", t0)
    t0 = time.perf_counter()
    ok = True
    for ring in (HURWITZ, OCTAVIAN):
        for _ in range(50):
            a = rings.random_element(ring, rng)
            c = rings.random_element(ring, rng)
            if c.is_zero():
                continue
            tr = rings.right_euclid(ring, a, c)
            norms = [norm_sq(r) for r in tr.remainders]
            ok &= all(n1 > n2 for n1, n2 in zip([norm_sq(c)] + norms, norms))
    _check(report, "Euclid norms strictly decrease", ok, True,
           "rings.right_euclid", t0)
    t0 = time.perf_counter()
    _check(report, "Hurwitz shell counts",
           tuple(rings.shell_counts(HURWITZ, 5)), (24, 24, 96, 24, 144),
           "rings.shell_counts", t0)


def _suite_roots(report, rng):
    for name, count in (("d4", 24), ("e7", 126), ("e8", 240)):
        t0 = time.perf_counter()
        _check(report, f"|roots({name})|", len(rootsys.all_roots(name)), count,
               "rootsys.all_roots", t0)
    t0 = time.perf_counter()
    _check(report, "W+(D4) order", rootsys.d4_even_count(), 96,
           "rootsys.d4_even_count", t0)
    for name in ("d4", "e8"):
        t0 = time.perf_counter()
        marks = rootsys.theta_marks(name)
        _check(report, f"theta over simple roots ({name})",
               all(isinstance(m, int) for m in marks), True,
               "rootsys.theta_marks", t0)


def _suite_groups(report, rng, heavy=False):
    t0 = time.perf_counter()
    _check(report, "G2(2) order", len(rootsys.generate_G2_2()), 12096,
           "rootsys.generate_G2_2", t0)
    t0 = time.perf_counter()
    _check(report, "W+(E8) order", rootsys.w_e8_order(sample_checks=5),
           240 * 120 * 12096, "rootsys.w_e8_order", t0)
    if heavy:
        t0 = time.perf_counter()
        _check(report, "W+(E7) order (heavy)", rootsys.generate_w_e7(),
               1451520, "rootsys.generate_w_e7", t0)


def _suite_hyperbolic(report, rng):
    t0 = time.perf_counter()
    reps = hyperweyl.coset_reps(Z, 4)
    _check(report, "Z coset representatives (bound 4)", len(reps), 8,
           "hyperweyl.coset_reps", t0)
    t0 = time.perf_counter()
    ok = True
    for ring in (Z, HURWITZ, OCTAVIAN):
        for _ in range(20):
            a = rings.random_element(ring, rng)
            c = rings.random_element(ring, rng)
            try:
                w = hyperweyl.build_w_ac(ring, a, c)
            except ValueError:
                continue
            got = hyperweyl.apply_word(w, hyperweyl.minus_delta(ring.dim))
            ok &= got == hyperweyl.orbit_target(a, c)
    _check(report, "orbit of -delta matches [[|a|^2, a c*],[c a*, |c|^2]]",
           ok, True, "hyperweyl.build_w_ac", t0)
    t0 = time.perf_counter()
    _check(report, "commutator ideal index", rings.commutator_ideal_index(),
           4, "rings.commutator_ideal_index", t0)


def _suite_uhp(report, rng):
    t0 = time.perf_counter()
    worst = 0.0
    for ring in (HURWITZ, OCTAVIAN):
        for _ in range(20):
            z1 = UhpPoint(np.array([rng.uniform(-1, 1) for _ in range(ring.dim)]),
                          rng.uniform(0.5, 2.0))
            z2 = UhpPoint(np.array([rng.uniform(-1, 1) for _ in range(ring.dim)]),
                          rng.uniform(0.5, 2.0))
            toks = []
            for _ in range(6):
                k = rng.randrange(3)
                if k == 0:
                    toks.append(Inv())
                elif k == 1:
                    toks.append(Trans(rings.random_element(ring, rng)))
                else:
                    toks.append(Rot(rings.units(ring)[
                        rng.randrange(ring.unit_count)]))
            w = GroupWord(ring, tuple(toks))
            d0 = uhp.distance(z1, z2)
            d1 = uhp.distance(uhp.act_word(w, z1), uhp.act_word(w, z2))
            worst = max(worst, abs(d0 - d1))
    _check(report, "distance isometry residual", worst < 1e-9, True,
           "uhp.act_word", t0)
    t0 = time.perf_counter()
    z = UhpPoint(np.array([0.3, -0.2, 0.1, 0.4]), 1.3)
    xp, xm, x = uhp.embed(z)
    res = abs(-xp * xm + float(x @ x) + 1.0)
    _check(report, "hyperboloid embedding residual", res < 1e-12, True,
           "uhp.embed", t0)


def _suite_autoforms(report, rng):
    t0 = time.perf_counter()
    z = UhpPoint(np.array([0.2, 0.1, -0.3, 0.05]), 1.1)
    p = autoforms.SeriesParams(HURWITZ, 5.0, 4, z)
    e = autoforms.eisenstein_truncated(p)
    zi = uhp.act_word(GroupWord(HURWITZ, (Inv(),)), z)
    res = abs(e - autoforms.eisenstein_truncated(
        autoforms.SeriesParams(HURWITZ, 5.0, 4, zi)))
    _check(report, "Eisenstein inversion residual", res <= 1e-13, True,
           "autoforms.eisenstein_truncated", t0)
    t0 = time.perf_counter()
    r1 = autoforms.zeta_relation_check(HURWITZ, z, 5.0, 4)
    r2 = autoforms.zeta_relation_check(HURWITZ, z, 5.0, 9)
    _check(report, "zeta relation residual shrinks", r2 < r1, True,
           "autoforms.zeta_relation_check", t0)
    t0 = time.perf_counter()
    x = 5.0
    ref = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    rel = abs(autoforms.bessel_k(0.5, x) - ref) / ref
    _check(report, "K_{1/2} closed form", rel < 1e-9, True,
           "autoforms.bessel_k", t0)
    t0 = time.perf_counter()
    zq = UhpPoint(np.array([0.4, 0.0, 0.2, -0.1]), 1.0)
    wq = UhpPoint(np.array([-0.3, 0.5, 0.0, 0.2]), 1.5)
    resid = abs(autoforms.green_pde_residual(zq, wq, 4.0))
    _check(report, "Green PDE residual", resid < 1e-6, True,
           "autoforms.green_pde_residual", t0)


_SUITES = {
    "algebra": _suite_algebra,
    "rings": _suite_rings,
    "roots": _suite_roots,
    "groups": _suite_groups,
    "hyperbolic": _suite_hyperbolic,
    "uhp": _suite_uhp,
    "autoforms": _suite_autoforms,
}


def run_verify(suite: str, heavy: bool = False, seed: int = 0) -> dict:
    """Run one verification suite (or all) and return the report."""
    if suite != "all" and suite not in _SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of "
                         f"{sorted(_SUITES) + ['all']}")
    names = sorted(_SUITES) if suite == "all" else [suite]
    rng = random.Random(seed)
    report = []
    for name in names:
        fn = _SUITES[name]
        if name == "groups":
            fn(report, rng, heavy=heavy)
        else:
            fn(report, rng)
    return {"suite": suite, "seed": seed,
            "passed": all(c["passed"] for c in report), "checks": report}


def cmd_verify(args) -> int:
    suite = args.suite or "all"
    result = run_verify(suite, heavy=bool(args.heavy),
                        seed=int(args.seed or 0))
    _emit(args, result)
    for c in result["checks"]:
        status = "pass" if c["passed"] else "FAIL"
        sys.stderr.write(f"{c['name']}: {status}\n")
    return 0 if result["passed"] else 1


# -- entry point -------------------------------------------------------------


def _add_common(sp):
    sp.add_argument("--config", help="key=value defaults file; flags win")
    sp.add_argument("--out", help="write output to this file atomically")
    sp.add_argument("--json", action="store_true", help="JSON output (default)")
    sp.add_argument("--csv", action="store_true", help="CSV output where available")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="octavia",
        description="integer rings in normed division algebras, their "
                    "hyperbolic Weyl groups, and automorphic numerics")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("units", help="ring units")
    sp.add_argument("--ring")
    _add_common(sp)
    sp.set_defaults(fn=cmd_units)

    sp = sub.add_parser("roots", help="root systems and Cartan matrices")
    sp.add_argument("--algebra", help="d4, e7 or e8")
    sp.add_argument("--cartan", action="store_true")
    sp.add_argument("--elements", action="store_true")
    _add_common(sp)
    sp.set_defaults(fn=cmd_roots)

    sp = sub.add_parser("group", help="finite group orders and elements")
    sp.add_argument("--which", help="d4, g2, e7 or e8")
    sp.add_argument("--order", action="store_true")
    sp.add_argument("--elements", action="store_true")
    sp.add_argument("--heavy", action="store_true")
    _add_common(sp)
    sp.set_defaults(fn=cmd_group)

    sp = sub.add_parser("euclid", help="sided Euclidean algorithm trace")
    sp.add_argument("--ring")
    sp.add_argument("--side", help="left or right")
    sp.add_argument("--a", required=True, help="element text, e.g. quat:2,0,1,1")
    sp.add_argument("--c", required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_euclid)

    sp = sub.add_parser("coset", help="canonical coset representatives")
    sp.add_argument("--ring")
    sp.add_argument("--bound", help="squared-norm bound")
    sp.add_argument("--words", action="store_true",
                    help="include the coset words")
    _add_common(sp)
    sp.set_defaults(fn=cmd_coset)

    sp = sub.add_parser("eisenstein", help="truncated series value")
    sp.add_argument("--ring")
    sp.add_argument("--z", help="'<u-coords>;<v>'")
    sp.add_argument("--s")
    sp.add_argument("--radius")
    _add_common(sp)
    sp.set_defaults(fn=cmd_eisenstein)

    sp = sub.add_parser("fourier", help="Fourier coefficient of the series")
    sp.add_argument("--ring")
    sp.add_argument("--mu", help="dual-lattice vector (comma floats or element text)")
    sp.add_argument("--v")
    sp.add_argument("--s")
    sp.add_argument("--radius")
    sp.add_argument("--grid")
    _add_common(sp)
    sp.set_defaults(fn=cmd_fourier)

    sp = sub.add_parser("green", help="resolvent Green function")
    sp.add_argument("--lam")
    sp.add_argument("--s")
    sp.add_argument("--n")
    _add_common(sp)
    sp.set_defaults(fn=cmd_green)

    sp = sub.add_parser("geodesic", help="sample a boundary geodesic")
    sp.add_argument("--ring")
    sp.add_argument("--u1", required=True)
    sp.add_argument("--u2", required=True)
    sp.add_argument("--samples")
    _add_common(sp)
    sp.set_defaults(fn=cmd_geodesic)

    sp = sub.add_parser("orbit-length", help="periodic geodesic length")
    sp.add_argument("--matrix", required=True,
                    help="2x2 matrix as JSON, entries as coordinate lists")
    _add_common(sp)
    sp.set_defaults(fn=cmd_orbit_length)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", help="|".join(sorted(_SUITES) + ["all"]))
    sp.add_argument("--heavy", action="store_true")
    sp.add_argument("--seed")
    _add_common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("export", help="write JSON/CSV artifacts")
    sp.add_argument("--kind", required=True,
                    help="units|roots|cosets|series-grid|fourier|orbits")
    sp.add_argument("--outdir")
    sp.add_argument("--ring")
    sp.add_argument("--algebra")
    sp.add_argument("--bound")
    sp.add_argument("--radius")
    sp.add_argument("--grid")
    sp.add_argument("--s", help="semicolon-separated list for grids")
    sp.add_argument("--v", help="semicolon-separated list for grids")
    sp.add_argument("--mu")
    sp.add_argument("--matrix")
    _add_common(sp)
    sp.set_defaults(fn=cmd_export)

    return ap


def main(argv=None) -> int:
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    args = _merge_config(args)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
