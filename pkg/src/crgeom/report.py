"""Input-file parsing and deterministic JSON report assembly.

Input files are line-oriented ``key = value`` with ``#`` comments; series
values are double-quoted literals in the series DSL, numbers are exact
integers or rationals like ``3/2``.  Reports are plain dicts with fixed
insertion order, serialized by :func:`to_json`; series appear as
canonical literals, never as floats (floats occur only in the
diagnostics of explicitly numeric operations).
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import corpus
from .briot_bouquet import (BBSystem, bb_vars, dulac_classify, formal_solve,
                            linear_part, numeric_oracle)
from .crmap import HoloMap, check_identities, map_vars
from .errors import ParseError, ValidationError
from .frame import Frame, desingularize, filtration, levi_matrix
from .hypersurface import Hypersurface, full_report, validate
from .parsing import parse_series
from .prolongation import (ProlongedSystem, assemble_and_solve,
                           contact_prolong, rhs_vars)
from .scalars import GaussRational, format_coefficient
from .series import hypersurface_vars

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# key = value input files
# ---------------------------------------------------------------------------

def parse_keyvalue_file(path: str) -> Dict[str, str]:
    pairs: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError("expected 'key = value'", lineno, 1)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key.replace("_", "").isalnum():
                raise ParseError(f"bad key {key!r}", lineno, 1)
            if key in pairs:
                raise ParseError(f"duplicate key {key!r}", lineno, 1)
            if value.startswith('"'):
                if not value.endswith('"') or len(value) < 2:
                    raise ParseError("unterminated string", lineno,
                                     len(line))
                value = value[1:-1]
            pairs[key] = value
    return pairs


def _require(pairs: Dict[str, str], key: str, path: str) -> str:
    if key not in pairs:
        raise ValidationError(f"{path}: missing required key {key!r}")
    return pairs[key]


def _int(pairs: Dict[str, str], key: str, path: str,
         default: Optional[int] = None) -> int:
    if key not in pairs:
        if default is not None:
            return default
        raise ValidationError(f"{path}: missing required key {key!r}")
    try:
        return int(pairs[key])
    except ValueError:
        raise ValidationError(f"{path}: key {key!r} must be an integer")


def load_hypersurface(path: str, trunc_override: Optional[int] = None
                      ) -> Hypersurface:
    pairs = parse_keyvalue_file(path)
    n = _int(pairs, "n", path)
    trunc = trunc_override or _int(pairs, "trunc", path, default=8)
    phi_text = _require(pairs, "phi", path)
    phi = parse_series(phi_text, hypersurface_vars(n), trunc)
    h = Hypersurface.from_phi(n, phi)
    validate(h)
    return h


def load_map(path: str, trunc_override: Optional[int] = None
             ) -> Tuple[HoloMap, Hypersurface, Hypersurface]:
    pairs = parse_keyvalue_file(path)
    n = _int(pairs, "n", path)
    trunc = trunc_override or _int(pairs, "trunc", path, default=8)
    base = os.path.dirname(os.path.abspath(path))
    src = load_hypersurface(os.path.join(base, _require(pairs, "source", path)),
                            trunc)
    tgt = load_hypersurface(os.path.join(base, _require(pairs, "target", path)),
                            trunc)
    comps = []
    j = 1
    while f"F{j}" in pairs:
        comps.append(parse_series(pairs[f"F{j}"], map_vars(n), trunc))
        j += 1
    if len(comps) != tgt.n + 1:
        raise ValidationError(
            f"{path}: expected {tgt.n + 1} components F1..F{tgt.n + 1}, "
            f"got {len(comps)}")
    return HoloMap.make(n, comps), src, tgt


def load_bb_system(path: str, order_override: Optional[int] = None
                   ) -> BBSystem:
    pairs = parse_keyvalue_file(path)
    N = _int(pairs, "N", path)
    order = order_override or _int(pairs, "order", path, default=10)
    trunc = _int(pairs, "trunc", path, default=max(order + 2, 12))
    comps = [parse_series(_require(pairs, f"f{j}", path), bb_vars(N), trunc)
             for j in range(1, N + 1)]
    return BBSystem.make(N, comps, order)


def load_prolonged_system(path: str) -> Tuple[ProlongedSystem, int]:
    pairs = parse_keyvalue_file(path)
    n = _int(pairs, "n", path)
    k = _int(pairs, "k", path)
    order = _int(pairs, "order", path, default=8)
    trunc = _int(pairs, "trunc", path, default=max(order + 2, 10))
    ps = contact_prolong(n, k)
    rv = rhs_vars(n, k)
    for name in ps.needed_rhs_names():
        ps.supplied[name] = parse_series(_require(pairs, name, path), rv, trunc)
    if "samples" in pairs and pairs["samples"].strip():
        for chunk in pairs["samples"].split(";"):
            vals = tuple(Fraction(x.strip()) for x in chunk.split(",")
                         if x.strip())
            if len(vals) != 2 * n:
                raise ValidationError(
                    f"{path}: sample {chunk.strip()!r} must have {2*n} entries")
            ps.frozen_x.append(vals)
    return ps, order


# ---------------------------------------------------------------------------
# report dictionaries
# ---------------------------------------------------------------------------

def _fmt(x: GaussRational) -> str:
    return format_coefficient(x)


def _m_str(m: Optional[int]):
    return "infinity" if m is None else m


def hypersurface_report(h: Hypersurface, ell_max: int = 4,
                        ess_bound: int = 4) -> dict:
    rep = full_report(h, D=ess_bound, ell_max=ell_max)
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": "report",
        "input": {"n": h.n, "trunc": h.trunc, "phi": h.phi.to_literal()},
        "invariants": {
            "m": _m_str(rep.m),
            "levi_flat": rep.levi_flat,
        },
    }
    if rep.levi_flat:
        return out
    inv = out["invariants"]
    inv["r"] = rep.r
    inv["phi_m"] = rep.phi_m.to_literal()
    inv["essential"] = rep.essential.as_dict()
    inv["ell"] = rep.ell.as_dict()

    fr = Frame(h)
    levi = desingularize(fr, levi_matrix(fr, rep.m), rep.m)
    type2 = any(not levi.h0[a][b].constant_term().is_zero()
                for a in range(h.n) for b in range(h.n))
    inv["type_2"] = type2
    filt = filtration(fr, rep.m, ell_max)
    inv["filtration_ranks"] = filt.ranks
    inv["filtration_ell"] = filt.ell
    inv["filtration_nondegenerate"] = filt.nondegenerate
    out["levi"] = {
        "h": [[levi.h[a][b].to_literal() for b in range(h.n)]
              for a in range(h.n)],
        "h0": [[levi.h0[a][b].to_literal() for b in range(h.n)]
               for a in range(h.n)],
        "h0_at_origin": [[_fmt(levi.h0[a][b].constant_term())
                          for b in range(h.n)] for a in range(h.n)],
    }
    return out


def map_report(f: HoloMap, src: Hypersurface, tgt: Hypersurface) -> dict:
    rr = check_identities(f, src, tgt)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "check-map",
        "input": {
            "n": f.n,
            "components": [c.to_literal() for c in f.components],
            "source_phi": src.phi.to_literal(),
            "target_phi": tgt.phi.to_literal(),
        },
        "residuals": {
            "map_residual": rr.map_residual.to_literal(),
            "maps_into": rr.map_residual.is_zero(),
            "identities": {name: [r.to_literal() for r in rs]
                           for name, rs in rr.identity_residuals.items()},
            "all_zero": rr.all_zero(),
        },
        "xi": rr.xi.to_literal(),
        "xi_smooth": rr.xi_smooth,
    }


def bb_report(sys: BBSystem, oracle_t0: Optional[float] = None) -> dict:
    lp = linear_part(sys)
    sol = formal_solve(sys)
    dul = dulac_classify(lp)
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": "bb-solve",
        "input": {"N": sys.N, "order": sys.order,
                  "f": [g.to_literal() for g in sys.f]},
        "linear_part": {
            "p": [_fmt(x) for x in lp.p],
            "A": [[_fmt(x) for x in row] for row in lp.A],
            "char_poly": [_fmt(c) for c in lp.char],
        },
        "resonances": [{"k": k, "kernel_dim": d} for k, d in sol.resonances],
        "dulac": {"p": dul.p, "nonpositive_real": dul.nonpositive_real},
        "solution": {
            "family_dim": sol.family_dim,
            "has_log_terms": sol.has_log_terms(),
            "coefficients": [
                {"k": k, "r": r, "vector": [_fmt(x) for x in v]}
                for (k, r), v in sorted(sol.coeffs.items())],
        },
    }
    if oracle_t0 is not None:
        dev_pos = numeric_oracle(sys, sol, t0=abs(oracle_t0))
        dev_neg = numeric_oracle(sys, sol, t0=-abs(oracle_t0))
        out["diagnostics"] = {"oracle_deviation_pos": dev_pos,
                              "oracle_deviation_neg": dev_neg}
    return out


def prolong_report(ps: ProlongedSystem, order: int) -> dict:
    rep = assemble_and_solve(ps, order)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "prolong",
        "jet": {
            "n": ps.jets.n, "k": ps.jets.k,
            "variables": len(ps.jets.variables),
            "contact_equations": len(ps.contact),
            "closure_slots": len(ps.closure_slots),
        },
        "samples": [
            {
                "x": [str(v) for v in ss.sample],
                "coefficients": [
                    {"k": k, "r": r, "vector": [_fmt(x) for x in v]}
                    for (k, r), v in sorted(ss.solution.coeffs.items())],
                "resonances": [{"k": k, "kernel_dim": d}
                               for k, d in ss.resonances],
                "family_dim": ss.solution.family_dim,
                "diagnostics": {"growth": ss.growth,
                                "radius_proxy": ss.radius_proxy},
            } for ss in rep.samples],
    }


# ---------------------------------------------------------------------------
# built-in example corpus
# ---------------------------------------------------------------------------

def examples_report(trunc: Optional[int] = None) -> dict:
    """Run the built-in corpus and assert its expected invariants; any
    mismatch is reported with ok = false (and a nonzero exit downstream)."""
    entries = []

    def check(name: str, expected, actual) -> None:
        entries.append({"name": name, "expected": expected, "actual": actual,
                        "ok": expected == actual})

    t = trunc or corpus.DEFAULT_TRUNC
    m0 = corpus.model_surface(t)
    rep0 = full_report(m0)
    check("model-surface m", 1, rep0.m)
    check("model-surface r", 2, rep0.r)
    check("model-surface ell", {"status": "nondegenerate", "ell": 1},
          rep0.ell.as_dict())
    check("model-surface essential",
          {"status": "certified-essential", "bound": 1, "detail": ""},
          rep0.essential.as_dict())
    fr0 = Frame(m0)
    levi0 = desingularize(fr0, levi_matrix(fr0, 1), 1)
    check("model-surface type-2 leading term", "1",
          _fmt(levi0.h0[0][0].constant_term()))

    e12 = corpus.two_infinite_type_surface(t)
    rep12 = full_report(e12)
    check("implicit-surface m", 2, rep12.m)
    check("implicit-surface r", 2, rep12.r)

    for k in (2, 3, 4):
        tk = max(t, 2 * k + 4)
        mk = corpus.power_target(k, tk)
        fmap = corpus.power_map(k, tk)
        rr = check_identities(fmap, corpus.model_surface(tk), mk)
        check(f"power-map k={k} residuals", True, rr.all_zero())
        check(f"power-map k={k} xi", str(k), rr.xi.to_literal())

    ident = corpus.identity_map(1, t)
    rr_id = check_identities(ident, m0, m0)
    check("identity-map xi", "1", rr_id.xi.to_literal())
    check("identity-map residuals", True, rr_id.all_zero())

    filt_h = corpus.filtration_example_surface(t)
    fr2 = Frame(filt_h)
    filt = filtration(fr2, 1, 4)
    check("filtration ranks", [0, 1, 2], filt.ranks)
    check("filtration ell", 2, filt.ell)

    return {
        "schema_version": SCHEMA_VERSION,
        "command": "examples",
        "trunc": t,
        "entries": entries,
        "all_ok": all(e["ok"] for e in entries),
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=True) + "\n"


def summary_table(report: dict) -> str:
    """Short fixed-width text rendering of the examples report."""
    lines = []
    width = max(len(e["name"]) for e in report["entries"])
    for e in report["entries"]:
        status = "ok" if e["ok"] else "FAIL"
        lines.append(f"{e['name']:<{width}}  {status}")
    lines.append(f"{'all':<{width}}  "
                 f"{'ok' if report['all_ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"
