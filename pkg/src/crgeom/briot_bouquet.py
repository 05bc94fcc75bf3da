"""Singular systems t*dy/dt = f(t, y) with f(0,0) = 0: exact formal
series solutions (with log terms at resonances), resonance detection,
eigenvalue classification, and a numeric integration oracle.

Matching t*d/dt (t^k (ln t)^r) = k t^k (ln t)^r + r t^k (ln t)^{r-1}
against f = p*t + A*y + Q(t,y) gives, per power k and log degree r,

    (k I - A) c_{k,r} + (r+1) c_{k,r+1} = g_{k,r},

where g_k depends only on lower-order coefficients.  Nonresonant k
(det(kI - A) != 0) solve uniquely top-down in r; resonant k solve as one
stacked triangular system with free kernel parameters set to zero and
the kernel dimension recorded in family_dim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .errors import InvariantViolation, ValidationError
from .linalg import (char_poly, count_eigenvalues_nonpositive_real,
                     poly_eval, rank, solve_linear)
from .scalars import GaussRational
from .series import Series

_ZERO = GaussRational(0)


def bb_vars(N: int) -> Tuple[str, ...]:
    return ("t",) + tuple(f"y{j}" for j in range(1, N + 1))


@dataclass(frozen=True)
class BBSystem:
    N: int
    f: Tuple[Series, ...]
    order: int

    @staticmethod
    def make(N: int, f, order: int) -> "BBSystem":
        comps = tuple(f)
        if len(comps) != N:
            raise ValidationError(f"expected {N} right-hand sides, got {len(comps)}")
        for j, g in enumerate(comps):
            if g.vars != bb_vars(N):
                raise ValidationError(
                    f"f{j+1} must be a series in {bb_vars(N)}")
            if not g.constant_term().is_zero():
                raise ValidationError(
                    f"invalid system: f{j+1}(0,0) = {g.constant_term()} != 0")
        return BBSystem(N=N, f=comps, order=order)


@dataclass
class LinearPart:
    N: int
    p: List[GaussRational]            # coefficient of t
    A: List[List[GaussRational]]      # coefficient of y
    char: List[GaussRational]         # char poly of A, low degree first


@dataclass
class FormalLogSolution:
    order: int
    coeffs: Dict[Tuple[int, int], List[GaussRational]]   # (k, r) -> vector
    resonances: List[Tuple[int, int]]                    # (k, kernel dim)
    family_dim: int

    def has_log_terms(self) -> bool:
        return any(r > 0 and any(not c.is_zero() for c in v)
                   for (k, r), v in self.coeffs.items())

    def vector_coeff(self, k: int, r: int) -> List[GaussRational]:
        return self.coeffs.get((k, r), [_ZERO] * _infer_n(self.coeffs))


def _infer_n(coeffs) -> int:
    for v in coeffs.values():
        return len(v)
    return 0


def linear_part(sys: BBSystem) -> LinearPart:
    N = sys.N
    p = []
    A = []
    t_exp = (1,) + (0,) * N
    for j in range(N):
        p.append(sys.f[j].coefficient(t_exp))
        row = []
        for b in range(N):
            y_exp = tuple(1 if i == b + 1 else 0 for i in range(N + 1))
            row.append(sys.f[j].coefficient(y_exp))
        A.append(row)
    return LinearPart(N=N, p=p, A=A, char=char_poly(A))


def resonances(lp: LinearPart, K: int) -> List[Tuple[int, int]]:
    """Positive integers k <= K with det(kI - A) = 0, i.e. integer
    eigenvalues of A, with the kernel dimension of kI - A."""
    out = []
    for k in range(1, K + 1):
        val = poly_eval(lp.char, GaussRational(k))
        if val.is_zero():
            B = _shifted(lp.A, k)
            out.append((k, lp.N - rank(B)))
    return out


def _shifted(A, k: int):
    N = len(A)
    return [[GaussRational(k if i == j else 0) - A[i][j] for j in range(N)]
            for i in range(N)]


# polynomial-in-(t, log) arithmetic: dict {(t_deg, log_deg): GaussRational}

def _poly_mul(a, b, K: int):
    out: Dict[Tuple[int, int], GaussRational] = {}
    for (ka, ra), ca in a.items():
        for (kb, rb), cb in b.items():
            k = ka + kb
            if k > K:
                continue
            key = (k, ra + rb)
            cur = out.get(key, _ZERO) + ca * cb
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
    return out


def _rhs_at_order(sys: BBSystem, sol: Dict[Tuple[int, int], List[GaussRational]],
                  k: int) -> List[Dict[int, GaussRational]]:
    """Coefficient of t^k in f(t, y) as a map log-degree -> vector entry,
    per component, using only solution coefficients of t-degree < k."""
    N = sys.N
    y_polys = []
    for j in range(N):
        y_polys.append({(kk, r): v[j] for (kk, r), v in sol.items()
                        if kk < k and not v[j].is_zero()})
    out: List[Dict[int, GaussRational]] = [dict() for _ in range(N)]
    for j in range(N):
        for exps, c in sys.f[j].terms.items():
            a = exps[0]
            if a > k:
                continue
            prod = {(a, 0): c}
            ok = True
            for comp in range(N):
                for _ in range(exps[comp + 1]):
                    prod = _poly_mul(prod, y_polys[comp], k)
                    if not prod:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            for (kk, r), cc in prod.items():
                if kk == k:
                    cur = out[j].get(r, _ZERO) + cc
                    if cur.is_zero():
                        out[j].pop(r, None)
                    else:
                        out[j][r] = cur
    return out


def formal_solve(sys: BBSystem) -> FormalLogSolution:
    """Exact solution coefficients c_{k,r} through order K = sys.order."""
    N, K = sys.N, sys.order
    lp = linear_part(sys)
    res = resonances(lp, K)
    resonant = {k for k, _ in res}
    family_dim = sum(d for _, d in res)
    sol: Dict[Tuple[int, int], List[GaussRational]] = {}
    for k in range(1, K + 1):
        g = _rhs_at_order(sys, sol, k)
        d = max((r for comp in g for r in comp), default=0)
        B = _shifted(lp.A, k)
        if k not in resonant:
            # unique top-down solve in r
            upper = [_ZERO] * N
            level: Dict[int, List[GaussRational]] = {}
            for r in range(d, -1, -1):
                rhs = [g[j].get(r, _ZERO) - GaussRational(r + 1) * upper[j]
                       for j in range(N)]
                c = solve_linear(B, rhs)
                if c is None:
                    raise InvariantViolation(
                        f"nonresonant level k={k} failed to solve")
                level[r] = c
                upper = c
            for r, c in level.items():
                if any(not x.is_zero() for x in c):
                    sol[(k, r)] = c
        else:
            # stacked triangular solve up to log degree R = d + N
            R = d + N
            size = N * (R + 1)
            big = [[_ZERO] * size for _ in range(size)]
            rhs = [_ZERO] * size
            for r in range(R + 1):
                for i in range(N):
                    row = r * N + i
                    for j in range(N):
                        big[row][r * N + j] = B[i][j]
                    if r + 1 <= R:
                        big[row][(r + 1) * N + i] = GaussRational(r + 1)
                    rhs[row] = g[i].get(r, _ZERO)
            x = solve_linear(big, rhs)
            if x is None:
                raise InvariantViolation(
                    f"resonant level k={k} inconsistent at log depth {R}")
            for r in range(R + 1):
                c = x[r * N:(r + 1) * N]
                if any(not v.is_zero() for v in c):
                    sol[(k, r)] = c
    _check_residual(sys, sol, K)
    return FormalLogSolution(order=K, coeffs=sol, resonances=res,
                             family_dim=family_dim)


def _check_residual(sys: BBSystem, sol, K: int) -> None:
    """Back-substitution: t*y' - f(t,y) must vanish through order K."""
    N = sys.N
    lhs: List[Dict[Tuple[int, int], GaussRational]] = [dict() for _ in range(N)]
    for (k, r), v in sol.items():
        for j in range(N):
            if v[j].is_zero():
                continue
            for key, factor in (((k, r), GaussRational(k)),
                                ((k, r - 1), GaussRational(r))):
                if factor.is_zero():
                    continue
                cur = lhs[j].get(key, _ZERO) + factor * v[j]
                if cur.is_zero():
                    lhs[j].pop(key, None)
                else:
                    lhs[j][key] = cur
    for k in range(1, K + 1):
        g = _rhs_at_order(sys, {kr: v for kr, v in sol.items()}, k + 0)
        # _rhs_at_order uses coefficients of t-degree < k; for the residual
        # at order k every contributing monomial has all factors of lower
        # degree except the pure linear A*y term, handled here directly
        lpart = linear_part(sys)
        for j in range(N):
            for r in set(list(g[j].keys()) +
                         [rr for (kk, rr) in lhs[j] if kk == k] +
                         [rr for (kk, rr), v in sol.items() if kk == k]):
                ay = _ZERO
                for b in range(N):
                    ay = ay + lpart.A[j][b] * sol.get((k, r), [_ZERO] * N)[b]
                total = lhs[j].get((k, r), _ZERO) - g[j].get(r, _ZERO) - ay
                if not total.is_zero():
                    raise InvariantViolation(
                        f"residual {total} at t^{k} log^{r} component {j+1}")


@dataclass
class DulacReport:
    N: int
    nonpositive_real: int        # eigenvalues on R_{<=0}, with multiplicity
    p: int                       # N - nonpositive_real
    char: List[GaussRational]


def dulac_classify(lp: LinearPart) -> DulacReport:
    """p = number of eigenvalues of A (with multiplicity) not lying on the
    closed negative real axis."""
    k = count_eigenvalues_nonpositive_real(lp.char)
    return DulacReport(N=lp.N, nonpositive_real=k, p=lp.N - k, char=lp.char)


def series_value(sol: FormalLogSolution, N: int, t: float) -> np.ndarray:
    vals = np.zeros(N, dtype=complex)
    if t == 0:
        return vals
    lg = np.log(abs(t))
    for (k, r), v in sol.coeffs.items():
        for j in range(N):
            vals[j] += complex(v[j]) * t ** k * lg ** r
    return vals


def numeric_oracle(sys: BBSystem, sol: FormalLogSolution,
                   t0: float = 1e-2, t_end: float = 0.1,
                   steps: int = 2000) -> float:
    """Fixed-step RK4 integration of y' = f(t,y)/t from t0 out to
    sign(t0)*t_end, started on the truncated series, compared against the
    series along the way; returns the max componentwise deviation.

    Requires a pure power-series solution (no log terms) and t0 != 0.
    """
    if sol.has_log_terms():
        raise ValidationError("numeric oracle requires a log-free solution")
    if t0 == 0:
        raise ValidationError("integration cannot start at the singularity")
    N = sys.N
    sign = 1.0 if t0 > 0 else -1.0
    a, b = t0, sign * abs(t_end)
    h = (b - a) / steps
    vars_ = bb_vars(N)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        vals = {"t": complex(t)}
        for j in range(N):
            vals[f"y{j+1}"] = complex(y[j])
        return np.array([sys.f[j].eval_complex(vals) for j in range(N)]) / t

    y = series_value(sol, N, a)
    t = a
    dev = 0.0
    for _ in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t + h
        dev = max(dev, float(np.max(np.abs(y - series_value(sol, N, t)))))
    return dev
