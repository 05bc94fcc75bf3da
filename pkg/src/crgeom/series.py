"""Sparse truncated multivariate formal power series over Gaussian rationals.

A series lives over a fixed ordered variable tuple (for hypersurface work
``('z1',...,'zn','c1',...,'cn','s')``, for singular ODE work
``('t','y1',...,'yN')``, etc.).  Terms are stored as a map from exponent
vectors to nonzero GaussRational coefficients; every stored term has total
degree <= the truncation order.  All operations are pure; every binary
operation truncates to the minimum of the operand truncations so that
divisibility checks downstream stay honest.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .errors import (
    DivisibilityError,
    NotAContractionError,
    UnitRequiredError,
)
from .scalars import GaussRational, format_coefficient

Exponents = Tuple[int, ...]

_CONJ_RE = _re.compile(r"^([zc])(\d+)$")


def conjugate_variable(name: str) -> str:
    """Partner of a variable under formal conjugation: z_k <-> c_k, rest fixed."""
    m = _CONJ_RE.match(name)
    if m is None:
        return name
    return ("c" if m.group(1) == "z" else "z") + m.group(2)


class Series:
    __slots__ = ("vars", "trunc", "terms")

    def __init__(self, vars: Tuple[str, ...], trunc: int,
                 terms: Mapping[Exponents, GaussRational] | None = None):
        if trunc < 0:
            trunc = 0
        clean: Dict[Exponents, GaussRational] = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff.is_zero():
                    continue
                if len(exps) != len(vars):
                    raise ValueError("exponent vector length mismatch")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                if sum(exps) <= trunc:
                    clean[tuple(exps)] = coeff
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, vars, trunc):
        return cls(vars, trunc)

    @classmethod
    def const(cls, c, vars, trunc):
        c = GaussRational.of(c) if not isinstance(c, GaussRational) else c
        return cls(vars, trunc, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, name, vars, trunc):
        idx = vars.index(name)
        exps = tuple(1 if j == idx else 0 for j in range(len(vars)))
        return cls(vars, trunc, {exps: GaussRational(1)})

    @classmethod
    def monomial(cls, exps, coeff, vars, trunc):
        return cls(vars, trunc, {tuple(exps): GaussRational.of(coeff)
                                 if not isinstance(coeff, GaussRational) else coeff})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussRational:
        return self.terms.get((0,) * len(self.vars), GaussRational(0))

    def min_total_degree(self):
        """Lowest total degree of a nonzero term, or None for the zero series."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def coefficient(self, exps: Exponents) -> GaussRational:
        return self.terms.get(tuple(exps), GaussRational(0))

    def _vidx(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} for series over {self.vars}")

    def coefficient_in(self, name: str, k: int) -> "Series":
        """Series coefficient of ``name**k`` (the variable is removed, i.e.
        its exponent is zero in the result, which keeps the same var tuple)."""
        i = self._vidx(name)
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == k:
                out[exps[:i] + (0,) + exps[i + 1:]] = c
        return Series(self.vars, self.trunc - k, out)

    def min_degree_in(self, name: str):
        """Least exponent of ``name`` over nonzero terms, or None if zero."""
        if not self.terms:
            return None
        i = self._vidx(name)
        return min(exps[i] for exps in self.terms)

    def set_var_zero(self, name: str) -> "Series":
        i = self._vidx(name)
        out = {exps: c for exps, c in self.terms.items() if exps[i] == 0}
        return Series(self.vars, self.trunc, out)

    # -- ring operations -------------------------------------------------------

    def _compat(self, other: "Series"):
        if self.vars != other.vars:
            raise ValueError(
                f"variable mismatch: {self.vars} vs {other.vars}")

    def truncate(self, trunc: int) -> "Series":
        if trunc >= self.trunc:
            return self
        return Series(self.vars, trunc, self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = Series.const(other, self.vars, self.trunc)
        self._compat(other)
        trunc = min(self.trunc, other.trunc)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            cur = out.get(exps)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(exps, None)
            else:
                out[exps] = s
        return Series(self.vars, trunc, out)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.vars, self.trunc,
                      {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = Series.const(other, self.vars, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            c = other if isinstance(other, GaussRational) else GaussRational.of(other)
            return Series(self.vars, self.trunc,
                          {e: v * c for e, v in self.terms.items()})
        self._compat(other)
        trunc = min(self.trunc, other.trunc)
        out: Dict[Exponents, GaussRational] = {}
        # iterate over the sparser operand outermost
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for ea, ca in a.terms.items():
            da = sum(ea)
            for eb, cb in b.terms.items():
                if da + sum(eb) > trunc:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                cur = out.get(e)
                s = c if cur is None else cur + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return Series(self.vars, trunc, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Series.const(1, self.vars, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Series is unhashable; compare structurally")

    # -- calculus -------------------------------------------------------------

    def diff(self, name: str) -> "Series":
        """Exact partial derivative; truncation drops by one."""
        i = self._vidx(name)
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            d = exps[:i] + (e - 1,) + exps[i + 1:]
            nc = c * e
            cur = out.get(d)
            s = nc if cur is None else cur + nc
            if not s.is_zero():
                out[d] = s
            else:
                out.pop(d, None)
        return Series(self.vars, self.trunc - 1, out)

    # -- conjugation -----------------------------------------------------------

    def conjugate(self) -> "Series":
        """Swap z_k <-> c_k exponents and conjugate every coefficient."""
        perm = [self.vars.index(conjugate_variable(v)) if conjugate_variable(v) in self.vars
                else None for v in self.vars]
        if any(p is None for p in perm):
            missing = [v for v, p in zip(self.vars, perm) if p is None]
            raise ValueError(f"conjugate partner missing for {missing}")
        out = {}
        for exps, c in self.terms.items():
            e = [0] * len(exps)
            for i, x in enumerate(exps):
                e[perm[i]] = x
            out[tuple(e)] = c.conjugate()
        return Series(self.vars, self.trunc, out)

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- division --------------------------------------------------------------

    def reciprocal(self) -> "Series":
        """Multiplicative inverse at truncation; requires a unit (nonzero
        constant term)."""
        c0 = self.constant_term()
        if c0.is_zero():
            raise UnitRequiredError(
                "reciprocal requires a nonzero constant term")
        inv0 = GaussRational(1) / c0
        one = Series.const(1, self.vars, self.trunc)
        u = one - self * inv0       # min degree >= 1
        acc = one
        powu = one
        for _ in range(self.trunc):
            powu = powu * u
            if powu.is_zero():
                break
            acc = acc + powu
        return acc * inv0

    def divide_by_power(self, name: str, m: int) -> "Series":
        """Exact division by ``name**m``; every term must be divisible."""
        if m < 0:
            raise ValueError("power must be nonnegative")
        if m == 0:
            return self
        i = self._vidx(name)
        out = {}
        for exps, c in self.terms.items():
            if exps[i] < m:
                raise DivisibilityError(
                    f"monomial {self._monomial_str(exps)} not divisible by {name}^{m}",
                    monomial=exps)
            out[exps[:i] + (exps[i] - m,) + exps[i + 1:]] = c
        return Series(self.vars, self.trunc - m, out)

    def divide_unit_form(self, b: "Series", unit_var: str = "s") -> "Series":
        """Exact division a/b where b factors as unit_var^k * (unit).

        Raises UnitRequiredError when b has no such factorization and
        DivisibilityError when a is not divisible by unit_var^k.
        """
        self._compat(b)
        if b.is_zero():
            raise UnitRequiredError("division by the zero series")
        k = b.min_degree_in(unit_var)
        bred = b.divide_by_power(unit_var, k)
        if bred.constant_term().is_zero():
            raise UnitRequiredError(
                f"divisor is not of the form {unit_var}^k * unit")
        ared = self.divide_by_power(unit_var, k)
        return ared * bred.reciprocal()

    # -- substitution -----------------------------------------------------------

    def subs(self, mapping: Mapping[str, "Series"]) -> "Series":
        """Substitute series for variables.

        Every variable actually occurring with positive exponent must be
        mapped; each image must have zero constant term so that the result
        is well-defined at truncation.  All images must share one variable
        tuple, which becomes the result's variable tuple.
        """
        used = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e > 0:
                    used.add(self.vars[i])
        missing = sorted(used - set(mapping))
        if missing:
            raise ValueError(f"no substitution supplied for {missing}")
        if mapping:
            target_vars = next(iter(mapping.values())).vars
        else:
            target_vars = self.vars
        trunc = self.trunc
        for name in used:
            img = mapping[name]
            if img.vars != target_vars:
                raise ValueError("substitution images over mixed variable tuples")
            if not img.constant_term().is_zero():
                raise ValueError(
                    f"substitution image for {name!r} has nonzero constant term")
            trunc = min(trunc, img.trunc)
        zero = Series.zero(target_vars, trunc)
        one = Series.const(1, target_vars, trunc)
        powers: Dict[str, list] = {name: [one] for name in used}
        result = zero
        for exps, c in self.terms.items():
            mono = one * c
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                name = self.vars[i]
                plist = powers[name]
                while len(plist) <= e:
                    plist.append(plist[-1] * mapping[name])
                mono = mono * plist[e]
                if mono.is_zero():
                    break
            result = result + mono
        return result

    # -- evaluation --------------------------------------------------------------

    def eval_complex(self, values: Mapping[str, complex]) -> complex:
        """Floating-point evaluation (for the numeric oracle only)."""
        total = 0j
        for exps, c in self.terms.items():
            v = complex(c)
            for i, e in enumerate(exps):
                if e:
                    v *= values[self.vars[i]] ** e
            total += v
        return total

    # -- formatting ---------------------------------------------------------------

    def _monomial_str(self, exps: Exponents) -> str:
        parts = []
        for name, e in zip(self.vars, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def to_literal(self) -> str:
        """Canonical literal: terms ordered by (total degree, exponents)."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        out = []
        for exps, c in items:
            mono = self._monomial_str(exps)
            sign = "+"
            if c.im == 0 and c.re < 0:
                sign, c = "-", -c
            elif c.re == 0 and c.im < 0:
                sign, c = "-", -c
            cs = format_coefficient(c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"<Series {self.to_literal()} + O(deg {self.trunc + 1})>"


def hypersurface_vars(n: int) -> Tuple[str, ...]:
    """Variable tuple (z1..zn, c1..cn, s) used for hypersurface series."""
    return tuple(f"z{i}" for i in range(1, n + 1)) + \
        tuple(f"c{i}" for i in range(1, n + 1)) + ("s",)


def implicit_solve(G: Series, unknown: str) -> Series:
    """Unique series solution t(params) with t(0)=0 of t = G(params, t).

    Requires G(0)=0 and dG/d(unknown)(0)=0 so that fixed-point iteration
    t <- G(params, t) is a contraction on truncated series; it stabilizes
    after at most ``trunc`` iterations.  The unknown variable keeps its slot
    (with zero exponent) in the result.
    """
    if not G.constant_term().is_zero():
        raise NotAContractionError("equation has a constant term")
    dG = G.diff(unknown)
    if not dG.constant_term().is_zero():
        raise NotAContractionError(
            f"d/d{unknown} at 0 is {dG.constant_term()}, must vanish")
    ident = {name: Series.variable(name, G.vars, G.trunc)
             for name in G.vars if name != unknown}
    t = Series.zero(G.vars, G.trunc)
    for _ in range(G.trunc + 1):
        nxt = G.subs({**ident, unknown: t})
        nxt = nxt.truncate(G.trunc)
        if nxt == t:
            break
        t = nxt
    else:
        raise NotAContractionError("fixed-point iteration failed to stabilize")
    # back-substitution safety check
    resid = G.subs({**ident, unknown: t}) - t
    if not resid.is_zero():
        raise NotAContractionError("inconsistent implicit equation")
    return t
