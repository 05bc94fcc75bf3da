"""
Hypersurface invariants, step by step
=====================================

Builds two hypersurfaces in normal coordinates Im w = phi(z, zbar, Re w)
and walks through the invariants the package computes: the vanishing
order m of phi in s = Re w, the lowest degree r of the leading slice,
essentiality of the coefficient ideal, and the nondegeneracy order ell.
"""

from crgeom import (Frame, compute_infinite_type, corpus, desingularize,
                    essentiality_check, filtration, full_report, levi_matrix,
                    nondegeneracy_ell)

TRUNC = 8

# --- the model surface: phi = s * |z|^2 ---------------------------------
m0 = corpus.model_surface(TRUNC)
print("model surface  phi =", m0.phi.to_literal())

rep = compute_infinite_type(m0)
print("  m   =", rep.m, "  (vanishing order of phi in s)")
print("  r   =", rep.r, "  (lowest degree of the s^m slice)")
print("  psi =", rep.psi.to_literal())

ess = essentiality_check(m0, 4)
print("  essentiality:", ess.status, "at degree", ess.bound)
ell = nondegeneracy_ell(m0, 4)
print("  nondegeneracy order ell =", ell.ell)

# the desingularized Levi matrix h0 = h / s^m and its origin value
fr = Frame(m0)
levi = desingularize(fr, levi_matrix(fr, rep.m), rep.m)
print("  h   =", levi.h[0][0].to_literal())
print("  h0  =", levi.h0[0][0].to_literal())
print("  h0(0) =", levi.h0[0][0].constant_term())

# --- a surface produced by an implicit solve ----------------------------
# phi is generated by solving t = xi*(s^2 + t^2) for t and composing with
# xi = arctan(z1*c1); the result has vanishing order 2 in s.
e12 = corpus.two_infinite_type_surface(TRUNC)
print()
print("implicit surface  phi =", e12.phi.to_literal())
rep12 = compute_infinite_type(e12)
print("  m =", rep12.m, " r =", rep12.r)

# --- filtration on a two-variable example -------------------------------
h2 = corpus.filtration_example_surface(TRUNC)
print()
print("two-variable surface  phi =", h2.phi.to_literal())
filt = filtration(Frame(h2), 1, 4)
print("  kernel ranks:", filt.ranks, " ell =", filt.ell,
      " nondegenerate =", filt.nondegenerate)

rep_all = full_report(m0)
print()
print("full report: m =", rep_all.m, " r =", rep_all.r,
      " essential =", rep_all.essential.status,
      " ell =", rep_all.ell.as_dict())
