"""
The weighted function space and its reproducing kernel
======================================================

Functions live in the Gaussian-weighted space with parameter alpha: an
entire function f belongs to it when e^{-alpha|z|^2/2} f(z) is square
integrable. Point evaluation is represented by the kernel
K(z, zeta) = e^{alpha conj(zeta) z}, and everything downstream
(sampling, frames, interpolation) is built from inner products against
kernel translates.
"""

import numpy as np

from fockspace import (
    FockFunction,
    concentration_radius,
    eval_weighted,
    inner,
    kernel,
    norm2,
    translate,
)

alpha = 1.0

# A function given by coefficients in the orthonormal monomial basis
# e_n(z) = sqrt(alpha^n / n!) z^n.
rng = np.random.default_rng(0)
coeffs = rng.standard_normal(10) + 1j * rng.standard_normal(10)
f = FockFunction.monomial(alpha, coeffs)
print("monomial function with", len(coeffs), "coefficients")
print("  norm:", norm2(f))
print("  coefficient l2 norm (should match):", np.linalg.norm(coeffs))

# The reproducing property: pairing f against the kernel at zeta
# evaluates f there. eval_weighted returns e^{-alpha|z|^2/2} f(z), the
# quantity that stays bounded at large |z|.
zeta = 1.3 - 0.7j
k_zeta = FockFunction.kernel_combo(alpha, [zeta], [1.0])
lhs = inner(f, k_zeta)
rhs = eval_weighted(f, zeta) * np.exp(alpha * abs(zeta) ** 2 / 2)
print("reproducing property at", zeta)
print("  <f, K_zeta> =", lhs)
print("  f(zeta)     =", rhs)
print("  difference  =", abs(lhs - rhs))

# The kernel's own norm comes from evaluating it at its node.
print("kernel norm identity at zeta:")
print("  ||K_zeta||^2 =", norm2(k_zeta) ** 2)
print("  K(zeta,zeta) =", kernel(alpha, zeta, zeta).real)

# Translation is an isometry: the weighted shape moves rigidly.
g = FockFunction.kernel_combo(alpha, [0.0j, 1.0 + 0.5j], [1.0, -0.5j])
shift = -2.0 + 1.0j
print("translation isometry:")
print("  ||g||   =", norm2(g))
print("  ||T_a g|| =", norm2(translate(g, shift)))

# Weighted mass concentrates on a disk whose radius grows with the
# degree; this is what makes finite windows meaningful.
for n in (4, 16, 64):
    e_n = FockFunction.monomial(alpha, [0.0] * n + [1.0])
    print(f"concentration radius of e_{n}:", concentration_radius(e_n))
