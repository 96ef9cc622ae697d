"""Corepresentations, Peter-Weyl orthogonality and Fourier transforms.

A corepresentation is a square matrix of algebra elements rho_ij satisfying
Delta(rho_ij) = sum_k rho_ik (x) rho_kj and eps(rho_ij) = delta_ij.  The
Fourier transform of a functional phi at a corepresentation is the matrix
with entries phi(rho_ij*), i.e. the transform at the conjugate coaction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    Functional,
    integrate,
    mul,
    star,
    zero,
)
from .hopf import QuantumGroup, tensor_of


@dataclass(frozen=True)
class Corepresentation:
    """A d x d matrix of algebra elements."""

    rho: tuple  # tuple of tuples of AlgebraElement
    name: str = ""

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rho)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("corepresentation matrix must be square")
        object.__setattr__(self, "rho", rows)

    @property
    def dim(self) -> int:
        return len(self.rho)

    @property
    def structure(self):
        return self.rho[0][0].structure

    def __getitem__(self, ij):
        i, j = ij
        return self.rho[i][j]


def trivial_corep(Q: QuantumGroup) -> Corepresentation:
    return Corepresentation(((Q.unit,),), name="trivial")


def is_trivial(Q: QuantumGroup, kappa: Corepresentation,
               tol: float = DEFAULT_TOL) -> bool:
    return (kappa.dim == 1
            and np.abs(kappa[0, 0].coeffs - Q.unit.coeffs).max() < tol)


def check_corep(Q: QuantumGroup, kappa: Corepresentation,
                tol: float = DEFAULT_TOL) -> dict:
    """Residuals of the coaction and counit axioms."""
    n = kappa.dim
    coaction = 0.0
    counit = 0.0
    for i in range(n):
        for j in range(n):
            lhs = Q.comultiply(kappa[i, j]).coeffs
            rhs = sum(tensor_of(kappa[i, k], kappa[k, j]).coeffs for k in range(n))
            coaction = max(coaction, float(np.abs(lhs - rhs).max()))
            counit = max(counit, abs(Q.counit(kappa[i, j]) - (1.0 if i == j else 0.0)))
    return {"coaction": coaction, "counit": counit,
            "passed": coaction < tol and counit < tol}


def check_unitary(Q: QuantumGroup, kappa: Corepresentation,
                  tol: float = DEFAULT_TOL) -> bool:
    """sum_k rho_ki* rho_kj = delta_ij 1 and sum_k rho_ik rho_jk* = delta_ij 1."""
    n = kappa.dim
    one = Q.unit.coeffs
    for i in range(n):
        for j in range(n):
            target = one if i == j else 0.0
            col = sum(mul(star(kappa[k, i]), kappa[k, j]).coeffs for k in range(n))
            row = sum(mul(kappa[i, k], star(kappa[j, k])).coeffs for k in range(n))
            if np.abs(col - target).max() > tol or np.abs(row - target).max() > tol:
                return False
    return True


def conjugate(kappa: Corepresentation) -> Corepresentation:
    """Entrywise star; the conjugate coaction on the conjugate space."""
    return Corepresentation(
        tuple(tuple(star(kappa[i, j]) for j in range(kappa.dim))
              for i in range(kappa.dim)),
        name=f"conj({kappa.name})" if kappa.name else "")


def fourier(Q: QuantumGroup, phi: Functional,
            kappa: Corepresentation) -> np.ndarray:
    """Fourier matrix of phi at kappa: entry (i, j) = phi(rho_ij*)."""
    n = kappa.dim
    return np.array([[phi(star(kappa[i, j])) for j in range(n)]
                     for i in range(n)], dtype=complex)


def peter_weyl_check(Q: QuantumGroup, irreps, tol: float = 1e-9) -> dict:
    """Orthogonality of all matrix elements under <a,b> = integral(a* b).

    The Gram matrix must be diagonal with entry 1/d_alpha on each matrix
    element of alpha; completeness requires sum d_alpha^2 = dim.
    """
    elements = []
    inv_dims = []
    for kappa in irreps:
        for i in range(kappa.dim):
            for j in range(kappa.dim):
                elements.append(kappa[i, j])
                inv_dims.append(1.0 / kappa.dim)
    count = len(elements)
    complete = count == Q.dim
    gram = np.empty((count, count), dtype=complex)
    for p, a in enumerate(elements):
        sa = star(a)
        for q, b in enumerate(elements):
            gram[p, q] = integrate(mul(sa, b), Q.haar)
    residual = float(np.abs(gram - np.diag(inv_dims)).max())
    report = {
        "gram_residual": residual,
        "sum_d_squared": count,
        "dim": Q.dim,
        "complete": complete,
        "passed": complete and residual < tol,
    }
    if not complete:
        report["error"] = "incomplete irrep list"
    return report


def inversion_check(Q: QuantumGroup, phi: Functional, irreps):
    """Both sides of eps(a_phi) = sum_alpha d_alpha Tr(phi-hat(alpha))."""
    lhs = Q.dual_haar(phi)
    rhs = sum(kappa.dim * np.trace(fourier(Q, phi, kappa)) for kappa in irreps)
    return lhs, complex(rhs)


def convolution_theorem_check(Q: QuantumGroup, phi1: Functional,
                              phi2: Functional, kappa: Corepresentation):
    """Fourier of the convolution vs product of Fourier matrices."""
    lhs = fourier(Q, Q.convolve(phi1, phi2), kappa)
    rhs = fourier(Q, phi1, kappa) @ fourier(Q, phi2, kappa)
    return lhs, rhs
