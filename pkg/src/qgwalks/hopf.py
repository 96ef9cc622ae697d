"""C*-Hopf algebra structure on a block algebra.

A quantum group bundles a block structure with a comultiplication (stored as
a sparse d^2 x d matrix over the canonical basis), a counit, an antipode and
the Haar weights.  Both convolution products live here: the one on
functionals, (phi1 (x) phi2) o Delta, and its density-level counterpart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    BlockStructure,
    Functional,
    HaarWeights,
    StructureMismatch,
    basis_element,
    star,
    unit,
)


class HopfAxiomError(ValueError):
    """Construction input fails a Hopf-algebra axiom."""


@dataclass(frozen=True)
class TensorElement:
    """An element of the tensor square, coefficients as a d x d matrix."""

    structure: BlockStructure
    coeffs: np.ndarray

    def __post_init__(self):
        d = self.structure.dim
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (d, d):
            raise ValueError(f"expected {d}x{d} tensor coefficients")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return TensorElement(self.structure, self.coeffs - other.coeffs)


def transpose_permutation(structure: BlockStructure) -> np.ndarray:
    """Index permutation sending each matrix unit E_rs to E_sr."""
    perm = np.empty(structure.dim, dtype=int)
    for b, m in enumerate(structure.blocks):
        for r in range(m):
            for s in range(m):
                perm[structure.unit_index(b, r, s)] = structure.unit_index(b, s, r)
    return perm


def multiplication_matrix(structure: BlockStructure) -> sp.csr_matrix:
    """Sparse d x d^2 matrix of the product map e_i (x) e_j -> e_i e_j."""
    d = structure.dim
    rows, cols = [], []
    for b, m in enumerate(structure.blocks):
        for r in range(m):
            for s in range(m):
                for t in range(m):
                    i = structure.unit_index(b, r, s)
                    j = structure.unit_index(b, s, t)
                    rows.append(structure.unit_index(b, r, t))
                    cols.append(i * d + j)
    data = np.ones(len(rows))
    return sp.csr_matrix((data, (rows, cols)), shape=(d, d * d))


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    """Componentwise product (a (x) b)(c (x) d) = ac (x) bd."""
    s = x.structure
    out = np.zeros((s.dim, s.dim), dtype=complex)
    o = s.offsets
    for b, mb in enumerate(s.blocks):
        for c, mc in enumerate(s.blocks):
            xb = x.coeffs[o[b]:o[b + 1], o[c]:o[c + 1]].reshape(mb, mb, mc, mc)
            yb = y.coeffs[o[b]:o[b + 1], o[c]:o[c + 1]].reshape(mb, mb, mc, mc)
            zb = np.einsum("ikjl,kmln->imjn", xb, yb)
            out[o[b]:o[b + 1], o[c]:o[c + 1]] = zb.reshape(mb * mb, mc * mc)
    return TensorElement(s, out)


def tensor_star(x: TensorElement) -> TensorElement:
    """(f (x) g)* = f* (x) g*: conjugate transpose in each leg."""
    perm = transpose_permutation(x.structure)
    return TensorElement(x.structure, np.conj(x.coeffs)[np.ix_(perm, perm)])


def tensor_of(a: AlgebraElement, b: AlgebraElement) -> TensorElement:
    return TensorElement(a.structure, np.outer(a.coeffs, b.coeffs))


@dataclass(frozen=True)
class HopfReport:
    """Max residual per axiom; passes iff every residual is below tol."""

    residuals: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(v < self.tol for v in self.residuals.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.residuals.items() if v >= self.tol]

    def __str__(self):
        width = max(len(k) for k in self.residuals)
        lines = [
            f"  {k:<{width}}  {v:.3e}  {'ok' if v < self.tol else 'FAIL'}"
            for k, v in self.residuals.items()
        ]
        verdict = "pass" if self.passed else "FAIL: " + ", ".join(self.failures)
        return "\n".join(lines + [f"  => {verdict} (tol={self.tol:g})"])


class QuantumGroup:
    """A finite quantum group: block algebra + Delta, epsilon, S, Haar.

    delta is a sparse (d^2, d) matrix whose column k holds the coefficients
    of Delta(e_k) in the basis {e_i (x) e_j}, flat index i*d + j.
    antipode is the d x d matrix of S in the canonical basis.

    Instances are immutable after construction and safe to share.
    """

    def __init__(self, structure: BlockStructure, delta, epsilon: Functional,
                 antipode: np.ndarray, haar: HaarWeights, *,
                 validate_convolution: bool = True, name: str = ""):
        d = structure.dim
        delta = sp.csc_matrix(delta, dtype=complex)
        if delta.shape != (d * d, d):
            raise ValueError(f"delta must have shape ({d * d}, {d})")
        antipode = np.asarray(antipode, dtype=complex)
        if antipode.shape != (d, d):
            raise ValueError(f"antipode must have shape ({d}, {d})")
        if epsilon.structure != structure or haar.structure != structure:
            raise StructureMismatch("epsilon/haar structure mismatch")
        self.structure = structure
        self.delta = delta
        self.epsilon = epsilon
        self.antipode_matrix = antipode
        self.haar = haar
        self.name = name
        self._tperm = transpose_permutation(structure)
        self._haar_vec = haar.as_functional().coeffs
        self.unit = unit(structure)
        if validate_convolution:
            self._validate_density_convolution()

    @property
    def dim(self) -> int:
        return self.structure.dim

    # -- basic structure maps -------------------------------------------------

    def comultiply(self, a: AlgebraElement) -> TensorElement:
        if a.structure != self.structure:
            raise StructureMismatch("element not in this quantum group")
        d = self.dim
        return TensorElement(self.structure, (self.delta @ a.coeffs).reshape(d, d))

    def counit(self, a: AlgebraElement) -> complex:
        return self.epsilon(a)

    def antipode(self, a: AlgebraElement) -> AlgebraElement:
        if a.structure != self.structure:
            raise StructureMismatch("element not in this quantum group")
        return AlgebraElement(self.structure, self.antipode_matrix @ a.coeffs)

    def star_functional(self, phi: Functional) -> Functional:
        """Dual involution phi*(a) = conj(phi(S(a)*))."""
        # phi*_k = sum_p S[p, k] conj(phi_{transpose(p)})
        return Functional(
            self.structure,
            self.antipode_matrix.T @ np.conj(phi.coeffs[self._tperm]))

    # -- Haar, densities ------------------------------------------------------

    def haar_state(self) -> Functional:
        return self.haar.as_functional()

    def density_of(self, phi: Functional) -> AlgebraElement:
        """Solve integral(a_phi . e_k) = phi(e_k) for the density a_phi.

        The Gram matrix of the basis under (a, b) -> integral(a b) is a
        weighted transposition, so the solve is a permute-and-scale.
        """
        if phi.structure != self.structure:
            raise StructureMismatch("functional not on this quantum group")
        w = self._unit_weights()
        return AlgebraElement(self.structure, phi.coeffs[self._tperm] / w)

    def functional_of(self, a: AlgebraElement) -> Functional:
        """Inverse of density_of: phi(e_k) = integral(a . e_k)."""
        w = self._unit_weights()
        return Functional(self.structure, (a.coeffs * w)[self._tperm])

    def _unit_weights(self) -> np.ndarray:
        """w_b repeated over the matrix units of block b."""
        s = self.structure
        return np.repeat(self.haar.weights,
                         [m * m for m in s.blocks]).astype(float)

    def dual_haar(self, phi: Functional) -> complex:
        """The dual Haar functional: counit of the density."""
        return self.epsilon(self.density_of(phi))

    # -- convolutions ---------------------------------------------------------

    def convolve(self, nu: Functional, mu: Functional) -> Functional:
        """(nu star mu) = (nu (x) mu) o Delta."""
        if nu.structure != self.structure or mu.structure != self.structure:
            raise StructureMismatch("functionals not on this quantum group")
        return Functional(self.structure,
                          self.delta.T @ np.kron(nu.coeffs, mu.coeffs))

    def transfer_matrix(self, nu: Functional) -> np.ndarray:
        """Matrix of mu -> nu star mu on dual coefficient vectors."""
        row = sp.csr_matrix(nu.coeffs.reshape(1, -1))
        left = sp.kron(row, sp.identity(self.dim, format="csr"))
        return np.asarray((left @ self.delta).todense()).T

    def convolve_densities(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """a conv b = (integral (x) I)(((S (x) I) Delta(b)) (a (x) 1))."""
        if a.structure != self.structure or b.structure != self.structure:
            raise StructureMismatch("elements not in this quantum group")
        t = self.comultiply(b)
        t = TensorElement(self.structure, self.antipode_matrix @ t.coeffs)
        t = tensor_mul(t, tensor_of(a, self.unit))
        return AlgebraElement(self.structure, self._haar_vec @ t.coeffs)

    def _validate_density_convolution(self, n_pairs: int = 3, seed: int = 20160307):
        """Guard the operand order of the density convolution formula."""
        rng = np.random.default_rng(seed)
        d = self.dim
        for _ in range(n_pairs):
            p1 = Functional(self.structure, rng.normal(size=d) + 1j * rng.normal(size=d))
            p2 = Functional(self.structure, rng.normal(size=d) + 1j * rng.normal(size=d))
            lhs = self.density_of(self.convolve(p1, p2))
            rhs = self.convolve_densities(self.density_of(p1), self.density_of(p2))
            err = np.abs(lhs.coeffs - rhs.coeffs).max()
            if err > 1e-8:
                swapped = self.convolve_densities(self.density_of(p2), self.density_of(p1))
                err_sw = np.abs(lhs.coeffs - swapped.coeffs).max()
                hint = ("holds with swapped operands; convention conflict"
                        if err_sw < 1e-8 else "fails in both operand orders")
                raise HopfAxiomError(
                    f"density convolution identity violated (residual {err:.2e}; {hint})")

    # -- verification ---------------------------------------------------------

    def verify_hopf(self, tol: float = DEFAULT_TOL, n_random: int = 10,
                    seed: int = 20160307) -> HopfReport:
        """Residuals for every Hopf axiom; linear identities are checked on
        the full basis, multiplicativity on seeded random elements."""
        d = self.dim
        s = self.structure
        delta = self.delta
        eye = sp.identity(d, format="csr")
        eps_row = sp.csr_matrix(self.epsilon.coeffs.reshape(1, -1))
        one = self.unit.coeffs
        res = {}

        def maxabs(m):
            if sp.issparse(m):
                return float(np.abs(m.todense()).max()) if m.nnz else 0.0
            return float(np.abs(m).max())

        res["coassociativity"] = maxabs(
            sp.kron(delta, eye) @ delta - sp.kron(eye, delta) @ delta)
        res["counit_left"] = maxabs(sp.kron(eps_row, eye) @ delta - eye)
        res["counit_right"] = maxabs(sp.kron(eye, eps_row) @ delta - eye)

        mmat = multiplication_matrix(s)
        smat = sp.csr_matrix(self.antipode_matrix)
        target = np.outer(one, self.epsilon.coeffs)
        res["antipode_left"] = maxabs(
            np.asarray((mmat @ sp.kron(smat, eye) @ delta).todense()) - target)
        res["antipode_right"] = maxabs(
            np.asarray((mmat @ sp.kron(eye, smat) @ delta).todense()) - target)

        res["delta_unital"] = maxabs(delta @ one - np.kron(one, one))
        res["antipode_involutive"] = maxabs(
            self.antipode_matrix @ self.antipode_matrix - np.eye(d))

        # S commutes with the involution (finite Kac case)
        tperm = self._tperm
        lhs = np.conj(self.antipode_matrix)[np.ix_(tperm, tperm)]
        res["antipode_star"] = maxabs(lhs - self.antipode_matrix)

        hrow = sp.csr_matrix(self._haar_vec.reshape(1, -1))
        htarget = np.outer(one, self._haar_vec)
        res["haar_right_invariance"] = maxabs(
            np.asarray((sp.kron(eye, hrow) @ delta).todense()) - htarget)
        res["haar_left_invariance"] = maxabs(
            np.asarray((sp.kron(hrow, eye) @ delta).todense()) - htarget)

        rng = np.random.default_rng(seed)

        def rand_elt():
            return AlgebraElement(s, rng.normal(size=d) + 1j * rng.normal(size=d))

        hom = star_hom = anti = eps_hom = 0.0
        for _ in range(n_random):
            a, b = rand_elt(), rand_elt()
            scale = max(np.abs(a.coeffs).max() * np.abs(b.coeffs).max(), 1.0)
            hom = max(hom, maxabs(
                (self.comultiply(a * b)
                 - tensor_mul(self.comultiply(a), self.comultiply(b))).coeffs) / scale)
            star_hom = max(star_hom, maxabs(
                (self.comultiply(star(a)) - tensor_star(self.comultiply(a))).coeffs))
            anti = max(anti, maxabs(
                (self.antipode(a * b) - self.antipode(b) * self.antipode(a)).coeffs) / scale)
            eps_hom = max(eps_hom, abs(
                self.counit(a * b) - self.counit(a) * self.counit(b)) / scale)
        res["delta_multiplicative"] = hom
        res["delta_star"] = star_hom
        res["antipode_antimultiplicative"] = anti
        res["counit_multiplicative"] = eps_hom
        return HopfReport(res, tol)

    def is_cocommutative(self, tol: float = DEFAULT_TOL) -> bool:
        """flip o Delta == Delta."""
        d = self.dim
        dd = np.asarray(self.delta.todense()).reshape(d, d, d)
        return bool(np.abs(dd - dd.transpose(1, 0, 2)).max() < tol)

    def is_commutative(self, tol: float = DEFAULT_TOL) -> bool:
        return all(m == 1 for m in self.structure.blocks)


def solve_haar(structure: BlockStructure, delta, one_coeffs=None,
               tol: float = 1e-8) -> HaarWeights:
    """Solve the invariance equations for the Haar functional.

    Finds h with (I (x) h)Delta(a) = h(a) 1 = (h (x) I)Delta(a) and h(1) = 1,
    then checks h has the weighted-trace form with positive weights.
    """
    d = structure.dim
    if one_coeffs is None:
        one_coeffs = unit(structure).coeffs
    dd = np.asarray(sp.csc_matrix(delta).todense()).reshape(d, d, d)
    # right invariance rows: sum_j Delta[i,j,k] h_j - one_i h_k = 0
    right = dd.transpose(0, 2, 1).reshape(d * d, d).copy()
    right -= np.einsum("i,jk->ijk", one_coeffs, np.eye(d)).reshape(d * d, d)
    # left invariance rows: sum_i Delta[i,j,k] h_i - one_j h_k = 0
    left = dd.transpose(1, 2, 0).reshape(d * d, d).copy()
    left -= np.einsum("j,ik->jik", one_coeffs, np.eye(d)).reshape(d * d, d)
    system = np.vstack([right, left])
    _, sing, vh = np.linalg.svd(system, full_matrices=False)
    null_dim = int(np.sum(sing < tol * max(sing[0], 1.0)))
    if null_dim != 1:
        raise HopfAxiomError(
            f"Haar solution space has dimension {null_dim}, expected 1 "
            "(input is not a quantum group)")
    h = vh[-1].conj()
    norm = h @ one_coeffs
    if abs(norm) < 1e-12:
        raise HopfAxiomError("Haar candidate vanishes on the unit")
    h = h / norm

    # extract block weights and check the weighted-trace form
    weights = np.empty(len(structure.blocks))
    resid = 0.0
    for b, m in enumerate(structure.blocks):
        block = h[structure.offsets[b]:structure.offsets[b + 1]].reshape(m, m)
        w = float(np.real(np.trace(block))) / m
        weights[b] = w
        resid = max(resid, float(np.abs(block - w * np.eye(m)).max()))
    if resid > tol:
        raise HopfAxiomError(
            f"Haar solution is not of weighted-trace form (residual {resid:.2e})")
    if np.any(weights <= 0):
        raise HopfAxiomError("Haar solution is not positive/faithful")
    return HaarWeights(structure, weights)


def power_state(Q: QuantumGroup, nu: Functional, k: int) -> Functional:
    """k-fold convolution power; k = 0 returns the counit."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Q.epsilon
    if k == 1:
        return nu
    T = Q.transfer_matrix(nu)
    return Functional(Q.structure,
                      np.linalg.matrix_power(T, k - 1) @ nu.coeffs)


def is_state(Q: QuantumGroup, phi: Functional, tol: float = DEFAULT_TOL) -> bool:
    """Positive density integrating to one."""
    from .algebra import integrate, is_positive
    a = Q.density_of(phi)
    return is_positive(a, tol) and abs(integrate(a, Q.haar) - 1) < max(tol, 1e-8)
