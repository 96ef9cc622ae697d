"""Finite-dimensional C*-algebras as direct sums of complex matrix blocks.

Elements are stored as flat coefficient vectors over the canonical basis of
matrix units: block-major, then row-major within each block.  A tracial
weighted-trace functional (one positive weight per block) supplies the
integral used for p-norms and positivity tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9


class StructureMismatch(ValueError):
    """Operands belong to different block structures."""


@dataclass(frozen=True)
class BlockStructure:
    """Ordered matrix block sizes m_1..m_B; total dimension d = sum m_b^2."""

    blocks: tuple[int, ...]
    offsets: tuple[int, ...] = field(init=False, repr=False)
    dim: int = field(init=False)

    def __post_init__(self):
        blocks = tuple(int(m) for m in self.blocks)
        if not blocks or any(m < 1 for m in blocks):
            raise ValueError("block sizes must be positive integers")
        offs = np.concatenate([[0], np.cumsum([m * m for m in blocks])])
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "offsets", tuple(int(o) for o in offs))
        object.__setattr__(self, "dim", int(offs[-1]))

    def unit_index(self, b: int, r: int, s: int) -> int:
        """Flat index of the matrix unit E_{rs} in block b (0-based)."""
        m = self.blocks[b]
        return self.offsets[b] + r * m + s

    def split(self, coeffs: np.ndarray) -> list[np.ndarray]:
        """Flat coefficient vector -> list of m_b x m_b matrices."""
        return [
            coeffs[self.offsets[b]:self.offsets[b + 1]].reshape(m, m)
            for b, m in enumerate(self.blocks)
        ]

    def join(self, mats) -> np.ndarray:
        """List of m_b x m_b matrices -> flat coefficient vector."""
        return np.concatenate([np.asarray(mat, dtype=complex).ravel() for mat in mats])


def _check_same(a, b):
    if a.structure != b.structure:
        raise StructureMismatch("operands have different block structures")


@dataclass(frozen=True)
class AlgebraElement:
    """An element of the block algebra, i.e. a function on the quantum group."""

    structure: BlockStructure
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.structure.dim,):
            raise ValueError(f"expected {self.structure.dim} coefficients, got {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def block(self, b: int) -> np.ndarray:
        o = self.structure.offsets
        m = self.structure.blocks[b]
        return self.coeffs[o[b]:o[b + 1]].reshape(m, m)

    def blocks(self) -> list[np.ndarray]:
        return self.structure.split(self.coeffs)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(self.structure, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(self.structure, self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return AlgebraElement(self.structure, complex(other) * self.coeffs)

    def __rmul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.structure, complex(scalar) * self.coeffs)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.structure, -self.coeffs)


@dataclass(frozen=True)
class Functional:
    """A linear functional in the dual basis: phi(basis_k) = coeffs[k]."""

    structure: BlockStructure
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.structure.dim,):
            raise ValueError(f"expected {self.structure.dim} coefficients, got {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def __call__(self, a: AlgebraElement) -> complex:
        _check_same(self, a)
        return complex(self.coeffs @ a.coeffs)

    def __add__(self, other: "Functional") -> "Functional":
        _check_same(self, other)
        return Functional(self.structure, self.coeffs + other.coeffs)

    def __sub__(self, other: "Functional") -> "Functional":
        _check_same(self, other)
        return Functional(self.structure, self.coeffs - other.coeffs)

    def __rmul__(self, scalar) -> "Functional":
        return Functional(self.structure, complex(scalar) * self.coeffs)


@dataclass(frozen=True)
class HaarWeights:
    """Positive weight per block; integral(a) = sum_b w_b Tr(a_b)."""

    structure: BlockStructure
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.structure.blocks),):
            raise ValueError("one weight per block required")
        if np.any(w <= 0):
            raise ValueError("Haar weights must be strictly positive (faithfulness)")
        total = float(w @ np.array(self.structure.blocks))
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"Haar weights not normalized: integral of unit = {total}")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def as_functional(self) -> Functional:
        """The integral as a dual vector: w_b on diagonal units, 0 elsewhere."""
        s = self.structure
        c = np.zeros(s.dim, dtype=complex)
        for b, m in enumerate(s.blocks):
            for r in range(m):
                c[s.unit_index(b, r, r)] = self.weights[b]
        return Functional(s, c)


def unit(structure: BlockStructure) -> AlgebraElement:
    """The multiplicative identity: identity matrix in every block."""
    return AlgebraElement(structure, structure.join(
        [np.eye(m) for m in structure.blocks]))


def zero(structure: BlockStructure) -> AlgebraElement:
    return AlgebraElement(structure, np.zeros(structure.dim, dtype=complex))


def basis_element(structure: BlockStructure, k: int) -> AlgebraElement:
    c = np.zeros(structure.dim, dtype=complex)
    c[k] = 1.0
    return AlgebraElement(structure, c)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Blockwise matrix product."""
    _check_same(a, b)
    s = a.structure
    return AlgebraElement(s, s.join([x @ y for x, y in zip(a.blocks(), b.blocks())]))


def star(a: AlgebraElement) -> AlgebraElement:
    """Involution: blockwise conjugate transpose."""
    s = a.structure
    return AlgebraElement(s, s.join([x.conj().T for x in a.blocks()]))


def integrate(a: AlgebraElement, h: HaarWeights) -> complex:
    """Weighted trace sum_b w_b Tr(a_b); tracial and faithful."""
    if a.structure != h.structure:
        raise StructureMismatch("element and weights have different structures")
    return complex(sum(w * np.trace(x) for w, x in zip(h.weights, a.blocks())))


def norm_p(a: AlgebraElement, h: HaarWeights, p) -> float:
    """Noncommutative p-norm for p in {1, 2, inf}.

    p=1 is the Haar-weighted trace norm (sum of singular values per block),
    p=2 the GNS norm sqrt(integral(a* a)), p=inf the operator norm.
    """
    blocks = a.blocks()
    if p == 1:
        return float(sum(
            w * np.linalg.svd(x, compute_uv=False).sum()
            for w, x in zip(h.weights, blocks)))
    if p == 2:
        return float(np.sqrt(sum(
            w * np.linalg.norm(x, "fro") ** 2 for w, x in zip(h.weights, blocks))))
    if p == np.inf or p == float("inf"):
        return float(max(np.linalg.norm(x, 2) for x in blocks))
    raise ValueError(f"p must be 1, 2 or inf, got {p!r}")


def is_positive(a: AlgebraElement, tol: float = DEFAULT_TOL) -> bool:
    """True iff every block is Hermitian within tol with min eigenvalue >= -tol."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    for x in a.blocks():
        if np.abs(x - x.conj().T).max() > tol:
            return False
        if np.linalg.eigvalsh((x + x.conj().T) / 2).min() < -tol:
            return False
    return True
