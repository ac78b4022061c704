"""Finite-dimensional Tomita-Takesaki theory.

For a unital *-closed matrix algebra M on C^d with a cyclic separating unit
vector Omega, the closable antilinear map

    S : x Omega -> x* Omega,   x in M,

is here an honest antilinear operator on all of C^d (cyclic + separating
forces dim M = d).  Its polar decomposition S = J Delta^{1/2} yields the
modular operator Delta = S* S (positive, invertible) and the modular
conjugation J (antiunitary involution).  Tomita's theorem --
Delta^{it} M Delta^{-it} = M and J M J = M' -- and the finite-dimensional
KMS identity <Omega, x Delta y Omega> = <Omega, y x Omega> are verified
numerically by the defect functions below.

Antilinear operators are represented as (matrix, conjugation) pairs acting as
v -> U conj(v); with S = S_mat o conj one gets Delta = S_mat^T conj(S_mat)
and J = S_mat conj(Delta^{-1/2}) o conj.

Everything is double precision with explicit tolerances (1e-10 default);
polar decomposition is inherently numeric.  Dimensions stay small (d <= 16
in all shipped examples), so dense eigendecompositions are fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "MatrixAlgebra",
    "StateVector",
    "ModularTriple",
    "algebra_closure",
    "commutant",
    "is_cyclic",
    "is_separating",
    "separating_violation",
    "tomita",
    "modular_flow_defect",
    "kms_defect",
    "qubit_factor",
    "schmidt_state",
    "diagonal_algebra",
]

DEFAULT_TOL = 1e-10


def _as_matrix_list(mats) -> list[np.ndarray]:
    out = []
    for m in mats:
        a = np.asarray(m, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("generators must be square matrices")
        out.append(a)
    if not out:
        raise ValueError("generator list is empty")
    d = out[0].shape[0]
    if any(a.shape[0] != d for a in out):
        raise ValueError("generators act on different spaces")
    return out


@dataclass(frozen=True)
class StateVector:
    """Unit vector of C^d; the finite stand-in for a vacuum vector."""

    data: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.data, dtype=complex).reshape(-1)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError("state vector is not normalized to 1e-12")
        object.__setattr__(self, "data", v)

    @classmethod
    def normalized(cls, values) -> "StateVector":
        v = np.asarray(values, dtype=complex).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.data.shape[0]


def _as_state(omega) -> np.ndarray:
    if isinstance(omega, StateVector):
        return omega.data
    return StateVector(np.asarray(omega, dtype=complex)).data


class MatrixAlgebra:
    """Unital *-closed subalgebra of M_d(C), stored through a basis
    orthonormal under the trace pairing <a, b> = tr(a* b)."""

    def __init__(self, dim: int, basis: np.ndarray, tol: float = DEFAULT_TOL,
                 check: bool = True):
        self.dim = int(dim)
        self.basis = np.asarray(basis, dtype=complex)
        self.tol = float(tol)
        if self.basis.ndim != 3 or self.basis.shape[1:] != (self.dim, self.dim):
            raise ValueError("basis must be a stack of d x d matrices")
        if check:
            self._check_orthonormal()
            self.verify_closure()

    @property
    def size(self) -> int:
        """Linear dimension of the algebra."""
        return self.basis.shape[0]

    def _check_orthonormal(self):
        k = self.size
        gram = np.einsum("aij,bij->ab", self.basis.conj(), self.basis)
        if np.max(np.abs(gram - np.eye(k))) > 1e-8:
            raise ValueError("basis is not orthonormal under the trace pairing")

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("aij,ij->a", self.basis.conj(), np.asarray(x, dtype=complex))

    def project(self, x: np.ndarray) -> np.ndarray:
        c = self.coefficients(x)
        return np.einsum("a,aij->ij", c, self.basis)

    def distance(self, x: np.ndarray) -> float:
        """Frobenius distance from x to the algebra."""
        return float(np.linalg.norm(np.asarray(x, dtype=complex) - self.project(x)))

    def contains(self, x: np.ndarray, tol: float | None = None) -> bool:
        return self.distance(x) <= (self.tol if tol is None else tol)

    def verify_closure(self) -> None:
        """Unit, adjoints, and products of basis elements must stay inside."""
        eye = np.eye(self.dim)
        if self.distance(eye) > 1e-8:
            raise ValueError("algebra does not contain the identity")
        for a in self.basis:
            if self.distance(a.conj().T) > 1e-8:
                raise ValueError("algebra is not closed under adjoints")
        for a in self.basis:
            for b in self.basis:
                if self.distance(a @ b) > 1e-8:
                    raise ValueError("algebra is not closed under products")

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """Unit-Frobenius-norm element with Gaussian coefficients."""
        c = rng.standard_normal(self.size) + 1j * rng.standard_normal(self.size)
        x = np.einsum("a,aij->ij", c, self.basis)
        return x / np.linalg.norm(x)

    def contains_algebra(self, other: "MatrixAlgebra", tol: float | None = None) -> bool:
        return all(self.contains(b, tol) for b in other.basis)

    def equals(self, other: "MatrixAlgebra", tol: float | None = None) -> bool:
        return (self.size == other.size and self.contains_algebra(other, tol)
                and other.contains_algebra(self, tol))


def _orthonormalize(dim: int, mats: Sequence[np.ndarray], tol: float) -> np.ndarray:
    """Gram-Schmidt on vectorized matrices under the trace pairing."""
    basis: list[np.ndarray] = []
    for m in mats:
        v = m.astype(complex).copy()
        for b in basis:
            v -= np.einsum("ij,ij->", b.conj(), v) * b
        n = np.linalg.norm(v)
        if n > tol:
            basis.append(v / n)
    return np.stack(basis) if basis else np.zeros((0, dim, dim), dtype=complex)


def algebra_closure(generators, tol: float = DEFAULT_TOL) -> MatrixAlgebra:
    """Smallest unital *-closed algebra containing the generators.

    Span closure under adjoints and products; terminates because the
    dimension is bounded by d^2.
    """
    gens = _as_matrix_list(generators)
    d = gens[0].shape[0]
    seed = [np.eye(d, dtype=complex)]
    for g in gens:
        seed.append(g)
        seed.append(g.conj().T)
    basis = _orthonormalize(d, seed, 1e-12)
    while True:
        products = []
        for a in basis:
            for b in basis:
                products.append(a @ b)
        new_basis = _orthonormalize(d, list(basis) + products, 1e-12)
        if new_basis.shape[0] == basis.shape[0]:
            return MatrixAlgebra(d, new_basis, tol)
        basis = new_basis


def commutant(m: MatrixAlgebra) -> MatrixAlgebra:
    """M' = {x : [x, b] = 0 for all b in M}, from the null space of the
    stacked commutator operators on vec(x)."""
    d = m.dim
    eye = np.eye(d)
    gram = np.zeros((d * d, d * d), dtype=complex)
    for b in m.basis:
        op = np.kron(eye, b) - np.kron(b.T, eye)  # vec(b x - x b)
        gram += op.conj().T @ op
    vals, vecs = np.linalg.eigh(gram)
    scale = max(np.max(vals), 1.0)
    null = [vecs[:, i].reshape(d, d).T for i in range(d * d)
            if vals[i] <= 1e-12 * scale]
    # vec convention: vec(x)[i*d+j] = x[j, i]; transpose restores x
    basis = _orthonormalize(d, null, 1e-12)
    return MatrixAlgebra(d, basis, m.tol)


def is_cyclic(m: MatrixAlgebra, omega) -> bool:
    """{x Omega : x in M} spans C^d (numerical rank test)."""
    v = _as_state(omega)
    cols = np.stack([b @ v for b in m.basis], axis=1)
    return bool(np.linalg.matrix_rank(cols, tol=1e-10) == m.dim)


def separating_violation(m: MatrixAlgebra, omega) -> np.ndarray | None:
    """A nonzero x in M with x Omega = 0, or None when Omega separates M."""
    v = _as_state(omega)
    cols = np.stack([b @ v for b in m.basis], axis=1)  # d x k
    _, svals, vh = np.linalg.svd(cols)
    k = m.size
    if len(svals) < k or svals[-1] <= 1e-10:
        coef = vh[-1].conj()
        x = np.einsum("a,aij->ij", coef, m.basis)
        return x / np.linalg.norm(x)
    return None


def is_separating(m: MatrixAlgebra, omega) -> bool:
    """x Omega = 0 forces x = 0; checked directly and, independently, as
    cyclicity for the commutant.  The two answers must agree."""
    direct = separating_violation(m, omega) is None
    via_commutant = is_cyclic(commutant(m), omega)
    if direct != via_commutant:
        raise RuntimeError(
            "separating tests disagree (kernel test vs commutant cyclicity); "
            "the example is too ill-conditioned to trust")
    return direct


@dataclass(frozen=True)
class ModularTriple:
    """Modular data (S, Delta, J) of (M, Omega).

    `s_matrix` and `j_matrix` are the linear parts of the antilinear
    operators: S v = s_matrix conj(v), J v = j_matrix conj(v).
    `basis_conditioning` is the condition number of the frame {x_i Omega}
    that S was solved on; large values mean the defects below are limited
    by roundoff rather than by the theory.
    """

    omega: np.ndarray
    delta: np.ndarray
    j_matrix: np.ndarray
    s_matrix: np.ndarray
    eigenvalues: np.ndarray   # spectrum of Delta, ascending
    eigenvectors: np.ndarray  # unitary, columns matching `eigenvalues`
    basis_conditioning: float = 1.0

    @property
    def dim(self) -> int:
        return self.delta.shape[0]

    def apply_s(self, v: np.ndarray) -> np.ndarray:
        return self.s_matrix @ np.conj(v)

    def apply_j(self, v: np.ndarray) -> np.ndarray:
        return self.j_matrix @ np.conj(v)

    def conjugate_by_j(self, x: np.ndarray) -> np.ndarray:
        """J x J as a linear operator."""
        return self.j_matrix @ np.conj(x) @ np.conj(self.j_matrix)

    def delta_power(self, t: complex) -> np.ndarray:
        """Delta^t through the eigendecomposition; t = i s gives the
        modular unitaries."""
        powers = np.power(self.eigenvalues.astype(complex), t)
        return (self.eigenvectors * powers) @ self.eigenvectors.conj().T

    def validate(self, m: MatrixAlgebra, tol: float = DEFAULT_TOL) -> None:
        d = self.dim
        eye = np.eye(d)
        if np.linalg.norm(self.j_matrix @ np.conj(self.j_matrix) - eye) > tol:
            raise ValueError("J^2 != 1")
        jdj = self.j_matrix @ np.conj(self.delta) @ np.conj(self.j_matrix)
        if np.linalg.norm(jdj - np.linalg.inv(self.delta)) > tol:
            raise ValueError("J Delta J != Delta^{-1}")
        if np.linalg.norm(self.delta @ self.omega - self.omega) > tol:
            raise ValueError("Delta Omega != Omega")
        if np.linalg.norm(self.apply_j(self.omega) - self.omega) > tol:
            raise ValueError("J Omega != Omega")
        jd = self.j_matrix @ np.conj(_matrix_power_psd(self.delta, 0.5))
        if np.linalg.norm(jd - self.s_matrix) > tol:
            raise ValueError("S != J Delta^{1/2}")
        for b in m.basis:
            if np.linalg.norm(self.apply_s(b @ self.omega) - b.conj().T @ self.omega) > tol:
                raise ValueError("S x Omega != x* Omega on the algebra")


def _matrix_power_psd(a: np.ndarray, p: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(a)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.power(vals, p)) @ vecs.conj().T


def tomita(m: MatrixAlgebra, omega, tol: float = DEFAULT_TOL) -> ModularTriple:
    """Modular triple of (M, Omega); Omega must be cyclic and separating.

    With basis {b_i} and B = [b_1 Omega ... b_k Omega],
    C = [b_1* Omega ... b_k* Omega], the antilinear S has linear part
    C conj(B)^{-1}; Delta = S^T conj(S) and J = S conj(Delta^{-1/2}).
    """
    v = _as_state(omega)
    if v.shape[0] != m.dim:
        raise ValueError("state vector dimension does not match the algebra")
    if not is_cyclic(m, v):
        raise ValueError("state is not cyclic for the algebra")
    witness = separating_violation(m, v)
    if witness is not None:
        raise ValueError("state is not separating for the algebra; "
                         "an annihilating element exists")
    if m.size != m.dim:
        raise ValueError("cyclic + separating forces dim M = d; basis is inconsistent")
    b_cols = np.stack([b @ v for b in m.basis], axis=1)
    c_cols = np.stack([b.conj().T @ v for b in m.basis], axis=1)
    s_mat = c_cols @ np.conj(np.linalg.inv(b_cols))
    delta = s_mat.T @ np.conj(s_mat)
    delta = 0.5 * (delta + delta.conj().T)
    vals, vecs = np.linalg.eigh(delta)
    if np.min(vals) <= 0:
        raise ValueError("modular operator is not positive definite; "
                         "the state is numerically degenerate")
    inv_sqrt = (vecs * np.power(vals, -0.5)) @ vecs.conj().T
    j_mat = s_mat @ np.conj(inv_sqrt)
    triple = ModularTriple(v, delta, j_mat, s_mat, vals, vecs,
                           basis_conditioning=float(np.linalg.cond(b_cols)))
    triple.validate(m, tol=max(tol, 1e-10))
    return triple


def modular_flow_defect(triple: ModularTriple, m: MatrixAlgebra,
                        t_samples: Sequence[float]) -> float:
    """max over t and basis x of dist(Delta^{it} x Delta^{-it}, M);
    Tomita's theorem makes this vanish for a correct triple."""
    worst = 0.0
    for t in t_samples:
        u = triple.delta_power(1j * t)
        u_inv = triple.delta_power(-1j * t)
        for b in m.basis:
            worst = max(worst, m.distance(u @ b @ u_inv))
    return worst


def kms_defect(m: MatrixAlgebra, omega, samples: int = 100, seed: int = 0,
               triple: ModularTriple | None = None) -> float:
    """max |<Omega, x Delta y Omega> - <Omega, y x Omega>| over seeded random
    unit-norm pairs x, y in M."""
    v = _as_state(omega)
    if triple is None:
        triple = tomita(m, v)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = m.random_element(rng)
        y = m.random_element(rng)
        lhs = np.vdot(v, x @ triple.delta @ y @ v)
        rhs = np.vdot(v, y @ x @ v)
        worst = max(worst, abs(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# shipped examples


def qubit_factor() -> MatrixAlgebra:
    """M_2 tensor 1 on C^2 x C^2: the smallest factor with nonscalar
    commutant, the workhorse example."""
    eye2 = np.eye(2)
    gens = []
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[i, j] = 1.0
            gens.append(np.kron(e, eye2))
    return algebra_closure(gens)


def schmidt_state(p: float) -> StateVector:
    """sqrt(p) e1 x e1 + sqrt(1-p) e2 x e2 on C^4; cyclic and separating for
    M_2 x 1 whenever 0 < p < 1, tracial at p = 1/2."""
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    v = np.zeros(4, dtype=complex)
    v[0] = np.sqrt(p)      # e1 x e1
    v[3] = np.sqrt(1 - p)  # e2 x e2
    return StateVector(v)


def diagonal_algebra(d: int) -> MatrixAlgebra:
    """The maximal abelian algebra of diagonal matrices on C^d."""
    basis = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        basis[i, i, i] = 1.0
    return MatrixAlgebra(d, basis)
