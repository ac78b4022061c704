"""Chevalley-Eilenberg cohomology H^n(g, R) with trivial coefficients.

Cochains in degree k are alternating k-linear forms, identified with
coefficient vectors on the wedge basis {e_T : T a strictly increasing index
tuple}, ordered lexicographically.  The trivial-coefficient differential is

    (d w)(x_0, ..., x_k) =
        sum_{i<j} (-1)^{i+j} w([x_i, x_j], x_0, ..., ^x_i, ..., ^x_j, ..., x_k)

and d_{k+1} d_k = 0 exactly.  Everything is computed over Q, so the reported
dimensions are the real-coefficient Betti numbers of the algebra.

A 2-cocycle w yields the central extension g + R z with
[x, y]_new = [x, y] + w(x, y) z; the Jacobi identity of the extension is
equivalent to d_2 w = 0, and both directions are exercised by the tests.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .exactmat import RationalMatrix
from .liealg import LieAlgebra, LieElement, StructureConstantError

__all__ = [
    "CEComplex",
    "LieCocycle2",
    "ce_differential",
    "lie_cohomology_dim",
    "lie_central_extension",
    "splitting_cochain",
    "cohomology_report",
]

_LARGE_COCHAIN_SPACE = 100_000


def _wedge_basis(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def ce_differential(g: LieAlgebra, k: int) -> RationalMatrix:
    """Matrix of d_k from degree-k to degree-(k+1) cochains, in the
    lexicographic wedge bases: shape C(n, k+1) x C(n, k)."""
    n = g.dim
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range 0..{n}")
    if comb(n, k) > _LARGE_COCHAIN_SPACE or comb(n, k + 1) > _LARGE_COCHAIN_SPACE:
        warnings.warn(
            f"wedge space in degree {k} has {comb(n, k)} basis cochains; "
            "expect high memory use", RuntimeWarning)
    source = _wedge_basis(n, k)
    target = _wedge_basis(n, k + 1)
    col_index = {t: i for i, t in enumerate(source)}
    zero = Fraction(0)
    rows = [[zero] * len(source) for _ in range(len(target))]
    for r, tup in enumerate(target):
        for i in range(len(tup)):
            for j in range(i + 1, len(tup)):
                sign = -1 if (i + j) % 2 else 1
                vec = g.bracket_vector(tup[i], tup[j])
                rest = tup[:i] + tup[i + 1:j] + tup[j + 1:]
                rest_set = set(rest)
                for m in range(n):
                    coef = vec[m]
                    if not coef or m in rest_set:
                        continue
                    pos = sum(1 for x in rest if x < m)
                    argsign = -1 if pos % 2 else 1
                    stup = tuple(sorted(rest + (m,)))
                    rows[r][col_index[stup]] += sign * argsign * coef
    return RationalMatrix(len(target), len(source), tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class CEComplex:
    """Differentials d_0 ... d_max of the wedge cochain complex of one algebra."""

    algebra: LieAlgebra
    differentials: tuple[RationalMatrix, ...]

    @classmethod
    def build(cls, g: LieAlgebra, up_to: int = 3) -> "CEComplex":
        top = min(up_to, g.dim)
        return cls(g, tuple(ce_differential(g, k) for k in range(top + 1)))

    def cochain_dim(self, k: int) -> int:
        return comb(self.algebra.dim, k)

    def differential(self, k: int) -> RationalMatrix:
        if k < len(self.differentials):
            return self.differentials[k]
        return ce_differential(self.algebra, k)

    def verify_d_squared(self) -> bool:
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                return False
        return True


def lie_cohomology_dim(g: LieAlgebra, k: int) -> int:
    """dim H^k(g, R) = dim ker d_k - rank d_{k-1}."""
    n = g.dim
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range 0..{n}")
    dk = ce_differential(g, k)
    kernel_dim = dk.cols - dk.rank()
    if k == 0:
        return kernel_dim
    prev_rank = ce_differential(g, k - 1).rank()
    return kernel_dim - prev_rank


def cohomology_report(g: LieAlgebra, k: int) -> dict:
    dk = ce_differential(g, k)
    dim_z = dk.cols - dk.rank()
    dim_b = ce_differential(g, k - 1).rank() if k > 0 else 0
    return {
        "algebra": g.name or "custom",
        "degree": k,
        "dim_Z": dim_z,
        "dim_B": dim_b,
        "dim_H": dim_z - dim_b,
    }


@dataclass(frozen=True)
class LieCocycle2:
    """Antisymmetric bilinear form on the algebra, given on basis pairs i < j."""

    algebra: LieAlgebra
    coeffs: tuple[Fraction, ...]  # lexicographic Lambda^2 coordinates

    @classmethod
    def from_pairs(cls, g: LieAlgebra, pairs: dict) -> "LieCocycle2":
        basis = _wedge_basis(g.dim, 2)
        index = {t: i for i, t in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for (i, j), val in pairs.items():
            if i == j:
                if Fraction(val):
                    raise ValueError("an alternating form vanishes on equal arguments")
                continue
            if i < j:
                vec[index[(i, j)]] += Fraction(val)
            else:
                vec[index[(j, i)]] -= Fraction(val)
        return cls(g, tuple(vec))

    @classmethod
    def zero(cls, g: LieAlgebra) -> "LieCocycle2":
        return cls(g, tuple(Fraction(0) for _ in range(comb(g.dim, 2))))

    def value(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        basis = _wedge_basis(self.algebra.dim, 2)
        index = {t: k for k, t in enumerate(basis)}
        return self.coeffs[index[(i, j)]] if i < j else -self.coeffs[index[(j, i)]]

    def evaluate(self, x: LieElement, y: LieElement) -> Fraction:
        total = Fraction(0)
        for idx, (i, j) in enumerate(_wedge_basis(self.algebra.dim, 2)):
            c = self.coeffs[idx]
            if c:
                total += c * (x.coeffs[i] * y.coeffs[j] - x.coeffs[j] * y.coeffs[i])
        return total

    def closure_defect(self) -> tuple[int, int, int] | None:
        """First basis triple violating d_2 w = 0, or None when closed."""
        d2 = ce_differential(self.algebra, 2)
        image = d2.apply(self.coeffs)
        triples = _wedge_basis(self.algebra.dim, 3)
        for idx, val in enumerate(image):
            if val:
                return triples[idx]
        return None

    def is_closed(self) -> bool:
        return self.closure_defect() is None


def lie_central_extension(g: LieAlgebra, omega: LieCocycle2,
                          central_label: str = "Z", validate: bool = True) -> LieAlgebra:
    """Algebra of dimension dim(g) + 1 with [x, y] += omega(x, y) * z, z central.

    A non-closed omega is rejected with the violating basis triple; building
    anyway (validate=False) produces a table whose Jacobi defect is nonzero,
    since the cocycle condition and the Jacobi identity are the same linear
    constraints.
    """
    if omega.algebra is not g:
        raise ValueError("cocycle belongs to a different algebra")
    if validate:
        bad = omega.closure_defect()
        if bad is not None:
            i, j, k = bad
            raise StructureConstantError(
                "2-cochain is not closed: d2 fails at basis triple "
                f"({g.labels[i]}, {g.labels[j]}, {g.labels[k]})", bad)
    n = g.dim
    label = central_label
    while label in g.labels:
        label += "'"
    zero = Fraction(0)
    c = [[[zero] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            vec = g.constants[i][j]
            for k in range(n):
                c[i][j][k] = vec[k]
            c[i][j][n] = omega.value(i, j)
    return LieAlgebra.from_structure_constants(
        tuple(g.labels) + (label,), c,
        name=(g.name + "+R" if g.name else "central extension"),
        validate=validate)


def splitting_cochain(g: LieAlgebra, omega: LieCocycle2):
    """Linear form phi with d_1 phi = omega, or None when omega is not exact.

    Existence for every closed omega is the computational content of
    H^2(g, R) = 0; the returned phi splits the central extension through the
    change of basis x -> x - phi(x) z.
    """
    d1 = ce_differential(g, 1)
    sol = d1.solve(list(omega.coeffs))
    return sol
