"""Minkowski wedges, their boost one-parameter groups, and the Lie-algebra
generators those boosts sweep out.

The standard wedge is W1 = {x in R^4 : |x_0| < x_1}, metric diag(+,-,-,-).
Its boosts act on the (x_0, x_1) coordinates through

    [ cosh 2 pi t   -sinh 2 pi t ]
    [ -sinh 2 pi t   cosh 2 pi t ]

and leave x_2, x_3 alone; boosts of any other wedge W = g W1 are defined by
conjugation, Lambda_W(t) = g Lambda_{W1}(t) g^{-1}.  Differentiating at t = 0
gives an element of the Poincare algebra carrying one overall factor 2 pi;
for W1 it is exactly 2 pi J_01 in the conventions of `liealg`.  Generators of
wedges with exact (rational) defining elements are computed exactly -- the
2 pi stays symbolic via sympy -- and feed `liealg.generated_subalgebra`,
which normalizes each generator to a rational direction (closures are
scale-invariant).

Boost matrices accept either numeric parameters (numpy output) or sympy
expressions (exact output; cosh^2 - sinh^2 = 1 keeps the quadratic form
invariant symbolically).

The causal complement W' is the rotation-by-pi image of W in the x_1 x_2
plane; it satisfies Lambda_{W'}(t) = Lambda_W(-t) exactly.  Wedge equality is
decided by reducing the defining element modulo the stabilizer of W1: the
linear part must permute the two boundary covectors of W1 up to positive
scale, and the translation part must lie in the edge plane {x_0 = x_1 = 0}.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
import sympy as sp

from .liealg import LieAlgebra, LieElement, builtin, generated_subalgebra

__all__ = [
    "METRIC_SIGNS",
    "PoincareElement",
    "Wedge",
    "boost_matrix",
    "wedge_boost",
    "wedge_boost_generator",
    "wedge_complement",
    "six_wedge_family",
    "coordinate_wedge_family",
    "boost_generation_check",
    "poincare4_algebra",
    "minkowski_form",
]

METRIC_SIGNS = (1, -1, -1, -1)

_POINCARE4: LieAlgebra | None = None


def poincare4_algebra() -> LieAlgebra:
    """The shared poincare(4) instance that wedge-boost generators live in."""
    global _POINCARE4
    if _POINCARE4 is None:
        _POINCARE4 = builtin("poincare(4)")
    return _POINCARE4


def minkowski_form(x: Sequence, y: Sequence):
    return sum(s * a * b for s, a, b in zip(METRIC_SIGNS, x, y))


def _entry_kind(values) -> str:
    kinds = set()
    for v in values:
        if isinstance(v, (Fraction, int)):
            kinds.add("exact")
        elif isinstance(v, sp.Expr):
            kinds.add("symbolic")
        else:
            kinds.add("float")
    if kinds <= {"exact"}:
        return "exact"
    if "symbolic" in kinds:
        return "symbolic"
    return "float"


@dataclass(frozen=True)
class PoincareElement:
    """Affine map x -> Lambda x + a with Lambda proper orthochronous Lorentz.

    Entries may be exact (Fraction/int), sympy expressions, or floats;
    validation dispatches accordingly.
    """

    lorentz: tuple[tuple, ...]
    translation: tuple

    @classmethod
    def from_parts(cls, lorentz, translation=(0, 0, 0, 0)) -> "PoincareElement":
        mat = tuple(tuple(_coerce(v) for v in row) for row in lorentz)
        vec = tuple(_coerce(v) for v in translation)
        if len(mat) != 4 or any(len(r) != 4 for r in mat) or len(vec) != 4:
            raise ValueError("a Poincare element is a 4x4 matrix and a 4-vector")
        return cls(mat, vec)

    @classmethod
    def identity(cls) -> "PoincareElement":
        return cls.from_parts(tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def translation_by(cls, vec) -> "PoincareElement":
        return cls.from_parts(
            tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)), vec)

    @classmethod
    def plane_rotation_pi(cls, i: int, j: int) -> "PoincareElement":
        """Rotation by pi in the x_i x_j plane (spatial indices)."""
        if not (1 <= i < j <= 3):
            raise ValueError("rotation plane must use two spatial axes")
        mat = [[1 if a == b else 0 for b in range(4)] for a in range(4)]
        mat[i][i] = -1
        mat[j][j] = -1
        return cls.from_parts(mat)

    @classmethod
    def axis_swap_rotation(cls, j: int) -> "PoincareElement":
        """Quarter turn taking e_1 to e_j (j spatial); identity for j = 1."""
        if j == 1:
            return cls.identity()
        if j not in (2, 3):
            raise ValueError("target axis must be spatial")
        mat = [[1 if a == b else 0 for b in range(4)] for a in range(4)]
        mat[1][1] = 0
        mat[j][j] = 0
        mat[j][1] = 1
        mat[1][j] = -1
        return cls.from_parts(mat)

    @property
    def kind(self) -> str:
        flat = [v for row in self.lorentz for v in row] + list(self.translation)
        return _entry_kind(flat)

    def is_exact(self) -> bool:
        return self.kind == "exact"

    def compose(self, other: "PoincareElement") -> "PoincareElement":
        """(self o other)(x) = self(other(x))."""
        l1, l2 = self.lorentz, other.lorentz
        mat = tuple(tuple(sum(l1[i][k] * l2[k][j] for k in range(4)) for j in range(4))
                    for i in range(4))
        vec = tuple(sum(l1[i][k] * other.translation[k] for k in range(4))
                    + self.translation[i] for i in range(4))
        return PoincareElement(mat, vec)

    def inverse(self) -> "PoincareElement":
        inv = _invert4(self.lorentz)
        vec = tuple(-sum(inv[i][k] * self.translation[k] for k in range(4)) for i in range(4))
        return PoincareElement(inv, vec)

    def apply(self, x: Sequence):
        return tuple(sum(self.lorentz[i][k] * x[k] for k in range(4))
                     + self.translation[i] for i in range(4))

    def validate(self, tol: float = 1e-10) -> None:
        """Metric preservation, det = +1, orthochronous."""
        kind = self.kind
        g = METRIC_SIGNS
        for i in range(4):
            for j in range(4):
                s = sum(g[k] * self.lorentz[k][i] * self.lorentz[k][j] for k in range(4))
                target = g[i] if i == j else 0
                _assert_zero(s - target, kind, tol,
                             f"metric preservation fails at ({i}, {j})")
        det = _det4(self.lorentz)
        _assert_zero(det - 1, kind, tol, "determinant is not +1 (improper)")
        t00 = self.lorentz[0][0]
        if kind == "float":
            if not t00 >= 1 - tol:
                raise ValueError("time orientation reversed (Lambda_00 < 1)")
        elif kind == "exact":
            if not t00 >= 1:
                raise ValueError("time orientation reversed (Lambda_00 < 1)")
        else:
            if sp.simplify(t00 >= 1) == False:  # noqa: E712  (sympy ternary logic)
                raise ValueError("time orientation reversed (Lambda_00 < 1)")


def _coerce(v):
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, sp.Expr):
        return sp.nsimplify(v) if v.is_number and v.is_rational else v
    return float(v)


def _assert_zero(expr, kind: str, tol: float, message: str) -> None:
    if kind == "exact":
        ok = expr == 0
    elif kind == "symbolic":
        ok = sp.simplify(expr) == 0
    else:
        ok = abs(expr) <= tol
    if not ok:
        raise ValueError(message)


def _det4(mat) -> object:
    rows = [list(r) for r in mat]
    if _entry_kind([v for r in rows for v in r]) == "symbolic":
        return sp.Matrix(rows).det()
    det = 1
    for c in range(4):
        piv = next((r for r in range(c, 4) if rows[r][c]), None)
        if piv is None:
            return 0 * rows[0][0]
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = 1 / rows[c][c] if isinstance(rows[c][c], Fraction) else rows[c][c] ** -1
        for r in range(c + 1, 4):
            f = rows[r][c] * inv
            rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


def _invert4(mat):
    kind = _entry_kind([v for r in mat for v in r])
    if kind == "symbolic":
        inv = sp.Matrix([list(r) for r in mat]).inv()
        return tuple(tuple(sp.simplify(inv[i, j]) for j in range(4)) for i in range(4))
    if kind == "float":
        inv = np.linalg.inv(np.array(mat, dtype=float))
        return tuple(tuple(float(inv[i, j]) for j in range(4)) for i in range(4))
    # exact Gauss-Jordan
    a = [list(map(Fraction, r)) + [Fraction(1 if i == j else 0) for j in range(4)]
         for i, r in enumerate(mat)]
    for c in range(4):
        piv = next(r for r in range(c, 4) if a[r][c])
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(4):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(tuple(a[i][4 + j] for j in range(4)) for i in range(4))


# ---------------------------------------------------------------------------
# boosts


def boost_matrix(t):
    """The W1 boost at parameter t: cosh/sinh(2 pi t) block on (x_0, x_1).

    Numeric t gives a float numpy array; a sympy expression gives an exact
    sympy Matrix.
    """
    if isinstance(t, sp.Expr) and not t.is_Float:
        ch, sh = sp.cosh(2 * sp.pi * t), sp.sinh(2 * sp.pi * t)
        m = sp.eye(4)
        m[0, 0] = ch
        m[0, 1] = -sh
        m[1, 0] = -sh
        m[1, 1] = ch
        return m
    ch, sh = np.cosh(2 * np.pi * float(t)), np.sinh(2 * np.pi * float(t))
    m = np.eye(4)
    m[0, 0] = ch
    m[0, 1] = -sh
    m[1, 0] = -sh
    m[1, 1] = ch
    return m


# ---------------------------------------------------------------------------
# wedges


@dataclass(frozen=True)
class Wedge:
    """A Poincare image g W1 of the standard wedge, carried by g."""

    frame: PoincareElement

    @classmethod
    def standard(cls) -> "Wedge":
        return cls(PoincareElement.identity())

    @classmethod
    def coordinate(cls, axis: int) -> "Wedge":
        """The wedge {|x_0| < x_axis} for a spatial axis 1, 2, 3."""
        return cls(PoincareElement.axis_swap_rotation(axis))

    @classmethod
    def from_frame(cls, lorentz, translation=(0, 0, 0, 0)) -> "Wedge":
        g = PoincareElement.from_parts(lorentz, translation)
        g.validate()
        return cls(g)

    def translate(self, vec) -> "Wedge":
        return Wedge(PoincareElement.translation_by(vec).compose(self.frame))

    def transform(self, g: PoincareElement) -> "Wedge":
        return Wedge(g.compose(self.frame))

    def contains(self, x: Sequence, margin: float = 0.0) -> bool:
        y = self.frame.inverse().apply(x)
        y0, y1 = float(y[0]), float(y[1])
        return abs(y0) < y1 - margin

    def sample_points(self, count: int = 8, seed: int = 0) -> list[tuple]:
        """Interior points, mapped from a seeded sample of W1."""
        rng = np.random.default_rng(seed)
        pts = []
        for _ in range(count):
            x1 = 0.2 + 2.0 * rng.random()
            x0 = (2.0 * rng.random() - 1.0) * 0.9 * x1
            x2, x3 = rng.standard_normal(2)
            pts.append(self.frame.apply((x0, x1, float(x2), float(x3))))
        return pts

    def __eq__(self, other) -> bool:
        if not isinstance(other, Wedge):
            return NotImplemented
        h = other.frame.inverse().compose(self.frame)
        return _stabilizes_standard_wedge(h)

    def __hash__(self):
        return 0  # wedges with distinct frames may still be equal


# boundary covectors of W1: u.x > 0 for both is exactly x in W1
_U_PLUS = (-1, 1, 0, 0)
_U_MINUS = (1, 1, 0, 0)


def _stabilizes_standard_wedge(h: PoincareElement, tol: float = 1e-9) -> bool:
    kind = h.kind
    if kind == "symbolic":
        raise ValueError("wedge comparison needs numeric or exact frames")

    def iszero(v):
        return v == 0 if kind == "exact" else abs(v) <= tol

    # translation must lie in the edge plane {x_0 = x_1 = 0}
    if not (iszero(h.translation[0]) and iszero(h.translation[1])):
        return False
    inv = _invert4(h.lorentz)

    def pullback(u):
        return tuple(sum(u[k] * inv[k][j] for k in range(4)) for j in range(4))

    def positive_multiple(v, u):
        # v == lambda * u with lambda > 0?
        lam = None
        for a, b in zip(v, u):
            if iszero(b):
                if not iszero(a):
                    return False
            else:
                cand = a / b
                if lam is None:
                    lam = cand
                elif not iszero(cand - lam):
                    return False
        if lam is None:
            return False
        return lam > 0 if kind == "exact" else lam > tol

    w_plus, w_minus = pullback(_U_PLUS), pullback(_U_MINUS)
    straight = positive_multiple(w_plus, _U_PLUS) and positive_multiple(w_minus, _U_MINUS)
    swapped = positive_multiple(w_plus, _U_MINUS) and positive_multiple(w_minus, _U_PLUS)
    return straight or swapped


def wedge_boost(w: Wedge, t) -> PoincareElement:
    """Lambda_W(t) = g Lambda_{W1}(t) g^{-1} for W = g W1."""
    m = boost_matrix(t)
    if isinstance(m, np.ndarray):
        boost = PoincareElement.from_parts(
            tuple(tuple(float(m[i, j]) for j in range(4)) for i in range(4)))
    else:
        boost = PoincareElement.from_parts(
            tuple(tuple(m[i, j] for j in range(4)) for i in range(4)))
    return w.frame.compose(boost).compose(w.frame.inverse())


# vector representation of the Lorentz generators: J_{ab} e_s = eta_{bs} e_a - eta_{as} e_b
def _j_vector_matrix(a: int, b: int) -> tuple[tuple[Fraction, ...], ...]:
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for s in range(4):
        if s == b:
            m[a][s] += Fraction(METRIC_SIGNS[b])
        if s == a:
            m[b][s] -= Fraction(METRIC_SIGNS[a])
    return tuple(tuple(r) for r in m)


def wedge_boost_generator(w: Wedge) -> LieElement:
    """d/dt at 0 of t -> Lambda_W(t), as an element of poincare(4).

    For the standard wedge this is 2 pi J_01; in general it is 2 pi times a
    rational combination of the basis, computed exactly when the defining
    element is exact (the sympy factor 2*pi stays symbolic).  A float frame
    falls back to numeric coefficients with a warning.
    """
    alg = poincare4_algebra()
    frame = w.frame
    exact = frame.is_exact()
    if not exact:
        warnings.warn("wedge frame is not exact; generator computed numerically",
                      RuntimeWarning)
    j01 = _j_vector_matrix(0, 1)
    lam = frame.lorentz
    lam_inv = _invert4(lam)
    # N = Lambda J01 Lambda^{-1}; translation part -N a (both up to 2 pi)
    n = [[sum(lam[i][k] * j01[k][m] * lam_inv[m][j] for k in range(4) for m in range(4))
          for j in range(4)] for i in range(4)]
    c = [-sum(n[i][k] * frame.translation[k] for k in range(4)) for i in range(4)]
    pairs = list(combinations(range(4), 2))
    coeffs = []
    for a, b in pairs:
        coeffs.append(n[a][b] / METRIC_SIGNS[b])
    coeffs.extend(c)
    # defensive: the decomposition must reproduce N (N lies in so(1,3))
    recon = [[sum(coeffs[idx] * _j_vector_matrix(a, b)[i][j]
                  for idx, (a, b) in enumerate(pairs)) for j in range(4)] for i in range(4)]
    for i in range(4):
        for j in range(4):
            diff = recon[i][j] - n[i][j]
            if (diff != 0) if exact else (abs(diff) > 1e-9):
                raise RuntimeError("conjugated boost generator left the Lorentz algebra")
    if exact:
        two_pi = 2 * sp.pi
        sym = tuple(two_pi * sp.Rational(f.numerator, f.denominator) for f in map(Fraction, coeffs))
        return LieElement(alg, sym)
    return LieElement(alg, tuple(2 * np.pi * float(x) for x in coeffs))


def wedge_complement(w: Wedge) -> "Wedge":
    """The causal complement W' = (g R) W1 with R the x_1 x_2 rotation by pi;
    satisfies Lambda_{W'}(t) = Lambda_W(-t) and (W')' = W."""
    return Wedge(w.frame.compose(PoincareElement.plane_rotation_pi(1, 2)))


# ---------------------------------------------------------------------------
# the boost-generation check


def coordinate_wedge_family() -> list[Wedge]:
    return [Wedge.coordinate(axis) for axis in (1, 2, 3)]


def six_wedge_family() -> list[Wedge]:
    """Three coordinate wedges plus their translates by the unit timelike
    vector; their boost generators span the full Poincare algebra."""
    base = coordinate_wedge_family()
    return base + [w.translate((1, 0, 0, 0)) for w in base]


def boost_generation_check(wedges: Sequence[Wedge] | None = None) -> dict:
    """Closure dimension of the boost generators of a wedge family inside
    poincare(4); success means the full 10-dimensional algebra."""
    family = list(wedges) if wedges is not None else six_wedge_family()
    alg = poincare4_algebra()
    gens = [wedge_boost_generator(w) for w in family]
    span = generated_subalgebra(alg, gens)
    return {
        "wedge_count": len(family),
        "closure_dim": span.dim,
        "algebra_dim": alg.dim,
        "success": span.dim == alg.dim,
    }
