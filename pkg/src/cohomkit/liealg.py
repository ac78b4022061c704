"""Finite-dimensional Lie algebras over Q presented by structure constants.

An algebra is a table c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k,
validated for antisymmetry and the Jacobi identity on construction.  The
module provides the bracket-closure procedures the rest of the toolkit leans
on: the derived subalgebra, the subalgebra generated by a finite family, and
the ideal generated by a single element.

Sign and basis conventions for the relativistic builtins (fixed here once,
spelled out in CONVENTIONS.md):

* metric eta = diag(+1, -1, ..., -1);
* Lorentz generators J_{mu nu} for mu < nu, with
      [J_{ab}, J_{cd}] = eta_{bc} J_{ad} - eta_{ac} J_{bd}
                       - eta_{bd} J_{ac} + eta_{ad} J_{bc},
      [J_{ab}, P_c]    = eta_{bc} P_a  - eta_{ac} P_b,
      [P_a,  P_b]      = 0,
  where J_{xy} with x > y denotes -J_{yx};
* the physics boost generator K_i with [K_i, P_0] = P_i is J_{i0} = -J_{0i}
  in this basis.

Element coefficients are `fractions.Fraction` throughout; arithmetic helpers
tolerate sympy exact scalars (the wedge-boost generators carry an exact
2*pi factor) because subspace computations normalize every vector to a
rational direction first -- spans and bracket closures are invariant under
scaling a vector by a nonzero constant.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "LieAlgebra",
    "LieElement",
    "Subspace",
    "StructureConstantError",
    "bracket",
    "derived_subalgebra",
    "is_perfect",
    "generated_subalgebra",
    "ideal_closure",
    "jacobi_defect",
    "builtin",
    "algebra_to_json",
    "algebra_from_json",
]


class StructureConstantError(ValueError):
    """Raised when a structure-constant table fails validation.

    `triple` carries the offending basis indices: a pair for an
    antisymmetry violation, a triple for a Jacobi violation.
    """

    def __init__(self, message: str, triple: tuple[int, ...]):
        super().__init__(message)
        self.triple = triple


@dataclass(frozen=True)
class LieAlgebra:
    labels: tuple[str, ...]
    constants: tuple[tuple[tuple[Fraction, ...], ...], ...]
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_structure_constants(cls, labels: Sequence[str], constants,
                                 name: str = "", validate: bool = True) -> "LieAlgebra":
        n = len(labels)
        table = tuple(
            tuple(tuple(Fraction(constants[i][j][k]) for k in range(n)) for j in range(n))
            for i in range(n)
        )
        alg = cls(tuple(str(l) for l in labels), table, name)
        if validate:
            alg.validate()
        return alg

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: dict, name: str = "",
                      validate: bool = True) -> "LieAlgebra":
        """Build from a sparse {(i, j): {k: coeff}} table, i < j; the
        antisymmetric completion is filled in automatically."""
        n = len(labels)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            if i == j:
                raise ValueError("diagonal brackets are identically zero")
            for k, val in coeffs.items():
                c[i][j][k] = Fraction(val)
                c[j][i][k] = -Fraction(val)
        return cls.from_structure_constants(labels, c, name, validate)

    # -- element construction ------------------------------------------------

    def zero(self) -> "LieElement":
        return LieElement(self, tuple(Fraction(0) for _ in range(self.dim)))

    def basis_element(self, index: int) -> "LieElement":
        coeffs = [Fraction(0)] * self.dim
        coeffs[index] = Fraction(1)
        return LieElement(self, tuple(coeffs))

    def basis(self) -> list["LieElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coeffs) -> "LieElement":
        """Vector of coefficients, or {label: coeff} mapping."""
        if isinstance(coeffs, dict):
            vec = [Fraction(0)] * self.dim
            for label, val in coeffs.items():
                vec[self.labels.index(label)] = Fraction(val)
            return LieElement(self, tuple(vec))
        vec = tuple(_coerce_scalar(x) for x in coeffs)
        if len(vec) != self.dim:
            raise ValueError("coefficient vector length does not match dimension")
        return LieElement(self, vec)

    def by_label(self, label: str) -> "LieElement":
        return self.basis_element(self.labels.index(label))

    # -- validation ----------------------------------------------------------

    def bracket_vector(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.constants[i][j]

    def antisymmetry_defect(self) -> Fraction:
        worst = Fraction(0)
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    d = abs(self.constants[i][j][k] + self.constants[j][i][k])
                    if d > worst:
                        worst = d
        return worst

    def jacobi_defect(self) -> Fraction:
        """Max |coefficient| of [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]]
        over basis triples i < j < k; zero iff the table is a Lie algebra."""
        worst = Fraction(0)
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            s = self._jacobi_sum(i, j, k)
            m = max((abs(x) for x in s), default=Fraction(0))
            if m > worst:
                worst = m
        return worst

    def _jacobi_sum(self, i: int, j: int, k: int) -> tuple[Fraction, ...]:
        n = self.dim
        out = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.constants[b][c]
            for m in range(n):
                if inner[m]:
                    outer = self.constants[a][m]
                    coef = inner[m]
                    for t in range(n):
                        if outer[t]:
                            out[t] += coef * outer[t]
        return tuple(out)

    def first_jacobi_violation(self) -> tuple[int, int, int] | None:
        for i, j, k in combinations(range(self.dim), 3):
            if any(self._jacobi_sum(i, j, k)):
                return (i, j, k)
        return None

    def validate(self) -> None:
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    if self.constants[i][j][k] != -self.constants[j][i][k]:
                        raise StructureConstantError(
                            f"antisymmetry fails at basis pair "
                            f"({self.labels[i]}, {self.labels[j]})", (i, j))
        bad = self.first_jacobi_violation()
        if bad is not None:
            i, j, k = bad
            raise StructureConstantError(
                f"Jacobi identity fails at basis triple "
                f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})", bad)


def _coerce_scalar(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return x  # exact scalars from sympy pass through untouched


@dataclass(frozen=True)
class LieElement:
    algebra: LieAlgebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise ValueError("coefficient vector length does not match dimension")

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check_parent(other)
        return LieElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LieElement") -> "LieElement":
        self._check_parent(other)
        return LieElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar) -> "LieElement":
        s = _coerce_scalar(scalar)
        return LieElement(self.algebra, tuple(s * a for a in self.coeffs))

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((id(self.algebra), self.coeffs))

    def bracket(self, other: "LieElement") -> "LieElement":
        self._check_parent(other)
        n = self.algebra.dim
        out = [Fraction(0)] * n
        consts = self.algebra.constants
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                cij = consts[i][j]
                ab = a * b
                for k in range(n):
                    if cij[k]:
                        out[k] = out[k] + ab * cij[k]
        return LieElement(self.algebra, tuple(out))

    def _check_parent(self, other: "LieElement") -> None:
        if self.algebra is not other.algebra:
            raise ValueError("elements belong to different algebras")

    def __repr__(self):
        terms = [f"{c}*{l}" for c, l in zip(self.coeffs, self.algebra.labels) if c]
        return " + ".join(terms) if terms else "0"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return x.bracket(y)


def rational_direction(elem: LieElement) -> LieElement:
    """Scale an element by a nonzero constant so its coefficients are
    Fractions with leading coefficient 1.

    Subspace spans and bracket closures are invariant under this scaling,
    which is how exactly-known multiples of 2*pi (wedge-boost generators)
    enter the rational engine.
    """
    lead = next((c for c in elem.coeffs if c), None)
    if lead is None:
        return elem.algebra.zero()
    out = []
    for c in elem.coeffs:
        r = c / lead
        if isinstance(r, Fraction):
            out.append(r)
        elif isinstance(r, int):
            out.append(Fraction(r))
        else:
            out.append(_sympy_to_fraction(r))
    return LieElement(elem.algebra, tuple(out))


def _sympy_to_fraction(x) -> Fraction:
    import sympy

    r = sympy.nsimplify(sympy.simplify(x), rational=True)
    if not isinstance(r, sympy.Rational):
        raise ValueError(f"coefficient ratio {x!r} is not rational; "
                         "supply generators with exact coefficients")
    return Fraction(int(r.p), int(r.q))


class Subspace:
    """Subspace of a Lie algebra held as a reduced echelon basis.

    The internal basis is deterministic for a fixed insertion order, and two
    subspaces compare equal iff they contain each other's basis vectors.
    """

    def __init__(self, algebra: LieAlgebra, vectors: Iterable[LieElement] = ()):
        self.algebra = algebra
        self._rows: list[tuple[int, tuple[Fraction, ...]]] = []  # (pivot, vector)
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, elem: LieElement) -> bool:
        """Insert an element; returns True when the dimension grew."""
        if elem.algebra is not self.algebra:
            raise ValueError("element belongs to a different algebra")
        vec = list(rational_direction(elem).coeffs)
        for pivot, row in self._rows:
            if vec[pivot]:
                f = vec[pivot]
                vec = [a - f * b for a, b in zip(vec, row)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return False
        inv = 1 / vec[piv]
        vec = tuple(x * inv for x in vec)
        self._rows.append((piv, vec))
        self._rows.sort(key=lambda r: r[0])
        self._reduce_up()
        return True

    def _reduce_up(self):
        rows = self._rows
        for i in range(len(rows) - 1, -1, -1):
            piv, row = rows[i]
            for j in range(i):
                pj, rj = rows[j]
                if rj[piv]:
                    f = rj[piv]
                    rows[j] = (pj, tuple(a - f * b for a, b in zip(rj, row)))

    def contains(self, elem: LieElement) -> bool:
        vec = list(rational_direction(elem).coeffs)
        for pivot, row in self._rows:
            if vec[pivot]:
                f = vec[pivot]
                vec = [a - f * b for a, b in zip(vec, row)]
        return not any(vec)

    def basis(self) -> list[LieElement]:
        return [LieElement(self.algebra, row) for _, row in self._rows]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.algebra is other.algebra
                and self.contains_subspace(other) and other.contains_subspace(self))

    def is_bracket_closed(self) -> bool:
        b = self.basis()
        return all(self.contains(x.bracket(y)) for x in b for y in b)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.algebra.name or 'algebra'})"


# ---------------------------------------------------------------------------
# closure procedures


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    """Span of all brackets of basis pairs, [g, g]."""
    span = Subspace(g)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            vec = g.bracket_vector(i, j)
            if any(vec):
                span.add(LieElement(g, vec))
    return span


def is_perfect(g: LieAlgebra) -> bool:
    return derived_subalgebra(g).dim == g.dim


def generated_subalgebra(g: LieAlgebra, gens: Sequence[LieElement]) -> Subspace:
    """Smallest bracket-closed subspace containing the generators.

    Span-closure iteration: brackets of the current basis against the
    generators first, then against itself, repeated until the dimension
    stabilizes (at most dim(g) rounds).  Generators are normalized to
    rational directions, which leaves the closure unchanged.
    """
    if not gens:
        raise ValueError("generator list is empty")
    directions = [rational_direction(x) for x in gens]
    span = Subspace(g, directions)
    while True:
        before = span.dim
        current = span.basis()
        for a in current:
            for b in directions:
                span.add(a.bracket(b))
        current = span.basis()
        for i, a in enumerate(current):
            for b in current[i + 1:]:
                span.add(a.bracket(b))
        if span.dim == before:
            return span


def ideal_closure(g: LieAlgebra, x: LieElement) -> Subspace:
    """Smallest subspace containing x with [g, I] contained in I.

    Worklist closure: every spanning direction is bracketed against the whole
    basis of g exactly once, which suffices by linearity.
    """
    span = Subspace(g)
    pending: list[LieElement] = []
    if not x.is_zero() and span.add(x):
        pending.append(x)
    basis_g = g.basis()
    while pending:
        b = pending.pop()
        for e in basis_g:
            v = e.bracket(b)
            if span.add(v):
                pending.append(v)
                if span.dim == g.dim:
                    return span
    return span


def jacobi_defect(g: LieAlgebra) -> Fraction:
    return g.jacobi_defect()


# ---------------------------------------------------------------------------
# builtins


def _metric(mu: int) -> int:
    return 1 if mu == 0 else -1


def _lorentz_brackets(d: int, pair_index: dict[tuple[int, int], int], ntrans: int = 0):
    """Sparse bracket table for so(1, d-1), optionally extended by
    translations occupying indices len(pair_index)..+d-1."""
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    npairs = len(pair_index)

    def j_coeff(a: int, b: int) -> tuple[int, int] | None:
        # returns (index, sign) for J_{ab}; None when a == b
        if a == b:
            return None
        if a < b:
            return pair_index[(a, b)], 1
        return pair_index[(b, a)], -1

    pairs = sorted(pair_index, key=pair_index.get)
    for (a, b) in pairs:
        i = pair_index[(a, b)]
        for (c, dd) in pairs:
            j = pair_index[(c, dd)]
            if j <= i:
                continue
            acc: dict[int, Fraction] = {}
            for eta, target in ((_metric(b) if b == c else 0, (a, dd)),
                                (-(_metric(a)) if a == c else 0, (b, dd)),
                                (-(_metric(b)) if b == dd else 0, (a, c)),
                                (_metric(a) if a == dd else 0, (b, c))):
                if not eta:
                    continue
                jc = j_coeff(*target)
                if jc is None:
                    continue
                idx, sign = jc
                acc[idx] = acc.get(idx, Fraction(0)) + Fraction(eta * sign)
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                brackets[(i, j)] = acc
        if ntrans:
            for c in range(d):
                j = npairs + c
                acc = {}
                if b == c:
                    acc[npairs + a] = acc.get(npairs + a, Fraction(0)) + Fraction(_metric(b))
                if a == c:
                    acc[npairs + b] = acc.get(npairs + b, Fraction(0)) - Fraction(_metric(a))
                acc = {k: v for k, v in acc.items() if v}
                if acc:
                    brackets[(i, j)] = acc
    return brackets


def _lorentz(d: int, with_translations: bool) -> LieAlgebra:
    if d < 2:
        raise ValueError("spacetime dimension must be at least 2")
    pairs = list(combinations(range(d), 2))
    pair_index = {p: i for i, p in enumerate(pairs)}
    labels = [f"J_{a}{b}" for a, b in pairs]
    if with_translations:
        labels += [f"P_{mu}" for mu in range(d)]
        brackets = _lorentz_brackets(d, pair_index, ntrans=d)
        name = f"poincare({d})"
    else:
        brackets = _lorentz_brackets(d, pair_index)
        name = f"lorentz({d})"
    return LieAlgebra.from_brackets(labels, brackets, name=name)


_BUILTIN_RE = re.compile(r"^(abelian|poincare|lorentz)\(?(\d+)\)?$")


def builtin(name: str) -> LieAlgebra:
    """Named algebras: sl2, heisenberg, abelian(n), poincare(d), lorentz(d)
    with spacetime dimension d in {2, 3, 4}.  `poincare4` is accepted as a
    spelling of `poincare(4)`."""
    key = name.strip().lower().replace(" ", "")
    if key == "sl2":
        return LieAlgebra.from_brackets(
            ("h", "e", "f"),
            {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
            name="sl2",
        )
    if key == "heisenberg":
        return LieAlgebra.from_brackets(
            ("x", "y", "z"), {(0, 1): {2: 1}}, name="heisenberg")
    m = _BUILTIN_RE.match(key)
    if m:
        kind, num = m.group(1), int(m.group(2))
        if kind == "abelian":
            if num < 1:
                raise ValueError("abelian(n) needs n >= 1")
            return LieAlgebra.from_brackets(
                tuple(f"x{i+1}" for i in range(num)), {}, name=f"abelian({num})")
        if num not in (2, 3, 4):
            raise ValueError(f"{kind}(d) supports spacetime dimension d in {{2, 3, 4}}")
        return _lorentz(num, with_translations=(kind == "poincare"))
    raise ValueError(f"unknown algebra name: {name!r}")


# ---------------------------------------------------------------------------
# JSON structure-constant format


def _fraction_str(x: Fraction) -> str:
    return str(x)


def _parse_fraction(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    return Fraction(s)


def algebra_to_json(g: LieAlgebra) -> str:
    brackets = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            vec = g.bracket_vector(i, j)
            coeffs = {g.labels[k]: _fraction_str(vec[k]) for k in range(g.dim) if vec[k]}
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return json.dumps(
        {"dim": g.dim, "labels": list(g.labels), "brackets": brackets},
        sort_keys=True)


def algebra_from_json(text: str | dict, name: str = "", validate: bool = True) -> LieAlgebra:
    """Load {"dim": n, "labels": [...], "brackets": [{"i", "j", "coeffs"}]}.

    Coefficient keys may be labels or stringified basis indices; rationals are
    "p/q" strings.  Omitted brackets are zero and the antisymmetric completion
    is applied; giving both (i, j) and (j, i) inconsistently is an error.
    """
    obj = json.loads(text) if isinstance(text, str) else text
    n = int(obj["dim"])
    labels = [str(x) for x in obj.get("labels", [f"x{i+1}" for i in range(n)])]
    if len(labels) != n:
        raise ValueError("label count does not match dim")
    seen: dict[tuple[int, int], dict[int, Fraction]] = {}
    for item in obj.get("brackets", []):
        i, j = int(item["i"]), int(item["j"])
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"bracket index ({i}, {j}) out of range")
        coeffs: dict[int, Fraction] = {}
        for key, val in item.get("coeffs", {}).items():
            if isinstance(key, str) and not key.lstrip("-").isdigit():
                k = labels.index(key)
            else:
                k = int(key)
            coeffs[k] = _parse_fraction(val)
        a, b = (i, j) if i < j else (j, i)
        oriented = coeffs if i < j else {k: -v for k, v in coeffs.items()}
        if (a, b) in seen:
            if seen[(a, b)] != oriented:
                raise ValueError(f"inconsistent bracket given for pair ({a}, {b})")
        else:
            seen[(a, b)] = oriented
    return LieAlgebra.from_brackets(labels, seen, name=name, validate=validate)
