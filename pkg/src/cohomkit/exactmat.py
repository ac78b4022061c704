"""Exact linear algebra over the rationals, prime fields, and the integers.

Every rank, kernel, and quotient computation in the toolkit bottoms out here,
so nothing in this module touches floating point.  Rational matrices carry
`fractions.Fraction` entries; prime-field matrices carry reduced residues;
integer matrices carry arbitrary-precision ints and support Smith normal form
(the presentation of finitely generated abelian groups as divisor chains).

Rational rank goes through fraction-free Bareiss elimination: rows are cleared
of denominators once, after which all updates are exact integer operations
with single-step division, keeping intermediate entries polynomial in the
input size.  The modulus-2 specialization packs each row into a Python int so
that a row operation is one big-integer XOR; group-cohomology coboundary
matrices over Z/2 are by far the largest matrices the toolkit sees.

All matrix values are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "RationalMatrix",
    "PrimeFieldMatrix",
    "IntegerMatrix",
    "SmithDecomposition",
    "rank",
    "kernel_basis",
    "smith_normal_form",
    "smith_transforms",
    "solve_mod",
    "kernel_mod",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# rational matrices


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix over Q, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entry grid")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count does not match entry grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls(nrows, ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls(rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        zero = Fraction(0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            acc = out[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                orow = other.entries[k]
                for j in range(other.cols):
                    b = orow[j]
                    if b:
                        acc[j] += a * b
        return RationalMatrix(self.rows, other.cols, tuple(tuple(r) for r in out))

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product over Q."""
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [Fraction(x) for x in vec]
        return tuple(sum((row[j] * v[j] for j in range(self.cols) if row[j]), Fraction(0))
                     for row in self.entries)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def _integer_rows(self) -> list[list[int]]:
        # Clearing denominators row-by-row changes neither rank nor kernel.
        out = []
        for row in self.entries:
            lcm = 1
            for x in row:
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
            out.append([int(x * lcm) for x in row])
        return out

    def rank(self) -> int:
        return _bareiss_rank(self._integer_rows(), self.rows, self.cols)

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        m = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return RationalMatrix(self.rows, self.cols, tuple(tuple(row) for row in m)), tuple(pivots)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right null space; len == cols - rank."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -red.entries[r][f]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...] | None:
        """One solution of M x = rhs, or None when inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("right-hand side length does not match row count")
        aug = RationalMatrix.from_rows(
            [list(self.entries[i]) + [Fraction(rhs[i])] for i in range(self.rows)]
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red.entries[r][self.cols]
        return tuple(x)


def _bareiss_rank(m: list[list[int]], rows: int, cols: int) -> int:
    """Rank by one-step fraction-free elimination on integer rows."""
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            mi, mr = m[i], m[r]
            for j in range(c + 1, cols):
                mi[j] = (p * mi[j] - mic * mr[j]) // prev
            mi[c] = 0
        prev = p
        r += 1
    return r


# ---------------------------------------------------------------------------
# prime field matrices


@dataclass(frozen=True)
class PrimeFieldMatrix:
    """Dense matrix over GF(p); entries stored as reduced residues."""

    modulus: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not _is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entry grid")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count does not match entry grid")
            for x in row:
                if not 0 <= x < self.modulus:
                    raise ValueError("entry not reduced modulo the field order")

    @classmethod
    def from_rows(cls, modulus: int, rows: Iterable[Iterable[int]]) -> "PrimeFieldMatrix":
        data = tuple(tuple(int(x) % modulus for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls(modulus, nrows, ncols, data)

    def _packed(self) -> list[int]:
        # bit j of word i <-> entry (i, j); only meaningful for modulus 2
        return [sum(1 << j for j, x in enumerate(row) if x) for row in self.entries]

    def rank(self) -> int:
        if self.modulus == 2:
            return _gf2_eliminate(self._packed())[1]
        return _gfp_eliminate([list(r) for r in self.entries], self.modulus)[1]

    def kernel_basis(self) -> list[tuple[int, ...]]:
        if self.modulus == 2:
            reduced, _ = _gf2_eliminate(self._packed(), reduce_up=True)
            pivots = {}
            for w in reduced:
                if w:
                    pivots[_lowest_bit(w)] = w
            free = [c for c in range(self.cols) if c not in pivots]
            basis = []
            for f in free:
                v = [0] * self.cols
                v[f] = 1
                for c, w in pivots.items():
                    if (w >> f) & 1:
                        v[c] = 1
                basis.append(tuple(v))
            return basis
        reduced, _ = _gfp_eliminate([list(r) for r in self.entries], self.modulus, reduce_up=True)
        pivots = []
        for row in reduced:
            piv = next((j for j, x in enumerate(row) if x), None)
            if piv is not None:
                pivots.append(piv)
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        p = self.modulus
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for r, c in enumerate(pivots):
                v[c] = (-reduced[r][f]) % p
            basis.append(tuple(v))
        return basis


def _lowest_bit(w: int) -> int:
    return (w & -w).bit_length() - 1


def _gf2_eliminate(words: list[int], reduce_up: bool = False) -> tuple[list[int], int]:
    """Row reduce packed GF(2) rows; a row operation is one XOR."""
    pivots: dict[int, int] = {}
    for w in words:
        cur = w
        while cur:
            c = _lowest_bit(cur)
            if c in pivots:
                cur ^= pivots[c]
            else:
                pivots[c] = cur
                break
    if reduce_up:
        for c in sorted(pivots, reverse=True):
            w = pivots[c]
            for c2 in list(pivots):
                if c2 != c and (pivots[c2] >> c) & 1:
                    pivots[c2] ^= w
    ordered = [pivots[c] for c in sorted(pivots)]
    return ordered, len(ordered)


def _gfp_eliminate(m: list[list[int]], p: int, reduce_up: bool = False) -> tuple[list[list[int]], int]:
    rows = len(m)
    cols = len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        lo = 0 if reduce_up else r + 1
        for i in range(lo, rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return [row for row in m if any(row)], r


# ---------------------------------------------------------------------------
# integer matrices and Smith normal form


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix over Z with arbitrary-precision entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entry grid")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count does not match entry grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls(nrows, ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols)) for row in self.entries)

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.entries)

    def to_prime_field(self, p: int) -> PrimeFieldMatrix:
        return PrimeFieldMatrix.from_rows(p, self.entries)

    def smith_normal_form(self) -> list[int]:
        return list(smith_transforms(self, want_u=False, want_v=False).factors)


@dataclass(frozen=True)
class SmithDecomposition:
    """U m V = diag(factors) with U, V unimodular; factors divide in order."""

    factors: tuple[int, ...]
    u: IntegerMatrix | None
    v: IntegerMatrix | None


def smith_transforms(m: IntegerMatrix, want_u: bool = True, want_v: bool = True) -> SmithDecomposition:
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)] if want_u else None
    v = [[int(i == j) for j in range(cols)] for i in range(cols)] if want_v else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        if u is not None:
            u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, q):
        for row in a:
            row[i] += q * row[j]
        if v is not None:
            for row in v:
                row[i] += q * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # smallest-magnitude nonzero pivot keeps coefficient growth down
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if a[t][t] < 0:
            negate_row(t)
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if a[t][t] < 0:
                negate_row(t)
            if dirty:
                continue
            if all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                a[t][j] == 0 for j in range(t + 1, cols)
            ):
                break
        # divisor-chain condition: pivot must divide the remaining block
        p = a[t][t]
        violator = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % p:
                    violator = i
                    break
            if violator is not None:
                break
        if violator is not None:
            add_row(t, violator, 1)
            continue
        t += 1

    factors = tuple(a[i][i] for i in range(limit) if a[i][i] != 0)
    return SmithDecomposition(
        factors,
        IntegerMatrix.from_rows(u) if u is not None else None,
        IntegerMatrix.from_rows(v) if v is not None else None,
    )


def solve_mod(m: IntegerMatrix, rhs: Sequence[int], modulus: int) -> list[int] | None:
    """One solution of m x = rhs (mod modulus), or None.

    Solved through the Smith form: with U m V = D the system becomes
    D y = U rhs with x = V y, and each scalar congruence d y = c (mod n)
    is solvable iff gcd(d, n) divides c.
    """
    if modulus < 1:
        raise ValueError("modulus must be positive")
    dec = smith_transforms(m, want_u=True, want_v=True)
    c = dec.u.apply([int(x) for x in rhs])
    d = dec.factors
    y = [0] * m.cols
    for i in range(m.rows):
        di = d[i] if i < len(d) else 0
        ci = c[i] % modulus
        if di == 0:
            if ci:
                return None
            continue
        if i >= m.cols:
            if ci:
                return None
            continue
        g = gcd(di, modulus)
        if ci % g:
            return None
        nred = modulus // g
        y[i] = (ci // g) * pow((di // g) % nred, -1, nred) % nred if nred > 1 else 0
    x = dec.v.apply(y)
    return [xi % modulus for xi in x]


def kernel_mod(m: IntegerMatrix, modulus: int) -> list[tuple[tuple[int, ...], int]]:
    """Generators of {x mod modulus : m x = 0 (mod modulus)} with their orders.

    Returned orders multiply to the solution-group size; generators with
    order 1 are omitted.
    """
    dec = smith_transforms(m, want_u=False, want_v=True)
    d = dec.factors
    gens = []
    for i in range(m.cols):
        di = d[i] if i < len(d) else 0
        g = gcd(di, modulus) if di else modulus
        if g == 1:
            continue
        step = modulus // g
        col = tuple(dec.v.entries[r][i] * step % modulus for r in range(m.cols))
        gens.append((col, g))
    return gens


# ---------------------------------------------------------------------------
# dispatch helpers matching the operation names used throughout the package


def rank(m: RationalMatrix | PrimeFieldMatrix) -> int:
    return m.rank()


def kernel_basis(m: RationalMatrix | PrimeFieldMatrix):
    return m.kernel_basis()


def smith_normal_form(m: IntegerMatrix) -> list[int]:
    return m.smith_normal_form()
