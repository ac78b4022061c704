"""Cochain complex of a finite group with coefficients in a finite abelian
group acted on trivially.

The degree-n cochains are arbitrary maps P^n -> A (not normalized), and the
coboundary is, written additively,

    (d_n f)(p_1, ..., p_{n+1}) = f(p_2, ..., p_{n+1})
        + sum_{i=1..n} (-1)^i f(p_1, ..., p_i p_{i+1}, ..., p_{n+1})
        + (-1)^{n+1} f(p_1, ..., p_n),

so d_{n+1} d_n = 0 and Z^1 = H^1 is the homomorphism group.  Degrees 0..2 are
supported, which covers H^1 and H^2 (the groups classifying central
extensions).

Two computation routes coexist and are cross-checked in the tests:

* a linear-algebra route over Z: each cyclic coefficient factor Z_m turns
  Z^n, B^n, H^n into integer-lattice computations handled through the Smith
  normal form (prime m additionally gets a direct GF(p) rank shortcut, with
  the packed-bit GF(2) eliminator underneath);
* exhaustive enumeration, available whenever |A|^(|P|^n) <= 2^20, kept as an
  independent oracle.

Groups are stored by full multiplication table and validated by direct scan
(Latin square, associativity, identity, inverses); everything here is desk
scale.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd, prod
from typing import Iterable, Sequence

from .exactmat import IntegerMatrix, RationalMatrix, kernel_mod, smith_transforms

__all__ = [
    "FiniteGroup",
    "AbelianCoefficients",
    "Cochain",
    "GroupHom",
    "SizeLimitExceeded",
    "coboundary",
    "coboundary_matrix",
    "cocycle_space",
    "CocycleSpaceDescription",
    "cohomology_group",
    "enumerate_cocycles",
    "enumerate_cochains",
    "hom_group",
    "inflation",
    "construct_splitting",
    "group_by_name",
    "coefficients_by_name",
]

ENUMERATION_LIMIT = 2 ** 20


class SizeLimitExceeded(ValueError):
    """An exhaustive path was requested beyond its documented bound."""

    def __init__(self, message: str, bound: int, requested: int):
        super().__init__(message)
        self.bound = bound
        self.requested = requested


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FiniteGroup:
    """Group of order N as an N x N multiplication table of element indices."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str = ""
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.order)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        row = self.table[a]
        return row.index(self.identity)

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in self.elements() for b in self.elements())

    def validate(self) -> None:
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table is not square of the declared order")
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise ValueError(f"row {i} is not a permutation (Latin square fails)")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise ValueError(f"column {j} is not a permutation (Latin square fails)")
        e = self.identity
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise ValueError(f"declared identity {e} does not act as identity on {a}")
        for a in range(n):
            if self.identity not in self.table[a]:
                raise ValueError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(f"associativity fails on triple ({a}, {b}, {c})")

    # -- constructions -------------------------------------------------------

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], identity: int | None = None,
                   name: str = "", labels: Sequence[str] = ()) -> "FiniteGroup":
        tab = tuple(tuple(int(x) for x in row) for row in table)
        n = len(tab)
        if identity is None:
            identity = next((e for e in range(n)
                             if all(tab[e][a] == a and tab[a][e] == a for a in range(n))),
                            None)
            if identity is None:
                raise ValueError("table has no identity element")
        g = cls(n, tab, identity, name, tuple(labels))
        g.validate()
        return g

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(n, table, 0, f"z{n}")

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup", name: str = "") -> "FiniteGroup":
        n, m = g.order, h.order

        def idx(a, b):
            return a * m + b

        table = tuple(
            tuple(idx(g.mul(a1, a2), h.mul(b1, b2)) for a2 in range(n) for b2 in range(m))
            for a1 in range(n) for b1 in range(m)
        )
        labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a in range(n) for b in range(m))
        return cls(n * m, table, idx(g.identity, h.identity),
                   name or f"{g.name}x{h.name}", labels)

    @classmethod
    def symmetric3(cls) -> "FiniteGroup":
        return _permutation_group(3, "s3")

    @classmethod
    def alternating4(cls) -> "FiniteGroup":
        return _permutation_group(4, "a4", even_only=True)

    @classmethod
    def quaternion8(cls) -> "FiniteGroup":
        # elements 1, -1, i, -i, j, -j, k, -k encoded as (sign, axis)
        names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

        def decode(x):
            return (1 if x % 2 == 0 else -1, x // 2)  # axis 0 = scalar

        def encode(sign, axis):
            return axis * 2 + (0 if sign == 1 else 1)

        # quaternion unit multiplication on axes {1, i, j, k}
        unit = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }
        table = []
        for x in range(8):
            sx, ax = decode(x)
            row = []
            for y in range(8):
                sy, ay = decode(y)
                s, a = unit[(ax, ay)]
                row.append(encode(sx * sy * s, a))
            table.append(tuple(row))
        return cls(8, tuple(table), 0, "q8", tuple(names))

    def subgroup(self, elements: Iterable[int], name: str = "") -> tuple["FiniteGroup", list[int]]:
        """Subgroup on the given (closed) element set; returns the group with
        reindexed table and the embedding new index -> old index."""
        elems = sorted(set(elements))
        pos = {e: i for i, e in enumerate(elems)}
        for a in elems:
            for b in elems:
                if self.mul(a, b) not in pos:
                    raise ValueError(f"set is not closed under multiplication ({a}, {b})")
        table = tuple(tuple(pos[self.mul(a, b)] for b in elems) for a in elems)
        labels = tuple(self.labels[e] for e in elems)
        sub = FiniteGroup(len(elems), table, pos[self.identity],
                          name or f"{self.name}-sub", labels)
        return sub, elems


def _permutation_group(n: int, name: str, even_only: bool = False) -> FiniteGroup:
    from itertools import permutations

    def parity(p):
        inv = sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])
        return inv % 2

    perms = [p for p in permutations(range(n)) if not even_only or parity(p) == 0]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):  # (p o q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    table = tuple(tuple(index[compose(p, q)] for q in perms) for p in perms)
    labels = tuple("".join(map(str, p)) for p in perms)
    return FiniteGroup(len(perms), table, index[tuple(range(n))], name, labels)


_NAMED_GROUPS = {
    "z2": lambda: FiniteGroup.cyclic(2),
    "z3": lambda: FiniteGroup.cyclic(3),
    "z4": lambda: FiniteGroup.cyclic(4),
    "z5": lambda: FiniteGroup.cyclic(5),
    "z6": lambda: FiniteGroup.cyclic(6),
    "z8": lambda: FiniteGroup.cyclic(8),
    "klein4": lambda: FiniteGroup.direct_product(
        FiniteGroup.cyclic(2), FiniteGroup.cyclic(2), name="klein4"),
    "s3": FiniteGroup.symmetric3,
    "q8": FiniteGroup.quaternion8,
    "a4": FiniteGroup.alternating4,
}


def group_by_name(name: str) -> FiniteGroup:
    key = name.strip().lower()
    if key in _NAMED_GROUPS:
        return _NAMED_GROUPS[key]()
    if key.startswith("z") and key[1:].isdigit():
        return FiniteGroup.cyclic(int(key[1:]))
    raise ValueError(f"unknown group name: {name!r} "
                     f"(named: {', '.join(sorted(_NAMED_GROUPS))})")


# ---------------------------------------------------------------------------
# coefficients


@dataclass(frozen=True)
class AbelianCoefficients:
    """Direct sum of cyclic groups Z_{m_1} + ... + Z_{m_r}, written additively;
    elements are residue tuples."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(m < 2 for m in self.orders):
            raise ValueError("every cyclic factor must have order >= 2")

    @classmethod
    def of(cls, *orders: int) -> "AbelianCoefficients":
        return cls(tuple(int(m) for m in orders))

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % m for x, m in zip(a, self.orders))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.orders))

    def reduce(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % m for x, m in zip(a, self.orders))

    def element_order(self, a: Sequence[int]) -> int:
        result = 1
        for x, m in zip(a, self.orders):
            result = result * (m // gcd(x, m)) // gcd(result, m // gcd(x, m))
        return result

    def elements(self) -> Iterable[tuple[int, ...]]:
        return product(*(range(m) for m in self.orders))

    def index(self, a: Sequence[int]) -> int:
        idx = 0
        for x, m in zip(a, self.orders):
            idx = idx * m + (x % m)
        return idx

    def element(self, idx: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.orders):
            out.append(idx % m)
            idx //= m
        return tuple(reversed(out))

    def as_group(self, name: str = "") -> FiniteGroup:
        """The same abelian group as a multiplication table, elements in
        index order (compatible with `index`/`element`)."""
        n = self.size
        table = tuple(
            tuple(self.index(self.add(self.element(i), self.element(j))) for j in range(n))
            for i in range(n)
        )
        labels = tuple("+".join(map(str, self.element(i))) for i in range(n))
        return FiniteGroup(n, table, 0, name or "+".join(f"z{m}" for m in self.orders), labels)


_NAMED_COEFFS = {
    "z2": (2,),
    "z3": (3,),
    "z4": (4,),
    "z2xz2": (2, 2),
    "klein4": (2, 2),
    "z6": (6,),
}


def coefficients_by_name(name: str) -> AbelianCoefficients:
    key = name.strip().lower()
    if key in _NAMED_COEFFS:
        return AbelianCoefficients(_NAMED_COEFFS[key])
    if key.startswith("z") and key[1:].isdigit():
        return AbelianCoefficients((int(key[1:]),))
    try:
        orders = tuple(int(tok) for tok in key.split(","))
        return AbelianCoefficients(orders)
    except ValueError:
        raise ValueError(f"unknown coefficient group: {name!r}") from None


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True)
class Cochain:
    """Map P^n -> A stored as a full value table, indexed by the mixed-radix
    argument tuple (degree 0 is a single element)."""

    group: FiniteGroup
    coeffs: AbelianCoefficients
    degree: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.values) != self.group.order ** self.degree:
            raise ValueError("value table size does not match degree")

    def _arg_index(self, args: Sequence[int]) -> int:
        idx = 0
        for p in args:
            idx = idx * self.group.order + p
        return idx

    def value(self, *args: int) -> tuple[int, ...]:
        if len(args) != self.degree:
            raise ValueError(f"cochain of degree {self.degree} takes {self.degree} arguments")
        return self.values[self._arg_index(args)]

    @classmethod
    def from_function(cls, group: FiniteGroup, coeffs: AbelianCoefficients,
                      degree: int, fn) -> "Cochain":
        vals = tuple(coeffs.reduce(fn(*args))
                     for args in product(group.elements(), repeat=degree))
        return cls(group, coeffs, degree, vals)

    @classmethod
    def zero(cls, group: FiniteGroup, coeffs: AbelianCoefficients, degree: int) -> "Cochain":
        z = coeffs.zero()
        return cls(group, coeffs, degree, tuple(z for _ in range(group.order ** degree)))

    @classmethod
    def random(cls, group: FiniteGroup, coeffs: AbelianCoefficients,
               degree: int, rng) -> "Cochain":
        vals = tuple(tuple(rng.randrange(m) for m in coeffs.orders)
                     for _ in range(group.order ** degree))
        return cls(group, coeffs, degree, vals)

    def is_zero(self) -> bool:
        z = self.coeffs.zero()
        return all(v == z for v in self.values)

    def _same_space(self, other: "Cochain") -> None:
        if (self.group is not other.group and self.group != other.group) or \
                self.coeffs != other.coeffs or self.degree != other.degree:
            raise ValueError("cochains live on different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.group, self.coeffs, self.degree,
                       tuple(self.coeffs.add(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.group, self.coeffs, self.degree,
                       tuple(self.coeffs.sub(a, b) for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "Cochain":
        return Cochain(self.group, self.coeffs, self.degree,
                       tuple(self.coeffs.neg(a) for a in self.values))

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.group, self.coeffs, self.degree,
                       tuple(self.coeffs.reduce(tuple(k * x for x in v)) for v in self.values))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "group_order": self.group.order,
            "coefficient_orders": list(self.coeffs.orders),
            "values": [
                {"args": list(args), "value": list(self.values[self._arg_index(args)])}
                for args in product(range(self.group.order), repeat=self.degree)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, group: FiniteGroup,
                  coeffs: AbelianCoefficients | None = None) -> "Cochain":
        if coeffs is None:
            coeffs = AbelianCoefficients(tuple(obj["coefficient_orders"]))
        degree = int(obj["degree"])
        if int(obj.get("group_order", group.order)) != group.order:
            raise ValueError("cochain JSON was written for a group of different order")
        table = {tuple(item["args"]): tuple(item["value"]) for item in obj["values"]}
        vals = []
        for args in product(range(group.order), repeat=degree):
            if args not in table:
                raise ValueError(f"cochain JSON is missing arguments {args}")
            vals.append(coeffs.reduce(table[args]))
        return cls(group, coeffs, degree, tuple(vals))


# ---------------------------------------------------------------------------
# the coboundary: the alternating sum in additive notation


def coboundary(f: Cochain) -> Cochain:
    """d_n f for n <= 2; the alternating sum above, in additive notation."""
    n = f.degree
    if n > 2:
        raise ValueError("coboundary implemented for degrees 0, 1, 2 only")
    P, A = f.group, f.coeffs

    def dval(*args: int) -> tuple[int, ...]:
        acc = f.value(*args[1:])
        sign = -1
        for i in range(n):
            merged = args[:i] + (P.mul(args[i], args[i + 1]),) + args[i + 2:]
            term = f.value(*merged)
            acc = A.add(acc, term if sign > 0 else A.neg(term))
            sign = -sign
        last = f.value(*args[:n])
        acc = A.add(acc, last if sign > 0 else A.neg(last))
        return acc

    return Cochain.from_function(P, A, n + 1, dval)


def coboundary_matrix(group: FiniteGroup, degree: int) -> IntegerMatrix:
    """Integer matrix of d_degree acting on one cyclic coefficient factor:
    rows indexed by P^{degree+1}, columns by P^{degree}, entries the +-1
    incidence pattern of the alternating sum."""
    n = degree
    N = group.order
    rows = N ** (n + 1)
    cols = N ** n

    def arg_index(args):
        idx = 0
        for p in args:
            idx = idx * N + p
        return idx

    mat = [[0] * cols for _ in range(rows)]
    for args in product(range(N), repeat=n + 1):
        r = arg_index(args)
        mat[r][arg_index(args[1:])] += 1
        sign = -1
        for i in range(n):
            merged = args[:i] + (group.mul(args[i], args[i + 1]),) + args[i + 2:]
            mat[r][arg_index(merged)] += sign
            sign = -sign
        mat[r][arg_index(args[:n])] += sign
    return IntegerMatrix.from_rows(mat)


# ---------------------------------------------------------------------------
# Z^n: linear route and enumeration oracle


@dataclass
class CocycleSpaceDescription:
    group: FiniteGroup
    coeffs: AbelianCoefficients
    degree: int
    order: int
    generators: list[tuple[Cochain, int]]  # (generator, order in Z^n)

    def elements(self) -> Iterable[Cochain]:
        """Every cocycle, generated from the description (use only when
        `order` is reasonably small)."""
        gens = self.generators
        zero = Cochain.zero(self.group, self.coeffs, self.degree)
        seen = {zero.values}
        frontier = [zero]
        yield zero
        while frontier:
            cur = frontier.pop()
            for g, _ in gens:
                nxt = cur + g
                if nxt.values not in seen:
                    seen.add(nxt.values)
                    frontier.append(nxt)
                    yield nxt


def cocycle_space(group: FiniteGroup, coeffs: AbelianCoefficients,
                  degree: int) -> CocycleSpaceDescription:
    """Z^n as the solution group of d_n f = 0, factor by cyclic factor,
    through the Smith form of the integer coboundary matrix."""
    if degree not in (1, 2):
        raise ValueError("cocycle spaces computed for degrees 1 and 2 only")
    dmat = coboundary_matrix(group, degree)
    gens: list[tuple[Cochain, int]] = []
    total = 1
    ncols = group.order ** degree
    for fi, m in enumerate(coeffs.orders):
        factor_size = 1
        for vec, order in kernel_mod(dmat, m):
            vals = []
            for c in range(ncols):
                v = [0] * coeffs.rank
                v[fi] = vec[c]
                vals.append(tuple(v))
            gens.append((Cochain(group, coeffs, degree, tuple(vals)), order))
            factor_size *= order
        total *= factor_size
    return CocycleSpaceDescription(group, coeffs, degree, total, gens)


def enumerate_cochains(group: FiniteGroup, coeffs: AbelianCoefficients,
                       degree: int) -> Iterable[Cochain]:
    count = coeffs.size ** (group.order ** degree)
    if count > ENUMERATION_LIMIT:
        raise SizeLimitExceeded(
            f"enumeration of {count} cochains exceeds the 2^20 bound",
            ENUMERATION_LIMIT, count)
    slots = group.order ** degree
    for combo in product(list(coeffs.elements()), repeat=slots):
        yield Cochain(group, coeffs, degree, combo)


def enumerate_cocycles(group: FiniteGroup, coeffs: AbelianCoefficients,
                       degree: int) -> list[Cochain]:
    """Exhaustive oracle: all f with d f = 0, by scanning every cochain.

    The scan runs on raw coefficient-index tables with precomputed addition
    tables (the full search space can reach 2^20 entries); survivors are
    wrapped into Cochain values.
    """
    if degree not in (1, 2):
        raise ValueError("cocycle enumeration implemented for degrees 1 and 2")
    count = coeffs.size ** (group.order ** degree)
    if count > ENUMERATION_LIMIT:
        raise SizeLimitExceeded(
            f"enumeration of {count} cochains exceeds the 2^20 bound",
            ENUMERATION_LIMIT, count)
    N = group.order
    size = coeffs.size
    elems = [coeffs.element(i) for i in range(size)]
    add = [[coeffs.index(coeffs.add(a, b)) for b in elems] for a in elems]
    mul = group.table
    survivors = []
    if degree == 1:
        # f(p) + f(q) = f(pq): the homomorphism equations
        pairs = [(p, q, mul[p][q]) for p in range(N) for q in range(N)]
        for table in product(range(size), repeat=N):
            if all(add[table[p]][table[q]] == table[pq] for p, q, pq in pairs):
                survivors.append(table)
    else:
        # w(q,r) + w(p,qr) = w(pq,r) + w(p,q) for all triples
        checks = [(q * N + r, p * N + mul[q][r], mul[p][q] * N + r, p * N + q)
                  for p in range(N) for q in range(N) for r in range(N)]
        for table in product(range(size), repeat=N * N):
            ok = True
            for a, b, c, d in checks:
                if add[table[a]][table[b]] != add[table[c]][table[d]]:
                    ok = False
                    break
            if ok:
                survivors.append(table)
    return [Cochain(group, coeffs, degree, tuple(elems[i] for i in table))
            for table in survivors]


# ---------------------------------------------------------------------------
# H^n as invariant factors


def _invariant_factors_merge(cyclic_orders: Iterable[int]) -> list[int]:
    """Canonical divisor chain of a direct sum of cyclic groups."""
    primary: dict[int, list[int]] = {}
    for m in cyclic_orders:
        if m <= 1:
            continue
        rest = m
        d = 2
        while d * d <= rest:
            if rest % d == 0:
                e = 0
                while rest % d == 0:
                    rest //= d
                    e += 1
                primary.setdefault(d, []).append(d ** e)
            d += 1
        if rest > 1:
            primary.setdefault(rest, []).append(rest)
    for p in primary:
        primary[p].sort(reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    chain = []
    for i in range(depth):
        f = 1
        for p in primary:
            if i < len(primary[p]):
                f *= primary[p][i]
        chain.append(f)
    return sorted(chain)


def _h_factors_single(group: FiniteGroup, m: int, degree: int) -> list[int]:
    """Cyclic orders of H^degree(P, Z_m), one coefficient factor at a time."""
    d_n = coboundary_matrix(group, degree)
    d_prev = coboundary_matrix(group, degree - 1)

    def _is_prime(x):
        return x >= 2 and all(x % d for d in range(2, int(x ** 0.5) + 1))

    if _is_prime(m):
        z_dim = d_n.cols - d_n.to_prime_field(m).rank()
        b_dim = d_prev.to_prime_field(m).rank()
        return [m] * (z_dim - b_dim)

    # composite m: present Z^n / B^n through the kernel lattice
    # L = {f in Z^k : d_n f = 0 (mod m)}, whose basis K comes from the Smith
    # form d_n V = U^{-1} D; then H = L / (im d_prev + m Z^k) = coker(K^{-1} [d_prev | mI]).
    k = d_n.cols
    dec = smith_transforms(d_n, want_u=False, want_v=True)
    factors = dec.factors
    scale = [m // gcd(factors[i], m) if i < len(factors) else 1 for i in range(k)]
    # one block elimination of [K | d_prev | mI] gives [I | K^{-1} d_prev | m K^{-1}]
    aug_rows = []
    for r in range(k):
        row = [dec.v.entries[r][c] * scale[c] for c in range(k)]
        row += [d_prev.entries[r][j] for j in range(d_prev.cols)]
        row += [m if r == j else 0 for j in range(k)]
        aug_rows.append(row)
    reduced, pivots = RationalMatrix.from_rows(aug_rows).rref()
    if pivots != tuple(range(k)):
        raise RuntimeError("kernel-lattice basis is singular")  # V unimodular: impossible
    ngen = d_prev.cols + k
    x_rows = []
    for r in range(k):
        row = reduced.entries[r][k:k + ngen]
        if any(f.denominator != 1 for f in row):
            raise RuntimeError("lattice coordinates are not integral")
        x_rows.append([int(f) for f in row])
    x_mat = IntegerMatrix.from_rows(x_rows)  # k x (#gens)
    return [f for f in x_mat.smith_normal_form() if f > 1]


def cohomology_group(group: FiniteGroup, coeffs: AbelianCoefficients,
                     degree: int) -> list[int]:
    """Invariant factors of H^degree(P, A); [] means the trivial group."""
    if degree not in (1, 2):
        raise ValueError("cohomology computed for degrees 1 and 2 only")
    orders: list[int] = []
    for m in coeffs.orders:
        orders.extend(_h_factors_single(group, m, degree))
    return _invariant_factors_merge(orders)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.source.order:
            raise ValueError("value table length does not match source order")

    def __call__(self, a: int) -> int:
        return self.values[a]

    def validate(self) -> None:
        if self.values[self.source.identity] != self.target.identity:
            raise ValueError("map does not send identity to identity")
        for a in self.source.elements():
            for b in self.source.elements():
                if self.values[self.source.mul(a, b)] != \
                        self.target.mul(self.values[a], self.values[b]):
                    raise ValueError(f"multiplicativity fails on pair ({a}, {b})")

    def is_surjective(self) -> bool:
        return set(self.values) == set(self.target.elements())

    def kernel_elements(self) -> list[int]:
        return [a for a in self.source.elements()
                if self.values[a] == self.target.identity]

    @classmethod
    def identity_map(cls, group: FiniteGroup) -> "GroupHom":
        return cls(group, group, tuple(group.elements()))


def _generating_set(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    generated = {group.identity}
    for e in group.elements():
        if e in generated:
            continue
        gens.append(e)
        frontier = [group.identity]
        generated = {group.identity}
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = group.mul(x, g)
                if y not in generated:
                    generated.add(y)
                    frontier.append(y)
        if len(generated) == group.order:
            break
    return gens


def hom_group(group: FiniteGroup, coeffs: AbelianCoefficients) -> list[GroupHom]:
    """All homomorphisms P -> A, enumerated on a generating set of P and
    extended by multiplicativity; serves as the independent oracle for H^1."""
    target = coeffs.as_group()
    gens = _generating_set(group)
    count = coeffs.size ** len(gens)
    if count > ENUMERATION_LIMIT:
        raise SizeLimitExceeded(
            f"{count} generator assignments exceed the enumeration bound",
            ENUMERATION_LIMIT, count)
    homs = []
    for images in product(range(target.order), repeat=len(gens)):
        values = [-1] * group.order
        values[group.identity] = target.identity
        frontier = [group.identity]
        while frontier:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y = group.mul(x, g)
                fy = target.mul(values[x], img)
                if values[y] == -1:
                    values[y] = fy
                    frontier.append(y)
        consistent = all(
            values[group.mul(a, b)] == target.mul(values[a], values[b])
            for a in group.elements() for b in group.elements())
        if consistent:
            homs.append(GroupHom(group, target, tuple(values)))
    return homs


def hom_to_cochain(h: GroupHom, coeffs: AbelianCoefficients) -> Cochain:
    """View a homomorphism into A (as_group indexing) as a degree-1 cochain."""
    vals = tuple(coeffs.element(h(a)) for a in h.source.elements())
    return Cochain(h.source, coeffs, 1, vals)


# ---------------------------------------------------------------------------
# inflation and the splitting construction


def inflation(sigma: GroupHom, f: Cochain) -> Cochain:
    """Pullback of f along sigma: (inflated f)(g_1, ..., g_n) =
    f(sigma g_1, ..., sigma g_n).  Cocycles pull back to cocycles."""
    if sigma.target.order != f.group.order or sigma.target.table != f.group.table:
        raise ValueError("cochain is not defined on the target of sigma")
    if not sigma.is_surjective():
        warnings.warn("inflating along a non-surjective map; the pullback is "
                      "still computed", RuntimeWarning)
    E = sigma.source
    return Cochain.from_function(
        E, f.coeffs, f.degree,
        lambda *args: f.value(*(sigma(g) for g in args)))


def construct_splitting(E: FiniteGroup, sigma: GroupHom, extension, phi: Cochain) -> GroupHom:
    """Lift sigma: E -> P through a central extension G of P.

    `extension` is a built CentralExtensionTable over P; `phi` must satisfy
    d_1 phi = inflated cocycle of the extension's canonical section.  The
    returned map U(g) = s(sigma(g)) * i(phi(g)) is a verified homomorphism
    E -> G with projection o U = sigma.
    """
    if sigma.source.table != E.table:
        raise ValueError("sigma is not defined on E")
    if sigma.target.table != extension.base.table:
        raise ValueError("sigma does not land in the extension's base group")
    omega_tilde = inflation(sigma, extension.cocycle)
    defect = coboundary(phi) - omega_tilde
    z = phi.coeffs.zero()
    for g in E.elements():
        for h in E.elements():
            if defect.value(g, h) != z:
                raise ValueError(
                    f"d phi differs from the inflated cocycle at pair ({g}, {h})")
    G = extension.carrier
    values = []
    for g in E.elements():
        s_idx = extension.section_index(sigma(g))
        i_idx = extension.embed(phi.value(g))
        values.append(G.mul(s_idx, i_idx))
    U = GroupHom(E, G, tuple(values))
    U.validate()
    for g in E.elements():
        if extension.projection(U(g)) != sigma(g):
            raise RuntimeError("lift does not cover sigma")  # unreachable if phi valid
    return U
