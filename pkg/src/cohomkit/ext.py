"""Central extensions of finite groups as concrete multiplication tables.

From a 2-cocycle omega on P with values in A (additive), the carrier group
lives on the set A x P with

    (a, p) * (b, q) = (a + b - omega(p, q), p q),

the additive reading of the multiplicative rule (a,p)(b,q) = (ab w(p,q)^{-1}, pq).
Associativity of this table is literally the cocycle condition, and a
non-cocycle input is rejected with a triple witnessing the failure.

The carrier element (a, p) is encoded as index(a) * |P| + p, fixed so exported
tables are reproducible.  The identity of the carrier is (u, 1) with
u = omega(1, 1), and the kernel embedding is i(a) = (a + u, 1); both collapse
to the obvious ones for normalized cocycles, and nothing here assumes
normalization.

A section s of the projection recovers a cocycle through the group element
s(q) s(pq)^{-1} s(p), which lies in i(A) and works out to (-omega(p, q), 1)
in these coordinates for the canonical section s(p) = (0, p); the sign is
pinned by the round-trip requirement that rebuilding from the recovered
cocycle reproduces omega exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .grpcoh import (
    AbelianCoefficients,
    Cochain,
    CocycleSpaceDescription,
    FiniteGroup,
    GroupHom,
    SizeLimitExceeded,
    coboundary,
    coboundary_matrix,
    cocycle_space,
    construct_splitting,
    hom_group,
    inflation,
)
from .exactmat import solve_mod

__all__ = [
    "CentralExtensionTable",
    "Section",
    "NotACocycleError",
    "build_extension",
    "extract_section",
    "cocycle_of_section",
    "section_difference",
    "are_equivalent",
    "is_split",
    "h1_h2_correspondence_check",
    "CorrespondenceReport",
]

SEARCH_LIMIT = 2 ** 16


class NotACocycleError(ValueError):
    """The 2-cochain fails the cocycle condition; `triple` is a witness
    (p, q, r) where associativity of the would-be table breaks."""

    def __init__(self, message: str, triple: tuple[int, int, int]):
        super().__init__(message)
        self.triple = triple


def _first_cocycle_violation(omega: Cochain) -> tuple[int, int, int] | None:
    P, A = omega.group, omega.coeffs
    zero = A.zero()
    for p in P.elements():
        for q in P.elements():
            for r in P.elements():
                val = A.sub(A.add(omega.value(q, r), omega.value(p, P.mul(q, r))),
                            A.add(omega.value(P.mul(p, q), r), omega.value(p, q)))
                if val != zero:
                    return (p, q, r)
    return None


@dataclass(frozen=True)
class CentralExtensionTable:
    base: FiniteGroup            # P
    kernel: AbelianCoefficients  # A
    cocycle: Cochain             # omega, degree 2
    carrier: FiniteGroup         # G on A x P
    projection: GroupHom         # G -> P

    @property
    def normalizer(self) -> tuple[int, ...]:
        """u = omega(1, 1); the carrier identity is (u, 1)."""
        e = self.base.identity
        return self.cocycle.value(e, e)

    def index_of(self, a: Sequence[int], p: int) -> int:
        return self.kernel.index(a) * self.base.order + p

    def decompose(self, g: int) -> tuple[tuple[int, ...], int]:
        a_idx, p = divmod(g, self.base.order)
        return self.kernel.element(a_idx), p

    def embed(self, a: Sequence[int]) -> int:
        """The kernel embedding i: A -> G, i(a) = (a + u, 1)."""
        return self.index_of(self.kernel.add(a, self.normalizer), self.base.identity)

    def section_index(self, p: int) -> int:
        """Canonical section value s(p) = (0, p) as a carrier index."""
        return self.index_of(self.kernel.zero(), p)

    def kernel_image(self) -> list[int]:
        return [self.embed(a) for a in self.kernel.elements()]

    def validate(self) -> None:
        """Exactness of 1 -> A -> G -> P -> 1 with central i(A), by scan."""
        self.carrier.validate()
        if self.carrier.order != self.kernel.size * self.base.order:
            raise ValueError("carrier order is not |A| * |P|")
        img = self.kernel_image()
        if len(set(img)) != self.kernel.size:
            raise ValueError("kernel embedding is not injective")
        for x, a in zip(img, self.kernel.elements()):
            for y, b in zip(img, self.kernel.elements()):
                if self.carrier.mul(x, y) != self.embed(self.kernel.add(a, b)):
                    raise ValueError("kernel embedding is not a homomorphism")
        self.projection.validate()
        if not self.projection.is_surjective():
            raise ValueError("projection is not surjective")
        if sorted(self.projection.kernel_elements()) != sorted(img):
            raise ValueError("kernel of the projection is not the embedded A")
        for x in img:
            for g in self.carrier.elements():
                if self.carrier.mul(x, g) != self.carrier.mul(g, x):
                    raise ValueError(f"embedded kernel element {x} is not central")

    def to_json(self) -> str:
        return json.dumps({
            "base": {"order": self.base.order, "table": [list(r) for r in self.base.table],
                     "identity": self.base.identity},
            "kernel": list(self.kernel.orders),
            "cocycle": self.cocycle.to_json(),
            "carrier": {"order": self.carrier.order,
                        "table": [list(r) for r in self.carrier.table],
                        "identity": self.carrier.identity},
            "projection": list(self.projection.values),
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CentralExtensionTable":
        obj = json.loads(text)
        base = FiniteGroup.from_table(obj["base"]["table"], obj["base"]["identity"])
        kernel = AbelianCoefficients(tuple(obj["kernel"]))
        omega = Cochain.from_json(obj["cocycle"], base, kernel)
        ext = build_extension(base, kernel, omega)
        if [list(r) for r in ext.carrier.table] != obj["carrier"]["table"]:
            raise ValueError("stored carrier table does not match its cocycle")
        if list(ext.projection.values) != obj["projection"]:
            raise ValueError("stored projection does not match its cocycle")
        return ext


@dataclass(frozen=True)
class Section:
    """Right inverse of the projection: carrier indices s(p) with pi(s(p)) = p."""

    extension: CentralExtensionTable
    values: tuple[int, ...]

    def __post_init__(self):
        for p in self.extension.base.elements():
            if self.extension.projection(self.values[p]) != p:
                raise ValueError(f"section fails pi(s({p})) = {p}")

    def __call__(self, p: int) -> int:
        return self.values[p]


def build_extension(P: FiniteGroup, A: AbelianCoefficients, omega: Cochain,
                    validate: bool = True) -> CentralExtensionTable:
    """The group on A x P with multiplication (a+b-omega(p,q), pq).

    A non-cocycle omega is rejected up front with the violating triple;
    the cocycle condition is exactly associativity of the table.
    """
    if omega.degree != 2 or omega.group.table != P.table or omega.coeffs != A:
        raise ValueError("omega must be a degree-2 cochain on P with values in A")
    if validate:
        bad = _first_cocycle_violation(omega)
        if bad is not None:
            raise NotACocycleError(
                f"cochain is not a 2-cocycle: associativity of the extension "
                f"table fails on triple {bad}", bad)
    n = P.order
    size = A.size * n
    a_elems = list(A.elements())

    def idx(a, p):
        return A.index(a) * n + p

    table = []
    for a in a_elems:
        for p in range(n):
            row = []
            for b in a_elems:
                for q in range(n):
                    row.append(idx(A.sub(A.add(a, b), omega.value(p, q)), P.mul(p, q)))
            table.append(tuple(row))
    u = omega.value(P.identity, P.identity)
    identity = idx(u, P.identity)
    labels = tuple(f"({'+'.join(map(str, a))},{P.labels[p]})" for a in a_elems for p in range(n))
    carrier = FiniteGroup(size, tuple(table), identity,
                          f"ext({P.name};{','.join(map(str, A.orders))})", labels)
    projection = GroupHom(carrier, P, tuple(g % n for g in range(size)))
    ext = CentralExtensionTable(P, A, omega, carrier, projection)
    if validate:
        ext.validate()
    return ext


def extract_section(ext: CentralExtensionTable, convention: str = "canonical",
                    seed: int | None = None) -> Section:
    """`canonical` picks s(p) = (0, p); `random` lifts each p to a uniformly
    random preimage (seeded), still a section by construction."""
    if convention == "canonical":
        values = tuple(ext.section_index(p) for p in ext.base.elements())
    elif convention == "random":
        if seed is None:
            raise ValueError("random sections require a seed")
        rng = random.Random(seed)
        a_list = list(ext.kernel.elements())
        values = tuple(ext.index_of(rng.choice(a_list), p) for p in ext.base.elements())
    else:
        raise ValueError(f"unknown section convention: {convention!r}")
    return Section(ext, values)


def cocycle_of_section(ext: CentralExtensionTable, s: Section) -> Cochain:
    """The cocycle of a section, from the group element s(q) s(pq)^{-1} s(p).

    That product lies in the embedded kernel; read through the embedding
    i(a) = (a + u, 1) it equals -omega(p, q) plus the coboundary of the
    section's A-coordinate, so negating gives back a cocycle in the class of
    omega.  For the canonical section the round trip
    cocycle_of_section(build_extension(P, A, w), canonical) == w holds
    exactly, normalized or not.
    """
    G = ext.carrier
    P = ext.base
    u = ext.normalizer

    def omega_val(p, q):
        g = G.mul(G.mul(s(q), G.inv(s(P.mul(p, q)))), s(p))
        a, base_part = ext.decompose(g)
        if base_part != P.identity:
            raise RuntimeError("section product escaped the kernel")  # impossible
        return ext.kernel.neg(ext.kernel.sub(a, u))

    return Cochain.from_function(P, ext.kernel, 2, omega_val)


def section_difference(ext: CentralExtensionTable, s1: Section, s2: Section) -> Cochain:
    """Degree-1 cochain c with s1(p) = s2(p) * i-part, read off coordinates:
    c(p) = A-part of s1(p) minus A-part of s2(p)."""
    P = ext.base

    def diff(p):
        a1, _ = ext.decompose(s1(p))
        a2, _ = ext.decompose(s2(p))
        return ext.kernel.sub(a1, a2)

    return Cochain.from_function(P, ext.kernel, 1, diff)


def _solve_coboundary(P: FiniteGroup, A: AbelianCoefficients,
                      target: Cochain) -> Cochain | None:
    """phi with d_1 phi = target, solved factor by factor mod each cyclic
    order; None when target is not a coboundary."""
    dmat = coboundary_matrix(P, 1)
    per_factor: list[list[int]] = []
    for fi, m in enumerate(A.orders):
        rhs = [target.values[i][fi] for i in range(P.order ** 2)]
        sol = solve_mod(dmat, rhs, m)
        if sol is None:
            return None
        per_factor.append(sol)
    vals = tuple(tuple(per_factor[fi][p] for fi in range(A.rank))
                 for p in range(P.order))
    return Cochain(P, A, 1, vals)


def _search_coboundary(P: FiniteGroup, A: AbelianCoefficients,
                       target: Cochain) -> Cochain | None:
    count = A.size ** P.order
    if count > SEARCH_LIMIT:
        raise SizeLimitExceeded(
            f"exhaustive equivalence search over {count} cochains exceeds 2^16",
            SEARCH_LIMIT, count)
    for combo in product(list(A.elements()), repeat=P.order):
        phi = Cochain(P, A, 1, combo)
        if coboundary(phi).values == target.values:
            return phi
    return None


def are_equivalent(ext1: CentralExtensionTable, ext2: CentralExtensionTable,
                   strategy: str = "auto") -> Cochain | None:
    """Equivalence witness phi with omega1 - omega2 = d_1 phi, or None.

    When found, the coordinate map (a, p) -> (a + phi(p), p) is verified to be
    an isomorphism from ext2's carrier to ext1's carrier commuting with both
    projections and fixing the embedded kernel pointwise (the direction is
    fixed by the sign convention of the multiplication rule).
    """
    if ext1.base.table != ext2.base.table:
        raise ValueError("extensions have different base groups")
    if ext1.kernel != ext2.kernel:
        raise ValueError("extensions have different kernels")
    P, A = ext1.base, ext1.kernel
    target = ext1.cocycle - ext2.cocycle
    if strategy == "search":
        phi = _search_coboundary(P, A, target)
    elif strategy == "solve":
        phi = _solve_coboundary(P, A, target)
    else:
        phi = _solve_coboundary(P, A, target)
    if phi is None:
        return None
    _verify_equivalence_map(ext1, ext2, phi)
    return phi


def _verify_equivalence_map(ext1: CentralExtensionTable, ext2: CentralExtensionTable,
                            phi: Cochain) -> None:
    """Check that F(a, p) = (a + phi(p), p) is an isomorphism
    ext2.carrier -> ext1.carrier over id_P fixing A pointwise."""
    P, A = ext1.base, ext1.kernel
    size = ext1.carrier.order

    def F(g: int) -> int:
        a, p = ext2.decompose(g)
        return ext1.index_of(A.add(a, phi.value(p)), p)

    images = [F(g) for g in range(size)]
    if len(set(images)) != size:
        raise RuntimeError("equivalence witness does not induce a bijection")
    for g in range(size):
        for h in range(size):
            if F(ext2.carrier.mul(g, h)) != ext1.carrier.mul(images[g], images[h]):
                raise RuntimeError("equivalence witness does not induce a homomorphism")
    for g in range(size):
        if ext1.projection(images[g]) != ext2.projection(g):
            raise RuntimeError("equivalence map does not commute with the projections")
    for a in A.elements():
        if F(ext2.embed(a)) != ext1.embed(a):
            raise RuntimeError("equivalence map moves the embedded kernel")


def is_split(ext: CentralExtensionTable) -> GroupHom | None:
    """A section that is a homomorphism, or None; exists iff the cocycle is a
    coboundary.  The splitting is s(p) = (phi(p), p) for d_1 phi = omega."""
    phi = _solve_coboundary(ext.base, ext.kernel, ext.cocycle)
    if phi is None:
        return None
    values = tuple(ext.index_of(phi.value(p), p) for p in ext.base.elements())
    hom = GroupHom(ext.base, ext.carrier, values)
    hom.validate()
    for p in ext.base.elements():
        if ext.projection(hom(p)) != p:
            raise RuntimeError("splitting is not a section")  # unreachable
    return hom


# ---------------------------------------------------------------------------
# the H^1(S, A) ~ H^2(P, A) correspondence check


@dataclass
class CorrespondenceReport:
    cover_name: str
    base_name: str
    kernel_order: int
    h1_order: int                     # |Hom(S, A)|
    h2_order: int                     # number of H^2(P, A) classes
    applicable: bool
    failing_class: int | None
    class_to_hom: list[dict]          # one entry per class when applicable
    injective: bool

    def to_json(self) -> dict:
        return {
            "cover": self.cover_name,
            "base": self.base_name,
            "kernel_order": self.kernel_order,
            "h1_S_order": self.h1_order,
            "h2_P_order": self.h2_order,
            "applicable": self.applicable,
            "failing_class": self.failing_class,
            "orders_match": self.h1_order == self.h2_order,
            "map_injective": self.injective,
            "class_to_hom": self.class_to_hom,
        }


def _class_representatives(space: CocycleSpaceDescription) -> list[Cochain]:
    """One cocycle per cohomology class, greedy over the elements of Z^n."""
    if space.order > SEARCH_LIMIT:
        raise SizeLimitExceeded(
            f"class enumeration over {space.order} cocycles exceeds 2^16",
            SEARCH_LIMIT, space.order)
    reps: list[Cochain] = []
    for z in space.elements():
        if all(_solve_coboundary(space.group, space.coeffs, z - r) is None for r in reps):
            reps.append(z)
    return reps


def h1_h2_correspondence_check(E: FiniteGroup, sigma: GroupHom,
                               A: AbelianCoefficients) -> CorrespondenceReport:
    """Compare |H^1(S, A)| with |H^2(P, A)| for S = ker sigma, and exhibit the
    class-to-homomorphism map whenever every class of H^2(P, A) splits after
    inflation to E.

    The map sends the class of omega to the restriction to S of the lift
    U: E -> G(omega); that restriction lands in the embedded kernel, hence
    reads as a homomorphism S -> A.  Failure of inflation-splitting for some
    class is reported as non-applicability (the cover is not algebraically
    simply connected enough), not as an error.
    """
    if sigma.source.table != E.table:
        raise ValueError("sigma is not defined on E")
    sigma.validate()
    if not sigma.is_surjective():
        raise ValueError("sigma must be surjective onto the base group")
    P = sigma.target
    s_group, s_embedding = E.subgroup(sigma.kernel_elements(), name="ker(sigma)")
    for s_old in s_embedding:
        for g in E.elements():
            if E.mul(s_old, g) != E.mul(g, s_old):
                raise ValueError("kernel of sigma is not central; "
                                 "(E, sigma) is not a central extension")
    homs = hom_group(s_group, A)
    h1_order = len(homs)

    space = cocycle_space(P, A, 2)
    reps = _class_representatives(space)
    h2_order = len(reps)

    class_to_hom: list[dict] = []
    psi_tables: list[tuple] = []
    for ci, omega in enumerate(reps):
        ext = build_extension(P, A, omega)
        omega_tilde = inflation(sigma, omega)
        phi = _solve_coboundary(E, A, omega_tilde)
        if phi is None:
            return CorrespondenceReport(
                E.name, P.name, A.size, h1_order, h2_order,
                applicable=False, failing_class=ci, class_to_hom=[], injective=False)
        U = construct_splitting(E, sigma, ext, phi)
        u = ext.normalizer
        psi = []
        for s_new, s_old in enumerate(s_embedding):
            a, base_part = ext.decompose(U(s_old))
            if base_part != P.identity:
                raise RuntimeError("restriction of the lift escaped the kernel")
            psi.append(A.sub(a, u))
        psi_t = tuple(psi)
        psi_tables.append(psi_t)
        class_to_hom.append({
            "class_index": ci,
            "cocycle_values": [list(v) for v in omega.values],
            "hom_on_kernel": [list(v) for v in psi_t],
        })
    injective = len(set(psi_tables)) == len(psi_tables)
    return CorrespondenceReport(
        E.name, P.name, A.size, h1_order, h2_order,
        applicable=True, failing_class=None,
        class_to_hom=class_to_hom, injective=injective)
