"""Normal factors K/L, their centralizers, and the association relation."""

from __future__ import annotations

from typing import Optional

from .errors import (
    DifferentParents,
    NotAssociated,
    NotNormal,
    NotStrictlyNested,
)
from .group import (
    CosetGroup,
    Homomorphism,
    Subgroup,
    ambient_subgroup,
    factor_centralizer_members,
    is_normal_in,
    product_of_subgroups,
    subgroup_as_group,
)
from .lattice import NormalLattice, chief_factors, normal_subgroups


class NormalFactor:
    """The quotient K/L of nested subgroups normal in a common ambient.

    Factors are value objects: two factors are equal iff they have the same
    ambient and the same pair (K, L).
    """

    __slots__ = ("ambient", "k", "l", "_hash")

    def __init__(self, ambient: Subgroup, k: Subgroup, l: Subgroup):
        self.ambient = ambient
        self.k = k
        self.l = l
        self._hash = None

    @property
    def group(self):
        return self.ambient.parent

    @property
    def order(self) -> int:
        return self.k.order // self.l.order

    def __eq__(self, other):
        return (isinstance(other, NormalFactor)
                and self.ambient.parent is other.ambient.parent
                and self.ambient.members == other.ambient.members
                and self.k.members == other.k.members
                and self.l.members == other.l.members)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ambient.parent), self.ambient.members,
                               self.k.members, self.l.members))
        return self._hash

    def __repr__(self):
        return (f"<NormalFactor {self.k.order}/{self.l.order}"
                f" in {self.ambient.parent.name}>")


def make_factor(ambient, k: Subgroup, l: Subgroup) -> NormalFactor:
    """Validated factor handle; requires L < K with both normal."""
    amb = ambient_subgroup(ambient)
    if k.parent is not amb.parent or l.parent is not amb.parent:
        raise DifferentParents("factor pieces in a different group")
    if not is_normal_in(k, amb) or not is_normal_in(l, amb):
        raise NotNormal("factor pieces must be normal in the ambient")
    if not l.members < k.members:
        raise NotStrictlyNested("need L < K")
    return NormalFactor(amb, k, l)


def factor_group(f: NormalFactor) -> tuple[CosetGroup, Homomorphism]:
    """Materialize K/L together with the projection from K."""
    g = f.ambient.parent
    key = ("factor_group", f.k.members, f.l.members)
    cached = g._cache.get(key)
    if cached is None:
        k_grp, embed = subgroup_as_group(f.k)
        q = CosetGroup(g, f.k.members, f.l, f.k.gens,
                       f"{g.name}|{f.k.order}/{f.l.order}")
        proj = Homomorphism(k_grp, q,
                            [q.coset_of[embed(x)] for x in k_grp.elements()],
                            "factor projection")
        cached = (q, proj)
        g._cache[key] = cached
    return cached


def factor_centralizer(f: NormalFactor) -> Subgroup:
    """{g in ambient : [g, k] in L for every k in K}."""
    g = f.ambient.parent
    key = ("factor_centralizer", f.ambient.members, f.k.members, f.l.members)
    cached = g._cache.get(key)
    if cached is None:
        members = factor_centralizer_members(f.ambient, f.k.gens,
                                             f.l.members)
        cached = Subgroup(g, members, None,
                          True if f.ambient.order == g.order else None)
        g._cache[key] = cached
    return cached


def is_abelian_factor(f: NormalFactor) -> bool:
    """True iff [K, K] <= L, i.e. the factor group is abelian.

    Generator pairs suffice: the images of generators of K generate K/L.
    """
    g = f.ambient.parent
    return all(g.comm(a, b) in f.l.members
               for a in f.k.gens for b in f.k.gens)


def _same_ambient(f1: NormalFactor, f2: NormalFactor) -> None:
    if (f1.ambient.parent is not f2.ambient.parent
            or f1.ambient.members != f2.ambient.members):
        raise DifferentParents("factors live in different ambient groups")


def are_associated(f1: NormalFactor, f2: NormalFactor) -> bool:
    """K1L2 = K2L1, K1 meet L1L2 = L1, and K2 meet L1L2 = L2."""
    _same_ambient(f1, f2)
    k1l2 = product_of_subgroups(f1.k, f2.l)
    k2l1 = product_of_subgroups(f2.k, f1.l)
    if k1l2 != k2l1:
        return False
    l1l2 = product_of_subgroups(f1.l, f2.l)
    return (f1.k.members & l1l2 == f1.l.members
            and f2.k.members & l1l2 == f2.l.members)


def is_internal_compression(f1: NormalFactor, f2: NormalFactor) -> bool:
    """True iff the coset map K1/L1 -> K2/L2 is an internal compression.

    Direction matters: requires K2 = K1L2 and L1 = K1 meet L2.
    """
    _same_ambient(f1, f2)
    return (f2.k.members == product_of_subgroups(f1.k, f2.l)
            and f1.l.members == f1.k.members & f2.l.members)


def common_compression(f1: NormalFactor, f2: NormalFactor) -> NormalFactor:
    """(K1K2)/(L1L2), an internal compression of both associated inputs."""
    if not are_associated(f1, f2):
        raise NotAssociated("common compression needs associated factors")
    g = f1.ambient.parent
    k = Subgroup(g, product_of_subgroups(f1.k, f2.k),
                 list(dict.fromkeys(list(f1.k.gens) + list(f2.k.gens))))
    l = Subgroup(g, product_of_subgroups(f1.l, f2.l),
                 list(dict.fromkeys(list(f1.l.gens) + list(f2.l.gens))))
    out = NormalFactor(f1.ambient, k, l)
    assert is_internal_compression(f1, out)
    assert is_internal_compression(f2, out)
    return out


def association_graph(ambient, lat: Optional[NormalLattice] = None
                      ) -> tuple[list[NormalFactor], list[tuple[int, int]]]:
    """All chief factors (abelian included) with association edges.

    Returns (vertices, edges); edges are index pairs (i, j), i < j, between
    distinct associated factors.
    """
    amb = ambient_subgroup(ambient)
    if lat is None:
        lat = normal_subgroups(amb)
    verts = chief_factors(amb, lat)
    edges = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if are_associated(verts[i], verts[j]):
                edges.append((i, j))
    return verts, edges


def centralizer_equal(f1: NormalFactor, f2: NormalFactor) -> bool:
    _same_ambient(f1, f2)
    return factor_centralizer(f1).members == factor_centralizer(f2).members


def chief_association_conditions(f1: NormalFactor, f2: NormalFactor) -> tuple:
    """The three equivalent tests for non-abelian chief factors.

    Returns (associated, equal centralizers, product condition); the product
    condition is K1L2 = K2L1 together with K1K2 > L1L2.
    """
    _same_ambient(f1, f2)
    cond1 = are_associated(f1, f2)
    cond2 = centralizer_equal(f1, f2)
    k1l2 = product_of_subgroups(f1.k, f2.l)
    k2l1 = product_of_subgroups(f2.k, f1.l)
    k1k2 = product_of_subgroups(f1.k, f2.k)
    l1l2 = product_of_subgroups(f1.l, f2.l)
    cond3 = k1l2 == k2l1 and l1l2 < k1k2
    return cond1, cond2, cond3
