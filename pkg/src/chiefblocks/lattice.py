"""Normal-subgroup lattices, chief factors and chief series.

Every operation takes either a FiniteGroup or a Subgroup as its ambient; in
the latter case "normal" means normal in that subgroup, which is what the
block-extension machinery needs.
"""

from __future__ import annotations

from typing import Iterator

from .errors import (
    DifferentParents,
    NodeCapExceeded,
    NotNested,
    NotNormal,
    OracleBoundExceeded,
)
from .group import (
    FiniteGroup,
    Subgroup,
    ambient_subgroup,
    close_under_mul,
    conjugacy_classes,
    is_normal_in,
    normal_closure,
    product_of_subgroups,
)

DEFAULT_NODE_CAP = 10_000
_ORACLE_BOUND = 24


class NormalLattice:
    """All subgroups of the ambient that are normal in it.

    Nodes are deduplicated and sorted by (order, member tuple), so node
    indices are deterministic.  The lattice is closed under join (set
    product) and meet (intersection) by construction.
    """

    def __init__(self, ambient: Subgroup, nodes: list[Subgroup]):
        self.ambient = ambient
        self.group = ambient.parent
        self.nodes = nodes
        self._index = {n.members: i for i, n in enumerate(nodes)}
        self._covers: list[tuple[int, int]] | None = None

    def __len__(self):
        return len(self.nodes)

    def index_of(self, s: Subgroup) -> int:
        try:
            return self._index[s.members]
        except KeyError:
            raise KeyError("subgroup is not a lattice node") from None

    def node_with_members(self, members: frozenset) -> Subgroup:
        return self.nodes[self._index[members]]

    def contains_members(self, members: frozenset) -> bool:
        return members in self._index

    def leq(self, i: int, j: int) -> bool:
        return self.nodes[i].members <= self.nodes[j].members

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j) with node i covered by node j."""
        if self._covers is None:
            edges = []
            n = len(self.nodes)
            for i in range(n):
                mi = self.nodes[i].members
                for j in range(n):
                    if i == j:
                        continue
                    mj = self.nodes[j].members
                    if not (mi < mj):
                        continue
                    if any(k != i and k != j
                           and mi < self.nodes[k].members < mj
                           for k in range(n)):
                        continue
                    edges.append((i, j))
            self._covers = sorted(edges)
        return self._covers

    def minimal_nodes_over(self, members: frozenset) -> list[Subgroup]:
        """Nodes covering the given node in the lattice order."""
        above = [n for n in self.nodes if members < n.members]
        out = []
        for n in above:
            if not any(members < m.members < n.members for m in above):
                out.append(n)
        return out

    def between(self, lower: frozenset, upper: frozenset) -> list[Subgroup]:
        return [n for n in self.nodes
                if lower <= n.members and n.members <= upper]


def normal_subgroups(ambient, node_cap: int = DEFAULT_NODE_CAP
                     ) -> NormalLattice:
    """Enumerate the normal subgroups of the ambient.

    Atoms are the normal closures of conjugacy-class representatives; every
    normal subgroup is the join of the cyclic normal closures of its
    elements, so closing the atoms under pairwise join is complete.  The
    completeness is cross-checked against brute-force enumeration in the
    test-suite oracle for small orders.
    """
    amb = ambient_subgroup(ambient)
    g = amb.parent
    key = ("lattice", amb.members, node_cap)
    cached = g._cache.get(key)
    if cached is not None:
        return cached

    atoms: dict[frozenset, Subgroup] = {}
    for cls in conjugacy_classes(amb):
        rep = cls[0]
        if rep == 0:
            continue
        sub = normal_closure(amb, [rep])
        atoms.setdefault(sub.members, sub)

    trivial = Subgroup(g, frozenset((0,)), [], True)
    nodes: dict[frozenset, Subgroup] = {trivial.members: trivial}
    for s in atoms.values():
        nodes.setdefault(s.members, s)
    worklist = list(nodes.values())
    while worklist:
        a = worklist.pop()
        for b in list(nodes.values()):
            j = product_of_subgroups(a, b)
            if j not in nodes:
                if len(nodes) >= node_cap:
                    raise NodeCapExceeded(
                        f"normal lattice exceeded node cap {node_cap}")
                s = Subgroup(g, j, None,
                             True if amb.order == g.order else None)
                nodes[j] = s
                worklist.append(s)

    if amb.members not in nodes:
        nodes[amb.members] = amb
    ordered = sorted(nodes.values(),
                     key=lambda s: (s.order, s.sorted_members()))
    lat = NormalLattice(amb, ordered)
    g._cache[key] = lat
    return lat


def join(n: Subgroup, m: Subgroup) -> Subgroup:
    """Join of two normal subgroups: their set product."""
    if n.parent is not m.parent:
        raise DifferentParents("join operands in different groups")
    members = product_of_subgroups(n, m)
    return Subgroup(n.parent, members,
                    list(dict.fromkeys(list(n.gens) + list(m.gens))))


def meet(n: Subgroup, m: Subgroup) -> Subgroup:
    if n.parent is not m.parent:
        raise DifferentParents("meet operands in different groups")
    return Subgroup(n.parent, n.members & m.members)


def is_chief_factor(ambient, k: Subgroup, l: Subgroup,
                    lat: NormalLattice | None = None) -> bool:
    """True iff no normal subgroup of the ambient sits strictly between."""
    amb = ambient_subgroup(ambient)
    if not is_normal_in(k, amb) or not is_normal_in(l, amb):
        raise NotNormal("chief-factor test needs normal subgroups")
    if not l.members < k.members:
        raise NotNested("need L < K")
    if lat is None:
        lat = normal_subgroups(amb)
    return not any(l.members < n.members < k.members for n in lat.nodes)


def chief_factors(ambient, lat: NormalLattice | None = None) -> list:
    """Covering pairs of the lattice, as NormalFactor values."""
    from .factors import NormalFactor

    amb = ambient_subgroup(ambient)
    if lat is None:
        lat = normal_subgroups(amb)
    return [NormalFactor(amb, lat.nodes[j], lat.nodes[i])
            for i, j in lat.covers()]


def chief_series_iter(ambient, max_series: int | None = None,
                      lat: NormalLattice | None = None
                      ) -> Iterator[list[Subgroup]]:
    """Maximal chains of the lattice from the trivial node to the ambient."""
    amb = ambient_subgroup(ambient)
    if lat is None:
        lat = normal_subgroups(amb)
    up: dict[int, list[int]] = {}
    for i, j in lat.covers():
        up.setdefault(i, []).append(j)
    bottom = lat.index_of(amb.parent.trivial_subgroup())
    top = lat.index_of(amb) if lat.contains_members(amb.members) else None
    count = 0

    def walk(chain: list[int]) -> Iterator[list[Subgroup]]:
        nonlocal count
        if max_series is not None and count >= max_series:
            return
        last = chain[-1]
        if last == top:
            count += 1
            yield [lat.nodes[i] for i in chain]
            return
        for nxt in sorted(up.get(last, ())):
            yield from walk(chain + [nxt])

    yield from walk([bottom])


def socle(ambient, lat: NormalLattice | None = None) -> Subgroup:
    """Join of the minimal normal subgroups (trivial when there are none)."""
    amb = ambient_subgroup(ambient)
    if lat is None:
        lat = normal_subgroups(amb)
    atoms = lat.minimal_nodes_over(frozenset((0,)))
    if not atoms:
        return amb.parent.trivial_subgroup()
    out = atoms[0]
    for a in atoms[1:]:
        out = join(out, a)
    return out


def is_monolithic(ambient, lat: NormalLattice | None = None) -> bool:
    """Exactly one minimal normal subgroup."""
    amb = ambient_subgroup(ambient)
    if lat is None:
        lat = normal_subgroups(amb)
    return len(lat.minimal_nodes_over(frozenset((0,)))) == 1


def oracle_all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of g, by exhaustive closure of element subsets.

    Test oracle with a hard order bound: starting from the trivial subgroup,
    repeatedly extend each known subgroup by one new element and close.  Each
    subgroup is generated by some finite set, so adding generators one at a
    time reaches all of them; closure sizes divide the group order, which
    keeps the walk short.
    """
    if g.order > _ORACLE_BOUND:
        raise OracleBoundExceeded(
            f"oracle handles orders up to {_ORACLE_BOUND}, got {g.order}")
    seen: dict[frozenset, list[int]] = {frozenset((0,)): []}
    worklist = [(frozenset((0,)), [])]
    while worklist:
        members, gens = worklist.pop()
        for x in g.elements():
            if x in members:
                continue
            new_gens = gens + [x]
            closed = close_under_mul(g, [x], members, gens)
            if closed not in seen:
                seen[closed] = new_gens
                worklist.append((closed, new_gens))
    return [Subgroup(g, m, gs) for m, gs in
            sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]


def oracle_normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Brute-force normal subgroups: the oracle list filtered by normality."""
    whole = g.whole()
    return [s for s in oracle_all_subgroups(g) if is_normal_in(s, whole)]


def jordan_holder_length(ambient) -> int:
    """Common length of all chief series (asserted equal in the tests)."""
    lengths = {len(s) - 1 for s in chief_series_iter(ambient)}
    if len(lengths) != 1:
        raise AssertionError(f"chief series of unequal lengths: {lengths}")
    return lengths.pop()
