"""Finite groups with integer element ids.

Elements of a group of order n are the ids 0..n-1, with id 0 always the
identity.  Two elements of the same group are equal iff their ids are equal,
and ids are stable for the lifetime of the group.  Concrete constructions
(permutation closure, direct and semidirect products, quotients) are
subclasses that implement multiplication on ids; groups built from
permutations also expose the underlying permutation of each element.

All objects here are immutable after construction, so concurrent read-only
use is safe.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from . import perm as _perm
from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    CapExceeded,
    DifferentParents,
    HomomorphismError,
    InternalCheckError,
    NotNormal,
)

DEFAULT_ELEMENT_CAP = 30_000

# Full Cayley tables are precomputed below this order; above it, products are
# computed per call from the construction data.
_MUL_TABLE_BOUND = 512

# Pairwise commutators are enumerated over all element pairs below this
# product of orders; larger inputs use generator commutators plus closure.
_COMMUTATOR_PAIR_BOUND = 40_000


class FiniteGroup:
    """Base class for an explicitly enumerated finite group."""

    def __init__(self, name: str, order: int, generators: Sequence[int],
                 provenance: str):
        self.name = name
        self.order = order
        self.generators = [g for g in generators if g != 0]
        self.provenance = provenance
        self._inv: list[Optional[int]] = [None] * order
        self._inv[0] = 0
        self._elt_order: list[Optional[int]] = [None] * order
        self._elt_order[0] = 1
        self._cache: dict = {}
        self._table: Optional[list[int]] = None
        if order <= _MUL_TABLE_BOUND:
            mul = self._mul_impl
            self._table = [
                mul(a, b) for a in range(order) for b in range(order)
            ]

    # -- construction hooks --------------------------------------------------

    def _mul_impl(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _inv_impl(self, a: int) -> int:
        # Fallback: a^(k-1) where k is the order of a.
        x, last = a, 0
        while x != 0:
            last, x = x, self.mul(x, a)
        return last

    def element_repr(self, a: int) -> str:
        return str(a)

    # -- core operations -----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        t = self._table
        if t is not None:
            return t[a * self.order + b]
        return self._mul_impl(a, b)

    def inv(self, a: int) -> int:
        r = self._inv[a]
        if r is None:
            r = self._inv_impl(a)
            self._inv[a] = r
        return r

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a b a^-1 b^-1."""
        return self.mul(self.mul(a, b), self.inv(self.mul(b, a)))

    def element_order(self, a: int) -> int:
        r = self._elt_order[a]
        if r is None:
            x, r = a, 1
            while x != 0:
                x = self.mul(x, a)
                r += 1
            self._elt_order[a] = r
        return r

    def elements(self) -> range:
        return range(self.order)

    # -- convenience ---------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        cached = self._cache.get("abelian")
        if cached is None:
            gens = self.generators
            cached = all(
                self.mul(a, b) == self.mul(b, a)
                for a in gens for b in gens
            )
            self._cache["abelian"] = cached
        return cached

    def subgroup(self, members: Iterable[int], gens: Sequence[int] | None = None,
                 is_normal: Optional[bool] = None) -> "Subgroup":
        return Subgroup(self, frozenset(members), gens, is_normal)

    def whole(self) -> "Subgroup":
        s = self._cache.get("whole")
        if s is None:
            s = Subgroup(self, frozenset(range(self.order)),
                         self.generators or [0], True)
            self._cache["whole"] = s
        return s

    def trivial_subgroup(self) -> "Subgroup":
        s = self._cache.get("trivial")
        if s is None:
            s = Subgroup(self, frozenset((0,)), [], True)
            self._cache["trivial"] = s
        return s

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} order={self.order}>"


def ambient_subgroup(g) -> "Subgroup":
    """Coerce a FiniteGroup or Subgroup into a Subgroup context."""
    if isinstance(g, Subgroup):
        return g
    return g.whole()


class Subgroup:
    """A membership-queryable subset of a FiniteGroup closed under products.

    ``is_normal`` records verified normality in the *parent group* (None when
    unknown).  Closure under multiplication and inverses is the caller's
    responsibility; constructors in this module only hand out genuine
    subgroups.
    """

    __slots__ = ("parent", "members", "_gens", "is_normal", "_hash")

    def __init__(self, parent: FiniteGroup, members: frozenset,
                 gens: Sequence[int] | None = None,
                 is_normal: Optional[bool] = None):
        self.parent = parent
        self.members = members
        self._gens = tuple(gens) if gens is not None else None
        self.is_normal = is_normal
        self._hash = None

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def gens(self) -> tuple:
        if self._gens is None:
            self._gens = generating_ids(self.parent, self.members)
        return self._gens

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.parent), self.members))
        return self._hash

    def sorted_members(self) -> tuple:
        return tuple(sorted(self.members))

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent.name}>"


class Homomorphism:
    """A total id-to-id map between finite groups."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup,
                 mapping: Sequence[int], name: str = ""):
        if len(mapping) != source.order:
            raise HomomorphismError("mapping length differs from source order")
        self.source = source
        self.target = target
        self.mapping = list(mapping)
        self.name = name

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def validate(self) -> "Homomorphism":
        """Exhaustively verify the homomorphism property.

        Checking f(x*g) = f(x)*f(g) over all x and generators g suffices:
        multiplicativity on words in the generators follows by induction.
        """
        if self.mapping[0] != 0:
            raise HomomorphismError("identity does not map to identity")
        src, tgt, f = self.source, self.target, self.mapping
        for g in src.generators:
            fg = f[g]
            for x in src.elements():
                if f[src.mul(x, g)] != tgt.mul(f[x], fg):
                    raise HomomorphismError(
                        f"map is not multiplicative at x={x}, g={g}")
        return self

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order

    def image(self) -> Subgroup:
        return self.target.subgroup(set(self.mapping),
                                    gens=_dedup_nonidentity(
                                        self.mapping[g] for g in
                                        (self.source.generators or [])))

    def kernel(self) -> Subgroup:
        members = frozenset(a for a, fa in enumerate(self.mapping) if fa == 0)
        return Subgroup(self.source, members, None, True)

    def preimage(self, members: frozenset) -> frozenset:
        return frozenset(a for a, fa in enumerate(self.mapping)
                         if fa in members)

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self o inner."""
        if inner.target is not self.source:
            raise DifferentParents("composition endpoints do not match")
        return Homomorphism(inner.source, self.target,
                            [self.mapping[x] for x in inner.mapping])

    def __repr__(self):
        return (f"<Homomorphism {self.name or ''} {self.source.name}"
                f" -> {self.target.name}>")


def _dedup_nonidentity(ids) -> list[int]:
    seen, out = set(), []
    for i in ids:
        if i != 0 and i not in seen:
            seen.add(i)
            out.append(i)
    return out


# ---------------------------------------------------------------------------
# concrete constructions
# ---------------------------------------------------------------------------

class PermGroup(FiniteGroup):
    """Group of permutations on n points, enumerated by breadth-first closure."""

    def __init__(self, perms: list, index: dict, n_points: int,
                 generators: Sequence[int], name: str):
        self.perms = perms
        self._index = index
        self.n_points = n_points
        super().__init__(name, len(perms), generators, "perm")

    def _mul_impl(self, a: int, b: int) -> int:
        return self._index[_perm.compose(self.perms[a], self.perms[b])]

    def _inv_impl(self, a: int) -> int:
        return self._index[_perm.invert(self.perms[a])]

    def permutation_of(self, a: int):
        return self.perms[a]

    def element_repr(self, a: int) -> str:
        return _perm.cycle_notation(self.perms[a])


def group_from_permutations(generators: Iterable, n_points: int | None = None,
                            cap: int = DEFAULT_ELEMENT_CAP,
                            name: str = "perm") -> PermGroup:
    """Close a set of permutations under composition.

    The element table is discovered breadth-first from the identity, so ids
    are deterministic for a fixed generator list.  Raises CapExceeded when
    the closure grows past ``cap``.
    """
    if cap < 1:
        raise CapExceeded("cap must be at least 1")
    gen_perms = [tuple(int(x) for x in g) for g in generators]
    if n_points is None:
        n_points = max((len(g) for g in gen_perms), default=1)
    gen_perms = [_perm.check_perm(g, n_points) for g in gen_perms]

    ident = _perm.identity_perm(n_points)
    perms = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gen_perms:
                q = _perm.compose(p, g)
                if q not in index:
                    if len(perms) >= cap:
                        raise CapExceeded(
                            f"closure exceeded element cap {cap}")
                    index[q] = len(perms)
                    perms.append(q)
                    nxt.append(q)
        frontier = nxt
    gen_ids = _dedup_nonidentity(index[g] for g in gen_perms)
    return PermGroup(perms, index, n_points, gen_ids, name)


class DirectProductGroup(FiniteGroup):
    """Cartesian product with componentwise multiplication.

    Element (a, b) has id a*|H| + b; both coordinate embeddings are recorded
    as homomorphisms in ``embed_left`` / ``embed_right``.
    """

    def __init__(self, left: FiniteGroup, right: FiniteGroup,
                 cap: int = DEFAULT_ELEMENT_CAP, name: str | None = None):
        order = left.order * right.order
        if order > cap:
            raise CapExceeded(
                f"direct product order {order} exceeds cap {cap}")
        self.left = left
        self.right = right
        self._r = right.order
        gens = ([g * self._r for g in left.generators]
                + list(right.generators))
        super().__init__(name or f"{left.name}x{right.name}", order, gens,
                         "direct")
        self.embed_left = Homomorphism(
            left, self, [a * self._r for a in left.elements()], "embed_left")
        self.embed_right = Homomorphism(
            right, self, list(right.elements()), "embed_right")
        self.left_factor = self.subgroup(
            set(self.embed_left.mapping),
            gens=_dedup_nonidentity(self.embed_left.mapping[g]
                                    for g in left.generators),
            is_normal=True)
        self.right_factor = self.subgroup(
            set(self.embed_right.mapping),
            gens=_dedup_nonidentity(self.embed_right.mapping[g]
                                    for g in right.generators),
            is_normal=True)

    def split(self, a: int) -> tuple:
        return divmod(a, self._r)

    def _mul_impl(self, a: int, b: int) -> int:
        r = self._r
        a1, a2 = divmod(a, r)
        b1, b2 = divmod(b, r)
        return self.left.mul(a1, b1) * r + self.right.mul(a2, b2)

    def _inv_impl(self, a: int) -> int:
        a1, a2 = divmod(a, self._r)
        return self.left.inv(a1) * self._r + self.right.inv(a2)

    def element_repr(self, a: int) -> str:
        a1, a2 = divmod(a, self._r)
        return f"({self.left.element_repr(a1)},{self.right.element_repr(a2)})"


def direct_product(g: FiniteGroup, h: FiniteGroup,
                   cap: int = DEFAULT_ELEMENT_CAP,
                   name: str | None = None) -> DirectProductGroup:
    return DirectProductGroup(g, h, cap, name)


class SemidirectProductGroup(FiniteGroup):
    """Split extension base x| top for an explicit automorphism action.

    ``action[h]`` is the image table of the automorphism by which top element
    h acts on the base; tables are verified to be automorphisms and the
    assignment to be multiplicative before the group is built.
    """

    def __init__(self, base: FiniteGroup, top: FiniteGroup,
                 action: Sequence[Sequence[int]],
                 cap: int = DEFAULT_ELEMENT_CAP, name: str | None = None):
        order = base.order * top.order
        if order > cap:
            raise CapExceeded(
                f"semidirect product order {order} exceeds cap {cap}")
        _check_action(base, top, action)
        self.base = base
        self.top = top
        self.action = [list(t) for t in action]
        self._t = top.order
        gens = ([n * self._t for n in base.generators]
                + list(top.generators))
        super().__init__(name or f"{base.name}:{top.name}", order, gens,
                         "semidirect")
        self.embed_base = Homomorphism(
            base, self, [n * self._t for n in base.elements()], "embed_base")
        self.embed_top = Homomorphism(
            top, self, list(top.elements()), "embed_top")
        self.base_part = self.subgroup(
            set(self.embed_base.mapping),
            gens=_dedup_nonidentity(self.embed_base.mapping[g]
                                    for g in base.generators),
            is_normal=True)
        self.top_part = self.subgroup(
            set(self.embed_top.mapping),
            gens=_dedup_nonidentity(self.embed_top.mapping[g]
                                    for g in top.generators))

    def split(self, a: int) -> tuple:
        return divmod(a, self._t)

    def _mul_impl(self, a: int, b: int) -> int:
        t = self._t
        n1, h1 = divmod(a, t)
        n2, h2 = divmod(b, t)
        return (self.base.mul(n1, self.action[h1][n2]) * t
                + self.top.mul(h1, h2))

    def _inv_impl(self, a: int) -> int:
        n, h = divmod(a, self._t)
        hi = self.top.inv(h)
        return self.action[hi][self.base.inv(n)] * self._t + hi

    def element_repr(self, a: int) -> str:
        n, h = divmod(a, self._t)
        return f"({self.base.element_repr(n)};{self.top.element_repr(h)})"


def _check_action(base: FiniteGroup, top: FiniteGroup, action) -> None:
    if len(action) != top.order:
        raise ActionNotHomomorphism(
            "action must supply one table per acting element")
    n = base.order
    gens = base.generators or []
    for h, table in enumerate(action):
        if len(table) != n or len(set(table)) != n:
            raise ActionNotAutomorphism(
                f"table for element {h} is not a bijection of the base")
        if table[0] != 0:
            raise ActionNotAutomorphism(
                f"table for element {h} moves the identity")
        # Multiplicativity on (x, g) for generators g extends to all pairs.
        for g in gens:
            tg = table[g]
            for x in base.elements():
                if table[base.mul(x, g)] != base.mul(table[x], tg):
                    raise ActionNotAutomorphism(
                        f"table for element {h} is not multiplicative")
    ident = action[0]
    if any(ident[g] != g for g in gens):
        raise ActionNotHomomorphism("identity must act trivially")
    for h1 in top.elements():
        t1 = action[h1]
        for h2 in top.elements():
            t2 = action[h2]
            t12 = action[top.mul(h1, h2)]
            # Two automorphisms agreeing on generators are equal.
            if any(t12[g] != t1[t2[g]] for g in gens):
                raise ActionNotHomomorphism(
                    f"action is not multiplicative at ({h1}, {h2})")


def semidirect_product(base: FiniteGroup, top: FiniteGroup,
                       action: Sequence[Sequence[int]],
                       cap: int = DEFAULT_ELEMENT_CAP,
                       name: str | None = None) -> SemidirectProductGroup:
    return SemidirectProductGroup(base, top, action, cap, name)


class CosetGroup(FiniteGroup):
    """Quotient of a subgroup K of a parent group by a normal subgroup L <= K.

    Elements are cosets of L with representatives in K; coset 0 is L itself.
    Multiplication lifts to representatives and projects back.
    """

    def __init__(self, parent: FiniteGroup, k_members: frozenset,
                 l_sub: Subgroup, k_gens: Sequence[int], name: str):
        ordered = sorted(k_members)
        self.parent_group = parent
        reps: list[int] = []
        if len(k_members) == parent.order:
            coset_of: list | dict = [-1] * parent.order

            def assigned(x):
                return coset_of[x] >= 0
        else:
            coset_of = {}

            def assigned(x):
                return x in coset_of
        lmem = l_sub.members
        for m in ordered:
            if assigned(m):
                continue
            idx = len(reps)
            reps.append(m)
            for l in lmem:
                coset_of[parent.mul(m, l)] = idx
        self.reps = reps
        self.coset_of = coset_of
        gens = _dedup_nonidentity(coset_of[g] for g in k_gens)
        super().__init__(name, len(reps), gens, "quotient")

    def _mul_impl(self, a: int, b: int) -> int:
        p = self.parent_group
        return self.coset_of[p.mul(self.reps[a], self.reps[b])]

    def _inv_impl(self, a: int) -> int:
        return self.coset_of[self.parent_group.inv(self.reps[a])]

    def project(self, parent_id: int) -> int:
        return self.coset_of[parent_id]

    def element_repr(self, a: int) -> str:
        return f"[{self.parent_group.element_repr(self.reps[a])}]"


def quotient(g: FiniteGroup, n: Subgroup) -> tuple:
    """Quotient of g by a normal subgroup; returns (group, projection)."""
    if n.parent is not g:
        raise DifferentParents("kernel lives in a different group")
    if not is_normal_in(n, g.whole()):
        raise NotNormal("quotient kernel is not normal")
    q = CosetGroup(g, frozenset(range(g.order)), n, g.generators or [0],
                   f"{g.name}/{n.order}")
    proj = Homomorphism(g, q, q.coset_of, "projection")
    return q, proj


def subgroup_as_group(s: Subgroup) -> tuple:
    """Materialize a subgroup as its own FiniteGroup.

    Returns (group, embedding) where the embedding maps the new ids back into
    the parent group.
    """
    key = ("as_group", s.members)
    cached = s.parent._cache.get(key)
    if cached is None:
        grp = CosetGroup(s.parent, s.members, s.parent.trivial_subgroup(),
                         s.gens, f"{s.parent.name}|{s.order}")
        embed = Homomorphism(grp, s.parent, grp.reps, "embed")
        cached = (grp, embed)
        s.parent._cache[key] = cached
    return cached


# ---------------------------------------------------------------------------
# closures and subgroup operations
# ---------------------------------------------------------------------------

def close_under_mul(g: FiniteGroup, seed: Iterable[int],
                    known: frozenset | None = None,
                    known_gens: Sequence[int] = ()) -> frozenset:
    """Smallest subgroup containing ``known`` (already closed) and ``seed``.

    Standard breadth-first closure; elements already in ``known`` are only
    multiplied by the new generators, which keeps repeated extension calls
    near-linear in the final order.
    """
    new_gens = _dedup_nonidentity(seed)
    if known is None:
        known = frozenset((0,))
        known_gens = ()
    if not new_gens:
        return known
    gens = list(known_gens) + new_gens
    result = set(known)
    frontier = []
    for x in known:
        for s in new_gens:
            y = g.mul(x, s)
            if y not in result:
                result.add(y)
                frontier.append(y)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in result:
                    result.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(result)


def subgroup_generated(g: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of g containing the seed ids."""
    seed = list(seed)
    members = close_under_mul(g, seed)
    return Subgroup(g, members, _dedup_nonidentity(seed))


def generating_ids(g: FiniteGroup, members: frozenset) -> tuple:
    """A small generating list for a known subgroup, chosen greedily."""
    gens: list[int] = []
    closed = frozenset((0,))
    for m in sorted(members):
        if m not in closed:
            closed = close_under_mul(g, [m], closed, gens)
            gens.append(m)
            if len(closed) == len(members):
                break
    return tuple(gens)


def normal_closure(ambient, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed that is normal in the ambient.

    The ambient may be a FiniteGroup or a Subgroup.  Generator conjugates are
    folded in until the closure is conjugation-stable; each fold at least
    doubles the subgroup, so few passes are needed.
    """
    amb = ambient_subgroup(ambient)
    g = amb.parent
    gens = _dedup_nonidentity(seed)
    members = close_under_mul(g, gens)
    amb_gens = amb.gens
    i = 0
    while i < len(gens):
        s = gens[i]
        i += 1
        for h in amb_gens:
            c = g.conj(h, s)
            if c not in members:
                members = close_under_mul(g, [c], members, gens)
                gens.append(c)
    return Subgroup(g, members, gens,
                    True if len(amb.members) == g.order else None)


def is_normal_in(s: Subgroup, ambient) -> bool:
    amb = ambient_subgroup(ambient)
    g = s.parent
    if amb.parent is not g:
        raise DifferentParents("subgroup and ambient have different parents")
    whole = len(amb.members) == g.order
    if whole and s.is_normal is not None:
        return s.is_normal
    if not s.members <= amb.members:
        return False
    ok = all(g.conj(h, x) in s.members
             for h in amb.gens for x in s.gens)
    if whole and ok:
        s.is_normal = True
    return ok


def centralizer_subgroup(g_or_ambient, s: Iterable[int]) -> Subgroup:
    """Elements of the ambient commuting with every element of s.

    It suffices to test commutation against a generating set of <s>, because
    the centralizer of a set equals the centralizer of the subgroup it
    generates.
    """
    amb = ambient_subgroup(g_or_ambient)
    g = amb.parent
    s = list(s)
    targets = _dedup_nonidentity(s) or []
    members = frozenset(
        x for x in _iter_ambient(amb)
        if all(g.mul(x, t) == g.mul(t, x) for t in targets)
    )
    return Subgroup(g, members)


def center(g: FiniteGroup) -> Subgroup:
    z = g._cache.get("center")
    if z is None:
        z = centralizer_subgroup(g, g.generators)
        z.is_normal = True
        g._cache["center"] = z
    return z


def _iter_ambient(amb: Subgroup):
    if len(amb.members) == amb.parent.order:
        return amb.parent.elements()
    return sorted(amb.members)


def factor_centralizer_members(ambient, k_gens: Sequence[int],
                               l_members: frozenset) -> frozenset:
    """{g in ambient : [g, k] in L for all k in K}.

    Testing generators of K only is enough: for fixed g the set
    {k in K : [g,k] in L} is a subgroup of K whenever L is normal, so if it
    contains a generating set it is all of K.
    """
    amb = ambient_subgroup(ambient)
    g = amb.parent
    out = []
    for x in _iter_ambient(amb):
        xi = g.inv(x)
        ok = True
        for k in k_gens:
            c = g.mul(g.mul(x, k), g.mul(xi, g.inv(k)))
            if c not in l_members:
                ok = False
                break
        if ok:
            out.append(x)
    return frozenset(out)


def product_of_subgroups(a: Subgroup, b: Subgroup) -> frozenset:
    """Element set of the product AB for subgroups with AB = BA.

    The result is accumulated as a union of left cosets of the larger factor,
    so the cost is one multiplication per product element.
    """
    if a.parent is not b.parent:
        raise DifferentParents("factors live in different groups")
    g = a.parent
    if a.order < b.order:
        small, big = a, b
    else:
        small, big = b, a
        # AB = BA is assumed, so accumulating cosets of the big side from the
        # small side is still the same element set.
    result = set(big.members)
    bigm = big.members
    for x in sorted(small.members):
        if x not in result:
            result.update(g.mul(x, m) for m in bigm)
    return frozenset(result)


def conjugate_members(g: FiniteGroup, x: int, members: Iterable[int]) -> frozenset:
    xi = g.inv(x)
    return frozenset(g.mul(g.mul(x, m), xi) for m in members)


def conjugacy_classes(ambient) -> list[list[int]]:
    """Orbits of the conjugation action of the ambient on itself.

    Classes are returned sorted by least member, so the identity's singleton
    class always comes first.
    """
    amb = ambient_subgroup(ambient)
    g = amb.parent
    key = ("classes", amb.members)
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    gens = amb.gens
    gen_invs = [g.inv(h) for h in gens]
    seen = set()
    classes = []
    for start in _iter_ambient(amb):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for h, hi in zip(gens, gen_invs):
                    y = g.mul(g.mul(h, x), hi)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda c: c[0])
    g._cache[key] = classes
    return classes


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup,
                        method: str = "auto") -> Subgroup:
    """Subgroup generated by all commutators [x, y], x in A, y in B.

    ``method`` selects between enumerating every element pair ("pairs"),
    taking generator commutators and closing under conjugation inside <A, B>
    ("generators"), or choosing by input size ("auto").  Both routes compute
    the same subgroup; the generator route relies on [A,B] being normal in
    <A, B> and generated by the normal closure of generator commutators.
    """
    if a.parent is not g or b.parent is not g:
        raise DifferentParents("operands live in different groups")
    if method == "auto":
        method = ("pairs" if a.order * b.order <= _COMMUTATOR_PAIR_BOUND
                  else "generators")
    if method == "pairs":
        comms = {g.comm(x, y) for x in a.members for y in b.members}
        return Subgroup(g, close_under_mul(g, sorted(comms)))
    if method != "generators":
        raise ValueError(f"unknown commutator method: {method}")
    span = Subgroup(g, close_under_mul(g, list(a.gens) + list(b.gens)),
                    list(a.gens) + list(b.gens))
    seed = sorted({g.comm(x, y) for x in a.gens for y in b.gens})
    return Subgroup(g, normal_closure(span, seed).members)


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    d = g._cache.get("derived")
    if d is None:
        w = g.whole()
        d = commutator_subgroup(g, w, w)
        d.is_normal = True
        g._cache["derived"] = d
    return d


def is_perfect(g: FiniteGroup) -> bool:
    return derived_subgroup(g).order == g.order


# ---------------------------------------------------------------------------
# structural verification
# ---------------------------------------------------------------------------

_ASSOC_EXHAUSTIVE_BOUND = 60


def verify_group_axioms(g: FiniteGroup, rng=None, samples: int = 2000) -> None:
    """Check identity, inverses, and associativity.

    Identity and inverse laws are checked exhaustively.  Associativity is
    checked over all triples up to order 60 and over seeded random triples
    above that (a full triple sweep is cubic in the order).
    """
    for a in g.elements():
        if g.mul(a, 0) != a or g.mul(0, a) != a:
            raise InternalCheckError(f"identity law fails at {a}")
        ia = g.inv(a)
        if g.mul(a, ia) != 0 or g.mul(ia, a) != 0:
            raise InternalCheckError(f"inverse law fails at {a}")
    n = g.order
    if n <= _ASSOC_EXHAUSTIVE_BOUND:
        triples = itertools.product(range(n), repeat=3)
    else:
        if rng is None:
            import random
            rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(samples))
    for a, b, c in triples:
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
            raise InternalCheckError(
                f"associativity fails at ({a}, {b}, {c})")
