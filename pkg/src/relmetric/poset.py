"""Partial orders as four-valued metric spaces.

A poset is a space over the four-value monoid: 0 on the diagonal, +
strictly below, - strictly above, 1 between incomparable points, and
the translation goes both ways.  On top of the translation this module
provides complete-lattice and chain-completeness detection, gaps (pairs
of subsets with nothing in between, the order-side picture of holes),
the Tarski and Abian-Brown fixed-point solvers, fences, products, and
the retract-of-fence-products demonstration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product as iter_product
from typing import Iterable, Mapping, Sequence

from .errors import CapError, HypothesisError, InputError, InternalCheckError
from .relsys import OLRResult, SelfMap
from .vmetric import PRODUCT_CAP, RadiusMap, TableMonoid, VSpace, v4_monoid
from .words import check_word

GAP_CAP = 8


@dataclass(frozen=True)
class Gap:
    """Two subsets with every lower element below every upper element
    and no point lying between them."""

    lower: tuple[str, ...]
    upper: tuple[str, ...]


@dataclass(frozen=True)
class Poset:
    """A finite strict order, transitively closed."""

    elements: tuple[str, ...]
    lt: frozenset[tuple[str, str]]

    @staticmethod
    def make(elements, pairs: Iterable[tuple[str, str]]) -> "Poset":
        els = tuple(sorted(set(elements)))
        if not els:
            raise InputError("a poset needs at least one element")
        for x in els:
            if not isinstance(x, str) or not x or "," in x:
                raise InputError("element names must be nonempty and comma-free")
        idx = {x: i for i, x in enumerate(els)}
        n = len(els)
        rel = [[False] * n for _ in range(n)]
        for x, y in pairs:
            if x not in idx or y not in idx:
                raise InputError(f"order pair ({x!r}, {y!r}) leaves the elements")
            rel[idx[x]][idx[y]] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        for i in range(n):
            if rel[i][i]:
                raise InputError(f"order cycle through {els[i]!r}")
        closed = frozenset(
            (els[i], els[j]) for i in range(n) for j in range(n) if rel[i][j]
        )
        return Poset(els, closed)

    def _check(self, x: str) -> str:
        if x not in self._members:
            raise InputError(f"unknown element {x!r}")
        return x

    @cached_property
    def _members(self) -> frozenset[str]:
        return frozenset(self.elements)

    def _check_subset(self, subset) -> frozenset[str]:
        a = frozenset(subset)
        unknown = a - self._members
        if unknown:
            raise InputError(f"unknown elements {sorted(unknown)}")
        return a

    def leq(self, x: str, y: str) -> bool:
        self._check(x), self._check(y)
        return x == y or (x, y) in self.lt

    def covers(self) -> tuple[tuple[str, str], ...]:
        """The covering pairs: x < y with nothing strictly between."""
        out = []
        for x, y in sorted(self.lt):
            if not any(
                (x, z) in self.lt and (z, y) in self.lt for z in self.elements
            ):
                out.append((x, y))
        return tuple(out)

    # ----------------------------------------------------------- bounds

    def upper_bounds(self, subset) -> tuple[str, ...]:
        a = self._check_subset(subset)
        return tuple(z for z in self.elements if all(self.leq(x, z) for x in a))

    def lower_bounds(self, subset) -> tuple[str, ...]:
        a = self._check_subset(subset)
        return tuple(z for z in self.elements if all(self.leq(z, x) for x in a))

    def sup(self, subset) -> str | None:
        ub = self.upper_bounds(subset)
        best = [z for z in ub if all(self.leq(z, w) for w in ub)]
        return best[0] if len(best) == 1 else None

    def inf(self, subset) -> str | None:
        lb = self.lower_bounds(subset)
        best = [z for z in lb if all(self.leq(w, z) for w in lb)]
        return best[0] if len(best) == 1 else None

    @property
    def bottom(self) -> str | None:
        return self.inf(self.elements)

    @property
    def top(self) -> str | None:
        return self.sup(self.elements)

    # ------------------------------------------------------- structure

    def is_complete_lattice(self) -> bool:
        """Finite reduction: top and bottom exist and every pair has a
        join and a meet."""
        if self.bottom is None or self.top is None:
            return False
        return all(
            self.sup([x, y]) is not None and self.inf([x, y]) is not None
            for x, y in combinations(self.elements, 2)
        )

    def is_chain(self, subset) -> bool:
        a = self._check_subset(subset)
        return all(
            self.leq(x, y) or self.leq(y, x) for x, y in combinations(sorted(a), 2)
        )

    def is_chain_complete(self, cap: int = 4096) -> bool:
        """Every nonempty chain has a join and a meet, by enumeration."""
        if 2 ** len(self.elements) > cap:
            raise CapError(f"chain enumeration over {len(self.elements)} elements")
        for size in range(1, len(self.elements) + 1):
            for combo in combinations(self.elements, size):
                if self.is_chain(combo):
                    if self.sup(combo) is None or self.inf(combo) is None:
                        return False
        return True

    def restrict(self, subset) -> "Poset":
        a = self._check_subset(subset)
        if not a:
            raise InputError("cannot restrict to the empty set")
        return Poset(
            tuple(sorted(a)),
            frozenset(p for p in self.lt if p[0] in a and p[1] in a),
        )

    def is_order_preserving(self, mapping: Mapping) -> bool:
        if set(mapping) != self._members:
            raise InputError("the map must be defined exactly on the elements")
        for x in mapping.values():
            self._check(x)
        return all(self.leq(mapping[x], mapping[y]) for x, y in self.lt)


def all_posets(names: Sequence[str]):
    """Every strict order on the given labeled points, by scanning the
    subsets of off-diagonal pairs for transitive antisymmetric ones."""
    els = tuple(sorted(names))
    cells = [(x, y) for x in els for y in els if x != y]
    for bits in iter_product((False, True), repeat=len(cells)):
        rel = {c for c, b in zip(cells, bits) if b}
        if any((y, x) in rel for x, y in rel):
            continue
        if any(
            (x, z) not in rel
            for x, y in rel
            for y2, z in rel
            if y2 == y and x != z
        ):
            continue
        yield Poset(els, frozenset(rel))


# ----------------------------------------------------------- the translation


def poset_to_vspace(p: Poset) -> VSpace:
    """0 on the diagonal, + strictly below, - strictly above, 1 between
    incomparable points."""
    dist = {}
    for x in p.elements:
        for y in p.elements:
            if x == y:
                dist[x, y] = "0"
            elif (x, y) in p.lt:
                dist[x, y] = "+"
            elif (y, x) in p.lt:
                dist[x, y] = "-"
            else:
                dist[x, y] = "1"
    return VSpace.make(p.elements, v4_monoid(), dist)


def vspace_to_poset(space: VSpace) -> Poset:
    """Read the strict order back off the + distances."""
    if not isinstance(space.monoid, TableMonoid) or space.monoid != v4_monoid():
        raise InputError("expects a space over the four-value monoid")
    ok, witness = space.check_axioms()
    if not ok:
        raise InputError(f"the distance matrix violates the axioms: {witness}")
    return Poset.make(
        space.elements,
        {
            (x, y)
            for x in space.elements
            for y in space.elements
            if space.d(x, y) == "+"
        },
    )


# ------------------------------------------------------------------- gaps


def is_gap(p: Poset, lower, upper) -> bool:
    """Definitional check: the lower part sits below the upper part and
    no point lies between them."""
    a = p._check_subset(lower)
    b = p._check_subset(upper)
    if not all(p.leq(x, y) for x in a for y in b):
        return False
    return not any(
        all(p.leq(x, z) for x in a) and all(p.leq(z, y) for y in b)
        for z in p.elements
    )


def find_gaps(p: Poset, cap: int = GAP_CAP) -> tuple[Gap, ...]:
    """All gaps of the canonical form (A, upper bounds of A).

    By the reduction behind the no-gap criterion, (A, A^up) fails to be
    a gap exactly when A has a join, so scanning these pairs finds a
    gap whenever any exists; arbitrary pairs are checked by is_gap.
    """
    if len(p.elements) > cap:
        raise CapError(f"gap enumeration over {len(p.elements)} elements (cap {cap})")
    out = []
    for size in range(len(p.elements) + 1):
        for combo in combinations(p.elements, size):
            if p.sup(combo) is None:
                out.append(Gap(tuple(combo), p.upper_bounds(combo)))
    return tuple(out)


def minimal_subgap(p: Poset, gap: Gap) -> Gap:
    """A smallest gap contained in the given one (the finite-character
    witness; the gap itself in the worst case)."""
    if not is_gap(p, gap.lower, gap.upper):
        raise InputError("not a gap")
    candidates = sorted(
        (
            (la + lb, Gap(a, b))
            for la in range(len(gap.lower) + 1)
            for lb in range(len(gap.upper) + 1)
            for a in combinations(gap.lower, la)
            for b in combinations(gap.upper, lb)
        ),
        key=lambda pair: (pair[0], pair[1].lower, pair[1].upper),
    )
    for _, sub in candidates:
        if is_gap(p, sub.lower, sub.upper):
            return sub
    raise InternalCheckError("a gap must contain itself as a subgap")


def has_finite_subgap(p: Poset, gap: Gap) -> bool:
    return minimal_subgap(p, gap) is not None


def gap_hole(p: Poset, gap: Gap) -> RadiusMap:
    """The radius map of a gap on the order space: + on the lower part,
    - on the upper part, 1 elsewhere; its balls have empty intersection
    exactly because nothing lies between the parts."""
    if not is_gap(p, gap.lower, gap.upper):
        raise InputError("not a gap")
    radii = {}
    for x in p.elements:
        if x in gap.lower:
            radii[x] = "+"
        elif x in gap.upper:
            radii[x] = "-"
        else:
            radii[x] = "1"
    return RadiusMap.make(radii, p.elements)


# ---------------------------------------------------------------- solvers


def _as_selfmap(p: Poset, mapping) -> SelfMap:
    pairs = mapping.pairs if isinstance(mapping, SelfMap) else tuple(
        sorted(dict(mapping).items())
    )
    f = dict(pairs)
    if not p.is_order_preserving(f):
        bad = next((x, y) for x, y in p.lt if not p.leq(f[x], f[y]))
        raise InputError(f"map is not order-preserving at {bad}")
    return SelfMap(pairs)


def tarski_common_fixed_points(p: Poset, maps) -> tuple[str, ...]:
    """Common fixed points of a commuting family of order-preserving
    maps on a complete lattice, routed through the generic solver on
    the relational view and cross-checked against a direct scan."""
    selfmaps = [_as_selfmap(p, f) for f in maps]
    if not p.is_complete_lattice():
        raise HypothesisError("the poset is not a complete lattice")
    for f in selfmaps:
        for g in selfmaps:
            if f.compose(g).pairs != g.compose(f).pairs:
                raise InputError("the maps do not commute")
    rs = poset_to_vspace(p).to_relsys()
    common, _cert = rs.common_fixed_points(selfmaps)
    direct = {
        x
        for x in p.elements
        if all(f(x) == x for f in selfmaps)
    }
    if set(common) != direct or not direct:
        raise InternalCheckError("solver disagrees with the direct scan")
    if not p.restrict(direct).is_complete_lattice():
        raise InternalCheckError("the common fixed set must be a complete lattice")
    return tuple(sorted(direct))


def abian_brown_fixed_point(p: Poset, mapping) -> str:
    """Iterate an order-preserving map from the least element up to the
    least fixed point."""
    f = _as_selfmap(p, mapping)
    if not p.is_chain_complete():
        raise HypothesisError("the poset is not chain complete")
    bottom = p.bottom
    if bottom is None:
        raise HypothesisError("the poset has no least element")
    x = bottom
    for _ in range(len(p.elements) + 1):
        nxt = f(x)
        if nxt == x:
            for y in p.elements:
                if f(y) == y and not p.leq(x, y):
                    raise InternalCheckError(
                        "iteration did not reach the least fixed point"
                    )
            return x
        if not p.leq(x, nxt):
            raise InternalCheckError("the iteration left the increasing chain")
        x = nxt
    raise InternalCheckError("iteration failed to stabilize")


# ------------------------------------------------------ fences and products


def make_fence(orientation: str) -> Poset:
    """The poset of a plus-minus word: vertices v0..vn with vi < vi+1
    on +, vi > vi+1 on -; alternating words give fences, and the empty
    word gives a single point."""
    check_word(orientation)
    n = len(orientation)
    els = [f"v{i}" for i in range(n + 1)]
    pairs = set()
    for i, sign in enumerate(orientation):
        if sign == "+":
            pairs.add((els[i], els[i + 1]))
        else:
            pairs.add((els[i + 1], els[i]))
    return Poset.make(els, pairs)


def poset_product(posets: Sequence[Poset], cap: int = PRODUCT_CAP) -> Poset:
    """Componentwise order; names join the coordinates with '|'."""
    posets = list(posets)
    if not posets:
        raise InputError("a product needs at least one factor")
    size = 1
    for q in posets:
        size *= len(q.elements)
    if size > cap:
        raise CapError(f"product would have {size} elements (cap {cap})")
    combos = list(iter_product(*(q.elements for q in posets)))
    name = {c: "|".join(c) for c in combos}
    pairs = set()
    for c1 in combos:
        for c2 in combos:
            if c1 != c2 and all(
                q.leq(a, b) for q, a, b in zip(posets, c1, c2)
            ):
                pairs.add((name[c1], name[c2]))
    return Poset.make(sorted(name.values()), pairs)


@dataclass(frozen=True, eq=False)
class FenceRetractDemo:
    """Outcome of the retract-of-fence-products demonstration."""

    product: Poset
    sub: Poset
    retraction: tuple[tuple[str, str], ...]
    fixed_points: tuple[str, ...]
    certificate: OLRResult


def fence_product_retract_demo(
    orientations: Sequence[str],
    sub_elements,
    retraction: Mapping,
    maps,
) -> FenceRetractDemo:
    """Check that the claimed retraction exhibits a sub-poset as a
    retract of a product of fences, then solve for common fixed points
    of the supplied commuting order-preserving maps on the retract.

    A verified retract of a product of fences always admits such fixed
    points, so a solver refusal here is an internal failure, not a
    hypothesis failure.
    """
    product = poset_product([make_fence(w) for w in orientations])
    sub_set = product._check_subset(sub_elements)
    if not sub_set:
        raise InputError("the retract must be nonempty")
    sub = product.restrict(sub_set)
    if set(retraction) != set(product.elements):
        raise InputError("the retraction must be defined on the whole product")
    for x, y in retraction.items():
        if y not in sub_set:
            raise InputError(f"retraction sends {x!r} outside the retract")
        if x in sub_set and y != x:
            raise InputError(f"retraction moves the retract element {x!r}")
    for x, y in product.lt:
        if not product.leq(retraction[x], retraction[y]):
            raise InputError(f"retraction claim invalid at ({x!r}, {y!r})")
    selfmaps = [_as_selfmap(sub, f) for f in maps]
    rs = poset_to_vspace(sub).to_relsys()
    try:
        common, cert = rs.common_fixed_points(selfmaps)
    except HypothesisError as exc:
        raise InternalCheckError(
            "a retract of a product of fences must have a normal structure"
        ) from exc
    return FenceRetractDemo(
        product,
        sub,
        tuple(sorted(retraction.items())),
        tuple(sorted(common)),
        cert,
    )
