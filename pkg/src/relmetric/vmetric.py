"""Metric spaces whose distances take values in an involutive ordered monoid.

A value monoid carries a lattice order with least element ``0`` (neutral
for the monoid operation ``oplus``) and an involution that reverses
``oplus``.  A space assigns a value to every ordered pair of points,
subject to three axioms: ``d(x,y) <= 0`` iff ``x == y``, the triangle
inequality ``d(x,y) <= d(x,z) (+) d(z,y)``, and the involution law
``involute(d(y,x)) == d(x,y)``.

Provided here:

* :class:`TableMonoid` -- finite value monoids given by explicit
  tables, including :func:`v4_monoid`, the four-value monoid whose
  spaces are exactly the partial orders;
* :class:`WordValueMonoid` -- values that are final segments of signed
  words (see :mod:`.words`) with a finite quantification carrier;
* :class:`VSpace` -- finite spaces with balls, diameter and radius,
  the relational-system view, hyperconvexity and boundedness checks,
  products, and the canonical isometric embedding given by distance
  profiles;
* holes (radius maps whose balls miss a common point), hole images
  under maps, the hole-preservation test, and the replete space of
  metric forms with its point embedding.

Checks that quantify over values range over the monoid's finite
carrier; for word values every verdict is relative to that closed set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache, cached_property
from itertools import product as iter_product
from typing import Iterable, Mapping

from . import words
from .errors import (
    CapError,
    HypothesisError,
    InputError,
    InternalCheckError,
    StructureError,
)
from .relsys import OLRResult, RelSys
from .words import UpSet

CARRIER_CAP = 512
FORM_CAP = 20_000
PRODUCT_CAP = 256


# --------------------------------------------------------------- value monoids


class ValueMonoid:
    """Shared derived operations over a finite carrier of values.

    Subclasses provide the primitives: ``carrier``, ``zero``, ``top``,
    ``oplus``, ``involute``, ``leq``, ``meet``, ``join``, ``name`` and
    ``value``.
    """

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.carrier)}

    def contains(self, v) -> bool:
        return v in self._index

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise InputError(f"value {v!r} is not in the carrier") from None

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def meet_all(self, values: Iterable):
        out = None
        for v in values:
            out = v if out is None else self.meet(out, v)
        return self.top if out is None else out

    def join_all(self, values: Iterable):
        out = None
        for v in values:
            out = v if out is None else self.join(out, v)
        return self.zero if out is None else out

    def dist(self, p, q):
        """Distance of the value monoid on itself: the least r with
        ``q <= p (+) r`` and ``p <= q (+) involute(r)``, searched over
        the carrier."""
        sols = [
            r
            for r in self.carrier
            if self.leq(q, self.oplus(p, r))
            and self.leq(p, self.oplus(q, self.involute(r)))
        ]
        for r in sols:
            if all(self.leq(r, s) for s in sols):
                return r
        raise StructureError(
            f"value monoid is not residuated at ({self.name(p)}, {self.name(q)})"
        )

    def accessibility_value_witness(self, v):
        """A value r with ``not leq(v, r)`` and
        ``leq(v, r (+) involute(r))``, or None; searched over the
        carrier."""
        for r in self.carrier:
            if not self.leq(v, r) and self.leq(v, self.oplus(r, self.involute(r))):
                return r
        return None

    def is_accessible(self, v) -> bool:
        return self.accessibility_value_witness(v) is not None

    def inaccessible_values(self) -> tuple:
        return tuple(v for v in self.carrier if not self.is_accessible(v))


@dataclass(frozen=True)
class TableMonoid(ValueMonoid):
    """A value monoid given by explicit finite tables.

    The carrier is a tuple of value names.  The order must be a lattice
    whose least element is neutral for ``oplus``; ``oplus`` must be
    associative and monotone; the involution must be an order
    automorphism of period two that reverses ``oplus``.  All of this is
    validated in :meth:`make`.
    """

    carrier: tuple[str, ...]
    leq_pairs: frozenset[tuple[str, str]]
    oplus_table: tuple[tuple[str, ...], ...]
    involution: tuple[str, ...]

    @staticmethod
    def make(carrier, leq, oplus: Mapping, involution: Mapping) -> "TableMonoid":
        els = tuple(carrier)
        if not els or len(els) != len(set(els)):
            raise InputError("carrier must be a nonempty sequence of distinct names")
        if not all(isinstance(x, str) and x for x in els):
            raise InputError("carrier values must be nonempty strings")
        idx = {x: i for i, x in enumerate(els)}
        n = len(els)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for x, y in leq:
            if x not in idx or y not in idx:
                raise InputError(f"order pair ({x!r}, {y!r}) leaves the carrier")
            rel[idx[x]][idx[y]] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if rel[i][j] and rel[j][i]:
                    raise InputError(f"order cycle through {els[i]!r} and {els[j]!r}")
        pairs = frozenset(
            (els[i], els[j]) for i in range(n) for j in range(n) if rel[i][j]
        )
        rows = []
        for a in els:
            row = []
            for b in els:
                try:
                    c = oplus[a, b]
                except KeyError:
                    raise InputError(f"oplus undefined at ({a!r}, {b!r})") from None
                if c not in idx:
                    raise InputError(f"oplus({a!r}, {b!r}) leaves the carrier")
                row.append(c)
            rows.append(tuple(row))
        inv = []
        for a in els:
            try:
                b = involution[a]
            except KeyError:
                raise InputError(f"involution undefined at {a!r}") from None
            if b not in idx:
                raise InputError(f"involution of {a!r} leaves the carrier")
            inv.append(b)
        monoid = TableMonoid(els, pairs, tuple(rows), tuple(inv))
        monoid._meets  # noqa: B018 - forces the lattice validation
        monoid._joins  # noqa: B018
        zero = monoid.zero
        for a in els:
            if monoid.oplus(zero, a) != a or monoid.oplus(a, zero) != a:
                raise InputError("the least value must be neutral for oplus")
            if monoid.involute(monoid.involute(a)) != a:
                raise InputError("involution must have period two")
        for a in els:
            for b in els:
                if monoid.leq(a, b) != monoid.leq(monoid.involute(a), monoid.involute(b)):
                    raise InputError("involution must preserve the order")
                got = monoid.involute(monoid.oplus(a, b))
                if got != monoid.oplus(monoid.involute(b), monoid.involute(a)):
                    raise InputError("involution must reverse oplus")
                for c in els:
                    left = monoid.oplus(monoid.oplus(a, b), c)
                    if left != monoid.oplus(a, monoid.oplus(b, c)):
                        raise InputError("oplus is not associative")
                    if monoid.leq(a, b):
                        if not monoid.leq(monoid.oplus(a, c), monoid.oplus(b, c)):
                            raise InputError("oplus is not monotone")
                        if not monoid.leq(monoid.oplus(c, a), monoid.oplus(c, b)):
                            raise InputError("oplus is not monotone")
        return monoid

    # ------------------------------------------------------------ primitives

    def leq(self, a, b) -> bool:
        self.index(a), self.index(b)
        return (a, b) in self.leq_pairs

    def oplus(self, a, b) -> str:
        return self.oplus_table[self.index(a)][self.index(b)]

    def involute(self, a) -> str:
        return self.involution[self.index(a)]

    @cached_property
    def _meets(self) -> dict:
        return self._lattice_table(lower=True)

    @cached_property
    def _joins(self) -> dict:
        return self._lattice_table(lower=False)

    def _lattice_table(self, lower: bool) -> dict:
        out = {}
        for a in self.carrier:
            for b in self.carrier:
                if lower:
                    bounds = [z for z in self.carrier if self.leq(z, a) and self.leq(z, b)]
                    best = [z for z in bounds if all(self.leq(w, z) for w in bounds)]
                else:
                    bounds = [z for z in self.carrier if self.leq(a, z) and self.leq(b, z)]
                    best = [z for z in bounds if all(self.leq(z, w) for w in bounds)]
                if len(best) != 1:
                    kind = "meet" if lower else "join"
                    raise InputError(f"not a lattice: ({a!r}, {b!r}) has no {kind}")
                out[a, b] = best[0]
        return out

    def meet(self, a, b) -> str:
        return self._meets[self.name(a), self.name(b)]

    def join(self, a, b) -> str:
        return self._joins[self.name(a), self.name(b)]

    @cached_property
    def zero(self) -> str:
        for x in self.carrier:
            if all(self.leq(x, y) for y in self.carrier):
                return x
        raise InputError("the carrier has no least value")

    @cached_property
    def top(self) -> str:
        for x in self.carrier:
            if all(self.leq(y, x) for y in self.carrier):
                return x
        raise InputError("the carrier has no greatest value")

    def name(self, v) -> str:
        self.index(v)
        return v

    def value(self, text: str) -> str:
        self.index(text)
        return text


@cache
def v4_monoid() -> TableMonoid:
    """The four-value monoid on 0 <= +,- <= 1 with join as ``oplus``
    and the involution swapping + and -.

    Its metric spaces are exactly the partial orders: 0 on the
    diagonal, + strictly below, - strictly above, 1 between
    incomparable points.
    """
    carrier = ("0", "+", "-", "1")

    def vee(a: str, b: str) -> str:
        if a == b:
            return a
        if a == "0":
            return b
        if b == "0":
            return a
        return "1"

    return TableMonoid.make(
        carrier,
        [("0", "+"), ("0", "-"), ("0", "1"), ("+", "1"), ("-", "1")],
        {(a, b): vee(a, b) for a in carrier for b in carrier},
        {"0": "0", "+": "-", "-": "+", "1": "1"},
    )


def _upset_key(u: UpSet) -> tuple:
    return tuple((len(g), g) for g in u.generators)


def parse_word_value(text: str) -> UpSet:
    """Parse a JSON list of generator words into an up-set value."""
    try:
        gens = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad word value {text!r}: {exc}") from None
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise InputError(f"bad word value {text!r}: expected a list of words")
    return UpSet.from_words(gens)


@dataclass(frozen=True)
class WordValueMonoid(ValueMonoid):
    """Final-segment word values with a finite quantification carrier.

    Operations are exact in the full algebra of final segments: order
    by reverse inclusion, meet by union, join by minimal common
    superwords, ``oplus`` by concatenation, involution by reverse and
    flip, distance by residuals, accessibility by the one-word witness
    search.  The carrier only fixes the finite range for radii, holes
    and forms: it contains the seed values plus 0 and top, is closed
    under involution, meets and joins, and contains pairwise products
    whose generators respect the length bound.
    """

    carrier: tuple[UpSet, ...]
    oplus_length_bound: int

    @staticmethod
    def from_values(
        values: Iterable[UpSet],
        oplus_length_bound: int | None = None,
        carrier_cap: int = CARRIER_CAP,
    ) -> "WordValueMonoid":
        seeds = set(values)
        for u in seeds:
            if not isinstance(u, UpSet):
                raise InputError("word values must be UpSet instances")
        seeds |= {words.ZERO, words.TOP}
        if oplus_length_bound is None:
            oplus_length_bound = max(
                2, 2 * max(u.max_generator_len() for u in seeds)
            )

        def grow(pool: set, fresh: set) -> set:
            frontier = set(fresh) - pool
            pool = pool | frontier
            while frontier:
                if len(pool) > carrier_cap:
                    raise CapError(
                        f"value carrier exceeded {carrier_cap} elements; "
                        "raise the cap or trim the seed values"
                    )
                new = set()
                ordered = sorted(pool, key=_upset_key)
                for u in sorted(frontier, key=_upset_key):
                    candidates = [u.involute()]
                    for v in ordered:
                        candidates.append(u.meet(v))
                        candidates.append(u.join(v))
                    for w in candidates:
                        if w not in pool:
                            new.add(w)
                pool |= new
                frontier = new
            if len(pool) > carrier_cap:
                raise CapError(
                    f"value carrier exceeded {carrier_cap} elements; "
                    "raise the cap or trim the seed values"
                )
            return pool

        closed = grow(set(), seeds)
        while True:
            ordered = sorted(closed, key=_upset_key)
            produced = set()
            for u in ordered:
                for v in ordered:
                    w = u.concat(v)
                    if w not in closed and w.max_generator_len() <= oplus_length_bound:
                        produced.add(w)
            if not produced:
                break
            closed = grow(closed, produced)
        return WordValueMonoid(tuple(sorted(closed, key=_upset_key)), oplus_length_bound)

    def merged(self, other: "WordValueMonoid") -> "WordValueMonoid":
        return WordValueMonoid.from_values(
            set(self.carrier) | set(other.carrier),
            max(self.oplus_length_bound, other.oplus_length_bound),
        )

    # ------------------------------------------------------------ primitives

    @property
    def zero(self) -> UpSet:
        return words.ZERO

    @property
    def top(self) -> UpSet:
        return words.TOP

    def leq(self, a: UpSet, b: UpSet) -> bool:
        return a.leq(b)

    def oplus(self, a: UpSet, b: UpSet) -> UpSet:
        return a.concat(b)

    def involute(self, a: UpSet) -> UpSet:
        return a.involute()

    def meet(self, a: UpSet, b: UpSet) -> UpSet:
        return a.meet(b)

    def join(self, a: UpSet, b: UpSet) -> UpSet:
        return a.join(b)

    def dist(self, p: UpSet, q: UpSet) -> UpSet:
        return words.distance(p, q)

    def accessibility_value_witness(self, v: UpSet) -> UpSet | None:
        w = words.principal_accessibility_witness(v)
        return None if w is None else words.principal(w)

    def name(self, v: UpSet) -> str:
        return json.dumps(list(v.generators), separators=(",", ":"))

    def value(self, text: str) -> UpSet:
        return parse_word_value(text)


# --------------------------------------------------------------------- spaces


@dataclass(frozen=True)
class RadiusMap:
    """A radius for every point of a space.

    The map is a hole when the balls with these radii have an empty
    common intersection.
    """

    radii: tuple[tuple[str, object], ...]

    @staticmethod
    def make(mapping: Mapping, elements) -> "RadiusMap":
        els = set(elements)
        if set(mapping) != els:
            raise InputError("a radius map must cover exactly the elements")
        return RadiusMap(tuple(sorted(mapping.items())))

    @cached_property
    def as_dict(self) -> dict:
        return dict(self.radii)

    def __call__(self, x: str):
        try:
            return self.as_dict[x]
        except KeyError:
            raise InputError(f"no radius for element {x!r}") from None


@dataclass(frozen=True, eq=False)
class VSpace:
    """A finite set of named points with a value-monoid distance."""

    elements: tuple[str, ...]
    monoid: ValueMonoid
    dist: dict

    @staticmethod
    def make(elements, monoid: ValueMonoid, dist: Mapping) -> "VSpace":
        given = tuple(elements)
        els = tuple(sorted(set(given)))
        if not els:
            raise InputError("a space needs at least one element")
        if len(els) != len(given):
            raise InputError("duplicate elements")
        for x in els:
            if not isinstance(x, str) or not x or "," in x:
                raise InputError("element names must be nonempty and comma-free")
        matrix = {}
        for x in els:
            for y in els:
                try:
                    v = dist[x, y]
                except KeyError:
                    raise InputError(f"distance undefined for ({x!r}, {y!r})") from None
                if not monoid.contains(v):
                    raise InputError(
                        f"distance value for ({x!r}, {y!r}) is outside the carrier"
                    )
                matrix[x, y] = v
        return VSpace(els, monoid, matrix)

    def d(self, x: str, y: str):
        try:
            return self.dist[x, y]
        except KeyError:
            raise InputError(f"unknown pair ({x!r}, {y!r})") from None

    # ------------------------------------------------------------ the axioms

    def check_axioms(self) -> tuple[bool, tuple | None]:
        """Separation, involution law and triangle inequality over all
        pairs and triples; returns the first violation found."""
        m = self.monoid
        for x in self.elements:
            for y in self.elements:
                if m.leq(self.d(x, y), m.zero) != (x == y):
                    return False, ("identity", x, y)
                if m.involute(self.d(y, x)) != self.d(x, y):
                    return False, ("involution", x, y)
        for x in self.elements:
            for y in self.elements:
                dxy = self.d(x, y)
                for z in self.elements:
                    if not m.leq(dxy, m.oplus(self.d(x, z), self.d(z, y))):
                        return False, ("triangle", x, y, z)
        return True, None

    # -------------------------------------------------- balls and subsets

    def _check_subset(self, subset) -> frozenset[str]:
        a = frozenset(subset)
        unknown = a - set(self.elements)
        if unknown:
            raise InputError(f"unknown elements {sorted(unknown)}")
        return a

    def ball(self, x: str, v) -> frozenset[str]:
        return frozenset(y for y in self.elements if self.monoid.leq(self.d(x, y), v))

    def diameter(self, subset=None):
        a = self.elements if subset is None else self._check_subset(subset)
        return self.monoid.join_all(self.d(x, y) for x in a for y in a)

    def radius(self, subset):
        """Meet of the carrier values v for which some point of the
        subset covers it with a ball of radius v."""
        a = self._check_subset(subset)
        m = self.monoid
        return m.meet_all(
            v for v in m.carrier if any(a <= self.ball(x, v) for x in a)
        )

    def is_equally_centered(self, subset) -> bool:
        a = self._check_subset(subset)
        return self.radius(a) == self.diameter(a)

    def restrict(self, subset) -> "VSpace":
        a = sorted(self._check_subset(subset))
        if not a:
            raise InputError("cannot restrict to the empty set")
        return VSpace(
            tuple(a), self.monoid, {(x, y): self.d(x, y) for x in a for y in a}
        )

    # ------------------------------------------------------ relational view

    def to_relsys(self) -> RelSys:
        """One relation per carrier value v holding the pairs at
        distance at most v; reflexive and involutive whenever the
        axioms hold."""
        m = self.monoid
        rels = {}
        for v in m.carrier:
            rels[m.name(v)] = {
                (x, y)
                for x in self.elements
                for y in self.elements
                if m.leq(self.d(x, y), v)
            }
        return RelSys.make(self.elements, rels)

    # ------------------------------------------------------- hyperconvexity

    def is_hyperconvex(self) -> tuple[bool, tuple | None]:
        """Convexity plus the two-out-of-many ball intersection
        property, with radii drawn from the carrier.

        Convexity: whenever ``d(x,y) <= r (+) involute(s)`` the balls
        B(x,r) and B(y,s) must meet.  The family property: any
        pairwise-intersecting family of balls has a common point; it is
        enough to inspect maximal cliques of the intersection graph on
        distinct balls, since subfamilies only have larger
        intersections.
        """
        m = self.monoid
        balls: dict[tuple[str, int], frozenset[str]] = {}
        for x in self.elements:
            for i, r in enumerate(m.carrier):
                balls[x, i] = self.ball(x, r)
        bounds = [
            [m.oplus(r, m.involute(s)) for s in m.carrier] for r in m.carrier
        ]
        for x in self.elements:
            for y in self.elements:
                dxy = self.d(x, y)
                for i, r in enumerate(m.carrier):
                    bx = balls[x, i]
                    for j, s in enumerate(m.carrier):
                        if not m.leq(dxy, bounds[i][j]):
                            continue
                        if not bx & balls[y, j]:
                            return False, ("convexity", x, y, m.name(r), m.name(s))
        distinct: dict[frozenset[str], tuple[str, str]] = {}
        for x in self.elements:
            for i, r in enumerate(m.carrier):
                b = balls[x, i]
                if b not in distinct:
                    distinct[b] = (x, m.name(r))
        nodes = sorted(distinct, key=lambda b: tuple(sorted(b)))
        neighbors = {
            i: {
                j
                for j, other in enumerate(nodes)
                if i != j and nodes[i] & other
            }
            for i in range(len(nodes))
        }
        for clique in _maximal_cliques(len(nodes), neighbors):
            if len(clique) < 3:
                continue
            common = set(nodes[clique[0]])
            for i in clique[1:]:
                common &= nodes[i]
            if not common:
                family = tuple(distinct[nodes[i]] for i in clique)
                return False, ("ball-family", family)
        return True, None

    def is_bounded(self) -> bool:
        """0 must be the only carrier value below the diameter without
        an accessibility witness."""
        m = self.monoid
        diam = self.diameter()
        return all(
            v == m.zero or not m.leq(v, diam) or m.is_accessible(v)
            for v in m.carrier
        )

    # ---------------------------------------------------------------- holes

    def is_hole(self, radii: RadiusMap) -> bool:
        rd = radii.as_dict
        if set(rd) != set(self.elements):
            raise InputError("the radius map must cover exactly the elements")
        common = set(self.elements)
        for x in self.elements:
            common &= self.ball(x, rd[x])
            if not common:
                return True
        return False

    # --------------------------------------------------- one-local retracts

    def is_one_local_retract(self, subset) -> OLRResult:
        """For every outside point x some a* in A must satisfy
        ``d(a, a*) <= d(a, x)`` for all a in A; then the identity on A
        extends to a non-expansive retraction of A + {x} sending x to
        a*.  The table records the least such a*."""
        a = self._check_subset(subset)
        if not a:
            raise InputError("a one-local retract must be nonempty")
        m = self.monoid
        anchors = sorted(a)
        table = []
        for x in sorted(set(self.elements) - a):
            good = [
                b
                for b in anchors
                if all(m.leq(self.d(z, b), self.d(z, x)) for z in anchors)
            ]
            if not good:
                return OLRResult(False, None, x)
            table.append((x, good[0]))
        return OLRResult(True, tuple(table), None)


def _maximal_cliques(count: int, neighbors: dict[int, set[int]]) -> list[list[int]]:
    """Bron-Kerbosch with pivoting over vertices 0..count-1."""
    out: list[list[int]] = []

    def extend(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = max(sorted(p | x), key=lambda v: len(p & neighbors[v]))
        for v in sorted(p - neighbors[pivot]):
            extend(r + [v], p & neighbors[v], x & neighbors[v])
            p = p - {v}
            x = x | {v}

    extend([], set(range(count)), set())
    return out


def word_space(
    elements,
    dist: Mapping,
    oplus_length_bound: int | None = None,
    carrier_cap: int = CARRIER_CAP,
) -> VSpace:
    """Build a word-valued space, deriving the carrier from the matrix."""
    monoid = WordValueMonoid.from_values(
        set(dist.values()), oplus_length_bound, carrier_cap
    )
    return VSpace.make(elements, monoid, dist)


def monoid_space(monoid: ValueMonoid) -> VSpace:
    """The value monoid as a space over itself, with its own distance.

    Usable when value names are valid element names (table monoids)."""
    names = [monoid.name(v) for v in monoid.carrier]
    dist = {}
    for p in monoid.carrier:
        for q in monoid.carrier:
            dist[monoid.name(p), monoid.name(q)] = monoid.dist(p, q)
    return VSpace.make(names, monoid, dist)


def product_space(spaces, cap: int = PRODUCT_CAP) -> VSpace:
    """Direct product with the coordinatewise-join distance; element
    names join the coordinates with '|'."""
    spaces = list(spaces)
    if not spaces:
        raise InputError("a product needs at least one factor")
    monoid = spaces[0].monoid
    for s in spaces[1:]:
        if s.monoid == monoid:
            continue
        if isinstance(monoid, WordValueMonoid) and isinstance(s.monoid, WordValueMonoid):
            monoid = monoid.merged(s.monoid)
        else:
            raise InputError("product factors must share a value monoid")
    size = 1
    for s in spaces:
        size *= len(s.elements)
    if size > cap:
        raise CapError(f"product would have {size} elements (cap {cap})")
    combos = list(iter_product(*(s.elements for s in spaces)))
    names = {combo: "|".join(combo) for combo in combos}
    dist = {}
    for c1 in combos:
        for c2 in combos:
            dist[names[c1], names[c2]] = monoid.join_all(
                s.d(a, b) for s, a, b in zip(spaces, c1, c2)
            )
    return VSpace.make(sorted(names.values()), monoid, dist)


# ----------------------------------------------------------------------- maps


@dataclass(frozen=True, eq=False)
class VMap:
    """A map between two spaces over compatible value monoids."""

    source: VSpace
    target: VSpace
    pairs: tuple[tuple[str, str], ...]

    @staticmethod
    def make(source: VSpace, target: VSpace, mapping: Mapping) -> "VMap":
        if set(mapping) != set(source.elements):
            raise InputError("the map must be defined exactly on the source elements")
        bad = {mapping[x] for x in mapping} - set(target.elements)
        if bad:
            raise InputError(f"map image leaves the target space: {sorted(bad)}")
        same = source.monoid == target.monoid
        both_words = isinstance(source.monoid, WordValueMonoid) and isinstance(
            target.monoid, WordValueMonoid
        )
        if not (same or both_words):
            raise InputError("source and target must share a value monoid")
        return VMap(source, target, tuple(sorted(mapping.items())))

    @cached_property
    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def __call__(self, x: str) -> str:
        try:
            return self.as_dict[x]
        except KeyError:
            raise InputError(f"map undefined on {x!r}") from None

    @cached_property
    def image(self) -> tuple[str, ...]:
        return tuple(sorted({y for _, y in self.pairs}))

    def is_nonexpansive(self) -> bool:
        m = self.target.monoid
        return all(
            m.leq(self.target.d(self(x), self(y)), self.source.d(x, y))
            for x in self.source.elements
            for y in self.source.elements
        )

    def is_isometry(self) -> bool:
        """Distance-preserving onto the image (hence injective)."""
        return all(
            self.target.d(self(x), self(y)) == self.source.d(x, y)
            for x in self.source.elements
            for y in self.source.elements
        )

    def is_hole_preserving(self, cap: int = FORM_CAP) -> bool:
        """Every hole of the source must map to a hole of the target;
        holes are enumerated over the source carrier.

        Hole images, and with them hole preservation, are only defined
        for non-expansive maps; anything else raises.
        """
        if not self.is_nonexpansive():
            raise HypothesisError(
                "hole preservation is defined for non-expansive maps only"
            )
        m = self.source.monoid
        els = self.source.elements
        total = len(m.carrier) ** len(els)
        if total > cap:
            raise CapError(f"hole enumeration needs {total} candidates (cap {cap})")
        for combo in iter_product(m.carrier, repeat=len(els)):
            rm = RadiusMap(tuple(zip(els, combo)))
            if self.source.is_hole(rm) and not self.target.is_hole(
                hole_image(rm, self)
            ):
                return False
        return True


def hole_image(radii: RadiusMap, vmap: VMap) -> RadiusMap:
    """Image radius map: each target point receives the meet of the
    radii of its preimages, top when there are none."""
    m = vmap.source.monoid
    rd = radii.as_dict
    out = {}
    for y in vmap.target.elements:
        out[y] = m.meet_all(rd[x] for x in vmap.source.elements if vmap(x) == y)
    return RadiusMap.make(out, vmap.target.elements)


def ball_family_radii(space: VSpace, family) -> RadiusMap:
    """The canonical radius map of a ball family.

    Each point x receives the meet of the carrier radii r such that
    some family ball fits inside B(x, r).  The intersection of the
    canonical balls provably equals the intersection of the family;
    this equality is re-verified and a failure raises.
    """
    m = space.monoid
    fam = []
    for center, radius in family:
        if center not in space.elements:
            raise InputError(f"unknown ball center {center!r}")
        if not m.contains(radius):
            raise InputError("family radii must lie in the carrier")
        fam.append((center, radius))
    fam_balls = [space.ball(x, v) for x, v in fam]
    out = {}
    for x in space.elements:
        out[x] = m.meet_all(
            r
            for r in m.carrier
            if any(b <= space.ball(x, r) for b in fam_balls)
        )
    rm = RadiusMap.make(out, space.elements)
    left = set(space.elements)
    for b in fam_balls:
        left &= b
    right = set(space.elements)
    for x in space.elements:
        right &= space.ball(x, out[x])
    if left != right:
        raise InternalCheckError(
            "canonical ball-family radii do not reproduce the intersection"
        )
    return rm


# ------------------------------------------------------- canonical embedding


@dataclass(frozen=True, eq=False)
class CanonicalEmbedding:
    """A space embedded by distance profiles ``x -> (d(z, x) for z)``.

    The image carries the join of coordinatewise monoid distances,
    which provably reproduces the original distance; construction
    verifies this, so ``vmap`` is an isometry by construction.
    """

    source: VSpace
    image: VSpace
    coordinates: tuple[tuple, ...]

    @property
    def vmap(self) -> VMap:
        return VMap.make(self.source, self.image, {x: x for x in self.source.elements})


def canonical_embedding(space: VSpace) -> CanonicalEmbedding:
    """Embed each point as its distance profile and verify that the
    join of coordinatewise monoid distances returns the original
    distance (an internal-consistency failure raises)."""
    m = space.monoid
    els = space.elements
    profiles = {x: tuple(space.d(z, x) for z in els) for x in els}
    for x in els:
        for y in els:
            got = m.join_all(
                m.dist(profiles[x][i], profiles[y][i]) for i in range(len(els))
            )
            if got != space.d(x, y):
                raise InternalCheckError(
                    f"distance profiles fail to reproduce d({x!r}, {y!r})"
                )
    image = VSpace(els, m, dict(space.dist))
    return CanonicalEmbedding(space, image, tuple(profiles[x] for x in els))


# --------------------------------------------------------------- metric forms


def is_weak_metric_form(space: VSpace, radii: RadiusMap) -> bool:
    """``d(x,y) <= h(x) (+) involute(h(y))`` for all pairs."""
    m = space.monoid
    rd = radii.as_dict
    return all(
        m.leq(space.d(x, y), m.oplus(rd[x], m.involute(rd[y])))
        for x in space.elements
        for y in space.elements
    )


def is_metric_form(space: VSpace, radii: RadiusMap) -> bool:
    """A weak metric form with ``h(x) <= d(x,y) (+) h(y)`` as well."""
    m = space.monoid
    rd = radii.as_dict
    return is_weak_metric_form(space, radii) and all(
        m.leq(rd[x], m.oplus(space.d(x, y), rd[y]))
        for x in space.elements
        for y in space.elements
    )


@dataclass(frozen=True, eq=False)
class RepleteSpace:
    """The space of realizable metric forms with the sup distance."""

    space: VSpace
    embedding: VMap
    forms: tuple[tuple[str, RadiusMap], ...]

    @cached_property
    def forms_dict(self) -> dict[str, RadiusMap]:
        return dict(self.forms)


def replete_space(space: VSpace, cap: int = FORM_CAP) -> RepleteSpace:
    """All metric forms whose balls share a point, with the join of
    coordinatewise monoid distances; the point embedding sends x to
    the form ``y -> d(y, x)`` and is verified hole-preserving."""
    m = space.monoid
    els = space.elements
    total = len(m.carrier) ** len(els)
    if total > cap:
        raise CapError(f"form enumeration needs {total} candidates (cap {cap})")
    kept: list[RadiusMap] = []
    for combo in iter_product(m.carrier, repeat=len(els)):
        rm = RadiusMap(tuple(zip(els, combo)))
        if is_metric_form(space, rm) and not space.is_hole(rm):
            kept.append(rm)
    width = len(str(len(kept) - 1))
    names = [f"h{i:0{width}d}" for i in range(len(kept))]
    matrix = {}
    for i, hi in enumerate(kept):
        for j, hj in enumerate(kept):
            matrix[names[i], names[j]] = m.join_all(
                m.dist(hi.as_dict[x], hj.as_dict[x]) for x in els
            )
    form_monoid = m
    if not all(m.contains(v) for v in matrix.values()):
        if not isinstance(m, WordValueMonoid):
            raise InternalCheckError("table monoid distances left the carrier")
        form_monoid = WordValueMonoid.from_values(
            set(m.carrier) | set(matrix.values()), m.oplus_length_bound
        )
    replete = VSpace.make(names, form_monoid, matrix)
    by_radii = {rm.radii: names[i] for i, rm in enumerate(kept)}
    delta = {}
    for x in els:
        profile = tuple((y, space.d(y, x)) for y in els)
        try:
            delta[x] = by_radii[profile]
        except KeyError:
            raise InternalCheckError(
                f"the distance form of {x!r} is missing from the enumeration"
            ) from None
    embedding = VMap.make(space, replete, delta)
    if not embedding.is_hole_preserving(cap):
        raise InternalCheckError("the point embedding failed to preserve holes")
    return RepleteSpace(replete, embedding, tuple(zip(names, kept)))
