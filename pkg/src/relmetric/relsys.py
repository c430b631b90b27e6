"""Finite binary relational systems and their ball geometry.

A system is a finite element set together with a finite family of named
binary relations.  Balls, centers, covers, diameter and radius sets are
the basic geometry; on top of it sit the equally-centered / normal
structure tests, the invariant ball-intersection machinery behind the
fixed-point solvers, and the ball characterization of one-local
retracts.

Structure and fixed-point operations require the relation family to be
closed under inversion (involutive); plain geometry works on any system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

from .errors import (
    CapError,
    HypothesisError,
    InputError,
    InternalCheckError,
    StructureError,
)

BALLSET_CAP = 12


def _support_key(support) -> tuple:
    return (len(support), tuple(sorted(support)))


@dataclass(frozen=True)
class SelfMap:
    """A total map from a finite element set to itself."""

    pairs: tuple[tuple[str, str], ...]

    @staticmethod
    def make(mapping: dict, elements) -> "SelfMap":
        els = set(elements)
        extra = set(mapping) - els
        if extra:
            raise InputError(f"map defined on unknown elements {sorted(extra)}")
        missing = els - set(mapping)
        if missing:
            raise InputError(f"map undefined on {sorted(missing)}")
        bad = {mapping[x] for x in mapping} - els
        if bad:
            raise InputError(f"map image leaves the element set: {sorted(bad)}")
        return SelfMap(tuple(sorted(mapping.items())))

    @cached_property
    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def __call__(self, x: str) -> str:
        return self.as_dict[x]

    def image(self, subset) -> frozenset[str]:
        return frozenset(self.as_dict[x] for x in subset)

    def fixed_points(self) -> frozenset[str]:
        return frozenset(x for x, y in self.pairs if x == y)

    def compose(self, other: "SelfMap") -> "SelfMap":
        # self after other
        return SelfMap(tuple(sorted((x, self.as_dict[y]) for x, y in other.pairs)))

    def commutes_with(self, other: "SelfMap") -> bool:
        return self.compose(other) == other.compose(self)


@dataclass(frozen=True)
class BallSetMember:
    """A nonempty intersection of balls, with one witnessing family."""

    support: frozenset[str]
    witness: tuple[tuple[str, str], ...]  # (center, relation) pairs; () is E


@dataclass(frozen=True)
class OLRResult:
    ok: bool
    table: tuple[tuple[str, str], ...] | None  # x outside A -> retraction image
    violator: str | None

    @property
    def table_dict(self) -> dict[str, str] | None:
        return None if self.table is None else dict(self.table)


@dataclass(frozen=True)
class RelSys:
    elements: tuple[str, ...]
    relations: tuple[tuple[str, frozenset[tuple[str, str]]], ...]

    @staticmethod
    def make(elements, relations: dict) -> "RelSys":
        elements = list(elements)
        els = tuple(sorted(set(elements)))
        if len(els) != len(elements):
            raise InputError("duplicate elements")
        rels = []
        for name in sorted(relations):
            pairs = set()
            for pair in relations[name]:
                x, y = pair
                if x not in els or y not in els:
                    raise InputError(f"relation {name!r} mentions unknown pair {pair}")
                pairs.add((x, y))
            rels.append((str(name), frozenset(pairs)))
        return RelSys(els, tuple(rels))

    # ------------------------------------------------------------ structure

    @cached_property
    def relation_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    @cached_property
    def _rel_by_name(self) -> dict[str, frozenset]:
        return dict(self.relations)

    def rel(self, name: str) -> frozenset[tuple[str, str]]:
        try:
            return self._rel_by_name[name]
        except KeyError:
            raise InputError(f"unknown relation {name!r}") from None

    @cached_property
    def is_reflexive(self) -> bool:
        return all(
            (x, x) in pairs for _, pairs in self.relations for x in self.elements
        )

    @cached_property
    def is_involutive(self) -> bool:
        """The relation family is closed under inversion."""
        sets = {pairs for _, pairs in self.relations}
        return all(
            frozenset((y, x) for x, y in pairs) in sets for pairs in sets
        )

    @cached_property
    def inverse_name(self) -> dict[str, str]:
        """For involutive systems: a name of the inverse of each relation."""
        if not self.is_involutive:
            raise StructureError("relation family is not closed under inversion")
        by_set: dict[frozenset, str] = {}
        for name, pairs in self.relations:
            by_set.setdefault(pairs, name)
        return {
            name: by_set[frozenset((y, x) for x, y in pairs)]
            for name, pairs in self.relations
        }

    def restrict(self, subset) -> "RelSys":
        sub = frozenset(subset)
        unknown = sub - set(self.elements)
        if unknown:
            raise InputError(f"restriction to unknown elements {sorted(unknown)}")
        return RelSys(
            tuple(sorted(sub)),
            tuple(
                (name, frozenset(p for p in pairs if p[0] in sub and p[1] in sub))
                for name, pairs in self.relations
            ),
        )

    # ------------------------------------------------------------- geometry

    def ball(self, x: str, rname: str) -> frozenset[str]:
        if x not in self.elements:
            raise InputError(f"unknown element {x!r}")
        pairs = self.rel(rname)
        return frozenset(y for a, y in pairs if a == x)

    def center(self, subset, rname: str) -> frozenset[str]:
        a = frozenset(subset)
        return frozenset(x for x in self.elements if a <= self.ball(x, rname))

    def cov(self, subset) -> frozenset[str]:
        """Intersection of all balls containing the subset; E if none."""
        a = frozenset(subset)
        out = frozenset(self.elements)
        for x in self.elements:
            for rname in self.relation_names:
                b = self.ball(x, rname)
                if a <= b:
                    out &= b
        return out

    def diameter_set(self, subset) -> frozenset[str]:
        a = frozenset(subset)
        return frozenset(
            name
            for name, pairs in self.relations
            if all((x, y) in pairs for x in a for y in a)
        )

    def radius_set(self, subset) -> frozenset[str]:
        a = frozenset(subset)
        return frozenset(
            name
            for name in self.relation_names
            if any(a <= self.ball(x, name) for x in a)
        )

    def is_equally_centered(self, subset) -> bool:
        return self.radius_set(subset) == self.diameter_set(subset)

    # ------------------------------------------------- ball intersections

    def ball_intersections(self, cap: int = BALLSET_CAP) -> tuple[BallSetMember, ...]:
        """All nonempty intersections of balls, including E (the empty
        intersection), each with one witnessing ball family."""
        if len(self.elements) > cap:
            raise CapError(
                f"ball-intersection enumeration supports at most {cap} elements"
            )
        full = frozenset(self.elements)
        found: dict[frozenset, tuple] = {full: ()}
        frontier = [full]
        balls = [
            (self.ball(x, rname), (x, rname))
            for x in self.elements
            for rname in self.relation_names
        ]
        while frontier:
            nxt = []
            for support in frontier:
                witness = found[support]
                for b, tag in balls:
                    inter = support & b
                    if inter and inter not in found:
                        found[inter] = witness + (tag,)
                        nxt.append(inter)
            frontier = nxt
        return tuple(
            BallSetMember(s, found[s]) for s in sorted(found, key=_support_key)
        )

    def has_normal_structure(
        self, cap: int = BALLSET_CAP
    ) -> tuple[bool, frozenset[str] | None]:
        """No nonempty ball intersection other than a singleton is
        equally centered.  Returns the verdict and a counterexample."""
        for m in self.ball_intersections(cap):
            if len(m.support) != 1 and self.is_equally_centered(m.support):
                return False, m.support
        return True, None

    # ------------------------------------------------------------ self-maps

    def is_endomorphism(self, f: SelfMap) -> bool:
        fd = f.as_dict
        if set(fd) != set(self.elements):
            return False
        return all(
            (fd[x], fd[y]) in pairs for _, pairs in self.relations for x, y in pairs
        )

    def endomorphisms(self):
        """All endomorphisms, in a deterministic order.  Exponential in
        the number of elements; intended for small systems."""
        els = self.elements
        for values in product(els, repeat=len(els)):
            f = SelfMap(tuple(zip(els, values)))
            if self.is_endomorphism(f):
                yield f

    # ------------------------------------------------ invariant ball sets

    def invariant_ballset_members(self, f: SelfMap, cap: int = BALLSET_CAP):
        return tuple(
            m
            for m in self.ball_intersections(cap)
            if f.image(m.support) <= m.support
        )

    def descend_invariant(self, f: SelfMap, cap: int = BALLSET_CAP) -> frozenset[str]:
        """Shrink E to an invariant ball intersection: alternately
        replace A by cov(f(A)) and by center(A, r) & A for radius
        relations r, in relation-name order, until stable.

        The result is invariant, a ball intersection, and equally
        centered; stability of the cover step is needed before the
        center steps so that they stay invariant.
        """
        if not self.is_involutive:
            raise StructureError("descent needs an involutive relation family")
        if not self.is_endomorphism(f):
            raise InputError("descent needs an endomorphism")
        a = frozenset(self.elements)
        while True:
            covered = self.cov(f.image(a))
            if covered != a:
                a = covered
                continue
            for rname in sorted(self.radius_set(a)):
                smaller = self.center(a, rname) & a
                if smaller and smaller != a:
                    a = smaller
                    break
            else:
                return a

    def minimal_invariant_ballset(
        self, f: SelfMap, cap: int = BALLSET_CAP
    ) -> BallSetMember:
        """A minimal nonempty ball intersection A with f(A) inside A.

        Ties between minimal candidates are broken by lexicographically
        least support, so the result does not depend on relation
        naming.  The descent is run as a cross-check: it must land on
        an invariant member containing a minimal one.
        """
        if not self.is_involutive:
            raise StructureError(
                "minimal invariant ball sets need an involutive relation family"
            )
        if not self.is_endomorphism(f):
            raise InputError("not an endomorphism")
        invariant = self.invariant_ballset_members(f, cap)
        if not invariant:
            raise InternalCheckError("E itself should be invariant")
        supports = [m.support for m in invariant]
        minimal = [
            m
            for m in invariant
            if not any(s < m.support for s in supports)
        ]
        best = min(minimal, key=lambda m: _support_key(m.support))
        descended = self.descend_invariant(f, cap)
        if descended not in supports:
            raise InternalCheckError("descent left the invariant ball sets")
        return best

    # --------------------------------------------------------- fixed points

    def fixed_point(self, f: SelfMap, cap: int = BALLSET_CAP) -> str:
        """A fixed point of an endomorphism of an involutive system with
        normal structure."""
        ok, witness = self.has_normal_structure(cap)
        if not ok:
            raise HypothesisError(
                f"no normal structure: {sorted(witness)} is equally centered"
            )
        member = self.minimal_invariant_ballset(f, cap)
        if len(member.support) != 1:
            raise InternalCheckError(
                "minimal invariant ball set is not a singleton despite "
                "normal structure"
            )
        (x,) = member.support
        if f(x) != x:
            raise InternalCheckError("singleton invariant set is not fixed")
        return x

    def common_fixed_points(
        self, maps, cap: int = BALLSET_CAP
    ) -> tuple[frozenset[str], OLRResult]:
        """The common fixed-point set of a commuting family of
        endomorphisms of a reflexive involutive system with normal
        structure, with a certificate that it is a one-local retract."""
        maps = list(maps)
        if not self.is_reflexive:
            raise StructureError("common fixed points need a reflexive system")
        if not self.is_involutive:
            raise StructureError("common fixed points need an involutive system")
        ok, witness = self.has_normal_structure(cap)
        if not ok:
            raise HypothesisError(
                f"no normal structure: {sorted(witness)} is equally centered"
            )
        for i, f in enumerate(maps):
            if not self.is_endomorphism(f):
                raise InputError(f"map {i} is not an endomorphism")
        for (i, f), (j, g) in combinations(enumerate(maps), 2):
            if not f.commutes_with(g):
                raise InputError(f"maps {i} and {j} do not commute")
        fix = frozenset(self.elements)
        for f in maps:
            fix &= f.fixed_points()
        if not fix:
            raise InternalCheckError(
                "commuting family on a normal system has no common fixed point"
            )
        olr = self.is_one_local_retract(fix)
        if not olr.ok:
            raise InternalCheckError(
                "common fixed-point set is not a one-local retract"
            )
        return fix, olr

    # ---------------------------------------------------- one-local retracts

    def is_one_local_retract(self, subset) -> OLRResult:
        """Ball test: A is a one-local retract iff for every outside x
        the balls around A that contain x still meet A.  The retraction
        table sends each x to the least element of that intersection."""
        if not self.is_reflexive or not self.is_involutive:
            raise StructureError(
                "the one-local retract test needs a reflexive involutive system"
            )
        a = frozenset(subset)
        unknown = a - set(self.elements)
        if unknown:
            raise InputError(f"unknown elements {sorted(unknown)}")
        table = []
        for x in sorted(set(self.elements) - a):
            hit = frozenset(self.elements)
            for u in sorted(a):
                for rname in self.relation_names:
                    b = self.ball(u, rname)
                    if x in b:
                        hit &= b
            meet = hit & a
            if not meet:
                return OLRResult(False, None, x)
            table.append((x, min(meet)))
        return OLRResult(True, tuple(table), None)

    def retraction_exists(self, subset, x: str) -> bool:
        """Definitional check: some map fixing A and sending x into A is
        a homomorphism of the restriction to A + x.  Exhaustive over
        candidate images; the oracle for the ball test."""
        a = frozenset(subset)
        if x in a:
            return True
        scope = a | {x}
        for target in sorted(a):
            ok = True
            for _, pairs in self.relations:
                for u, v in pairs:
                    if u not in scope or v not in scope:
                        continue
                    uu = target if u == x else u
                    vv = target if v == x else v
                    if (uu, vv) not in pairs:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
        return False

    def chain_intersection_is_olr(self, chain) -> OLRResult:
        """Verify that the intersection of a descending chain of
        one-local retracts is again one; reports which chain member
        breaks the hypothesis otherwise."""
        chain = [frozenset(c) for c in chain]
        for prev, nxt in zip(chain, chain[1:]):
            if not nxt <= prev:
                raise InputError("chain is not descending")
        for i, c in enumerate(chain):
            if not self.is_one_local_retract(c).ok:
                raise HypothesisError(f"chain member {i} is not a one-local retract")
        inter = frozenset(self.elements)
        for c in chain:
            inter &= c
        return self.is_one_local_retract(inter)

    # ------------------------------------------------- invariant relations

    def invariant_binary_relations(self, maps, cap: int = 3):
        """All binary relations preserved by every map, with the closure
        laws (diagonal, intersections, unions, composition, inversion)
        verified on the result."""
        n = len(self.elements)
        if n > cap:
            raise CapError(f"invariant relation enumeration capped at {cap} elements")
        maps = list(maps)
        cells = [(x, y) for x in self.elements for y in self.elements]
        preserved = []
        for bits in product((False, True), repeat=len(cells)):
            rel = frozenset(c for c, b in zip(cells, bits) if b)
            if all(
                (f(x), f(y)) in rel for f in maps for x, y in rel
            ):
                preserved.append(rel)
        family = frozenset(preserved)
        diag = frozenset((x, x) for x in self.elements)
        full = frozenset(cells)
        checks = [diag in family, full in family, frozenset() in family]
        succ = {}
        for r in family:
            checks.append(frozenset((y, x) for x, y in r) in family)
            by_src: dict[str, set] = {}
            for x, y in r:
                by_src.setdefault(x, set()).add(y)
            succ[r] = by_src
        for r, s in product(family, repeat=2):
            checks.append(r & s in family)
            checks.append(r | s in family)
            comp = frozenset(
                (x, z)
                for x, ys in succ[r].items()
                for y in ys
                for z in succ[s].get(y, ())
            )
            checks.append(comp in family)
        if not all(checks):
            raise InternalCheckError("invariant relations are not closed as expected")
        return tuple(sorted(family, key=lambda r: (len(r), tuple(sorted(r)))))
