"""Reflexive directed graphs with word-valued zigzag distances.

A word over "+", "-" describes a walk shape: its path graph has one
vertex per position, an edge per letter oriented forward for "+" and
backward for "-", and a loop everywhere.  The zigzag distance from x
to y in a reflexive digraph collects the words whose path graph maps
into the digraph by an arc-preserving map sending the first position
to x and the last to y.  Loops let consecutive positions share an
image, so inserting letters never breaks membership and each distance
is a final segment of the subword order -- a value of :mod:`.words`;
the assignment satisfies the axioms of :mod:`.vmetric` spaces.

Provided here:

* :class:`Digraph`, products, and the path graphs of words
  (:func:`zigzag_from_word` / :func:`word_from_zigzag`);
* membership and generator computation for zigzag distances with an
  automaton-based completeness certificate (:func:`zz_member`,
  :func:`zz_generators`);
* the bridge to word-valued metric spaces (:func:`zigzag_space`), the
  arc-preservation/nonexpansiveness comparison, and the test that all
  distance values are cuts of the completion by cones
  (:func:`values_in_macneille`);
* isometric embeddings: prefix cones embed each path graph into the
  value algebra (:func:`claim_zigzag_embedding`), and a digraph whose
  distances are cuts embeds into a finite product of path graphs
  (:func:`embed_into_zigzag_product`);
* a fixed-point demonstration for commuting endomorphisms, with the
  hypotheses checked up front (:func:`zigzag_fixed_point_demo`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
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
from .relsys import OLRResult, SelfMap
from .vmetric import CARRIER_CAP, PRODUCT_CAP, VSpace, WordValueMonoid
from .words import UpSet

#: Hard ceiling for the default generator-search depth.
MAXLEN_CAP = 64
#: Ceiling on explored automaton runs per generator search.
SEARCH_NODE_CAP = 200_000
#: Ceiling on the number of factors of a product embedding.
FACTOR_CAP = 64
#: Ceiling on the word length in the prefix-cone embedding.
PREFIX_EMBED_CAP = 8


# --------------------------------------------------------------- digraphs


@dataclass(frozen=True)
class Digraph:
    """A finite directed graph on named vertices.

    Zigzag operations require a loop at every vertex; construct
    through :meth:`make`, which can add the loops for you.
    """

    vertices: tuple[str, ...]
    arcs: frozenset[tuple[str, str]]

    @staticmethod
    def make(vertices, arcs, add_loops: bool = False) -> "Digraph":
        vs = tuple(sorted(set(vertices)))
        if not vs:
            raise InputError("a digraph needs at least one vertex")
        for v in vs:
            if not isinstance(v, str) or not v or "," in v:
                raise InputError(f"bad vertex name {v!r}")
        members = set(vs)
        pairs: set[tuple[str, str]] = set()
        for a in arcs:
            pair = tuple(a)
            if len(pair) != 2 or pair[0] not in members or pair[1] not in members:
                raise InputError(f"arc {a!r} is not a pair of vertices")
            pairs.add(pair)
        if add_loops:
            pairs.update((v, v) for v in vs)
        return Digraph(vs, frozenset(pairs))

    @cached_property
    def _members(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def _check_vertex(self, v) -> None:
        if v not in self._members:
            raise InputError(f"unknown vertex {v!r}")

    @cached_property
    def is_reflexive(self) -> bool:
        return all((v, v) in self.arcs for v in self.vertices)

    @cached_property
    def is_oriented(self) -> bool:
        """No two-way arcs between distinct vertices."""
        return not any(x != y and (y, x) in self.arcs for x, y in self.arcs)

    @cached_property
    def _forward(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for x, y in self.arcs:
            out[x].add(y)
        return {v: frozenset(s) for v, s in out.items()}

    @cached_property
    def _backward(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for x, y in self.arcs:
            out[y].add(x)
        return {v: frozenset(s) for v, s in out.items()}

    def restrict(self, subset) -> "Digraph":
        sub = tuple(sorted(set(subset)))
        if not sub:
            raise InputError("a digraph needs at least one vertex")
        for v in sub:
            self._check_vertex(v)
        keep = set(sub)
        return Digraph(
            sub, frozenset(a for a in self.arcs if a[0] in keep and a[1] in keep)
        )

    def to_dot(self) -> str:
        """DOT source for the graph; loops are left out of the drawing."""
        lines = ["digraph {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for x, y in sorted(self.arcs):
            if x != y:
                lines.append(f'  "{x}" -> "{y}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def digraph_product(graphs: Iterable[Digraph], cap: int = PRODUCT_CAP) -> Digraph:
    """Componentwise product; an arc between combined vertices needs an
    arc in every coordinate.  Vertex names join coordinates with '|'."""
    factors = list(graphs)
    if not factors:
        raise InputError("a product needs at least one factor")
    size = 1
    for g in factors:
        size *= len(g.vertices)
    if size > cap:
        raise CapError(f"product would have {size} vertices (cap {cap})")
    combos = list(iter_product(*(g.vertices for g in factors)))
    names = {c: "|".join(c) for c in combos}
    arcs = {
        (names[c1], names[c2])
        for c1 in combos
        for c2 in combos
        if all((a, b) in g.arcs for g, a, b in zip(factors, c1, c2))
    }
    return Digraph(tuple(sorted(names.values())), frozenset(arcs))


# ----------------------------------------------------- path graphs of words


@dataclass(frozen=True)
class ZigzagGraph:
    """The reflexive path graph of a word.

    Vertices are "0" .. "n" for a word of length n; letter i orients
    the edge between positions i and i+1, forward for "+".
    """

    word: str
    graph: Digraph

    @property
    def start(self) -> str:
        return "0"

    @property
    def end(self) -> str:
        return str(len(self.word))


def zigzag_from_word(u: str) -> ZigzagGraph:
    words.check_word(u)
    vs = [str(i) for i in range(len(u) + 1)]
    arcs = {(v, v) for v in vs}
    for i, letter in enumerate(u):
        if letter == "+":
            arcs.add((vs[i], vs[i + 1]))
        else:
            arcs.add((vs[i + 1], vs[i]))
    return ZigzagGraph(u, Digraph.make(vs, arcs))


def word_from_zigzag(g: Digraph) -> str:
    """The orientation word of a path-shaped reflexive digraph.

    The symmetric hull of the off-diagonal arcs must be a simple path
    through every vertex, with no two-way arcs.  The two end-to-end
    readings give a word and its involute; the lexicographically least
    of the two is returned, so the function inverts
    :func:`zigzag_from_word` up to that choice.
    """
    if not g.is_reflexive:
        raise InputError("not a zigzag: some loop is missing")
    if not g.is_oriented:
        raise InputError("not a zigzag: a two-way arc between distinct vertices")
    edges = {frozenset(a) for a in g.arcs if a[0] != a[1]}
    n = len(g.vertices)
    if len(edges) != n - 1:
        raise InputError("not a zigzag: the symmetric hull is not a path")
    if n == 1:
        return ""
    adjacent: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in edges:
        x, y = sorted(e)
        adjacent[x].append(y)
        adjacent[y].append(x)
    ends = sorted(v for v, nbrs in adjacent.items() if len(nbrs) == 1)
    if len(ends) != 2 or any(len(nbrs) > 2 for nbrs in adjacent.values()):
        raise InputError("not a zigzag: the symmetric hull is not a path")
    seen = {ends[0]}
    letters: list[str] = []
    current = ends[0]
    while True:
        fresh = [w for w in adjacent[current] if w not in seen]
        if not fresh:
            break
        letters.append("+" if (current, fresh[0]) in g.arcs else "-")
        seen.add(fresh[0])
        current = fresh[0]
    if len(seen) != n:
        raise InputError("not a zigzag: the symmetric hull is not connected")
    ev = "".join(letters)
    return min(ev, words.involute_word(ev))


# ------------------------------------------------------- zigzag distances


def zz_member(g: Digraph, x: str, y: str, w: str) -> bool:
    """Whether the word w belongs to the zigzag distance from x to y.

    Composes, letter by letter, the arc relation for "+" and its
    reverse for "-", and asks whether y lies in the image of x.  The
    reduction from arc-preserving path maps to plain reachability
    rests on reflexivity: consecutive path positions may share an
    image by sliding along a loop.
    """
    if not g.is_reflexive:
        raise StructureError("zigzag distances need a reflexive digraph")
    g._check_vertex(x)
    g._check_vertex(y)
    words.check_word(w)
    frontier: frozenset[str] = frozenset([x])
    for letter in w:
        step = g._forward if letter == "+" else g._backward
        frontier = frozenset().union(*(step[v] for v in frontier))
        if not frontier:
            return False
    return y in frontier


@dataclass(frozen=True)
class ZigzagDistance:
    """A computed zigzag distance: the value and a completeness flag.

    ``complete`` certifies that the generator antichain is exhaustive;
    a truncated search reports the generators found so far, which
    generate a final segment at least as large in the value order.
    """

    value: UpSet
    complete: bool


def default_maxlen(g: Digraph) -> int:
    """A search depth covering every repetition-free automaton run,
    capped at :data:`MAXLEN_CAP`."""
    return min(2 ** len(g.vertices), MAXLEN_CAP)


def zz_generators(
    g: Digraph,
    x: str,
    y: str,
    maxlen: int | None = None,
    node_cap: int = SEARCH_NODE_CAP,
) -> ZigzagDistance:
    """The minimal words of the zigzag distance from x to y.

    Words act on vertex sets: the state after a word is the set of
    vertices reachable from x along it, and a word belongs to the
    distance exactly when its state contains y.  Deleting the factor
    between two equal states of a run yields a subword with the same
    final state, so every minimal word heads a repetition-free run and
    a first in-language prefix ends it.  The search below therefore
    extends only repetition-free runs, stops each at its first hit,
    and is exact whenever nothing was cut off by ``maxlen`` or
    ``node_cap`` -- the ``complete`` flag records that.
    """
    if not g.is_reflexive:
        raise StructureError("zigzag distances need a reflexive digraph")
    g._check_vertex(x)
    g._check_vertex(y)
    if maxlen is None:
        maxlen = default_maxlen(g)
    if maxlen < 1:
        raise InputError("maxlen must be at least 1")
    start = frozenset([x])
    found: list[str] = []
    complete = True
    queue: deque[tuple[str, frozenset[str], frozenset[frozenset[str]]]] = deque(
        [("", start, frozenset([start]))]
    )
    explored = 1
    while queue:
        word, state, seen = queue.popleft()
        if y in state:
            found.append(word)
            continue
        if len(word) == maxlen:
            complete = False
            continue
        for letter in "+-":
            step = g._forward if letter == "+" else g._backward
            nxt = frozenset().union(*(step[v] for v in state))
            if not nxt or nxt in seen:
                continue
            if explored >= node_cap:
                complete = False
                continue
            explored += 1
            queue.append((word + letter, nxt, seen | {nxt}))
    return ZigzagDistance(UpSet(words.minimal_words(found)), complete)


def all_zigzag_distances(
    g: Digraph, maxlen: int | None = None, node_cap: int = SEARCH_NODE_CAP
) -> dict[tuple[str, str], ZigzagDistance]:
    """Every pairwise zigzag distance, keyed by ordered vertex pair."""
    return {
        (x, y): zz_generators(g, x, y, maxlen, node_cap)
        for x in g.vertices
        for y in g.vertices
    }


# ------------------------------------------- the two structure-preservation


@dataclass(frozen=True)
class HomCheck:
    """Verdicts for a vertex map between reflexive digraphs.

    ``is_hom``: every arc maps to an arc.  ``nonexpansive``: every
    image distance lies below the source distance in the value order;
    None when a truncated distance blocks the verdict.
    """

    is_hom: bool
    nonexpansive: bool | None

    @property
    def agree(self) -> bool | None:
        if self.nonexpansive is None:
            return None
        return self.is_hom == self.nonexpansive


def graph_hom_iff_nonexpansive_check(
    f: Mapping[str, str], g: Digraph, h: Digraph, maxlen: int | None = None
) -> HomCheck:
    """Compute arc preservation and nonexpansiveness independently.

    The two properties characterize the same maps, so ``agree`` is the
    checkable claim; it is None, not False, when a truncated distance
    leaves the nonexpansiveness verdict open.
    """
    if not g.is_reflexive or not h.is_reflexive:
        raise StructureError("the comparison needs reflexive digraphs")
    fd = dict(f)
    if sorted(fd) != list(g.vertices):
        raise InputError("the map must be defined on exactly the source vertices")
    for image in fd.values():
        h._check_vertex(image)
    is_hom = all((fd[a], fd[b]) in h.arcs for a, b in g.arcs)
    dist_g = all_zigzag_distances(g, maxlen)
    dist_h = all_zigzag_distances(h, maxlen)
    nonexpansive: bool | None = True
    for (x, y), dxy in dist_g.items():
        dim = dist_h[fd[x], fd[y]]
        if not dxy.complete or not dim.complete:
            nonexpansive = None
            break
        if not dim.value.leq(dxy.value):
            nonexpansive = False
            break
    return HomCheck(is_hom, nonexpansive)


def values_in_macneille(g: Digraph, maxlen: int | None = None) -> bool | None:
    """Whether every pairwise distance is a cut of the completion by
    cones; None when a truncated computation blocks the verdict."""
    dists = all_zigzag_distances(g, maxlen)
    if any(not d.complete for d in dists.values()):
        return None
    return all(words.in_macneille(d.value) for d in dists.values())


# ------------------------------------------------ the metric-space bridge


def zigzag_space(
    g: Digraph,
    maxlen: int | None = None,
    oplus_length_bound: int | None = None,
    carrier_cap: int = CARRIER_CAP,
) -> VSpace:
    """The word-valued metric space of a reflexive digraph.

    All distances must be certified complete.  The value carrier is
    the closure of the distance values at the given product-length
    bound (default: the longest generator present), so every
    carrier-quantified check downstream is relative to that closed
    set.
    """
    dists = all_zigzag_distances(g, maxlen)
    bad = sorted(pair for pair, d in dists.items() if not d.complete)
    if bad:
        raise CapError(
            f"the zigzag distance for {bad[0]} is not certified complete; "
            "raise maxlen"
        )
    values = {pair: d.value for pair, d in dists.items()}
    if oplus_length_bound is None:
        oplus_length_bound = max(
            1, max(v.max_generator_len() for v in values.values())
        )
    monoid = WordValueMonoid.from_values(
        set(values.values()), oplus_length_bound, carrier_cap
    )
    return VSpace.make(g.vertices, monoid, values)


# ------------------------------------------------------ prefix embedding


def claim_zigzag_embedding(
    u: str, length_bound: int = PREFIX_EMBED_CAP
) -> tuple[UpSet, ...]:
    """Embed the path graph of a word into the value algebra by prefixes.

    Position i goes to the principal up-set of the first i letters.
    The word-algebra distance between the images of i and j is
    verified to equal the principal up-set of the letters between them
    (involuted when j < i), which is the zigzag distance between the
    positions, so the embedding is isometric.
    """
    words.check_word(u)
    if len(u) > length_bound:
        raise CapError(f"word length {len(u)} exceeds the bound {length_bound}")
    phi = tuple(words.principal(u[:i]) for i in range(len(u) + 1))
    for i in range(len(u) + 1):
        for j in range(len(u) + 1):
            expected = words.principal(_segment_word(u, i, j))
            got = words.distance(phi[i], phi[j])
            if got != expected:
                raise InternalCheckError(
                    f"the prefix embedding is not isometric at ({i}, {j}): "
                    f"{got} != {expected}"
                )
    return phi


def _segment_word(u: str, i: int, j: int) -> str:
    return u[i:j] if i <= j else words.involute_word(u[j:i])


def _segment_value(u: str, i: int, j: int) -> UpSet:
    return words.principal(_segment_word(u, i, j))


# ----------------------------------------------------- product embedding


@dataclass(frozen=True)
class FactorMap:
    """One coordinate of a zigzag-product embedding.

    For a source pair and a word u below their distance, a
    nonexpansive map into the path graph of u sending the pair to the
    two ends; ``image`` lists each vertex with its path position.
    """

    pair: tuple[str, str]
    word: str
    image: tuple[tuple[str, int], ...]

    @cached_property
    def as_dict(self) -> dict[str, int]:
        return dict(self.image)


@dataclass(frozen=True, eq=False)
class ZigzagEmbedding:
    """A verified isometric embedding of a digraph into a product of
    path graphs, one coordinate per factor map."""

    graph: Digraph
    factors: tuple[FactorMap, ...]

    def coordinates(self, v: str) -> tuple[int, ...]:
        self.graph._check_vertex(v)
        return tuple(f.as_dict[v] for f in self.factors)

    def factor_words(self) -> tuple[str, ...]:
        return tuple(f.word for f in self.factors)

    def to_dot(self) -> str:
        """DOT source for the graph with coordinate labels."""
        lines = ["digraph {"]
        for v in self.graph.vertices:
            coords = ",".join(str(c) for c in self.coordinates(v))
            lines.append(f'  "{v}" [label="{v}\\n({coords})"];')
        for x, y in sorted(self.graph.arcs):
            if x != y:
                lines.append(f'  "{x}" -> "{y}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _extend_into_path(
    g: Digraph,
    values: Mapping[tuple[str, str], UpSet],
    x: str,
    y: str,
    u: str,
) -> dict[str, int]:
    """Extend {x -> 0, y -> len(u)} to a nonexpansive map into the
    path graph of u, one vertex at a time.

    The admissible positions for a new vertex form an intersection of
    balls of the path graph, which are integer intervals, and the
    pairwise intersections are nonempty by convexity, so the whole
    intersection is nonempty; the least admissible position is chosen
    for determinism.
    """
    n = len(u)
    image = {x: 0}
    image[y] = n
    for z in g.vertices:
        if z in image:
            continue
        admissible = [
            j
            for j in range(n + 1)
            if all(
                _segment_value(u, image[w], j).leq(values[w, z]) for w in image
            )
        ]
        if not admissible:
            raise InternalCheckError(
                f"single-point extension into the path graph of {u!r} "
                f"failed at vertex {z!r}"
            )
        image[z] = admissible[0]
    for a in g.vertices:
        for b in g.vertices:
            if not _segment_value(u, image[a], image[b]).leq(values[a, b]):
                raise InternalCheckError(
                    f"extension into the path graph of {u!r} is expansive "
                    f"at ({a!r}, {b!r})"
                )
    return image


def embed_into_zigzag_product(
    g: Digraph, maxlen: int | None = None, factor_cap: int = FACTOR_CAP
) -> ZigzagEmbedding:
    """Isometrically embed a digraph into a finite product of path
    graphs, when its distance values permit it.

    Requires every pairwise distance to be a cut of the completion by
    cones -- otherwise no product of path graphs can receive the
    digraph isometrically -- and every pair of vertices to be
    connected, since a disconnected pair would need factors of
    unbounded length, beyond any finite product.  One factor is built
    for each pair (x, y) and each word u below their distance, by
    nonexpansive single-point extension of {x -> start, y -> end};
    the coordinatewise join of the factor distances is then verified
    to reproduce every source distance.
    """
    dists = all_zigzag_distances(g, maxlen)
    bad = sorted(pair for pair, d in dists.items() if not d.complete)
    if bad:
        raise CapError(
            f"the zigzag distance for {bad[0]} is not certified complete; "
            "raise maxlen"
        )
    values = {pair: d.value for pair, d in dists.items()}
    not_cut = sorted(pair for pair, v in values.items() if not words.in_macneille(v))
    if not_cut:
        raise HypothesisError(
            f"the distance for {not_cut[0]} is not a cut of the completion "
            "by cones, so no product of path graphs receives this digraph "
            "isometrically"
        )
    disconnected = sorted(
        (x, y) for (x, y), v in values.items() if x != y and v.is_top
    )
    if disconnected:
        x, y = disconnected[0]
        raise CapError(
            f"vertices {x!r} and {y!r} are not connected: an embedding "
            "would need infinitely many factors of unbounded length"
        )
    factor_plan = [
        (x, y, u)
        for x in g.vertices
        for y in g.vertices
        for u in words.lower_cone(values[x, y].generators)
    ]
    if len(factor_plan) > factor_cap:
        raise CapError(
            f"the embedding needs {len(factor_plan)} factors (cap {factor_cap})"
        )
    factors = tuple(
        FactorMap(
            (x, y), u, tuple(sorted(_extend_into_path(g, values, x, y, u).items()))
        )
        for x, y, u in factor_plan
    )
    for a in g.vertices:
        for b in g.vertices:
            joined = words.join_all(
                _segment_value(f.word, f.as_dict[a], f.as_dict[b])
                for f in factors
            )
            if joined != values[a, b]:
                raise InternalCheckError(
                    f"the product embedding is not isometric at ({a!r}, {b!r})"
                )
    return ZigzagEmbedding(g, factors)


# ------------------------------------------------------------ boundedness


@dataclass(frozen=True)
class BoundedCert:
    """Certificate that a word-valued space is bounded over the cut
    values: the diameter is a cut below the top, and every nonzero cut
    value of the carrier at or below it has an accessibility witness,
    recorded as (value name, witness word)."""

    diameter: UpSet
    witnesses: tuple[tuple[str, str], ...]


def macneille_bounded(space: VSpace) -> BoundedCert:
    """Check boundedness of a word-valued space over the cut values.

    Quantifies over the carrier values that are cuts of the completion
    by cones: each nonzero cut at or below the diameter must admit a
    word w outside it with w followed by its involute inside it (the
    principal witness of accessibility).  Values of the carrier that
    are not cuts lie outside the completion and are not quantified.
    """
    monoid = space.monoid
    if not isinstance(monoid, WordValueMonoid):
        raise InputError("boundedness over cuts needs word values")
    diameter = space.diameter()
    if diameter.is_top:
        raise HypothesisError(
            "the diameter is the top value: some pair is disconnected"
        )
    if not words.in_macneille(diameter):
        raise HypothesisError("the diameter is not a cut of the completion")
    failures: list[str] = []
    witnesses: list[tuple[str, str]] = []
    for v in monoid.carrier:
        if v.is_zero or not v.leq(diameter) or not words.in_macneille(v):
            continue
        w = words.principal_accessibility_witness(v)
        if w is None:
            failures.append(monoid.name(v))
        else:
            witnesses.append((monoid.name(v), w))
    if failures:
        raise HypothesisError(
            "inaccessible cut value(s) at or below the diameter: "
            + ", ".join(sorted(failures))
        )
    return BoundedCert(diameter, tuple(sorted(witnesses)))


# ------------------------------------------------------ fixed-point demo


@dataclass(frozen=True, eq=False)
class ZigzagFixedPointDemo:
    """A verified fixed-point run on a digraph.

    ``route`` records which hypothesis was checked: "retract" (the
    digraph was presented as a retract of a supplied product of path
    graphs, retraction verified) or "direct" (hyperconvexity and
    boundedness over cuts verified on the digraph's own space).
    ``certificate`` is the solver's one-local-retract certificate for
    the fixed-point set.
    """

    graph: Digraph
    route: str
    fixed_points: tuple[str, ...]
    certificate: OLRResult
    bounded: BoundedCert | None


def _check_retraction(
    g: Digraph, factor_words: Iterable[str], retraction: Mapping[str, str]
) -> None:
    product = digraph_product(
        [zigzag_from_word(w).graph for w in factor_words]
    )
    for v in g.vertices:
        product._check_vertex(v)
    if g != product.restrict(g.vertices):
        raise InputError(
            "the digraph must be the induced subgraph of the product on "
            "its vertices"
        )
    rd = dict(retraction)
    if sorted(rd) != list(product.vertices):
        raise InputError("the retraction must be defined on the whole product")
    for v, image in rd.items():
        if image not in g._members:
            raise InputError(
                f"the retraction sends {v!r} outside the digraph"
            )
    for v in g.vertices:
        if rd[v] != v:
            raise InputError(f"the retraction moves the digraph vertex {v!r}")
    for x, y in product.arcs:
        if (rd[x], rd[y]) not in product.arcs:
            raise InputError(
                f"the retraction is not arc-preserving at ({x!r}, {y!r})"
            )


def zigzag_fixed_point_demo(
    g: Digraph,
    maps: Iterable[Mapping[str, str]],
    *,
    factor_words: Iterable[str] | None = None,
    retraction: Mapping[str, str] | None = None,
    maxlen: int | None = None,
) -> ZigzagFixedPointDemo:
    """Common fixed points of commuting endomorphisms of a digraph
    whose fixed-point hypothesis is verified first.

    Two routes establish the hypothesis.  Retract route: the digraph
    is the induced subgraph of the product of the given path graphs
    and the given retraction onto it is checked.  Direct route (no
    product given): the digraph's own space is checked hyperconvex
    relative to its value carrier and bounded over the cut values.
    Either way the solver then works on the digraph's space; with the
    hypothesis verified, a solver refusal is an internal error, not a
    user error.
    """
    if (factor_words is None) != (retraction is None):
        raise InputError(
            "the retract route needs both factor words and a retraction"
        )
    space = zigzag_space(g, maxlen)
    bounded: BoundedCert | None = None
    if factor_words is not None:
        _check_retraction(g, factor_words, retraction)
        route = "retract"
    else:
        ok, witness = space.check_axioms()
        if not ok:
            raise InternalCheckError(
                f"zigzag distances must satisfy the metric axioms: {witness}"
            )
        ok, witness = space.is_hyperconvex()
        if not ok:
            raise HypothesisError(
                "the digraph's space is not hyperconvex relative to its "
                f"value carrier: {witness}"
            )
        bounded = macneille_bounded(space)
        route = "direct"
    system = space.to_relsys()
    selfmaps = [SelfMap.make(dict(m), space.elements) for m in maps]
    try:
        fixed, certificate = system.common_fixed_points(selfmaps)
    except HypothesisError as exc:
        raise InternalCheckError(
            "the verified hypotheses guarantee a normal structure, but the "
            f"solver refused: {exc}"
        ) from exc
    return ZigzagFixedPointDemo(
        g, route, tuple(sorted(fixed)), certificate, bounded
    )
