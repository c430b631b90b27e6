"""Command-line front end: load inputs, run analyses, emit certificates.

Input files are JSON documents recognized by their fields: a digraph
has "vertices" and "arcs"; a poset "elements" and "covers"; a
relational system "elements" and "relations"; a space "elements",
"monoid" and "dist" (distance keys "x,y", word values as JSON arrays
of generator words).  Certificates are JSON with sorted keys and no
timestamps, so identical invocations produce identical bytes.  The
verify subcommand re-checks a certificate's witnesses against the
input, re-deriving definitional facts but never re-running the
searches that produced the witnesses.

Exit codes: 0 when a verdict was computed (negative verdicts
included), 2 for input errors, 3 for exceeded caps, 4 for violated
hypotheses, 1 for internal check failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import words
from .errors import (
    CapError,
    HypothesisError,
    InputError,
    InternalCheckError,
    RelmetricError,
)
from .poset import (
    GAP_CAP,
    Gap,
    Poset,
    fence_product_retract_demo,
    find_gaps,
    gap_hole,
    is_gap,
    make_fence,
    minimal_subgap,
    poset_product,
    poset_to_vspace,
    tarski_common_fixed_points,
    vspace_to_poset,
)
from .relsys import BALLSET_CAP, RelSys, SelfMap
from .vmetric import (
    CARRIER_CAP,
    RadiusMap,
    TableMonoid,
    VSpace,
    WordValueMonoid,
    canonical_embedding,
    parse_word_value,
    v4_monoid,
)
from .zigzag import (
    FACTOR_CAP,
    SEARCH_NODE_CAP,
    Digraph,
    embed_into_zigzag_product,
    macneille_bounded,
    values_in_macneille,
    zigzag_fixed_point_demo,
    zigzag_space,
    zz_generators,
    zz_member,
)

CHECK_PROPERTIES = (
    "axioms",
    "hyperconvex",
    "bounded",
    "macneille-bounded",
    "lattice",
    "normal",
    "macneille",
)


# ------------------------------------------------------------- loading


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"parse error in {path}: {exc.msg} (line {exc.lineno} "
            f"column {exc.colno})"
        ) from None


def _sniff(doc: Any, path: str) -> str:
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    for field, kind in (
        ("kind", "demo"),
        ("vertices", "digraph"),
        ("covers", "poset"),
        ("relations", "relsys"),
        ("dist", "vspace"),
    ):
        if field in doc:
            return kind
    raise InputError(
        f"{path}: unrecognized input; expected one of the fields "
        "'kind' (demo), 'vertices' (digraph), 'covers' (poset), "
        "'relations' (relational system), 'dist' (space)"
    )


def _load_digraph(doc: dict) -> Digraph:
    return Digraph.make(
        doc.get("vertices", ()), doc.get("arcs", ()), bool(doc.get("add_loops"))
    )


def _load_poset(doc: dict) -> Poset:
    covers = [tuple(pair) for pair in doc.get("covers", ())]
    return Poset.make(doc.get("elements", ()), covers)


def _load_relsys(doc: dict) -> RelSys:
    return RelSys.make(doc.get("elements", ()), doc.get("relations", {}))


def _split_pair_key(key: str) -> tuple[str, str]:
    parts = key.split(",")
    if len(parts) != 2:
        raise InputError(f"bad distance key {key!r}: expected 'x,y'")
    return parts[0], parts[1]


def _load_vspace(doc: dict, monoid_override: str | None) -> VSpace:
    monoid_spec = monoid_override if monoid_override is not None else doc.get("monoid")
    if monoid_spec is None:
        raise InputError("the space file needs a 'monoid' field")
    raw = {
        _split_pair_key(key): value for key, value in doc.get("dist", {}).items()
    }
    if monoid_spec == "V4":
        monoid = v4_monoid()
        dist = raw
    elif monoid_spec == "word-algebra":
        values = {pair: parse_word_value(text) for pair, text in raw.items()}
        bound = doc.get("oplus_length_bound")
        monoid = WordValueMonoid.from_values(set(values.values()), bound)
        dist = values
    elif isinstance(monoid_spec, dict):
        monoid = TableMonoid.make(
            monoid_spec.get("carrier", ()),
            [tuple(pair) for pair in monoid_spec.get("leq", ())],
            {_split_pair_key(k): v for k, v in monoid_spec.get("oplus", {}).items()},
            monoid_spec.get("involution", {}),
        )
        dist = raw
    else:
        raise InputError(
            f"unknown monoid {monoid_spec!r}: expected 'V4', 'word-algebra', or "
            "an inline table"
        )
    return VSpace.make(doc.get("elements", ()), monoid, dist)


class _Inputs:
    def __init__(self, path: str):
        self.path = path
        self.doc = _load_json(path)
        self.kind = _sniff(self.doc, path)


def _space_of(inputs: _Inputs, args) -> VSpace:
    if inputs.kind == "vspace":
        return _load_vspace(inputs.doc, args.monoid)
    if inputs.kind == "poset":
        return poset_to_vspace(_load_poset(inputs.doc))
    if inputs.kind == "digraph":
        return zigzag_space(
            _load_digraph(inputs.doc),
            maxlen=args.maxlen,
            carrier_cap=args.cap if args.cap is not None else CARRIER_CAP,
        )
    raise InputError(
        "this input carries no distance; supply a space, poset, or digraph"
    )


def _relsys_of(inputs: _Inputs, args) -> RelSys:
    if inputs.kind == "relsys":
        return _load_relsys(inputs.doc)
    return _space_of(inputs, args).to_relsys()


def _poset_of(inputs: _Inputs, args) -> Poset:
    if inputs.kind == "poset":
        return _load_poset(inputs.doc)
    if inputs.kind == "vspace":
        return vspace_to_poset(_load_vspace(inputs.doc, args.monoid))
    raise InputError("this command needs a poset (or a four-valued space)")


def _selfmap_doc(doc: Any, path: str) -> dict[str, str]:
    if not isinstance(doc, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in doc.items()
    ):
        raise InputError(f"{path}: expected a JSON object mapping names to names")
    return doc


# --------------------------------------------------------- serialization


def _jsonify(obj: Any) -> Any:
    if isinstance(obj, (tuple, list)):
        return [_jsonify(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonify(x) for x in obj)
    if isinstance(obj, words.UpSet):
        return list(obj.generators)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    return obj


def _serialize_value(monoid, v) -> Any:
    if isinstance(monoid, WordValueMonoid):
        return list(v.generators)
    return monoid.name(v)


def _base_payload(command: str, args, inputs: _Inputs | None) -> dict:
    return {
        "command": command,
        "input": inputs.path if inputs is not None else None,
        "options": {
            "cap": args.cap,
            "maxlen": args.maxlen,
            "monoid": args.monoid,
            "seed": args.seed,
        },
    }


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------- check


def _check_payload(args, inputs: _Inputs) -> dict:
    prop = args.property
    payload = _base_payload("check", args, inputs)
    payload["property"] = prop
    if prop == "axioms":
        ok, witness = _space_of(inputs, args).check_axioms()
        payload["verdict"] = ok
        payload["witness"] = _jsonify(witness)
    elif prop == "hyperconvex":
        ok, witness = _space_of(inputs, args).is_hyperconvex()
        payload["verdict"] = ok
        payload["witness"] = _jsonify(witness)
    elif prop == "bounded":
        space = _space_of(inputs, args)
        payload["verdict"] = space.is_bounded()
        payload["diameter"] = _serialize_value(space.monoid, space.diameter())
    elif prop == "macneille-bounded":
        space = _space_of(inputs, args)
        try:
            cert = macneille_bounded(space)
        except HypothesisError as exc:
            payload["verdict"] = False
            payload["reason"] = str(exc)
        else:
            payload["verdict"] = True
            payload["diameter"] = list(cert.diameter.generators)
            payload["witnesses"] = _jsonify(cert.witnesses)
    elif prop == "lattice":
        p = _poset_of(inputs, args)
        verdict = p.is_complete_lattice()
        payload["verdict"] = verdict
        payload["witness"] = None
        cap = args.cap if args.cap is not None else GAP_CAP
        if not verdict and len(p.elements) <= cap:
            gaps = find_gaps(p, cap)
            if gaps:
                payload["witness"] = {
                    "lower": list(gaps[0].lower),
                    "upper": list(gaps[0].upper),
                }
    elif prop == "normal":
        system = _relsys_of(inputs, args)
        cap = args.cap if args.cap is not None else BALLSET_CAP
        ok, witness = system.has_normal_structure(cap)
        payload["verdict"] = ok
        payload["witness"] = None if witness is None else sorted(witness)
    elif prop == "macneille":
        if inputs.kind != "digraph":
            raise InputError("the macneille check applies to digraphs")
        verdict = values_in_macneille(_load_digraph(inputs.doc), args.maxlen)
        payload["verdict"] = "unknown" if verdict is None else verdict
    else:
        raise InputError(
            f"unknown check property {prop!r}; choose from "
            + ", ".join(CHECK_PROPERTIES)
        )
    return payload


def _run_check(args):
    inputs = _Inputs(args.input)
    payload = _check_payload(args, inputs)
    dot = _load_digraph(inputs.doc).to_dot() if inputs.kind == "digraph" else None
    return payload, dot


# -------------------------------------------------------------- distance


def _run_distance(args):
    inputs = _Inputs(args.input)
    if args.src is None or args.dst is None:
        raise InputError("distance needs --from and --to")
    payload = _base_payload("distance", args, inputs)
    payload["from"] = args.src
    payload["to"] = args.dst
    dot = None
    if inputs.kind == "digraph":
        g = _load_digraph(inputs.doc)
        node_cap = args.cap if args.cap is not None else SEARCH_NODE_CAP
        d = zz_generators(g, args.src, args.dst, args.maxlen, node_cap)
        payload["generators"] = list(d.value.generators)
        payload["complete"] = d.complete
        dot = g.to_dot()
    else:
        space = _space_of(inputs, args)
        payload["value"] = _serialize_value(
            space.monoid, space.d(args.src, args.dst)
        )
    payload["verdict"] = True
    return payload, dot


# -------------------------------------------------------------- fixpoint


def _run_fixpoint(args):
    inputs = _Inputs(args.input)
    if not args.maps:
        raise InputError("fixpoint needs at least one --maps file")
    mappings = [_selfmap_doc(_load_json(p), p) for p in args.maps]
    payload = _base_payload("fixpoint", args, inputs)
    payload["maps"] = list(args.maps)
    if inputs.kind == "poset":
        p = _load_poset(inputs.doc)
        fixed = tarski_common_fixed_points(p, mappings)
        system = poset_to_vspace(p).to_relsys()
        olr = system.is_one_local_retract(set(fixed))
    else:
        system = _relsys_of(inputs, args)
        selfmaps = [SelfMap.make(m, system.elements) for m in mappings]
        cap = args.cap if args.cap is not None else BALLSET_CAP
        fixed, olr = system.common_fixed_points(selfmaps, cap)
    payload["fixed_points"] = sorted(fixed)
    payload["retract_table"] = olr.table_dict or {}
    payload["verdict"] = True
    return payload, None


# ----------------------------------------------------------------- embed


def _run_embed(args):
    inputs = _Inputs(args.input)
    payload = _base_payload("embed", args, inputs)
    if inputs.kind == "digraph":
        g = _load_digraph(inputs.doc)
        cap = args.cap if args.cap is not None else FACTOR_CAP
        embedding = embed_into_zigzag_product(g, args.maxlen, cap)
        payload["factors"] = [
            {
                "pair": list(f.pair),
                "word": f.word,
                "image": {v: j for v, j in f.image},
            }
            for f in embedding.factors
        ]
        payload["coordinates"] = {
            v: list(embedding.coordinates(v)) for v in g.vertices
        }
        payload["distances"] = {
            f"{x},{y}": list(
                zz_generators(g, x, y, args.maxlen).value.generators
            )
            for x in g.vertices
            for y in g.vertices
        }
        payload["verdict"] = True
        return payload, embedding.to_dot()
    space = _space_of(inputs, args)
    canonical_embedding(space)  # raises if the profiles were not isometric
    payload["coordinates"] = {
        x: {
            z: _serialize_value(space.monoid, space.d(z, x))
            for z in space.elements
        }
        for x in space.elements
    }
    payload["verdict"] = True
    return payload, None


# ------------------------------------------------------------------ gaps


def _gap_json(gap: Gap) -> dict:
    return {"lower": list(gap.lower), "upper": list(gap.upper)}


def _run_gaps(args):
    inputs = _Inputs(args.input)
    p = _poset_of(inputs, args)
    cap = args.cap if args.cap is not None else GAP_CAP
    gaps = find_gaps(p, cap)
    payload = _base_payload("gaps", args, inputs)
    payload["gaps"] = [
        dict(_gap_json(gap), minimal=_gap_json(minimal_subgap(p, gap)))
        for gap in gaps
    ]
    payload["complete_lattice"] = p.is_complete_lattice()
    payload["verdict"] = True
    return payload, None


# ----------------------------------------------------------------- holes


def _run_holes(args):
    inputs = _Inputs(args.input)
    p = _poset_of(inputs, args)
    cap = args.cap if args.cap is not None else GAP_CAP
    space = poset_to_vspace(p)
    holes = []
    for gap in find_gaps(p, cap):
        radii = gap_hole(p, gap)
        if not space.is_hole(radii):
            raise InternalCheckError(
                f"the radius map of the gap {gap} is not a hole"
            )
        holes.append({"gap": _gap_json(gap), "radii": dict(radii.radii)})
    payload = _base_payload("holes", args, inputs)
    payload["holes"] = holes
    payload["verdict"] = True
    return payload, None


# ------------------------------------------------------------------ demo


def _run_demo(args):
    inputs = _Inputs(args.input)
    doc = inputs.doc
    kind = doc.get("kind")
    payload = _base_payload("demo", args, inputs)
    payload["kind"] = kind
    if kind == "fence-retract":
        demo = fence_product_retract_demo(
            doc.get("orientations", ()),
            doc.get("sub", ()),
            doc.get("retraction", {}),
            doc.get("maps", ()),
        )
        payload["fixed_points"] = list(demo.fixed_points)
        payload["retract_table"] = demo.certificate.table_dict or {}
        payload["product_size"] = len(demo.product.elements)
        payload["verdict"] = True
        return payload, None
    if kind == "zigzag":
        graph_doc = doc.get("graph")
        if not isinstance(graph_doc, dict):
            raise InputError("the zigzag demo needs a 'graph' object")
        g = _load_digraph(graph_doc)
        maps = [_selfmap_doc(m, inputs.path) for m in doc.get("maps", ())]
        demo = zigzag_fixed_point_demo(
            g,
            maps,
            factor_words=doc.get("factor_words"),
            retraction=doc.get("retraction"),
            maxlen=args.maxlen,
        )
        payload["route"] = demo.route
        payload["fixed_points"] = list(demo.fixed_points)
        payload["retract_table"] = demo.certificate.table_dict or {}
        payload["bounded"] = (
            None
            if demo.bounded is None
            else {
                "diameter": list(demo.bounded.diameter.generators),
                "witnesses": _jsonify(demo.bounded.witnesses),
            }
        )
        payload["verdict"] = True
        return payload, g.to_dot()
    raise InputError(
        f"unknown demo kind {kind!r}: expected 'fence-retract' or 'zigzag'"
    )


# ---------------------------------------------------------------- verify


class _Mismatch(Exception):
    pass


def _expect(condition: bool, where: str) -> None:
    if not condition:
        raise _Mismatch(where)


def _cert_field(cert: dict, key: str) -> Any:
    if key not in cert:
        raise InputError(f"certificate is missing the field {key!r}")
    return cert[key]


def _args_from_cert(cert: dict, input_path: str) -> argparse.Namespace:
    options = cert.get("options") or {}
    return argparse.Namespace(
        input=input_path,
        cap=options.get("cap"),
        maxlen=options.get("maxlen"),
        monoid=options.get("monoid"),
        seed=options.get("seed"),
        property=cert.get("property"),
        src=cert.get("from"),
        dst=cert.get("to"),
        maps=cert.get("maps"),
        out=None,
        dot=None,
    )


def _verify_check(cert: dict, inputs: _Inputs, args) -> None:
    fresh = _check_payload(args, inputs)
    for key in sorted(set(fresh) | set(cert)):
        if key in ("command", "input", "options"):
            continue
        if fresh.get(key) != cert.get(key):
            raise _Mismatch(
                f"{key!r}: certificate has {cert.get(key)!r}, input gives "
                f"{fresh.get(key)!r}"
            )


def _verify_generator_list(g: Digraph, x: str, y: str, gens: list) -> None:
    for w in gens:
        _expect(
            zz_member(g, x, y, w), f"generator {w!r} of d({x!r},{y!r}): not a member"
        )
        for i in range(len(w)):
            shorter = w[:i] + w[i + 1 :]
            _expect(
                not zz_member(g, x, y, shorter),
                f"generator {w!r} of d({x!r},{y!r}): deletion {shorter!r} "
                "is already a member",
            )
    for w in gens:
        for v in gens:
            _expect(
                w == v or not words.is_subword(w, v),
                f"generators of d({x!r},{y!r}) are not an antichain",
            )


def _verify_distance(cert: dict, inputs: _Inputs, args) -> None:
    x = _cert_field(cert, "from")
    y = _cert_field(cert, "to")
    if inputs.kind == "digraph":
        g = _load_digraph(inputs.doc)
        _verify_generator_list(g, x, y, _cert_field(cert, "generators"))
    else:
        space = _space_of(inputs, args)
        fresh = _serialize_value(space.monoid, space.d(x, y))
        _expect(
            fresh == _cert_field(cert, "value"),
            f"value: certificate has {cert.get('value')!r}, input gives {fresh!r}",
        )


def _verify_retract_table(system: RelSys, fixed: list, table: dict) -> None:
    a = frozenset(fixed)
    _expect(
        sorted(table) == sorted(set(system.elements) - a),
        "retract table does not cover exactly the outside points",
    )
    for x, anchor in table.items():
        hit = frozenset(system.elements)
        for u in sorted(a):
            for rname in system.relation_names:
                b = system.ball(u, rname)
                if x in b:
                    hit &= b
        meet = hit & a
        _expect(bool(meet), f"retract table: no valid anchor exists for {x!r}")
        _expect(
            anchor == min(meet),
            f"retract table: anchor for {x!r} should be {min(meet)!r}, "
            f"certificate has {anchor!r}",
        )


def _verify_fixed_points(system: RelSys, mappings: list, fixed: list) -> None:
    selfmaps = [SelfMap.make(m, system.elements) for m in mappings]
    for i, f in enumerate(selfmaps):
        _expect(
            system.is_endomorphism(f), f"map {i} is not an endomorphism"
        )
    for i, f in enumerate(selfmaps):
        for j, h in enumerate(selfmaps[i + 1 :], start=i + 1):
            _expect(f.commutes_with(h), f"maps {i} and {j} do not commute")
    expected = sorted(
        x
        for x in system.elements
        if all(f.as_dict[x] == x for f in selfmaps)
    )
    _expect(
        expected == sorted(fixed),
        f"fixed points: certificate has {sorted(fixed)}, the maps fix "
        f"{expected}",
    )


def _verify_fixpoint(cert: dict, inputs: _Inputs, args) -> None:
    mappings = [
        _selfmap_doc(_load_json(p), p) for p in _cert_field(cert, "maps")
    ]
    if inputs.kind == "poset":
        system = poset_to_vspace(_load_poset(inputs.doc)).to_relsys()
    else:
        system = _relsys_of(inputs, args)
    fixed = _cert_field(cert, "fixed_points")
    _verify_fixed_points(system, mappings, fixed)
    _verify_retract_table(system, fixed, _cert_field(cert, "retract_table"))


def _verify_embed(cert: dict, inputs: _Inputs, args) -> None:
    if inputs.kind != "digraph":
        space = _space_of(inputs, args)
        fresh = {
            x: {
                z: _serialize_value(space.monoid, space.d(z, x))
                for z in space.elements
            }
            for x in space.elements
        }
        _expect(
            fresh == _cert_field(cert, "coordinates"),
            "coordinates do not match the distance profiles of the space",
        )
        return
    g = _load_digraph(inputs.doc)
    table = {}
    for key, gens in _cert_field(cert, "distances").items():
        x, y = _split_pair_key(key)
        _verify_generator_list(g, x, y, gens)
        table[x, y] = words.UpSet.from_words(gens)
    factors = _cert_field(cert, "factors")
    for factor in factors:
        x, y = factor["pair"]
        u = factor["word"]
        image = factor["image"]
        _expect(
            sorted(image) == list(g.vertices),
            f"factor ({x!r},{y!r},{u!r}): image does not cover the vertices",
        )
        _expect(
            image[x] == 0 and image[y] == len(u),
            f"factor ({x!r},{y!r},{u!r}): endpoints are not start and end",
        )
        for a in g.vertices:
            for b in g.vertices:
                i, j = image[a], image[b]
                seg = u[i:j] if i <= j else words.involute_word(u[j:i])
                _expect(
                    words.principal(seg).leq(table[a, b]),
                    f"factor ({x!r},{y!r},{u!r}): expansive at ({a!r},{b!r})",
                )
    for a in g.vertices:
        for b in g.vertices:
            joined = words.ZERO
            for factor in factors:
                i, j = factor["image"][a], factor["image"][b]
                u = factor["word"]
                seg = u[i:j] if i <= j else words.involute_word(u[j:i])
                joined = joined.join(words.principal(seg))
            _expect(
                joined == table[a, b],
                f"the factor distances do not reproduce d({a!r},{b!r})",
            )


def _verify_gaps(cert: dict, inputs: _Inputs, args) -> None:
    p = _poset_of(inputs, args)
    for entry in _cert_field(cert, "gaps"):
        lower, upper = entry["lower"], entry["upper"]
        _expect(
            is_gap(p, lower, upper),
            f"listed pair ({lower}, {upper}) is not a gap",
        )
        minimal = entry["minimal"]
        _expect(
            is_gap(p, minimal["lower"], minimal["upper"]),
            f"listed minimal pair of ({lower}, {upper}) is not a gap",
        )
        _expect(
            set(minimal["lower"]) <= set(lower)
            and set(minimal["upper"]) <= set(upper),
            f"minimal pair of ({lower}, {upper}) is not contained in it",
        )
    fresh = p.is_complete_lattice()
    _expect(
        fresh == _cert_field(cert, "complete_lattice"),
        f"complete_lattice: certificate has {cert.get('complete_lattice')!r}, "
        f"input gives {fresh!r}",
    )


def _verify_holes(cert: dict, inputs: _Inputs, args) -> None:
    p = _poset_of(inputs, args)
    space = poset_to_vspace(p)
    for entry in _cert_field(cert, "holes"):
        gap = entry["gap"]
        _expect(
            is_gap(p, gap["lower"], gap["upper"]),
            f"listed pair ({gap['lower']}, {gap['upper']}) is not a gap",
        )
        radii = RadiusMap.make(entry["radii"], space.elements)
        _expect(
            space.is_hole(radii),
            f"the radius map for ({gap['lower']}, {gap['upper']}) is not "
            "a hole",
        )


def _verify_demo(cert: dict, inputs: _Inputs, args) -> None:
    doc = inputs.doc
    kind = _cert_field(cert, "kind")
    fixed = _cert_field(cert, "fixed_points")
    if kind == "fence-retract":
        demo_maps = list(doc.get("maps", ()))
        product = poset_product(
            [make_fence(o) for o in doc.get("orientations", ())]
        )
        retraction = doc.get("retraction", {})
        _expect(
            sorted(retraction) == list(product.elements),
            "retraction is not defined on the whole product",
        )
        sub = set(doc.get("sub", ()))
        _expect(
            sub <= set(product.elements) and bool(sub),
            "the retract is not a nonempty subset of the product",
        )
        for x, image in retraction.items():
            _expect(
                image in sub, f"retraction sends {x!r} outside the retract"
            )
        for x in sub:
            _expect(retraction[x] == x, f"retraction moves {x!r}")
        for x in product.elements:
            for y in product.elements:
                if product.leq(x, y):
                    _expect(
                        product.leq(retraction[x], retraction[y]),
                        f"retraction is not order-preserving at ({x!r},{y!r})",
                    )
        system = poset_to_vspace(product.restrict(sub)).to_relsys()
        _verify_fixed_points(system, demo_maps, fixed)
        _verify_retract_table(
            system, fixed, _cert_field(cert, "retract_table")
        )
        return
    if kind == "zigzag":
        g = _load_digraph(doc.get("graph", {}))
        space = zigzag_space(g, args.maxlen)
        system = space.to_relsys()
        _verify_fixed_points(system, list(doc.get("maps", ())), fixed)
        _verify_retract_table(
            system, fixed, _cert_field(cert, "retract_table")
        )
        bounded = cert.get("bounded")
        if bounded is not None:
            diameter = words.UpSet.from_words(bounded["diameter"])
            fresh = space.diameter()
            _expect(
                diameter == fresh,
                f"diameter: certificate has {bounded['diameter']}, input "
                f"gives {list(fresh.generators)}",
            )
            for name, witness in bounded["witnesses"]:
                value = parse_word_value(name)
                _expect(
                    not value.member(witness),
                    f"bounded witness {witness!r} already lies in {name}",
                )
                _expect(
                    value.member(witness + words.involute_word(witness)),
                    f"bounded witness {witness!r} does not certify {name}",
                )
                _expect(
                    value.leq(diameter),
                    f"bounded value {name} is not below the diameter",
                )
        return
    raise InputError(f"unknown demo kind {kind!r} in the certificate")


_VERIFIERS = {
    "check": _verify_check,
    "distance": _verify_distance,
    "fixpoint": _verify_fixpoint,
    "embed": _verify_embed,
    "gaps": _verify_gaps,
    "holes": _verify_holes,
    "demo": _verify_demo,
}


def _run_verify(args):
    cert = _load_json(args.cert)
    if not isinstance(cert, dict):
        raise InputError(f"{args.cert}: expected a certificate object")
    command = _cert_field(cert, "command")
    verifier = _VERIFIERS.get(command)
    if verifier is None:
        raise InputError(f"cannot verify certificates of command {command!r}")
    input_path = args.input if args.input else _cert_field(cert, "input")
    if not input_path:
        raise InputError("no input path: pass --input or store it in the cert")
    cert_args = _args_from_cert(cert, input_path)
    inputs = _Inputs(input_path)
    payload = {
        "command": "verify",
        "target": args.cert,
        "target_command": command,
        "input": input_path,
    }
    try:
        verifier(cert, inputs, cert_args)
    except _Mismatch as mismatch:
        payload["verdict"] = False
        payload["detail"] = f"mismatch at {mismatch}"
    else:
        payload["verdict"] = True
        payload["detail"] = None
    return payload, None


# ------------------------------------------------------------------ main


_HANDLERS = {
    "check": _run_check,
    "distance": _run_distance,
    "fixpoint": _run_fixpoint,
    "embed": _run_embed,
    "gaps": _run_gaps,
    "holes": _run_holes,
    "demo": _run_demo,
    "verify": _run_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relmetric",
        description="Analyses and certificates for monoid-valued metric "
        "spaces, posets, relational systems, and zigzag digraphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--input",
        "--graph",
        dest="input",
        help="path to the JSON input document",
    )
    common.add_argument(
        "--monoid",
        help="override the monoid id of a space file (V4 or word-algebra)",
    )
    common.add_argument(
        "--maxlen", type=int, help="word-length budget for zigzag distances"
    )
    common.add_argument(
        "--cap", type=int, help="override the command's primary size cap"
    )
    common.add_argument(
        "--seed",
        type=int,
        help="recorded in the certificate for seeded reproducibility",
    )
    common.add_argument("--out", help="write the certificate to this file")
    common.add_argument("--dot", help="write a DOT drawing to this file")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser(
        "check", parents=[common], help="check a property of the input"
    )
    check.add_argument("property", help=", ".join(CHECK_PROPERTIES))
    distance = sub.add_parser(
        "distance", parents=[common], help="distance between two points"
    )
    distance.add_argument("--from", dest="src", help="source point")
    distance.add_argument("--to", dest="dst", help="target point")
    fixpoint = sub.add_parser(
        "fixpoint", parents=[common], help="common fixed points of maps"
    )
    fixpoint.add_argument(
        "--maps", nargs="+", default=[], help="JSON self-map files"
    )
    sub.add_parser(
        "embed", parents=[common], help="isometric embedding certificate"
    )
    sub.add_parser("gaps", parents=[common], help="gaps of a poset")
    sub.add_parser(
        "holes", parents=[common], help="holes read off the gaps of a poset"
    )
    sub.add_parser(
        "demo", parents=[common], help="verified fixed-point demonstrations"
    )
    verify = sub.add_parser(
        "verify", parents=[common], help="re-check a certificate's witnesses"
    )
    verify.add_argument("--cert", required=True, help="certificate file")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command != "verify" and not args.input:
        print("error: --input is required", file=sys.stderr)
        return 2
    try:
        payload, dot = _HANDLERS[args.command](args)
        if args.dot:
            if dot is None:
                raise InputError(
                    "--dot is not available for this command and input"
                )
            try:
                Path(args.dot).write_text(dot)
            except OSError as exc:
                raise InputError(f"cannot write {args.dot}: {exc}") from None
        _emit(payload, args)
    except RelmetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
