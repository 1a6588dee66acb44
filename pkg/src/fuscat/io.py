"""JSON documents for rings, groups, functors, cocycles and actions.

Every document is an object with a ``kind`` field. A workspace manifest has
kind ``workspace`` and an ``entities`` list whose items are either paths
(relative to the manifest) or inline documents. Entities carry an ``id``;
fields that point at other entities hold either an id or an inline
document. A bare entity file loads as a one-entity workspace.

Canonical serialization is ``json.dumps`` with sorted keys, so a document
written by :func:`dumps` and read back serializes to the same bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .cohomology import Cocycle3, cocycle_witness
from .equivariantization import GroupAction, validate_action
from .errors import FuscatError
from .functors import FunctorMatrix, validate_functor
from .fusion_ring import FusionRing, validate
from .groups import FiniteGroup, GroupExtension, GroupHom, from_permutations
from .pointed import PointedCategory
from .validation import ValidationReport

KINDS = ("ring", "group", "functor", "cocycle", "action", "pointed", "group_sequence")


class ParseError(FuscatError):
    """A document is not valid JSON or lacks required fields."""


class DanglingReferenceError(FuscatError):
    """A reference names an entity the workspace does not define."""


class ValidationFailure(FuscatError):
    """An entity was built but fails its module's validation."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------- to documents

def ring_document(ring: FusionRing, id: str | None = None) -> dict:
    doc = {"kind": "ring", "labels": list(ring.labels), "unit": ring.unit, "dual": list(ring.dual),
           "N": [[i, j, k, v] for (i, j, k), v in ring.n.items()]}
    return _with_id(doc, id)


def group_document(g: FiniteGroup, id: str | None = None) -> dict:
    doc = {"kind": "group", "table": g.table.tolist()}
    if g.names is not None:
        doc["names"] = list(g.names)
    return _with_id(doc, id)


def functor_document(f: FunctorMatrix, source, target, id: str | None = None) -> dict:
    """``source`` and ``target`` are ids or inline documents."""
    return _with_id({"kind": "functor", "source": source, "target": target, "matrix": f.m.tolist()}, id)


def cocycle_document(a: Cocycle3, group, id: str | None = None) -> dict:
    return _with_id({"kind": "cocycle", "group": group, "modulus": a.modulus, "values": a.flat()}, id)


def action_document(a: GroupAction, group, ring, id: str | None = None) -> dict:
    return _with_id({"kind": "action", "group": group, "ring": ring, "perms": a.perms.tolist()}, id)


def pointed_document(group, cocycle, id: str | None = None) -> dict:
    return _with_id({"kind": "pointed", "group": group, "cocycle": cocycle}, id)


def sequence_document(ext: GroupExtension, kernel, group, quotient, id: str | None = None) -> dict:
    return _with_id({"kind": "group_sequence", "kernel": kernel, "group": group, "quotient": quotient,
                     "inclusion": list(ext.inclusion.map), "projection": list(ext.projection.map)}, id)


def _with_id(doc: dict, id: str | None) -> dict:
    if id is not None:
        doc["id"] = id
    return doc


def to_document(entity, id: str | None = None) -> dict:
    """Self-contained document with every dependency inlined."""
    if isinstance(entity, FusionRing):
        return ring_document(entity, id)
    if isinstance(entity, FiniteGroup):
        return group_document(entity, id)
    if isinstance(entity, FunctorMatrix):
        return functor_document(entity, ring_document(entity.source), ring_document(entity.target), id)
    if isinstance(entity, Cocycle3):
        return cocycle_document(entity, group_document(entity.group), id)
    if isinstance(entity, GroupAction):
        return action_document(entity, group_document(entity.group), ring_document(entity.ring), id)
    if isinstance(entity, PointedCategory):
        g = group_document(entity.group)
        return pointed_document(g, cocycle_document(entity.alpha, g), id)
    if isinstance(entity, GroupExtension):
        return sequence_document(entity, group_document(entity.kernel), group_document(entity.group),
                                 group_document(entity.quotient), id)
    raise TypeError(f"cannot serialize {type(entity).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def dumps_pretty(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1)


# ---------------------------------------------------------------- workspace

@dataclass
class _Raw:
    doc: dict
    origin: str


@dataclass
class Workspace:
    entities: dict[str, Any] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)
    failures: dict[str, ValidationReport] = field(default_factory=dict)
    origins: dict[str, str] = field(default_factory=dict)

    def get(self, id: str, kind: str | None = None):
        if id in self.failures:
            raise ValidationFailure(f"{self.origins.get(id, '?')}: entity {id!r} failed validation",
                                    self.failures[id])
        if id not in self.entities:
            raise DanglingReferenceError(f"no entity {id!r} in the workspace")
        if kind is not None and self.kinds[id] != kind:
            raise ParseError(f"entity {id!r} is a {self.kinds[id]}, not a {kind}")
        return self.entities[id]

    def ids(self, kind: str | None = None) -> list[str]:
        return [i for i, k in self.kinds.items() if kind is None or k == kind]

    def only(self, kind: str) -> str:
        """The id of the single entity of ``kind``; named entities take priority over inline ones."""
        ids = self.ids(kind)
        named = [i for i in ids if "#" not in i]
        ids = named or ids
        if len(ids) != 1:
            raise ParseError(f"expected exactly one {kind} in the workspace, found {sorted(ids)}; pass an id")
        return ids[0]

    def __len__(self):
        return len(self.kinds)

    def __contains__(self, id):
        return id in self.kinds


def builtin_names() -> list[str]:
    root = resources.files("fuscat") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _builtin_path(name: str):
    return resources.files("fuscat") / "corpus" / f"{name}.json"


def _read(path) -> tuple[Any, str]:
    p = Path(str(path))
    if not p.exists():
        name = str(path)
        if name in builtin_names():
            ref = _builtin_path(name)
            return _parse(ref.read_text(), f"builtin:{name}"), f"builtin:{name}"
        raise ParseError(f"{path}: no such file or builtin corpus entry")
    return _parse(p.read_text(), str(p)), str(p)


def _parse(text: str, origin: str):
    if not text.strip():
        return {"kind": "workspace", "entities": []}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load(path, strict: bool = True) -> Workspace:
    """Load a manifest, a single entity file, or a builtin corpus name.

    Parse errors and dangling references always raise. Entities failing
    validation raise :class:`ValidationFailure` when ``strict``; otherwise they
    are recorded in ``failures`` and refuse to be fetched.
    """
    doc, origin = _read(path)
    base = Path(str(path)).parent if not origin.startswith("builtin:") else None
    return load_document(doc, origin, base, strict)


def loads(text: str, strict: bool = True, origin: str = "<string>") -> Workspace:
    return load_document(_parse(text, origin), origin, None, strict)


def load_document(doc, origin: str = "<document>", base: Path | None = None, strict: bool = True) -> Workspace:
    raws: dict[str, _Raw] = {}
    _collect(doc, origin, base, raws)
    builder = _Builder(raws)
    for id in list(raws):
        builder.build(id)
    ws = builder.ws
    if strict and ws.failures:
        first = next(iter(ws.failures))
        err = ValidationFailure(
            f"{ws.origins[first]}: {ws.kinds[first]} {first!r} failed validation:\n{ws.failures[first]}",
            ws.failures[first],
        )
        err.all_failures = dict(ws.failures)
        raise err
    return ws


def _collect(doc, origin, base, raws, counter=None):
    counter = counter if counter is not None else [0]
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError(f"{origin}: expected an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "workspace":
        items = doc.get("entities", [])
        if not isinstance(items, list):
            raise ParseError(f"{origin}: 'entities' must be a list")
        for n, item in enumerate(items):
            if isinstance(item, str):
                if base is None:
                    sub, sub_origin = _read(item)
                    sub_base = None
                else:
                    sub, sub_origin = _read(base / item)
                    sub_base = (base / item).parent
                _collect(sub, sub_origin, sub_base, raws, counter)
            else:
                _collect(item, f"{origin}[entities][{n}]", base, raws, counter)
        return
    if kind not in KINDS:
        raise ParseError(f"{origin}: unknown kind {kind!r}")
    id = doc.get("id")
    if id is None:
        counter[0] += 1
        id = f"#{counter[0]}"
    if not isinstance(id, str):
        raise ParseError(f"{origin}: id must be a string")
    if id in raws:
        raise ParseError(f"{origin}: duplicate id {id!r} (also in {raws[id].origin})")
    raws[id] = _Raw(doc, origin)


def _require(doc: dict, key: str, origin: str):
    if key not in doc:
        raise ParseError(f"{origin}: {doc.get('kind')} document lacks field {key!r}")
    return doc[key]


class _Builder:
    def __init__(self, raws: dict[str, _Raw]):
        self.raws = raws
        self.ws = Workspace()
        self.active: set[str] = set()
        self.inline = 0

    def build(self, id: str):
        ws = self.ws
        if id in ws.kinds:
            return ws.entities.get(id)
        if id in self.active:
            raise ParseError(f"{self.raws[id].origin}: reference cycle through {id!r}")
        raw = self.raws[id]
        self.active.add(id)
        try:
            entity, report = self._make(raw.doc, raw.origin, id)
        finally:
            self.active.discard(id)
        ws.kinds[id] = raw.doc["kind"]
        ws.origins[id] = raw.origin
        if report is not None and not report.ok:
            ws.failures[id] = report
        else:
            ws.entities[id] = entity
        return entity

    def ref(self, value, kind: str, origin: str, field_name: str, owner: str):
        if isinstance(value, str):
            if value not in self.raws:
                raise DanglingReferenceError(f"{origin}: {field_name} refers to missing entity {value!r}")
            if self.raws[value].doc.get("kind") != kind:
                raise ParseError(f"{origin}: {field_name} {value!r} is not a {kind}")
            entity = self.build(value)
            if value in self.ws.failures:
                raise ValidationFailure(f"{origin}: {field_name} {value!r} failed validation",
                                        self.ws.failures[value])
            return entity
        if isinstance(value, dict):
            if value.get("kind") != kind:
                raise ParseError(f"{origin}: inline {field_name} must be a {kind} document")
            sub_id = value.get("id") or f"{owner}#{field_name}"
            if sub_id in self.raws and self.raws[sub_id].doc is not value:
                raise ParseError(f"{origin}: inline {field_name} reuses id {sub_id!r}")
            self.raws[sub_id] = _Raw(value, f"{origin}[{field_name}]")
            return self.ref(sub_id, kind, origin, field_name, owner)
        raise ParseError(f"{origin}: {field_name} must be an id or an inline {kind} document")

    def _make(self, doc: dict, origin: str, id: str):
        kind = doc["kind"]
        try:
            return getattr(self, f"_make_{kind}")(doc, origin, id)
        except FuscatError:
            raise
        except (TypeError, ValueError, KeyError, IndexError) as exc:
            raise ParseError(f"{origin}: malformed {kind} document: {exc}") from None

    def _make_ring(self, doc, origin, id):
        n = _require(doc, "N", origin)
        if not all(isinstance(q, list) and len(q) == 4 for q in n):
            raise ParseError(f"{origin}: N entries must be [i, j, k, n]")
        ring = FusionRing(_require(doc, "labels", origin), _require(doc, "unit", origin),
                          _require(doc, "dual", origin), [tuple(q) for q in n])
        return ring, validate(ring)

    def _make_group(self, doc, origin, id):
        names = doc.get("names")
        if "table" in doc:
            return FiniteGroup(doc["table"], names), None
        if "permutations" in doc:
            perms = doc["permutations"]
            g = from_permutations(int(perms["degree"]), perms["generators"])
            if names is not None:
                g = FiniteGroup(g.table, names, check=False)
            return g, None
        raise ParseError(f"{origin}: group document needs 'table' or 'permutations'")

    def _make_functor(self, doc, origin, id):
        src = self.ref(_require(doc, "source", origin), "ring", origin, "source", id)
        tgt = self.ref(_require(doc, "target", origin), "ring", origin, "target", id)
        f = FunctorMatrix(src, tgt, _require(doc, "matrix", origin))
        return f, validate_functor(f)

    def _make_cocycle(self, doc, origin, id):
        g = self.ref(_require(doc, "group", origin), "group", origin, "group", id)
        a = Cocycle3.from_flat(g, int(_require(doc, "modulus", origin)), _require(doc, "values", origin))
        report = ValidationReport()
        bad = cocycle_witness(a)
        if bad is not None:
            report.add("axiom", "cocycle", bad, "d alpha is nonzero")
        return a, report

    def _make_action(self, doc, origin, id):
        g = self.ref(_require(doc, "group", origin), "group", origin, "group", id)
        ring = self.ref(_require(doc, "ring", origin), "ring", origin, "ring", id)
        a = GroupAction(g, ring, _require(doc, "perms", origin))
        return a, validate_action(a)

    def _make_pointed(self, doc, origin, id):
        g = self.ref(_require(doc, "group", origin), "group", origin, "group", id)
        a = self.ref(_require(doc, "cocycle", origin), "cocycle", origin, "cocycle", id)
        if a.group != g:
            raise ParseError(f"{origin}: the cocycle lives on a different group")
        return PointedCategory(g, a), None

    def _make_group_sequence(self, doc, origin, id):
        k = self.ref(_require(doc, "kernel", origin), "group", origin, "kernel", id)
        g = self.ref(_require(doc, "group", origin), "group", origin, "group", id)
        q = self.ref(_require(doc, "quotient", origin), "group", origin, "quotient", id)
        incl = GroupHom(k, g, _require(doc, "inclusion", origin))
        proj = GroupHom(g, q, _require(doc, "projection", origin))
        return GroupExtension(k, g, q, incl, proj), None


def save(ws: Workspace, directory, manifest: str = "workspace.json") -> Path:
    """Write one file per named entity plus a manifest; references stay by id."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = []
    for id in ws.ids():
        entity = ws.get(id)
        doc = _document_by_ref(entity, id, ws)
        fname = f"{_safe(id)}.json"
        (directory / fname).write_text(dumps_pretty(doc) + "\n")
        files.append(fname)
    path = directory / manifest
    path.write_text(dumps_pretty({"kind": "workspace", "entities": files}) + "\n")
    return path


def _safe(id: str) -> str:
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in id)


def _find(ws: Workspace, entity, kind: str):
    for id in ws.ids(kind):
        other = ws.entities.get(id)
        if other is entity or (other is not None and type(other) is type(entity) and _same(other, entity)):
            return id
    return None


def _same(a, b) -> bool:
    try:
        return bool(a == b)
    except (TypeError, ValueError):
        return False


def _document_by_ref(entity, id: str, ws: Workspace) -> dict:
    def ref(obj, kind):
        found = _find(ws, obj, kind)
        return found if found is not None else to_document(obj)

    if isinstance(entity, FunctorMatrix):
        return functor_document(entity, ref(entity.source, "ring"), ref(entity.target, "ring"), id)
    if isinstance(entity, Cocycle3):
        return cocycle_document(entity, ref(entity.group, "group"), id)
    if isinstance(entity, GroupAction):
        return action_document(entity, ref(entity.group, "group"), ref(entity.ring, "ring"), id)
    if isinstance(entity, PointedCategory):
        return pointed_document(ref(entity.group, "group"), ref(entity.alpha, "cocycle"), id)
    if isinstance(entity, GroupExtension):
        return sequence_document(entity, ref(entity.kernel, "group"), ref(entity.group, "group"),
                                 ref(entity.quotient, "group"), id)
    return to_document(entity, id)
