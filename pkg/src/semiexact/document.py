"""The JSON algebra document: named semirings, semimodules, maps, sequences, diagrams.

A document is one JSON object with the keys ``semirings``, ``semimodules``,
``morphisms``, ``sequences`` and ``diagrams``, each mapping names to entries.
Entries may only refer to names defined earlier (the semiring ``N0`` is
always available). Builtins are written ``{"builtin": family, "k": n}``.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass, field

from .algebra import (
    NATURALS,
    Morphism,
    Semimodule,
    Semiring,
    builtin_semimodule,
    builtin_semiring,
    make_morphism,
    make_semimodule,
    make_semiring,
)
from .diagrams import Diagram
from .errors import DocumentSyntaxError, InputError, NameResolutionError
from .exactness import Sequence

SECTIONS = ("semirings", "semimodules", "morphisms", "sequences", "diagrams")


@dataclass
class AlgebraDocument:
    semirings: dict[str, Semiring] = field(default_factory=dict)
    semimodules: dict[str, Semimodule] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    sequences: dict[str, Sequence] = field(default_factory=dict)
    diagrams: dict[str, Diagram] = field(default_factory=dict)
    # (section, name) -> builtin entry, so serialization can write the reference back
    builtins: dict[tuple[str, str], dict] = field(default_factory=dict, compare=False)

    def semiring(self, name: str) -> Semiring:
        if name == NATURALS.name:
            return NATURALS
        return _lookup(self.semirings, "semiring", name)

    def semimodule(self, name: str) -> Semimodule:
        return _lookup(self.semimodules, "semimodule", name)

    def morphism(self, name: str) -> Morphism:
        return _lookup(self.morphisms, "morphism", name)

    def sequence(self, name: str) -> Sequence:
        return _lookup(self.sequences, "sequence", name)

    def diagram(self, name: str) -> Diagram:
        return _lookup(self.diagrams, "diagram", name)


def _lookup(table: dict, kind: str, name):
    if not isinstance(name, str):
        raise InputError(f"{kind} reference must be a name, got {name!r}")
    try:
        return table[name]
    except KeyError:
        raise NameResolutionError(f"unknown {kind} {name!r}") from None


def _section(raw: dict, key: str) -> dict:
    value = raw.get(key, {})
    if not isinstance(value, dict):
        raise InputError(f"{key!r} must be an object mapping names to entries")
    return value


ALLOWED_KEYS = {
    "semirings": {"builtin", "k", "add", "mul", "one"},
    "semimodules": {"builtin", "k", "add", "act", "semiring"},
    "morphisms": {"dom", "cod", "map"},
    "sequences": {"maps", "pad_left", "pad_right"},
    "diagrams": {"horiz", "vert"},
}


def _entry(value, where: str, section: str) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: entry must be an object")
    extra = sorted(set(value) - ALLOWED_KEYS[section])
    if extra:
        raise InputError(f"{where}: unknown keys {extra}")
    return value


@contextmanager
def _context(where: str):
    """Prefix shape and range errors with the entity being read."""
    try:
        yield
    except (DocumentSyntaxError, NameResolutionError):
        raise
    except InputError as e:
        if str(e).startswith(where):
            raise
        raise InputError(f"{where}: {e}") from None


def _field(entry: dict, key: str, where: str):
    if key not in entry:
        raise InputError(f"{where}: missing {key!r}")
    return entry[key]


def _builtin_args(entry: dict, where: str) -> tuple[str, int | None]:
    family = entry["builtin"]
    k = entry.get("k")
    if not isinstance(family, str) or (k is not None and (not isinstance(k, int) or isinstance(k, bool))):
        raise InputError(f"{where}: builtin needs a family name and an integer k")
    return family, k


def _builtin_ref(family: str, k: int | None) -> dict:
    return {"builtin": family} if k is None else {"builtin": family, "k": k}


def _read_semiring(doc: AlgebraDocument, name: str, e: dict, where: str) -> None:
    if name == NATURALS.name:
        raise InputError(f"{where}: the name is reserved")
    if "builtin" in e:
        family, k = _builtin_args(e, where)
        S = builtin_semiring(family, k)
        doc.builtins[("semirings", name)] = _builtin_ref(family, k)
    else:
        S = make_semiring(_field(e, "add", where), _field(e, "mul", where), e.get("one"), name)
    doc.semirings[name] = Semiring(S.add, S.mul, S.one, name)


def _read_semimodule(doc: AlgebraDocument, name: str, e: dict, where: str) -> None:
    S = doc.semiring(e.get("semiring", NATURALS.name))
    if "builtin" in e:
        family, k = _builtin_args(e, where)
        M = builtin_semimodule(family, k, S)
        doc.builtins[("semimodules", name)] = _builtin_ref(family, k)
    else:
        M = make_semimodule(_field(e, "add", where), e.get("act"), S, name)
    doc.semimodules[name] = Semimodule(M.add, M.act, S, name)


def _read_morphism(doc: AlgebraDocument, name: str, e: dict, where: str) -> None:
    dom = doc.semimodule(_field(e, "dom", where))
    cod = doc.semimodule(_field(e, "cod", where))
    doc.morphisms[name] = make_morphism(dom, cod, _field(e, "map", where), name)


def _read_sequence(doc: AlgebraDocument, name: str, e: dict, where: str) -> None:
    maps = _field(e, "maps", where)
    if not isinstance(maps, list):
        raise InputError(f"{where}: 'maps' must be a list of names")
    doc.sequences[name] = Sequence(
        tuple(doc.morphism(m) for m in maps),
        bool(e.get("pad_left", False)),
        bool(e.get("pad_right", False)),
    )


def _read_diagram(doc: AlgebraDocument, name: str, e: dict, where: str) -> None:
    horiz, vert = _field(e, "horiz", where), e.get("vert", [])
    if not isinstance(horiz, list) or not horiz or not all(isinstance(r, list) and r for r in horiz):
        raise InputError(f"{where}: 'horiz' must be a non-empty list of non-empty rows")
    if not isinstance(vert, list) or not all(isinstance(r, list) for r in vert):
        raise InputError(f"{where}: 'vert' must be a list of rows")
    doc.diagrams[name] = Diagram.from_maps(
        [[doc.morphism(m) for m in row] for row in horiz],
        [[doc.morphism(m) for m in row] for row in vert],
        name,
    )


_READERS = {
    "semirings": _read_semiring,
    "semimodules": _read_semimodule,
    "morphisms": _read_morphism,
    "sequences": _read_sequence,
    "diagrams": _read_diagram,
}


def parse(text: str) -> AlgebraDocument:
    """Read and fully validate a document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise InputError("a document must be a JSON object")
    unknown = sorted(set(raw) - set(SECTIONS))
    if unknown:
        raise InputError(f"unknown top-level keys {unknown}")
    doc = AlgebraDocument()
    for section in SECTIONS:
        for name, value in _section(raw, section).items():
            where = f"{section[:-1]} {name}"
            with _context(where):
                _READERS[section](doc, name, _entry(value, where, section), where)
    return doc


def _table(t) -> list[list[int]]:
    return [list(r) for r in t]


def _name_of(table: dict, obj, kind: str) -> str:
    for name, value in table.items():
        if value is obj:
            return name
    for name, value in table.items():
        if value == obj:
            return name
    raise NameResolutionError(f"{kind} {getattr(obj, 'name', obj)!r} is not named in the document")


def to_dict(doc: AlgebraDocument) -> dict:
    out: dict = {key: {} for key in SECTIONS}
    for name, S in doc.semirings.items():
        ref = doc.builtins.get(("semirings", name))
        out["semirings"][name] = dict(ref) if ref else {
            "add": _table(S.add), "mul": _table(S.mul), "one": S.one}
    for name, M in doc.semimodules.items():
        ref = doc.builtins.get(("semimodules", name))
        entry = dict(ref) if ref else {"add": _table(M.add)}
        if not ref and M.act is not None:
            entry["act"] = _table(M.act)
        entry["semiring"] = NATURALS.name if M.semiring.is_naturals else _name_of(
            doc.semirings, M.semiring, "semiring")
        out["semimodules"][name] = entry
    for name, f in doc.morphisms.items():
        out["morphisms"][name] = {
            "dom": _name_of(doc.semimodules, f.dom, "semimodule"),
            "cod": _name_of(doc.semimodules, f.cod, "semimodule"),
            "map": list(f.map),
        }
    for name, s in doc.sequences.items():
        out["sequences"][name] = {
            "maps": [_name_of(doc.morphisms, f, "morphism") for f in s.morphisms],
            "pad_left": s.pad_left,
            "pad_right": s.pad_right,
        }
    for name, d in doc.diagrams.items():
        out["diagrams"][name] = {
            "horiz": [[_name_of(doc.morphisms, f, "morphism") for f in row] for row in d.horiz],
            "vert": [[_name_of(doc.morphisms, f, "morphism") for f in row] for row in d.vert],
        }
    return out


def _dump(value, indent: int = 0) -> str:
    """JSON with integer lists kept on one line, so tables stay readable."""
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
        rows = [f"{pad}  {json.dumps(v)}" for v in value]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    return json.dumps(value)


def serialize(doc: AlgebraDocument) -> str:
    return _dump(to_dict(doc)) + "\n"
