"""Instance files: atoms, named families of sets, named decompositions.

Text format (``#`` starts a comment)::

    atoms 4
    names a b c d          # optional, one label per atom
    family F:
      1100                 # bitstring, atom 0 first
      {1, 2}               # atom indices (or labels) in braces
    decomposition D:
      F                    # family names, one level per line

Files ending in ``.json`` hold the same model::

    {"atom_count": 4, "names": null,
     "families": {"F": [[0, 1], [1, 2]]},
     "decompositions": {"D": ["F"]}}

where a set may also be given as a bitstring.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Element, Family, SetAlgebra
from .errors import InputError
from .nonatomic import LeveledDecomposition

_NAME = re.compile(r"[A-Za-z_][\w.\-]*$")


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class InstanceFile:
    atom_count: int
    names: tuple[str, ...] | None = None
    families: dict[str, tuple[Element, ...]] = field(default_factory=dict)
    decompositions: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def validate(self) -> None:
        if self.atom_count < 1:
            raise InputError("atom_count must be positive")
        if self.names is not None:
            if len(self.names) != self.atom_count:
                raise InputError(f"{len(self.names)} names for {self.atom_count} atoms")
            if len(set(self.names)) != len(self.names):
                raise InputError("atom names must be distinct")
        for fname, sets in self.families.items():
            for k, e in enumerate(sets):
                if e.width != self.atom_count:
                    raise InputError(f"family {fname} set {k} has width {e.width}")
                if not e:
                    raise InputError(f"family {fname} set {k} is empty")
        for dname, levels in self.decompositions.items():
            if not levels:
                raise InputError(f"decomposition {dname} has no levels")
            for f in levels:
                if f not in self.families:
                    raise InputError(f"decomposition {dname} refers to undefined family {f}")

    @property
    def ambient(self) -> SetAlgebra:
        return SetAlgebra.power_set(self.atom_count)

    def family(self, name: str) -> Family:
        if name not in self.families:
            raise InputError(f"no family named {name}")
        if not self.families[name]:
            raise InputError(f"family {name} is empty")
        return Family(self.families[name], self.ambient)

    def decomposition(self, name: str) -> LeveledDecomposition:
        if name not in self.decompositions:
            raise InputError(f"no decomposition named {name}")
        ambient = self.ambient
        return LeveledDecomposition(ambient, tuple(self.family(f) for f in self.decompositions[name]))

    def label(self, atom: int) -> str:
        return self.names[atom] if self.names else str(atom)

    def format_set(self, e: Element) -> str:
        return "{" + ", ".join(self.label(i) for i in e.indices()) + "}"


def _parse_set(token: str, inst: InstanceFile, line: int | None) -> Element:
    token = token.strip()
    if token.startswith("{"):
        if not token.endswith("}"):
            raise ParseError(f"unterminated set {token!r}", line)
        parts = [p for p in re.split(r"[,\s]+", token[1:-1].strip()) if p]
        if not parts:
            raise ParseError("empty set", line)
        idx = []
        for p in parts:
            if inst.names and p in inst.names:
                idx.append(inst.names.index(p))
                continue
            try:
                i = int(p)
            except ValueError:
                raise ParseError(f"unknown atom {p!r}", line) from None
            if not 0 <= i < inst.atom_count:
                raise ParseError(f"atom index {i} out of range [0, {inst.atom_count})", line)
            idx.append(i)
        return Element.from_indices(idx, inst.atom_count)
    if token and set(token) <= {"0", "1"}:
        if len(token) != inst.atom_count:
            raise ParseError(
                f"bitstring {token!r} has length {len(token)}, expected {inst.atom_count}", line)
        e = Element.from_bitstring(token)
        if not e:
            raise ParseError("empty set", line)
        return e
    raise ParseError(f"expected a bitstring or a braced index list, got {token!r}", line)


def parse_instance(text: str) -> InstanceFile:
    inst = None
    refs = []
    section = None  # ("family" | "decomposition", name)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "atoms":
            if inst is not None:
                raise ParseError("duplicate atoms line", lineno)
            try:
                count = int(rest)
            except ValueError:
                raise ParseError(f"atom count must be an integer, got {rest!r}", lineno) from None
            if count < 1:
                raise ParseError("atom count must be positive", lineno)
            inst = InstanceFile(count)
            continue
        if inst is None:
            raise ParseError("the first statement must be 'atoms <count>'", lineno)
        if head == "names":
            names = tuple(rest.split())
            if section is not None or inst.names is not None:
                raise ParseError("names must directly follow the atoms line", lineno)
            if len(names) != inst.atom_count:
                raise ParseError(f"{len(names)} names for {inst.atom_count} atoms", lineno)
            if len(set(names)) != len(names) or any(not _NAME.match(n) for n in names):
                raise ParseError("atom names must be distinct identifiers", lineno)
            inst.names = names
            continue
        if head in ("family", "decomposition"):
            if not rest.endswith(":"):
                raise ParseError(f"expected '{head} <name>:'", lineno)
            name = rest[:-1].strip()
            if not _NAME.match(name):
                raise ParseError(f"bad name {name!r}", lineno)
            table = inst.families if head == "family" else inst.decompositions
            if name in table:
                raise ParseError(f"{head} {name} defined twice", lineno)
            table[name] = ()
            section = (head, name, lineno)
            continue
        if section is None:
            raise ParseError(f"unexpected {line!r} outside a section", lineno)
        kind, name, _ = section
        if kind == "family":
            inst.families[name] += (_parse_set(line, inst, lineno),)
        else:
            refs.append((line, lineno))
            inst.decompositions[name] += (line,)
    if inst is None:
        raise ParseError("missing 'atoms <count>' line")
    for ref, lineno in refs:
        if ref not in inst.families:
            raise ParseError(f"undefined family {ref!r}", lineno)
    for dname, levels in inst.decompositions.items():
        if not levels:
            raise ParseError(f"decomposition {dname} has no levels")
    inst.validate()
    return inst


def parse_json(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or not isinstance(data.get("atom_count"), int):
        raise ParseError("JSON instance needs an integer 'atom_count'")
    inst = InstanceFile(data["atom_count"], tuple(data["names"]) if data.get("names") else None)
    if inst.atom_count < 1:
        raise ParseError("atom count must be positive")
    for name, sets in data.get("families", {}).items():
        parsed = []
        for s in sets:
            if isinstance(s, str):
                parsed.append(_parse_set(s, inst, None))
            elif isinstance(s, list):
                if not s:
                    raise ParseError(f"family {name}: empty set")
                parsed.append(_parse_set("{" + ",".join(str(i) for i in s) + "}", inst, None))
            else:
                raise ParseError(f"family {name}: unreadable set {s!r}")
        inst.families[name] = tuple(parsed)
    for name, levels in data.get("decompositions", {}).items():
        inst.decompositions[name] = tuple(levels)
    inst.validate()
    return inst


def serialize(inst: InstanceFile) -> str:
    out = [f"atoms {inst.atom_count}"]
    if inst.names:
        out.append("names " + " ".join(inst.names))
    for name, sets in inst.families.items():
        out.append(f"family {name}:")
        out.extend("  {" + ", ".join(map(str, e.indices())) + "}" for e in sets)
    for name, levels in inst.decompositions.items():
        out.append(f"decomposition {name}:")
        out.extend(f"  {f}" for f in levels)
    return "\n".join(out) + "\n"


def serialize_json(inst: InstanceFile) -> str:
    return json.dumps({
        "atom_count": inst.atom_count,
        "names": list(inst.names) if inst.names else None,
        "families": {n: [e.indices() for e in sets] for n, sets in inst.families.items()},
        "decompositions": {n: list(levels) for n, levels in inst.decompositions.items()},
    }, indent=2) + "\n"


def load_instance(path: str | Path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_instance(text)


def instance_from_decomposition(dec: LeveledDecomposition, prefix: str = "B") -> InstanceFile:
    inst = InstanceFile(dec.ambient.atom_count)
    names = []
    for n, fam in enumerate(dec.levels):
        inst.families[f"{prefix}{n}"] = fam.members
        names.append(f"{prefix}{n}")
    inst.decompositions["levels"] = tuple(names)
    return inst
