"""Interface-definition parsing and the feature -> standard catalog.

The grammar is a deliberate subset of WebIDL: ``interface`` and
``partial interface`` blocks, an optional inheritance clause, ``attribute`` /
``readonly attribute`` members, operations, and ``constructor``.  Extended
attributes in ``[...]`` are skipped.  Argument and return types are kept as
opaque strings; the catalog only needs names.

A mutable attribute contributes two features (a getter and a setter); a
``readonly`` attribute contributes only the getter.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .errors import CatalogError, IdlSyntaxError

IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

_KEYWORDS = {"interface", "partial", "readonly", "attribute", "constructor"}


class MemberKind(str, Enum):
    METHOD = "method"
    ATTRIBUTE_GET = "attribute_get"
    ATTRIBUTE_SET = "attribute_set"
    CONSTRUCTOR = "constructor"


@dataclass(frozen=True, order=True)
class FeatureId:
    """One JavaScript-exposed feature: an interface member plus access kind."""

    interface_name: str
    member_name: str
    member_kind: MemberKind

    def __post_init__(self) -> None:
        if not IDENTIFIER_RE.match(self.interface_name):
            raise CatalogError(f"invalid interface name: {self.interface_name!r}")
        if not IDENTIFIER_RE.match(self.member_name):
            raise CatalogError(f"invalid member name: {self.member_name!r}")


@dataclass(frozen=True, order=True)
class StandardId:
    name: str
    abbreviation: str

    def __post_init__(self) -> None:
        if not self.name or not self.abbreviation:
            raise CatalogError("standard name and abbreviation must be non-empty")


@dataclass(frozen=True)
class Member:
    kind: MemberKind
    name: str
    readonly: bool = False
    type_text: str = ""
    args_text: str | None = None


@dataclass
class InterfaceDefinition:
    name: str
    parent: str | None
    members: list[Member]
    is_partial: bool = False


@dataclass(frozen=True)
class FeatureCatalog:
    """Total assignment of features to standards.

    Every feature maps to exactly one standard, and every referenced
    standard is present in ``standards``.
    """

    assignments: Mapping[FeatureId, str]
    standards: Mapping[str, StandardId]

    def __post_init__(self) -> None:
        for feature, abbrev in self.assignments.items():
            if abbrev not in self.standards:
                raise CatalogError(
                    f"feature {feature.interface_name}.{feature.member_name} "
                    f"assigned to unknown standard {abbrev!r}"
                )

    def features_of(self, abbreviation: str) -> set[FeatureId]:
        if abbreviation not in self.standards:
            raise CatalogError(f"unknown standard: {abbreviation!r}")
        return {f for f, a in self.assignments.items() if a == abbreviation}


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


_PUNCT = set("{}();:,<>=?")


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
        elif text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise IdlSyntaxError("unterminated comment", line, col)
            skipped = text[i : end + 2]
            line += skipped.count("\n")
            if "\n" in skipped:
                col = len(skipped) - skipped.rfind("\n")
            else:
                col += len(skipped)
            i = end + 2
        elif ch == "[":
            # Extended attributes are skipped verbatim (balanced brackets).
            depth = 0
            start_line, start_col = line, col
            while i < n:
                if text[i] == "[":
                    depth += 1
                elif text[i] == "]":
                    depth -= 1
                elif text[i] == "\n":
                    line += 1
                    col = 0
                i += 1
                col += 1
                if depth == 0:
                    break
            else:
                raise IdlSyntaxError("unterminated extended attribute", start_line, start_col)
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token(text[i:j], line, col))
            col += j - i
            i = j
        elif ch.isdigit() or ch == "-" or ch == '"':
            # Numeric/string literals only occur inside argument defaults,
            # which are captured opaquely; a bare literal elsewhere is noise.
            j = i
            if ch == '"':
                j = text.find('"', i + 1)
                if j < 0:
                    raise IdlSyntaxError("unterminated string", line, col)
                j += 1
            else:
                while j < n and (text[j].isalnum() or text[j] in ".-"):
                    j += 1
            tokens.append(_Token(text[i:j], line, col))
            col += j - i
            i = j
        elif ch in _PUNCT:
            tokens.append(_Token(ch, line, col))
            i += 1
            col += 1
        else:
            raise IdlSyntaxError(f"unexpected character {ch!r}", line, col)
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[_Token], text_len_line: int):
        self._tokens = tokens
        self._pos = 0
        self._eof_line = text_len_line

    def peek(self) -> _Token | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def next(self, expected: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise IdlSyntaxError(
                f"unexpected end of input{f', expected {expected!r}' if expected else ''}",
                self._eof_line,
                1,
            )
        self._pos += 1
        if expected is not None and tok.text != expected:
            raise IdlSyntaxError(f"expected {expected!r}, found {tok.text!r}", tok.line, tok.column)
        return tok


# ---------------------------------------------------------------------------
# Parser


def parse_webidl(text: str) -> list[InterfaceDefinition]:
    """Parse a document of interface blocks, in document order.

    Partial interfaces are returned unmerged; merging happens in
    :func:`build_catalog`.
    """
    stream = _TokenStream(_tokenize(text), text.count("\n") + 1)
    definitions: list[InterfaceDefinition] = []
    while stream.peek() is not None:
        definitions.append(_parse_interface(stream))
    return definitions


def _parse_interface(stream: _TokenStream) -> InterfaceDefinition:
    tok = stream.next()
    is_partial = False
    if tok.text == "partial":
        is_partial = True
        tok = stream.next()
    if tok.text != "interface":
        raise IdlSyntaxError(f"unknown keyword {tok.text!r}", tok.line, tok.column)
    name_tok = stream.next()
    if not IDENTIFIER_RE.match(name_tok.text) or name_tok.text in _KEYWORDS:
        raise IdlSyntaxError(f"invalid interface name {name_tok.text!r}", name_tok.line, name_tok.column)
    parent: str | None = None
    tok = stream.next()
    if tok.text == ":":
        parent_tok = stream.next()
        if not IDENTIFIER_RE.match(parent_tok.text):
            raise IdlSyntaxError(
                f"invalid parent name {parent_tok.text!r}", parent_tok.line, parent_tok.column
            )
        parent = parent_tok.text
        tok = stream.next()
    if tok.text != "{":
        raise IdlSyntaxError(f"expected '{{', found {tok.text!r}", tok.line, tok.column)

    members: list[Member] = []
    seen: dict[str, str] = {}  # member name -> family, for duplicate detection
    while True:
        tok = stream.peek()
        if tok is None:
            raise IdlSyntaxError("unterminated interface body", name_tok.line, name_tok.column)
        if tok.text == "}":
            stream.next()
            break
        members.extend(_parse_member(stream, seen))
    stream.next(";")
    return InterfaceDefinition(name_tok.text, parent, members, is_partial)


def _parse_member(stream: _TokenStream, seen: dict[str, str]) -> list[Member]:
    tok = stream.peek()
    assert tok is not None

    if tok.text == "readonly" or tok.text == "attribute":
        readonly = tok.text == "readonly"
        stream.next()
        if readonly:
            stream.next("attribute")
        type_tokens: list[_Token] = []
        while True:
            t = stream.next()
            if t.text == ";":
                break
            type_tokens.append(t)
        if len(type_tokens) < 2:
            last = type_tokens[-1] if type_tokens else tok
            raise IdlSyntaxError("attribute requires a type and a name", last.line, last.column)
        name_tok = type_tokens[-1]
        _check_member_name(name_tok)
        _check_duplicate(seen, name_tok, "attribute")
        type_text = _join_tokens(type_tokens[:-1])
        members = [Member(MemberKind.ATTRIBUTE_GET, name_tok.text, readonly, type_text)]
        if not readonly:
            members.append(Member(MemberKind.ATTRIBUTE_SET, name_tok.text, False, type_text))
        return members

    if tok.text == "constructor":
        ctor_tok = stream.next()
        args = _parse_args(stream)
        stream.next(";")
        _check_duplicate(seen, ctor_tok, "constructor")
        return [Member(MemberKind.CONSTRUCTOR, "constructor", False, "", args)]

    # Operation: <return type tokens> name ( args ) ;
    sig_tokens: list[_Token] = []
    while True:
        t = stream.peek()
        if t is None:
            raise IdlSyntaxError("unterminated member", tok.line, tok.column)
        if t.text == "(":
            break
        if t.text in "{};":
            raise IdlSyntaxError(f"expected member declaration, found {t.text!r}", t.line, t.column)
        sig_tokens.append(stream.next())
    if len(sig_tokens) < 2:
        raise IdlSyntaxError("operation requires a return type and a name", tok.line, tok.column)
    name_tok = sig_tokens[-1]
    _check_member_name(name_tok)
    _check_duplicate(seen, name_tok, "method")
    args = _parse_args(stream)
    stream.next(";")
    return [Member(MemberKind.METHOD, name_tok.text, False, _join_tokens(sig_tokens[:-1]), args)]


def _parse_args(stream: _TokenStream) -> str:
    stream.next("(")
    parts: list[str] = []
    depth = 1
    while True:
        t = stream.next()
        if t.text in "{};":
            raise IdlSyntaxError("unterminated argument list", t.line, t.column)
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
            if depth == 0:
                return " ".join(parts)
        parts.append(t.text)


def _check_member_name(tok: _Token) -> None:
    if not IDENTIFIER_RE.match(tok.text) or tok.text in _KEYWORDS:
        raise IdlSyntaxError(f"invalid member name {tok.text!r}", tok.line, tok.column)


def _check_duplicate(seen: dict[str, str], tok: _Token, family: str) -> None:
    key = "constructor" if family == "constructor" else tok.text
    if key in seen:
        raise IdlSyntaxError(f"duplicate member {key!r}", tok.line, tok.column)
    seen[key] = family


def _join_tokens(tokens: list[_Token]) -> str:
    # Re-space opaque type text; generic brackets hug their payload.
    out = ""
    for t in tokens:
        if t.text in {"<", ">", "?"} or out.endswith("<") or not out:
            out += t.text
        else:
            out += " " + t.text
    return out


def serialize_webidl(definitions: Iterable[InterfaceDefinition]) -> str:
    """Render definitions back to the subset grammar.

    Inverse of :func:`parse_webidl` up to whitespace: attribute get/set
    pairs re-collapse into a single ``attribute`` declaration.
    """
    blocks: list[str] = []
    for d in definitions:
        head = "partial interface" if d.is_partial else "interface"
        inherit = f" : {d.parent}" if d.parent else ""
        lines = [f"{head} {d.name}{inherit} {{"]
        setters = {m.name for m in d.members if m.kind is MemberKind.ATTRIBUTE_SET}
        for m in d.members:
            if m.kind is MemberKind.ATTRIBUTE_SET:
                continue  # folded into the getter's declaration
            if m.kind is MemberKind.ATTRIBUTE_GET:
                ro = "readonly " if m.readonly and m.name not in setters else ""
                lines.append(f"  {ro}attribute {m.type_text or 'any'} {m.name};")
            elif m.kind is MemberKind.CONSTRUCTOR:
                lines.append(f"  constructor({m.args_text or ''});")
            else:
                lines.append(f"  {m.type_text or 'any'} {m.name}({m.args_text or ''});")
        lines.append("};")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


# ---------------------------------------------------------------------------
# Catalog construction


def build_catalog(
    definitions: Iterable[InterfaceDefinition],
    standard_of_interface: Mapping[str, StandardId],
) -> FeatureCatalog:
    """Merge partials and assign every member to its interface's standard."""
    merged: dict[str, dict[tuple[MemberKind, str], Member]] = {}
    parents: dict[str, str | None] = {}
    order: list[str] = []
    for d in definitions:
        if d.name not in merged:
            merged[d.name] = {}
            parents[d.name] = d.parent
            order.append(d.name)
        elif d.parent is not None:
            if parents[d.name] is not None and parents[d.name] != d.parent:
                raise CatalogError(
                    f"interface {d.name}: conflicting parents "
                    f"{parents[d.name]!r} and {d.parent!r}"
                )
            parents[d.name] = d.parent
        bucket = merged[d.name]
        declared = {name for kind, name in bucket}
        for m in d.members:
            key = (m.kind, m.name)
            if key in bucket:
                if bucket[key].readonly != m.readonly:
                    raise CatalogError(
                        f"interface {d.name}: conflicting partial merge for member {m.name!r}"
                    )
                continue  # identical redeclaration across partials unions away
            if m.name in declared and not _same_family(bucket, m):
                raise CatalogError(
                    f"interface {d.name}: conflicting partial merge for member {m.name!r}"
                )
            bucket[key] = m
            declared.add(m.name)

    assignments: dict[FeatureId, str] = {}
    standards: dict[str, StandardId] = {}
    for name in order:
        std = standard_of_interface.get(name)
        if std is None:
            raise CatalogError(f"interface {name} has no standard assignment")
        known = standards.get(std.abbreviation)
        if known is not None and known != std:
            raise CatalogError(
                f"abbreviation {std.abbreviation!r} maps to both "
                f"{known.name!r} and {std.name!r}"
            )
        standards[std.abbreviation] = std
        for (kind, member_name), member in merged[name].items():
            if member.readonly and kind is MemberKind.ATTRIBUTE_SET:
                raise CatalogError(f"readonly attribute {member_name!r} cannot have a setter")
            assignments[FeatureId(name, member_name, kind)] = std.abbreviation
    return FeatureCatalog(assignments, standards)


def _same_family(bucket: dict[tuple[MemberKind, str], Member], m: Member) -> bool:
    attr_kinds = (MemberKind.ATTRIBUTE_GET, MemberKind.ATTRIBUTE_SET)
    if m.kind not in attr_kinds:
        return False
    for (kind, name), existing in bucket.items():
        if name == m.name and kind in attr_kinds:
            if existing.readonly != m.readonly:
                raise CatalogError(f"conflicting partial merge for member {m.name!r}")
            return True
    return False


def features_of(catalog: FeatureCatalog, standard: StandardId | str) -> set[FeatureId]:
    abbrev = standard.abbreviation if isinstance(standard, StandardId) else standard
    return catalog.features_of(abbrev)


# ---------------------------------------------------------------------------
# External formats


def load_standard_mapping(path: str | Path) -> dict[str, StandardId]:
    """Read the sidecar ``interface,standard_name,abbreviation`` CSV."""
    mapping: dict[str, StandardId] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"interface", "standard_name", "abbreviation"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise CatalogError(f"mapping file {path} must have header {sorted(required)}")
        for row in reader:
            iface = row["interface"].strip()
            if iface in mapping:
                raise CatalogError(f"interface {iface} mapped twice")
            mapping[iface] = StandardId(row["standard_name"].strip(), row["abbreviation"].strip())
    return mapping


def catalog_to_json(catalog: FeatureCatalog) -> str:
    doc = {
        "standards": [
            {"name": s.name, "abbrev": s.abbreviation}
            for s in sorted(catalog.standards.values(), key=lambda s: s.abbreviation)
        ],
        "features": [
            {
                "interface": f.interface_name,
                "member": f.member_name,
                "kind": f.member_kind.value,
                "standard_abbrev": catalog.assignments[f],
            }
            for f in sorted(catalog.assignments)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def catalog_from_json(text: str) -> FeatureCatalog:
    doc = json.loads(text)
    standards = {
        entry["abbrev"]: StandardId(entry["name"], entry["abbrev"]) for entry in doc["standards"]
    }
    assignments = {
        FeatureId(e["interface"], e["member"], MemberKind(e["kind"])): e["standard_abbrev"]
        for e in doc["features"]
    }
    return FeatureCatalog(assignments, standards)


def parse_idl_directory(idl_dir: str | Path) -> list[InterfaceDefinition]:
    definitions: list[InterfaceDefinition] = []
    for path in sorted(Path(idl_dir).glob("*.idl")):
        definitions.extend(parse_webidl(path.read_text(encoding="utf-8")))
    return definitions
