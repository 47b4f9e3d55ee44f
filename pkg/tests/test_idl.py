from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surface_ledger.errors import CatalogError, IdlSyntaxError
from surface_ledger.idl import (
    FeatureId,
    MemberKind,
    StandardId,
    build_catalog,
    catalog_from_json,
    catalog_to_json,
    features_of,
    parse_webidl,
    serialize_webidl,
)

BATTERY_IDL = "interface BatteryManager { readonly attribute boolean charging; };"
GAIN_IDL = "interface GainNode { attribute long channelCount; };"


def test_readonly_attribute_yields_getter_only():
    (definition,) = parse_webidl(BATTERY_IDL)
    assert definition.name == "BatteryManager"
    assert [(m.kind, m.name, m.readonly) for m in definition.members] == [
        (MemberKind.ATTRIBUTE_GET, "charging", True)
    ]


def test_mutable_attribute_yields_getter_and_setter():
    (definition,) = parse_webidl(GAIN_IDL)
    assert [(m.kind, m.name) for m in definition.members] == [
        (MemberKind.ATTRIBUTE_GET, "channelCount"),
        (MemberKind.ATTRIBUTE_SET, "channelCount"),
    ]


def test_empty_document():
    assert parse_webidl("") == []


def test_document_order_and_partial_flag():
    text = """
    interface A { void x(); };
    partial interface A { void y(); };
    interface B : A { readonly attribute long z; };
    """
    defs = parse_webidl(text)
    assert [(d.name, d.is_partial) for d in defs] == [("A", False), ("A", True), ("B", False)]
    assert defs[2].parent == "A"


def test_extended_attributes_skipped():
    text = '[Exposed=Window, SecureContext] interface C { [Throws] void go(); };'
    (definition,) = parse_webidl(text)
    assert [m.name for m in definition.members] == ["go"]


def test_constructor_and_multiword_types():
    text = "interface W { constructor(DOMString url); unsigned long long total(); };"
    (definition,) = parse_webidl(text)
    kinds = [(m.kind, m.name) for m in definition.members]
    assert kinds == [(MemberKind.CONSTRUCTOR, "constructor"), (MemberKind.METHOD, "total")]
    assert definition.members[1].type_text == "unsigned long long"


def test_syntax_error_carries_position():
    with pytest.raises(IdlSyntaxError) as err:
        parse_webidl("interface A {\n  void broken(;\n};")
    assert err.value.line == 2


def test_duplicate_member_rejected():
    with pytest.raises(IdlSyntaxError, match="duplicate member"):
        parse_webidl("interface A { void x(); void x(); };")
    with pytest.raises(IdlSyntaxError, match="duplicate member"):
        parse_webidl("interface A { attribute long x; long x(); };")


def test_unknown_keyword():
    with pytest.raises(IdlSyntaxError, match="unknown keyword"):
        parse_webidl("dictionary D { };")


def test_build_catalog_battery_assignment():
    defs = parse_webidl(BATTERY_IDL)
    catalog = build_catalog(defs, {"BatteryManager": StandardId("Battery Status API", "BA")})
    feature = FeatureId("BatteryManager", "charging", MemberKind.ATTRIBUTE_GET)
    assert catalog.assignments[feature] == "BA"
    assert features_of(catalog, "BA") == {feature}


def test_build_catalog_console_members():
    text = "interface Console { void log(any data); void timeline(DOMString label); };"
    catalog = build_catalog(parse_webidl(text), {"Console": StandardId("Console API", "CO")})
    names = {f.member_name for f in features_of(catalog, "CO")}
    assert names == {"log", "timeline"}


def test_partial_blocks_union_under_one_standard():
    text = """
    interface Console { void log(any data); };
    partial interface Console { void timeline(DOMString label); };
    """
    catalog = build_catalog(parse_webidl(text), {"Console": StandardId("Console API", "CO")})
    assert {f.member_name for f in features_of(catalog, "CO")} == {"log", "timeline"}


def test_conflicting_partial_merge_rejected():
    text = """
    interface A { readonly attribute long x; };
    partial interface A { attribute long x; };
    """
    with pytest.raises(CatalogError, match="conflicting partial merge"):
        build_catalog(parse_webidl(text), {"A": StandardId("A Standard", "A")})


def test_interface_without_standard_rejected():
    with pytest.raises(CatalogError, match="no standard assignment"):
        build_catalog(parse_webidl("interface Lost { void x(); };"), {})


def test_features_of_unknown_standard():
    catalog = build_catalog(parse_webidl(BATTERY_IDL), {"BatteryManager": StandardId("Battery Status API", "BA")})
    with pytest.raises(CatalogError, match="unknown standard"):
        features_of(catalog, "NOPE")


def test_features_of_empty_standard():
    defs = parse_webidl(BATTERY_IDL + " interface Empty { };")
    catalog = build_catalog(
        defs,
        {
            "BatteryManager": StandardId("Battery Status API", "BA"),
            "Empty": StandardId("Empty Standard", "EM"),
        },
    )
    assert features_of(catalog, "EM") == set()


def test_partition_property(catalog):
    by_standard = {abbrev: catalog.features_of(abbrev) for abbrev in catalog.standards}
    all_features = set(catalog.assignments)
    union: set[FeatureId] = set()
    for abbrev, features in by_standard.items():
        assert not (union & features), f"{abbrev} overlaps another standard"
        union |= features
    assert union == all_features


def test_catalog_json_round_trip(catalog):
    text = catalog_to_json(catalog)
    back = catalog_from_json(text)
    assert back.assignments == dict(catalog.assignments)
    assert dict(back.standards) == dict(catalog.standards)
    assert catalog_to_json(back) == text


# ---------------------------------------------------------------------------
# Randomized grammar properties

_ident = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,8}", fullmatch=True).filter(
    lambda s: s not in {"interface", "partial", "readonly", "attribute", "constructor"}
)
_type = st.sampled_from(["boolean", "long", "double", "DOMString", "unsigned long", "object"])


@st.composite
def _interface(draw):
    name = draw(_ident)
    n_members = draw(st.integers(0, 6))
    members = []
    used: set[str] = set()
    for _ in range(n_members):
        member_name = draw(_ident.filter(lambda s: s not in used))
        used.add(member_name)
        shape = draw(st.sampled_from(["m", "a", "ra"]))
        typ = draw(_type)
        if shape == "m":
            members.append(f"  {typ} {member_name}();")
        elif shape == "a":
            members.append(f"  attribute {typ} {member_name};")
        else:
            members.append(f"  readonly attribute {typ} {member_name};")
    return f"interface {name} {{\n" + "\n".join(members) + "\n};"


@given(st.lists(_interface(), max_size=4))
@settings(max_examples=60, deadline=None)
def test_parse_serialize_parse_is_identity(blocks):
    text = "\n".join(blocks)
    first = parse_webidl(text)
    second = parse_webidl(serialize_webidl(first))
    assert second == first


@given(st.lists(_interface(), max_size=4))
@settings(max_examples=60, deadline=None)
def test_readonly_never_produces_setter(blocks):
    readonly_names = set()
    for block in blocks:
        for line in block.splitlines():
            if line.strip().startswith("readonly attribute"):
                readonly_names.add(line.split()[-1].rstrip(";"))
    for definition in parse_webidl("\n".join(blocks)):
        for member in definition.members:
            if member.name in readonly_names and member.readonly:
                assert member.kind is not MemberKind.ATTRIBUTE_SET
