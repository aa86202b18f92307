"""Record shapes and validation for themes, layouts, and instance documents."""

from __future__ import annotations

import math
import re

from ..errors import MalformedInputError

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")
_SHAPES = ("ellipse", "rectangle", "hexagon")


def validate_theme(theme, sig_names: set[str], field_names: set[str]):
    """Check a theme document; raises MalformedInputError naming the defect."""
    if theme is None:
        return
    if not isinstance(theme, dict):
        raise MalformedInputError("theme must be an object")
    unknown = set(theme) - {"perSig", "perField", "projection"}
    if unknown:
        raise MalformedInputError(f"unknown theme keys: {sorted(unknown)}")
    for sig, attrs in (theme.get("perSig") or {}).items():
        if sig not in sig_names:
            raise MalformedInputError(f"theme styles unknown sig {sig!r}")
        _validate_style(attrs, shape_allowed=True, what=f"perSig[{sig}]")
    for fld, attrs in (theme.get("perField") or {}).items():
        if fld not in field_names:
            raise MalformedInputError(f"theme styles unknown field {fld!r}")
        _validate_style(attrs, shape_allowed=False, what=f"perField[{fld}]")
    projection = theme.get("projection") or []
    if not isinstance(projection, list):
        raise MalformedInputError("projection must be a list of sig names")
    for sig in projection:
        if sig not in sig_names:
            raise MalformedInputError(f"projection names unknown sig {sig!r}")


def _validate_style(attrs, shape_allowed: bool, what: str):
    if not isinstance(attrs, dict):
        raise MalformedInputError(f"{what} must be an object")
    for key, value in attrs.items():
        if key == "color":
            if not isinstance(value, str) or not _HEX_COLOR.match(value):
                raise MalformedInputError(
                    f"{what}.color must be a #RRGGBB hex color")
        elif key == "shape" and shape_allowed:
            if value not in _SHAPES:
                raise MalformedInputError(
                    f"{what}.shape must be one of {', '.join(_SHAPES)}")
        elif key == "visible":
            if not isinstance(value, bool):
                raise MalformedInputError(f"{what}.visible must be a boolean")
        elif key == "label":
            if not isinstance(value, str):
                raise MalformedInputError(f"{what}.label must be a string")
        else:
            raise MalformedInputError(f"{what} has unknown attribute {key!r}")


def validate_layout(layout):
    """atom -> {x, y} with finite numeric coordinates."""
    if layout is None:
        return
    if not isinstance(layout, dict):
        raise MalformedInputError("layout must be an object keyed by atom")
    for atom, pos in layout.items():
        if not isinstance(pos, dict) or set(pos) - {"x", "y"}:
            raise MalformedInputError(
                f"layout[{atom}] must be an object with x and y")
        for axis in ("x", "y"):
            v = pos.get(axis)
            if not isinstance(v, (int, float)) or isinstance(v, bool) \
                    or not math.isfinite(v):
                raise MalformedInputError(
                    f"layout[{atom}].{axis} must be a finite number")


def validate_instance_doc(doc):
    """Shape check of an instance wire document."""
    if not isinstance(doc, dict):
        raise MalformedInputError("instance must be an object")
    for key in ("sigs", "fields", "universe"):
        if key not in doc:
            raise MalformedInputError(f"instance is missing {key!r}")
    if not isinstance(doc["sigs"], dict) or not isinstance(doc["fields"], dict) \
            or not isinstance(doc["universe"], list):
        raise MalformedInputError("instance has malformed sections")
    for name, atoms in doc["sigs"].items():
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise MalformedInputError(f"instance sig {name!r} must list atom names")
    for name, tuples in doc["fields"].items():
        if not isinstance(tuples, list) or not all(
                isinstance(t, list) and all(isinstance(a, str) for a in t)
                for t in tuples):
            raise MalformedInputError(
                f"instance field {name!r} must list atom-name tuples")
