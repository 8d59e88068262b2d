"""Deterministic HSL color assignment for annotation schemas.

White, gray, and black are structural: white fills classes, grays fill the
background and code elements, black marks the ``unresolved`` pseudo-schema.
Schema colors must stay away from all of them, so every assigned color keeps
saturation >= 0.25 and lightness inside [0.08, 0.92].

Well-known schema families sit on fixed hues; schemas that share their first
two package segments share a hue and differ by lightness steps.  Everything
else gets a hue hashed from the family key, kept clear of the fixed bands.
"""

from __future__ import annotations

import colorsys
import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import OverrideConflict
from .schema_resolver import UNRESOLVED, Schema, family_key

FIXED_FAMILY_HUES: dict[str, float] = {
    "java.lang": 215.0,          # blue
    "javax.persistence": 330.0,  # pink
    "org.hibernate": 330.0,      # pink
    "org.springframework": 30.0,  # orange
    "org.junit": 275.0,          # purple
    "org.mockito": 275.0,        # purple
    "javax.ejb": 135.0,          # green
}

_FIXED_BAND = 15.0  # hashed hues keep this distance from every fixed hue
_SATURATION = 0.65
_LIGHTNESS_SLOTS = (0.55, 0.40, 0.70, 0.28, 0.82)  # pairwise >= 0.12 apart
_MIN_HUE_GAP = 12.0

WHITE = "#ffffff"
BACKGROUND_GRAY = "#ececec"
ELEMENT_GRAY = "#9e9e9e"
BLACK = "#000000"

MIN_SATURATION = 0.25
MIN_LIGHTNESS = 0.08
MAX_LIGHTNESS = 0.92


@dataclass(frozen=True)
class Color:
    hue: float  # degrees in [0, 360)
    saturation: float
    lightness: float

    def to_hex(self) -> str:
        r, g, b = colorsys.hls_to_rgb(self.hue / 360.0, self.lightness, self.saturation)
        return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


@dataclass(frozen=True)
class ColorAssignment:
    colors: dict[str, str] = field(default_factory=dict)  # schema id -> #rrggbb
    white: str = WHITE
    background_gray: str = BACKGROUND_GRAY
    element_gray: str = ELEMENT_GRAY
    black: str = BLACK


def hex_to_hsl(value: str) -> Color:
    v = value.lstrip("#")
    if len(v) != 6:
        raise ValueError(f"not a #rrggbb color: {value!r}")
    r, g, b = (int(v[i:i + 2], 16) / 255.0 for i in (0, 2, 4))
    h, l, s = colorsys.rgb_to_hls(r, g, b)
    return Color(h * 360.0, s, l)


def _hue_distance(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def _allowed_intervals() -> list[tuple[float, float]]:
    """Hue intervals at least _FIXED_BAND away from every fixed hue."""
    bands = sorted({h for h in FIXED_FAMILY_HUES.values()})
    intervals: list[tuple[float, float]] = []
    prev_end = None
    first_start = None
    for h in bands:
        lo, hi = h - _FIXED_BAND, h + _FIXED_BAND
        if first_start is None:
            first_start = lo
        if prev_end is not None and lo > prev_end:
            intervals.append((prev_end, lo))
        prev_end = hi
    intervals.append((prev_end, first_start + 360.0))  # wrap segment
    return intervals


_ALLOWED = _allowed_intervals()
_ALLOWED_TOTAL = sum(hi - lo for lo, hi in _ALLOWED)


def _hash_hue(key: str) -> float:
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    frac = int.from_bytes(digest[:8], "big") / 2 ** 64
    offset = frac * _ALLOWED_TOTAL
    for lo, hi in _ALLOWED:
        width = hi - lo
        if offset < width:
            return (lo + offset) % 360.0
        offset -= width
    return _ALLOWED[-1][0] % 360.0


def _in_allowed(h: float) -> bool:
    return any(lo <= h < hi or lo <= h + 360.0 < hi for lo, hi in _ALLOWED)


def _next_allowed(hue: float) -> float:
    """Smallest allowed hue at or after ``hue`` (circularly)."""
    h = hue % 360.0
    if _in_allowed(h):
        return h
    starts = sorted(lo % 360.0 for lo, _hi in _ALLOWED)
    for s in starts:
        if s >= h:
            return s
    return starts[0]


def _family_groups(schema_ids: Iterable[str]) -> dict[str, list[str]]:
    groups: dict[str, list[str]] = {}
    for sid in sorted(schema_ids):
        groups.setdefault(family_key(sid), []).append(sid)
    return groups


def assign_colors(schemas: Iterable[Schema], overrides: Mapping[str, str] | None = None) -> ColorAssignment:
    """Assign one color per schema, stable under re-runs.

    The result depends only on the sorted schema id list and the overrides;
    counts and input order never matter.
    """
    ids = sorted({s.id for s in schemas})
    colors: dict[str, str] = {}
    plain_ids = [sid for sid in ids if sid != UNRESOLVED]

    groups = _family_groups(plain_ids)
    # families mandated the same fixed hue (persistence/hibernate pink,
    # junit/mockito purple) form one tone group, so their members walk a
    # shared lightness-slot sequence and never coincide
    tone_groups: dict[tuple, list[str]] = {}
    hue_of: dict[tuple, float] = {}
    used_hashed_hues: list[float] = []
    for fam in sorted(groups):
        if fam in FIXED_FAMILY_HUES:
            hue = FIXED_FAMILY_HUES[fam]
            key = ("fixed", hue)
        else:
            hue = _hash_hue(fam)
            guard = 0
            while any(_hue_distance(hue, u) < _MIN_HUE_GAP for u in used_hashed_hues):
                hue = _next_allowed(hue + 13.0)
                guard += 1
                if guard > 64:
                    break  # hue space exhausted; lightness slots still separate members
            used_hashed_hues.append(hue)
            key = ("hashed", fam)
        tone_groups.setdefault(key, []).extend(groups[fam])
        hue_of[key] = hue
    for key in sorted(tone_groups, key=str):
        hue = hue_of[key]
        for k, sid in enumerate(sorted(tone_groups[key])):
            slot = _LIGHTNESS_SLOTS[k % len(_LIGHTNESS_SLOTS)]
            member_hue = (hue + 14.0 * (k // len(_LIGHTNESS_SLOTS))) % 360.0
            colors[sid] = Color(member_hue, _SATURATION, slot).to_hex()

    if UNRESOLVED in ids:
        colors[UNRESOLVED] = BLACK

    for sid, value in sorted((overrides or {}).items()):
        hsl = hex_to_hsl(value)
        if sid != UNRESOLVED and (
                hsl.saturation < MIN_SATURATION
                or hsl.lightness > MAX_LIGHTNESS
                or hsl.lightness < MIN_LIGHTNESS):
            raise OverrideConflict(
                f"override for {sid} ({value}) collides with reserved white/gray/black colors")
        if sid in colors:
            colors[sid] = value.lower()

    return ColorAssignment(colors=colors)
