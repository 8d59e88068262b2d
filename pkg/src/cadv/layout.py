"""Deterministic circle-packing layouts for the three views.

Siblings are packed with a front-chain algorithm: the first two circles are
placed tangent on an axis, each later circle is placed tangent to a chain
pair, and the chain advances around the hull.  The enclosing circle is the
exact smallest circle containing all placed circles (a move-to-front Welzl
walk generalized to disks, expected linear time under a fixed-seed shuffle).

All radii are area-proportional to their metric (r = sqrt(metric)), so equal
metrics give equal circles and a 4x count gives twice the radius.  Layouts
are pure functions of the model plus the hidden-schema set; no randomness
leaks into results and reruns are identical.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import EmptyInput
from .model import ClassModel, PackageNode, ProjectModel

LAYOUT_VERSION = "cadv-layout/1"

PAD_FRACTION = 0.08     # gap between tangent siblings, relative to the largest sibling
PACKAGE_MARGIN = 1.04   # extra interior margin inside dashed package circles
EMPTY_SCALE = 0.35      # radius scale for circles with nothing inside


# ---------------------------------------------------------------------------
# smallest enclosing circle of a set of circles

def _encloses_weak(ex: float, ey: float, er: float, x: float, y: float, r: float) -> bool:
    tol = 1e-12 * max(er, r, 1.0)
    return er - r + tol >= math.hypot(x - ex, y - ey)


def _encloses_not(a: tuple, b: tuple) -> bool:
    dr = a[2] - b[2]
    dx, dy = b[0] - a[0], b[1] - a[1]
    return dr < 0 or dr * dr < dx * dx + dy * dy


def _basis_2(a: tuple, b: tuple) -> tuple:
    x1, y1, r1 = a
    x2, y2, r2 = b
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    if d + min(r1, r2) <= max(r1, r2):
        return a if r1 >= r2 else b
    r = (d + r1 + r2) / 2.0
    t = (r - r1) / d
    return (x1 + dx * t, y1 + dy * t, r)


def _basis_3(a: tuple, b: tuple, c: tuple) -> tuple | None:
    """Circle internally tangent to three circles, or None if degenerate.

    Solving |p - pi| = r - ri: differences of the squared equations are
    linear in (x, y, r), so x and y become affine functions of r and the
    first equation yields a quadratic in r.
    """
    x1, y1, r1 = a
    x2, y2, r2 = b
    x3, y3, r3 = c
    a11, a12 = 2.0 * (x1 - x2), 2.0 * (y1 - y2)
    a21, a22 = 2.0 * (x1 - x3), 2.0 * (y1 - y3)
    det = a11 * a22 - a12 * a21
    scale = max(abs(v) for v in (x1, y1, x2, y2, x3, y3, 1.0))
    if abs(det) < 1e-12 * scale * scale:
        return None
    k1 = (x1 * x1 + y1 * y1 - r1 * r1) - (x2 * x2 + y2 * y2 - r2 * r2)
    k2 = (x1 * x1 + y1 * y1 - r1 * r1) - (x3 * x3 + y3 * y3 - r3 * r3)
    w1, w2 = 2.0 * (r1 - r2), 2.0 * (r1 - r3)
    # [x, y] = P + Q * r
    px = (k1 * a22 - k2 * a12) / det
    py = (a11 * k2 - a21 * k1) / det
    qx = (w1 * a22 - w2 * a12) / det
    qy = (a11 * w2 - a21 * w1) / det
    ex, ey = px - x1, py - y1
    qa = qx * qx + qy * qy - 1.0
    qb = 2.0 * (ex * qx + ey * qy + r1)
    qc = ex * ex + ey * ey - r1 * r1
    roots: list[float] = []
    if abs(qa) < 1e-14:
        if abs(qb) > 1e-14:
            roots.append(-qc / qb)
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            return None
        sq = math.sqrt(disc)
        roots.extend(((-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)))
    rmax = max(r1, r2, r3)
    best = None
    for r in sorted(roots):
        if r < rmax - 1e-9 * max(rmax, 1.0):
            continue
        cand = (px + qx * r, py + qy * r, r)
        if all(_encloses_weak(*cand, *p) for p in (a, b, c)):
            best = cand
            break
    return best


def _basis_circle(basis: list[tuple]) -> tuple:
    if len(basis) == 1:
        return basis[0]
    if len(basis) == 2:
        return _basis_2(basis[0], basis[1])
    circle = _basis_3(basis[0], basis[1], basis[2])
    if circle is None:  # degenerate triple; fall back to the widest pair
        pairs = [_basis_2(p, q) for p, q in ((basis[0], basis[1]), (basis[0], basis[2]), (basis[1], basis[2]))]
        return max(pairs, key=lambda c: c[2])
    return circle


def _extend_basis(basis: list[tuple], p: tuple) -> list[tuple]:
    if all(_encloses_weak(*p, *q) for q in basis):
        return [p]
    for q in basis:
        if _encloses_not(p, q) and all(_encloses_weak(*_basis_2(q, p), *t) for t in basis):
            return [q, p]
    for i in range(len(basis) - 1):
        for j in range(i + 1, len(basis)):
            bi, bj = basis[i], basis[j]
            if (_encloses_not(_basis_2(bi, bj), p)
                    and _encloses_not(_basis_2(bi, p), bj)
                    and _encloses_not(_basis_2(bj, p), bi)):
                cand = _basis_3(bi, bj, p)
                if cand is not None and all(_encloses_weak(*cand, *t) for t in basis):
                    return [bi, bj, p]
    raise AssertionError("enclosing basis construction failed")


def enclose(circles: list[tuple]) -> tuple:
    """Smallest circle (cx, cy, r) containing every (x, y, r) input circle."""
    if not circles:
        raise EmptyInput("cannot enclose zero circles")
    pts = list(circles)
    random.Random(0x5EED).shuffle(pts)
    e: tuple | None = None
    basis: list[tuple] = []
    i = 0
    while i < len(pts):
        p = pts[i]
        if e is not None and _encloses_weak(*e, *p):
            i += 1
        else:
            basis = _extend_basis(basis, p)
            e = _basis_circle(basis)
            i = 0
    return e


# ---------------------------------------------------------------------------
# front-chain sibling packing

class _Node:
    __slots__ = ("idx", "next", "prev")

    def __init__(self, idx: int):
        self.idx = idx
        self.next: "_Node" = self
        self.prev: "_Node" = self


def _place(ax, ay, ar, bx, by, br, cr) -> tuple[float, float]:
    """Position a circle of radius cr tangent to circles a and b."""
    dx, dy = bx - ax, by - ay
    d2 = dx * dx + dy * dy
    if d2 > 0:
        a2 = (ar + cr) ** 2
        b2 = (br + cr) ** 2
        if a2 > b2:
            x = (d2 + b2 - a2) / (2.0 * d2)
            y = math.sqrt(max(0.0, b2 / d2 - x * x))
            return bx - x * dx - y * dy, by - x * dy + y * dx
        x = (d2 + a2 - b2) / (2.0 * d2)
        y = math.sqrt(max(0.0, a2 / d2 - x * x))
        return ax + x * dx - y * dy, ay + x * dy + y * dx
    return ax + ar + cr, ay


def _intersects(xa, ya, ra, xb, yb, rb) -> bool:
    dr = ra + rb - 1e-9 * (ra + rb)
    dx, dy = xb - xa, yb - ya
    return dr > 0 and dr * dr > dx * dx + dy * dy


def pack_siblings(radii: list[float], padding: float = 0.0) -> tuple[list[tuple[float, float]], float]:
    """Pack circles of the given radii without overlap.

    Returns their centers (input order preserved) plus the enclosing radius,
    with the enclosure centered at the origin.  ``padding`` inflates each
    radius during placement, producing a 2*padding gap between tangent
    neighbors and a padding-wide margin inside the enclosure; output centers
    refer to the original radii.  Deterministic for a fixed input order;
    callers sort descending by radius with a stable id tie-break.
    """
    if not radii:
        raise EmptyInput("cannot pack zero circles")
    if any(r <= 0 for r in radii) or padding < 0:
        raise ValueError("radii must be positive and padding non-negative")
    rs = [r + padding for r in radii]
    n = len(rs)
    xs = [0.0] * n
    ys = [0.0] * n
    if n > 1:
        xs[0], xs[1] = -rs[1], rs[0]
    if n > 2:
        xs[2], ys[2] = _place(xs[1], ys[1], rs[1], xs[0], ys[0], rs[0], rs[2])

    if n > 3:
        a, b, c = _Node(0), _Node(1), _Node(2)
        a.next, a.prev = b, c
        b.next, b.prev = c, a
        c.next, c.prev = a, b

        def score(node: _Node) -> float:
            i1, i2 = node.idx, node.next.idx
            ab = rs[i1] + rs[i2]
            dx = (xs[i1] * rs[i2] + xs[i2] * rs[i1]) / ab
            dy = (ys[i1] * rs[i2] + ys[i2] * rs[i1]) / ab
            return dx * dx + dy * dy

        i = 3
        while i < n:
            xs[i], ys[i] = _place(xs[a.idx], ys[a.idx], rs[a.idx],
                                  xs[b.idx], ys[b.idx], rs[b.idx], rs[i])
            cnode = _Node(i)
            # walk the chain outward from the pair; an intersection shortens
            # the chain and retries the same circle against the new pair
            j, k = b.next, a.prev
            sj, sk = rs[b.idx], rs[a.idx]
            retry = False
            while True:
                if sj <= sk:
                    if _intersects(xs[j.idx], ys[j.idx], rs[j.idx], xs[i], ys[i], rs[i]):
                        b = j
                        a.next, b.prev = b, a
                        retry = True
                        break
                    sj += rs[j.idx]
                    j = j.next
                else:
                    if _intersects(xs[k.idx], ys[k.idx], rs[k.idx], xs[i], ys[i], rs[i]):
                        a = k
                        a.next, b.prev = b, a
                        retry = True
                        break
                    sk += rs[k.idx]
                    k = k.prev
                if j is k.next:
                    break
            if retry:
                continue
            cnode.prev, cnode.next = a, b
            a.next = b.prev = cnode
            # restart the pair at the chain link closest to the weighted centroid
            b = cnode
            best = a
            best_score = score(a)
            scan = cnode
            while True:
                scan = scan.next
                if scan is b:
                    break
                s = score(scan)
                if s < best_score:
                    best, best_score = scan, s
            a = best
            b = a.next
            i += 1

    cx, cy, er = enclose([(xs[i], ys[i], rs[i]) for i in range(n)])
    return [(xs[i] - cx, ys[i] - cy) for i in range(n)], er


# ---------------------------------------------------------------------------
# view construction

@dataclass(frozen=True)
class LayoutCircle:
    id: str
    kind: str   # package | class | element | schema-bubble | annotation
    cx: float
    cy: float
    r: float
    style: str  # dashed-outline | white-fill | gray-fill | schema-color
    schema_id: str | None
    label: dict
    children: tuple["LayoutCircle", ...] = ()


@dataclass(frozen=True)
class LayoutTree:
    view: str
    focus: str
    metric: str
    root: LayoutCircle


@dataclass(frozen=True)
class _Spec:
    """A positioned subtree before absolute coordinates are known."""
    id: str
    kind: str
    r: float
    style: str
    schema_id: str | None
    label: dict
    children: tuple = ()  # (dx, dy, _Spec) relative to this circle's center


def _pack_specs(specs: list[_Spec]) -> tuple[list[tuple[float, float]], float]:
    """Sort, pack, and return per-spec offsets plus the enclosing radius."""
    order = sorted(range(len(specs)), key=lambda i: (-specs[i].r, specs[i].id, specs[i].kind))
    radii = [specs[i].r for i in order]
    centers, er = pack_siblings(radii, padding=0.5 * PAD_FRACTION * max(radii))
    offsets: list[tuple[float, float]] = [(0.0, 0.0)] * len(specs)
    for pos, i in enumerate(order):
        offsets[i] = centers[pos]
    return offsets, er


def _wrap(spec_id: str, kind: str, style: str, label: dict, children: list[_Spec],
          margin: float = 1.0, schema_id: str | None = None) -> _Spec:
    """Enclose child specs in one parent circle, or make an empty stub."""
    if children:
        offsets, er = _pack_specs(children)
        placed = tuple((off[0], off[1], ch) for off, ch in zip(offsets, children))
        return _Spec(spec_id, kind, er * margin, style, schema_id, label, placed)
    _, unit = pack_siblings([1.0], padding=0.5 * PAD_FRACTION)
    return _Spec(spec_id, kind, EMPTY_SCALE * unit * margin, style, schema_id, label, ())


def _finalize(spec: _Spec, cx: float, cy: float) -> LayoutCircle:
    return LayoutCircle(
        id=spec.id, kind=spec.kind, cx=cx, cy=cy, r=spec.r,
        style=spec.style, schema_id=spec.schema_id, label=spec.label,
        children=tuple(_finalize(ch, cx + dx, cy + dy) for dx, dy, ch in spec.children),
    )


def _bubble_specs(node: PackageNode, counts: dict[str, int], hidden: frozenset[str]) -> list[_Spec]:
    out = []
    for sid in sorted(counts):
        cnt = counts[sid]
        if sid in hidden or cnt <= 0:
            continue
        out.append(_Spec(
            id=f"{node.qualified_name}::{sid}",
            kind="schema-bubble",
            r=math.sqrt(cnt),
            style="schema-color",
            schema_id=sid,
            label={"schema": sid, "package": node.qualified_name, "count": cnt},
        ))
    return out


def _package_label(node: PackageNode) -> dict:
    return {"package": node.qualified_name}


def _system_package(node: PackageNode, hidden: frozenset[str]) -> _Spec:
    children = [_system_package(ch, hidden) for ch in node.children]
    children.extend(_bubble_specs(node, node.schema_counts, hidden))
    return _wrap(node.qualified_name or "<root>", "package", "dashed-outline",
                 _package_label(node), children, margin=PACKAGE_MARGIN)


def _bubbles_only_package(node: PackageNode, hidden: frozenset[str]) -> _Spec:
    children = _bubble_specs(node, node.schema_counts, hidden)
    return _wrap(node.qualified_name or "<root>", "package", "dashed-outline",
                 _package_label(node), children, margin=PACKAGE_MARGIN)


def _annotation_spec(pkg: PackageNode, cls: ClassModel, index: int, use,
                     radius_metric: int, metric_key: str, metric_value: int,
                     extra: dict | None = None) -> _Spec:
    label = {"package": pkg.qualified_name, "class": cls.name}
    if extra:
        label.update(extra)
    label["annotation"] = use.simple_name
    label[metric_key] = metric_value
    return _Spec(
        id=f"{cls.qualified_name}@{index}",
        kind="annotation",
        r=math.sqrt(radius_metric),
        style="schema-color",
        schema_id=use.schema_id,
        label=label,
    )


def _class_spec_for_package_view(pkg: PackageNode, cls: ClassModel, hidden: frozenset[str]) -> _Spec:
    anns = [
        _annotation_spec(pkg, cls, i, u, u.locad, "locad", u.locad)
        for i, u in enumerate(cls.annotations)
        if u.schema_id not in hidden
    ]
    return _wrap(cls.qualified_name, "class", "white-fill",
                 {"package": pkg.qualified_name, "class": cls.name}, anns)


def layout_system_view(model: ProjectModel, hidden: frozenset[str] = frozenset()) -> LayoutTree:
    """Whole project: nested dashed packages with per-package schema bubbles."""
    spec = _system_package(model.root, hidden)
    return LayoutTree("system", "", "count", _finalize(spec, 0.0, 0.0))


def layout_package_view(model: ProjectModel, package: str,
                        hidden: frozenset[str] = frozenset()) -> LayoutTree:
    """One package: child packages (bubbles only) plus its classes.

    Class circles are white and hold one circle per annotation occurrence,
    sized by LOCAD; annotation-free classes keep a small fixed radius.
    """
    node = model.find_package(package)
    children = [_bubbles_only_package(ch, hidden) for ch in node.children]
    children.extend(_class_spec_for_package_view(node, cls, hidden) for cls in node.classes)
    spec = _wrap(node.qualified_name or "<root>", "package", "dashed-outline",
                 _package_label(node), children, margin=PACKAGE_MARGIN)
    return LayoutTree("package", package, "LOCAD", _finalize(spec, 0.0, 0.0))


def layout_class_view(model: ProjectModel, qualified_name: str,
                      hidden: frozenset[str] = frozenset()) -> LayoutTree:
    """One class: gray element circles holding annotation circles sized by AA.

    Annotations on the class declaration itself sit directly on the white
    circle.  Elements whose annotations are all hidden are not rendered.
    """
    cls = model.find_class(qualified_name)
    pkg_name = qualified_name.rsplit(".", 1)[0] if "." in qualified_name else ""
    pkg = model.packages_by_name.get(pkg_name)
    # nested classes live in their package under the dotted class name
    while pkg is None and "." in pkg_name:
        pkg_name = pkg_name.rsplit(".", 1)[0]
        pkg = model.packages_by_name.get(pkg_name)
    if pkg is None:
        pkg = model.root

    children: list[_Spec] = []
    for idx, el in enumerate(cls.elements):
        uses = [(i, u) for i, u in enumerate(cls.annotations)
                if u.element_index == idx and u.schema_id not in hidden]
        if not uses:
            continue
        extra = {"element": el.name, "elementKind": el.kind}
        # radius follows AA + 1 so marker annotations stay visible; the
        # label reports the plain AA value
        anns = [_annotation_spec(pkg, cls, i, u, u.aa + 1, "aa", u.aa, extra)
                for i, u in uses]
        if el.kind == "type":
            children.extend(anns)  # class-level annotations sit on the white circle
        else:
            children.append(_wrap(
                f"{cls.qualified_name}#{idx}", "element", "gray-fill",
                {"package": pkg.qualified_name, "class": cls.name,
                 "element": el.name, "elementKind": el.kind},
                anns,
            ))
    spec = _wrap(cls.qualified_name, "class", "white-fill",
                 {"package": pkg.qualified_name, "class": cls.name}, children)
    return LayoutTree("class", qualified_name, "AA", _finalize(spec, 0.0, 0.0))


# ---------------------------------------------------------------------------
# serialization

def _circle_color(circle: LayoutCircle, colors) -> str:
    if circle.style == "schema-color":
        return colors.colors.get(circle.schema_id, colors.black)
    if circle.style == "white-fill":
        return colors.white
    if circle.style == "gray-fill":
        return colors.element_gray
    return colors.background_gray


def layout_to_document(tree: LayoutTree, colors) -> dict:
    """Flatten a layout into the cadv-layout/1 wire format (depth-first)."""
    circles: list[dict] = []

    def walk(circle: LayoutCircle, parent: int | None) -> None:
        index = len(circles)
        circles.append({
            "id": circle.id,
            "parent": parent,
            "kind": circle.kind,
            "cx": circle.cx,
            "cy": circle.cy,
            "r": circle.r,
            "style": circle.style,
            "schema": circle.schema_id,
            "color": _circle_color(circle, colors),
            "label": circle.label,
        })
        for child in circle.children:
            walk(child, index)

    walk(tree.root, None)
    return {
        "version": LAYOUT_VERSION,
        "view": tree.view,
        "focus": tree.focus,
        "metric": tree.metric,
        "circles": circles,
    }
