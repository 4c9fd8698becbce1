"""Hand-written SVG output for scenes, guards and slicing traces."""

from __future__ import annotations

from typing import Optional

from .oracle import Scene
from .slicer import GuardSet


def _f(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(scene: Scene, guards: Optional[GuardSet] = None, *, with_trace: bool = False, width: int = 600) -> str:
    """SVG text; the y axis points up so pictures match the usual drawings."""
    P = scene.polygon
    x0, y0, x1, y1 = P.bbox
    mx, my = 0.05 * (x1 - x0), 0.05 * (y1 - y0)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
    w, h = x1 - x0, y1 - y0
    unit = max(w, h) / 200  # stroke and marker scale

    def X(x):
        return _f(x)

    def Y(y):
        return _f(y0 + y1 - y)

    def line(a, b, cls):
        return f'<line class="{cls}" x1="{X(a[0])}" y1="{Y(a[1])}" x2="{X(b[0])}" y2="{Y(b[1])}"/>'

    def dot(p, cls, r):
        return f'<circle class="{cls}" cx="{X(p[0])}" cy="{Y(p[1])}" r="{_f(r)}"/>'

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{round(width * h / w)}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        "<style>"
        f".poly{{fill:#f4f4f4;stroke:#222;stroke-width:{_f(unit)}}}"
        f".source{{stroke:#1f5fbf;stroke-width:{_f(2 * unit)}}}"
        f".target{{stroke:#c0392b;stroke-width:{_f(2 * unit)}}}"
        f".sight{{stroke:#888;stroke-width:{_f(0.6 * unit)};stroke-dasharray:{_f(2 * unit)}}}"
        ".reflex{fill:#e67e22}.guard{fill:#27ae60}.tpoint{fill:#8e44ad}"
        "</style>",
    ]
    pts = " ".join(f"{X(v.x)},{Y(v.y)}" for v in P.vertices)
    out.append(f'<polygon class="poly" points="{pts}"/>')
    for v in P.reflex_vertices:
        out.append(dot(v, "reflex", 1.5 * unit))
    out.append(line(scene.source.a, scene.source.b, "source"))
    out.append(line(scene.target.a, scene.target.b, "target"))
    if guards is not None:
        if with_trace:
            for rec in guards.trace:
                for b in (rec.lbv_x, rec.rbv_y):
                    if b.present:
                        out.append(line(b.anchor, b.t_point, "sight"))
                        out.append(dot(b.t_point, "tpoint", 1.2 * unit))
        for g in guards.guards:
            out.append(dot(g, "guard", 2 * unit))
    out.append("</svg>")
    return "\n".join(out) + "\n"
