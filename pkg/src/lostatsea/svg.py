"""Minimal, byte-deterministic SVG output for realizations and paths."""
import math

from .disk import DiskStrategy, disk_classify
from .oracle import Region, realize
from .strip import CaseLabel, PI, Strategy2, classify_strip2, normalize_state

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]
SIZE = 480
MARGIN = 40


def _fmt(v):
    return f"{v:.4f}"


class _Canvas:
    def __init__(self, xmin, xmax, ymin, ymax):
        span = max(xmax - xmin, ymax - ymin)
        self.scale = (SIZE - 2 * MARGIN) / span
        self.xmin, self.ymax = xmin, ymax
        self.items = []

    def pt(self, x, y):
        return MARGIN + (x - self.xmin) * self.scale, MARGIN + (self.ymax - y) * self.scale

    def line(self, p, q, color="#000", width=1.0, dash=None):
        (x1, y1), (x2, y2) = self.pt(*p), self.pt(*q)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                          f'stroke="{color}" stroke-width="{width}"{extra}/>')

    def polyline(self, pts, color, width=1.5):
        coords = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in (self.pt(*p) for p in pts))
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                          f'stroke-width="{width}"/>')

    def circle(self, c, radius, color="#000", fill="none", width=1.0):
        (cx, cy) = self.pt(*c)
        self.items.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius * self.scale)}" '
                          f'stroke="{color}" fill="{fill}" stroke-width="{width}"/>')

    def dot(self, c, color):
        (cx, cy) = self.pt(*c)
        self.items.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" fill="{color}"/>')

    def text(self, x, y, s, color="#000"):
        self.items.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
                          f'font-size="12" fill="{color}">{s}</text>')

    def render(self, title):
        body = "\n".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">\n<title>{title}</title>\n'
                f'<rect width="{SIZE}" height="{SIZE}" fill="#fff"/>\n{body}\n</svg>\n')


def _bbox(pointsets, pad=0.1):
    xs = [p[0] for pts in pointsets for p in pts]
    ys = [p[1] for pts in pointsets for p in pts]
    return min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad


def plot_realizations(region, strat, states, title="escape paths"):
    """SVG of traced realizations with the region boundary and a case legend.

    Returns ``(svg_text, labels)`` where ``labels`` are the CaseLabels of the
    states in order.
    """
    region = Region(region) if not isinstance(region, Region) else region
    reals, labels = [], []
    for x, theta in states:
        if region is Region.STRIP:
            st = normalize_state(x, theta)
            label = classify_strip2(float(st.x), float(st.theta), strat)
            reals.append(realize(region, (float(st.x), float(st.theta)), strat))
        else:
            label = disk_classify(x, theta, strat)
            reals.append(realize(region, (x, theta), strat))
        labels.append(CaseLabel(int(label)))
    if region is Region.STRIP:
        xmin, xmax, ymin, ymax = _bbox([r.vertices for r in reals] + [[(0, 0), (1, 0)]])
        xmin, xmax = min(xmin, -0.1), max(xmax, 1.1)
        cv = _Canvas(xmin, xmax, ymin, ymax)
        for shore in (0.0, 1.0):
            cv.line((shore, ymin), (shore, ymax), width=2)
    else:
        cv = _Canvas(-1.1, 1.1, -1.1, 1.1)
        cv.circle((0.0, 0.0), 1.0, width=2)
    for i, (real, label) in enumerate(zip(reals, labels)):
        color = PALETTE[i % len(PALETTE)]
        cv.polyline(real.vertices, color)
        cv.dot(real.vertices[0], color)
        x0, th = states[i]
        cv.text(8, 16 + 14 * i, f"x={x0:g}, theta={math.degrees(th):.0f} deg: "
                f"{label.title}, length {real.total_length:.4f}", color)
    return cv.render(title), labels


def plot_path(points, title="path"):
    """SVG of a bare polyline, for Zalgaller's path."""
    pts = [tuple(map(float, p)) for p in points]
    cv = _Canvas(*_bbox([pts]))
    cv.polyline(pts, PALETTE[0], width=2)
    for p in (pts[0], pts[-1]):
        cv.dot(p, "#000")
    return cv.render(title)


FIG2_STRATEGY = Strategy2(1.043, math.radians(78.7))
FIG2_STATES = [(0.1, math.radians(80)), (0.3, math.radians(160)),
               (0.5, math.radians(50)), (0.9, math.radians(140))]
FIG6_STATES = [(0.1, math.radians(200) - 2 * PI, math.radians(110)),
               (0.3, math.radians(80), math.radians(160)),
               (0.5, math.radians(45), math.radians(20))]


def figure2():
    return plot_realizations(Region.STRIP, FIG2_STRATEGY, FIG2_STATES,
                             "strip realizations, r = 1.043, alpha = 78.7 deg")


def figure6():
    """Disk realizations with ``r = 0.5``; each sample has its own pivot angle."""
    cv = _Canvas(-1.1, 1.1, -1.1, 1.1)
    cv.circle((0.0, 0.0), 1.0, width=2)
    labels = []
    for i, (x, theta, alpha) in enumerate(FIG6_STATES):
        strat = DiskStrategy(0.5, alpha)
        real = realize(Region.DISK, (x, theta), strat)
        label = CaseLabel(int(disk_classify(x, theta, strat)))
        labels.append(label)
        color = PALETTE[i % len(PALETTE)]
        cv.polyline(real.vertices, color)
        cv.dot(real.vertices[0], color)
        cv.text(8, 16 + 14 * i, f"x={x:g}, alpha={math.degrees(alpha):.0f} deg: "
                f"{label.title}, length {real.total_length:.4f}", color)
    return cv.render("disk realizations, r = 0.5"), labels
