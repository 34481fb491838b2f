"""Vertices of DL_d(q) attached to group elements, and Cayley-graph balls.

The element (x, Q) sits at the vertex whose tree-i coordinate (i < d) is the
truncation of the Laurent series of Q in t + l_i below degree k_i = x_i, and
whose tree-d coordinate is the truncation of its series in t^-1 up to degree
k_d = -(k_1 + ... + k_{d-1}).

Sign convention: the height of tree i is -k_i for every i, so heights sum to
zero.  Labels store the k_i; :attr:`VertexLabel.heights` applies the sign.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InjectivityViolation, ResourceLimit
from .group import GroupElement, generating_set, identity
from .params import GroupParams
from .ring import TruncatedSeries, laurent_expand, monomial

DEFAULT_BALL_CAP = 2_000_000


@dataclass(frozen=True)
class VertexLabel:
    """Per tree: (k_i, truncated terms), terms sorted (degree, coefficient)."""

    ks: tuple
    truncations: tuple

    @property
    def heights(self) -> tuple:
        return tuple(-k for k in self.ks)

    def __str__(self):
        parts = []
        for i, (k, terms) in enumerate(zip(self.ks, self.truncations), start=1):
            body = " ".join(f"{e}:{c}" for e, c in terms) or "-"
            parts.append(f"T{i}[k={k}] {body}")
        return " | ".join(parts)


def _cutoffs(params: GroupParams, x) -> tuple:
    kd = -sum(x)
    return tuple(k - 1 for k in x) + (kd,)


def vertex_label(g: GroupElement) -> VertexLabel:
    params = g.params
    cut = _cutoffs(params, g.x)
    truncs = tuple(laurent_expand(g.Q, i, cut[i - 1]).terms for i in range(1, params.d + 1))
    return VertexLabel(tuple(g.x) + (-sum(g.x),), truncs)


def _series_add_mul(base: dict, factor: TruncatedSeries, terms, cutoff: int) -> tuple:
    out = dict(base)
    fac = factor.terms
    for e1, c1 in terms:
        for e2, c2 in fac:
            e = e1 + e2
            if e > cutoff:
                break
            out[e] = out.get(e, 0) + c1 * c2
    return out


def act_on_label(h: GroupElement, label: VertexLabel) -> VertexLabel:
    """Label of h*g computed from h and the label of g alone.

    With h = (y, P) the product is (x + y, P + 1^y Q); in each tree the new
    truncation is that of the series of P plus the series of 1^y times the
    old truncation, because the series of 1^y starts in degree y_i.
    """
    params = h.params
    q = params.q
    new_x = tuple(k + y for k, y in zip(label.ks[:-1], h.x))
    cut = _cutoffs(params, new_x)
    mono = monomial(params, h.x)
    truncs = []
    for i in range(1, params.d + 1):
        c = cut[i - 1]
        old = label.truncations[i - 1]
        low = min((e for e, _ in old), default=c)
        base = laurent_expand(h.Q, i, c).as_dict()
        shift = laurent_expand(mono, i, c - low)
        merged = _series_add_mul(base, shift, old, c)
        truncs.append(tuple(sorted((e, v % q) for e, v in merged.items() if v % q)))
    return VertexLabel(new_x + (-sum(new_x),), tuple(truncs))


def labels_adjacent(a: VertexLabel, b: VertexLabel) -> bool:
    """Edge law of DL_d(q): two trees move, one up and one down, the rest stay.

    In a moving tree the coordinate with the smaller k must be the
    restriction of the other (the parent of a vertex forgets its top term).
    """
    changed = [i for i in range(len(a.ks)) if a.ks[i] != b.ks[i] or a.truncations[i] != b.truncations[i]]
    if len(changed) != 2:
        return False
    deltas = sorted(b.ks[i] - a.ks[i] for i in changed)
    if deltas != [-1, 1]:
        return False
    for i in changed:
        lo, hi = (a, b) if a.ks[i] < b.ks[i] else (b, a)
        bound = lo.ks[i] if i < len(a.ks) - 1 else lo.ks[i] + 1
        restricted = tuple((e, c) for e, c in hi.truncations[i] if e < bound)
        if restricted != lo.truncations[i]:
            return False
    return True


class CayleyGraph:
    """Breadth-first exploration of the Cayley graph on the standard generators."""

    def __init__(self, params: GroupParams, cap: int = DEFAULT_BALL_CAP):
        self.params = params
        self.cap = cap
        self.gens = [el for _, el in generating_set(params)]
        self._gen_set = set(self.gens)

    def adjacent(self, g: GroupElement, h: GroupElement) -> bool:
        return g.inverse() * h in self._gen_set

    def spheres(self, radius: int) -> list[list[GroupElement]]:
        if radius < 0:
            raise ValueError("radius must be non-negative")
        start = identity(self.params)
        seen = {start}
        layers = [[start]]
        for _ in range(radius):
            nxt = []
            for g in layers[-1]:
                for s in self.gens:
                    h = g * s
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
                        if len(seen) > self.cap:
                            raise ResourceLimit(f"ball exceeds {self.cap} elements")
            layers.append(nxt)
        return layers

    def ball(self, radius: int) -> list[GroupElement]:
        return [g for layer in self.spheres(radius) for g in layer]

    def sphere_sizes(self, radius: int) -> list[int]:
        return [len(layer) for layer in self.spheres(radius)]

    def edges(self, radius: int):
        """Yield (g, g*s) for g in the ball of radius-1 and every generator s."""
        for layer in self.spheres(radius - 1) if radius > 0 else []:
            for g in layer:
                for s in self.gens:
                    yield g, g * s


def ball(params: GroupParams, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[GroupElement]:
    return CayleyGraph(params, cap).ball(radius)


def sphere_sizes(params: GroupParams, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[int]:
    return CayleyGraph(params, cap).sphere_sizes(radius)


def adjacent(g: GroupElement, h: GroupElement) -> bool:
    return CayleyGraph(g.params).adjacent(g, h)


@dataclass
class InjectivityReport:
    radius: int
    elements: int
    labels: int

    def __str__(self):
        return f"radius {self.radius}: {self.elements} elements, {self.labels} distinct labels, injective"


def label_injectivity(params: GroupParams, radius: int, cap: int = DEFAULT_BALL_CAP) -> InjectivityReport:
    elements = ball(params, radius, cap)
    seen: dict[VertexLabel, GroupElement] = {}
    for g in elements:
        lab = vertex_label(g)
        other = seen.get(lab)
        if other is not None and other != g:
            raise InjectivityViolation(f"{g} and {other} share the label {lab}")
        seen[lab] = g
    return InjectivityReport(radius, len(elements), len(seen))
