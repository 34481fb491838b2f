"""Lamp configurations: elements of Gamma_d(q) as bulbs on Z^{d-1}.

A formal sum is a finitely supported map Z^{d-1} -> Z_q, the vector v with
value b standing for b * 1^v in the ring.  The lampstand is the union of the
d rays {a e_i : a < 0} (i < d) and {a e_1 : a >= 0}; every ring element has
exactly one formal sum supported there.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping

from .errors import SupportOutsideLampstand
from .group import GroupElement
from .params import GroupParams
from .ring import RingElem, decompose, monomial, zero

FormalSum = dict  # tuple[int, ...] -> int


def _clean(params: GroupParams, s: Mapping) -> dict:
    out = {}
    for v, c in s.items():
        c %= params.q
        if c:
            out[tuple(v)] = c
    return out


def on_lampstand(v) -> bool:
    nonzero = [k for k, a in enumerate(v) if a]
    if not nonzero:
        return True
    if len(nonzero) > 1:
        return False
    k = nonzero[0]
    return v[k] < 0 or k == 0


def formal_sum_to_ring(params: GroupParams, s: Mapping) -> RingElem:
    total = zero(params)
    for v, c in s.items():
        if c % params.q:
            total = total + monomial(params, v, c)
    return total


def in_kernel_K(params: GroupParams, s: Mapping) -> bool:
    """Does the formal sum map to zero in the ring?"""
    return formal_sum_to_ring(params, s).is_zero


def ring_to_lamps(Q: RingElem) -> dict:
    """The unique lampstand-supported formal sum with ring image Q."""
    params = Q.params
    r = params.rank
    lamps = {}
    for part in decompose(Q):
        for e, c in part.terms:
            v = [0] * r
            if part.tree == params.d:
                v[0] = -e  # key -n holds the t^n term
            else:
                v[part.tree - 1] = e
            lamps[tuple(v)] = c
    return lamps


@dataclass(frozen=True)
class LampConfig:
    lamps: tuple  # sorted ((vector, value), ...)
    x: tuple

    def as_dict(self) -> dict:
        return dict(self.lamps)

    def __str__(self):
        from .textio import format_lamp_config
        return format_lamp_config(self)


def to_lamp_config(g: GroupElement) -> LampConfig:
    """Normal form (A, x): A is the lampstand sum of Q^{-x}."""
    shifted = g.Q.act(tuple(-a for a in g.x))
    return LampConfig(tuple(sorted(ring_to_lamps(shifted).items())), g.x)


def from_lamp_config(params: GroupParams, config: LampConfig) -> GroupElement:
    for v, _ in config.lamps:
        if not on_lampstand(v):
            raise SupportOutsideLampstand(f"lamp at {v} is off the lampstand")
    Q = formal_sum_to_ring(params, dict(config.lamps))
    return GroupElement(tuple(config.x), Q.act(config.x))


def _priority(v) -> tuple:
    return (-sum(abs(a) for a in v[1:]), -abs(v[0]), v)


def reduce_formal_sum(params: GroupParams, s: Mapping) -> dict:
    """Rewrite a formal sum onto the lampstand using the kernel relators.

    Each off-lampstand bulb b at v is replaced using
    (l_j - l_i) c_x + c_{x+e_i} - c_{x+e_j} = 0, trying in order: a positive
    coordinate j > 1; two negative coordinates j > i > 1; one negative
    coordinate j > 1 with v_1 > 0; one negative coordinate j > 1 with
    v_1 < 0.  Bulbs are processed largest-first so contributions to the same
    vector merge before being rewritten again.
    """
    q = params.q
    l = params.l
    out = _clean(params, s)
    heap = [_priority(v) for v in out if not on_lampstand(v)]
    heapq.heapify(heap)

    def bump(v, c):
        v = tuple(v)
        new = (out.get(v, 0) + c) % q
        if new:
            if v not in out and not on_lampstand(v):
                heapq.heappush(heap, _priority(v))
            out[v] = new
        else:
            out.pop(v, None)

    def moved(v, *steps):
        w = list(v)
        for k, delta in steps:
            w[k] += delta
        return w

    while heap:
        v = heapq.heappop(heap)[2]
        b = out.pop(v, 0)
        if not b:
            continue
        positive = [j for j in range(1, len(v)) if v[j] > 0]
        negative = [j for j in range(1, len(v)) if v[j] < 0]
        if positive:
            j = positive[0]
            bump(moved(v, (j, -1)), l[j] * b)
            bump(moved(v, (0, 1), (j, -1)), b)
        elif len(negative) >= 2:
            i, j = negative[0], negative[1]
            c = b * pow(l[j] - l[i], -1, q)
            bump(moved(v, (j, 1)), c)
            bump(moved(v, (i, 1)), -c)
        elif v[0] > 0:
            j = negative[0]
            bump(moved(v, (j, 1), (0, -1)), b)
            bump(moved(v, (0, -1)), -l[j] * b)
        else:
            j = negative[0]
            c = b * pow(l[j], -1, q)
            bump(moved(v, (0, 1)), -c)
            bump(moved(v, (j, 1)), c)
    return out
