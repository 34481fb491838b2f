"""Random ring elements, units, group elements and automorphisms for tests and demos."""

from __future__ import annotations

import random
from math import gcd, prod

from .aut import AutRep, Derivation, enumerate_phi, principal_derivation
from .group import GroupElement
from .params import GroupParams
from .ring import RingElem, monomial, one


def random_ring_elem(params: GroupParams, rng: random.Random, max_deg: int = 5,
                     max_den: int = 3, zero_chance: float = 0.05) -> RingElem:
    if rng.random() < zero_chance:
        return RingElem.from_parts(params, ())
    deg = rng.randint(0, max_deg)
    num = [rng.randrange(params.q) for _ in range(deg + 1)]
    den = [-rng.randint(0, max_den) for _ in range(params.rank)]
    return RingElem.from_parts(params, num, den)


def random_vector(params: GroupParams, rng: random.Random, span: int = 3) -> tuple:
    return tuple(rng.randint(-span, span) for _ in range(params.rank))


def random_unit(params: GroupParams, rng: random.Random, span: int = 3) -> RingElem:
    """c * 1^v, times 1 + (nilpotent) when q has repeated prime factors."""
    q = params.q
    c = rng.choice([a for a in range(1, q) if gcd(a, q) == 1] or [1])
    unit = monomial(params, random_vector(params, rng, span), c)
    radical = prod(params.primes)
    if radical != q and rng.random() < 0.5:
        unit = unit * (one(params) + random_ring_elem(params, rng, 3, 1) * radical)
    return unit


def random_element(params: GroupParams, rng: random.Random, span: int = 3, **kw) -> GroupElement:
    return GroupElement(random_vector(params, rng, span), random_ring_elem(params, rng, **kw))


def random_derivation(params: GroupParams, rng: random.Random) -> Derivation:
    """Principal for d >= 3 (all derivations are); arbitrary basis value for d = 2."""
    if params.d == 2:
        return Derivation((random_ring_elem(params, rng),))
    return principal_derivation(random_ring_elem(params, rng))


def random_autrep(params: GroupParams, rng: random.Random, phi=None) -> AutRep:
    if phi is None:
        phi = enumerate_phi(params, 1).matrices
    beta = rng.choice(list(phi))
    return AutRep(random_derivation(params, rng), random_unit(params, rng), beta)
