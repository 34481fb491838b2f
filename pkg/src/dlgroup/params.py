"""Group parameters (d, q, l_1, ..., l_{d-1})."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .errors import BadL1, NonUnitDifference, ParamsError, PrimeBound


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class GroupParams:
    """Parameters of the Diestel-Leader group Gamma_d(q).

    ``l`` holds the residues l_1, ..., l_{d-1} (0-based tuple, so ``l[0]``
    is l_1 and is always 0).  Build instances with :func:`validate_params`;
    the bare constructor only canonicalises residues.
    """

    d: int
    q: int
    l: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) % self.q for x in self.l))

    @property
    def rank(self) -> int:
        """Rank d-1 of the free abelian quotient."""
        return self.d - 1

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(prime_factors(self.q))

    @property
    def is_prime_q(self) -> bool:
        return self.primes == (self.q,)

    def inv(self, c: int) -> int:
        """Inverse of a unit residue of Z_q."""
        return pow(c % self.q, -1, self.q)

    def reduced_mod(self, p: int) -> GroupParams:
        """The same family with coefficients reduced modulo a divisor ``p`` of q."""
        return GroupParams(self.d, p, self.l)

    def __str__(self):
        return f"({self.d},{self.q},[{','.join(map(str, self.l))}])"


def validate_params(d: int, q: int, l) -> GroupParams:
    """Check the construction constraints and return a :class:`GroupParams`.

    Raises PrimeBound when some prime p | q has d > p + 1, BadL1 when
    l_1 != 0 and NonUnitDifference when some l_i - l_j is not a unit.
    """
    if d < 2:
        raise ParamsError(f"d must be at least 2, got {d}")
    if q < 2:
        raise ParamsError(f"q must be at least 2, got {q}")
    for p in prime_factors(q):
        if d > p + 1:
            raise PrimeBound(f"prime {p} divides q={q} but d={d} > {p + 1}")
    l = tuple(l)
    if len(l) != d - 1:
        raise ParamsError(f"expected {d - 1} values l_1..l_{d - 1}, got {len(l)}")
    if l[0] % q != 0:
        raise BadL1(f"l_1 must be 0, got {l[0]}")
    for i in range(len(l)):
        for j in range(i + 1, len(l)):
            diff = (l[i] - l[j]) % q
            if gcd(diff, q) != 1:
                raise NonUnitDifference(
                    f"l_{i + 1} - l_{j + 1} = {diff} is not a unit mod {q}")
    return GroupParams(d, q, l)
