"""The ring R_d(Z_q) = Z_q[(t+l_1)^-1, ..., (t+l_{d-1})^-1, t].

Elements are reduced fractions ``num / prod (t+l_i)^den[i]`` with ``num`` a
dense polynomial in t.  Because every denominator factor is monic, it is a
non-zero-divisor even for composite q, and a fraction is reduced exactly
when ``num(-l_i) != 0`` for every i with ``den[i] > 0``.  Reduced forms are
unique, which is what makes hashing sound.

Tree indices are 1-based as in the group literature: trees 1..d-1 carry
the variables t+l_i and tree d carries t^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import poly
from .errors import BadIndex, InternalInconsistency, NotAUnit, ParamsMismatch
from .params import GroupParams


def _check_same(a: RingElem, b: RingElem) -> None:
    if a.params is not b.params and a.params != b.params:
        raise ParamsMismatch(f"ring elements over {a.params} and {b.params}")


def _reduce(params: GroupParams, num, den) -> RingElem:
    q = params.q
    num = poly.trim(num, q)
    if not num:
        return RingElem(params, (), (0,) * params.rank)
    den = list(den)
    for i, c in enumerate(params.l):
        while den[i] > 0:
            quot, rem = poly.div_linear(num, c, q)
            if rem:
                break
            num = quot
            den[i] -= 1
    return RingElem(params, num, tuple(den))


def _times_linear_powers(params: GroupParams, num, exps) -> tuple:
    q = params.q
    for c, e in zip(params.l, exps):
        if e > 0:
            num = poly.mul(num, poly.linear_power(c, e, q), q)
    return num


@dataclass(frozen=True, eq=False)
class RingElem:
    """An element of R_d(Z_q); build with :func:`from_parts` or the helpers below."""

    params: GroupParams
    num: tuple
    den: tuple

    # -- construction ----------------------------------------------------
    @classmethod
    def from_parts(cls, params: GroupParams, num: Iterable[int],
                   vector: Sequence[int] | None = None) -> RingElem:
        """``num(t) * prod (t+l_i)^vector[i]``; negative entries become denominators."""
        vector = tuple(vector) if vector is not None else (0,) * params.rank
        num = poly.trim(num, params.q)
        num = _times_linear_powers(params, num, vector)
        return _reduce(params, num, tuple(max(-e, 0) for e in vector))

    # -- predicates ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return not any(self.den)

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: RingElem) -> RingElem:
        if isinstance(other, int):
            other = const(self.params, other)
        _check_same(self, other)
        if not other.num:
            return self
        if not self.num:
            return other
        q = self.params.q
        if self.den == other.den:
            return _reduce(self.params, poly.add(self.num, other.num, q), self.den)
        top = tuple(max(a, b) for a, b in zip(self.den, other.den))
        a = _times_linear_powers(self.params, self.num, [m - e for m, e in zip(top, self.den)])
        b = _times_linear_powers(self.params, other.num, [m - e for m, e in zip(top, other.den)])
        return _reduce(self.params, poly.add(a, b, q), top)

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(self.params, poly.neg(self.num, self.params.q), self.den)

    def __sub__(self, other: RingElem) -> RingElem:
        if isinstance(other, int):
            other = const(self.params, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> RingElem:
        if isinstance(other, int):
            return RingElem(self.params, poly.scale(self.num, other, self.params.q),
                            self.den) if other % self.params.q else zero(self.params)
        _check_same(self, other)
        q = self.params.q
        if not self.num or not other.num:
            return zero(self.params)
        num = poly.mul(self.num, other.num, q)
        den = tuple(a + b for a, b in zip(self.den, other.den))
        return _reduce(self.params, num, den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> RingElem:
        if n < 0:
            return invert_unit(self) ** (-n)
        result = one(self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def act(self, v: Sequence[int]) -> RingElem:
        """The Z^{d-1}-module action Q^v = Q * prod (t+l_i)^v_i."""
        if not self.num or not any(v):
            return self
        num = _times_linear_powers(self.params, self.num, v)
        den = tuple(m + max(-e, 0) for m, e in zip(self.den, v))
        return _reduce(self.params, num, den)

    def apply_beta(self, beta) -> RingElem:
        """Image under the ring map 1^v -> 1^{beta v}.

        Only well defined when beta preserves the relation ideal (beta in Phi);
        the caller is responsible for that.  Computed as num(T)*1^{-beta m}
        with T = 1^{beta e_1} the image of t = t + l_1.
        """
        if not self.num:
            return self
        p = self.params
        q = p.q
        r = p.rank
        col = [beta[k][0] for k in range(r)]
        top = poly.linear_power(0, 0, q)
        top = _times_linear_powers(p, top, [max(b, 0) for b in col])
        bottom = _times_linear_powers(p, (1,), [max(-b, 0) for b in col])
        deg = len(self.num) - 1
        composed = poly.compose_fraction(self.num, top, bottom, q)
        beta_m = [sum(beta[k][j] * self.den[j] for j in range(r)) for k in range(r)]
        vector = [deg * min(b, 0) - bm for b, bm in zip(col, beta_m)]
        return RingElem.from_parts(p, composed, vector)

    def reduce_mod(self, p: int) -> RingElem:
        """Image in R_d(Z_p) for a divisor p of q."""
        params = self.params.reduced_mod(p)
        return _reduce(params, poly.trim(self.num, p), self.den)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = const(self.params, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return ring_eq(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        from .textio import format_ring
        return format_ring(self)

    def __repr__(self):
        return f"RingElem({self})"


# -- constructors -----------------------------------------------------------

def zero(params: GroupParams) -> RingElem:
    return RingElem(params, (), (0,) * params.rank)


def const(params: GroupParams, c: int) -> RingElem:
    return _reduce(params, (c % params.q,), (0,) * params.rank)


def one(params: GroupParams) -> RingElem:
    return const(params, 1)


def monomial(params: GroupParams, v: Sequence[int], c: int = 1) -> RingElem:
    """c * prod (t+l_i)^v_i, written c*1^v."""
    return RingElem.from_parts(params, (c,), v)


def t_var(params: GroupParams) -> RingElem:
    return RingElem.from_parts(params, (0, 1))


# -- named operations -------------------------------------------------------

def ring_add(a: RingElem, b: RingElem) -> RingElem:
    return a + b


def ring_neg(a: RingElem) -> RingElem:
    return -a


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    return a * b


def ring_eq(a: RingElem, b: RingElem) -> bool:
    """a == b, decided by clearing the monic denominators and comparing numerators."""
    _check_same(a, b)
    if a.den == b.den:
        return a.num == b.num
    top = [max(x, y) for x, y in zip(a.den, b.den)]
    lhs = _times_linear_powers(a.params, a.num, [m - e for m, e in zip(top, a.den)])
    rhs = _times_linear_powers(a.params, b.num, [m - e for m, e in zip(top, b.den)])
    return lhs == rhs


def monomial_action(Q: RingElem, v: Sequence[int]) -> RingElem:
    return Q.act(v)


# -- Laurent expansions and the decomposition -------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """All terms of degree <= cutoff of the Laurent expansion in one tree variable.

    ``terms`` is a sorted tuple of (degree, coefficient) pairs with non-zero
    coefficients.  Degrees are in t + l_tree for trees below d and in t^-1
    for tree d.
    """

    tree: int
    terms: tuple
    cutoff: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def below(self, bound: int) -> tuple:
        """Terms of degree strictly less than ``bound``."""
        return tuple((e, c) for e, c in self.terms if e < bound)


@dataclass(frozen=True)
class SingleVarPart:
    """One summand P_i(Q) of the decomposition.

    Keys are degrees in the tree variable: strictly negative powers of
    t + l_i for i < d, and non-positive powers of t^-1 for i = d (that is,
    the polynomial part in t; the t^n term is stored under key -n).
    """

    tree: int
    terms: tuple

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def to_ring(self, params: GroupParams) -> RingElem:
        return series_to_ring(params, self.tree, self.terms)


def series_to_ring(params: GroupParams, tree: int, terms) -> RingElem:
    """Sum of c * var^n over ``terms`` for the variable of ``tree``."""
    terms = [(e, c % params.q) for e, c in terms if c % params.q]
    if not terms:
        return zero(params)
    q = params.q
    if tree == params.d:
        # var = t^-1 = (t + l_1)^-1
        low = min(-e for e, _ in terms)
        coeffs = [0] * (max(-e for e, _ in terms) - low + 1)
        for e, c in terms:
            coeffs[-e - low] = c
        vec = [0] * params.rank
        vec[0] = low
        return RingElem.from_parts(params, coeffs, vec)
    low = min(e for e, _ in terms)
    coeffs = [0] * (max(e for e, _ in terms) - low + 1)
    for e, c in terms:
        coeffs[e - low] = c
    in_t = poly.taylor_shift(poly.trim(coeffs, q), params.l[tree - 1], q)
    vec = [0] * params.rank
    vec[tree - 1] = low
    return RingElem.from_parts(params, in_t, vec)


def laurent_expand(Q: RingElem, tree: int, cutoff: int) -> TruncatedSeries:
    """Terms of degree <= cutoff of the Laurent series of Q in the tree variable.

    For tree i < d substitute t = u - l_i: the denominator becomes u^m_i g(u)
    with g(0) a product of differences l_j - l_i, hence invertible.  For tree
    d substitute t = 1/s, which turns the denominator into s^-M h(s) with
    h(0) = 1.
    """
    p = Q.params
    q = p.q
    if not 1 <= tree <= p.d:
        raise BadIndex(f"tree index {tree} outside 1..{p.d}")
    if not Q.num:
        return TruncatedSeries(tree, (), cutoff)
    if tree < p.d:
        c = p.l[tree - 1]
        top = poly.taylor_shift(Q.num, -c, q)
        g = (1,)
        for j, m in enumerate(Q.den):
            if j != tree - 1 and m:
                g = poly.mul(g, poly.linear_power((p.l[j] - c) % q, m, q), q)
        low = -Q.den[tree - 1]
    else:
        top = tuple(reversed(Q.num))
        g = (1,)
        for j, m in enumerate(Q.den):
            if m:
                # (t + l_j) = s^-1 (1 + l_j s)
                g = poly.mul(g, poly.power(poly.trim((1, p.l[j]), q), m, q), q)
        low = sum(Q.den) - (len(Q.num) - 1)
    prec = cutoff - low + 1
    if prec <= 0:
        return TruncatedSeries(tree, (), cutoff)
    coeffs = poly.series_mul(list(top), poly.series_inverse(g, prec, q), prec, q)
    terms = tuple((low + k, c) for k, c in enumerate(coeffs) if c)
    return TruncatedSeries(tree, terms, cutoff)


def decompose(Q: RingElem) -> tuple[SingleVarPart, ...]:
    """Split Q = P_1 + ... + P_d into its single-variable parts.

    P_i (i < d) is the principal part of Q at t = -l_i, whose depth is the
    denominator exponent m_i; P_d is what remains and must be a polynomial.
    """
    p = Q.params
    parts = []
    residual = Q
    for i in range(1, p.d):
        m = Q.den[i - 1]
        if m == 0:
            parts.append(SingleVarPart(i, ()))
            continue
        terms = laurent_expand(Q, i, -1).terms
        part = SingleVarPart(i, terms)
        parts.append(part)
        residual = residual - part.to_ring(p)
    if not residual.is_polynomial:
        raise InternalInconsistency(f"residual {residual!r} of decomposition is not a polynomial")
    parts.append(SingleVarPart(p.d, tuple((-n, c) for n, c in reversed(list(enumerate(residual.num))) if c)))
    return tuple(parts)


# -- units and monomials ----------------------------------------------------

def _strip_linear_factors(params: GroupParams, num) -> tuple[tuple, list[int]]:
    """Greedily divide out the factors t + l_i; return (cofactor, multiplicities)."""
    q = params.q
    mult = [0] * params.rank
    for i, c in enumerate(params.l):
        while num:
            quot, rem = poly.div_linear(num, c, q)
            if rem:
                break
            num = quot
            mult[i] += 1
    return num, mult


def monomial_normal_form(Q: RingElem):
    """Return (c, v) with Q = c * prod (t+l_i)^v_i, or None if Q has no such form.

    ``c`` is a residue of Z_q; the greedy factor test is exact because the
    factors t + l_i are monic and pairwise coprime.
    """
    if not Q.num:
        return None
    rest, mult = _strip_linear_factors(Q.params, Q.num)
    if len(rest) != 1:
        return None
    return rest[0], tuple(s - m for s, m in zip(mult, Q.den))


def in_monomial_set(Q: RingElem) -> bool:
    """Is Q = prod (t+l_i)^x_i with coefficient exactly 1?"""
    nf = monomial_normal_form(Q)
    return nf is not None and nf[0] == 1


def is_unit(Q: RingElem) -> bool:
    """Units are c * monomial modulo every prime p | q (c a unit of Z_p)."""
    if not Q.num:
        return False
    for p in Q.params.primes:
        nf = monomial_normal_form(Q.reduce_mod(p))
        if nf is None or nf[0] % p == 0:
            return False
    return True


def _crt_idempotent(q: int, p: int) -> int:
    pe = 1
    while q % (pe * p) == 0:
        pe *= p
    rest = q // pe
    # e = 1 mod p^e, 0 mod rest
    return (rest * pow(rest, -1, pe)) % q if rest > 1 else 1


def invert_unit(Q: RingElem) -> RingElem:
    """Exact inverse of a unit.

    For prime q this is c^-1 * 1^-v.  For composite q an approximation that
    is correct modulo every prime divisor is assembled by CRT and refined by
    v <- v (2 - Q v); the error 1 - Qv is nilpotent and squares each round.
    """
    params = Q.params
    if not Q.num:
        raise NotAUnit("zero is not a unit")
    if params.is_prime_q:
        nf = monomial_normal_form(Q)
        if nf is None:
            raise NotAUnit(f"{Q} is not a unit")
        c, v = nf
        return monomial(params, [-x for x in v], params.inv(c))
    approx = zero(params)
    for p in params.primes:
        nf = monomial_normal_form(Q.reduce_mod(p))
        if nf is None or nf[0] % p == 0:
            raise NotAUnit(f"{Q} is not a unit (fails modulo {p})")
        c, v = nf
        lift = monomial(params, [-x for x in v], pow(c, -1, p))
        approx = approx + lift * _crt_idempotent(params.q, p)
    one_ = one(params)
    for _ in range(64):
        err = one_ - Q * approx
        if err.is_zero:
            return approx
        approx = approx * (one_ + err)
    raise InternalInconsistency(f"Newton inversion of {Q} did not terminate")
