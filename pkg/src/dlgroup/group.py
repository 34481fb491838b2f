"""Elements of Gamma_d(q) in the upper-triangular matrix model.

An element is the matrix [[1^x, Q], [0, 1]] with 1^x = prod (t+l_i)^x_i,
stored as the pair (x, Q).  Multiplication of such matrices gives
(x1, Q1)(x2, Q2) = (x1 + x2, Q1 + Q2^x1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadGenerator, ParamsMismatch, RelatorFailed
from .params import GroupParams
from .ring import RingElem, const, monomial, zero


@dataclass(frozen=True)
class GroupElement:
    x: tuple
    Q: RingElem

    @property
    def params(self) -> GroupParams:
        return self.Q.params

    @property
    def in_derived_subgroup(self) -> bool:
        return not any(self.x)

    def __mul__(self, other: GroupElement) -> GroupElement:
        if self.params != other.params:
            raise ParamsMismatch(f"elements over {self.params} and {other.params}")
        x = tuple(a + b for a, b in zip(self.x, other.x))
        return GroupElement(x, self.Q + other.Q.act(self.x))

    def inverse(self) -> GroupElement:
        neg = tuple(-a for a in self.x)
        return GroupElement(neg, -self.Q.act(neg))

    def __pow__(self, n: int) -> GroupElement:
        base = self if n >= 0 else self.inverse()
        result = identity(self.params)
        for _ in range(abs(n)):
            result = result * base
        return result

    def conjugate_by(self, h: GroupElement) -> GroupElement:
        """h g h^-1."""
        return h * self * h.inverse()

    def __str__(self):
        from .textio import format_element
        return format_element(self)


def identity(params: GroupParams) -> GroupElement:
    return GroupElement((0,) * params.rank, zero(params))


def element(params: GroupParams, x: Sequence[int], Q: RingElem | None = None) -> GroupElement:
    if len(x) != params.rank:
        raise ParamsMismatch(f"exponent vector of length {len(x)}, expected {params.rank}")
    return GroupElement(tuple(x), Q if Q is not None else zero(params))


def g_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def g_inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def g_id(params: GroupParams) -> GroupElement:
    return identity(params)


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b * a.inverse() * b.inverse()


def _unit_vector(params: GroupParams, i: int, scale: int = 1) -> tuple:
    v = [0] * params.rank
    v[i - 1] = scale
    return tuple(v)


# -- generating set -----------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """A member of the standard generating set.

    Kind "A" is the matrix with diagonal t + l_i and corner b, raised to
    ``sign``; kind "B" is ((t+l_i)(t+l_j)^-1, -b(t+l_j)^-1).  Indices are
    1-based.
    """

    kind: str
    i: int
    b: int
    sign: int = 1
    j: int = 0

    @staticmethod
    def A(i: int, b: int, sign: int = 1) -> Generator:
        return Generator("A", i, b, sign)

    @staticmethod
    def B(i: int, j: int, b: int) -> Generator:
        return Generator("B", i, b, 1, j)

    def validate(self, params: GroupParams) -> None:
        r = params.rank
        if self.kind == "A":
            if not 1 <= self.i <= r or self.sign not in (1, -1):
                raise BadGenerator(f"invalid generator {self}")
        elif self.kind == "B":
            if not (1 <= self.i <= r and 1 <= self.j <= r) or self.i == self.j:
                raise BadGenerator(f"invalid generator {self}")
        else:
            raise BadGenerator(f"unknown generator kind {self.kind!r}")

    def element(self, params: GroupParams) -> GroupElement:
        self.validate(params)
        b = self.b % params.q
        if self.kind == "A":
            if self.sign == 1:
                return GroupElement(_unit_vector(params, self.i), const(params, b))
            return GroupElement(_unit_vector(params, self.i, -1),
                                monomial(params, _unit_vector(params, self.i, -1), -b))
        x = tuple(a - c for a, c in zip(_unit_vector(params, self.i), _unit_vector(params, self.j)))
        return GroupElement(x, monomial(params, _unit_vector(params, self.j, -1), -b))

    def inverse(self) -> Generator:
        if self.kind == "A":
            return Generator.A(self.i, self.b, -self.sign)
        return Generator.B(self.j, self.i, -self.b)

    def __str__(self):
        if self.kind == "A":
            return f"A({self.i},{self.b},{'+1' if self.sign == 1 else '-1'})"
        return f"B({self.i},{self.j},{self.b})"


def generators(params: GroupParams) -> list[Generator]:
    r = params.rank
    out = []
    for i in range(1, r + 1):
        for b in range(params.q):
            out.append(Generator.A(i, b, 1))
            out.append(Generator.A(i, b, -1))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i != j:
                for b in range(params.q):
                    out.append(Generator.B(i, j, b))
    return out


def generating_set(params: GroupParams) -> list[tuple[Generator, GroupElement]]:
    """All q*d*(d-1) members of the generating set with their matrices."""
    return [(g, g.element(params)) for g in generators(params)]


def eval_word(params: GroupParams, word: Iterable[Generator]) -> GroupElement:
    result = identity(params)
    for gen in word:
        result = result * gen.element(params)
    return result


def random_word(params: GroupParams, length: int, rng: random.Random) -> list[Generator]:
    gens = generators(params)
    return [rng.choice(gens) for _ in range(length)]


# -- presentation ---------------------------------------------------------------

@dataclass
class PresentationReport:
    defining: list[str]
    sampled: int

    def __str__(self):
        lines = [f"relator {name}: identity" for name in self.defining]
        lines.append(f"sampled derived relators: {self.sampled} passed")
        return "\n".join(lines)


def _require_identity(name: str, g: GroupElement) -> None:
    if g != identity(g.params):
        raise RelatorFailed(f"relator {name} evaluates to {g}, not the identity")


def check_presentation(params: GroupParams, samples: int = 200,
                       rng: random.Random | None = None) -> PresentationReport:
    """Evaluate the defining relators in the matrix model.

    For d >= 3 these are a^q, [a, a^{t_1}], [t_i, t_j] and
    a^{l_j - l_i} a^{t_i} (a^{t_j})^-1 with a^{t_i} = t_i a t_i^-1; for d = 2
    the lamplighter relators a^q and [a^{t^i}, a^{t^j}].  ``samples`` random
    members of the derived infinite families are checked as well.
    """
    rng = rng or random.Random(0)
    q = params.q
    r = params.rank
    a = GroupElement((0,) * r, const(params, 1))
    ts = [GroupElement(_unit_vector(params, i), zero(params)) for i in range(1, r + 1)]
    checked = []

    def conj(g, v):
        h = GroupElement(tuple(v), zero(params))
        return h * g * h.inverse()

    _require_identity("a^q", a ** q)
    checked.append("a^q")
    if params.d == 2:
        for i in range(-3, 4):
            for j in range(i + 1, 4):
                name = f"[a^(t^{i}),a^(t^{j})]"
                _require_identity(name, commutator(conj(a, (i,)), conj(a, (j,))))
                checked.append(name)
    else:
        a1 = conj(a, _unit_vector(params, 1))
        _require_identity("[a,a^t1]", commutator(a, a1))
        checked.append("[a,a^t1]")
        for i in range(r):
            for j in range(i + 1, r):
                name = f"[t{i + 1},t{j + 1}]"
                _require_identity(name, commutator(ts[i], ts[j]))
                checked.append(name)
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                ai = conj(a, _unit_vector(params, i + 1))
                aj = conj(a, _unit_vector(params, j + 1))
                power = (params.l[j] - params.l[i]) % q
                name = f"a^(l{j + 1}-l{i + 1}) a^t{i + 1} (a^t{j + 1})^-1"
                _require_identity(name, a ** power * ai * aj.inverse())
                checked.append(name)
    for _ in range(samples):
        v1 = [rng.randint(-4, 4) for _ in range(r)]
        v2 = [rng.randint(-4, 4) for _ in range(r)]
        g1 = conj(a, v1)
        _require_identity(f"[a^{v1},a^{v2}]", commutator(g1, conj(a, v2)))
        _require_identity(f"(a^{v1})^q", g1 ** q)
        if r >= 2:
            i, j = rng.sample(range(r), 2)
            base = [rng.randint(-4, 4) for _ in range(r)]
            vi = list(base)
            vi[i] += 1
            vj = list(base)
            vj[j] += 1
            power = (params.l[j] - params.l[i]) % q
            rel = conj(a, base) ** power * conj(a, vi) * conj(a, vj).inverse()
            _require_identity(f"a_x^(l{j + 1}-l{i + 1}) a_(x+e{i + 1}) a_(x+e{j + 1})^-1 at x={base}", rel)
            m1, m2 = rng.randint(-3, 3), rng.randint(-3, 3)
            _require_identity(f"[t{i + 1}^{m1},t{j + 1}^{m2}]", commutator(ts[i] ** m1, ts[j] ** m2))
    return PresentationReport(checked, samples)
