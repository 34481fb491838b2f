"""Automorphisms of Gamma_d(q) as triples (delta, R, beta).

beta is an integer matrix in Phi (it preserves the relation ideal, so
Q -> Q^beta, 1^v -> 1^{beta v}, is a ring automorphism), R is a unit of
the ring and delta a derivation Z^{d-1} -> R_d(Z_q).  The triple acts by

    (x, Q) -> (beta x, R Q^beta + delta(beta x)).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import intmat
from .errors import (BetaNotInPhi, IncompatibleDerivation, NotAUnit, NotPrincipal,
                     SearchSpaceTooLarge, WrongDimension)
from .group import GroupElement
from .params import GroupParams
from .ring import (RingElem, const, in_monomial_set, invert_unit, is_unit, monomial,
                   monomial_normal_form, one, zero)
from . import poly

DEFAULT_MAX_SPACE = 2_000_000


# -- Phi ------------------------------------------------------------------------

def _pair_relation_holds(params: GroupParams, ci, cj, i: int, j: int) -> bool:
    """(l_j - l_i) + 1^{c_i} - 1^{c_j} == 0."""
    lhs = const(params, params.l[j] - params.l[i]) + monomial(params, ci) - monomial(params, cj)
    return lhs.is_zero


@lru_cache(maxsize=65536)
def _membership_one_way(params: GroupParams, beta: tuple) -> bool:
    r = params.rank
    cols = [intmat.column(beta, k) for k in range(r)]
    return all(_pair_relation_holds(params, cols[i], cols[j], i, j)
               for i in range(r) for j in range(r) if i != j)


def _as_matrix(beta) -> tuple:
    return tuple(tuple(int(a) for a in row) for row in beta)


def phi_membership(params: GroupParams, beta) -> bool:
    """Is beta an automorphism of Z^{d-1} whose action preserves the ideal of relations?

    Checks (l_j - l_i) + 1^{beta e_i} - 1^{beta e_j} = 0 for all i != j, for
    both beta and its inverse.
    """
    beta = _as_matrix(beta)
    r = params.rank
    if len(beta) != r or any(len(row) != r for row in beta):
        return False
    if intmat.det(beta) not in (1, -1):
        return False
    return (_membership_one_way(params, beta)
            and _membership_one_way(params, intmat.inverse_unimodular(beta)))


@dataclass(frozen=True)
class PhiEnumeration:
    matrices: tuple
    exhaustive: bool
    bound: int | None

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)


def _constant_differences(params: GroupParams, columns) -> dict:
    """For every ordered pair of candidate columns whose monomials differ by a constant, that constant."""
    monos = [monomial(params, c) for c in columns]
    table = {}
    for a, ma in enumerate(monos):
        for b, mb in enumerate(monos):
            if a == b:
                continue
            diff = ma - mb
            if diff.is_polynomial and len(diff.num) <= 1:
                table[(a, b)] = diff.num[0] if diff.num else 0
    return table


def _search(params: GroupParams, bound: int, first: Sequence[int] | None = None) -> list[tuple]:
    """Backtracking over columns: column i, column j must satisfy 1^{c_i} - 1^{c_j} = l_i - l_j."""
    r = params.rank
    q = params.q
    columns = list(itertools.product(range(-bound, bound + 1), repeat=r))
    table = _constant_differences(params, columns)
    need = [[(params.l[i] - params.l[j]) % q for j in range(r)] for i in range(r)]
    found = []
    chosen: list[int] = []

    def extend(k):
        if k == r:
            beta = tuple(tuple(columns[chosen[c]][row] for c in range(r)) for row in range(r))
            if intmat.det(beta) in (1, -1) and phi_membership(params, beta):
                found.append(beta)
            return
        candidates = first if k == 0 and first is not None else range(len(columns))
        for idx in candidates:
            if all(table.get((chosen[m], idx)) == need[m][k] and table.get((idx, chosen[m])) == need[k][m]
                   for m in range(k)):
                chosen.append(idx)
                extend(k + 1)
                chosen.pop()

    extend(0)
    return found


def _search_chunk(args):
    params, bound, chunk = args
    return _search(params, bound, chunk)


def _closure(gens) -> list[tuple]:
    if not gens:
        return []
    n = len(gens[0])
    group = {intmat.identity_matrix(n)}
    frontier = list(group)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = intmat.matmul(a, g)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
        if len(group) > 100_000:
            raise SearchSpaceTooLarge("generated group exceeds 100000 matrices")
    return sorted(group)


def guided_generators(params: GroupParams) -> list[tuple]:
    """Candidate generators of Phi predicted by the classification, before verification.

    d = 2: the sign change; d = 3: the order-six dihedral family on the two
    columns; d > 3: permutation matrices induced by translations of Z_q
    that preserve {l_1, ..., l_{d-1}}.
    """
    r = params.rank
    if r == 1:
        return [((-1,),)]
    if r == 2:
        return [((1, 0), (-1, -1)), ((-1, -1), (0, 1)), ((-1, -1), (1, 0)),
                ((0, 1), (-1, -1)), ((0, 1), (1, 0))]
    out = []
    lset = set(params.l)
    for c in range(1, params.q):
        if {(x + c) % params.q for x in lset} == lset:
            sigma = [params.l.index((params.l[i] + c) % params.q) for i in range(r)]
            out.append(tuple(tuple(int(sigma[col] == row) for col in range(r)) for row in range(r)))
    return out


def enumerate_phi(params: GroupParams, bound: int = 1, mode: str = "exhaustive",
                  max_space: int = DEFAULT_MAX_SPACE, jobs: int = 1) -> PhiEnumeration:
    """Members of Phi.

    Exhaustive mode returns every member with entries in [-bound, bound];
    the nominal search space (2 bound + 1)^{(d-1)^2} must not exceed
    ``max_space``.  Guided mode verifies the predicted generators and returns
    the group they generate, flagged as not exhaustive.
    """
    r = params.rank
    if mode == "guided":
        gens = [g for g in guided_generators(params) if phi_membership(params, g)]
        group = _closure(gens) if gens else [intmat.identity_matrix(r)]
        return PhiEnumeration(tuple(group), False, None)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    space = (2 * bound + 1) ** (r * r)
    if space > max_space:
        raise SearchSpaceTooLarge(
            f"search space (2*{bound}+1)^{r * r} = {space} exceeds the cap {max_space}")
    if jobs > 1:
        ncols = (2 * bound + 1) ** r
        chunks = [list(range(k, ncols, jobs)) for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            found = [b for part in pool.map(_search_chunk, [(params, bound, c) for c in chunks]) for b in part]
    else:
        found = _search(params, bound)
    return PhiEnumeration(tuple(sorted(found)), True, bound)


def group_order_and_abelian(matrices) -> tuple[int, bool]:
    mats = list(matrices)
    abelian = all(intmat.matmul(a, b) == intmat.matmul(b, a) for a in mats for b in mats)
    return len(mats), abelian


# -- derivations -------------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """A derivation Z^{d-1} -> R_d(Z_q) given by its values on the standard basis."""

    values: tuple

    @property
    def params(self) -> GroupParams:
        return self.values[0].params

    def check(self) -> None:
        r = len(self.values)
        for i in range(r):
            ei = _unit(r, i)
            for j in range(i + 1, r):
                ej = _unit(r, j)
                lhs = self.values[i] + self.values[j].act(ei)
                rhs = self.values[j] + self.values[i].act(ej)
                if lhs != rhs:
                    raise IncompatibleDerivation(
                        f"delta(e_{i + 1}) and delta(e_{j + 1}) violate the cocycle law")

    def __call__(self, v) -> RingElem:
        return derivation_eval(self, v)


def _unit(r: int, i: int, scale: int = 1) -> tuple:
    v = [0] * r
    v[i] = scale
    return tuple(v)


def zero_derivation(params: GroupParams) -> Derivation:
    return Derivation(tuple(zero(params) for _ in range(params.rank)))


def principal_derivation(P: RingElem) -> Derivation:
    """delta_P(v) = P^v - P."""
    r = P.params.rank
    return Derivation(tuple(P.act(_unit(r, i)) - P for i in range(r)))


def _geometric(params: GroupParams, i: int, n: int) -> RingElem:
    """1 + (t+l_i) + ... + (t+l_i)^{n-1} for n >= 0."""
    if n == 0:
        return zero(params)
    in_u = (1,) * n
    return RingElem.from_parts(params, poly.taylor_shift(in_u, params.l[i], params.q))


def derivation_eval(delta: Derivation, v) -> RingElem:
    """Extend delta along delta(a + b) = delta(a) + delta(b)^a, one coordinate at a time."""
    params = delta.params
    r = params.rank
    total = zero(params)
    pos = [0] * r
    for i, n in enumerate(v):
        if n == 0:
            continue
        if n > 0:
            step = delta.values[i] * _geometric(params, i, n)
        else:
            step = -(delta.values[i] * _geometric(params, i, -n)).act(_unit(r, i, n))
        total = total + step.act(pos)
        pos[i] += n
    return total


# -- automorphism triples -------------------------------------------------------------

@dataclass(frozen=True)
class AutRep:
    delta: Derivation
    R: RingElem
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", _as_matrix(self.beta))
        params = self.R.params
        if len(self.delta.values) != params.rank:
            raise WrongDimension(f"derivation needs {params.rank} basis values")
        if not phi_membership(params, self.beta):
            raise BetaNotInPhi(f"beta = {self.beta} is not in Phi for {params}")
        if not is_unit(self.R):
            raise NotAUnit(f"R = {self.R} is not a unit")
        self.delta.check()

    @property
    def params(self) -> GroupParams:
        return self.R.params

    def __call__(self, g: GroupElement) -> GroupElement:
        return aut_apply(self, g)

    def __str__(self):
        from .textio import format_autrep
        return format_autrep(self)


def identity_aut(params: GroupParams) -> AutRep:
    return AutRep(zero_derivation(params), one(params), intmat.identity_matrix(params.rank))


def aut_apply(phi: AutRep, g: GroupElement) -> GroupElement:
    bx = intmat.matvec(phi.beta, g.x)
    return GroupElement(bx, phi.R * g.Q.apply_beta(phi.beta) + derivation_eval(phi.delta, bx))


def apply_to_ring(phi: AutRep, S: RingElem) -> RingElem:
    """Restriction to the derived subgroup: S -> R S^beta."""
    return phi.R * S.apply_beta(phi.beta)


def aut_compose(phi1: AutRep, phi2: AutRep) -> AutRep:
    """The triple of g -> phi1(phi2(g))."""
    b1 = phi1.beta
    b1_inv = intmat.inverse_unimodular(b1)
    r = phi1.params.rank
    values = []
    for k in range(r):
        pulled = derivation_eval(phi2.delta, intmat.column(b1_inv, k))
        values.append(phi1.delta.values[k] + phi1.R * pulled.apply_beta(b1))
    return AutRep(Derivation(tuple(values)), phi1.R * phi2.R.apply_beta(b1), intmat.matmul(b1, phi2.beta))


def aut_invert(phi: AutRep) -> AutRep:
    beta_inv = intmat.inverse_unimodular(phi.beta)
    r_inv = invert_unit(phi.R)
    r = phi.params.rank
    values = []
    for k in range(r):
        image = derivation_eval(phi.delta, intmat.column(phi.beta, k))
        values.append(-(r_inv * image).apply_beta(beta_inv))
    return AutRep(Derivation(tuple(values)), r_inv.apply_beta(beta_inv), beta_inv)


def aut_equal(phi1: AutRep, phi2: AutRep) -> bool:
    return phi1.beta == phi2.beta and phi1.R == phi2.R and phi1.delta.values == phi2.delta.values


def inner(g: GroupElement) -> AutRep:
    """Conjugation h -> g h g^-1 for g = (x, P): delta(v) = P - P^v, R = 1^x, beta = Id."""
    params = g.params
    delta = principal_derivation(-g.Q)
    return AutRep(delta, monomial(params, g.x), intmat.identity_matrix(params.rank))


def derivation_class_d2(delta: Derivation) -> int:
    """Image of delta(e_1) in Z_q[t, t^-1]/(t - 1); zero exactly for principal derivations."""
    params = delta.params
    if params.d != 2:
        raise WrongDimension("the cohomology class is only computed for d = 2")
    value = delta.values[0]
    return poly.evaluate(value.num, 1, params.q)


def is_inner(phi: AutRep) -> bool:
    """For d >= 3 every derivation is principal, so only beta and R matter."""
    params = phi.params
    if phi.beta != intmat.identity_matrix(params.rank) or not in_monomial_set(phi.R):
        return False
    if params.d == 2:
        return derivation_class_d2(phi.delta) == 0
    return True


def principal_potential(delta: Derivation) -> RingElem:
    """A with delta(e_k) = A^{e_k} - A for every k (d >= 3)."""
    params = delta.params
    if params.d < 3:
        raise WrongDimension("principal potentials are computed for d >= 3")
    r = params.rank
    A = (delta.values[0] - delta.values[1]) * params.inv(params.l[0] - params.l[1])
    for k in range(r):
        if delta.values[k] != A.act(_unit(r, k)) - A:
            raise NotPrincipal(f"delta(e_{k + 1}) is not A^e_{k + 1} - A")
    return A


@dataclass(frozen=True, eq=False)
class OuterClass:
    """Class of an automorphism modulo inner ones: unit modulo monomials, and beta.

    For prime q the unit part is the constant c of R = c 1^v; for composite
    q it is R itself, compared up to coefficient-one monomials.
    """

    params: GroupParams
    unit: object
    beta: tuple

    def __eq__(self, other):
        if not isinstance(other, OuterClass) or self.beta != other.beta:
            return False
        if self.params.is_prime_q:
            return self.unit == other.unit
        return in_monomial_set(self.unit * invert_unit(other.unit))

    def __hash__(self):
        return hash((self.beta, self.unit if self.params.is_prime_q else None))

    @property
    def is_trivial(self) -> bool:
        if self.beta != intmat.identity_matrix(self.params.rank):
            return False
        if self.params.is_prime_q:
            return self.unit == 1
        return in_monomial_set(self.unit)

    def __str__(self):
        from .textio import format_matrix
        return f"unit={self.unit} beta={format_matrix(self.beta)}"


def outer_class(phi: AutRep) -> OuterClass:
    params = phi.params
    if params.d < 3:
        raise WrongDimension("outer classes are described for d >= 3")
    if params.is_prime_q:
        nf = monomial_normal_form(phi.R)
        if nf is None:
            raise NotAUnit(f"R = {phi.R} is not a unit")
        return OuterClass(params, nf[0], phi.beta)
    if not is_unit(phi.R):
        raise NotAUnit(f"R = {phi.R} is not a unit")
    return OuterClass(params, phi.R, phi.beta)
