"""Twisted conjugacy: Reidemeister numbers on Z^r and R_infinity certificates.

An automorphism with det(Id - beta) = 0 has infinitely many twisted classes
already on the abelianisation.  Otherwise (only possible for Gamma_3(2),
where Phi contains elements of order three) Fix(beta) is trivial and the
certificate exhibits infinitely many elements of the derived subgroup fixed
by the automorphism, no two of which are twisted conjugate.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from . import intmat
from .aut import AutRep, phi_membership
from .errors import ExprSyntaxError, NotUnimodular, PreconditionFailed
from .params import GroupParams, validate_params
from .ring import RingElem, decompose, monomial, monomial_normal_form, one

BETA_ROTATE = ((-1, -1), (1, 0))
BETA_ROTATE_INV = ((0, 1), (-1, -1))
SPECIAL_BETAS = (BETA_ROTATE, BETA_ROTATE_INV)
DEFAULT_WITNESSES = 20


# -- Reidemeister numbers on Z^r ----------------------------------------------------

@dataclass(frozen=True)
class ReidemeisterResult:
    """Number of twisted classes of beta on Z^r; ``count`` is None when infinite."""

    count: int | None

    @property
    def infinite(self) -> bool:
        return self.count is None

    def __str__(self):
        return "Infinite" if self.count is None else f"Finite({self.count})"


def _id_minus(beta) -> tuple:
    return intmat.matsub(intmat.identity_matrix(len(beta)), beta)


def reidemeister_zd(beta) -> ReidemeisterResult:
    """R(beta) = [Z^r : (Id - beta) Z^r], finite iff det(Id - beta) != 0."""
    if intmat.det(beta) not in (1, -1):
        raise NotUnimodular(f"det {intmat.det(beta)} of {beta} is not +-1")
    dt = intmat.det(_id_minus(beta))
    return ReidemeisterResult(None if dt == 0 else abs(dt))


def snf_index(beta) -> int | None:
    """Index of (Id - beta) Z^r from the Smith normal form; None if infinite."""
    m = Matrix(_id_minus(beta))
    snf = smith_normal_form(m, domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    if any(x == 0 for x in diag):
        return None
    out = 1
    for x in diag:
        out *= x
    return out


def orbit_count_mod(beta, modulus: int) -> int:
    """Twisted classes x ~ x + (Id - beta) s on (Z/modulus)^r, counted by flood fill."""
    r = len(beta)
    gens = np.array(_id_minus(beta), dtype=np.int64).T % modulus  # rows are (Id-beta) e_k
    shape = (modulus,) * r
    seen = np.zeros(shape, dtype=bool)
    orbits = 0
    for start in itertools.product(range(modulus), repeat=r):
        if seen[start]:
            continue
        orbits += 1
        seen[start] = True
        stack = [np.array(start, dtype=np.int64)]
        while stack:
            x = stack.pop()
            for g in gens:
                for y in ((x + g) % modulus, (x - g) % modulus):
                    ty = tuple(int(a) for a in y)
                    if not seen[ty]:
                        seen[ty] = True
                        stack.append(y)
    return orbits


def brute_force_reidemeister(beta, n: int) -> int:
    """Orbit count on (Z/2n)^r.

    If the image of Id - beta has index n it contains n Z^r, so the count on
    (Z/2n)^r equals n; any other index gives a different count or a count
    that fails to match the SNF and determinant routes.
    """
    return orbit_count_mod(beta, 2 * n)


def fix_subgroup(beta) -> list[tuple]:
    """Integer basis of Fix(beta) = ker(Id - beta)."""
    return intmat.kernel_basis(_id_minus(beta))


# -- the Gamma_3(2) special matrices -------------------------------------------------------

def _check_special(params: GroupParams, R: RingElem, beta) -> tuple:
    beta = tuple(tuple(row) for row in beta)
    if (params.d, params.q) != (3, 2) or tuple(params.l) != (0, 1):
        raise PreconditionFailed(f"special cases need params (3,2,[0,1]), got {params}")
    if beta not in SPECIAL_BETAS:
        raise PreconditionFailed(f"beta = {beta} is not one of the order-three matrices")
    nf = monomial_normal_form(R)
    if nf is None or nf[0] != 1:
        raise PreconditionFailed(f"R = {R} is not a unit t^k (1+t)^l")
    return beta, nf[1]


@dataclass
class SpecialCaseReport:
    beta_cubed_identity: bool
    sum_of_powers_zero: bool
    norm_is_one: bool
    cube_fixes_samples: bool

    @property
    def ok(self) -> bool:
        return all((self.beta_cubed_identity, self.sum_of_powers_zero, self.norm_is_one, self.cube_fixes_samples))


def special_case_checks(R: RingElem, beta, samples=()) -> SpecialCaseReport:
    """beta^3 = Id, Id + beta + beta^2 = 0, R R^beta R^{beta^2} = 1, and alpha^3 = Id on samples."""
    params = R.params
    beta, _ = _check_special(params, R, beta)
    b2 = intmat.matmul(beta, beta)
    b3 = intmat.matmul(b2, beta)
    ident = intmat.identity_matrix(2)
    total = tuple(tuple(ident[i][j] + beta[i][j] + b2[i][j] for j in range(2)) for i in range(2))
    norm = R * R.apply_beta(beta) * R.apply_beta(b2)

    def alpha(S):
        return R * S.apply_beta(beta)

    fixes = all(alpha(alpha(alpha(S))) == S for S in samples)
    return SpecialCaseReport(b3 == ident, total == ((0, 0), (0, 0)), norm == one(params), fixes)


def choose_mn(beta, k: int, l: int) -> tuple[int, int]:
    """Smallest positive (m, n) for which the orbit sum has the expected top degree.

    For beta = [[-1,-1],[1,0]] the conditions are m > k and n > k + l; for its
    inverse [[0,1],[-1,-1]] the roles shift to m > k + l and n > l.
    """
    if tuple(map(tuple, beta)) == BETA_ROTATE:
        return max(1, k + 1), max(1, k + l + 1)
    return max(1, k + l + 1), max(1, l + 1)


def orbit_sum(R: RingElem, beta, v) -> RingElem:
    """1^v + alpha(1^v) + alpha^2(1^v) with alpha(S) = R S^beta."""
    base = monomial(R.params, v)
    first = R * base.apply_beta(beta)
    second = R * first.apply_beta(beta)
    return base + first + second


def top_t_degree(S: RingElem) -> int | None:
    """Largest power of t in the polynomial part P_d of S."""
    terms = decompose(S)[-1].terms
    return -terms[0][0] if terms else None


def witness_sequence(R: RingElem, beta, N: int = DEFAULT_WITNESSES) -> tuple[list[RingElem], tuple]:
    """Fixed elements S_1, ..., S_N of S -> R S^beta, pairwise distinct.

    S_j is the orbit sum of 1^{j v} with v = (m, n); the polynomial part of
    S_j has top degree j (m + n), which separates the S_j.  Returns the list
    and (m, n, k, l).
    """
    if N < 1:
        raise PreconditionFailed("N must be at least 1")
    params = R.params
    beta, (k, l) = _check_special(params, R, beta)
    m, n = choose_mn(beta, k, l)
    out = [orbit_sum(R, beta, (j * m, j * n)) for j in range(1, N + 1)]
    return out, (m, n, k, l)


# -- certificates ------------------------------------------------------------------

@dataclass
class RinfCertificate:
    params: GroupParams
    beta: tuple
    R: RingElem
    branch: str  # "quotient" or "witness" or "none"
    verdict: str  # "Infinite" or "Undetermined"
    det_id_minus_beta: int
    fix_basis: list = field(default_factory=list)
    mnkl: tuple | None = None
    witnesses: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def infinite(self) -> bool:
        return self.verdict == "Infinite"

    def to_text(self) -> str:
        from .textio import format_matrix, format_ring
        p = self.params
        lines = [
            "rinf-certificate",
            f"params d={p.d} q={p.q} l={','.join(map(str, p.l))}",
            f"beta {format_matrix(self.beta)}",
            f"R {format_ring(self.R)}",
            f"branch {self.branch}",
            f"verdict {self.verdict}",
            f"det(Id-beta) {self.det_id_minus_beta}",
            f"fix {_format_fix(self.fix_basis)}",
        ]
        if self.mnkl is not None:
            m, n, k, l = self.mnkl
            lines.append(f"mnkl {m} {n} {k} {l}")
        for j, S in enumerate(self.witnesses, start=1):
            lines.append(f"witness {j} {format_ring(S)}")
        for name, ok in self.checks.items():
            lines.append(f"check {name} {'pass' if ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _format_fix(basis) -> str:
    return " ".join(f"[{','.join(map(str, v))}]" for v in basis) or "trivial"


def _witness_checks(R: RingElem, beta, witnesses, mn) -> dict:
    m, n = mn
    fixed = all(apply_to_ring_raw(R, beta, S) == S for S in witnesses)
    distinct = len(set(witnesses)) == len(witnesses)
    degrees = all(top_t_degree(S) == j * (m + n) for j, S in enumerate(witnesses, start=1))
    return {"witnesses-fixed": fixed, "witnesses-distinct": distinct, "degree-diagnostic": degrees}


def apply_to_ring_raw(R: RingElem, beta, S: RingElem) -> RingElem:
    return R * S.apply_beta(beta)


def rinf_report(phi: AutRep, N: int = DEFAULT_WITNESSES) -> RinfCertificate:
    params = phi.params
    beta = phi.beta
    dt = intmat.det(_id_minus(beta))
    fix = fix_subgroup(beta)
    if dt == 0:
        return RinfCertificate(params, beta, phi.R, "quotient", "Infinite", dt, fix,
                               checks={"det-zero": True, "fix-nontrivial": bool(fix)})
    cert = RinfCertificate(params, beta, phi.R, "none", "Undetermined", dt, fix)
    if params.d < 3:
        return cert
    try:
        witnesses, mnkl = witness_sequence(phi.R, beta, N)
    except PreconditionFailed:
        return cert
    checks = {"fix-trivial": not fix}
    checks.update(_witness_checks(phi.R, beta, witnesses, mnkl[:2]))
    verdict = "Infinite" if all(checks.values()) else "Undetermined"
    return RinfCertificate(params, beta, phi.R, "witness", verdict, dt, fix, mnkl, witnesses, checks)


def verify_certificate(text: str) -> RinfCertificate:
    """Re-derive every check of a serialised certificate from its data alone.

    The returned certificate carries freshly computed checks; its verdict is
    Infinite only if the recomputation supports it.
    """
    from .textio import parse_matrix, parse_ring_expr
    fields: dict[str, str] = {}
    witnesses_text = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line == "rinf-certificate" or line.startswith("check "):
            continue
        key, _, rest = line.partition(" ")
        if key == "witness":
            _, _, expr = rest.partition(" ")
            witnesses_text.append(expr)
        else:
            fields[key] = rest
    try:
        m = re.fullmatch(r"d=(\d+) q=(\d+) l=([\d,]+)", fields["params"])
        if not m:
            raise ExprSyntaxError("bad params line", fields["params"])
        params = validate_params(int(m.group(1)), int(m.group(2)), [int(a) for a in m.group(3).split(",")])
        beta = parse_matrix(fields["beta"], params.rank)
        R = parse_ring_expr(params, fields["R"])
        branch = fields["branch"]
    except KeyError as exc:
        raise ExprSyntaxError(f"certificate is missing the {exc.args[0]!r} line") from None
    if not phi_membership(params, beta):
        return RinfCertificate(params, beta, R, branch, "Undetermined", intmat.det(_id_minus(beta)),
                               checks={"beta-in-phi": False})
    dt = intmat.det(_id_minus(beta))
    fix = fix_subgroup(beta)
    stated = {"stated-det": fields.get("det(Id-beta)") == str(dt),
              "stated-fix": fields.get("fix") == _format_fix(fix)}
    if branch == "quotient":
        checks = {"det-zero": dt == 0, "fix-nontrivial": bool(fix), **stated}
        verdict = "Infinite" if all(checks.values()) else "Undetermined"
        return RinfCertificate(params, beta, R, branch, verdict, dt, fix, checks=checks)
    if branch != "witness":
        return RinfCertificate(params, beta, R, branch, "Undetermined", dt, fix)
    m_, n_, k_, l_ = (int(a) for a in fields["mnkl"].split())
    witnesses = [parse_ring_expr(params, w) for w in witnesses_text]
    checks = {"fix-trivial": not fix, "nonempty": bool(witnesses), **stated}
    nf = monomial_normal_form(R)
    checks["unit-exponents"] = nf is not None and nf[0] == 1 and nf[1] == (k_, l_)
    checks["witness-shape"] = all(
        S == orbit_sum(R, beta, (j * m_, j * n_)) for j, S in enumerate(witnesses, start=1))
    checks.update(_witness_checks(R, beta, witnesses, (m_, n_)))
    verdict = "Infinite" if all(checks.values()) else "Undetermined"
    return RinfCertificate(params, beta, R, branch, verdict, dt, fix, (m_, n_, k_, l_), witnesses, checks)
