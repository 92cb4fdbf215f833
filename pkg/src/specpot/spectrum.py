"""Discrete spectra: candidate energies, exact Liouvillian eigenfunctions,
and square-integrability classification on the real line and half-lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import sympy as sp

from .algebra import normalize, z
from .errors import DegreeCapExceeded, NoSolution, SymbolicNu
from .families import PotentialResult

INTERVALS = ("R", "R+", "R-")


@dataclass(frozen=True)
class CandidateSet:
    """Candidate energies with provenance, sorted and deduplicated.

    ``degenerate`` lists the energies at which H(z, E0) vanishes
    identically, i.e. where the eigenfunction formula itself breaks down
    (the gauge-accident energies).
    """

    energies: Tuple  # of (Rational, tuple of provenance tuples)
    degenerate: Tuple


@dataclass(frozen=True)
class EigenPair:
    E0: sp.Rational
    carrier: sp.Expr     # the exponent q(z)
    num: sp.Expr         # numerator polynomial
    den: sp.Expr         # fixed denominator from the potential's poles
    l2: Dict[str, bool] = field(default_factory=dict)

    @property
    def psi(self):
        return sp.exp(self.carrier) * self.num / self.den


def enumerate_candidates(result: PotentialResult, bound: int) -> CandidateSet:
    """All Lemma-formula energies with k <= bound at the result's numeric nu."""
    if result.family not in ("1", "2"):
        raise SymbolicNu("candidate enumeration applies to families 1 and 2")
    nu0 = sp.sympify(result.nu)
    if not nu0.is_Rational:
        raise SymbolicNu("nu must be a numeric rational")
    found = {}
    if result.family == "1":
        for k in range(bound + 1):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    E0 = sp.Rational(e1 * (4 * k + 2) + 4 * e2 * nu0)
                    found.setdefault(E0, set()).add((k, e1, e2))
    else:
        for k in range(bound + 1):
            for e in (1, -1):
                m = 2 * e * nu0 + 2 * k + 1
                if m == 0:
                    continue
                E0 = sp.Rational(-1 / m ** 2)
                found.setdefault(E0, set()).add((k, e))
    degenerate = []
    if result.H is not None:
        for E0 in found:
            from .algebra import E as Esym
            if sp.cancel(sp.together(result.H.subs(Esym, E0))) == 0:
                degenerate.append(E0)
    energies = tuple(sorted(
        ((E0, tuple(sorted(prov))) for E0, prov in found.items()),
        key=lambda it: it[0]))
    return CandidateSet(energies=energies, degenerate=tuple(sorted(degenerate)))


def _carrier_candidates(result: PotentialResult, E0):
    if result.family == "1":
        return [-z ** 2 / 2, z ** 2 / 2]
    m = sp.sqrt(-sp.Rational(E0))
    return [-m * z, m * z]


def _pole_denominator(V):
    """Product of the distinct irreducible z-factors of V's denominator."""
    den = sp.fraction(normalize(V))[1]
    _, factors = sp.factor_list(den, z)
    out = sp.Integer(1)
    for fac, _mult in factors:
        out *= fac
    return sp.expand(out)


def liouvillian_eigenfunction(result: PotentialResult, E0,
                              degree_cap: int = 16) -> EigenPair:
    """Exact closed-form eigenfunction at a candidate energy.

    Ansatz psi = exp(q) N(z)/den(z) with q from the family's asymptotic
    data and den the squarefree pole polynomial of V; N is found by solving
    the linear system given by the vanishing of the ODE residual's
    numerator, sweeping deg N upward.  Solutions that decay toward no
    infinity at all (square-integrable on none of R, R+, R-) are spurious
    and rejected; exhausting the cap raises :class:`NoSolution`.
    """
    if degree_cap < 0:
        raise DegreeCapExceeded(str(degree_cap))
    E0 = sp.Rational(E0)
    V = result.V
    den = _pole_denominator(V)
    for q in _carrier_candidates(result, E0):
        qp = sp.diff(q, z)
        pair = _solve_numerator(V, E0, q, qp, den, degree_cap)
        if pair is None:
            continue
        num = pair
        candidate = EigenPair(E0=E0, carrier=q, num=num, den=den)
        flags = {iv: square_integrable(candidate, iv) for iv in INTERVALS}
        if not any(flags.values()):
            continue
        verified = EigenPair(E0=E0, carrier=q, num=num, den=den, l2=flags)
        _assert_residual_zero(V, E0, verified)
        return verified
    raise NoSolution("no closed-form eigenfunction at E = %s" % E0)


def _solve_numerator(V, E0, q, qp, den, degree_cap):
    for deg in range(degree_cap + 1):
        unknowns = sp.symbols("n0:%d" % (deg + 1))
        N = sum(unknowns[i] * z ** i for i in range(deg + 1))
        g = N / den
        residual = (sp.diff(g, z, 2) + 2 * qp * sp.diff(g, z)
                    + (sp.diff(qp, z) + qp ** 2 + V + E0) * g)
        numerator = sp.expand(sp.numer(sp.together(residual)))
        eqs = sp.Poly(numerator, z).coeffs()
        sol = sp.linsolve(eqs, unknowns)
        for s in sol:
            N_val = sum(s[i] * z ** i for i in range(deg + 1))
            free = N_val.free_symbols & set(unknowns)
            if free:
                N_val = N_val.subs({f: 1 for f in free})
            N_val = sp.expand(N_val)
            if N_val != 0:
                return N_val
    return None


def _assert_residual_zero(V, E0, pair: EigenPair):
    q = pair.carrier
    qp = sp.diff(q, z)
    g = pair.num / pair.den
    residual = sp.cancel(sp.together(
        sp.diff(g, z, 2) + 2 * qp * sp.diff(g, z)
        + (sp.diff(qp, z) + qp ** 2 + V + E0) * g))
    if residual != 0:
        raise AssertionError("eigenfunction residual nonzero: %s" % residual)


def _decays_toward(q, plus_infinity: bool):
    """Does exp(q) decay as z -> +oo (or -oo)?  q is a real polynomial."""
    poly = sp.Poly(sp.expand(q), z)
    for monom, coeff in sorted(zip(poly.monoms(), poly.coeffs()),
                               reverse=True):
        degree = monom[0]
        if degree == 0 or coeff == 0:
            continue
        if not plus_infinity and degree % 2 == 1:
            coeff = -coeff
        return bool(sp.sympify(coeff).is_negative)
    return None  # q constant: no exponential decay or growth


def square_integrable(pair, interval: str) -> bool:
    """Decide integrability of |psi|^2 over R, R+ = [0, oo) or R- = (-oo, 0].

    Decay: the carrier must decay strictly toward every infinity of the
    interval (when the carrier is constant, the rational part must fall off
    faster than 1/sqrt(z)).  Poles: the rational part must have no pole in
    the closure of the interval, 0 included for the half-lines.
    """
    if interval not in INTERVALS:
        raise ValueError(interval)
    q, R = _closed_form(pair)
    ends = {"R": (True, False), "R+": (True,), "R-": (False,)}[interval]
    Rc = sp.cancel(sp.together(R))
    num, den = sp.fraction(Rc)
    for plus in ends:
        decay = _decays_toward(q, plus)
        if decay is False:
            return False
        if decay is None:
            if sp.degree(den, z) - sp.degree(num, z) < 1:
                return False
    for root in sp.real_roots(sp.Poly(den, z)):
        inside = {"R": True,
                  "R+": bool(root >= 0),
                  "R-": bool(root <= 0)}[interval]
        if inside:
            return False
    return True


def _closed_form(pair):
    if isinstance(pair, EigenPair):
        return pair.carrier, pair.num / pair.den
    # a raw expression exp(q) * R
    expr = sp.sympify(pair)
    carriers = [e for e in expr.atoms(sp.exp) if e.args[0].has(z)]
    if not carriers:
        return sp.Integer(0), expr
    if len(carriers) > 1:
        raise ValueError("more than one exponential carrier")
    q = carriers[0].args[0]
    return q, sp.cancel(sp.together(expr / carriers[0]))


def spectrum_table(result: PotentialResult, kmax: int,
                   interval: str = "R",
                   degree_cap: Optional[int] = None) -> List[EigenPair]:
    """Eigenfunctions at all candidate energies, filtered by L2 interval."""
    if degree_cap is None:
        degree_cap = 2 * kmax + 8
    candidates = enumerate_candidates(result, kmax)
    pairs = []
    for E0, _prov in candidates.energies:
        try:
            pair = liouvillian_eigenfunction(result, E0, degree_cap=degree_cap)
        except NoSolution:
            continue
        if pair.l2.get(interval, False):
            pairs.append(pair)
    return pairs
