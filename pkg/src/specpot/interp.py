"""Rational interpolation in E over rational functions of z, and Pade forms.

Degree conventions: with n data points (or series order n) the gauge has
numerator E-degree floor(n/2) and denominator E-degree floor((n-1)/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy as sp

from .algebra import E, ESeries, normalize, rat_equal
from .errors import DuplicateNode, UnsolvableSystem


@dataclass(frozen=True)
class InterpNode:
    """One interpolation datum: the gauge value at a fixed energy.

    ``energy`` is an exact expression in nu; ``value`` is rational in z only.
    """

    energy: sp.Expr
    value: sp.Expr

    def __post_init__(self):
        object.__setattr__(self, "energy", sp.sympify(self.energy))
        object.__setattr__(self, "value", sp.sympify(self.value))


@dataclass(frozen=True)
class DegreeSpec:
    num_deg: int
    den_deg: int

    @staticmethod
    def for_count(n: int) -> "DegreeSpec":
        return DegreeSpec(n // 2, (n - 1) // 2)


def _linear_interpolant(points, num_deg, den_deg):
    """Solve the homogeneous Cauchy system N(E_i) - v_i * D(E_i) = 0.

    Returns the rational function N/D from the first nullspace vector,
    or None when the nullspace is trivial or D vanishes identically.
    """
    rows = []
    for (e0, val) in points:
        row = [sp.cancel(e0 ** i) for i in range(num_deg + 1)]
        row += [sp.cancel(-val * e0 ** i) for i in range(den_deg + 1)]
        rows.append(row)
    mat = sp.Matrix(rows)
    null = mat.nullspace()
    if not null:
        return None
    vec = null[0]
    num = sum(vec[i] * E ** i for i in range(num_deg + 1))
    den = sum(vec[num_deg + 1 + i] * E ** i for i in range(den_deg + 1))
    if sp.cancel(sp.together(den)) == 0:
        return None
    return normalize(num / den)


def _check_nodes(M, points):
    for (e0, val) in points:
        num, den = sp.fraction(sp.cancel(sp.together(M)))
        den_at = sp.cancel(den.subs(E, e0))
        if den_at == 0:
            return False
        if not rat_equal(sp.cancel(num.subs(E, e0)) / den_at, val):
            return False
    return True


def rat_interpolate(nodes) -> sp.Expr:
    """Recover the gauge M(z, E) from its values at the node energies.

    The primary route interpolates 1/M with the numerator/denominator
    degrees swapped (the reciprocal of an interpolant in degrees (p, q) is
    one in degrees (q, p)); when that system is degenerate or an energy
    lands on a pole of the result, the direct M-side system is solved
    instead.  Every returned interpolant is re-verified by substitution.
    """
    n = len(nodes)
    if n < 1:
        raise UnsolvableSystem("at least one node required")
    for i in range(n):
        for j in range(i + 1, n):
            if rat_equal(nodes[i].energy, nodes[j].energy):
                raise DuplicateNode("energies %s and %s coincide" %
                                    (nodes[i].energy, nodes[j].energy))
    spec = DegreeSpec.for_count(n)
    points = [(nd.energy, normalize(nd.value)) for nd in nodes]

    if all(val != 0 for (_, val) in points):
        recip = [(e0, normalize(1 / val)) for (e0, val) in points]
        W = _linear_interpolant(recip, spec.den_deg, spec.num_deg)
        if W is not None and sp.cancel(sp.together(W)) != 0:
            M = normalize(1 / W)
            if _degree_ok(M, spec) and _check_nodes(M, points):
                return M

    M = _linear_interpolant(points, spec.num_deg, spec.den_deg)
    if M is None or not _check_nodes(M, points):
        raise UnsolvableSystem(
            "no rational interpolant with E-degrees (%d, %d)" %
            (spec.num_deg, spec.den_deg))
    return M


def _degree_ok(M, spec):
    num, den = sp.fraction(sp.cancel(sp.together(M)))
    return (sp.degree(num, E) <= spec.num_deg and
            sp.degree(den, E) <= spec.den_deg)


def pade_from_series(Y: ESeries, spec: DegreeSpec) -> sp.Expr:
    """Pade approximant of a truncated E-series with rational-in-z coefficients.

    On a degenerate system the denominator degree is lowered by one and the
    solve retried; the achieved degrees are readable off the result.  The
    output is always re-verified by expanding it back to the series order.
    """
    n = Y.order
    if n < spec.num_deg + spec.den_deg + 1:
        raise UnsolvableSystem(
            "series order %d too small for degrees (%d, %d)" %
            (n, spec.num_deg, spec.den_deg))
    for den_deg in range(spec.den_deg, -1, -1):
        M = _pade_once(Y, spec.num_deg, den_deg)
        if M is not None:
            return M
    raise UnsolvableSystem("no Pade form within degrees (%d, %d)" %
                           (spec.num_deg, spec.den_deg))


def _pade_once(Y, num_deg, den_deg):
    n = Y.order
    rows = []
    for j in range(n):
        row = [sp.Integer(1) if i == j else sp.Integer(0)
               for i in range(num_deg + 1)]
        row += [sp.cancel(-Y.coeffs[j - i]) if 0 <= j - i < n else sp.Integer(0)
                for i in range(den_deg + 1)]
        rows.append(row)
    null = sp.Matrix(rows).nullspace()
    if not null:
        return None
    vec = null[0]
    den_coeffs = [sp.cancel(vec[num_deg + 1 + i]) for i in range(den_deg + 1)]
    if all(cc == 0 for cc in den_coeffs):
        return None
    if sp.cancel(den_coeffs[0]) == 0:
        return None
    num_series = ESeries(n, tuple(
        sp.cancel(vec[i]) if i <= num_deg else sp.Integer(0) for i in range(n)))
    den_series = ESeries(n, tuple(
        den_coeffs[i] if i <= den_deg else sp.Integer(0) for i in range(n)))
    expanded = den_series.inverse() * num_series
    if not expanded.equal(Y):
        return None
    num = sum(vec[i] * E ** i for i in range(num_deg + 1))
    den = sum(den_coeffs[i] * E ** i for i in range(den_deg + 1))
    return normalize(num / den)
