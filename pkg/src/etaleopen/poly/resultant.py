"""Sylvester resultants and principal subresultant coefficients in one variable."""

from __future__ import annotations

from .multipoly import MultiPoly


def _coeff_rows(f: MultiPoly, var):
    cs = f.coeffs_in(var)
    d = max(cs) if cs else -1
    zero = f.ring.zero()
    return d, [cs.get(k, zero) for k in range(d, -1, -1)]


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var="y"):
    m, fc = _coeff_rows(f, var)
    n, gc = _coeff_rows(g, var)
    zero = f.ring.zero()
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(M) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    A = [list(row) for row in M]
    ring = A[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num.exquo(prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_y(f: MultiPoly, g: MultiPoly, var="y") -> MultiPoly:
    """Res_var(f, g) as a polynomial in the remaining variables."""
    if f.ring is not g.ring:
        raise ValueError("ring mismatch")
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        return f.ring.one()
    if n == 0:
        return g ** m
    if m == 0:
        return f ** n
    return bareiss_det(sylvester_matrix(f, g, var))


def principal_subresultants(f: MultiPoly, g: MultiPoly, var="y") -> list[MultiPoly]:
    """[psc_0, ..., psc_{min(m,n)-1}] of f and g with respect to ``var``.

    psc_0 is the resultant.  At a specialization where the leading
    coefficient of f does not vanish, the degree of gcd(f, g) is the least
    j with psc_j nonzero.
    """
    m, fc = _coeff_rows(f, var)
    n, gc = _coeff_rows(g, var)
    zero = f.ring.zero()
    out = []
    for j in range(min(m, n)):
        width = m + n - j
        rows = []
        for i in range(n - j):
            rows.append([zero] * i + fc + [zero] * (width - m - 1 - i))
        for i in range(m - j):
            rows.append([zero] * i + gc + [zero] * (width - n - 1 - i))
        k = m + n - 2 * j
        out.append(bareiss_det([row[:k] for row in rows]))
    return out
