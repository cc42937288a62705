"""Exact Laurent arithmetic in $\\mathbb{Z}[q^{\\pm 1/2}]$.

A polynomial is a dict mapping *doubled* exponents to nonzero integer
coefficients, so the key ``k`` stands for the monomial $q^{k/2}$.  Working
with doubled exponents keeps every key an ``int`` even though half-integer
powers of $q$ occur throughout the bar involution and the normalised
monomial basis.

All helpers are pure functions returning fresh dicts; the zero polynomial
is the empty dict.

>>> qp_format(qp_mul(qp(1), qp_add(qp(0), qp(-2))))
'q^{1/2} + q^{-1/2}'
"""

from __future__ import annotations

from fractions import Fraction


def qp(k2: int = 0, c: int = 1) -> dict:
    """The single term $c\\,q^{k2/2}$ (empty dict if ``c`` is zero)."""
    return {k2: c} if c else {}


def qp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        nc = out.get(k, 0) + c
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def qp_neg(a: dict) -> dict:
    return {k: -c for k, c in a.items()}


def qp_sub(a: dict, b: dict) -> dict:
    return qp_add(a, qp_neg(b))


def qp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            nc = out.get(k, 0) + ca * cb
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
    return out


def qp_scale(a: dict, c: int) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def qp_shift(a: dict, k2: int) -> dict:
    """Multiply by $q^{k2/2}$."""
    return {k + k2: c for k, c in a.items()}


def qp_bar(a: dict) -> dict:
    """The involution $q^{1/2} \\mapsto q^{-1/2}$."""
    return {-k: c for k, c in a.items()}


def qp_is_bar_symmetric(a: dict) -> bool:
    return qp_bar(a) == a


def qp_is_skew(a: dict) -> bool:
    return qp_bar(a) == qp_neg(a)


def qp_positive_part(a: dict) -> dict:
    """Terms with strictly positive exponent."""
    return {k: c for k, c in a.items() if k > 0}


def qp_is_monomial(a: dict) -> bool:
    return len(a) == 1


def qp_divexact(a: dict, b: dict):
    """Quotient a/b when exact in $\\mathbb{Z}[q^{\\pm 1/2}]$, else ``None``.

    Long division in the variable $x = q^{1/2}$ over the rationals, followed
    by an integrality check on the quotient.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}
    lead = max(b)
    lead_c = b[lead]
    rem = {k: Fraction(c) for k, c in a.items()}
    quo: dict = {}
    # Each step strictly lowers the top exponent of the remainder.
    for _ in range(len(a) + len(b) + (max(a) - min(a)) + (max(b) - min(b)) + 2):
        if not rem:
            break
        top = max(rem)
        k = top - lead
        c = rem[top] / lead_c
        quo[k] = quo.get(k, 0) + c
        for kb, cb in b.items():
            nk = k + kb
            nc = rem.get(nk, Fraction(0)) - c * cb
            if nc:
                rem[nk] = nc
            else:
                rem.pop(nk, None)
    if rem:
        return None
    out = {}
    for k, c in quo.items():
        if c.denominator != 1:
            return None
        if c.numerator:
            out[k] = c.numerator
    return out


def qp_qint(n: int, d: int = 1) -> dict:
    """The balanced quantum integer $[n]_{q^d} = \\sum q^{d(n-1-2s)}$."""
    out: dict = {}
    for s in range(n):
        k = 2 * d * (n - 1 - 2 * s)
        out[k] = out.get(k, 0) + 1
    return {k: c for k, c in out.items() if c}


def qp_qfact(n: int, d: int = 1) -> dict:
    out = qp(0, 1)
    for m in range(2, n + 1):
        out = qp_mul(out, qp_qint(m, d))
    return out


def qp_qbinom(n: int, k: int, d: int = 1) -> dict:
    num = qp_qfact(n, d)
    den = qp_mul(qp_qfact(k, d), qp_qfact(n - k, d))
    out = qp_divexact(num, den)
    assert out is not None
    return out


def qp_format(a: dict) -> str:
    """Human-readable form, highest power first.

    >>> qp_format({2: 1, -2: 1, 0: -3})
    'q - 3 + q^{-1}'
    >>> qp_format({})
    '0'
    """
    if not a:
        return "0"
    parts = []
    for k in sorted(a, reverse=True):
        c = a[k]
        if k == 0:
            term = str(abs(c))
        else:
            if k % 2 == 0:
                e = str(k // 2) if k // 2 != 1 else ""
            else:
                e = f"{k}/2"
            base = "q" if not e else ("q^{%s}" % e)
            term = base if abs(c) == 1 else f"{abs(c)}{base}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def qp_from_json(data) -> dict:
    return {int(k): int(c) for k, c in data if int(c)}


def qp_to_json(a: dict):
    return [[k, a[k]] for k in sorted(a)]
