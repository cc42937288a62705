"""The quantum torus over $\\mathbb{Z}[q^{\\pm 1/2}]$ and its bar-stable basis.

Elements are stored in the normalised commutative-monomial basis: a dict
mapping a monomial to a Laurent coefficient (see :mod:`qvgr.qlaurent`).
A monomial is a tuple of ``((p, i), e)`` pairs sorted by ``(p, i)`` with
nonzero integer exponents ``e``; the empty tuple is the unit.

The basis element attached to a monomial $m$ is the bar-invariant
normalisation $q^{(D - N_2)/2}\\,\\prod^{\\to} \\widetilde X^{e}$ where the
product is taken in ascending $(p, i)$ order, $D = \\sum d_i e_{i,p}$ and
$N_2$ collects the pairwise commutation exponents of that ordering.  In
this basis the bar involution is simply coefficient-wise
$q^{1/2} \\mapsto q^{-1/2}$, and

    $\\bar m * \\bar n = q^{\\mathcal N(m, n)/2}\\, \\overline{mn}$

with $\\mathcal N$ the pairing derived from the inverse of the
$t$-deformed Cartan matrix.
"""

from __future__ import annotations

from .errors import DivisionNotExact
from .qlaurent import (
    qp,
    qp_add,
    qp_bar,
    qp_divexact,
    qp_format,
    qp_from_json,
    qp_mul,
    qp_neg,
    qp_shift,
    qp_to_json,
)
from .rootdata import CartanData
from .tqcm import TqcmTable, n_pairing


# ---------------------------------------------------------------------------
# monomial helpers (no torus context needed)

def mono_from_items(items) -> tuple:
    """Build a monomial from ``(i, p, e)`` triples, merging repeats."""
    acc: dict = {}
    for i, p, e in items:
        k = (p, i)
        acc[k] = acc.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in acc.items() if e))


def kr_mono(i: int, p: int, s: int) -> tuple:
    """$X_{i,p} X_{i,p+2} \\cdots X_{i,s}$ (empty when $s < p$)."""
    assert (s - p) % 2 == 0
    return mono_from_items((i, t, 1) for t in range(p, s + 1, 2))


def mono_mul(ma: tuple, mb: tuple) -> tuple:
    acc = dict(ma)
    for k, e in mb:
        ne = acc.get(k, 0) + e
        if ne:
            acc[k] = ne
        else:
            acc.pop(k, None)
    return tuple(sorted(acc.items()))


def mono_inverse(m: tuple) -> tuple:
    return tuple((k, -e) for k, e in m)


def mono_pow(m: tuple, n: int) -> tuple:
    if n == 0:
        return ()
    return tuple((k, e * n) for k, e in m)


def mono_is_dominant(m: tuple) -> bool:
    return all(e > 0 for _, e in m)


def mono_degree(m: tuple) -> int:
    return sum(abs(e) for _, e in m)


# ---------------------------------------------------------------------------
# element helpers

def el_zero() -> dict:
    return {}


def el_one() -> dict:
    return {(): qp(0, 1)}


def el_single(mono: tuple, coeff=None) -> dict:
    return {mono: dict(coeff) if coeff else qp(0, 1)}


def el_add(a: dict, b: dict) -> dict:
    out = {m: dict(c) for m, c in a.items()}
    for m, c in b.items():
        nc = qp_add(out.get(m, {}), c)
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)
    return out


def el_neg(a: dict) -> dict:
    return {m: qp_neg(c) for m, c in a.items()}


def el_sub(a: dict, b: dict) -> dict:
    return el_add(a, el_neg(b))


def el_scale(a: dict, s: dict) -> dict:
    if not s:
        return {}
    return {m: qp_mul(c, s) for m, c in a.items()}


def el_shift_q(a: dict, k2: int) -> dict:
    return {m: qp_shift(c, k2) for m, c in a.items()}


def el_eq(a: dict, b: dict) -> bool:
    return a == b


def bar_element(a: dict) -> dict:
    """Bar involution: coefficient-wise on the normalised basis."""
    return {m: qp_bar(c) for m, c in a.items()}


def el_dominants(a: dict):
    return [m for m in a if mono_is_dominant(m)]


def _mono_gt(ma: tuple, mb: tuple) -> bool:
    """Lexicographic order: vertices ascending (p, i), larger exponent wins."""
    da, db = dict(ma), dict(mb)
    for k in sorted(set(da) | set(db)):
        ea, eb = da.get(k, 0), db.get(k, 0)
        if ea != eb:
            return ea > eb
    return False


def el_max_mono(a: dict) -> tuple:
    it = iter(a)
    best = next(it)
    for m in it:
        if _mono_gt(m, best):
            best = m
    return best


class QuantumTorus:
    """Context: Cartan data, the pairing table and caches."""

    def __init__(self, cd: CartanData, table: TqcmTable | None = None):
        self.cd = cd
        self.table = table if table is not None else TqcmTable(cd)
        self.h = cd.coxeter_number
        self._nn_cache: dict = {}

    # -- pairing -----------------------------------------------------------

    def nn(self, i: int, p: int, j: int, s: int) -> int:
        key = (i, j, p - s)
        v = self._nn_cache.get(key)
        if v is None:
            v = n_pairing(self.table, i, p, j, s)
            self._nn_cache[key] = v
        return v

    def nn_mono(self, ma: tuple, mb: tuple) -> int:
        total = 0
        for (p, i), ea in ma:
            for (s, j), eb in mb:
                if ea and eb:
                    total += ea * eb * self.nn(i, p, j, s)
        return total

    # -- normalisation against ordered products ----------------------------

    def norm_shift(self, m: tuple) -> int:
        """Doubled exponent $(D - N_2)$ of the normalising power of $q^{1/2}$."""
        d_total = sum(self.cd.d(i) * e for (p, i), e in m)
        n2 = 0
        for a in range(len(m)):
            (pa, ia), ea = m[a]
            for b in range(a + 1, len(m)):
                (pb, ib), eb = m[b]
                n2 += ea * eb * self.nn(ia, pa, ib, pb)
        return d_total - n2

    def to_ordered(self, a: dict) -> dict:
        """Coefficients on ascending-(p, i) ordered plain products."""
        return {m: qp_shift(c, self.norm_shift(m)) for m, c in a.items()}

    def from_ordered(self, a: dict) -> dict:
        return {m: qp_shift(c, -self.norm_shift(m)) for m, c in a.items()}

    def xtilde(self, i: int, p: int, e: int = 1) -> dict:
        """The plain generator power $\\widetilde X_{i,p}^{\\,e}$ as an element."""
        m = mono_from_items([(i, p, e)])
        return {m: qp(-self.norm_shift(m), 1)}

    # -- products ----------------------------------------------------------

    def star(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                c = qp_shift(qp_mul(ca, cb), self.nn_mono(ma, mb))
                nc = qp_add(out.get(m, {}), c)
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return out

    def star_many(self, elems) -> dict:
        out = el_one()
        for e in elems:
            out = self.star(out, e)
        return out

    def star_pow(self, a: dict, n: int) -> dict:
        out = el_one()
        for _ in range(n):
            out = self.star(out, a)
        return out

    def commutator_power(self, ma: tuple, mb: tuple) -> int:
        """$\\bar m_a * \\bar m_b = q^{v} \\bar m_b * \\bar m_a$ with $v$ returned."""
        return self.nn_mono(ma, mb)

    # -- symmetries --------------------------------------------------------

    def dual(self, a: dict) -> dict:
        """Vertex substitution $(i,p) \\mapsto (i^*, p+h)$, coefficients kept."""
        star = self.cd.star
        out = {}
        for m, c in a.items():
            nm = tuple(sorted(((p + self.h, star[i - 1]), e) for (p, i), e in m))
            out[nm] = dict(c)
        return out

    def shift(self, a: dict, r: int) -> dict:
        """Spectral shift $(i,p) \\mapsto (i, p+r)$ for even $r$."""
        assert r % 2 == 0
        out = {}
        for m, c in a.items():
            nm = tuple(sorted(((p + r, i), e) for (p, i), e in m))
            out[nm] = dict(c)
        return out

    def truncate(self, a: dict, xi) -> dict:
        """Keep monomials supported on $\\{(i, p) : p \\le \\xi_i\\}$."""
        out = {}
        for m, c in a.items():
            if all(p <= xi[i - 1] for (p, i), _ in m):
                out[m] = dict(c)
        return out

    # -- exact division ----------------------------------------------------

    def divide_exact(self, numer: dict, denom: dict, side: str = "left",
                     max_steps: int = 200000) -> dict:
        """Solve ``X * denom = numer`` (side='left') or ``denom * X = numer``.

        Peels the lexicographically maximal monomial of the running
        remainder; raises :class:`DivisionNotExact` when a coefficient fails
        to divide or the step cap is hit.
        """
        if not denom:
            raise ZeroDivisionError("division by zero element")
        if not numer:
            return {}
        dmax = el_max_mono(denom)
        dc = denom[dmax]
        rem = {m: dict(c) for m, c in numer.items()}
        quo: dict = {}
        for _ in range(max_steps):
            if not rem:
                return quo
            rmax = el_max_mono(rem)
            x = mono_mul(rmax, mono_inverse(dmax))
            sh = self.nn_mono(x, dmax) if side == "left" else self.nn_mono(dmax, x)
            cx = qp_divexact(rem[rmax], qp_shift(dc, sh))
            if cx is None:
                raise DivisionNotExact("coefficient does not divide at %r" % (rmax,))
            quo[x] = cx
            piece = {x: cx}
            prod = self.star(piece, denom) if side == "left" else self.star(denom, piece)
            rem = el_sub(rem, prod)
        raise DivisionNotExact("step cap exceeded")

    # -- the partial order on monomials ------------------------------------

    def ladder_mono(self, i: int, p: int) -> tuple:
        """Exponents of $B_{i,p}$: the two ladder steps and the neighbours."""
        items = [(i, p - 1, 1), (i, p + 1, 1)]
        for j in self.cd.neighbors(i):
            items.append((j, p, self.cd.c(j, i)))
        return mono_from_items(items)

    def nakajima_leq(self, ma: tuple, mb: tuple):
        """Is $m_a \\preceq m_b$, i.e. $m_b m_a^{-1}$ a nonnegative ladder product?

        Returns ``(True, certificate)`` with the multiplier dict
        ``{(i, p): c}`` or ``(False, None)``.
        """
        diff = dict(mono_mul(mb, mono_inverse(ma)))
        if not diff:
            return True, {}
        cap = max(p for (p, _i) in diff) + 4 * self.h
        cert: dict = {}
        while diff:
            (p0, i0) = min(diff)
            e = diff[(p0, i0)]
            if e < 0 or p0 + 2 > cap:
                return False, None
            cert[(i0, p0 + 1)] = e
            for k, be in self.ladder_mono(i0, p0 + 1):
                ne = diff.get(k, 0) - e * be
                if ne:
                    diff[k] = ne
                else:
                    diff.pop(k, None)
        return True, cert

    def nakajima_lt(self, ma: tuple, mb: tuple) -> bool:
        if ma == mb:
            return False
        ok, _ = self.nakajima_leq(ma, mb)
        return ok

    # -- serialisation ------------------------------------------------------

    def to_json(self, a: dict):
        terms = []
        for m in sorted(a):
            terms.append({
                "mono": [[i, p, e] for (p, i), e in m],
                "coeff": qp_to_json(a[m]),
            })
        return {"terms": terms}

    def from_json(self, data) -> dict:
        out = {}
        for term in data["terms"]:
            m = mono_from_items((i, p, e) for i, p, e in term["mono"])
            c = qp_from_json(term["coeff"])
            if c:
                out[m] = qp_add(out.get(m, {}), c)
        return {m: c for m, c in out.items() if c}

    def format(self, a: dict, ordered: bool = True) -> str:
        """Readable form; with ``ordered`` the coefficients are those of the
        ascending plain products (the shape used in printed examples)."""
        if not a:
            return "0"
        shown = self.to_ordered(a) if ordered else a
        parts = []
        for m in sorted(shown):
            c = shown[m]
            if not m:
                parts.append("(%s)" % qp_format(c))
                continue
            vars_ = "*".join(
                "X[%d,%d]" % (i, p) + ("^%d" % e if e != 1 else "")
                for (p, i), e in m
            )
            parts.append("(%s)*%s" % (qp_format(c), vars_))
        return " + ".join(parts)
