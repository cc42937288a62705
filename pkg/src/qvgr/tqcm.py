"""Inverse of the $t$-deformed Cartan matrix and the derived pairings.

The deformation replaces each diagonal entry 2 of the Cartan matrix by
$t + t^{-1}$.  Writing $A$ for the off-diagonal part of the ordinary Cartan
matrix, the coefficient matrices $Y_u$ of the series inverse satisfy the
all-integer three-term recursion

    $Y_0 = 0$, $Y_1 = I$, $Y_{u+1} = -A Y_u - Y_{u-1}$,

and the symmetrised coefficients are $\\tilde b_{i,j}(u) = d_i (Y_u)_{i,j}$.
The table below grows on demand and is append-only, so a handle can be
shared freely.
"""

from __future__ import annotations

from .rootdata import CartanData, build_cartan


class TqcmTable:
    """Growable table of the coefficients $\\tilde b_{i,j}(u)$, $u \\ge 0$."""

    def __init__(self, cd: CartanData, bound: int | None = None):
        self.cd = cd
        n = cd.rank
        self._ys = [
            [[0] * n for _ in range(n)],
            [[1 if a == b else 0 for b in range(n)] for a in range(n)],
        ]
        self._ensure(bound if bound is not None else 4 * cd.coxeter_number + 2)

    def _ensure(self, u: int) -> None:
        cd = self.cd
        n = cd.rank
        while len(self._ys) <= u:
            prev, last = self._ys[-2], self._ys[-1]
            nxt = [
                [
                    -sum(cd.cmat[a][k] * last[k][b] for k in range(n) if k != a)
                    - prev[a][b]
                    for b in range(n)
                ]
                for a in range(n)
            ]
            self._ys.append(nxt)
            u_new = len(self._ys) - 1
            for a in range(n):
                for b in range(a + 1, n):
                    assert cd.dvec[a] * nxt[a][b] == cd.dvec[b] * nxt[b][a], (
                        "symmetrised inverse lost symmetry at u=%d" % u_new
                    )

    def b(self, i: int, j: int, u: int) -> int:
        """$\\tilde b_{i,j}(u)$; zero for $u \\le 0$."""
        if u <= 0:
            return 0
        self._ensure(u)
        return self.cd.dvec[i - 1] * self._ys[u][i - 1][j - 1]

    def dtilde_coeffs(self, i: int, j: int) -> dict:
        """Exponent->coefficient dict of $\\tilde d_{i,j}(t)$, degrees $< h$."""
        h = self.cd.coxeter_number
        return {u: self.b(i, j, u) for u in range(1, h) if self.b(i, j, u)}


def invert_tqcm(cd: CartanData, bound: int | None = None) -> TqcmTable:
    if bound is not None and bound < 2 * cd.coxeter_number + 2:
        raise ValueError("bound must be at least 2h+2")
    return TqcmTable(cd, bound)


def closed_form_bc(kind: str, n: int, i: int, j: int) -> dict:
    """Degree->coefficient dict of $\\tilde d_{i,j}$ for types B and C.

    With $h = 2n$ and symmetric in $(i, j)$:

    * $i \\le j = n$:  $\\max(d_i,d_j) \\sum_{s=1}^{i} t^{n-i-1+2s}$,
    * $i \\le j < n$:  $\\max(d_i,d_j) \\sum_{s=1}^{i} (t^{j-i+2s-1} + t^{2n-j-i+2s-1})$.
    """
    if kind not in ("B", "C"):
        raise ValueError("closed form is stated for types B and C only")
    cd = build_cartan(kind, n)
    if i > j:
        i, j = j, i
    m = max(cd.d(i), cd.d(j))
    out: dict = {}
    if j == n:
        for s in range(1, i + 1):
            e = n - i - 1 + 2 * s
            out[e] = out.get(e, 0) + m
    else:
        for s in range(1, i + 1):
            for e in (j - i + 2 * s - 1, 2 * n - j - i + 2 * s - 1):
                out[e] = out.get(e, 0) + m
    return {e: c for e, c in out.items() if c}


def tde_bracket(table: TqcmTable, i: int, j: int, k: int) -> int:
    """$\\tilde d_{i,j}[k] := \\tilde b_{i,j}(k-1)$, the shifted coefficient."""
    return table.b(i, j, k - 1)


def n_pairing(table: TqcmTable, i: int, p: int, j: int, s: int) -> int:
    """Commutation exponent of the generators at $(i,p)$ and $(j,s)$."""
    return (
        table.b(i, j, p - s - 1)
        - table.b(i, j, s - p - 1)
        - table.b(i, j, p - s + 1)
        + table.b(i, j, s - p + 1)
    )
