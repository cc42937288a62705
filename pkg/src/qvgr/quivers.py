"""Height functions on the Dynkin diagram and the derived root labelling.

A height function $\\xi$ assigns an integer to each diagram vertex so that
neighbours differ by exactly one.  It determines

* an orientation of the diagram (arrows point downhill), hence a Coxeter
  element $\\tau$ reading the vertices by weakly decreasing height,
* a labelling $\\varphi(i, p) = (\\beta, k)$ of the repetition lattice
  $\\{(i, p) : p \\equiv \\xi_i \\bmod 2\\}$ by pairs of a positive root and an
  integer "sheet" index, with the fundamental sheet (the *heart*)
  $\\{(i, p) : \\xi_{i^*} - h < p \\le \\xi_i\\}$ carrying each positive root
  exactly once,
* a convex order on positive roots (reachability in the arrow pattern of
  the heart) and, from it, a notion of minimal pair for each non-simple
  positive root.
"""

from __future__ import annotations

from .errors import GuardExceeded, NotASource
from .rootdata import CartanData


def default_heights(cd: CartanData) -> tuple:
    """The two-valued height function given by the bipartition parity."""
    return tuple(cd.eps)


class Quiver:
    def __init__(self, cd: CartanData, heights):
        heights = tuple(int(x) for x in heights)
        if len(heights) != cd.rank:
            raise ValueError("need one height per vertex")
        for i in range(1, cd.rank + 1):
            for j in cd.neighbors(i):
                if abs(heights[i - 1] - heights[j - 1]) != 1:
                    raise ValueError(
                        "heights of neighbours %d, %d must differ by 1" % (i, j))
        self.cd = cd
        self.heights = heights
        self.h = cd.coxeter_number
        self._tau_word = tuple(
            sorted(range(1, cd.rank + 1), key=lambda i: (-heights[i - 1], i)))
        # phi is grown row by row from the seed column p = xi_i
        self._phi: dict = {}
        self._range: dict = {}
        for i in range(1, cd.rank + 1):
            xi = heights[i - 1]
            self._phi[(i, xi)] = (self.gamma(i), 0)
            self._range[i] = [xi, xi]
        self._heart = None
        self._position = None
        self._reach: dict = {}
        self._adapted = None

    # -- orientation -------------------------------------------------------

    def is_source(self, i: int) -> bool:
        xi = self.heights
        return all(xi[i - 1] > xi[j - 1] for j in self.cd.neighbors(i))

    def sources(self):
        return [i for i in range(1, self.cd.rank + 1) if self.is_source(i)]

    def reflect(self, i: int) -> "Quiver":
        if not self.is_source(i):
            raise NotASource("vertex %d is not a source" % i)
        new = list(self.heights)
        new[i - 1] -= 2
        return Quiver(self.cd, new)

    def is_adapted(self, word) -> bool:
        q = self
        for i in word:
            if not q.is_source(i):
                return False
            q = q.reflect(i)
        return True

    # -- Coxeter element ---------------------------------------------------

    def coxeter_element(self) -> tuple:
        """Reduced word for $\\tau$: vertices by weakly decreasing height."""
        return self._tau_word

    def tau(self, x):
        return self.cd.act_word(self._tau_word, x)

    def tau_inv(self, x):
        return self.cd.act_word(tuple(reversed(self._tau_word)), x)

    def gamma(self, i: int):
        """$(1 - \\tau)\\varpi_i$, a positive root, in simple-root coordinates."""
        w = self.cd.fundamental(i)
        tw = self.cd.act_word_weight(self._tau_word, w)
        diff = tuple(a - b for a, b in zip(w, tw))
        return self.cd.omega_to_alpha_int(diff)

    # -- the labelling phi -------------------------------------------------

    def phi(self, i: int, p: int):
        xi = self.heights[i - 1]
        if (p - xi) % 2:
            raise ValueError("vertex (%d, %d) has the wrong parity" % (i, p))
        lo, hi = self._range[i]
        while p < lo:
            alpha, k = self._phi[(i, lo)]
            a2 = self.tau(alpha)
            if self.cd.is_positive_root(a2):
                self._phi[(i, lo - 2)] = (a2, k)
            else:
                self._phi[(i, lo - 2)] = (tuple(-c for c in a2), k - 1)
            lo -= 2
        while p > hi:
            alpha, k = self._phi[(i, hi)]
            a2 = self.tau_inv(alpha)
            if self.cd.is_positive_root(a2):
                self._phi[(i, hi + 2)] = (a2, k)
            else:
                self._phi[(i, hi + 2)] = (tuple(-c for c in a2), k + 1)
            hi += 2
        self._range[i] = [min(lo, p), max(hi, p)]
        return self._phi[(i, p)]

    def heart(self):
        """Vertices of the fundamental sheet, descending p, ties by i."""
        if self._heart is None:
            star = self.cd.star
            verts = []
            for i in range(1, self.cd.rank + 1):
                top = self.heights[i - 1]
                bottom = self.heights[star[i - 1] - 1] - self.h
                p = top
                while p > bottom:
                    verts.append((i, p))
                    p -= 2
            verts.sort(key=lambda v: (-v[1], v[0]))
            self._heart = verts
        return self._heart

    def in_heart(self, i: int, p: int) -> bool:
        star = self.cd.star
        return (self.heights[star[i - 1] - 1] - self.h < p <= self.heights[i - 1]
                and (p - self.heights[i - 1]) % 2 == 0)

    def position(self, beta) -> tuple:
        """The heart vertex labelled by the positive root ``beta``."""
        if self._position is None:
            self._position = {}
            for (i, p) in self.heart():
                alpha, k = self.phi(i, p)
                assert k == 0
                self._position[alpha] = (i, p)
        return self._position[tuple(beta)]

    def residue(self, beta) -> int:
        return self.position(beta)[0]

    def phi_inv(self, beta, k: int) -> tuple:
        i0, p0 = self.position(beta)
        i = i0 if k % 2 == 0 else self.cd.star[i0 - 1]
        return (i, p0 + k * self.h)

    def adapted_w0_word(self) -> tuple:
        """Residues of the heart in descending-p reading; reduced, adapted."""
        if self._adapted is None:
            word = tuple(i for (i, p) in self.heart())
            assert len(word) == len(self.cd.positive_roots)
            self._adapted = word
        return self._adapted

    def lambda_of_root(self, beta):
        """The weight attached to ``beta`` by the adapted reading."""
        word = self.adapted_w0_word()
        target = tuple(beta)
        for k, b in enumerate(self.cd.beta_sequence(word), start=1):
            if b == target:
                return self.cd.lambda_weight(word, k)
        raise ValueError("not a positive root: %r" % (beta,))

    # -- arrows, convexity, pairing ----------------------------------------

    def ar_arrows(self, vertices=None):
        """Arrows ``(i,p) -> (j,p+1)`` with multiplicity ``-c_{i,j}``."""
        verts = self.heart() if vertices is None else list(vertices)
        have = set(verts)
        out = []
        for (i, p) in verts:
            for j in self.cd.neighbors(i):
                if (j, p + 1) in have:
                    out.append(((i, p), (j, p + 1), -self.cd.c(i, j)))
        return out

    def _reachable(self, start):
        if start not in self._reach:
            have = set(self.heart())
            seen = {start}
            stack = [start]
            while stack:
                (i, p) = stack.pop()
                for j in self.cd.neighbors(i):
                    t = (j, p + 1)
                    if t in have and t not in seen:
                        seen.add(t)
                        stack.append(t)
            self._reach[start] = seen
        return self._reach[start]

    def convex_less(self, alpha, beta) -> bool:
        """Convex order: smaller roots sit at the arrow-reachable, higher-p
        end of the heart."""
        a, b = tuple(alpha), tuple(beta)
        if a == b:
            return False
        return self.position(a) in self._reachable(self.position(b))

    def pi(self, i: int, p: int):
        """Signed root $(-1)^k \\beta$ at a lattice vertex."""
        alpha, k = self.phi(i, p)
        return alpha if k % 2 == 0 else tuple(-c for c in alpha)

    def wt(self, mono):
        """Additive weight of a torus monomial, in simple-root coordinates."""
        total = [0] * self.cd.rank
        for (p, i), e in mono:
            for t, c in enumerate(self.pi(i, p)):
                total[t] += e * c
        return tuple(total)

    def nn_from_roots(self, i: int, p: int, j: int, s: int) -> int:
        """The commutation pairing computed from the root labelling alone."""
        if (i, p) == (j, s):
            return 0
        alpha, k = self.phi(i, p)
        beta, l = self.phi(j, s)
        sign = -1 if (k + l + (1 if p >= s else 0)) % 2 else 1
        return sign * self.cd.bilin(alpha, beta)

    # -- minimal pairs -----------------------------------------------------

    def _weight_vectors(self, gamma):
        roots = self.cd.positive_roots
        out = []
        vec = [0] * len(roots)

        def rec(idx, remaining):
            if all(c == 0 for c in remaining):
                out.append(tuple(vec))
                return
            if idx == len(roots):
                return
            r = roots[idx]
            top = min(rem // c for rem, c in zip(remaining, r) if c > 0)
            for m in range(top, -1, -1):
                vec[idx] = m
                rec(idx + 1, tuple(a - m * b for a, b in zip(remaining, r)))
            vec[idx] = 0

        rec(0, tuple(gamma))
        return out

    def _supp_diff(self, ea, eb):
        return [t for t in range(len(ea)) if ea[t] != eb[t]]

    def vec_less(self, ea, eb) -> bool:
        """Dominance in every reading: strict at each extreme of the
        differing support, taken in the convex order."""
        supp = self._supp_diff(ea, eb)
        if not supp:
            return False
        roots = self.cd.positive_roots
        mins = [t for t in supp
                if not any(u != t and self.convex_less(roots[u], roots[t])
                           for u in supp)]
        maxs = [t for t in supp
                if not any(u != t and self.convex_less(roots[t], roots[u])
                           for u in supp)]
        return (all(ea[t] < eb[t] for t in mins)
                and all(ea[t] < eb[t] for t in maxs))

    def vec_less_all_readings(self, ea, eb) -> bool:
        """Same relation, certified by walking every linear extension of the
        differing support from both ends."""
        supp = self._supp_diff(ea, eb)
        if not supp:
            return False
        roots = self.cd.positive_roots

        def run(from_small_end):
            memo = {}

            def rec(remaining):
                if not remaining:
                    return False
                key = remaining
                if key in memo:
                    return memo[key]
                if from_small_end:
                    frontier = [t for t in remaining
                                if not any(u != t and self.convex_less(
                                    roots[u], roots[t]) for u in remaining)]
                else:
                    frontier = [t for t in remaining
                                if not any(u != t and self.convex_less(
                                    roots[t], roots[u]) for u in remaining)]
                ok = True
                for t in frontier:
                    if ea[t] > eb[t]:
                        ok = False
                        break
                    if ea[t] == eb[t] and not rec(remaining - {t}):
                        ok = False
                        break
                memo[key] = ok
                return ok

            return rec(frozenset(supp))

        return run(True) and run(False)

    def minimal_pairs(self, gamma, certify: bool = False):
        """Pairs $(\\alpha, \\beta)$, $\\alpha \\prec \\beta$, $\\alpha+\\beta=\\gamma$,
        whose exponent vector covers that of $\\gamma$ itself."""
        roots = self.cd.positive_roots
        if len(roots) > 24:
            raise GuardExceeded("root system too large for pair search")
        gamma = tuple(gamma)
        if gamma not in roots:
            raise ValueError("not a positive root: %r" % (gamma,))
        less = self.vec_less_all_readings if certify else self.vec_less
        e_gamma = tuple(1 if r == gamma else 0 for r in roots)
        vectors = [v for v in self._weight_vectors(gamma) if v != e_gamma]
        above = [v for v in vectors if less(e_gamma, v)]
        covers = [v for v in above
                  if not any(f != v and less(f, v) for f in above)]
        pairs = []
        for v in covers:
            assert sum(v) == 2 and max(v) == 1, "cover is not a pair"
            a, b = [roots[t] for t in range(len(roots)) if v[t]]
            if self.convex_less(b, a):
                a, b = b, a
            pairs.append((a, b))
        pairs.sort(key=lambda ab: (self.position(ab[0])[1], ab[0]))
        return pairs
