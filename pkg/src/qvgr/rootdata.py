"""Root systems of finite Cartan types A--G with exact integer arithmetic.

Conventions used throughout the package:

* the Cartan matrix entry ``c(i, j)`` acts by $s_i\\alpha_j = \\alpha_j - c_{i,j}\\alpha_i$;
* the symmetrisers ``d(i)`` are the minimal positive integers with
  $d_i c_{i,j} = d_j c_{j,i}$, normalised so that $\\min_i d_i = 1$
  (so short roots have $d=1$ and $(\\alpha,\\alpha) = 2 d_\\alpha$);
* roots are integer tuples in simple-root coordinates, weights are integer
  tuples in fundamental-weight coordinates; both are indexed from 0 while
  vertex labels in the API are 1-based.

The bilinear form is $(\\alpha_i, \\alpha_j) = d_i c_{i,j}$ and
$(\\alpha_i, \\varpi_j) = d_i \\delta_{ij}$.

>>> cd = build_cartan("G", 2)
>>> cd.c(1, 2), cd.c(2, 1), cd.d(1), cd.d(2)
(-3, -1, 1, 3)
>>> len(cd.positive_roots), cd.coxeter_number
(6, 6)
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotReduced

_RANK_RANGES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _edges(kind: str, n: int):
    if kind in ("A", "B", "C", "F", "G"):
        return [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    # E-series in Bourbaki labelling: chain 1-3-4-5-6(-7)(-8), vertex 2 on 4.
    chain = [(1, 3), (3, 4), (4, 5), (5, 6)]
    if n >= 7:
        chain.append((6, 7))
    if n == 8:
        chain.append((7, 8))
    chain.append((2, 4))
    return chain


def _dvec(kind: str, n: int):
    if kind == "B":
        return tuple([2] * (n - 1) + [1])
    if kind == "C":
        return tuple([1] * (n - 1) + [2])
    if kind == "F":
        return (2, 2, 1, 1)
    if kind == "G":
        return (1, 3)
    return tuple([1] * n)


class CartanData:
    """Cartan matrix, root list and Weyl combinatorics for one finite type."""

    def __init__(self, kind: str, rank: int):
        lo, hi = _RANK_RANGES[kind]
        if rank < lo or (hi is not None and rank > hi):
            raise ValueError(f"rank {rank} out of range for type {kind}")
        self.kind = kind
        self.rank = rank
        self.dvec = _dvec(kind, rank)
        edges = _edges(kind, rank)
        adj = {i: set() for i in range(1, rank + 1)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {i: tuple(sorted(v)) for i, v in adj.items()}
        cmat = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            cmat[i][i] = 2
        for a, b in edges:
            m = max(self.dvec[a - 1], self.dvec[b - 1])
            cmat[a - 1][b - 1] = -m // self.dvec[a - 1]
            cmat[b - 1][a - 1] = -m // self.dvec[b - 1]
        self.cmat = tuple(tuple(row) for row in cmat)
        self._dist = self._all_distances()
        self.positive_roots = self._closure()
        self._posset = frozenset(self.positive_roots)
        self.coxeter_number = 2 * len(self.positive_roots) // rank
        self.w0_word = self._greedy_w0()
        assert len(self.w0_word) == len(self.positive_roots)
        star = []
        for i in range(1, rank + 1):
            img = self.act_word(self.w0_word, self.simple(i))
            neg = tuple(-x for x in img)
            assert neg in self._posset and sum(neg) == 1
            star.append(neg.index(1) + 1)
        self.star = tuple(star)
        # Default parity classes: alternate along the graph, vertex 1 odd.
        self.eps = tuple((self._dist[(1, i)] + 1) % 2 for i in range(1, rank + 1))

    # -- basic accessors (1-based vertex labels) ---------------------------

    def c(self, i: int, j: int) -> int:
        return self.cmat[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.dvec[i - 1]

    def neighbors(self, i: int):
        return self._adj[i]

    def distance(self, i: int, j: int) -> int:
        return self._dist[(i, j)]

    def simple(self, i: int):
        return tuple(1 if t == i - 1 else 0 for t in range(self.rank))

    def fundamental(self, i: int):
        return tuple(1 if t == i - 1 else 0 for t in range(self.rank))

    def _all_distances(self):
        dist = {}
        for s in range(1, self.rank + 1):
            seen = {s: 0}
            frontier = [s]
            while frontier:
                nxt = []
                for v in frontier:
                    for w in self._adj[v]:
                        if w not in seen:
                            seen[w] = seen[v] + 1
                            nxt.append(w)
                frontier = nxt
            for t, dd in seen.items():
                dist[(s, t)] = dd
        return dist

    # -- reflections and the form ------------------------------------------

    def apply_s(self, i: int, x):
        """$s_i$ on the root lattice in simple-root coordinates."""
        pair = sum(x[j] * self.cmat[i - 1][j] for j in range(self.rank))
        out = list(x)
        out[i - 1] -= pair
        return tuple(out)

    def apply_s_weight(self, i: int, lam):
        """$s_i$ on the weight lattice in fundamental-weight coordinates."""
        li = lam[i - 1]
        if not li:
            return tuple(lam)
        return tuple(lam[j] - li * self.cmat[j][i - 1] for j in range(self.rank))

    def act_word(self, word, x):
        for i in reversed(word):
            x = self.apply_s(i, x)
        return x

    def act_word_weight(self, word, lam):
        for i in reversed(word):
            lam = self.apply_s_weight(i, lam)
        return lam

    def alpha_to_omega(self, x):
        return tuple(
            sum(self.cmat[j][i] * x[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    def omega_to_alpha(self, lam):
        """Solve $\\sum_i x_i \\alpha_i = \\lambda$; Fractions in general."""
        n = self.rank
        aug = [[Fraction(self.cmat[j][i]) for i in range(n)] + [Fraction(lam[j])] for j in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [v / pv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
            # column col now has a single 1 in row col
        return tuple(aug[r][n] for r in range(n))

    def omega_to_alpha_int(self, lam):
        xs = self.omega_to_alpha(lam)
        for v in xs:
            if v.denominator != 1:
                raise ValueError(f"weight {lam} is not in the root lattice")
        return tuple(int(v) for v in xs)

    def bilin(self, x, y) -> int:
        """$(\\,,\\,)$ on the root lattice (simple-root coordinates)."""
        total = 0
        for i in range(self.rank):
            if not x[i]:
                continue
            di = self.dvec[i]
            for j in range(self.rank):
                if y[j]:
                    total += x[i] * y[j] * di * self.cmat[i][j]
        return total

    def pair_alpha_omega(self, x, lam) -> int:
        """$(\\sum x_i \\alpha_i, \\lambda)$ with $\\lambda$ in weight coordinates."""
        return sum(x[i] * self.dvec[i] * lam[i] for i in range(self.rank))

    def root_d(self, x) -> int:
        """$d_\\alpha = (\\alpha,\\alpha)/2$."""
        v = self.bilin(x, x)
        assert v % 2 == 0
        return v // 2

    # -- the root list ------------------------------------------------------

    def _closure(self):
        roots = {self.simple(i) for i in range(1, self.rank + 1)}
        changed = True
        while changed:
            changed = False
            for x in list(roots):
                for i in range(1, self.rank + 1):
                    y = self.apply_s(i, x)
                    if y not in roots and all(v >= 0 for v in y) and any(y):
                        roots.add(y)
                        changed = True
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    def is_root(self, x) -> bool:
        return x in self._posset or tuple(-v for v in x) in self._posset

    def is_positive_root(self, x) -> bool:
        return x in self._posset

    def highest_root(self):
        return self.positive_roots[-1]

    def support(self, x):
        return tuple(i + 1 for i in range(self.rank) if x[i])

    def p_max(self, beta, alpha) -> int:
        """max $p$ with $\\beta - p\\alpha$ a root (0 if already $\\beta-\\alpha$ is not)."""
        p = 0
        cur = tuple(b - a for b, a in zip(beta, alpha))
        while self.is_root(cur):
            p += 1
            cur = tuple(b - a for b, a in zip(cur, alpha))
        return p

    # -- longest element and words -----------------------------------------

    def _greedy_w0(self):
        lam = tuple([1] * self.rank)
        target = tuple([-1] * self.rank)
        steps = []
        while lam != target:
            i = next(t + 1 for t in range(self.rank) if lam[t] > 0)
            lam = self.apply_s_weight(i, lam)
            steps.append(i)
        return tuple(reversed(steps))

    def beta_sequence(self, word):
        """Roots $\\beta_k = s_{i_1}\\cdots s_{i_{k-1}}(\\alpha_{i_k})$ of a reduced word.

        Raises :class:`NotReduced` when some $\\beta_k$ leaves the positive
        roots or repeats.
        """
        betas = []
        seen = set()
        for k, i in enumerate(word):
            b = self.act_word(word[:k], self.simple(i))
            if b not in self._posset or b in seen:
                raise NotReduced(f"word {tuple(word)} fails at position {k + 1}")
            seen.add(b)
            betas.append(b)
        return tuple(betas)

    def is_reduced(self, word) -> bool:
        try:
            self.beta_sequence(word)
        except NotReduced:
            return False
        return True

    def lambda_weight(self, word, k):
        """$\\lambda_{\\beta_k} = s_{i_1}\\cdots s_{i_k}(\\varpi_{i_k})$ in weight coordinates."""
        return self.act_word_weight(word[: k], self.fundamental(word[k - 1]))


_CACHE: dict = {}


def build_cartan(kind: str, rank: int) -> CartanData:
    """Cartan data for the given finite type, cached per ``(kind, rank)``."""
    kind = kind.upper()
    if kind not in _RANK_RANGES:
        raise ValueError(f"unknown type {kind!r}")
    key = (kind, rank)
    if key not in _CACHE:
        _CACHE[key] = CartanData(kind, rank)
    return _CACHE[key]


def longest_and_star(cd: CartanData):
    """The longest-element word produced by weight descent and the induced
    involution ``i -> i*``."""
    return cd.w0_word, cd.star
