"""Compositions, row-standard tableaux, root subsets of the negative roots,
main condition sets, hooks and stabilizer root sets.

Positions are 1-based pairs (i, j) as in matrix notation; a negative root
has i > j.  Everything is emitted in row-major lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DoesNotFit,
    NotMain,
    NotNegativeRoot,
    NotNested,
    NotRowStandard,
    NotTwoPart,
    TooLarge,
)

MAX_N = 12


def negative_roots(n):
    """All (i, j) with 1 <= j < i <= n in row-major order."""
    return [(i, j) for i in range(2, n + 1) for j in range(1, i)]


class RootSet:
    """A set of positions of n x n matrices, stored as a frozenset plus a bit matrix."""

    __slots__ = ("n", "positions", "_mask", "_sorted")

    def __init__(self, n, positions=()):
        self.n = int(n)
        pos = frozenset((int(i), int(j)) for i, j in positions)
        for i, j in pos:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"({i},{j}) is not a root position for n={n}")
        self.positions = pos
        self._mask = None
        self._sorted = None

    @classmethod
    def negative(cls, n):
        return cls(n, negative_roots(n))

    @classmethod
    def from_mask(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        n = mask.shape[0]
        return cls(n, [(i + 1, j + 1) for i, j in zip(*np.nonzero(mask))])

    @property
    def mask(self):
        if self._mask is None:
            m = np.zeros((self.n, self.n), dtype=bool)
            for i, j in self.positions:
                m[i - 1, j - 1] = True
            m.flags.writeable = False
            self._mask = m
        return self._mask

    @property
    def sorted(self):
        """Positions in row-major order."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self.positions))
        return self._sorted

    @property
    def orientation(self):
        if all(i > j for i, j in self.positions):
            return "negative"
        if all(i < j for i, j in self.positions):
            return "positive"
        return "mixed"

    def __contains__(self, pos):
        return tuple(pos) in self.positions

    def __iter__(self):
        return iter(self.sorted)

    def __len__(self):
        return len(self.positions)

    def __eq__(self, other):
        return isinstance(other, RootSet) and self.n == other.n and self.positions == other.positions

    def __hash__(self):
        return hash((self.n, self.positions))

    def __repr__(self):
        return f"RootSet(n={self.n}, {list(self.sorted)})"

    def _combine(self, other, op):
        if isinstance(other, RootSet):
            if other.n != self.n:
                raise ValueError("root sets of different n")
            other = other.positions
        return RootSet(self.n, op(self.positions, frozenset(other)))

    def __or__(self, other):
        return self._combine(other, frozenset.union)

    def __and__(self, other):
        return self._combine(other, frozenset.intersection)

    def __sub__(self, other):
        return self._combine(other, frozenset.difference)

    def issubset(self, other):
        return self.positions <= other.positions

    def isdisjoint(self, other):
        return self.positions.isdisjoint(other.positions)


def is_closed(S):
    """True iff (i,j), (j,k) in S with i != k forces (i,k) in S."""
    m = S.mask.astype(np.int64)
    reach = (m @ m) > 0
    np.fill_diagonal(reach, False)
    return not np.any(reach & ~S.mask)


def normality_check(J, I):
    """U_J is normal in U_I (J a subset of I, both closed)."""
    if not J.issubset(I):
        raise NotNested(f"{J} is not contained in {I}")
    mi = I.mask.astype(np.int64)
    mj = J.mask.astype(np.int64)
    # pairs (i,j),(j,k) in I with at least one in J
    hit = ((mj @ mi) + (mi @ mj)) > 0
    np.fill_diagonal(hit, False)
    return not np.any(hit & ~J.mask)


# -- compositions and tableaux ---------------------------------------------


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts) or not parts:
            raise ValueError(f"bad composition {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts):
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(parts))

    @property
    def n(self):
        return sum(self.parts)

    @property
    def partial_sums(self):
        """Lambda_0 = 0, ..., Lambda_k = n."""
        return tuple(itertools.accumulate(self.parts, initial=0))

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def compartment(self, row):
        """1-based compartment containing matrix row `row` (1-based)."""
        sums = self.partial_sums
        for r in range(1, len(sums)):
            if row <= sums[r]:
                return r
        raise ValueError(f"row {row} beyond n={self.n}")


def compositions(n, positive=True):
    """All compositions of n with positive parts, in lexicographic order."""
    out = []

    def rec(rest, acc):
        if rest == 0:
            out.append(Composition(tuple(acc)))
            return
        for k in range(1, rest + 1):
            rec(rest - k, acc + [k])

    if n == 0:
        return [Composition((0,))]
    rec(n, [])
    return sorted(out, key=lambda c: c.parts)


def two_part_compositions(n):
    return [Composition((n - m, m)) for m in range(1, n)]


class Tableau:
    """A lambda-tableau, stored as a tuple of rows."""

    __slots__ = ("shape", "rows", "_row_of", "word")

    def __init__(self, shape, rows):
        if not isinstance(shape, Composition):
            shape = Composition(tuple(shape))
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if tuple(len(r) for r in rows) != shape.parts:
            raise ValueError(f"rows {rows} do not have shape {shape}")
        word = tuple(x for r in rows for x in r)
        if sorted(word) != list(range(1, shape.n + 1)):
            raise ValueError(f"rows {rows} are not a bijection onto 1..{shape.n}")
        self.shape = shape
        self.rows = rows
        self.word = word
        self._row_of = {x: k + 1 for k, r in enumerate(rows) for x in r}

    @classmethod
    def initial(cls, shape):
        if not isinstance(shape, Composition):
            shape = Composition(tuple(shape))
        sums = shape.partial_sums
        return cls(shape, [range(sums[k] + 1, sums[k + 1] + 1) for k in range(len(shape))])

    @classmethod
    def from_sbar(cls, n, sbar):
        """Two-row tableau with second row sbar (sorted) and first row the rest."""
        sbar = tuple(sorted(int(x) for x in sbar))
        if len(set(sbar)) != len(sbar) or any(not 1 <= x <= n for x in sbar):
            raise ValueError(f"bad second row {sbar} for n={n}")
        first = tuple(x for x in range(1, n + 1) if x not in sbar)
        return cls(Composition((n - len(sbar), len(sbar))), (first, sbar))

    @property
    def n(self):
        return self.shape.n

    def is_row_standard(self):
        return all(all(a < b for a, b in zip(r, r[1:])) for r in self.rows)

    def row_of(self, i):
        return self._row_of[i]

    @property
    def d(self):
        """d(s) as a tuple: d[i-1] = i.d, the entry of s where t^lambda holds i."""
        return self.word

    @property
    def sbar(self):
        if len(self.shape) != 2:
            raise NotTwoPart(f"shape {self.shape} has {len(self.shape)} parts")
        return self.rows[1]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return "Tableau(" + " | ".join(" ".join(map(str, r)) for r in self.rows) + ")"


def enumerate_rstd(lam, limit=None):
    """All row-standard lambda-tableaux ordered by reading word."""
    if not isinstance(lam, Composition):
        lam = Composition(tuple(lam))
    n = lam.n
    if n > MAX_N:
        raise TooLarge("tableau entries", n, MAX_N)
    count = 1
    rest = n
    for part in lam.parts:
        count *= _binom(rest, part)
        rest -= part
    limit = limit if limit is not None else 2**20
    if count > limit:
        raise TooLarge("row-standard tableaux", count, limit)

    out = []

    def rec(k, remaining, rows):
        if k == len(lam.parts):
            out.append(Tableau(lam, rows))
            return
        for row in itertools.combinations(remaining, lam.parts[k]):
            left = [x for x in remaining if x not in row]
            rec(k + 1, left, rows + [row])

    rec(0, list(range(1, n + 1)), [])
    out.sort(key=lambda t: t.word)
    return out


def _binom(a, b):
    from math import comb

    return comb(a, b)


# -- root sets of a tableau ------------------------------------------------


@dataclass(frozen=True)
class RootSets:
    P: RootSet
    L: RootSet
    I: RootSet
    K: RootSet
    J: RootSet
    L1: RootSet | None = None
    L2: RootSet | None = None


def root_sets(s):
    if not s.is_row_standard():
        raise NotRowStandard(f"{s} is not row standard")
    n = s.n
    row = s.row_of
    neg = negative_roots(n)
    P = RootSet(n, [(i, j) for i, j in neg if row(i) <= row(j)])
    L = RootSet(n, [(i, j) for i, j in neg if row(i) == row(j)])
    I = RootSet(n, [(i, j) for i, j in neg if row(i) < row(j)])
    K = RootSet(n, [(i, j) for i, j in neg if row(i) >= row(j)])
    J = RootSet(n, [(i, j) for i, j in neg if row(i) > row(j)])
    L1 = L2 = None
    if len(s.shape) == 2:
        L1 = RootSet(n, [(i, j) for i, j in L if row(i) == 1])
        L2 = RootSet(n, [(i, j) for i, j in L if row(i) == 2])
    return RootSets(P, L, I, K, J, L1, L2)


def lowest_row_positions(s):
    """J_k: positions of J(s) whose row index sits in the last nonempty row of s."""
    rs = root_sets(s)
    k = max(s.row_of(i) for i in range(1, s.n + 1))
    return RootSet(s.n, [(i, j) for i, j in rs.J if s.row_of(i) == k])


# -- hooks and condition sets ----------------------------------------------


@dataclass(frozen=True)
class Hook:
    arm: frozenset
    leg: frozenset
    full: frozenset


def hook(i, j, n):
    if not (1 <= j < i <= n):
        raise NotNegativeRoot(f"({i},{j}) is not a negative root for n={n}")
    arm = frozenset((i, k) for k in range(j + 1, i))
    leg = frozenset((l, j) for l in range(j + 1, i))
    return Hook(arm, leg, arm | leg | {(i, j)})


@dataclass(frozen=True)
class ConditionSet:
    n: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        if len(set(pairs)) != len(pairs):
            raise ValueError(f"repeated position in {pairs}")
        for i, j in pairs:
            if not (1 <= j < i <= self.n):
                raise NotNegativeRoot(f"({i},{j}) is not a negative root for n={self.n}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def rows(self):
        """p_i"""
        return frozenset(i for i, _ in self.pairs)

    @property
    def cols(self):
        """p_j"""
        return frozenset(j for _, j in self.pairs)

    def is_main(self):
        return len(self.rows) == len(self.pairs) and len(self.cols) == len(self.pairs)

    def is_completely_hook_disconnected(self):
        return self.is_main() and self.rows.isdisjoint(self.cols)

    def root_set(self):
        return RootSet(self.n, self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self):
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs) + "}"


@dataclass(frozen=True)
class Classification:
    is_main: bool
    is_completely_hook_disconnected: bool


def condition_set_classify(p):
    return Classification(p.is_main(), p.is_completely_hook_disconnected())


def main_condition_sets(n, disconnected=False):
    """All main condition sets in the negative roots of size n (rook placements)."""
    neg = negative_roots(n)
    out = []

    def rec(start, chosen, rows, cols):
        out.append(ConditionSet(n, tuple(chosen)))
        for k in range(start, len(neg)):
            i, j = neg[k]
            if i in rows or j in cols:
                continue
            if disconnected and (i in cols or j in rows):
                continue
            rec(k + 1, chosen + [(i, j)], rows | {i}, cols | {j})

    rec(0, [], frozenset(), frozenset())
    out.sort(key=lambda p: (len(p), p.pairs))
    return out


def fits(p, s):
    """p fits the s-component: p_i inside the second row, p_j avoiding it."""
    sbar = set(s.sbar)
    return p.rows <= sbar and p.cols.isdisjoint(sbar)


def minimal_fitting_tableau(p):
    """The two-row tableau of shape (n-k, k) whose second row is p_i."""
    if not p.is_completely_hook_disconnected():
        raise NotMain(f"{p} is not a completely hook disconnected main condition set")
    return Tableau.from_sbar(p.n, sorted(p.rows))


def fitting_tableaux(p, lam):
    return [s for s in enumerate_rstd(lam) if fits(p, s)]


def condition_sets_for_shape(lam):
    """Completely hook disconnected main sets fitting at least one tableau of lam."""
    if not isinstance(lam, Composition):
        lam = Composition(tuple(lam))
    if len(lam) != 2:
        raise NotTwoPart(f"{lam} is not a two-part composition")
    tabs = enumerate_rstd(lam)
    return [p for p in main_condition_sets(lam.n, disconnected=True) if any(fits(p, s) for s in tabs)]


# -- stabilizer root sets --------------------------------------------------


@dataclass(frozen=True)
class StabilizerData:
    R: RootSet
    R0: RootSet
    Rhat: RootSet
    Rhat_minus: RootSet
    L1_0: RootSet | None = None
    L2_0: RootSet | None = None
    L1_1: RootSet | None = None
    J0: RootSet | None = None


def hook_intersection_legs(p):
    """Positions (b, j) with (i,j), (t,b) in p and t > i > b > j."""
    out = set()
    for i, j in p:
        for t, b in p:
            if t > i > b > j:
                out.add((b, j))
    return out


def stabilizer_sets(p, context=None):
    if not p.is_main():
        raise NotMain(f"{p} is not a main condition set")
    n = p.n
    cols = p.cols
    neg = negative_roots(n)
    R = RootSet(
        n,
        [(r, c) for r, c in neg if c not in cols] + [(r, j) for i, j in p for r in range(i, n + 1)],
    )
    pset = p.root_set()
    R0 = R - pset
    Rhat = R | hook_intersection_legs(p)
    data = dict(R=R, R0=R0, Rhat=Rhat, Rhat_minus=Rhat - pset)
    if context is not None:
        if not fits(p, context):
            raise DoesNotFit(f"{p} does not fit {context}")
        rs = root_sets(context)
        by_col = {j: i for i, j in p}
        by_row = {i: j for i, j in p}
        L1_0 = RootSet(n, [(i, j) for i, j in rs.L1 if j not in cols or by_col[j] < i])
        L2_0 = RootSet(n, [(i, j) for i, j in rs.L2 if i not in p.rows or by_row[i] > j])
        L1_1 = RootSet(
            n,
            [
                (i, j)
                for i, j in rs.L1
                if i in cols and j in cols and by_col[i] > by_col[j] > i
            ],
        )
        J0 = RootSet(n, [(a, j) for a, j in rs.J if j not in cols or by_col[j] <= a])
        data.update(L1_0=L1_0, L2_0=L2_0, L1_1=L1_1, J0=J0)
    return StabilizerData(**data)
