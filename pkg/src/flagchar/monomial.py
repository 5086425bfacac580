"""Monomial action of U_K on the lidempotent basis {e_A : A in V_J}.

A label A is stored as its digit vector: the entries of A at the positions
of J in row-major order.  The integer code of a label packs these digits
base q with the first position most significant; codes are the hash key,
the sort key and the array index of a label.

A generator x_ij(alpha) acts by a truncated column operation (adding -alpha
times column j to column i), combined with the truncated row operation
(adding alpha times row i to row j) when (i,j) lies in L, and multiplies by
theta(alpha A_ij) when (i,j) lies in J.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .combinat import RootSet
from .errors import (
    ContextMismatch,
    ContextNotFull,
    ENUMERATION_CAP,
    NonIntegralSum,
    PositionNotInK,
    VergeCountViolation,
    check_size,
)
from .field import CycInt, canonical
from .pattern import Split


# -- label space -----------------------------------------------------------


class LabelSpace:
    """V_J with its digit encoding."""

    def __init__(self, J, field):
        self.J = J
        self.n = J.n
        self.field = field
        self.q = field.q
        self.positions = J.sorted
        self.m = len(self.positions)
        self.index = {pos: k for k, pos in enumerate(self.positions)}
        self.size = self.q**self.m

    def encode(self, digits):
        digits = np.asarray(digits)
        if digits.ndim == 1:
            return int(K.encode(digits[None, :].astype(np.int64), self.q)[0])
        return K.encode(digits.astype(np.int64), self.q)

    def decode(self, codes):
        scalar = np.ndim(codes) == 0
        out = K.decode(np.atleast_1d(np.asarray(codes, dtype=np.int64)), self.m, self.q)
        return out[0] if scalar else out

    def to_matrix(self, digits):
        digits = np.asarray(digits, dtype=np.int64)
        A = np.zeros(digits.shape[:-1] + (self.n, self.n), dtype=np.int64)
        for k, (i, j) in enumerate(self.positions):
            A[..., i - 1, j - 1] = digits[..., k]
        return A

    def from_matrix(self, A):
        A = np.asarray(A, dtype=np.int64)
        outside = np.where(self.J.mask, 0, A)
        if np.any(outside):
            raise ContextMismatch("matrix has entries outside J")
        if self.m == 0:
            return np.zeros(A.shape[:-2] + (0,), dtype=np.int16)
        return np.stack([A[..., i - 1, j - 1] for i, j in self.positions], axis=-1).astype(np.int16)

    def code_of_matrix(self, A):
        return self.encode(self.from_matrix(A))

    def matrix_of_code(self, code):
        return self.to_matrix(self.decode(code))

    def all_digits(self):
        check_size("label space", self.size, ENUMERATION_CAP)
        return self.decode(np.arange(self.size))

    def verge_mask(self, digits):
        """True where the label has at most one nonzero entry per row and column."""
        A = self.to_matrix(digits) != 0
        return (A.sum(axis=-1) <= 1).all(axis=-1) & (A.sum(axis=-2) <= 1).all(axis=-1)


# -- compiled generators ---------------------------------------------------


@dataclass(frozen=True)
class CompiledGen:
    pos: tuple
    alpha: int
    side: str
    tgt: np.ndarray
    src: np.ndarray
    coef: np.ndarray
    sidx: int
    scoef: int


def _compile(space, updates, sidx, scoef, pos, alpha, side):
    tgt = np.array([space.index[t] for t, _, _ in updates], dtype=np.int64)
    src = np.array([space.index[s] for _, s, _ in updates], dtype=np.int64)
    coef = np.array([c for _, _, c in updates], dtype=np.int64)
    return CompiledGen(pos, int(alpha), side, tgt, src, coef, sidx, int(scoef))


def compile_right(split, pos, alpha, space=None):
    i, j = pos
    if pos not in split.K:
        raise PositionNotInK(f"{pos} is not in K")
    F = split.field
    space = space or LabelSpace(split.J, F)
    J = split.J
    nalpha = int(F.neg(alpha))
    updates = []
    # column i gets -alpha times column j
    for r in range(1, split.n + 1):
        if (r, i) in J and (r, j) in J:
            updates.append(((r, i), (r, j), nalpha))
    if pos in split.L:
        # row j gets alpha times row i
        for c in range(1, split.n + 1):
            if (j, c) in J and (i, c) in J:
                updates.append(((j, c), (i, c), int(alpha)))
    sidx = space.index[pos] if pos in J else -1
    return _compile(space, updates, sidx, alpha, pos, alpha, "right")


def compile_left(split, pos, alpha, space=None):
    if not is_full(split):
        raise ContextNotFull("left action needs J = all negative roots and L empty")
    i, j = pos
    F = split.field
    space = space or LabelSpace(split.J, F)
    nalpha = int(F.neg(alpha))
    J = split.J
    # row j gets -alpha times row i
    updates = [((j, c), (i, c), nalpha) for c in range(1, split.n + 1) if (j, c) in J and (i, c) in J]
    return _compile(space, updates, space.index[pos], alpha, pos, alpha, "left")


def is_full(split):
    return len(split.L) == 0 and split.J == RootSet.negative(split.n)


def apply_gen(gen, digits, field):
    """Apply a compiled generator to a batch of digit vectors."""
    digits = np.ascontiguousarray(digits, dtype=np.int16)
    if digits.ndim == 1:
        digits = digits[None, :]
    return K.apply_updates(
        digits, gen.tgt, gen.src, gen.coef, gen.sidx, gen.scoef,
        field.add_t, field.mul_t, field.theta_t,
    )


@dataclass(frozen=True)
class MonomialStep:
    """e_A g = zeta_p^exponent e_label."""

    exponent: int
    label: np.ndarray


def _act(A, gen, split):
    space = LabelSpace(split.J, split.field)
    digits = space.from_matrix(A)
    new, exps = apply_gen(gen, digits, split.field)
    return MonomialStep(int(exps[0]), space.to_matrix(new[0]))


def act_right(A, pos, alpha, split):
    return _act(A, compile_right(split, tuple(pos), alpha), split)


def act_left(A, pos, alpha, split):
    return _act(A, compile_left(split, tuple(pos), alpha), split)


class MonomialAction:
    """All generators x_ij(alpha), (i,j) in K, alpha != 0, compiled for a split."""

    def __init__(self, split):
        self.split = split
        self.field = split.field
        self.space = LabelSpace(split.J, split.field)
        F = self.field
        self.right = [compile_right(split, pos, a, self.space) for pos in split.K.sorted for a in F.nonzero()]
        self.left = (
            [compile_left(split, pos, a, self.space) for pos in split.J.sorted for a in F.nonzero()]
            if is_full(split)
            else None
        )

    def gen(self, pos, alpha, side="right"):
        gens = self.right if side == "right" else self.left
        if gens is None:
            raise ContextNotFull("no left action outside the full context")
        for g in gens:
            if g.pos == tuple(pos) and g.alpha == alpha:
                return g
        raise PositionNotInK(f"no generator at {pos}")

    def step(self, gen, codes):
        """Images and scalar exponents of labels `codes` under one generator."""
        digits = self.space.decode(codes)
        new, exps = apply_gen(gen, digits, self.field)
        return self.space.encode(new), exps

    @functools.cached_property
    def _all_digits(self):
        return self.space.all_digits()

    def full_images(self, side="right"):
        """(G, size) image codes and scalar exponents over the whole label space."""
        gens = self.right if side == "right" else self.left
        if gens is None:
            raise ContextNotFull("no left action outside the full context")
        digits = self._all_digits
        imgs = np.empty((len(gens), self.space.size), dtype=np.int64)
        exps = np.empty((len(gens), self.space.size), dtype=np.int64)
        for k, g in enumerate(gens):
            new, e = apply_gen(g, digits, self.field)
            imgs[k] = self.space.encode(new)
            exps[k] = e
        return imgs, exps


@functools.lru_cache(maxsize=64)
def monomial_action(split):
    return MonomialAction(split)


# -- orbits ----------------------------------------------------------------


@dataclass
class Orbit:
    split: Split
    codes: np.ndarray  # sorted label codes
    parent: np.ndarray  # code of the BFS parent, -1 for the start label
    gen: np.ndarray  # index into MonomialAction.right of the step from the parent
    depth: np.ndarray
    start: int
    verge: int

    @property
    def size(self):
        return len(self.codes)

    def labels(self):
        space = LabelSpace(self.split.J, self.split.field)
        return space.to_matrix(space.decode(self.codes))

    def verge_matrix(self):
        space = LabelSpace(self.split.J, self.split.field)
        return space.matrix_of_code(self.verge)

    def main(self):
        A = self.verge_matrix()
        return tuple((int(i) + 1, int(j) + 1) for i, j in zip(*np.nonzero(A)))

    def word(self, code):
        """Generator indices leading from the start label to `code`."""
        idx = {int(c): k for k, c in enumerate(self.codes)}
        out = []
        c = int(code)
        while self.parent[idx[c]] >= 0:
            out.append(int(self.gen[idx[c]]))
            c = int(self.parent[idx[c]])
        return out[::-1]

    def __contains__(self, code):
        k = np.searchsorted(self.codes, code)
        return k < len(self.codes) and self.codes[k] == code


def orbit_enumerate(start, split, limit=ENUMERATION_CAP, strict=None):
    """Breadth-first closure of a label under all right generators.

    With strict (the default outside the full context) the orbit must hold
    exactly one verge.  Right orbits in the full context need not contain
    one, since there verges are unique per biorbit; verge is then -1 unless
    exactly one is present.
    """
    if strict is None:
        strict = not is_full(split)
    act = monomial_action(split)
    space = act.space
    check_size("label space", space.size, limit)
    start_code = space.code_of_matrix(start) if np.ndim(start) == 2 else int(start)
    found_codes = [np.array([start_code], dtype=np.int64)]
    found_parent = [np.array([-1], dtype=np.int64)]
    found_gen = [np.array([-1], dtype=np.int64)]
    found_depth = [np.array([0], dtype=np.int64)]
    seen = np.array([start_code], dtype=np.int64)
    frontier = seen
    depth = 0
    while len(frontier):
        depth += 1
        cand, par, gid = [], [], []
        for k, g in enumerate(act.right):
            img, _ = act.step(g, frontier)
            cand.append(img)
            par.append(frontier)
            gid.append(np.full(len(frontier), k, dtype=np.int64))
        cand = np.concatenate(cand)
        par = np.concatenate(par)
        gid = np.concatenate(gid)
        new_mask = ~np.isin(cand, seen)
        cand, par, gid = cand[new_mask], par[new_mask], gid[new_mask]
        uniq, first = np.unique(cand, return_index=True)
        found_codes.append(uniq)
        found_parent.append(par[first])
        found_gen.append(gid[first])
        found_depth.append(np.full(len(uniq), depth, dtype=np.int64))
        seen = np.union1d(seen, uniq)
        frontier = uniq
    codes = np.concatenate(found_codes)
    order = np.argsort(codes)
    orbit = Orbit(
        split,
        codes[order],
        np.concatenate(found_parent)[order],
        np.concatenate(found_gen)[order],
        np.concatenate(found_depth)[order],
        start_code,
        -1,
    )
    if strict:
        orbit.verge = find_verge(orbit)
    else:
        try:
            orbit.verge = find_verge(orbit)
        except VergeCountViolation:
            pass
    return orbit


def find_verge(orbit):
    space = LabelSpace(orbit.split.J, orbit.split.field)
    mask = space.verge_mask(space.decode(orbit.codes))
    hits = orbit.codes[mask]
    if len(hits) != 1:
        raise VergeCountViolation(f"orbit of size {orbit.size} has {len(hits)} verges")
    return int(hits[0])


@dataclass
class Partition:
    """Orbits of a label space: orbit id per code, orbits ordered by smallest code."""

    split: Split
    orbit_of: np.ndarray
    reps: np.ndarray  # smallest code in each orbit

    @property
    def count(self):
        return len(self.reps)

    def sizes(self):
        return np.bincount(self.orbit_of, minlength=self.count)

    def members(self, k):
        return np.nonzero(self.orbit_of == k)[0]

    def verges(self):
        """Verge code of each orbit; raises unless each orbit has exactly one."""
        space = LabelSpace(self.split.J, self.split.field)
        mask = space.verge_mask(space.all_digits())
        per = np.bincount(self.orbit_of[mask], minlength=self.count)
        if np.any(per != 1):
            bad = int(np.nonzero(per != 1)[0][0])
            raise VergeCountViolation(f"orbit {bad} has {per[bad]} verges")
        out = np.empty(self.count, dtype=np.int64)
        codes = np.nonzero(mask)[0]
        out[self.orbit_of[codes]] = codes
        return out


def _partition_from_images(split, images):
    roots = K.partition(images)
    reps, orbit_of = np.unique(roots, return_inverse=True)
    return Partition(split, orbit_of.astype(np.int64), reps.astype(np.int64))


def orbit_partition(split, limit=ENUMERATION_CAP):
    """U_K-orbits of the whole label space E_J."""
    act = monomial_action(split)
    check_size("label space", act.space.size, limit)
    imgs, _ = act.full_images("right")
    return _partition_from_images(split, imgs)


def biorbit_partition(split, limit=ENUMERATION_CAP):
    """U-U-biorbits of E in the full context."""
    if not is_full(split):
        raise ContextNotFull("biorbits need the full context")
    act = monomial_action(split)
    check_size("label space", act.space.size, limit)
    r, _ = act.full_images("right")
    l, _ = act.full_images("left")
    return _partition_from_images(split, np.concatenate([r, l]))


def biorbit_enumerate(start, split, limit=ENUMERATION_CAP):
    """Sorted codes of the biorbit containing `start`; checks its single verge."""
    part = biorbit_partition(split, limit)
    space = monomial_action(split).space
    code = space.code_of_matrix(start) if np.ndim(start) == 2 else int(start)
    members = part.members(part.orbit_of[code])
    mask = space.verge_mask(space.decode(members))
    if mask.sum() != 1:
        raise VergeCountViolation(f"biorbit has {int(mask.sum())} verges")
    return members


# -- walking a pattern group -----------------------------------------------

WALK_CHUNK = 2**22


def walk_group(G, field, gen_tables, M, reducer, chunk=WALK_CHUNK):
    """Evaluate `reducer` on the action of every element of U_G.

    gen_tables[k][a] = (perm, exps) describe x_pos(a) for the k-th position of
    G in row-major order (a = 1..q-1) as a monomial map on M points:
    point l goes to perm[l] with scalar zeta^exps[l].  Elements are visited in
    the order of pattern.group_elements(G), and reducer(perm, exps) receives
    batches of shape (B, M).  Returns the concatenated reducer outputs.
    """
    q, p = field.q, field.p
    L = len(gen_tables)
    out = []

    def rec(perm, exps, level):
        if level == L:
            out.append(reducer(perm, exps))
            return
        B = perm.shape[0]
        if B > 1 and B * q * M > chunk:
            for b in range(B):
                rec(perm[b : b + 1], exps[b : b + 1], level)
            return
        nperm = np.empty((B, q, M), dtype=np.int64)
        nexps = np.empty((B, q, M), dtype=np.int64)
        nperm[:, 0] = perm
        nexps[:, 0] = exps
        for a in range(1, q):
            gp, ge = gen_tables[level][a]
            nperm[:, a] = gp[perm]
            nexps[:, a] = (exps + ge[perm]) % p
        rec(nperm.reshape(B * q, M), nexps.reshape(B * q, M), level + 1)

    rec(np.arange(M, dtype=np.int64)[None, :], np.zeros((1, M), dtype=np.int64), 0)
    return np.concatenate(out) if out else np.zeros((0,))


def generator_tables(split, G, codes=None):
    """Tables for walk_group restricted to the labels `codes` (default: all).

    `codes` must be a sorted union of U_G-orbits.
    """
    act = monomial_action(split)
    F = split.field
    if not G.issubset(split.K):
        raise ContextMismatch("acting group must lie in U_K")
    if codes is None:
        codes = np.arange(act.space.size, dtype=np.int64)
    tables = []
    for pos in G.sorted:
        row = [None]
        for a in F.nonzero():
            img, exps = act.step(act.gen(pos, a), codes)
            local = np.searchsorted(codes, img)
            if np.any(local >= len(codes)) or np.any(codes[np.minimum(local, len(codes) - 1)] != img):
                raise ContextMismatch("label set is not stable under the acting group")
            row.append((local, exps.astype(np.int64)))
        tables.append(row)
    return tables


# -- characters ------------------------------------------------------------


@dataclass
class CharacterFn:
    """A class function on U_G with values in Z[zeta_p].

    values[k] is a length-p integer vector, the coefficients of
    1, zeta, ..., zeta^(p-1) of the value at group element k (in the order of
    pattern.group_elements(G)).
    """

    G: RootSet
    field: object
    values: np.ndarray

    def __post_init__(self):
        self.values = canonical(np.asarray(self.values, dtype=np.int64))

    @property
    def p(self):
        return self.field.p

    def value(self, k):
        return CycInt.from_vector(self.p, self.values[k])

    @property
    def degree(self):
        return self.value(0)

    def __eq__(self, other):
        return (
            isinstance(other, CharacterFn)
            and self.G == other.G
            and self.field == other.field
            and np.array_equal(self.values, other.values)
        )

    def __add__(self, other):
        _check_context(self, other)
        return CharacterFn(self.G, self.field, self.values + other.values)

    def __sub__(self, other):
        _check_context(self, other)
        return CharacterFn(self.G, self.field, self.values - other.values)

    def scaled(self, k):
        return CharacterFn(self.G, self.field, self.values * k)


def _check_context(chi, psi):
    if chi.G != psi.G or chi.field != psi.field:
        raise ContextMismatch("characters live on different groups")


def trivial_character(G, field):
    v = np.zeros((field.q ** len(G), field.p), dtype=np.int64)
    v[:, 0] = 1
    return CharacterFn(G, field, v)


def regular_character(G, field):
    v = np.zeros((field.q ** len(G), field.p), dtype=np.int64)
    v[0, 0] = field.q ** len(G)
    return CharacterFn(G, field, v)


def class_characters(split, G, classes, n_classes, codes=None, limit=None):
    """Characters over U_G of the submodules spanned by each label class.

    classes[l] is the class of the l-th label in `codes`; every class must be
    a union of U_G-orbits.  Returns a list of CharacterFn.
    """
    F = split.field
    size = F.q ** len(G)
    check_size(f"U_G with |G|={len(G)}", size, limit or ENUMERATION_CAP)
    tables = generator_tables(split, G, codes)
    M = len(codes) if codes is not None else monomial_action(split).space.size
    classes = np.asarray(classes, dtype=np.int64)

    def reducer(perm, exps):
        return K.fixed_counts(perm, exps, classes, n_classes, F.p)

    vals = walk_group(G, F, tables, M, reducer)
    return [CharacterFn(G, F, vals[:, c, :]) for c in range(n_classes)]


def orbit_character(orbit, G):
    """Character over U_G of the span of an orbit."""
    chars = class_characters(orbit.split, G, np.zeros(orbit.size, dtype=np.int64), 1, orbit.codes)
    return chars[0]


def module_character(split, G):
    """Character over U_G of the whole monomial module C E_J."""
    act = monomial_action(split)
    return class_characters(split, G, np.zeros(act.space.size, dtype=np.int64), 1)[0]


def partition_characters(part, G):
    """One character over U_G per orbit of a partition of E_J."""
    return class_characters(part.split, G, part.orbit_of, part.count)


def inner_product(chi, psi):
    """(1/|G|) sum_g chi(g) conj(psi(g)), as an exact Fraction."""
    _check_context(chi, psi)
    p = chi.p
    acc = chi.values.T @ psi.values  # acc[k, l]: zeta^(k - l)
    folded = np.zeros(p, dtype=np.int64)
    for k in range(p):
        for l in range(p):
            folded[(k - l) % p] += acc[k, l]
    c = canonical(folded)
    if p > 2 and np.any(c[1:] != 0):
        raise NonIntegralSum(f"character sum {folded.tolist()} is not rational")
    total = int(c[0]) if p > 2 else int(folded[0] - folded[1])
    return Fraction(total, len(chi.values))
