"""lambda-flags as lambda-normal matrices, the bullet action, the bases X_s
of the Mackey components M_s, and a concrete model of M_s as a U-module.

Rows of a matrix are split into compartments by the composition lambda: the
first lambda_1 rows form compartment 1, and so on.  A normal matrix has, in
every row i, a last nonzero entry 1 at column i.d ("the last one"), and the
column of a last one is zero in all other rows except rows of strictly lower
compartments.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import _kernels as Kn
from .combinat import Composition, Tableau, root_sets
from .errors import ContextMismatch, ENUMERATION_CAP, Singular, check_size
from .monomial import CharacterFn, LabelSpace, monomial_action, orbit_partition
from .pattern import Split, group_elements, identity, x_root


@dataclass(frozen=True)
class FlagMatrix:
    A: np.ndarray
    lam: Composition
    tab: Tableau

    @property
    def d(self):
        return self.tab.d

    def key(self):
        return self.A.tobytes()

    def __eq__(self, other):
        return isinstance(other, FlagMatrix) and self.lam == other.lam and np.array_equal(self.A, other.A)

    def __hash__(self):
        return hash((self.lam, self.A.tobytes()))


def _as_comp(lam):
    return lam if isinstance(lam, Composition) else Composition(tuple(lam))


def lambda_normal_form(A, lam, field):
    """The unique normal matrix in P_lambda A, by bottom-up row reduction."""
    lam = _as_comp(lam)
    M = np.array(A, dtype=np.int64) % field.q
    n = M.shape[0]
    if M.shape != (n, n) or lam.n != n:
        raise ContextMismatch(f"matrix of size {M.shape} does not match {lam}")
    F = field
    sums = lam.partial_sums
    pivots = [None] * n  # pivot column (0-based) of each row
    lower = []  # (row, pivot) of already reduced lower compartments
    for comp in range(len(lam) - 1, -1, -1):
        rows = list(range(sums[comp], sums[comp + 1]))
        # clear the pivot columns of lower compartments, rightmost first
        for r in rows:
            for lr, pc in sorted(lower, key=lambda t: -t[1]):
                c = M[r, pc]
                if c:
                    M[r] = F.sub(M[r], F.mul(c, M[lr]))
        # reverse echelon inside the compartment: pivot = rightmost nonzero
        done = []
        for r in rows:
            for dr, pc in done:
                c = M[r, pc]
                if c:
                    M[r] = F.sub(M[r], F.mul(c, M[dr]))
            nz = np.nonzero(M[r])[0]
            if len(nz) == 0:
                raise Singular("matrix is singular")
            pc = int(nz[-1])
            M[r] = F.mul(int(F.inv(int(M[r, pc]))), M[r])
            for dr, dpc in done:
                c = M[dr, pc]
                if c:
                    M[dr] = F.sub(M[dr], F.mul(c, M[r]))
            done.append((r, pc))
        # sort the compartment's rows by pivot column
        done.sort(key=lambda t: t[1])
        block = np.array([M[r] for r, _ in done])
        M[rows] = block
        for k, r in enumerate(rows):
            pivots[r] = done[k][1]
            lower.append((r, done[k][1]))
    tab_rows = [[pivots[r] + 1 for r in range(sums[c], sums[c + 1])] for c in range(len(lam))]
    return FlagMatrix(M, lam, Tableau(lam, tab_rows))


def bullet(F_or_A, g, lam=None, field=None):
    """A . g = normal form of A g."""
    if isinstance(F_or_A, FlagMatrix):
        lam = F_or_A.lam
        A = F_or_A.A
    else:
        A = F_or_A
    return lambda_normal_form(field.matmul(A, g), lam, field)


def is_normal(A, lam, field):
    try:
        return np.array_equal(lambda_normal_form(A, lam, field).A, np.asarray(A) % field.q)
    except Singular:
        return False


def perm_matrix(s):
    """The matrix of d(s): row k has its 1 in column k.d."""
    n = s.n
    d = np.zeros((n, n), dtype=np.int64)
    for k, x in enumerate(s.d):
        d[k, x - 1] = 1
    return d


def gaussian_binomial(n, k, q):
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def flag_count(lam, q):
    """Number of lambda-flags in F_q^n: a q-multinomial coefficient."""
    lam = _as_comp(lam)
    rest = lam.n
    total = 1
    for part in lam.parts:
        total *= gaussian_binomial(rest, part, q)
        rest -= part
    return total


# -- X_s -------------------------------------------------------------------


@dataclass
class SComponentBasis:
    s: Tableau
    J: object
    field: object
    matrices: np.ndarray  # (q^|J|, n, n): d u for u in U_J, in group_elements order

    def __len__(self):
        return len(self.matrices)


def enumerate_X_s(s, field, limit=ENUMERATION_CAP):
    rs = root_sets(s)
    check_size("X_s", field.q ** len(rs.J), limit)
    U = group_elements(rs.J, field, limit)
    d = perm_matrix(s)
    return SComponentBasis(s, rs.J, field, field.matmul(d[None], U))


def u_from_du(s, du):
    """Undo the row permutation: u[k.d] = (du)[k]."""
    u = np.empty_like(du)
    idx = np.array(s.d) - 1
    u[..., idx, :] = du
    return u


def fstar_expand(A, s, field):
    """Coefficients of f*(e_A) on the basis {P d u : u in U_J}.

    Returns (exps, denom_exp): the coefficient of the k-th u is
    q^(-denom_exp) zeta_p^exps[k], where exps[k] = -theta(<A, u - E>).
    """
    rs = root_sets(s)
    space = LabelSpace(rs.J, field)
    a = space.from_matrix(A).astype(np.int64)
    udig = space.all_digits().astype(np.int64)
    t = field.pair_t[a[None, :], udig].astype(np.int64).sum(axis=1) % field.p
    return (-t) % field.p, len(rs.J)


# -- the model of M_s ------------------------------------------------------


class SComponentModel:
    """M_s as a permutation module of U on U_J (via the bullet action), with
    the lidempotent vectors v_B = sum_u zeta^(-<B, u-E>) [u] inside it.

    Basis index k stands for u = E + (label with code k), i.e. the same
    encoding as the labels of V_J.
    """

    def __init__(self, s, field, limit=ENUMERATION_CAP):
        self.s = s
        self.field = field
        self.lam = s.shape
        self.n = s.n
        self.split = Split.from_tableau(s, field)
        self.J = self.split.J
        self.space = LabelSpace(self.J, field)
        self.N = check_size("X_s", self.space.size, limit)
        self.d = perm_matrix(s)
        digits = self.space.all_digits().astype(np.int64)
        self._u = self.space.to_matrix(digits) + identity(self.n)[None]
        # theta_mat[B, u] = theta(<B, u - E>)
        if self.space.m:
            self.theta_mat = (
                field.pair_t[digits[:, None, :], digits[None, :, :]].astype(np.int64).sum(axis=2) % field.p
            )
        else:
            self.theta_mat = np.zeros((1, 1), dtype=np.int64)

    @functools.lru_cache(maxsize=None)
    def sigma(self, pos, alpha):
        """Permutation of the basis induced by x_pos(alpha) via the bullet action."""
        g = x_root(self.n, pos[0], pos[1], alpha)
        F = self.field
        out = np.empty(self.N, dtype=np.int64)
        du = F.matmul(self.d[None], self._u)
        moved = F.matmul(du, g[None])
        for k in range(self.N):
            nf = lambda_normal_form(moved[k], self.lam, F)
            if nf.tab != self.s:
                raise ContextMismatch("bullet action left the s-component")
            u = u_from_du(self.s, nf.A)
            out[k] = self.space.code_of_matrix(u - identity(self.n))
        return out

    def sigma_of(self, g):
        """Permutation for an arbitrary invertible g (slow path, for tests)."""
        F = self.field
        out = np.empty(self.N, dtype=np.int64)
        du = F.matmul(self.d[None], self._u)
        moved = F.matmul(du, np.asarray(g)[None])
        for k in range(self.N):
            nf = lambda_normal_form(moved[k], self.lam, F)
            if nf.tab != self.s:
                raise ContextMismatch("bullet action left the s-component")
            out[k] = self.space.code_of_matrix(u_from_du(self.s, nf.A) - identity(self.n))
        return out

    def v(self, B_code):
        """Exponent vector of v_B (coefficient zeta^e at each basis element)."""
        return (-self.theta_mat[B_code]) % self.field.p

    def gen_tables(self, G):
        tables = []
        for pos in G.sorted:
            row = [None]
            for a in self.field.nonzero():
                row.append((self.sigma(pos, a), np.zeros(self.N, dtype=np.int64)))
            tables.append(row)
        return tables

    def permutation_character(self, G):
        from .monomial import walk_group

        F = self.field

        def reducer(perm, exps):
            fixed = (perm == np.arange(self.N)[None, :]).sum(axis=1)
            v = np.zeros((len(perm), F.p), dtype=np.int64)
            v[:, 0] = fixed
            return v

        vals = walk_group(G, F, self.gen_tables(G), self.N, reducer)
        return CharacterFn(G, F, vals)

    def class_characters(self, G, classes, n_classes):
        """Characters over U_G of span{v_B : B in class c}, c = 0..n_classes-1.

        chi_c(g) = N^-1 sum_{B in c} sum_u zeta^(theta[B, sigma_g u] - theta[B, u]).
        Division by N is checked to be exact.
        """
        from .monomial import walk_group

        F = self.field
        p = F.p
        onehot = np.zeros((n_classes, self.N), dtype=np.int64)
        onehot[np.asarray(classes), np.arange(self.N)] = 1

        def reducer(perm, exps):
            out = np.empty((len(perm), n_classes, p), dtype=np.int64)
            for b in range(len(perm)):
                out[b] = onehot @ Kn.fourier_counts(self.theta_mat, perm[b], p)
            return out

        vals = walk_group(G, F, self.gen_tables(G), self.N, reducer)
        vals = vals - vals[..., -1:]
        if np.any(vals % self.N):
            raise ContextMismatch("orbit character is not integral: the span is not U-stable")
        vals //= self.N
        return [CharacterFn(G, F, vals[:, c, :]) for c in range(n_classes)]

    def coefficients(self, B_codes, g_perm):
        """Fourier coefficients of v_B . g for each B in B_codes.

        Returns counts (len(B_codes), N, p): coefficient on v_C equals
        N^-1 sum_k counts[., C, k] zeta^k.
        """
        p = self.field.p
        inv = np.empty_like(g_perm)
        inv[g_perm] = np.arange(self.N)
        out = np.empty((len(B_codes), self.N, p), dtype=np.int64)
        for r, B in enumerate(B_codes):
            # (v_B g)[w] = zeta^(-theta[B, sigma^-1 w])
            e = (-self.theta_mat[B, inv]) % p
            tot = (self.theta_mat + e[None, :]) % p
            flat = tot + p * np.arange(self.N)[:, None]
            out[r] = np.bincount(flat.ravel(), minlength=self.N * p).reshape(self.N, p)
        return out

    def stable_classes(self, classes, G=None):
        """True iff every span{v_B : B in class} is stable under the generators of U_G."""
        from .combinat import RootSet

        G = G or RootSet.negative(self.n)
        classes = np.asarray(classes)
        for pos in G.sorted:
            for a in self.field.nonzero():
                coeff = self.coefficients(np.arange(self.N), self.sigma(pos, a))
                c = coeff - coeff[..., -1:]
                nonzero = np.any(c != 0, axis=2)  # (B, C)
                rows, cols = np.nonzero(nonzero)
                if np.any(classes[rows] != classes[cols]):
                    return False
        return True

    def orbit_partition(self):
        return orbit_partition(self.split)


def model(s, field):
    return _model(s, field)


@functools.lru_cache(maxsize=32)
def _model(s, field):
    return SComponentModel(s, field)
