"""Matrices over F_q, pattern subgroups U_J, the projection rho onto U_L,
the 1-cocycle f and the dual action on V_J.

Matrices are integer numpy arrays with entries in [0, q).  Every function
broadcasts over leading batch axes so whole groups can be processed at once.
"""

from __future__ import annotations

import numpy as np

from .combinat import RootSet, is_closed, normality_check, root_sets
from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    NotClosed,
    ENUMERATION_CAP,
    check_size,
)


def identity(n):
    return np.eye(n, dtype=np.int64)


def x_root(n, i, j, alpha, field=None):
    """x_ij(alpha) = E + alpha e_ij."""
    g = identity(n)
    g[i - 1, j - 1] = int(alpha)
    return g


def mul(field, a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[-2]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return field.matmul(a, b)


def add(field, a, b):
    return np.asarray(field.add(np.asarray(a), np.asarray(b)), dtype=np.int64)


def sub(field, a, b):
    return np.asarray(field.sub(np.asarray(a), np.asarray(b)), dtype=np.int64)


def neg(field, a):
    return np.asarray(field.neg(np.asarray(a)), dtype=np.int64)


def minus_identity(field, g):
    """g - E."""
    n = g.shape[-1]
    return sub(field, g, np.broadcast_to(identity(n), g.shape))


def plus_identity(field, A):
    n = A.shape[-1]
    return add(field, A, np.broadcast_to(identity(n), A.shape))


def is_unitriangular(g):
    g = np.asarray(g)
    n = g.shape[-1]
    diag_ok = np.all(np.diagonal(g, axis1=-2, axis2=-1) == 1)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    return bool(diag_ok and not np.any(g[..., upper]))


def inverse(field, g):
    """Inverse of lower unitriangular matrices by forward substitution."""
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[-1]
    if g.shape[-2] != n:
        raise DimensionMismatch(f"not square: {g.shape}")
    h = np.zeros_like(g)
    h[..., range(n), range(n)] = 1
    # solve g h = E column by column; row i of g h: h_ik + sum_{l<i} g_il h_lk
    for i in range(1, n):
        acc = np.zeros(g.shape[:-2] + (n,), dtype=np.int64)
        for l in range(i):
            acc = add(field, acc, field.mul(g[..., i, l, None], h[..., l, :]))
        h[..., i, :] = sub(field, h[..., i, :], acc)
        h[..., i, i] = 1
    return h


def pi_truncate(A, J):
    """Zero every entry outside J."""
    A = np.asarray(A)
    return np.where(J.mask, A, 0).astype(np.int64)


def support(A):
    A = np.asarray(A)
    return RootSet(A.shape[-1], [(i + 1, j + 1) for i, j in zip(*np.nonzero(A))])


# -- group enumeration -----------------------------------------------------


def group_size(J, field):
    return field.q ** len(J)


def decode_digits(codes, m, q):
    """Base-q digits of codes, most significant first, shape (..., m)."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (m,), dtype=np.int64)
    rest = codes.copy()
    for k in range(m - 1, -1, -1):
        out[..., k] = rest % q
        rest //= q
    return out


def encode_digits(digits, q):
    digits = np.asarray(digits, dtype=np.int64)
    code = np.zeros(digits.shape[:-1], dtype=np.int64)
    for k in range(digits.shape[-1]):
        code = code * q + digits[..., k]
    return code


def elements_from_codes(J, field, codes):
    """Group elements of U_J with the given codes (see group_elements)."""
    codes = np.asarray(codes, dtype=np.int64)
    n = J.n
    digs = decode_digits(codes, len(J), field.q)
    g = np.broadcast_to(identity(n), codes.shape + (n, n)).copy()
    for k, (i, j) in enumerate(J.sorted):
        g[..., i - 1, j - 1] = digs[..., k]
    return g


def group_elements(J, field, limit=ENUMERATION_CAP):
    """All elements of U_J as an array (q^|J|, n, n).

    Element k is the ordered product of x_pos(alpha_pos) over the positions
    of J in row-major order, (alpha_pos) being the base-q digits of k with the
    first position most significant.  In row-major order no two factors
    interact, so the product is simply E + sum alpha_pos e_pos.
    """
    if not is_closed(J):
        raise NotClosed(f"{J} is not closed")
    size = check_size(f"U_J for |J|={len(J)}", group_size(J, field), limit)
    return elements_from_codes(J, field, np.arange(size))


def group_enumerate(J, field, limit=ENUMERATION_CAP):
    """Iterate over U_J in the order of group_elements."""
    yield from group_elements(J, field, limit)


def element_index(J, field, g):
    """Position of g in group_elements(J)."""
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[-1]
    entries = np.stack([g[..., i - 1, j - 1] for i, j in J.sorted], axis=-1) if len(J) else np.zeros(g.shape[:-2] + (0,), np.int64)
    rebuilt = elements_from_codes(J, field, encode_digits(entries, field.q))
    if not np.array_equal(rebuilt, g):
        raise ValueError("matrix is not in U_J")
    return encode_digits(entries, field.q)


# -- splits ----------------------------------------------------------------


class Split:
    """Root sets J, L with K = J u L satisfying the semidirect product hypothesis."""

    def __init__(self, J, L, field):
        if J.n != L.n:
            raise HypothesisViolated("J and L live in different dimensions")
        if not is_closed(J) or not is_closed(L):
            raise HypothesisViolated("J and L must both be closed")
        if not J.isdisjoint(L):
            raise HypothesisViolated("J and L must be disjoint")
        K = J | L
        if not is_closed(K) or not normality_check(J, K):
            raise HypothesisViolated("U_J is not normal in U_K")
        self.J = J
        self.L = L
        self.K = K
        self.n = J.n
        self.field = field

    @classmethod
    def from_tableau(cls, s, field):
        rs = root_sets(s)
        return cls(rs.J, rs.L, field)

    @classmethod
    def full(cls, n, field):
        return cls(RootSet.negative(n), RootSet(n), field)

    def __eq__(self, other):
        return (
            isinstance(other, Split)
            and (self.J, self.L, self.field) == (other.J, other.L, other.field)
        )

    def __hash__(self):
        return hash((self.J, self.L, self.field))

    def __repr__(self):
        return f"Split(J={list(self.J.sorted)}, L={list(self.L.sorted)}, q={self.field.q})"


def _check_split(split):
    if not isinstance(split, Split):
        raise HypothesisViolated(f"expected a Split, got {type(split).__name__}")


def rho(g, split):
    """Projection U_K -> U_L: keep the L-entries of g - E."""
    _check_split(split)
    F = split.field
    return plus_identity(F, pi_truncate(minus_identity(F, g), split.L))


def cocycle_f(g, split):
    """f(g) = rho(g^-1) g - E, an element of V_J."""
    _check_split(split)
    F = split.field
    ginv = inverse(F, g)
    return minus_identity(F, F.matmul(rho(ginv, split), g))


def circ_action(A, g, split):
    """A o g = rho(g^-1) A g."""
    _check_split(split)
    F = split.field
    return F.matmul(F.matmul(rho(inverse(F, g), split), A), g)


def dot_action(B, g, split):
    """B.g = pi_J(rho(g)^t B g^-t)."""
    _check_split(split)
    F = split.field
    rt = np.swapaxes(rho(g, split), -1, -2)
    ginvt = np.swapaxes(inverse(F, g), -1, -2)
    return pi_truncate(F.matmul(F.matmul(rt, B), ginvt), split.J)


def pairing(field, A, B):
    """Exponent k with theta(sum_ij A_ij B_ij) = zeta^k."""
    prod = field.mul(np.asarray(A), np.asarray(B))
    return np.asarray(field.theta(prod), dtype=np.int64).sum(axis=(-2, -1)) % field.p


def monomial_scalar(A, g, split):
    """Exponent of the scalar in e_A g: theta(-<A, f(g^-1)>)."""
    F = split.field
    f = cocycle_f(inverse(F, g), split)
    return (-pairing(F, A, f)) % F.p
