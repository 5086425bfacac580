"""Hot loops, each in a numba and a pure-numpy flavour.

Set FLAGCHAR_NO_NUMBA=1 to force the numpy versions.  Both flavours return
identical arrays; tests/test_kernels.py checks this.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def numba_enabled():
    return HAVE_NUMBA and os.environ.get("FLAGCHAR_NO_NUMBA", "") not in ("1", "true", "yes")


# -- label updates ---------------------------------------------------------


def apply_updates_np(digits, tgt, src, coef, sidx, scoef, add_t, mul_t, theta_t):
    """One truncated row/column operation on a batch of digit vectors.

    digits: (M, m) field elements.  new[:, tgt[k]] += coef[k] * old[:, src[k]].
    The scalar exponent is theta(scoef * old[:, sidx]) (0 when sidx < 0).
    """
    new = digits.copy()
    if len(tgt):
        new[:, tgt] = add_t[digits[:, tgt], mul_t[coef[None, :], digits[:, src]]]
    if sidx >= 0:
        exps = theta_t[mul_t[scoef, digits[:, sidx]]].astype(np.int64)
    else:
        exps = np.zeros(len(digits), dtype=np.int64)
    return new, exps


def encode_np(digits, q):
    code = np.zeros(len(digits), dtype=np.int64)
    for k in range(digits.shape[1]):
        code = code * q + digits[:, k]
    return code


def decode_np(codes, m, q, dtype=np.int16):
    out = np.empty((len(codes), m), dtype=dtype)
    rest = np.asarray(codes, dtype=np.int64).copy()
    for k in range(m - 1, -1, -1):
        out[:, k] = rest % q
        rest //= q
    return out


def partition_np(images):
    """Orbit labels (smallest member index) for the group generated by the
    permutations in `images` (shape (G, M))."""
    M = images.shape[1]
    label = np.arange(M, dtype=np.int64)
    while True:
        old = label.copy()
        for img in images:
            np.minimum.at(label, img, label)
            label = np.minimum(label, label[img])
        # pointer jumping
        while True:
            nxt = label[label]
            if np.array_equal(nxt, label):
                break
            label = nxt
        if np.array_equal(old, label):
            return label


def fourier_counts_np(theta_mat, sigma, p):
    """counts[B, k] = #{u : theta[B, sigma[u]] - theta[B, u] = k mod p}."""
    N = theta_mat.shape[0]
    diff = (theta_mat[:, sigma] - theta_mat) % p
    flat = diff + p * np.arange(N)[:, None]
    return np.bincount(flat.ravel(), minlength=N * p).reshape(N, p)


def fixed_counts_np(perm, exps, classes, n_classes, p):
    """counts[b, c, k] = #{l : perm[b,l] = l, classes[l] = c, exps[b,l] = k}."""
    B, M = perm.shape
    fixed = perm == np.arange(M)[None, :]
    b_idx, l_idx = np.nonzero(fixed)
    flat = (b_idx * n_classes + classes[l_idx]) * p + exps[b_idx, l_idx]
    return np.bincount(flat, minlength=B * n_classes * p).reshape(B, n_classes, p)


# -- numba twins -----------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _apply_updates_nb(digits, tgt, src, coef, sidx, scoef, add_t, mul_t, theta_t):
        M, m = digits.shape
        new = digits.copy()
        exps = np.zeros(M, dtype=np.int64)
        for r in range(M):
            for k in range(len(tgt)):
                new[r, tgt[k]] = add_t[digits[r, tgt[k]], mul_t[coef[k], digits[r, src[k]]]]
            if sidx >= 0:
                exps[r] = theta_t[mul_t[scoef, digits[r, sidx]]]
        return new, exps

    @numba.njit(cache=True)
    def _encode_nb(digits, q):
        M, m = digits.shape
        out = np.zeros(M, dtype=np.int64)
        for r in range(M):
            c = 0
            for k in range(m):
                c = c * q + digits[r, k]
            out[r] = c
        return out

    @numba.njit(cache=True)
    def _decode_nb(codes, m, q):
        M = len(codes)
        out = np.empty((M, m), dtype=np.int16)
        for r in range(M):
            c = codes[r]
            for k in range(m - 1, -1, -1):
                out[r, k] = c % q
                c //= q
        return out

    @numba.njit(cache=True)
    def _find(parent, x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    @numba.njit(cache=True)
    def _partition_nb(images):
        G, M = images.shape
        parent = np.arange(M)
        for g in range(G):
            for x in range(M):
                a = _find(parent, x)
                b = _find(parent, images[g, x])
                if a != b:
                    if a < b:
                        parent[b] = a
                    else:
                        parent[a] = b
        label = np.empty(M, dtype=np.int64)
        for x in range(M):
            label[x] = _find(parent, x)
        return label

    @numba.njit(cache=True)
    def _fourier_counts_nb(theta_mat, sigma, p):
        N = theta_mat.shape[0]
        counts = np.zeros((N, p), dtype=np.int64)
        for b in range(N):
            for u in range(N):
                k = (theta_mat[b, sigma[u]] - theta_mat[b, u]) % p
                counts[b, k] += 1
        return counts

    @numba.njit(cache=True)
    def _fixed_counts_nb(perm, exps, classes, n_classes, p):
        B, M = perm.shape
        counts = np.zeros((B, n_classes, p), dtype=np.int64)
        for b in range(B):
            for l in range(M):
                if perm[b, l] == l:
                    counts[b, classes[l], exps[b, l]] += 1
        return counts


# -- dispatch --------------------------------------------------------------


def apply_updates(digits, tgt, src, coef, sidx, scoef, add_t, mul_t, theta_t):
    if numba_enabled():
        return _apply_updates_nb(digits, tgt, src, coef, sidx, scoef, add_t, mul_t, theta_t)
    return apply_updates_np(digits, tgt, src, coef, sidx, scoef, add_t, mul_t, theta_t)


def encode(digits, q):
    digits = np.ascontiguousarray(digits)
    if numba_enabled():
        return _encode_nb(digits, q)
    return encode_np(digits, q)


def decode(codes, m, q):
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    if numba_enabled():
        return _decode_nb(codes, m, q)
    return decode_np(codes, m, q)


def partition(images):
    images = np.ascontiguousarray(images, dtype=np.int64)
    if images.ndim != 2:
        raise ValueError("images must be (G, M)")
    if images.shape[0] == 0:
        return np.arange(images.shape[1], dtype=np.int64)
    if numba_enabled():
        return _partition_nb(images)
    return partition_np(images)


def fourier_counts(theta_mat, sigma, p):
    theta_mat = np.ascontiguousarray(theta_mat, dtype=np.int64)
    sigma = np.ascontiguousarray(sigma, dtype=np.int64)
    if numba_enabled():
        return _fourier_counts_nb(theta_mat, sigma, p)
    return fourier_counts_np(theta_mat, sigma, p)


def fixed_counts(perm, exps, classes, n_classes, p):
    perm = np.ascontiguousarray(perm, dtype=np.int64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    if numba_enabled():
        return _fixed_counts_nb(perm, exps, classes, n_classes, p)
    return fixed_counts_np(perm, exps, classes, n_classes, p)
