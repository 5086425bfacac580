import itertools

import numpy as np
import pytest

import oracles
from flagchar import pattern as pt
from flagchar.combinat import Composition, RootSet, Tableau, compositions, enumerate_rstd, root_sets
from flagchar.errors import Singular
from flagchar.field import fq_make
from flagchar.flags import (
    bullet,
    enumerate_X_s,
    flag_count,
    fstar_expand,
    gaussian_binomial,
    is_normal,
    lambda_normal_form,
    model,
    perm_matrix,
    u_from_du,
)

F2, F3 = fq_make(2), fq_make(3)


def gl_generators(n, F):
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                g = np.eye(n, dtype=np.int64)
                g[i, j] = 1
                gens.append(g)
    for a in F.nonzero():
        g = np.eye(n, dtype=np.int64)
        g[0, 0] = a
        gens.append(g)
    return gens


def normal_forms(lam, F):
    """Orbit of E under the bullet action of generators of GL_n."""
    lam = Composition(tuple(lam))
    n = lam.n
    start = lambda_normal_form(np.eye(n, dtype=np.int64), lam, F)
    seen = {start.A.tobytes(): start}
    frontier = [start]
    gens = gl_generators(n, F)
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = bullet(A, g, field=F)
                if B.A.tobytes() not in seen:
                    seen[B.A.tobytes()] = B
                    nxt.append(B)
        frontier = nxt
    return list(seen.values())


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_normal_form_count_equals_flag_count(n, p):
    F = fq_make(p)
    for lam in compositions(n):
        if p == 3 and n == 4 and len(lam) > 2:
            continue  # covered by the acceptance suite; keeps this file quick
        nfs = normal_forms(lam.parts, F)
        count = len(nfs)
        assert count == flag_count(lam, p)
        assert count == oracles.flag_chain_count(lam.parts, p)
        assert count == sum(p ** len(root_sets(s).J) for s in enumerate_rstd(lam))
        assert all(is_normal(x.A, lam, F) for x in nfs)


def test_gl3_examples():
    lam = (2, 1)
    mats = [np.array(m).reshape(3, 3) for m in itertools.product(range(2), repeat=9)]
    inv = [m for m in mats if round(abs(np.linalg.det(m))) % 2]
    assert len(inv) == 168
    forms = {lambda_normal_form(m, lam, F2).A.tobytes() for m in inv}
    assert len(forms) == gaussian_binomial(3, 1, 2) == 7
    E = np.eye(3, dtype=np.int64)
    nf = lambda_normal_form(E, lam, F2)
    assert np.array_equal(nf.A, E) and nf.tab == Tableau.initial(Composition(lam))
    with pytest.raises(Singular):
        lambda_normal_form(np.zeros((3, 3), dtype=np.int64), lam, F2)


@pytest.mark.parametrize("lam", [(2, 1), (1, 2), (1, 1, 1)])
def test_left_parabolic_invariance(lam):
    """nf(pA) = nf(A) for p in the block upper triangular P_lambda (exhaustive n=3, q=2)."""
    lam_c = Composition(lam)
    blocks = [lam_c.compartment(r + 1) for r in range(3)]
    mats = [np.array(m).reshape(3, 3) for m in itertools.product(range(2), repeat=9)]
    inv = [m for m in mats if round(abs(np.linalg.det(m))) % 2]
    P = [m for m in inv if all(m[r, c] == 0 for r in range(3) for c in range(3) if blocks[c] < blocks[r])]
    rng = np.random.default_rng(0)
    for A in inv:
        base = lambda_normal_form(A, lam, F2).A
        for k in rng.choice(len(P), 5):
            assert np.array_equal(lambda_normal_form(F2.matmul(P[k], A), lam, F2).A, base)


def test_bullet_is_right_action():
    lam = (2, 1)
    mats = [np.array(m).reshape(3, 3) for m in itertools.product(range(2), repeat=9)]
    inv = [m for m in mats if round(abs(np.linalg.det(m))) % 2]
    forms = normal_forms(lam, F2)
    rng = np.random.default_rng(3)
    for A in forms:
        assert bullet(A, np.eye(3, dtype=np.int64), field=F2) == A
        for _ in range(10):
            g, h = inv[rng.integers(len(inv))], inv[rng.integers(len(inv))]
            assert bullet(bullet(A, g, field=F2), h, field=F2) == bullet(A, F2.matmul(g, h), field=F2)


def test_u_orbits_on_normal_forms():
    """U acting on the 7 (2,1)-flags: orbits of sizes 1, 2, 4 (one per tableau)."""
    forms = normal_forms((2, 1), F2)
    U = pt.group_elements(RootSet.negative(3), F2)
    seen = set()
    sizes = {}
    for A in forms:
        if A.key() in seen:
            continue
        orbit = {bullet(A, u, field=F2).key() for u in U}
        seen |= orbit
        sizes[A.tab.sbar] = len(orbit)
    assert sorted(sizes.values()) == [1, 2, 4]
    assert sizes == {(1,): 1, (2,): 2, (3,): 4}


def test_X_s_sizes():
    s = Tableau(Composition((2, 2, 2)), [(1, 3), (2, 4), (5, 6)])
    assert len(root_sets(s).J) == 11
    assert len(enumerate_X_s(Tableau.initial(Composition((4,))), F2)) == 1
    for n in range(2, 6):
        for m in range(1, n):
            total = sum(len(enumerate_X_s(s, F2)) for s in enumerate_rstd((n - m, m)))
            assert total == gaussian_binomial(n, m, 2)


def test_X_s_elements_are_normal_with_tableau_s():
    for s in enumerate_rstd((2, 2)):
        X = enumerate_X_s(s, F3)
        for A in X.matrices[:: max(1, len(X) // 10)]:
            nf = lambda_normal_form(A, s.shape, F3)
            assert np.array_equal(nf.A, A) and nf.tab == s
            assert np.array_equal(A, F3.matmul(perm_matrix(s), u_from_du(s, A)))


def test_fstar_expand():
    s = Tableau.from_sbar(4, (3, 4))
    J = root_sets(s).J
    zero = np.zeros((4, 4), dtype=np.int64)
    exps, k = fstar_expand(zero, s, F3)
    assert k == len(J) and not np.any(exps)
    A = zero.copy()
    A[2, 0] = 2
    exps, _ = fstar_expand(A, s, F3)
    assert exps[0] == 0  # the coefficient at u = E is q^-|J|


def test_model_sigma_matches_bullet():
    s = Tableau.from_sbar(4, (2, 4))
    M = model(s, F2)
    U = pt.group_elements(RootSet.negative(4), F2)
    rng = np.random.default_rng(0)
    for k in rng.choice(len(U), 6):
        sig = M.sigma_of(U[k])
        # composing generator permutations along the row-major factorisation
        perm = np.arange(M.N)
        for (i, j) in RootSet.negative(4).sorted:
            a = int(U[k][i - 1, j - 1])
            if a:
                perm = M.sigma((i, j), a)[perm]
        assert np.array_equal(perm, sig)


def test_model_v_B_spans_orbit_characters():
    s = Tableau.from_sbar(4, (3, 4))
    M = model(s, F2)
    part = M.orbit_partition()
    assert M.stable_classes(part.orbit_of)
    # a random regrouping of labels into two classes is not U-stable
    bad = np.zeros(M.N, dtype=np.int64)
    bad[1::2] = 1
    assert not M.stable_classes(bad)
