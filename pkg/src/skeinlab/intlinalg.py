"""Exact integer lattice algorithms: HNF, SNF, kernels of forms mod N,
sublattice indices, and the skew normal form used to split quantum tori
into Weyl pairs.

Matrices are lists of lists of Python ints; all arithmetic is exact.
Eliminations use extended-gcd (Blankinship) two-row/two-column unimodular
transforms, which keep coefficient growth tame at the <=60x60 scale used
here.
"""

from __future__ import annotations

from math import gcd, isqrt


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                row = out[i]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _egcd(a, b):
    """(g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _det_via_snf(A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of non-square matrix")
    D, _, _ = smith_normal_form(A)
    det = 1
    for i in range(n):
        det *= D[i][i]
    return det


def is_unimodular(A):
    return abs(_det_via_snf(A)) == 1


# ---------------------------------------------------------------------------
# Hermite normal form (row style)


def hnf(rows):
    """HNF basis of the row span: echelon, positive pivots, reduced above."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        # gcd-combine rows r.. so that A[r][c] = gcd and the rest are 0
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            if A[r][c] == 0:
                A[r], A[i] = A[i], A[r]
                continue
            if A[i][c] % A[r][c] == 0:
                q = A[i][c] // A[r][c]
                A[i] = [v - q * u for u, v in zip(A[r], A[i])]
                continue
            g, x, y = _egcd(A[r][c], A[i][c])
            pr, pi = A[r][c] // g, A[i][c] // g
            A[r], A[i] = (
                [x * u + y * v for u, v in zip(A[r], A[i])],
                [-pi * u + pr * v for u, v in zip(A[r], A[i])],
            )
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-u for u in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r] if any(row)]


def row_span_equal(rows_a, rows_b) -> bool:
    return hnf(rows_a) == hnf(rows_b)


# ---------------------------------------------------------------------------
# Smith normal form with transforms


def smith_normal_form(M):
    """Return (D, U, V) with D = U*M*V, U and V unimodular, D diagonal
    with a divisibility chain d_i | d_{i+1} and nonnegative entries."""
    A = [list(r) for r in M]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = identity(nr)
    V = identity(nc)

    def rows_mix(i, j, a, b, c, d):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
        A[i], A[j] = (
            [a * u + b * v for u, v in zip(A[i], A[j])],
            [c * u + d * v for u, v in zip(A[i], A[j])],
        )
        U[i], U[j] = (
            [a * u + b * v for u, v in zip(U[i], U[j])],
            [c * u + d * v for u, v in zip(U[i], U[j])],
        )

    def cols_mix(i, j, a, b, c, d):
        for row in (*A, *V):
            u, v = row[i], row[j]
            row[i], row[j] = a * u + b * v, c * u + d * v

    def clear_position(t):
        """Make column t and row t zero outside (t, t)."""
        changed = True
        while changed:
            changed = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    if A[t][t] == 0:
                        rows_mix(t, i, 0, 1, 1, 0)  # swap (det -1 is fine)
                    elif A[i][t] % A[t][t] == 0:
                        rows_mix(t, i, 1, 0, -(A[i][t] // A[t][t]), 1)
                    else:
                        g, x, y = _egcd(A[t][t], A[i][t])
                        pt, pi = A[t][t] // g, A[i][t] // g
                        rows_mix(t, i, x, y, -pi, pt)
                    changed = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    if A[t][t] == 0:
                        cols_mix(t, j, 0, 1, 1, 0)
                    elif A[t][j] % A[t][t] == 0:
                        cols_mix(t, j, 1, 0, -(A[t][j] // A[t][t]), 1)
                    else:
                        g, x, y = _egcd(A[t][t], A[t][j])
                        pt, pj = A[t][t] // g, A[t][j] // g
                        cols_mix(t, j, x, y, -pj, pt)
                    changed = True

    t = 0
    while t < min(nr, nc):
        # bring some nonzero entry into (t, t)
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] != 0 and (
                    piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])
                ):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            rows_mix(t, piv[0], 0, 1, 1, 0)
        if piv[1] != t:
            cols_mix(t, piv[1], 0, 1, 1, 0)
        clear_position(t)
        # enforce divisibility of the trailing block
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if A[i][j] % A[t][t] != 0:
                    offender = (i, j)
                    break
            if offender is not None:
                break
        if offender is not None:
            rows_mix(t, offender[0], 1, 1, 0, 1)
            clear_position(t)
            continue
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def int_rank(M):
    D, _, _ = smith_normal_form(M)
    return sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i] != 0)


def solve_integer(M, b):
    """One integer solution x of M x = b, or None."""
    D, U, V = smith_normal_form(M)
    nr = len(M)
    nc = len(M[0]) if nr else 0
    c = mat_vec(U, b)
    y = [0] * nc
    for i in range(nr):
        d = D[i][i] if i < min(nr, nc) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return mat_vec(V, y)


# ---------------------------------------------------------------------------
# Kernels of integer maps modulo N


def kernel_mod(M, N):
    """HNF basis (rows) of {a in Z^c : M a == 0 mod N}. Contains N*Z^c."""
    if N < 1:
        raise ValueError("modulus must be >= 1")
    nr = len(M)
    nc = len(M[0]) if nr else 0
    if nc == 0:
        return []
    D, _, V = smith_normal_form(M)
    gens = []
    for j in range(nc):
        d = D[j][j] if j < min(nr, nc) else 0
        scale = N // gcd(d, N)
        gens.append([V[i][j] * scale for i in range(nc)])
    return hnf(gens)


# ---------------------------------------------------------------------------
# Sublattice membership and index


def lattice_contains(basis_rows, vec) -> bool:
    return lattice_coordinates(basis_rows, vec) is not None


def lattice_coordinates(basis_rows, vec):
    """Integer coordinates of vec in the given row basis, or None."""
    if not basis_rows:
        return [] if not any(vec) else None
    return solve_integer(transpose(basis_rows), list(vec))


def sublattice_index(big_rows, sub_rows):
    """Index [L:S] for S spanned by sub_rows inside L spanned by big_rows.

    Returns a positive int, or None (infinite index) when rank drops.
    Raises ValueError when S is not contained in L.
    """
    coords = []
    for v in sub_rows:
        c = lattice_coordinates(big_rows, v)
        if c is None:
            raise ValueError("sublattice basis vector outside the ambient lattice")
        coords.append(c)
    if int_rank(coords) < len(big_rows):
        return None
    D, _, _ = smith_normal_form(coords)
    idx = 1
    for i in range(len(big_rows)):
        idx *= D[i][i]
    return abs(idx)


def perfect_square_root(n):
    r = isqrt(n)
    return r if r * r == n else None


def reduce_mod_rows(vec, hnf_rows):
    """Canonical coset representative of vec modulo a full-rank HNF row
    lattice: sweep each pivot and floor-reduce."""
    v = list(vec)
    for row in hnf_rows:
        piv = next((i for i, x in enumerate(row) if x), None)
        if piv is None:
            continue
        q = v[piv] // row[piv]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


# ---------------------------------------------------------------------------
# Skew normal form


def skew_normal_form(F):
    """Unimodular P and invariants d_1..d_r with P^T F P hyperbolic.

    P^T F P = diag([[0, d_1], [-d_1, 0]], ..., [[0, d_r], [-d_r, 0]], 0).
    The columns of P are the new basis: pairs (u_i, v_i) then the radical.
    """
    n = len(F)
    for i in range(n):
        for j in range(n):
            if F[i][j] != -F[j][i]:
                raise ValueError("matrix is not skew-symmetric")
    A = [list(r) for r in F]
    P = identity(n)

    def basis_mix(i, j, a, b, c, d):
        # congruence: (e_i, e_j) <- (a e_i + b e_j, c e_i + d e_j)
        for row in (*A, *P):
            u, v = row[i], row[j]
            row[i], row[j] = a * u + b * v, c * u + d * v
        A[i], A[j] = (
            [a * u + b * v for u, v in zip(A[i], A[j])],
            [c * u + d * v for u, v in zip(A[i], A[j])],
        )

    t = 0
    blocks = []
    while True:
        piv = None
        for i in range(t, n):
            for j in range(t, n):
                if A[i][j] != 0 and (
                    piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])
                ):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        if i != t:
            basis_mix(i, t, 0, 1, 1, 0)
            if j == t:
                j = i
        if j != t + 1:
            basis_mix(j, t + 1, 0, 1, 1, 0)
        if A[t][t + 1] < 0:
            basis_mix(t, t + 1, 1, 0, 0, -1)
        # clear pairings of u_t, v_t with the other basis vectors
        changed = True
        while changed:
            changed = False
            for r in range(t + 2, n):
                if A[t][r]:
                    d = A[t][t + 1]
                    if A[t][r] % d == 0:
                        # shear e_r by v_t: kills (u, e_r), leaves u, v alone
                        basis_mix(t + 1, r, 1, 0, -(A[t][r] // d), 1)
                    else:
                        # mix v_t with e_r: (u, v) becomes gcd, (u, e_r) becomes 0
                        g, x, y = _egcd(d, A[t][r])
                        pv, pr = d // g, A[t][r] // g
                        basis_mix(t + 1, r, x, y, -pr, pv)
                    changed = True
                if A[t + 1][r]:
                    d = A[t][t + 1]
                    if A[t + 1][r] % d == 0:
                        # shear e_r by u_t: kills (v, e_r), leaves u, v alone
                        basis_mix(t, r, 1, 0, A[t + 1][r] // d, 1)
                    else:
                        g, x, y = _egcd(d, -A[t + 1][r])
                        pu, pr = d // g, (-A[t + 1][r]) // g
                        basis_mix(t, r, x, y, -pr, pu)
                    changed = True
            if A[t][t + 1] < 0:
                basis_mix(t, t + 1, 1, 0, 0, -1)
        blocks.append(A[t][t + 1])
        t += 2

    # verify the congruence exactly
    check = mat_mul(mat_mul(transpose(P), [list(r) for r in F]), P)
    for i in range(n):
        for j in range(n):
            expect = 0
            if i < 2 * len(blocks) and j < 2 * len(blocks) and i // 2 == j // 2:
                if j == i + 1:
                    expect = blocks[i // 2]
                elif j == i - 1:
                    expect = -blocks[j // 2]
            if check[i][j] != expect:
                raise AssertionError("skew normal form verification failed")
    return P, blocks
