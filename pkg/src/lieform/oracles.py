"""Independent reference computations used to freeze and cross-check values.

Everything here works on dense numpy arrays or by brute-force enumeration and
shares no elimination code with the bitset kernels in ``gf2``.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np

from .algebra import AlgebraTable

# ---------------------------------------------------------------------------
# dense GF(2) linear algebra
# ---------------------------------------------------------------------------


def dense_rank(M: np.ndarray) -> int:
    """Rank over GF(2) by row reduction on a uint8 copy."""
    A = (np.asarray(M) & 1).astype(np.uint8).copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        hits = np.nonzero(A[:, c])[0]
        hits = hits[hits != r]
        A[hits] ^= A[r]
        r += 1
    return r


def dense_nullity(M: np.ndarray) -> int:
    return M.shape[1] - dense_rank(M)


def structure_tensor(L: AlgebraTable) -> np.ndarray:
    n = L.dim
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            v = L.products[i][j]
            for k in range(n):
                c[i, j, k] = (v >> k) & 1
    return c


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg differential on full tensors
# ---------------------------------------------------------------------------


def _action(L: AlgebraTable, kind: str) -> np.ndarray:
    """rho[x, out, in] for the module."""
    c = structure_tensor(L)
    if kind == "trivial":
        return np.zeros((L.dim, 1, 1), dtype=np.int64)
    # x . m = [x, m]
    return np.transpose(c, (0, 2, 1))


def _full_tensor(n: int, deg: int, dm: int, tup: tuple[int, ...], m: int) -> np.ndarray:
    """The alternating cochain equal to e_m on the basis tuple ``tup``."""
    T = np.zeros((n,) * deg + (dm,), dtype=np.int64)
    for perm in permutations(tup):
        T[perm + (m,)] = 1
    return T


def _d(phi: np.ndarray, c: np.ndarray, rho: np.ndarray, deg: int) -> np.ndarray:
    """(d phi)(x_0..x_deg) = sum_i x_i.phi(..^i..) + sum_{i<j} phi([x_i,x_j], ..^i..^j..)."""
    letters = "abcd"
    args = letters[: deg + 1]
    dphi = np.zeros((c.shape[0],) * (deg + 1) + (phi.shape[-1],), dtype=np.int64)
    for i in range(deg + 1):
        rest = args[:i] + args[i + 1 :]
        # rho[x_i, out, in] phi[rest, in]
        expr = f"{args[i]}zy,{rest}y->{args}z"
        dphi += np.einsum(expr, rho, phi)
    for i, j in combinations(range(deg + 1), 2):
        rest = "".join(a for k, a in enumerate(args) if k not in (i, j))
        expr = f"{args[i]}{args[j]}k,k{rest}z->{args}z"
        dphi += np.einsum(expr, c, phi)
    return dphi & 1


def dense_coboundary(L: AlgebraTable, kind: str, deg: int) -> np.ndarray:
    """Matrix of d: C^deg -> C^(deg+1), columns over increasing tuples x module basis."""
    if deg > 2:
        raise ValueError("dense route supports degrees 0..2")
    n = L.dim
    c = structure_tensor(L)
    rho = _action(L, kind)
    dm = rho.shape[1]
    src = list(combinations(range(n), deg))
    dst = list(combinations(range(n), deg + 1))
    M = np.zeros((len(dst) * dm, len(src) * dm), dtype=np.uint8)
    for s_idx, tup in enumerate(src):
        for m in range(dm):
            phi = _full_tensor(n, deg, dm, tup, m)
            dphi = _d(phi, c, rho, deg)
            col = s_idx * dm + m
            for t_idx, T in enumerate(dst):
                M[t_idx * dm : (t_idx + 1) * dm, col] = dphi[T]
    return M


def dense_cohomology_dim(L: AlgebraTable, kind: str, deg: int) -> int:
    """dim H^deg for deg <= 2 from dense matrices."""
    d_n = dense_coboundary(L, kind, deg)
    z = d_n.shape[1] - dense_rank(d_n)
    b = dense_rank(dense_coboundary(L, kind, deg - 1)) if deg > 0 else 0
    return z - b


# ---------------------------------------------------------------------------
# commutative algebras
# ---------------------------------------------------------------------------


def _mult_tensor(A: AlgebraTable) -> np.ndarray:
    return structure_tensor(A)


def brute_cyclic1(A: AlgebraTable, alternating: bool) -> int:
    """Count symmetric (alternating) forms with a(xy,z) + a(zx,y) + a(yz,x) = 0,
    by enumeration; returns the dimension."""
    n = A.dim
    pairs = [(i, j) for i in range(n) for j in range(i if not alternating else i + 1, n)]
    if len(pairs) > 22:
        raise ValueError("too many forms to enumerate")
    m = _mult_tensor(A)
    count = 0
    for mask in range(1 << len(pairs)):
        F = np.zeros((n, n), dtype=np.int64)
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                F[i, j] = F[j, i] = 1
        # a(xy, z) with xy = sum_k m[x,y,k] e_k
        t = np.einsum("xyk,kz->xyz", m, F)
        s = t + np.transpose(t, (2, 0, 1)) + np.transpose(t, (1, 2, 0))
        if not (s & 1).any():
            count += 1
    return count.bit_length() - 1


def dense_cyclic1(A: AlgebraTable, alternating: bool) -> int:
    """Same dimension via a dense constraint matrix."""
    n = A.dim
    pairs = [(i, j) for i in range(n) for j in range(i if not alternating else i + 1, n)]
    m = _mult_tensor(A)
    cols = []
    for i, j in pairs:
        F = np.zeros((n, n), dtype=np.int64)
        F[i, j] = F[j, i] = 1
        t = np.einsum("xyk,kz->xyz", m, F)
        s = (t + np.transpose(t, (2, 0, 1)) + np.transpose(t, (1, 2, 0))) & 1
        cols.append(s.reshape(-1))
    if not cols:
        return 0
    M = np.array(cols, dtype=np.uint8).T
    return M.shape[1] - dense_rank(M)


def brute_derivation_count(A: AlgebraTable) -> int:
    """dim Der(A) by testing every linear map (dim A <= 4)."""
    n = A.dim
    if n > 4:
        raise ValueError("enumeration limited to dimension 4")
    m = _mult_tensor(A)
    count = 0
    for mask in range(1 << (n * n)):
        D = np.array([(mask >> k) & 1 for k in range(n * n)], dtype=np.int64).reshape(n, n)  # D[in, out]
        lhs = np.einsum("abk,ko->abo", m, D)
        rhs = np.einsum("ak,kbo->abo", D, m) + np.einsum("bk,ako->abo", D, m)
        if not ((lhs + rhs) & 1).any():
            count += 1
    return count.bit_length() - 1


def dense_derivation_dim(L: AlgebraTable) -> int:
    """dim of {D : D(xy) = D(x)y + xD(y)} via a dense system (Lie or commutative)."""
    n = L.dim
    m = structure_tensor(L)
    cols = []
    for a in range(n):
        for o in range(n):
            D = np.zeros((n, n), dtype=np.int64)
            D[a, o] = 1
            lhs = np.einsum("xyk,ko->xyo", m, D)
            rhs = np.einsum("xk,kyo->xyo", D, m) + np.einsum("yk,xko->xyo", D, m)
            cols.append(((lhs + rhs) & 1).reshape(-1))
    M = np.array(cols, dtype=np.uint8).T
    return M.shape[1] - dense_rank(M)


def dense_harrison2(A: AlgebraTable) -> int:
    """dim of symmetric 2-cocycles a(y,z)x... modulo coboundaries, densely.

    Cocycle: x a(y,z) + a(xy,z) + a(x,yz) + a(x,y) z = 0.
    Coboundary of w: (x, y) -> x w(y) + w(xy) + w(x) y.
    """
    n = A.dim
    m = _mult_tensor(A)
    sym = [(i, j) for i in range(n) for j in range(i, n)]
    cols = []
    for (i, j), o in product(sym, range(n)):
        a = np.zeros((n, n, n), dtype=np.int64)
        a[i, j, o] = a[j, i, o] = 1
        t = (
            np.einsum("xko,yzk->xyzo", m, a)  # x * a(y, z)
            + np.einsum("xyk,kzo->xyzo", m, a)
            + np.einsum("yzk,xko->xyzo", m, a)
            + np.einsum("xyk,kzo->xyzo", a, m)  # a(x, y) * z
        )
        cols.append((t & 1).reshape(-1))
    Z = np.array(cols, dtype=np.uint8).T
    dimZ = Z.shape[1] - dense_rank(Z)
    cob = []
    for i, o in product(range(n), repeat=2):
        w = np.zeros((n, n), dtype=np.int64)
        w[i, o] = 1
        t = np.einsum("xko,yk->xyo", m, w) + np.einsum("xyk,ko->xyo", m, w) + np.einsum("xk,kyo->xyo", w, m)
        t &= 1
        cob.append(np.array([t[p, q, r] for (p, q) in sym for r in range(n)], dtype=np.uint8))
    B = np.array(cob, dtype=np.uint8).T
    return dimZ - dense_rank(B)


def brute_xi(A: AlgebraTable, D_images: tuple[int, ...], U_basis: tuple[int, ...]) -> list[int]:
    """All functionals xi (bitsets) meeting the admissibility conditions, by enumeration."""
    n = A.dim
    one = 1 << A.unit

    def mul(x, y):
        return A.mul(x, y)

    def D(x):
        out = 0
        for i in range(n):
            if (x >> i) & 1:
                out ^= D_images[i]
        return out

    def val(xi, x):
        return bin(xi & x).count("1") & 1

    span_u = {0}
    for u in U_basis:
        span_u |= {s ^ u for s in span_u}
    image_d = {0}
    for d in D_images:
        image_d |= {s ^ d for s in image_d}
    squares = {mul(1 << i, 1 << i) for i in range(n)}
    out = []
    for xi in range(1 << n):
        if any(val(xi, s) for s in squares | image_d | span_u):
            continue
        basis = [1 << i for i in range(n)]
        if any((D(b) if val(xi, a) else 0) ^ (D(a) if val(xi, b) else 0) not in span_u for a in basis for b in basis):
            continue

        def t(p, q):
            r = 0
            if val(xi, p):
                r ^= q
            if val(xi, q):
                r ^= p
            if val(xi, mul(p, q)):
                r ^= one
            return r

        ok = True
        for a, b, c in product(basis, repeat=3):
            if mul(t(a, b), D(c)) ^ mul(t(c, a), D(b)) ^ mul(t(b, c), D(a)):
                ok = False
                break
        if ok:
            out.append(xi)
    return out


# ---------------------------------------------------------------------------
# small Lie invariants by enumeration
# ---------------------------------------------------------------------------


def brute_invariant_forms(L: AlgebraTable) -> int:
    """dim of symmetric invariant forms by enumeration (dim L <= 5)."""
    n = L.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    if len(pairs) > 20:
        raise ValueError("too many forms to enumerate")
    c = structure_tensor(L)
    count = 0
    for mask in range(1 << len(pairs)):
        B = np.zeros((n, n), dtype=np.int64)
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                B[i, j] = B[j, i] = 1
        lhs = np.einsum("xyk,kz->xyz", c, B)  # B([x,y], z)
        rhs = np.einsum("yk,xzk->xyz", B, c)  # B(y, [x,z])
        if not ((lhs + rhs) & 1).any():
            count += 1
    return count.bit_length() - 1


def brute_zero_divisors(L: AlgebraTable) -> list[int]:
    """All x (bitsets) with (ad x)^2 = 0, one matrix product at a time."""
    n = L.dim
    c = structure_tensor(L)
    out = []
    for x in range(1 << n):
        coeffs = np.array([(x >> i) & 1 for i in range(n)], dtype=np.int64)
        ad = np.einsum("i,ijk->kj", coeffs, c) & 1  # ad[out, in]
        if not ((ad @ ad) & 1).any():
            out.append(x)
    return out


def brute_center_dim(L: AlgebraTable) -> int:
    n = L.dim
    c = structure_tensor(L)
    count = 0
    for x in range(1 << n):
        coeffs = np.array([(x >> i) & 1 for i in range(n)], dtype=np.int64)
        if not (np.einsum("i,ijk->jk", coeffs, c) & 1).any():
            count += 1
    return count.bit_length() - 1


# ---------------------------------------------------------------------------
# exact clique search
# ---------------------------------------------------------------------------


def max_clique(adj: np.ndarray) -> int:
    """Size of a largest clique of a symmetric boolean adjacency matrix.

    Bron-Kerbosch with pivoting on Python int bitsets.
    """
    n = len(adj)
    nbr = [sum(1 << int(j) for j in np.nonzero(adj[i])[0] if j != i) for i in range(n)]
    best = 0

    def expand(size: int, P: int, X: int) -> None:
        nonlocal best
        if not P and not X:
            best = max(best, size)
            return
        if size + bin(P).count("1") <= best:
            return
        PX = P | X
        pivot = max(_bits(PX), key=lambda u: bin(P & nbr[u]).count("1"))
        cand = P & ~nbr[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(size + 1, P & nbr[v], X & nbr[v])
            P &= ~(1 << v)
            X |= 1 << v

    expand(0, (1 << n) - 1, 0)
    return best


def _bits(x: int):
    while x:
        yield (x & -x).bit_length() - 1
        x &= x - 1
