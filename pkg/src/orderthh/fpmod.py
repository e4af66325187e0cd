"""Dense linear algebra over F_p and presented modules with a nilpotent operator.

Two rank kernels: GF(2) uses packed bit rows (Python ints), odd p uses
vectorized numpy elimination on the short axis.  These carry the cost of the
brute-force homology oracle.
"""

from __future__ import annotations

import numpy as np


def rank_gf2(M) -> int:
    """Rank over F_2. M is a numpy array (entries 0/1) or list of lists."""
    M = np.asarray(M, dtype=np.int64) % 2
    if M.size == 0:
        return 0
    nr, nc = M.shape
    if nr > nc:
        M = M.T
        nr, nc = nc, nr
    # rows as ints; eliminate into a pivot table keyed by leading bit
    pivots = {}
    rank = 0
    weights = 1 << np.arange(nc, dtype=object)
    for i in range(nr):
        row = int((M[i].astype(object) * weights).sum())
        while row:
            lead = row.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= piv
    return rank


def rank_mod_p(M, p: int) -> int:
    """Rank of a dense matrix over F_p."""
    if p == 2:
        return rank_gf2(M)
    A = np.asarray(M, dtype=np.int64) % p
    if A.size == 0:
        return 0
    nr, nc = A.shape
    if nr > nc:
        A = A.T.copy()
        nr, nc = nc, nr
    A = A.copy()
    rank = 0
    for col in range(nc):
        if rank == nr:
            break
        sub = A[rank:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        rest = np.nonzero(A[rank + 1 :, col])[0]
        if rest.size:
            rows = rest + rank + 1
            A[rows] = (A[rows] - np.outer(A[rows, col], A[rank])) % p
        rank += 1
    return rank


def rref_mod_p(M, p):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return A, []
    nr, nc = A.shape
    pivots = []
    row = 0
    for col in range(nc):
        if row == nr:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        A[row] = A[row] * pow(int(A[row, col]), p - 2, p) % p
        others = np.nonzero(A[:, col])[0]
        for i in others:
            if i != row:
                A[i] = (A[i] - A[i, col] * A[row]) % p
        pivots.append(col)
        row += 1
    return A, pivots


def nullspace_mod_p(M, p):
    """Columns spanning the kernel of M over F_p."""
    A = np.asarray(M, dtype=np.int64) % p
    nr, nc = A.shape if A.ndim == 2 else (0, 0)
    if nc == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    free = [j for j in range(nc) if j not in pivots]
    basis = np.zeros((nc, len(free)), dtype=np.int64)
    for k, j in enumerate(free):
        basis[j, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-int(R[i, j])) % p
    return basis


def solve_mod_p(A, b, p):
    """One solution of A x = b over F_p, or None."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    nr = A.shape[0]
    aug = np.concatenate([A, b.reshape(nr, -1)], axis=1)
    R, pivots = rref_mod_p(aug, p)
    ncol = A.shape[1]
    for i in range(len(pivots)):
        if pivots[i] >= ncol:
            return None
    nrhs = b.reshape(nr, -1).shape[1]
    x = np.zeros((ncol, nrhs), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, ncol:]
    return x if b.ndim > 1 else x[:, 0]


def inv_mod_p(A, p):
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref_mod_p(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix not invertible mod p")
    return R[:, n:]


class PresentedFpModule:
    """A subquotient Z/B of F_p^N with a nilpotent operator ("pi") acting.

    Z (cycles) and B (boundaries) are matrices whose columns span the
    subspaces; pi is an N x N matrix with pi(Z) <= Z + ... (the action must
    preserve the subquotient).  Used for homology classes of mod-p complexes
    and spectral sequence pages.
    """

    def __init__(self, p, ambient_dim, cycles, boundaries, pi):
        self.p = p
        self.N = ambient_dim
        self.Z = np.asarray(cycles, dtype=np.int64).reshape(ambient_dim, -1) % p
        self.B = np.asarray(boundaries, dtype=np.int64).reshape(ambient_dim, -1) % p
        self.pi = np.asarray(pi, dtype=np.int64).reshape(ambient_dim, ambient_dim) % p
        self._build()

    def _build(self):
        p = self.p
        # incremental reduced echelon: stored columns have distinct pivot rows
        # and vanish at each other's pivots, so one reduction pass is exact
        ech = {}  # pivot row -> reduced column

        def try_add(v):
            v = v % p
            for row, col in ech.items():
                if v[row]:
                    v = (v - v[row] * col) % p
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                return False
            lead = int(nz[0])
            v = v * pow(int(v[lead]), p - 2, p) % p
            for row in list(ech):
                if ech[row][lead]:
                    ech[row] = (ech[row] - ech[row][lead] * v) % p
            ech[lead] = v
            return True

        cols = np.concatenate([self.B, self.Z], axis=1)
        chosen_b, chosen_c = [], []
        for j in range(cols.shape[1]):
            if try_add(cols[:, j].copy()):
                (chosen_b if j < self.B.shape[1] else chosen_c).append(j)
        self.b_rank = len(chosen_b)
        self.class_reps = cols[:, chosen_c]  # ambient vectors representing a basis
        self.dim = len(chosen_c)
        # complete to a basis of the ambient space for coordinate extraction
        full = np.concatenate([cols[:, chosen_b], self.class_reps], axis=1)
        for j in range(self.N):
            if full.shape[1] == self.N:
                break
            e = np.zeros((self.N, 1), dtype=np.int64)
            e[j, 0] = 1
            if try_add(e[:, 0].copy()):
                full = np.concatenate([full, e], axis=1)
        self._full_inv = inv_mod_p(full, self.p)

    def reduce(self, vec):
        """Class coordinates of an ambient cycle vector."""
        coords = self._full_inv @ (np.asarray(vec, dtype=np.int64) % self.p) % self.p
        if np.any(coords[self.b_rank + self.dim :] % self.p):
            raise ValueError("vector not in the cycle subspace")
        return coords[self.b_rank : self.b_rank + self.dim] % self.p

    def rep(self, class_coords):
        return self.class_reps @ (np.asarray(class_coords) % self.p) % self.p

    def pi_on_classes(self):
        """Matrix of the pi action on class coordinates."""
        cols = [self.reduce(self.pi @ self.class_reps[:, j] % self.p) for j in range(self.dim)]
        if not cols:
            return np.zeros((0, 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    def pi_lengths(self, fs_degree=1, cap=None):
        """Multiset of pi-torsion lengths over F_S[pi], F_S of F_p-degree fs_degree."""
        p = self.p
        pw = self.pi_on_classes()
        dims = [self.dim]
        M = np.eye(self.dim, dtype=np.int64)
        while dims[-1] > 0:
            M = M @ pw % p
            dims.append(rank_mod_p(M, p))
            if dims[-1] == dims[-2] and dims[-1] > 0:
                raise ValueError("operator is not nilpotent on this module")
            if cap is not None and len(dims) > cap + 1:
                break
        counts = []  # counts[j] = number of summands with length > j, over F_S
        for j in range(len(dims) - 1):
            c = (dims[j] - dims[j + 1])
            assert c % fs_degree == 0, "dimension not divisible by residue degree"
            counts.append(c // fs_degree)
        lengths = []
        for j in range(len(counts)):
            nxt = counts[j + 1] if j + 1 < len(counts) else 0
            lengths.extend([j + 1] * (counts[j] - nxt))
        return tuple(sorted(lengths, reverse=True))
