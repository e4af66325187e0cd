"""Smith normal form over chain rings and homology of complexes of free modules.

Three coefficient contexts share one elimination routine:

  * FieldCtx        -- F_q, nilpotency cap 1
  * TruncPolyCtx    -- F_q[pi]/(pi^d), an exact finite chain ring
  * EisQuotCtx      -- S mod p^K = S/(pi^(dK)), a finite-precision model of
                       the discrete valuation ring S

Every nonzero element factors as pi^v * unit with exact division, so
elimination zeroes entries in one subtraction.  Homology comes in two modes:
"exact" treats the matrices as genuine maps of modules over the finite chain
ring (partial kernels pi^(cap-v) included); "lift" treats them as a
finite-precision picture of free modules over the valuation ring itself, so
kernels keep only the columns whose diagonal entry vanishes at this precision.
Results near the cap carry an at-precision-cap marker in lift mode.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import FqField
from .local import EisensteinExt, Tower


class FieldCtx:
    """F_q as a degenerate chain ring (cap = 1)."""

    exact_ring = True

    def __init__(self, fq: FqField):
        self.fq = fq
        self.cap = 1
        self.residue_fp_degree = fq.r

    def zero(self):
        return self.fq.zero()

    def one(self):
        return self.fq.one()

    def from_int(self, a):
        return self.fq.from_int(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def val(self, a):
        return 1 if a.is_zero() else 0

    def pi_pow(self, k):
        return self.fq.one() if k == 0 else self.fq.zero()

    def unit_part(self, a):
        return a

    def inv_unit(self, a):
        return a.inverse()

    def divide(self, b, a):
        return b * a.inverse()


class TruncPolyCtx:
    """F_q[pi]/(pi^d); elements are tuples of FqElem of length d."""

    exact_ring = True

    def __init__(self, fq: FqField, d: int):
        self.fq = fq
        self.d = d
        self.cap = d
        self.residue_fp_degree = fq.r

    def zero(self):
        return (self.fq.zero(),) * self.d

    def one(self):
        return (self.fq.one(),) + (self.fq.zero(),) * (self.d - 1)

    def from_int(self, a):
        return (self.fq.from_int(a),) + (self.fq.zero(),) * (self.d - 1)

    def elem(self, coeffs):
        c = list(coeffs)[: self.d]
        c += [self.fq.zero()] * (self.d - len(c))
        return tuple(c)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        out = [self.fq.zero()] * self.d
        for i, x in enumerate(a):
            if not x.is_zero():
                for j, y in enumerate(b):
                    if i + j < self.d:
                        out[i + j] = out[i + j] + x * y
        return tuple(out)

    def is_zero(self, a):
        return all(x.is_zero() for x in a)

    def val(self, a):
        for j, x in enumerate(a):
            if not x.is_zero():
                return j
        return self.cap

    def pi_pow(self, k):
        if k >= self.d:
            return self.zero()
        out = [self.fq.zero()] * self.d
        out[k] = self.fq.one()
        return tuple(out)

    def unit_part(self, a):
        v = self.val(a)
        if v >= self.cap:
            return self.one()
        return a[v:] + (self.fq.zero(),) * v

    def inv_unit(self, a):
        # a = c (1 + h) with h nilpotent; inverse = c^-1 sum (-h)^k
        cinv = a[0].inverse()
        h = (self.fq.zero(),) + tuple(x * cinv for x in a[1:])
        neg_h = self.neg(h)
        acc = self.one()
        term = self.one()
        for _ in range(1, self.d):
            term = self.mul(term, neg_h)
            acc = self.add(acc, term)
        return tuple(x * cinv for x in acc)

    def divide(self, b, a):
        va = self.val(a)
        vb = self.val(b)
        if vb < va:
            raise ValueError("division not exact in chain ring")
        if vb >= self.cap:
            return self.zero()
        return self.mul(
            self.mul(self.pi_pow(vb - va), self.unit_part(b)),
            self.inv_unit(self.unit_part(a)),
        )


class EisQuotCtx:
    """S mod p^K via a Tower; pi-valuation cap is d*K."""

    exact_ring = False

    def __init__(self, tower: Tower):
        self.tower = tower
        self.ext: EisensteinExt = tower.S
        self.cap = tower.cap
        self.residue_fp_degree = tower.r

    def zero(self):
        return self.ext.zero()

    def one(self):
        return self.ext.one()

    def from_int(self, a):
        return self.ext.from_int(a)

    def add(self, a, b):
        return self.ext.add(a, b)

    def sub(self, a, b):
        return self.ext.sub(a, b)

    def neg(self, a):
        return self.ext.neg(a)

    def mul(self, a, b):
        return self.ext.mul(a, b)

    def is_zero(self, a):
        return self.ext.is_zero(a)

    def val(self, a):
        return self.ext.val(a)

    def pi_pow(self, k):
        return self.ext.pi_pow(k)

    def unit_part(self, a):
        v = self.val(a)
        if v >= self.cap:
            return self.one()
        return self.ext.shift_down(a, v)

    def inv_unit(self, a):
        return self.ext.inv_unit(a)

    def divide(self, b, a):
        va, vb = self.val(a), self.val(b)
        if vb < va:
            raise ValueError("division not exact in chain ring")
        if vb >= self.cap:
            return self.zero()
        return self.mul(
            self.mul(self.pi_pow(vb - va), self.unit_part(b)),
            self.inv_unit(self.unit_part(a)),
        )


# ---------------------------------------------------------------------------
# matrices over a ctx: list of rows; shape tracked explicitly for 0-extents
# ---------------------------------------------------------------------------

def zeros(ctx, m, k):
    return [[ctx.zero() for _ in range(k)] for _ in range(m)]


def matmul(ctx, A, B, m, s, k):
    out = zeros(ctx, m, k)
    for i in range(m):
        for t in range(s):
            a = A[i][t]
            if not ctx.is_zero(a):
                for j in range(k):
                    if not ctx.is_zero(B[t][j]):
                        out[i][j] = ctx.add(out[i][j], ctx.mul(a, B[t][j]))
    return out


@dataclass
class SNFResult:
    """U @ diag @ V == input, with U, V invertible over the chain ring."""

    vals: list  # diagonal pi-valuations, ascending; cap means zero entry
    shape: tuple
    U: list | None = None
    V: list | None = None
    # internal transforms: D = L @ M @ C; Cinv provided for coordinate work
    L: list | None = None
    C: list | None = None
    Cinv: list | None = None


def snf(M, ctx, m=None, k=None, transforms=True) -> SNFResult:
    """Smith normal form over a chain ring.

    Pivot: entry of minimal pi-valuation, ties broken row-major.  Exact
    division makes each elimination step zero its target in one subtraction.
    """
    if m is None:
        m = len(M)
    if k is None:
        k = len(M[0]) if m else 0
    W = [[M[i][j] for j in range(k)] for i in range(m)]
    L = [[ctx.one() if i == j else ctx.zero() for j in range(m)] for i in range(m)]
    C = [[ctx.one() if i == j else ctx.zero() for j in range(k)] for i in range(k)]
    Linv = [[ctx.one() if i == j else ctx.zero() for j in range(m)] for i in range(m)]
    Cinv = [[ctx.one() if i == j else ctx.zero() for j in range(k)] for i in range(k)]
    cap = ctx.cap

    def swap_rows(a, b):
        W[a], W[b] = W[b], W[a]
        L[a], L[b] = L[b], L[a]
        for row in Linv:
            row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        for row in W:
            row[a], row[b] = row[b], row[a]
        for row in C:
            row[a], row[b] = row[b], row[a]
        Cinv[a], Cinv[b] = Cinv[b], Cinv[a]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        W[i] = [ctx.sub(W[i][j], ctx.mul(q, W[t][j])) for j in range(k)]
        L[i] = [ctx.sub(L[i][j], ctx.mul(q, L[t][j])) for j in range(m)]
        for row in Linv:
            row[t] = ctx.add(row[t], ctx.mul(q, row[i]))

    def col_sub(j, t, q):
        # col_j -= q * col_t
        for row in W:
            row[j] = ctx.sub(row[j], ctx.mul(q, row[t]))
        for row in C:
            row[j] = ctx.sub(row[j], ctx.mul(q, row[t]))
        Cinv[t] = [ctx.add(Cinv[t][s], ctx.mul(q, Cinv[j][s])) for s in range(k)]

    r = min(m, k)
    vals = []
    for t in range(r):
        best = None
        best_v = cap
        for i in range(t, m):
            for j in range(t, k):
                v = ctx.val(W[i][j])
                if v < best_v:
                    best, best_v = (i, j), v
                    if v == 0:
                        break
            if best_v == 0:
                break
        if best is None:
            vals.extend([cap] * (r - t))
            break
        i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        a = W[t][t]
        for i in range(t + 1, m):
            if not ctx.is_zero(W[i][t]):
                row_sub(i, t, ctx.divide(W[i][t], a))
        for j in range(t + 1, k):
            if not ctx.is_zero(W[t][j]):
                col_sub(j, t, ctx.divide(W[t][j], a))
        vals.append(best_v)
    res = SNFResult(vals=vals, shape=(m, k))
    if transforms:
        res.U, res.V = Linv, Cinv
        res.L, res.C = L, C
        res.Cinv = Cinv
    return res


class CompositionError(ValueError):
    pass


class Complex:
    """A complex of finite free modules over a chain ring context.

    dims[i] for i in range(length); diffs[i]: C_i -> C_{i-1} for 1 <= i < length.
    d o d = 0 is checked exactly on construction.
    """

    def __init__(self, ctx, dims, diffs, check=True):
        self.ctx = ctx
        self.dims = list(dims)
        self.length = len(self.dims)
        self.diffs = dict(diffs)
        if check:
            for i in range(2, self.length):
                m = self.dims[i - 2]
                comp = matmul(ctx, self.diffs[i - 1], self.diffs[i], m, self.dims[i - 1], self.dims[i])
                for row in comp:
                    for x in row:
                        if not ctx.is_zero(x):
                            raise CompositionError(f"d_{i-1} o d_{i} != 0")

    def diff(self, i):
        """d_i: C_i -> C_{i-1}; zero maps at the ends."""
        if 1 <= i < self.length:
            return self.diffs[i], self.dims[i - 1], self.dims[i]
        if i == 0:
            return [], 0, self.dims[0]
        if i == self.length:
            return [[] for _ in range(self.dims[self.length - 1])], self.dims[self.length - 1], 0
        raise IndexError(i)


@dataclass(frozen=True)
class LocalModule:
    """A finite S-module as a multiset of pi-torsion lengths.

    cap is the pi-valuation bound of the coefficient ring; when
    cap_is_precision, summands of length == cap only mean "at least cap"
    (free candidates).  free_rank is used by closed-form evaluators, where
    freeness is known symbolically.
    """

    pi_lengths: tuple
    cap: int | None = None
    cap_is_precision: bool = False
    free_rank: int = 0

    @property
    def at_cap_count(self):
        if self.cap is None or not self.cap_is_precision:
            return 0
        return sum(1 for v in self.pi_lengths if v >= self.cap)

    @property
    def finite_lengths(self):
        if self.cap is None or not self.cap_is_precision:
            return self.pi_lengths
        return tuple(v for v in self.pi_lengths if v < self.cap)

    def total_rank(self):
        """Minimal number of generators (free part included)."""
        return len(self.pi_lengths) + self.free_rank

    def is_zero(self):
        return not self.pi_lengths and self.free_rank == 0

    def same_group(self, other) -> bool:
        """Compare a symbolic answer with an engine answer: free summands on
        either side match at-cap summands on the other."""
        if self.finite_lengths != other.finite_lengths:
            return False
        return (
            self.free_rank + self.at_cap_count
            == other.free_rank + other.at_cap_count
        )


def module_from_lengths(lengths, cap=None, cap_is_precision=False, free_rank=0):
    return LocalModule(
        pi_lengths=tuple(sorted((v for v in lengths if v > 0), reverse=True)),
        cap=cap,
        cap_is_precision=cap_is_precision,
        free_rank=free_rank,
    )


def homology(cx: Complex, i: int, mode: str = "exact") -> LocalModule:
    """H_i = ker d_i / im d_{i+1} as a LocalModule.

    mode="exact": honest chain-ring homology (partial kernels included).
    mode="lift":  the matrices model free modules over the valuation ring;
                  kernels keep only precision-zero columns and the output can
                  carry at-cap summands.
    """
    ctx = cx.ctx
    cap = ctx.cap
    d_i, m_i, k_i = cx.diff(i)
    d_next, m_n, k_n = cx.diff(i + 1)
    assert m_n == k_i
    res = snf(d_i, ctx, m=m_i, k=k_i)
    diag = list(res.vals) + [cap] * (k_i - len(res.vals))
    if mode == "lift":
        gens = [j for j in range(k_i) if diag[j] >= cap]
        ann = [cap] * len(gens)  # free over the valuation ring
        extra_rel = []
    elif mode == "exact":
        gens = [j for j in range(k_i) if diag[j] > 0]
        ann = [min(diag[j], cap) for j in gens]
        extra_rel = ann
    else:
        raise ValueError(mode)
    # express image of d_{i+1} in generator coordinates: y = Cinv @ col
    rel_cols = []
    Cinv = res.Cinv if k_i else []
    for col_idx in range(k_n):
        col = [d_next[row][col_idx] for row in range(k_i)]
        y = [
            _dot(ctx, Cinv[row], col) if k_i else ctx.zero()
            for row in range(k_i)
        ]
        z = []
        for g, j in enumerate(gens):
            shift = cap - ann[g]
            yj = y[j]
            v = ctx.val(yj)
            if v < shift:
                raise CompositionError("image not contained in kernel at this precision")
            if ctx.is_zero(yj):
                z.append(ctx.zero())
            else:
                z.append(ctx.divide(yj, ctx.pi_pow(shift)))
        # lift mode: non-generator coordinates must vanish to precision
        if mode == "lift":
            for j in range(k_i):
                if j not in gens and ctx.val(y[j]) < cap - min(diag[j], cap):
                    raise CompositionError("image not in lifted kernel")
        rel_cols.append(z)
    g = len(gens)
    rel = [[ctx.zero() for _ in range(len(extra_rel) + len(rel_cols))] for _ in range(g)]
    for idx, a in enumerate(extra_rel):
        rel[idx][idx] = ctx.pi_pow(a) if a < cap else ctx.zero()
    for cidx, z in enumerate(rel_cols):
        for ridx in range(g):
            rel[ridx][len(extra_rel) + cidx] = z[ridx]
    res2 = snf(rel, ctx, m=g, k=len(extra_rel) + len(rel_cols), transforms=False)
    diag2 = list(res2.vals) + [cap] * (g - len(res2.vals))
    # the pi^ann relations are part of rel, so diag2 is already bounded by them
    lengths = [min(t, cap) for t in diag2]
    return module_from_lengths(
        lengths,
        cap=cap,
        cap_is_precision=(mode == "lift") and not ctx.exact_ring,
    )


def _dot(ctx, row, col):
    acc = ctx.zero()
    for a, b in zip(row, col):
        if not (ctx.is_zero(a) or ctx.is_zero(b)):
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def kernel_basis(M, ctx, m, k, mode="lift"):
    """Columns spanning ker(M) (lift mode: free part only)."""
    res = snf(M, ctx, m=m, k=k)
    diag = list(res.vals) + [ctx.cap] * (k - len(res.vals))
    cols = []
    for j in range(k):
        if diag[j] >= ctx.cap:
            cols.append([res.C[row][j] for row in range(k)])
        elif mode == "exact" and diag[j] > 0:
            shifted = ctx.pi_pow(ctx.cap - diag[j])
            cols.append([ctx.mul(shifted, res.C[row][j]) for row in range(k)])
    return cols


def in_span(M, vec, ctx, m, k):
    """Is vec in the column span of M over the chain ring?"""
    res = snf(M, ctx, m=m, k=k)
    diag = list(res.vals) + [ctx.cap] * (min(m, k) - len(res.vals))
    y = [_dot(ctx, res.L[row], vec) for row in range(m)]
    for j in range(m):
        need = diag[j] if j < len(diag) else ctx.cap
        if ctx.val(y[j]) < min(need, ctx.cap):
            return False
    return True
