"""The 2-periodic small complexes on T, their mod-p reductions, and the
comparison chain map from the T-coefficient complex.

T is handled as a free S-module of rank n on the Witt-generator power basis,
so every map is an n x n matrix over S (integral flavor, chain-ring context
S mod p^K) or over S/(p) = F_S[pi]/(pi^d) (mod-p flavor).  Mod-p homology is
also exposed as flattened F_p presentations with the pi action, which is what
the spectral sequence machinery consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chainring import (
    Complex,
    EisQuotCtx,
    LocalModule,
    TruncPolyCtx,
    homology,
    in_span,
    matmul,
    module_from_lengths,
    snf,
)
from .closed import hh_A
from .ffield import fq_make
from .fpmod import PresentedFpModule, nullspace_mod_p, rank_mod_p
from .local import Tower


class VerificationError(AssertionError):
    pass


def s_to_modp(t: Tower, x, ctx: TruncPolyCtx):
    """Reduce an S-element to F_S[pi]/(pi^d)."""
    return ctx.elem([t.R.residue(b) for b in x])


def modp_ctx(t: Tower) -> TruncPolyCtx:
    return TruncPolyCtx(fq_make(t.p, t.r), t.d)


def _matrix_modp(t: Tower, M, ctx):
    return [[s_to_modp(t, e, ctx) for e in row] for row in M]


def _alternating_complex(t: Tower, odd_map, even_map, flavor, length):
    """Complex with C_i = T and d_i = odd_map (i odd) / even_map (i even)."""
    if flavor == "integral":
        ctx = EisQuotCtx(t)
        odd, even = odd_map, even_map
    elif flavor == "modp":
        ctx = modp_ctx(t)
        odd = _matrix_modp(t, odd_map, ctx)
        even = _matrix_modp(t, even_map, ctx)
    else:
        raise ValueError(flavor)
    dims = [t.n] * length
    diffs = {i: (odd if i % 2 == 1 else even) for i in range(1, length)}
    return Complex(ctx, dims, diffs)


def small_complex(t: Tower, flavor: str, length: int) -> Complex:
    """d_odd = pi (1 - sigma^(-1)), d_even = P'(pi) Tr."""
    if length < 2:
        raise ValueError("length must be >= 2")
    return _alternating_complex(
        t, t.map_pi_one_minus_sigma_inv(), t.map_p_prime_trace(), flavor, length
    )


def resolution_complex(t: Tower, length: int) -> Complex:
    """d_odd = Tr, d_even = 1 - sigma^(-1); exact in the interior."""
    if length < 2:
        raise ValueError("length must be >= 2")
    return _alternating_complex(
        t, t.map_trace(), t.map_one_minus_sigma_inv(), "integral", length
    )


def top_complex(t: Tower, flavor: str, length: int) -> Complex:
    """The T-coefficient comparison complex: d_odd = 0, d_even = P'(pi)."""
    zero = [[t.S.zero() for _ in range(t.n)] for _ in range(t.n)]
    return _alternating_complex(t, zero, t.map_scalar(t.p_prime_pi()), flavor, length)


def comparison_vertical_maps(t: Tower, flavor: str, length: int):
    """g_i: top_i -> bottom_i; identity in even degrees, Tr in odd degrees."""
    ident = t.s_linear_matrix(lambda x: x)
    tr = t.map_trace()
    if flavor == "modp":
        ctx = modp_ctx(t)
        ident = _matrix_modp(t, ident, ctx)
        tr = _matrix_modp(t, tr, ctx)
    return {i: (ident if i % 2 == 0 else tr) for i in range(length)}


def check_chain_map(top: Complex, bot: Complex, g):
    ctx = top.ctx
    n = top.dims[0]
    for i in range(1, top.length):
        lhs = matmul(ctx, g[i - 1], top.diffs[i], n, n, n)
        rhs = matmul(ctx, bot.diffs[i], g[i], n, n, n)
        for a in range(n):
            for b in range(n):
                if not ctx.is_zero(ctx.sub(lhs[a][b], rhs[a][b])):
                    raise VerificationError(f"not a chain map at degree {i}")


def hh_A_via_small(t: Tower, flavor: str, degrees, verify: bool = False):
    """Homology of the small complex per degree.

    Integral flavor uses lift-mode homology (the complex models free
    S-modules); mod-p flavor uses exact chain-ring homology over S/(p).
    """
    degrees = sorted(degrees)
    length = max(degrees) + 2
    cx = small_complex(t, flavor, length)
    mode = "lift" if flavor == "integral" else "exact"
    out = {i: homology(cx, i, mode=mode) for i in degrees}
    if verify and flavor == "integral":
        for i, mod in out.items():
            if not hh_A(t, i).same_group(mod):
                raise VerificationError(
                    f"integral small-complex homology in degree {i} is {mod}, "
                    f"expected {hh_A(t, i)}"
                )
    return out


# ---------------------------------------------------------------------------
# flattened F_p model of mod-p complexes (homology with explicit bases)
# ---------------------------------------------------------------------------

class FlatModpComplex:
    """A complex of F_S[pi]/(pi^d)-modules flattened to F_p with pi action.

    Coordinates on each chain group T/(p) = Lambda_p^n: slot s, pi power j,
    F_S coordinate u; flat index (s * d + j) * r + u.
    """

    def __init__(self, t: Tower, matrices, length):
        self.t = t
        self.ctx = modp_ctx(t)
        self.p = t.p
        self.N = t.n * t.d * t.r
        self.length = length
        self._mult_cache = {}
        self.flat = {i: self._flatten(matrices[i]) for i in matrices}
        self.pi_mat = self._pi_matrix()
        self._pres = {}

    def _scalar_mult_matrix(self, e):
        key = e
        if key not in self._mult_cache:
            ctx = self.ctx
            rd = self.t.d * self.t.r
            M = np.zeros((rd, rd), dtype=np.int64)
            fq = ctx.fq
            for j in range(self.t.d):
                for u in range(self.t.r):
                    basis = ctx.elem(
                        [fq.zero()] * j
                        + [fq.elem([0] * u + [1])]
                    )
                    prod = ctx.mul(e, basis)
                    col = j * self.t.r + u
                    for j2 in range(self.t.d):
                        for u2 in range(self.t.r):
                            M[j2 * self.t.r + u2, col] = prod[j2].coeffs[u2]
            self._mult_cache[key] = M
        return self._mult_cache[key]

    def _flatten(self, M):
        n, rd = self.t.n, self.t.d * self.t.r
        out = np.zeros((self.N, self.N), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                out[a * rd : (a + 1) * rd, b * rd : (b + 1) * rd] = (
                    self._scalar_mult_matrix(M[a][b])
                )
        return out % self.p

    def _pi_matrix(self):
        n, rd = self.t.n, self.t.d * self.t.r
        blk = self._scalar_mult_matrix(self.ctx.pi_pow(1))
        out = np.zeros((self.N, self.N), dtype=np.int64)
        for a in range(n):
            out[a * rd : (a + 1) * rd, a * rd : (a + 1) * rd] = blk
        return out

    def presentation(self, i) -> PresentedFpModule:
        """Homology at spot i as a presented F_p module with pi action."""
        if i not in self._pres:
            if 1 <= i < self.length:
                Z = nullspace_mod_p(self.flat[i], self.p)
            else:
                Z = np.eye(self.N, dtype=np.int64)
            if i + 1 < self.length:
                B = self.flat[i + 1]
            else:
                B = np.zeros((self.N, 0), dtype=np.int64)
            self._pres[i] = PresentedFpModule(self.p, self.N, Z, B, self.pi_mat)
        return self._pres[i]

    def lengths(self, i) -> LocalModule:
        pres = self.presentation(i)
        return module_from_lengths(
            pres.pi_lengths(fs_degree=self.t.r), cap=self.t.d
        )


def flat_small_modp(t: Tower, length: int) -> FlatModpComplex:
    cx = small_complex(t, "modp", length)
    return FlatModpComplex(t, cx.diffs, length)


def flat_top_modp(t: Tower, length: int) -> FlatModpComplex:
    cx = top_complex(t, "modp", length)
    return FlatModpComplex(t, cx.diffs, length)


# ---------------------------------------------------------------------------
# the comparison map on homology (integral and mod p)
# ---------------------------------------------------------------------------

@dataclass
class InducedMapReport:
    degree: int
    flavor: str
    source_dim: int
    target_lengths: tuple
    image_lengths: tuple
    quotient_lengths: tuple
    is_zero: bool
    surjective: bool


def _lift_presentation(cx: Complex, i):
    """Kernel generators and relation matrix of H_i over the valuation ring."""
    ctx = cx.ctx
    cap = ctx.cap
    d_i, m_i, k_i = cx.diff(i)
    d_next, _, k_n = cx.diff(i + 1)
    res = snf(d_i, ctx, m=m_i, k=k_i)
    diag = list(res.vals) + [cap] * (k_i - len(res.vals))
    gens = [j for j in range(k_i) if diag[j] >= cap]
    gen_cols = [[res.C[row][j] for row in range(k_i)] for j in gens]

    def coords(vec):
        y = [sum_dot(ctx, res.Cinv[row], vec) for row in range(k_i)]
        return [y[j] for j in gens]

    rel = [coords([d_next[row][c] for row in range(k_i)]) for c in range(k_n)]
    rel_mat = [[rel[c][g] for c in range(k_n)] for g in range(len(gens))]
    return gen_cols, rel_mat, coords


def sum_dot(ctx, row, col):
    acc = ctx.zero()
    for a, b in zip(row, col):
        if not (ctx.is_zero(a) or ctx.is_zero(b)):
            acc = ctx.add(acc, ctx.mul(a, b))
    return acc


def themap_induced(t: Tower, flavor: str, degrees):
    """Induced maps of the comparison chain map on homology, per degree."""
    degrees = sorted(degrees)
    length = max(degrees) + 2
    bot = small_complex(t, flavor, length)
    top = top_complex(t, flavor, length)
    g = comparison_vertical_maps(t, flavor, length)
    check_chain_map(top, bot, g)
    reports = {}
    if flavor == "integral":
        ctx = bot.ctx
        for i in degrees:
            top_gens, top_rel, _ = _lift_presentation(top, i)
            bot_gens, bot_rel, bot_coords = _lift_presentation(bot, i)
            z = len(bot_gens)
            images = []
            for gen in top_gens:
                img = [sum_dot(ctx, g[i][row], gen) for row in range(t.n)]
                images.append(bot_coords(img))
            img_mat = [[images[c][gidx] for c in range(len(images))] for gidx in range(z)]
            # zero map: every image lies in the span of the relations
            relk = len(bot_rel[0]) if bot_rel else 0
            zero = all(
                in_span(bot_rel, [img_mat[gidx][c] for gidx in range(z)], ctx, z, relk)
                for c in range(len(images))
            ) if z else True
            # surjective: relations + images generate everything
            comb = [[*bot_rel[gidx], *img_mat[gidx]] for gidx in range(z)]
            vals = snf(comb, ctx, m=z, k=relk + len(images), transforms=False).vals
            vals = list(vals) + [ctx.cap] * (z - len(vals))
            surj = all(v == 0 for v in vals)
            top_h = homology(top, i, mode="lift")
            bot_h = homology(bot, i, mode="lift")
            reports[i] = InducedMapReport(
                degree=i,
                flavor=flavor,
                source_dim=top_h.total_rank(),
                target_lengths=bot_h.pi_lengths,
                image_lengths=(),
                quotient_lengths=(),
                is_zero=zero,
                surjective=surj,
            )
    else:
        fb = flat_small_modp(t, length)
        ft_ = flat_top_modp(t, length)
        gflat = {
            i: FlatModpComplex(t, {1: g[i]}, 2).flat[1] for i in range(length)
        }
        for i in degrees:
            tp = ft_.presentation(i)
            bp = fb.presentation(i)
            img_cols = []
            for j in range(tp.dim):
                vec = gflat[i] @ tp.class_reps[:, j] % t.p
                img_cols.append(bp.reduce(vec))
            img = (
                np.stack(img_cols, axis=1)
                if img_cols
                else np.zeros((bp.dim, 0), dtype=np.int64)
            )
            # image submodule and quotient, with the pi action
            pi_classes = bp.pi_on_classes()
            sub = PresentedFpModule(
                t.p, bp.dim, _pi_saturate(img, pi_classes, t.p, t.d),
                np.zeros((bp.dim, 0), dtype=np.int64), pi_classes,
            )
            quo = PresentedFpModule(
                t.p, bp.dim, np.eye(bp.dim, dtype=np.int64),
                _pi_saturate(img, pi_classes, t.p, t.d), pi_classes,
            )
            reports[i] = InducedMapReport(
                degree=i,
                flavor=flavor,
                source_dim=tp.dim,
                target_lengths=fb.lengths(i).pi_lengths,
                image_lengths=sub.pi_lengths(fs_degree=t.r),
                quotient_lengths=quo.pi_lengths(fs_degree=t.r),
                is_zero=sub.dim == 0,
                surjective=quo.dim == 0,
            )
    return reports


def _pi_saturate(cols, pi, p, d):
    """Close a set of class columns under the pi action."""
    out = cols % p
    for _ in range(d):
        out = np.concatenate([out, pi @ out % p], axis=1)
    return out


def cokernel_dim_claim_modp(t: Tower) -> int:
    """F_p-dimension of T/(p, pi ker(Tr)), the degree-zero cokernel shape."""
    fb_tr = FlatModpComplex(t, {1: _matrix_modp(t, t.map_trace(), modp_ctx(t))}, 2)
    ker = nullspace_mod_p(fb_tr.flat[1], t.p)
    pk = fb_tr.pi_mat @ ker % t.p
    return fb_tr.N - rank_mod_p(pk, t.p)
