"""Brute-force Hochschild homology of structure-constant algebras.

Two chain-level routes, both independent of the small-complex machinery:

  * plain: the standard complex C_k = M (x) A^(x k) with the alternating-face
    differential, for any bimodule M.  Dimensions grow like dim(A)^(k+1), so a
    configurable entry cap guards the builder.

  * relative: for A/(p) built from a tower, the degree-zero part is the
    (separable) coefficient field F_T, and the bar resolution relative to it
    is still a projective bimodule resolution.  Collapsing it leaves tuples of
    monomial labels pi^j x^k with an F_T coefficient; moving the coefficient
    around the cycle twists it by sigma^(-total x-weight), which kills every
    tuple whose weight is nonzero mod n and leaves a complex smaller by a
    factor of about (dim F_T)^k.  The two routes are cross-checked in the test
    suite on every fixture where the plain one fits in memory.

Ranks over F_2 use packed bit rows; odd p uses vectorized numpy elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .algebra import StructureAlgebra
from .ffield import fq_make, frobenius
from .fpmod import rank_mod_p
from .local import Tower


class OracleSizeError(RuntimeError):
    pass


DEFAULT_ENTRY_CAP = 2_000_000


def oracle_degree_cap(dim: int) -> int:
    """Documented degree caps: dim <= 8 -> 5, dim <= 20 -> 3, else 1."""
    if dim <= 8:
        return 5
    if dim <= 20:
        return 3
    return 1


# ---------------------------------------------------------------------------
# plain standard complex
# ---------------------------------------------------------------------------

@dataclass
class Bimodule:
    """Left/right action matrices of each algebra basis vector on M."""

    dim: int
    left: list  # left[i] = matrix of a_i acting on the left
    right: list

    @classmethod
    def regular(cls, alg: StructureAlgebra):
        left = [alg.table[i].T % alg.modulus for i in range(alg.dim)]
        right = [alg.table[:, i].T % alg.modulus for i in range(alg.dim)]
        return cls(dim=alg.dim, left=left, right=right)


def plain_differential(alg: StructureAlgebra, coeff: Bimodule, k: int,
                       entry_cap: int = DEFAULT_ENTRY_CAP):
    """Dense matrix of d_k: M (x) A^(x k) -> M (x) A^(x (k-1)) over F_p."""
    p = alg.p
    D = alg.dim
    dm = coeff.dim
    rows = dm * D ** (k - 1)
    cols = dm * D**k
    if rows * cols > entry_cap:
        raise OracleSizeError(
            f"differential d_{k} has {rows}x{cols} entries; cap {entry_cap}"
        )
    out = np.zeros((rows, cols), dtype=np.int64)
    table = alg.table
    for col in range(cols):
        rest, m_idx = divmod(col, dm)
        tensor = []
        for _ in range(k):
            rest, a = divmod(rest, D)
            tensor.append(a)
        # tensor[0] = a_1, ..., tensor[k-1] = a_k; column index is
        # m + dm*(a_1 + D*(a_2 + ...))
        sign = 1
        # face 0: m a_1 (x) a_2 ... (right action on the coefficients)
        vec = coeff.right[tensor[0]][:, m_idx]
        base = 0
        mult = 1
        for a in tensor[1:]:
            base += a * mult
            mult *= D
        for m2 in np.nonzero(vec)[0]:
            out[int(m2) + dm * base, col] = (out[int(m2) + dm * base, col] + vec[m2]) % p
        # faces 1..k-1: multiply adjacent tensor slots
        for i in range(1, k):
            sign = -sign
            prod_vec = table[tensor[i - 1], tensor[i]]
            for s in np.nonzero(prod_vec)[0]:
                base = 0
                mult = 1
                for pos in range(k - 1):
                    if pos < i - 1:
                        a = tensor[pos]
                    elif pos == i - 1:
                        a = int(s)
                    else:
                        a = tensor[pos + 1]
                    base += a * mult
                    mult *= D
                row = m_idx + dm * base
                out[row, col] = (out[row, col] + sign * prod_vec[s]) % p
        # face k: a_k m (x) a_1 ... a_{k-1} (left action on the coefficients)
        sign = -sign
        vec = coeff.left[tensor[k - 1]][:, m_idx]
        base = 0
        mult = 1
        for a in tensor[: k - 1]:
            base += a * mult
            mult *= D
        for m2 in np.nonzero(vec)[0]:
            row = int(m2) + dm * base
            out[row, col] = (out[row, col] + sign * vec[m2]) % p
    return out % p


@dataclass
class DenseFpComplex:
    """The standard complex as dense F_p matrices, checked to compose to zero."""

    p: int
    dims: list
    diffs: dict  # k -> numpy matrix of d_k

    def homology_dims(self, degrees):
        ranks = {k: rank_mod_p(m, self.p) for k, m in self.diffs.items()}
        return {
            i: self.dims[i] - ranks.get(i, 0) - ranks.get(i + 1, 0)
            for i in degrees
        }

    def homology(self, i):
        from .chainring import module_from_lengths

        dim = self.homology_dims([i])[i]
        return module_from_lengths([1] * dim, cap=1)


def hochschild_complex(alg: StructureAlgebra, coeff: Bimodule | None = None,
                       max_deg: int = 3,
                       entry_cap: int = DEFAULT_ENTRY_CAP) -> DenseFpComplex:
    """C_k = M (x) A^(x k) for k <= max_deg + 1, with d o d = 0 verified."""
    if alg.ring != "Fp":
        raise ValueError("the standard-complex oracle works over F_p")
    coeff = coeff or Bimodule.regular(alg)
    dims = [coeff.dim * alg.dim**k for k in range(max_deg + 2)]
    diffs = {
        k: plain_differential(alg, coeff, k, entry_cap)
        for k in range(1, max_deg + 2)
    }
    for k in range(1, max_deg + 1):
        if np.any(diffs[k] @ diffs[k + 1] % alg.p):
            raise AssertionError(f"d_{k} o d_{k+1} != 0 in the standard complex")
    return DenseFpComplex(p=alg.p, dims=dims, diffs=diffs)


def plain_hh_dims(alg: StructureAlgebra, degrees, coeff: Bimodule | None = None,
                  entry_cap: int = DEFAULT_ENTRY_CAP):
    """F_p-dimensions of HH_i(A; M) for i in degrees, by the standard complex."""
    if alg.ring != "Fp":
        raise ValueError("plain oracle works over F_p")
    coeff = coeff or Bimodule.regular(alg)
    p = alg.p
    top = max(degrees)
    ranks = {}
    for k in range(1, top + 2):
        ranks[k] = rank_mod_p(plain_differential(alg, coeff, k, entry_cap), p)
    dims = {}
    D = alg.dim
    for i in degrees:
        chain_dim = coeff.dim * D**i
        r_in = ranks.get(i, 0)  # rank d_i (0 for i = 0)
        dims[i] = chain_dim - r_in - ranks[i + 1]
    return dims


# ---------------------------------------------------------------------------
# relative complex for A/(p) over the coefficient field F_T
# ---------------------------------------------------------------------------

def _labels(t: Tower):
    """Monomial labels pi^j x^k with their x-weights."""
    labs = [(j, k) for j in range(t.d) for k in range(t.n)]
    weight = {lab: t.n * lab[0] + lab[1] for lab in labs}
    return labs, weight


def _label_mul(t: Tower, a, b):
    j1, k1 = a
    j2, k2 = b
    carry, k = divmod(k1 + k2, t.n)
    j = j1 + j2 + carry
    if j >= t.d:
        return None
    return (j, k)


def relative_chain_basis(t: Tower, k: int):
    """Balanced tuples (l_0; l_1..l_k), slots excluding the unit label."""
    labs, weight = _labels(t)
    slots = [lab for lab in labs if lab != (0, 0)]
    out = []
    for head in labs:
        w0 = weight[head]
        for tail in iproduct(slots, repeat=k):
            if (w0 + sum(weight[s] for s in tail)) % t.n == 0:
                out.append((head,) + tail)
    return out


def relative_differential(t: Tower, k: int, basis_k=None, basis_km1=None):
    """Matrix over F_p of d_k on the relative normalized complex."""
    p = t.p
    e_dim = t.r * t.n
    ft = fq_make(p, e_dim)
    # sigma^(-kx) matrices on F_T coefficients
    sig_neg = {}
    for kx in range(t.n):
        cols = []
        for m in range(e_dim):
            e = [0] * e_dim
            e[m] = 1
            power = (t.r * t.gen_exp * ((-kx) % t.n)) % e_dim if t.n > 1 else 0
            cols.append(frobenius(ft.elem(e), power).coeffs)
        sig_neg[kx] = np.array(cols, dtype=np.int64).T % p
    eye = np.eye(e_dim, dtype=np.int64)

    if basis_k is None:
        basis_k = relative_chain_basis(t, k)
    if basis_km1 is None:
        basis_km1 = relative_chain_basis(t, k - 1)
    index = {tup: i for i, tup in enumerate(basis_km1)}
    rows = len(basis_km1) * e_dim
    cols = len(basis_k) * e_dim
    out = np.zeros((rows, cols), dtype=np.int64)
    for ci, tup in enumerate(basis_k):
        head, tail = tup[0], tup[1:]
        # face 0: head * l_1
        prod = _label_mul(t, head, tail[0])
        if prod is not None:
            ti = index[(prod,) + tail[1:]]
            out[ti * e_dim : (ti + 1) * e_dim, ci * e_dim : (ci + 1) * e_dim] += eye
        # faces 1..k-1
        sign = 1
        for i in range(1, k):
            sign = -sign
            prod = _label_mul(t, tail[i - 1], tail[i])
            if prod is None:
                continue
            new = (head,) + tail[: i - 1] + (prod,) + tail[i + 1 :]
            ti = index[new]
            out[ti * e_dim : (ti + 1) * e_dim, ci * e_dim : (ci + 1) * e_dim] += sign * eye
        # face k: l_k * head, coefficient twisted by sigma^(-x-weight of l_k)
        sign = -sign
        prod = _label_mul(t, tail[k - 1], head)
        if prod is not None:
            new = (prod,) + tail[: k - 1]
            ti = index[new]
            out[ti * e_dim : (ti + 1) * e_dim, ci * e_dim : (ci + 1) * e_dim] += (
                sign * sig_neg[tail[k - 1][1]]
            )
    return out % p


def relative_hh_dims(t: Tower, degrees):
    """F_p-dimensions of HH_i(A/(p)) via the relative complex."""
    top = max(degrees)
    bases = {k: relative_chain_basis(t, k) for k in range(top + 2)}
    e_dim = t.r * t.n
    ranks = {}
    for k in range(1, top + 2):
        mat = relative_differential(t, k, bases[k], bases[k - 1])
        ranks[k] = rank_mod_p(mat, t.p)
    dims = {}
    for i in degrees:
        dims[i] = len(bases[i]) * e_dim - ranks.get(i, 0) - ranks[i + 1]
    return dims


def hochschild_homology(alg: StructureAlgebra, degrees, coeff=None,
                        method="auto", entry_cap=DEFAULT_ENTRY_CAP):
    """Oracle HH dimensions; method in {"auto", "plain", "relative"}.

    "relative" needs the algebra to carry its tower (A/(p) built by
    build_modp) and regular coefficients.
    """
    degrees = sorted(degrees)
    tower = alg.meta.get("tower") if alg.meta else None
    can_relative = (
        tower is not None and alg.meta.get("kind") == "modp" and coeff is None
    )
    if method == "auto":
        top = max(degrees)
        dm = coeff.dim if coeff else alg.dim
        plain_ok = dm * alg.dim**top * dm * alg.dim ** (top + 1) <= entry_cap
        method = "plain" if plain_ok or not can_relative else "relative"
    if method == "relative":
        if not can_relative:
            raise ValueError("relative oracle needs a tower-built A/(p) with regular coefficients")
        return relative_hh_dims(tower, degrees)
    return plain_hh_dims(alg, degrees, coeff=coeff, entry_cap=entry_cap)
