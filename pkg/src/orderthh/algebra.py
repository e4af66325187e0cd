"""Structure-constant models of the maximal order A and its reduction A/(p).

A = T + T x + ... + x^(n-1) with x^n = pi and m x = x sigma(m); the basis is
t^u pi^j x^k ordered by (k, j, u), t the Witt/field generator of the degree-rn
unramified part.  build_modp works in F_T, build_integral in T mod p^K;
split_scalars realizes F_T tensor_{F_S} A/(p) on the orthogonal-idempotent
basis e_i pi^j x^k, together with the isomorphism that splits the scalars.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .ffield import fq_make, frobenius
from .fpmod import inv_mod_p, nullspace_mod_p, rank_mod_p
from .local import Tower


class AssociativityError(RuntimeError):
    pass


@dataclass
class StructureAlgebra:
    """A finite free module with a structure-constant multiplication table."""

    ring: str  # "Fp" or "ZpK"
    p: int
    precision: int  # 1 for Fp, K for ZpK
    dim: int
    labels: tuple
    table: np.ndarray  # table[i, j] = coefficient vector of e_i * e_j
    unit: np.ndarray
    meta: dict

    @property
    def modulus(self):
        return self.p**self.precision

    def mul_vec(self, a, b):
        m = self.modulus
        return np.einsum("i,ijl,j->l", a % m, self.table, b % m) % m

    def check_associative(self):
        m = self.modulus
        T = self.table
        left = np.einsum("ijs,skl->ijkl", T, T) % m
        right = np.einsum("jks,isl->ijkl", T, T) % m
        if np.any((left - right) % m):
            bad = np.argwhere(np.any((left - right) % m, axis=3))[0]
            raise AssociativityError(
                f"associativity fails at basis triple {tuple(int(x) for x in bad)}"
            )

    def check_unit(self):
        m = self.modulus
        for i in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[i] = 1
            if np.any((self.mul_vec(self.unit, e) - e) % m) or np.any(
                (self.mul_vec(e, self.unit) - e) % m
            ):
                raise AssociativityError("unit fails to act as identity")

    def left_mult_matrix(self, vec):
        m = self.modulus
        cols = [self.mul_vec(vec, _unit_vec(self.dim, j)) for j in range(self.dim)]
        return np.stack(cols, axis=1) % m

    def right_mult_matrix(self, vec):
        m = self.modulus
        cols = [self.mul_vec(_unit_vec(self.dim, j), vec) for j in range(self.dim)]
        return np.stack(cols, axis=1) % m

    def center_dimension(self):
        """F_p-dimension of the center (only meaningful for ring == 'Fp')."""
        rows = []
        for i in range(self.dim):
            e = _unit_vec(self.dim, i)
            rows.append(self.left_mult_matrix(e) - self.right_mult_matrix(e))
        M = np.concatenate(rows, axis=0) % self.p
        return nullspace_mod_p(M, self.p).shape[1]

    def to_json(self):
        return json.dumps(
            {
                "ring": self.ring,
                "p": self.p,
                "precision": self.precision,
                "dim": self.dim,
                "labels": list(map(list, self.labels)),
                "unit": self.unit.tolist(),
                "mult_table": self.table.tolist(),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        dim = data["dim"]
        table = np.array(data["mult_table"], dtype=np.int64)
        if table.shape != (dim, dim, dim):
            raise ValueError("mult_table has wrong shape")
        return cls(
            ring=data["ring"],
            p=data["p"],
            precision=data.get("precision", 1),
            dim=dim,
            labels=tuple(tuple(l) for l in data["labels"]),
            table=table % (data["p"] ** data.get("precision", 1)),
            unit=np.array(data["unit"], dtype=np.int64),
            meta={},
        )


def _unit_vec(n, j):
    v = np.zeros(n, dtype=np.int64)
    v[j] = 1
    return v


def _modp_basis(t: Tower):
    """Labels (u, j, k) ordered by (k, j, u)."""
    return [
        (u, j, k)
        for k in range(t.n)
        for j in range(t.d)
        for u in range(t.r * t.n)
    ]


def build_modp(t: Tower) -> StructureAlgebra:
    """A/(p) as an F_p structure-constant algebra of dimension r n^2 d."""
    ft = fq_make(t.p, t.r * t.n)
    labels = _modp_basis(t)
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    gen_pows = [ft.gen() ** u for u in range(t.r * t.n)]
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, (u, j, k) in enumerate(labels):
        for i2, (u2, j2, k2) in enumerate(labels):
            # m x = x sigma(m) means x^k t^u2 = sigma^(-k)(t^u2) x^k, so
            # (t^u pi^j x^k)(t^u2 pi^j2 x^k2) = t^u sigma^(-k)(t^u2) pi^(j+j2+carry) x^((k+k2)%n)
            spow = (-k) % t.n if t.n > 1 else 0
            coeff = gen_pows[u] * frobenius(gen_pows[u2], t.r * t.gen_exp * spow)
            ksum = k + k2
            carry, knew = divmod(ksum, t.n)
            jnew = j + j2 + carry
            if jnew >= t.d:
                continue
            for u3, c in enumerate(coeff.coeffs):
                if c:
                    table[i, i2, index[(u3, jnew, knew)]] = c
    unit = _unit_vec(dim, index[(0, 0, 0)])
    alg = StructureAlgebra(
        ring="Fp",
        p=t.p,
        precision=1,
        dim=dim,
        labels=tuple(labels),
        table=table,
        unit=unit,
        meta={"tower": t, "kind": "modp"},
    )
    alg.check_associative()
    alg.check_unit()
    return alg


def build_integral(t: Tower) -> StructureAlgebra:
    """A mod p^K with x^n = pi, m x = x sigma(m)."""
    labels = _modp_basis(t)
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    if dim * (t.R.pk - 1) ** 2 >= 2**62:
        raise ValueError("p^K too large for exact int64 structure-constant checks")
    w2 = t.W2
    gen_pows = [w2.pow(w2.gen(), u) for u in range(t.r * t.n)]
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, (u, j, k) in enumerate(labels):
        for i2, (u2, j2, k2) in enumerate(labels):
            spow = (-k) % t.n if t.n > 1 else 0
            coeff = w2.mul(gen_pows[u], t.sigma_witt(gen_pows[u2], power=spow))
            ksum = k + k2
            carry, knew = divmod(ksum, t.n)
            jnew = j + j2 + carry
            telem = t.T.smul(coeff, t.T.pi_pow(jnew))  # reduces pi^j via P
            flat = t.T.flat(telem)  # indexed (pi power, witt coord)
            for jj in range(t.d):
                for uu in range(t.r * t.n):
                    c = flat[jj * t.r * t.n + uu]
                    if c:
                        table[i, i2, index[(uu, jj, knew)]] = c
    unit = _unit_vec(dim, index[(0, 0, 0)])
    alg = StructureAlgebra(
        ring="ZpK",
        p=t.p,
        precision=t.K,
        dim=dim,
        labels=tuple(labels),
        table=table,
        unit=unit,
        meta={"tower": t, "kind": "integral"},
    )
    alg.check_associative()
    alg.check_unit()
    return alg


@dataclass
class SplitBasis:
    """Labels e_i pi^j x^k with the weakly monoidal product rule."""

    n: int
    d: int

    def labels(self):
        return [
            (i, j, k) for i in range(self.n) for j in range(self.d) for k in range(self.n)
        ]

    def product(self, a, b):
        """Product of two labels: a label or None (= zero).

        e_i x^k e_i2 = e_i e_(i2+k) x^k, so the product is nonzero iff
        i = i2 + k mod n; x-overflow feeds pi via x^n = pi.
        """
        i, j, k = a
        i2, j2, k2 = b
        if (i2 + k) % self.n != i:
            return None
        carry, knew = divmod(k + k2, self.n)
        jnew = j + j2 + carry
        if jnew >= self.d:
            return None
        return (i, jnew, knew)


def split_scalars(t: Tower):
    """(F_T tensor_{F_S} A/(p) on the split basis, SplitBasis, phi data).

    Returns (split_alg, basis, phi) where phi is the F_p-matrix of the scalar
    splitting isomorphism from the tensor-product presentation to the split
    one; multiplicativity and bijectivity are verified.
    """
    p, r, n, d = t.p, t.r, t.n, t.d
    ft = fq_make(p, r * n)
    sigma_pow = lambda x, k: frobenius(x, (r * t.gen_exp * k) % (r * n))

    # split presentation: labels (i, j, k) with F_T coefficients t^m
    basis = SplitBasis(n=n, d=d)
    slabels = [(m, i, j, k) for (i, j, k) in basis.labels() for m in range(r * n)]
    sindex = {lab: s for s, lab in enumerate(slabels)}
    sdim = len(slabels)
    gen_pows = [ft.gen() ** m for m in range(r * n)]
    stable = np.zeros((sdim, sdim, sdim), dtype=np.int64)
    for s1, (m1, i1, j1, k1) in enumerate(slabels):
        for s2, (m2, i2, j2, k2) in enumerate(slabels):
            lab = basis.product((i1, j1, k1), (i2, j2, k2))
            if lab is None:
                continue
            i3, j3, k3 = lab
            coeff = gen_pows[m1] * gen_pows[m2]
            for m3, c in enumerate(coeff.coeffs):
                if c:
                    stable[s1, s2, sindex[(m3, i3, j3, k3)]] = c
    unit = np.zeros(sdim, dtype=np.int64)
    for i in range(n):
        unit[sindex[(0, i, 0, 0)]] = 1
    split_alg = StructureAlgebra(
        ring="Fp",
        p=p,
        precision=1,
        dim=sdim,
        labels=tuple(slabels),
        table=stable,
        unit=unit,
        meta={"tower": t, "kind": "split"},
    )
    split_alg.check_associative()
    split_alg.check_unit()

    # tensor presentation: F_T (x)_{F_S} A/(p), basis t^c (x) (t^u pi^j x^k),
    # c < n since F_T has degree n over F_S
    modp = build_modp(t)
    # expansion of arbitrary F_T elements in the basis {s_b t^c}, s_b an F_S basis
    fs_basis = _subfield_basis(ft, r, n)
    E = np.zeros((r * n, r * n), dtype=np.int64)
    col = 0
    tc = [ft.gen() ** c for c in range(n)]
    for c in range(n):
        for b in range(r):
            prod = fs_basis[b] * tc[c]
            E[:, col] = prod.coeffs
            col += 1
    Einv = inv_mod_p(E, p)

    tdim = n * modp.dim
    scalar_mats = [_scalar_action(modp, fs_basis[b], t) for b in range(r)]

    # tensor basis label: (c, a-index); multiplication via F_S-expansion
    def tensor_mul_vec(v1, v2):
        out = np.zeros(tdim, dtype=np.int64)
        for s1 in np.nonzero(v1)[0]:
            c1, a1 = divmod(int(s1), modp.dim)
            for s2 in np.nonzero(v2)[0]:
                c2, a2 = divmod(int(s2), modp.dim)
                scal = v1[s1] * v2[s2] % p
                # t^(c1+c2) = sum over (c, b) of coords s_b t^c; the F_S
                # coefficient s_b multiplies into the A/(p) factor
                prod = tc[c1] * tc[c2]
                coords = Einv @ np.array(prod.coeffs, dtype=np.int64) % p
                amul = modp.table[a1, a2]
                for c in range(n):
                    for b in range(r):
                        cf = int(coords[c * r + b]) * scal % p
                        if cf == 0:
                            continue
                        target = scalar_mats[b] @ amul % p
                        out[c * modp.dim : (c + 1) * modp.dim] = (
                            out[c * modp.dim : (c + 1) * modp.dim] + cf * target
                        ) % p
        return out

    # phi: t^c (x) t^u pi^j x^k -> sum_i t^c sigma^i(t^u) e_i pi^j x^k
    phi = np.zeros((sdim, tdim), dtype=np.int64)
    for c in range(n):
        for ai, (u, j, k) in enumerate(modp.labels):
            src = c * modp.dim + ai
            for i in range(n):
                val = tc[c] * sigma_pow(gen_pows[u], i)
                for m3, cf in enumerate(val.coeffs):
                    if cf:
                        phi[sindex[(m3, i, j, k)], src] = cf
    if rank_mod_p(phi, p) != sdim or sdim != tdim:
        raise AssociativityError("scalar-splitting map is not bijective")
    # multiplicativity on all pairs of tensor basis vectors
    for s1 in range(tdim):
        v1 = _unit_vec(tdim, s1)
        img1 = phi[:, s1]
        for s2 in range(tdim):
            v2 = _unit_vec(tdim, s2)
            lhs = phi @ tensor_mul_vec(v1, v2) % p
            rhs = split_alg.mul_vec(img1, phi[:, s2])
            if np.any((lhs - rhs) % p):
                raise AssociativityError("scalar-splitting map is not multiplicative")
    return split_alg, basis, phi


def _subfield_basis(ft, r, n):
    """An F_p-basis of the degree-r subfield F_S inside F_T = F_{p^{rn}}."""
    out = []
    # fixed field of frobenius^r: solve linear system
    fr = np.zeros((r * n, r * n), dtype=np.int64)
    for i in range(r * n):
        e = [0] * (r * n)
        e[i] = 1
        fr[:, i] = frobenius(ft.elem(e), r).coeffs
    M = (fr - np.eye(r * n, dtype=np.int64)) % ft.p
    ker = nullspace_mod_p(M, ft.p)
    assert ker.shape[1] == r
    for j in range(r):
        out.append(ft.elem([int(x) for x in ker[:, j]]))
    return out


def _scalar_action(modp, s_elem, t: Tower):
    """Matrix of multiplication by the central scalar s_elem in A/(p)."""
    # s_elem lies in F_S <= F_T: acts on the t^u part of each basis vector
    dim = modp.dim
    M = np.zeros((dim, dim), dtype=np.int64)
    ft = fq_make(t.p, t.r * t.n)
    index = {lab: i for i, lab in enumerate(modp.labels)}
    for i, (u, j, k) in enumerate(modp.labels):
        val = s_elem * (ft.gen() ** u)
        for u3, c in enumerate(val.coeffs):
            if c:
                M[index[(u3, j, k)], i] = c
    return M
