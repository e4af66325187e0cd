"""Finite-precision models of the local tower R < S < T.

R is the truncated Witt ring of F_{p^r}; S = R[pi]/(P) for an Eisenstein P of
degree d; T = W'[pi]/(P) where W' is the Witt ring of degree r*n.  All
arithmetic is mod p^K, i.e. mod pi^(d*K).

Elements of S and T are tuples of Witt-ring elements (the pi-power
coefficients), so everything is immutable and hashable.  The pi-adic valuation
is computed exactly from coordinates: the terms b_j * pi^j have pairwise
distinct valuations d*v_p(b_j) + j, so the minimum is exact with no division.
"""

from __future__ import annotations

from .ffield import is_prime
from .witt import WittRing


class NotEisensteinError(ValueError):
    pass


class _AtCap:
    __slots__ = ()

    def __repr__(self):
        return "AT_CAP"


AT_CAP = _AtCap()


def matinv_mod(M, modulus, p):
    """Inverse of an integer matrix mod p^K; pivots are chosen among units."""
    n = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if A[i][col] % p != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix not invertible mod p")
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, modulus)
        A[col] = [x * inv % modulus for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                c = A[i][col]
                A[i] = [(x - c * y) % modulus for x, y in zip(A[i], A[col])]
    return [row[n:] for row in A]


class EisensteinExt:
    """W[pi]/(P) for a Witt ring W and monic P of degree d over W."""

    def __init__(self, witt: WittRing, P):
        self.w = witt
        self.P = tuple(P)  # length d+1, elements of witt
        self.d = len(P) - 1
        self.cap = self.d * witt.K
        # reduction table: pi^(d+i) in the power basis, i < d-1
        self._red = []
        cur = [witt.neg(c) for c in self.P[: self.d]]
        for _ in range(max(0, self.d - 1)):
            self._red.append(tuple(cur))
            cur = [witt.zero()] + cur
            if len(cur) > self.d:
                top = cur.pop()
                cur = [witt.add(cur[i], witt.mul(top, self._red[0][i])) for i in range(self.d)]
        # p = pi * mu with mu = -(P_0/p)^(-1) * (pi^(d-1) + sum_{i>=1} (P_i/p) pi^(i-1))
        self._p0_over_p_inv = witt.inv(witt.divide_by_p(self.P[0]))

    def __repr__(self):
        return f"{self.w}[pi]/(deg {self.d})"

    def zero(self):
        return (self.w.zero(),) * self.d

    def one(self):
        return (self.w.one(),) + (self.w.zero(),) * (self.d - 1)

    def pi(self):
        if self.d == 1:
            return (self.w.neg(self.P[0]),)
        return (self.w.zero(), self.w.one()) + (self.w.zero(),) * (self.d - 2)

    def from_int(self, a):
        return (self.w.from_int(a),) + (self.w.zero(),) * (self.d - 1)

    def from_witt(self, b):
        return (b,) + (self.w.zero(),) * (self.d - 1)

    def elem(self, coeffs):
        c = list(coeffs)[: self.d]
        c += [self.w.zero()] * (self.d - len(c))
        return tuple(c)

    def add(self, a, b):
        return tuple(self.w.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.w.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.w.neg(x) for x in a)

    def mul(self, a, b):
        w, d = self.w, self.d
        prod = [w.zero()] * (2 * d - 1)
        for i, x in enumerate(a):
            if not w.is_zero(x):
                for j, y in enumerate(b):
                    prod[i + j] = w.add(prod[i + j], w.mul(x, y))
        out = list(prod[:d])
        for i in range(d, 2 * d - 1):
            c = prod[i]
            if not w.is_zero(c):
                red = self._red[i - d]
                for k in range(d):
                    out[k] = w.add(out[k], w.mul(c, red[k]))
        return tuple(out)

    def smul(self, c, a):
        """Multiply by a Witt-ring scalar."""
        return tuple(self.w.mul(c, x) for x in a)

    def pow(self, a, e):
        out = self.one()
        base = a
        while e > 0:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def is_zero(self, a):
        return all(self.w.is_zero(x) for x in a)

    def val(self, a):
        """Exact pi-adic valuation; returns self.cap for zero."""
        best = self.cap
        for j, b in enumerate(a):
            v = self.w.val_p(b)
            if v < self.w.K:
                best = min(best, self.d * v + j)
        return best

    def divide_by_pi(self, a):
        """y with pi*y == a exactly, for val(a) >= 1."""
        w = self.w
        if w.val_p(a[0]) < 1:
            raise ValueError("element not divisible by pi")
        y_top = w.neg(w.mul(w.divide_by_p(a[0]), self._p0_over_p_inv))
        out = [w.add(a[j + 1], w.mul(self.P[j + 1], y_top)) for j in range(self.d - 1)]
        out.append(y_top)
        return tuple(out)

    def shift_down(self, a, k):
        for _ in range(k):
            a = self.divide_by_pi(a)
        return a

    def pi_pow(self, k):
        if k >= self.cap:
            return self.zero()
        return self.pow(self.pi(), k)

    def residue(self, a):
        """Image in the residue field F_{p^g} of the Witt ring."""
        return self.w.residue(a[0])

    def inv_unit(self, a):
        res = self.residue(a)
        if res.is_zero():
            raise ZeroDivisionError("not a unit (positive pi-valuation)")
        z = self.from_witt(self.w.lift(res.inverse()))
        steps = max(1, (self.cap - 1).bit_length() + 1)
        two = self.from_int(2)
        for _ in range(steps):
            z = self.mul(z, self.sub(two, self.mul(a, z)))
        assert self.mul(a, z) == self.one()
        return z

    def flat(self, a):
        """Flatten to a list of ints, Witt coordinates inner, pi powers outer."""
        out = []
        for b in a:
            out.extend(b)
        return out

    def unflat(self, ints):
        g = self.w.degree
        return tuple(self.w.elem(ints[j * g : (j + 1) * g]) for j in range(self.d))


class Tower:
    """The full local setup (p, r, Eisenstein P, n, K) with sigma and traces."""

    def __init__(self, p, r, P_int, n, K, generator_exponent=1, requested_K=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1 or n < 1 or K < 1:
            raise ValueError("r, n, K must be positive")
        from math import gcd

        if gcd(generator_exponent, n) != 1:
            raise ValueError("generator exponent must be coprime to n")
        self.p, self.r, self.n, self.K = p, r, n, K
        self.gen_exp = generator_exponent % n if n > 1 else 0
        self.requested_K = requested_K if requested_K is not None else K
        self.P_int = tuple(tuple(c) for c in P_int)  # d+1 int tuples in R's generator
        self.d = len(P_int) - 1
        lead = list(self.P_int[-1])
        if self.d < 1 or lead[0] != 1 or any(c != 0 for c in lead[1:]):
            raise NotEisensteinError("P must be monic of degree >= 1")

        self.R = WittRing(p, r, K)
        P_R = [self.R.elem(c) for c in P_int]
        for i, c in enumerate(P_R[:-1]):
            if self.R.val_p(c) < 1:
                raise NotEisensteinError(f"coefficient {i} not divisible by p")
        if self.R.val_p(P_R[0]) != 1:
            raise NotEisensteinError("constant term must have p-valuation exactly 1")
        self.S = EisensteinExt(self.R, P_R)

        self.W2 = WittRing(p, r * n, K)
        if r == 1:
            self._embed_gen = self.W2.zero()
        else:
            self._embed_gen = self.W2.root_of([int(c) for c in self.R.modulus])
        P_T = [self.embed_witt(c) for c in P_R]
        self.T = EisensteinExt(self.W2, P_T)

        self.cap = self.d * K
        self._sigma_step = (self.r * self.gen_exp) % (self.r * self.n) if n > 1 else 0
        self._s_coord_cache = None

    # -- embeddings ------------------------------------------------------------
    def embed_witt(self, b):
        """R-element (int tuple) -> W' via the lifted root of R's modulus."""
        acc = self.W2.zero()
        for c in reversed(b):
            acc = self.W2.add(self.W2.mul(acc, self._embed_gen), self.W2.from_int(c))
        return acc

    def embed_s(self, x):
        """S-element -> T-element."""
        return tuple(self.embed_witt(b) for b in x)

    # -- Galois action -----------------------------------------------------------
    def sigma_witt(self, b, power=1):
        k = (self._sigma_step * power) % (self.r * self.n) if self.n > 1 else 0
        return self.W2.frob(b, k)

    def sigma(self, x, power=1):
        """The chosen generator of Gal(T/S), fixing pi."""
        return tuple(self.sigma_witt(b, power) for b in x)

    def sigma_inv(self, x):
        return self.sigma(x, power=self.n - 1)

    def trace_T_S(self, x):
        """Sum of sigma^i(x); lands in the embedded copy of S."""
        acc = self.T.zero()
        for i in range(self.n):
            acc = self.T.add(acc, self.sigma(x, power=i))
        return acc

    # -- valuations ------------------------------------------------------------
    def valuation_pi(self, x, ring=None):
        """pi-adic valuation of an S- or T-element; AT_CAP when 0 mod p^K."""
        ext = ring if ring is not None else (self.S if len(x) and len(x[0]) == self.r else self.T)
        v = ext.val(x)
        return AT_CAP if v >= ext.cap else v

    def different_valuation_raw(self):
        """v_pi(P'(pi)) at this precision; cap value if it overflows."""
        S = self.S
        dP = [self.R.smul(i, c) for i, c in enumerate(self.S.P) if i >= 1]
        acc = S.zero()
        for j, c in enumerate(dP):
            acc = S.add(acc, S.smul(c, S.pi_pow(j)))
        return S.val(acc)

    @property
    def different_valuation(self):
        v = self.different_valuation_raw()
        if v >= self.cap:
            raise PrecisionError("different valuation at precision cap; escalate K")
        return v

    # -- T as a free S-module on the Witt-generator power basis -----------------
    def _s_coord_data(self):
        if self._s_coord_cache is None:
            n, r, d = self.n, self.r, self.d
            N = n * r * d
            cols = []
            w2pow = [self.W2.pow(self.W2.gen(), k) for k in range(n)]
            rgen = [self.R.pow(self.R.gen(), u) for u in range(r)]
            for k in range(n):
                for u in range(r):
                    base = self.W2.mul(w2pow[k], self.embed_witt(rgen[u]))
                    for j in range(d):
                        telem = self.T.smul(base, self.T.pi_pow(j))
                        cols.append(self.T.flat(telem))
            M = [[cols[c][row] for c in range(N)] for row in range(N)]
            Minv = matinv_mod(M, self.R.pk, self.p)
            self._s_coord_cache = (M, Minv)
        return self._s_coord_cache

    def t_to_s_coords(self, x):
        """T-element -> n-vector of S-elements w.r.t. basis {w'^k}."""
        _, Minv = self._s_coord_data()
        flat = self.T.flat(x)
        pk = self.R.pk
        N = len(flat)
        y = [sum(Minv[i][j] * flat[j] for j in range(N)) % pk for i in range(N)]
        out = []
        rd = self.r * self.d
        for k in range(self.n):
            chunk = y[k * rd : (k + 1) * rd]
            # coefficient of pi^j is sum_u chunk[u*d+j] * w_r^u
            selem = tuple(
                self.R.elem([chunk[u * self.d + j] for u in range(self.r)])
                for j in range(self.d)
            )
            out.append(selem)
        return out

    def s_coords_to_t(self, coords):
        """Inverse of t_to_s_coords."""
        acc = self.T.zero()
        w2 = self.W2
        for k, s in enumerate(coords):
            base = w2.pow(w2.gen(), k)
            term = tuple(w2.mul(base, self.embed_witt(b)) for b in s)
            acc = self.T.add(acc, term)
        return acc

    def s_linear_matrix(self, f):
        """n x n matrix over S of an S-linear map f: T -> T (columns = images)."""
        w2 = self.W2
        cols = []
        for k in range(self.n):
            basis_el = self.T.from_witt(w2.pow(w2.gen(), k))
            cols.append(self.t_to_s_coords(f(basis_el)))
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    # -- named maps --------------------------------------------------------------
    def p_prime_pi(self):
        """P'(pi) as an S-element."""
        S = self.S
        acc = S.zero()
        for i in range(1, self.d + 1):
            acc = S.add(acc, S.smul(self.R.smul(i, self.S.P[i]), S.pi_pow(i - 1)))
        return acc

    def map_pi_one_minus_sigma_inv(self):
        pi_t = self.T.pi()
        return self.s_linear_matrix(
            lambda x: self.T.mul(pi_t, self.T.sub(x, self.sigma_inv(x)))
        )

    def map_p_prime_trace(self):
        pp = self.embed_s(self.p_prime_pi())
        return self.s_linear_matrix(lambda x: self.T.mul(pp, self.trace_T_S(x)))

    def map_trace(self):
        return self.s_linear_matrix(self.trace_T_S)

    def map_one_minus_sigma_inv(self):
        return self.s_linear_matrix(lambda x: self.T.sub(x, self.sigma_inv(x)))

    def map_scalar(self, s_elem):
        return self.s_linear_matrix(lambda x: self.T.mul(self.embed_s(s_elem), x))

    def __repr__(self):
        return (
            f"Tower(p={self.p}, r={self.r}, d={self.d}, n={self.n}, K={self.K})"
        )


class PrecisionError(RuntimeError):
    pass


def sigma(t: Tower, x, power=1):
    """The chosen generator of Gal(T/S) applied to a T-element."""
    return t.sigma(x, power=power)


def trace_T_S(t: Tower, x):
    """Sum of sigma^i(x), i = 0..n-1; lands in the embedded copy of S."""
    return t.trace_T_S(x)


def valuation_pi(t: Tower, x, ring=None):
    """pi-adic valuation of an S- or T-element, or AT_CAP."""
    return t.valuation_pi(x, ring=ring)


def different_valuation(t: Tower) -> int:
    """v_pi(P'(pi)); equals d - 1 for tame towers."""
    return t.different_valuation


def tower_to_dict(t: Tower):
    """TOML-ready mapping: {p, r, eisenstein, n, precision}."""
    return {
        "p": t.p,
        "r": t.r,
        "eisenstein": [list(c) for c in t.P_int],
        "n": t.n,
        "precision": t.K,
    }


def tower_from_dict(data, K=None, max_degree=12):
    """Build a tower from the TOML table; 'precision' is optional."""
    eis = data["eisenstein"]
    coeffs = [c if isinstance(c, (list, tuple)) else (c,) for c in eis]
    precision = K if K is not None else data.get("precision")
    return make_tower(
        int(data["p"]),
        int(data["r"]),
        coeffs,
        int(data["n"]),
        K=precision,
        generator_exponent=int(data.get("generator_exponent", 1)),
        max_degree=max_degree,
    )


def make_tower(p, r, P_int, n, K=None, generator_exponent=1, max_degree=12):
    """Build a tower, choosing and escalating precision automatically.

    P_int: list of d+1 integer polynomials in R's Witt generator (ints are
    promoted to constants).  When K is None, precision is chosen so that
    d*K >= 8 and all odd-degree answers through max_degree stay below the cap.
    """
    P_int = [(c,) if isinstance(c, int) else tuple(c) for c in P_int]
    d = len(P_int) - 1
    requested = K
    # the Eisenstein structure is invisible mod p, so K >= 2 always
    K0 = max(K if K is not None else 4, 2)
    diff = None
    for _ in range(8):
        t = Tower(p, r, P_int, n, K0, generator_exponent, requested_K=requested or K0)
        v = t.different_valuation_raw()
        if v < t.cap:
            diff = v
            break
        K0 *= 2
    if diff is None:
        raise PrecisionError("different valuation did not stabilize")
    if K is None:
        amax = max(1, (max_degree + 1) // 2)
        vpa = 0
        # largest v_p(a) for a <= amax
        while p ** (vpa + 1) <= amax:
            vpa += 1
        need = d * vpa + diff + 2
        K = max(4, -(-8 // d), -(-need // d), K0 if requested is None else 0)
    if K * d <= diff:
        K = (diff + 2 + d - 1) // d + 1
    K = max(K, 2)
    t = Tower(p, r, P_int, n, K, generator_exponent, requested_K=requested or K)
    assert t.different_valuation == diff
    return t
