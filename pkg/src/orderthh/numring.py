"""Monogenic number rings, prime factorization with the maximality test, and
the global homology groups of a maximal order as abelian groups.

The center is V = Z[x]/(f); odd-degree answers are cokernels of integer
multiplication matrices, computed by exact Smith normal form over Z.  The
division-algebra data enters only through the ramified primes (P, e_P), which
are user input; each residue field F_P contributes e_P - 1 elementary abelian
summands in degree 0 and in the even degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import factor_poly, is_prime, pdeg, pnorm, pgcd, pmul, pdivmod
from .local import make_tower


class NotPMaximalError(RuntimeError):
    def __init__(self, p):
        super().__init__(f"the monogenic model is not maximal at {p}")
        self.p = p


class UncertifiedError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial utilities
# ---------------------------------------------------------------------------

def int_poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def int_poly_deriv(f):
    return [i * c for i, c in enumerate(f)][1:]


def _bareiss_det(M):
    """Exact integer determinant (Bareiss elimination)."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def resultant(f, g):
    f, g = int_poly_trim(f), int_poly_trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return 0
    if n == 0:
        return g[0] ** m
    if m == 0:
        return f[0] ** n
    size = m + n
    M = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(f)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(g)):
            M[n + i][i + j] = c
    return _bareiss_det(M)


def discriminant(f):
    f = int_poly_trim(f)
    m = len(f) - 1
    if m <= 1:
        return 1
    res = resultant(f, int_poly_deriv(f))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * res // f[-1]


# ---------------------------------------------------------------------------
# number ring specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberRingSpec:
    f: tuple  # monic integer polynomial, low degree first

    def __post_init__(self):
        f = int_poly_trim(self.f)
        if not f or f[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        object.__setattr__(self, "f", tuple(f))
        certify_irreducible(self.f)

    @property
    def degree(self):
        return len(self.f) - 1

    @property
    def disc(self):
        return discriminant(list(self.f))


def certify_irreducible(f):
    """Certify irreducibility over Q: irreducible mod some prime <= 100 that
    does not divide the discriminant; degree-one polynomials are trivially
    irreducible.  Refuses (UncertifiedError) otherwise."""
    f = int_poly_trim(f)
    m = len(f) - 1
    if m == 1:
        return True
    disc = discriminant(f)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97):
        if disc % p == 0:
            continue
        fp = pnorm(f, p)
        if pdeg(fp) != m:
            continue
        fk = factor_poly(list(fp), p)
        if len(fk.factors) == 1 and fk.factors[0][1] == 1:
            return True
    raise UncertifiedError(
        "could not certify irreducibility by reduction mod a prime <= 100"
    )


def factor_prime(spec: NumberRingSpec, p):
    """[(g_i, e_i, f_i)] for f mod p, with the p-maximality criterion.

    Factors are in the deterministic order of factor_poly (degree, then
    coefficients); raises NotPMaximalError when Z[x]/(f) is not maximal at p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = list(spec.f)
    fk = factor_poly(pnorm(f, p), p)
    factors = [(list(g), mult, pdeg(list(g))) for g, mult in fk.factors]
    if spec.degree >= 1 and not _dedekind_maximal(f, p, fk):
        raise NotPMaximalError(p)
    return factors


def _dedekind_maximal(f, p, fk):
    if len(f) - 1 == 1:
        return True
    gbar = [1]
    for g, _ in fk.factors:
        gbar = pmul(gbar, list(g), p)
    hbar = pdivmod(pnorm(f, p), gbar, p)[0]
    glift = _monic_lift(gbar, p)
    hlift = _monic_lift(hbar, p)
    prod = _int_mul(glift, hlift)
    diff = _int_sub(prod, f)
    F = [c // p for c in diff]
    assert all(c % p == 0 for c in diff)
    Fbar = pnorm(F, p)
    g1 = pgcd(Fbar, gbar, p)
    g2 = pgcd(g1, hbar, p)
    return pdeg(g2) == 0


def _monic_lift(g, p):
    return [int(c) for c in g]


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_sub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


# ---------------------------------------------------------------------------
# abelian groups and integer Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupFG:
    free_rank: int
    prime_powers: tuple  # ((l, e), ...) sorted

    @classmethod
    def from_invariant_factors(cls, free_rank, factors):
        pp = []
        for d in factors:
            d = abs(d)
            if d <= 1:
                continue
            q = 2
            while q * q <= d:
                if d % q == 0:
                    e = 0
                    while d % q == 0:
                        d //= q
                        e += 1
                    pp.append((q, e))
                q += 1
            if d > 1:
                pp.append((d, 1))
        return cls(free_rank=free_rank, prime_powers=tuple(sorted(pp)))

    def order_torsion(self):
        out = 1
        for l, e in self.prime_powers:
            out *= l**e
        return out

    def torsion_strings(self):
        return [f"{l}^{e}" for l, e in self.prime_powers]

    def p_part_valuation(self, p):
        return sum(e for l, e in self.prime_powers if l == p)

    def is_zero(self):
        return self.free_rank == 0 and not self.prime_powers


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_snf(M):
    """Diagonal invariant factors of an integer matrix, divisibility-ordered."""
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    r = min(m, n)
    for t in range(r):
        # move a nonzero pivot of minimal absolute value to (t, t)
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i0, j0 = best
            A[t], A[i0] = A[i0], A[t]
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    g, x, y = _xgcd(A[t][t], A[i][t])
                    a, b = A[t][t] // g, A[i][t] // g
                    At, Ai = A[t], A[i]
                    for j in range(t, n):
                        u, v = At[j], Ai[j]
                        At[j] = x * u + y * v
                        Ai[j] = -b * u + a * v
                    done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    g, x, y = _xgcd(A[t][t], A[t][j])
                    a, b = A[t][t] // g, A[t][j] // g
                    for i in range(t, m):
                        u, v = A[i][t], A[i][j]
                        A[i][t] = x * u + y * v
                        A[i][j] = -b * u + a * v
                    done = False
            if done:
                break
    diag = [abs(A[i][i]) for i in range(r)]
    # enforce divisibility
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b:
                g = _xgcd(a, b)[0]
                diag[i], diag[j] = g, a * b // g
            elif b and not a:
                diag[i], diag[j] = b, 0
    return sorted([d for d in diag], key=lambda d: (d == 0, d))


def _mult_matrix(f, elem_poly):
    """Matrix of multiplication by elem_poly on Z[x]/(f), power basis."""
    m = len(f) - 1
    cols = []
    for j in range(m):
        prod = [0] * j + list(elem_poly)
        # reduce mod f
        prod = prod + [0]
        while len(int_poly_trim(prod)) - 1 >= m:
            prod = int_poly_trim(prod)
            lead = prod[-1]
            shift = len(prod) - 1 - m
            for i, c in enumerate(f):
                prod[shift + i] -= lead * c
            prod = int_poly_trim(prod)
        prod = int_poly_trim(prod)
        cols.append([prod[i] if i < len(prod) else 0 for i in range(m)])
    return [[cols[j][i] for j in range(len(cols))] for i in range(m)]


def thh_V(spec: NumberRingSpec, i: int) -> AbelianGroupFG:
    """Degree 0: free of rank m; odd 2a-1: V/(a f'(x)); even positive: 0."""
    m = spec.degree
    if i < 0 or (i > 0 and i % 2 == 0):
        return AbelianGroupFG(0, ())
    if i == 0:
        return AbelianGroupFG(m, ())
    a = (i + 1) // 2
    fp = int_poly_deriv(list(spec.f))
    if not int_poly_trim(fp):
        raise ValueError("inseparable defining polynomial")
    M = _mult_matrix(list(spec.f), [a * c for c in fp])
    diag = integer_snf(M)
    if any(d == 0 for d in diag):
        raise ValueError("multiplication by a f'(x) is not injective")
    # refuse if the model is not maximal at a prime dividing the answer
    order = 1
    for d in diag:
        order *= d
    for p in _prime_divisors(order):
        factor_prime(spec, p)
    return AbelianGroupFG.from_invariant_factors(0, diag)


def _prime_divisors(n):
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# global algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamifiedPrime:
    p: int
    factor_index: int
    e: int
    local_eisenstein: tuple | None = None  # integer coefficients over the Witt base

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("ramified entries need e >= 2")


@dataclass(frozen=True)
class GlobalAlgebraSpec:
    center: NumberRingSpec
    ramification: tuple  # of RamifiedPrime

    def __post_init__(self):
        seen = set()
        for ram in self.ramification:
            key = (ram.p, ram.factor_index)
            if key in seen:
                raise ValueError("duplicate ramified prime")
            seen.add(key)

    def residue_data(self, ram: RamifiedPrime):
        """(f_P, e(P|p)) of the underlying prime of the center."""
        factors = factor_prime(self.center, ram.p)
        if ram.factor_index >= len(factors):
            raise ValueError(
                f"prime index {ram.factor_index} out of range at {ram.p}"
            )
        g, mult, fdeg = factors[ram.factor_index]
        return fdeg, mult


def _residue_summands(gspec: GlobalAlgebraSpec):
    """Prime powers of the even-degree torsion: each F_P appears e_P - 1 times."""
    pp = []
    for ram in gspec.ramification:
        fdeg, _ = gspec.residue_data(ram)
        pp.extend([(ram.p, 1)] * (fdeg * (ram.e - 1)))
    return tuple(sorted(pp))


def thh_U(gspec: GlobalAlgebraSpec, i: int) -> AbelianGroupFG:
    if i < 0:
        return AbelianGroupFG(0, ())
    if i == 0:
        return AbelianGroupFG(gspec.center.degree, _residue_summands(gspec))
    if i % 2 == 1:
        return thh_V(gspec.center, i)
    return AbelianGroupFG(0, _residue_summands(gspec))


def hh_U(gspec: GlobalAlgebraSpec, i: int) -> AbelianGroupFG:
    """Same shape as thh_U, but odd degrees are V/(f'(x)), a-independent."""
    if i < 0:
        return AbelianGroupFG(0, ())
    if i % 2 == 0:
        return thh_U(gspec, i)
    spec = gspec.center
    fp = int_poly_deriv(list(spec.f))
    M = _mult_matrix(list(spec.f), fp)
    diag = integer_snf(M)
    if any(d == 0 for d in diag):
        raise ValueError("multiplication by f'(x) is not injective")
    return AbelianGroupFG.from_invariant_factors(0, diag)


def local_tower_for(gspec: GlobalAlgebraSpec, ram: RamifiedPrime):
    """Rebuild the local tower at a ramified prime, when possible.

    Uses the user-supplied Eisenstein polynomial if present; otherwise the
    canonical z - p works exactly when the center prime is unramified over p.
    Returns None when no Eisenstein data is available.
    """
    fdeg, e_over_p = gspec.residue_data(ram)
    if ram.local_eisenstein is not None:
        coeffs = [c if isinstance(c, (list, tuple)) else (c,) for c in ram.local_eisenstein]
        if len(coeffs) - 1 != e_over_p:
            raise ValueError(
                f"local Eisenstein degree {len(coeffs) - 1} does not match the "
                f"ramification index {e_over_p} of the center prime over {ram.p}"
            )
        return make_tower(ram.p, fdeg, coeffs, ram.e)
    if e_over_p == 1:
        return make_tower(ram.p, fdeg, [-ram.p, 1], ram.e)
    return None


def local_global_consistency(gspec: GlobalAlgebraSpec, i: int):
    """Cross-check the local and global answers in degree i >= 1.

    Even i: each ramified P contributes F_P^(e_P - 1) on both sides.
    Odd i = 2a-1: the p-valuation of |THH_i(V)| equals the sum over P | p of
    f_P (e(P|p) v_p(a) + local different valuation), checked for the primes
    where a tower is available.
    """
    from .closed import thh_A as local_thh_A

    if i < 1:
        raise ValueError("consistency checks start in degree 1")
    report = []
    if i % 2 == 0:
        for ram in gspec.ramification:
            fdeg, _ = gspec.residue_data(ram)
            t = local_tower_for(gspec, ram)
            if t is None:
                report.append(("even", ram.p, ram.factor_index, "skipped"))
                continue
            local = local_thh_A(t, i)
            ok = local.pi_lengths == tuple([1] * (ram.e - 1))
            # global side: (e_P - 1) f_P elementary summands at p
            want = fdeg * (ram.e - 1)
            got = sum(
                1 for (l, e) in thh_U(gspec, i).prime_powers if l == ram.p
            )
            # other ramified primes over the same p also contribute
            same_p = sum(
                gspec.residue_data(r2)[0] * (r2.e - 1)
                for r2 in gspec.ramification
                if r2.p == ram.p
            )
            ok = ok and got == same_p and want <= same_p
            report.append(("even", ram.p, ram.factor_index, "ok" if ok else "mismatch"))
            if not ok:
                raise AssertionError(f"even-degree mismatch at {ram.p}")
    else:
        a = (i + 1) // 2
        glob = thh_V(gspec.center, i)
        for p in sorted({ram.p for ram in gspec.ramification}):
            factors = factor_prime(gspec.center, p)
            towers = {}
            for idx, (g, mult, fdeg) in enumerate(factors):
                ram = next(
                    (r for r in gspec.ramification if r.p == p and r.factor_index == idx),
                    None,
                )
                if ram is not None:
                    towers[idx] = local_tower_for(gspec, ram)
                elif mult == 1:
                    towers[idx] = make_tower(p, fdeg, [-p, 1], 1)
                else:
                    towers[idx] = None
            if any(t is None for t in towers.values()):
                report.append(("odd", p, None, "skipped"))
                continue
            want = 0
            vpa = 0
            aa = a
            while aa % p == 0:
                aa //= p
                vpa += 1
            for idx, (g, mult, fdeg) in enumerate(factors):
                t = towers[idx]
                want += fdeg * (t.d * vpa + t.different_valuation)
            got = glob.p_part_valuation(p)
            status = "ok" if got == want else "mismatch"
            report.append(("odd", p, None, status))
            if status != "ok":
                raise AssertionError(
                    f"odd-degree p-part mismatch at {p}: global {got}, local {want}"
                )
    return report
