"""Arithmetic in F_p and F_{p^r}: Frobenius, relative trace, polynomial factorization.

Polynomials over F_p are dense coefficient lists, low degree first, entries
reduced into [0, p).  Field moduli are chosen deterministically (the
lexicographically smallest monic irreducible), so two runs, or two machines,
always build the same model of F_{p^r}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache


class NotPrimeError(ValueError):
    pass


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers p < 2^31)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p
# ---------------------------------------------------------------------------

def ptrim(f):
    """Drop trailing zeros; the zero polynomial is []."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def pnorm(f, p):
    return ptrim([c % p for c in f])


def pdeg(f):
    return len(f) - 1


def padd(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return ptrim(out)


def psub(f, g, p):
    return padd(f, [(-c) % p for c in g], p)


def pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return ptrim(out)


def pdivmod(f, g, p):
    """Division with remainder; g must be nonzero."""
    f = list(f)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = pdeg(g)
    inv_lead = pow(g[-1], p - 2, p) if g[-1] != 1 else 1
    q = [0] * max(0, len(f) - dg)
    while pdeg(f) >= dg and f:
        shift = pdeg(f) - dg
        c = f[-1] * inv_lead % p
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        f = ptrim(f)
    return ptrim(q), ptrim(f)


def pmod(f, g, p):
    return pdivmod(f, g, p)[1]


def pgcd(f, g, p):
    f, g = ptrim(f), ptrim(g)
    while g:
        f, g = g, pmod(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def pmonic(f, p):
    f = ptrim(f)
    if not f or f[-1] == 1:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def ppowmod(f, e, g, p):
    """f^e mod g by square-and-multiply."""
    result = [1]
    base = pmod(f, g, p)
    while e > 0:
        if e & 1:
            result = pmod(pmul(result, base, p), g, p)
        base = pmod(pmul(base, base, p), g, p)
        e >>= 1
    return result


def pderiv(f, p):
    return ptrim([(i * c) % p for i, c in enumerate(f)][1:])


def is_irreducible(f, p):
    """Rabin test: x^{p^n} = x mod f and gcd(x^{p^{n/q}} - x, f) = 1 for prime q|n."""
    f = pmonic(f, p)
    n = pdeg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xp = ppowmod(x, p ** n, f, p)
    if ptrim(psub(xp, x, p)):
        return False
    for q in sorted({q for q in _factorint(n)}):
        xq = ppowmod(x, p ** (n // q), f, p)
        if pdeg(pgcd(psub(xq, x, p), f, p)) != 0:
            return False
    return True


def _factorint(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def smallest_irreducible(p: int, r: int):
    """Lexicographically smallest monic irreducible of degree r over F_p.

    Order: coefficient tuples (c_0, ..., c_{r-1}) compared as integers in
    [0, p), low degree first.
    """
    for code in range(p ** r):
        coeffs = []
        m = code
        for _ in range(r):
            coeffs.append(m % p)
            m //= p
        f = coeffs + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible found")  # impossible for r >= 1


class FqField:
    """The field with p^r elements on the deterministic modulus."""

    def __init__(self, p: int, r: int):
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if p >= 2 ** 31:
            raise ValueError("p must be < 2^31")
        self.p = p
        self.r = r
        self.modulus = smallest_irreducible(p, r)
        # reduction table: w^(r+i) expressed in the power basis, i < r-1
        self._red = []
        cur = [(-c) % p for c in self.modulus[:-1]]
        for _ in range(max(0, r - 1)):
            self._red.append(tuple(cur))
            cur = [0] + cur
            if len(cur) > r:
                top = cur.pop()
                cur = [(cur[i] + top * self._red[0][i]) % p for i in range(r)]
        self._frob_matrix = None

    @property
    def order(self):
        return self.p ** self.r

    def __repr__(self):
        return f"F_{self.p}^{self.r}" if self.r > 1 else f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash(("FqField", self.p, self.r))

    # -- element constructors ------------------------------------------------
    def zero(self):
        return FqElem(self, (0,) * self.r)

    def one(self):
        return FqElem(self, (1,) + (0,) * (self.r - 1))

    def gen(self):
        if self.r == 1:
            return self.zero()  # w satisfies w = 0 for the degree-1 modulus t
        return FqElem(self, (0, 1) + (0,) * (self.r - 2))

    def elem(self, coeffs):
        c = list(coeffs)[: self.r]
        c += [0] * (self.r - len(c))
        return FqElem(self, tuple(x % self.p for x in c))

    def from_int(self, a):
        return FqElem(self, (a % self.p,) + (0,) * (self.r - 1))

    def elements(self):
        """All elements, in lexicographic coefficient order."""
        p, r = self.p, self.r
        for code in range(p ** r):
            coeffs = []
            m = code
            for _ in range(r):
                coeffs.append(m % p)
                m //= p
            yield FqElem(self, tuple(coeffs))

    # -- raw tuple arithmetic --------------------------------------------------
    def _mul(self, a, b):
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        out = prod[:r]
        for i in range(r, 2 * r - 1):
            c = prod[i]
            if c:
                red = self._red[i - r]
                out = [(out[k] + c * red[k]) % p for k in range(r)]
        return tuple(out)

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in F_p[t] against the modulus
        p = self.p
        f, g = list(self.modulus), ptrim(list(a))
        s0, s1 = [], [1]
        while g:
            q, rem = pdivmod(f, g, p)
            f, g = g, rem
            s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        inv_c = pow(f[0], p - 2, p)  # f is a nonzero constant
        s0 = [c * inv_c % p for c in s0]
        s0 += [0] * (self.r - len(s0))
        return tuple(s0[: self.r])

    def frob_matrix(self):
        """Matrix of x -> x^p on the power basis (columns are images)."""
        if self._frob_matrix is None:
            cols = []
            for i in range(self.r):
                e = [0] * self.r
                e[i] = 1
                img = self.elem(e) ** self.p
                cols.append(img.coeffs)
            self._frob_matrix = tuple(cols)
        return self._frob_matrix


@dataclass(frozen=True)
class FqElem:
    field: FqField
    coeffs: tuple

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements from different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FqElem(self.field, tuple(a * other % p for a in self.coeffs))
        self._check(other)
        return FqElem(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        return FqElem(self.field, self.field._inv(self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"{self.field}({list(self.coeffs)})"


def fq_make(p: int, r: int) -> FqField:
    """The field F_{p^r} with the deterministically chosen modulus."""
    return FqField(p, r)


def frobenius(x: FqElem, k: int) -> FqElem:
    """x^(p^k), computed through the precomputed Frobenius matrix."""
    fld = x.field
    k = k % fld.r if fld.r > 1 else 0
    cols = fld.frob_matrix()
    coeffs = x.coeffs
    p = fld.p
    for _ in range(k):
        out = [0] * fld.r
        for i, c in enumerate(coeffs):
            if c:
                col = cols[i]
                for j in range(fld.r):
                    out[j] = (out[j] + c * col[j]) % p
        coeffs = tuple(out)
    return FqElem(fld, coeffs)


def trace_rel(x: FqElem, sub_r: int) -> FqElem:
    """Relative trace to the subfield F_{p^{sub_r}}, returned embedded in F_{p^r}."""
    r = x.field.r
    if r % sub_r != 0:
        raise ValueError(f"{sub_r} does not divide {r}")
    acc = x.field.zero()
    y = x
    for _ in range(r // sub_r):
        acc = acc + y
        y = frobenius(y, sub_r)
    return acc


# ---------------------------------------------------------------------------
# factorization over F_p
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FpPolyFactorization:
    p: int
    leading_unit: int
    factors: tuple  # ((coeff tuple, multiplicity), ...) sorted by (degree, coeffs)

    def product(self):
        out = [self.leading_unit]
        for f, m in self.factors:
            for _ in range(m):
                out = pmul(out, list(f), self.p)
        return out


def _squarefree_parts(f, p):
    """Yield (squarefree factor, multiplicity). Handles the char-p derivative trap."""
    f = pmonic(f, p)
    parts = {}

    def accumulate(g, mult):
        g = pmonic(g, p)
        if pdeg(g) <= 0:
            return
        df = pderiv(g, p)
        if not df:
            # g = h(x^p) = (h*(x))^p since coefficients are in F_p
            h = [g[i] for i in range(0, len(g), p)]
            accumulate(h, mult * p)
            return
        c = pgcd(g, df, p)
        w = pdivmod(g, c, p)[0]
        i = 1
        while pdeg(w) > 0:
            y = pgcd(w, c, p)
            z = pdivmod(w, y, p)[0]
            if pdeg(z) > 0:
                sq = parts.setdefault(mult * i, [1])
                parts[mult * i] = pmul(sq, z, p)
            w = y
            c = pdivmod(c, y, p)[0]
            i += 1
        # leftover c collects the factors with multiplicity divisible by p
        if pdeg(c) > 0:
            accumulate(c, mult)

    accumulate(f, 1)
    return parts


def _distinct_degree(f, p):
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    out = []
    x = [0, 1]
    h = x
    i = 1
    rest = f
    while pdeg(rest) >= 2 * i:
        h = ppowmod(h, p, rest, p)
        g = pgcd(psub(h, x, p), rest, p)
        if pdeg(g) > 0:
            out.append((g, i))
            rest = pdivmod(rest, g, p)[0]
            h = pmod(h, rest, p)
        i += 1
    if pdeg(rest) > 0:
        out.append((rest, pdeg(rest)))
    return out


def _equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of a squarefree product of degree-d irreducibles."""
    n = pdeg(f)
    if n == d:
        return [f]
    while True:
        h = [rng.randrange(p) for _ in range(n)]
        h = ptrim(h)
        if pdeg(h) < 1:
            continue
        if p == 2:
            # trace map over F_{2^d}
            t = h
            acc = h
            for _ in range(d - 1):
                t = ppowmod(t, 2, f, p)
                acc = padd(acc, t, p)
            g = pgcd(acc, f, p)
        else:
            e = (p ** d - 1) // 2
            g = pgcd(psub(ppowmod(h, e, f, p), [1], p), f, p)
        if 0 < pdeg(g) < n:
            left = _equal_degree(g, d, p, rng)
            right = _equal_degree(pdivmod(f, g, p)[0], d, p, rng)
            return left + right


def factor_poly(f, p) -> FpPolyFactorization:
    """Complete factorization into monic irreducibles with multiplicities.

    Deterministic: equal-degree splitting uses a PRNG seeded from (p, f).
    """
    f = pnorm(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    leading = f[-1]
    seed = (p * 0x9E3779B1) & 0xFFFFFFFF
    for c in f:
        seed = (seed * 31 + c + 1) & 0xFFFFFFFF
    rng = random.Random(seed)
    found = {}
    for mult, sqfree in sorted(_squarefree_parts(f, p).items()):
        for g, d in _distinct_degree(sqfree, p):
            for irr in _equal_degree(g, d, p, rng):
                key = tuple(pmonic(irr, p))
                found[key] = found.get(key, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return FpPolyFactorization(p=p, leading_unit=leading, factors=factors)
