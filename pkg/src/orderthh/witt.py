"""Truncated Witt rings: the unramified extension of Z/p^K with residue field F_{p^g}.

Elements are coefficient tuples over Z/p^K in the power basis of the Witt
generator w, whose minimal polynomial is the integer lift of the deterministic
F_{p^g} modulus.  The Frobenius lift (the unique ring automorphism reducing to
x -> x^p) is computed by Hensel-lifting the root w^p of the modulus.
"""

from __future__ import annotations

from .ffield import FqElem, fq_make


class WittRing:
    def __init__(self, p: int, degree: int, K: int):
        if K < 1:
            raise ValueError("precision K must be >= 1")
        self.p = p
        self.degree = degree
        self.K = K
        self.pk = p**K
        self.residue_field = fq_make(p, degree)
        self.modulus = tuple(int(c) for c in self.residue_field.modulus)
        g = degree
        # reduction table for w^(g+i), i < g-1
        self._red = []
        cur = [(-c) % self.pk for c in self.modulus[:-1]]
        for _ in range(max(0, g - 1)):
            self._red.append(tuple(cur))
            cur = [0] + cur
            if len(cur) > g:
                top = cur.pop()
                cur = [(cur[i] + top * self._red[0][i]) % self.pk for i in range(g)]
        self._frob_image = None
        self._frob_pows = {}

    def __repr__(self):
        return f"W(F_{self.p}^{self.degree}; p^{self.K})"

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.p, self.degree, self.K) == (
            other.p,
            other.degree,
            other.K,
        )

    def __hash__(self):
        return hash(("WittRing", self.p, self.degree, self.K))

    # -- element helpers: elements are plain tuples of ints in [0, p^K) -------
    def zero(self):
        return (0,) * self.degree

    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def gen(self):
        if self.degree == 1:
            return self.zero()
        return (0, 1) + (0,) * (self.degree - 2)

    def from_int(self, a):
        return (a % self.pk,) + (0,) * (self.degree - 1)

    def elem(self, coeffs):
        c = list(coeffs)[: self.degree]
        c += [0] * (self.degree - len(c))
        return tuple(x % self.pk for x in c)

    def add(self, a, b):
        return tuple((x + y) % self.pk for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pk for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.pk for x in a)

    def smul(self, c, a):
        return tuple(c * x % self.pk for x in a)

    def mul(self, a, b):
        g, pk = self.degree, self.pk
        prod = [0] * (2 * g - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % pk
        out = list(prod[:g])
        for i in range(g, 2 * g - 1):
            c = prod[i]
            if c:
                red = self._red[i - g]
                for k in range(g):
                    out[k] = (out[k] + c * red[k]) % pk
        return tuple(out)

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
        return all(c == 0 for c in a)

    def poly_eval(self, coeffs, x):
        """Evaluate a polynomial with WittRing coefficients at x (Horner)."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # -- p-adic structure ------------------------------------------------------
    def val_p(self, a):
        """min over coordinates of v_p; K means zero at this precision."""
        best = self.K
        for c in a:
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            best = min(best, v)
            if best == 0:
                return 0
        return best

    def divide_by_p(self, a):
        """Exact division by p (requires val_p >= 1); canonical representative."""
        if any(c % self.p for c in a):
            raise ValueError("not divisible by p")
        return tuple((c // self.p) % self.pk for c in a)

    def residue(self, a) -> FqElem:
        return self.residue_field.elem([c % self.p for c in a])

    def lift(self, x: FqElem):
        return self.elem(x.coeffs)

    def inv(self, a):
        """Inverse of a unit, Hensel-lifted from the residue field."""
        res = self.residue(a)
        if res.is_zero():
            raise ZeroDivisionError("not a unit in the Witt ring")
        z = self.lift(res.inverse())
        # z <- z(2 - az), doubling p-adic correctness each step
        steps = max(1, (self.K - 1).bit_length() + 1)
        two = self.from_int(2)
        for _ in range(steps):
            z = self.mul(z, self.sub(two, self.mul(a, z)))
        assert self.mul(a, z) == self.one()
        return z

    # -- Frobenius lift --------------------------------------------------------
    def frob_image(self):
        """The Hensel-lifted root of the modulus congruent to w^p mod p."""
        if self._frob_image is None:
            if self.degree == 1:
                self._frob_image = self.zero()
            else:
                m = [self.from_int(c) for c in self.modulus]
                dm = [self.smul(i, m[i]) for i in range(1, len(m))]
                x = self.pow(self.gen(), self.p)
                for _ in range(max(1, (self.K - 1).bit_length() + 1)):
                    fx = self.poly_eval(m, x)
                    if self.is_zero(fx):
                        break
                    dfx = self.poly_eval(dm, x)
                    x = self.sub(x, self.mul(fx, self.inv(dfx)))
                assert self.is_zero(self.poly_eval(m, x))
                self._frob_image = x
        return self._frob_image

    def frob_matrix_power(self, k):
        """Columns of w^i -> frob^k(w)^i in the power basis."""
        k = k % self.degree if self.degree > 1 else 0
        if k not in self._frob_pows:
            img = self.gen()
            for _ in range(k):
                img = self.subst(self.frob_image(), img)
            cols = []
            acc = self.one()
            for _ in range(self.degree):
                cols.append(acc)
                acc = self.mul(acc, img)
            self._frob_pows[k] = tuple(cols)
        return self._frob_pows[k]

    def subst(self, poly_elem, x):
        """Evaluate the element poly_elem (as a polynomial in w) at x."""
        acc = self.zero()
        for c in reversed(poly_elem):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    def frob(self, a, k=1):
        cols = self.frob_matrix_power(k)
        out = self.zero()
        for i, c in enumerate(a):
            if c:
                out = self.add(out, self.smul(c, cols[i]))
        return out

    def root_of(self, sub_modulus_int):
        """Hensel-lifted root in this ring of an integer monic polynomial that
        splits in the residue field (used to embed a smaller Witt ring)."""
        fld = self.residue_field
        target = None
        p = self.p
        for cand in fld.elements():
            acc = fld.zero()
            for c in reversed(sub_modulus_int):
                acc = acc * cand + fld.from_int(c)
            if acc.is_zero():
                target = cand
                break
        if target is None:
            raise ValueError("polynomial has no root in the residue field")
        m = [self.from_int(c) for c in sub_modulus_int]
        dm = [self.smul(i, m[i]) for i in range(1, len(m))]
        x = self.lift(target)
        for _ in range(max(1, (self.K - 1).bit_length() + 1)):
            fx = self.poly_eval(m, x)
            if self.is_zero(fx):
                break
            x = self.sub(x, self.mul(fx, self.inv(self.poly_eval(dm, x))))
        assert self.is_zero(self.poly_eval(m, x))
        return x
