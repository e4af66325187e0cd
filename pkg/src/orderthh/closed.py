"""Closed-form evaluators for the homology of S and A, integrally and mod p.

Each function returns a LocalModule of pi-torsion lengths over S (lengths <= d
for mod-p answers); the free summand in degree zero is reported symbolically
through free_rank, never as a capped torsion length.
"""

from __future__ import annotations

from .chainring import LocalModule, module_from_lengths
from .local import Tower


def _vp(p, a):
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def thh_S(t: Tower, i: int) -> LocalModule:
    """Homotopy of the p-completed THH of S: free in degree 0, S/(a P'(pi))
    in degree 2a-1, zero in positive even degrees."""
    cap = t.cap
    if i < 0 or (i > 0 and i % 2 == 0):
        return module_from_lengths([], cap=cap)
    if i == 0:
        return module_from_lengths([], cap=cap, free_rank=1)
    a = (i + 1) // 2
    v = t.d * _vp(t.p, a) + t.different_valuation
    return module_from_lengths([v], cap=cap)


def thh_S_modp(t: Tower, i: int) -> LocalModule:
    """THH of S with mod-p coefficients; the two case tables keyed on p | d."""
    d, p = t.d, t.p
    if i < 0:
        return module_from_lengths([], cap=d)
    if d % p == 0:
        return module_from_lengths([d], cap=d)
    # tame case (includes d = 1)
    if i == 0:
        return module_from_lengths([d], cap=d)
    if i % 2 == 1:
        k = (i + 1) // 2
    else:
        k = i // 2
    if k % p == 0:
        return module_from_lengths([d], cap=d)
    return module_from_lengths([d - 1], cap=d)


def hh_A(t: Tower, i: int) -> LocalModule:
    """Hochschild homology of A over the Witt base: S + F_S^(n-1) in degree 0,
    S/P'(pi) in odd degrees, F_S^(n-1) in positive even degrees."""
    cap = t.cap
    n = t.n
    if i < 0:
        return module_from_lengths([], cap=cap)
    if i == 0:
        return module_from_lengths([1] * (n - 1), cap=cap, free_rank=1)
    if i % 2 == 1:
        return module_from_lengths([t.different_valuation], cap=cap)
    return module_from_lengths([1] * (n - 1), cap=cap)


def hh_A_modp(t: Tower, i: int) -> LocalModule:
    """HH_i(A/(p)): S/(p) + F_S^(n-1) in degree 0, then
    F_S^(n-1) + S/(p, P'(pi)) in all positive degrees."""
    d, p, n = t.d, t.p, t.n
    if i < 0:
        return module_from_lengths([], cap=d)
    if i == 0:
        return module_from_lengths([d] + [1] * (n - 1), cap=d)
    mod_len = d if d % p == 0 else d - 1  # P'(pi) = d pi^(d-1) mod p
    return module_from_lengths([mod_len] + [1] * (n - 1), cap=d)


def thh_A_modp(t: Tower, i: int) -> LocalModule:
    """THH_i(A; A/(p)) = THH_i(S; S/(p)) + F_S^(n-1)."""
    base = thh_S_modp(t, i)
    if i < 0:
        return base
    return module_from_lengths(
        list(base.pi_lengths) + [1] * (t.n - 1), cap=t.d
    )


def thh_A(t: Tower, i: int) -> LocalModule:
    """Homotopy of the p-completed THH of A."""
    cap = t.cap
    n = t.n
    if i < 0:
        return module_from_lengths([], cap=cap)
    if i == 0:
        return module_from_lengths([1] * (n - 1), cap=cap, free_rank=1)
    if i % 2 == 0:
        return module_from_lengths([1] * (n - 1), cap=cap)
    a = (i + 1) // 2
    v = t.d * _vp(t.p, a) + t.different_valuation
    return module_from_lengths([v], cap=cap)


class UCTMismatch(AssertionError):
    pass


def uct_check(t: Tower, max_i: int):
    """Rank accounting between integral and mod-p answers.

    rank(THH_i(A; A/p)) = rank(THH_i(A) (x) F_S) + rank(Tor(THH_{i-1}(A), F_S)),
    counting one generator per cyclic summand; the free summand feeds the
    tensor side only.  Returns the list of (i, lhs, rhs).
    """
    report = []
    for i in range(0, max_i + 1):
        lhs = thh_A_modp(t, i).total_rank()
        cur = thh_A(t, i)
        prev = thh_A(t, i - 1)
        rhs = cur.free_rank + len(cur.pi_lengths) + len(prev.pi_lengths)
        if lhs != rhs:
            raise UCTMismatch(f"degree {i}: mod-p rank {lhs} != {rhs}")
        report.append((i, lhs, rhs))
    return report


def einfty_pattern(t: Tower, max_total: int):
    """Documented E-infinity tables of the weight/filtration spectral sequence
    computing the integral THH of A, as data keyed by (r, s).

    Ramified centers (d > 1): nonzero entries at (0,0), (0, 2a-1), (1, 2a-1).
    Unramified (d = 1): entries at (0,0), (0, 2a-1) [only p | a nonzero],
    (2b, 0) for 0 < b < p, and (2b+1, 2ap-1) for 0 <= b < p, a > 0.
    """
    cap = t.cap
    n, p, d = t.n, t.p, t.d
    table = {}

    def put(r, s, mod):
        if r + s <= max_total and not mod.is_zero():
            table[(r, s)] = mod

    put(0, 0, module_from_lengths([1] * (n - 1), cap=cap, free_rank=1))
    if d > 1:
        for a in range(1, max_total // 2 + 2):
            s = 2 * a - 1
            v = d * _vp(p, a) + t.different_valuation
            put(0, s, module_from_lengths([v], cap=cap))
            put(1, s, module_from_lengths([1] * (n - 1), cap=cap))
    else:
        for a in range(1, max_total // 2 + 2):
            s = 2 * a - 1
            put(0, s, module_from_lengths([_vp(p, a)], cap=cap))
        for b in range(1, p):
            put(2 * b, 0, module_from_lengths([1] * (n - 1), cap=cap))
        for b in range(0, p):
            for a in range(1, max_total // (2 * p) + 2):
                put(2 * b + 1, 2 * a * p - 1, module_from_lengths([1] * (n - 1), cap=cap))
    return table


def einfty_diagonal_consistency(t: Tower, max_total: int):
    """The diagonal sums of the einfty tables must reassemble thh_A."""
    table = einfty_pattern(t, max_total)
    for i in range(0, max_total + 1):
        lengths = []
        free = 0
        for (r, s), mod in table.items():
            if r + s == i:
                lengths.extend(mod.pi_lengths)
                free += mod.free_rank
        got = module_from_lengths(lengths, cap=t.cap, free_rank=free)
        want = thh_A(t, i)
        if got.pi_lengths != want.pi_lengths or got.free_rank != want.free_rank:
            raise UCTMismatch(
                f"degree {i}: einfty diagonal {got} does not match {want}"
            )
    return True
