"""Independent reference computations used to pin expected test values.

Nothing here imports the package under test.  The routines are slow,
brute-force, and written from first principles on plain Python integers,
so agreement with the fast implementation is meaningful evidence rather
than a tautology.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd


def det_int(rows) -> int:
    """Determinant by cofactor expansion.  Fine for size <= 6."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * det_int(minor)
    return total


def snf_invariants_over_Z(rows) -> list:
    """Nonzero invariant factors d_1 | d_2 | ... via gcds of k x k minors.

    Definitionally correct (d_k = g_k / g_{k-1} with g_k the gcd of all
    k x k minors), hence a trustworthy oracle for small matrices.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rsel in combinations(range(m), k):
            for csel in combinations(range(n), k):
                sub = [[rows[i][j] for j in csel] for i in rsel]
                g = gcd(g, det_int(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def padic_valuation(p: int, x: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 is undefined here")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def cokernel_valuations_mod_pN(p: int, precision: int, rows) -> list:
    """Sorted exponents e with coker(A mod p^N) = sum of Z/p^e summands.

    Computed as the integer Smith form of [A | p^N I], which presents the
    same quotient of Z^m.  Zero exponents are dropped.
    """
    m = len(rows)
    big = p**precision
    aug = [list(r) + [big if i == j else 0 for j in range(m)] for i, r in enumerate(rows)]
    invs = snf_invariants_over_Z(aug)
    vals = [padic_valuation(p, d) for d in invs if d != 0]
    vals += [precision] * (m - len(invs))
    return sorted(v for v in vals if v > 0)


class FiniteModule:
    """A finite abelian p-group with an automorphism, enumerated outright."""

    def __init__(self, moduli, action):
        self.moduli = list(moduli)
        self.action = [list(r) for r in action]
        self.rank = len(moduli)

    def elements(self):
        return product(*(range(m) for m in self.moduli))

    def apply(self, mat, x):
        return tuple(
            sum(mat[i][j] * x[j] for j in range(self.rank)) % self.moduli[i]
            for i in range(self.rank)
        )

    def mat_pow(self, e):
        out = [[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
        base = self.action
        for _ in range(e):
            out = [
                [
                    sum(out[i][k] * base[k][j] for k in range(self.rank))
                    for j in range(self.rank)
                ]
                for i in range(self.rank)
            ]
        return out

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def scale(self, c, x):
        return tuple((c * a) % m for a, m in zip(x, self.moduli))


def brute_tate_invariants(p, group_order, module: FiniteModule, degree, subgroup_order=None):
    """Invariant factors of a Tate cohomology group, by full enumeration.

    The acting group is cyclic of order ``group_order`` via
    ``module.action``; ``subgroup_order`` restricts to the subgroup of
    that order.  Returns exponents sorted descending, e.g. [2, 1] for
    Z/p^2 + Z/p.  Only usable when the module is small enough to list.
    """
    if subgroup_order is None:
        subgroup_order = group_order
    step = group_order // subgroup_order
    t_mat = module.mat_pow(step)
    norm = [[0] * module.rank for _ in range(module.rank)]
    power = [[1 if i == j else 0 for j in range(module.rank)] for i in range(module.rank)]
    for _ in range(subgroup_order):
        for i in range(module.rank):
            for j in range(module.rank):
                norm[i][j] += power[i][j]
        power = [
            [
                sum(power[i][k] * t_mat[k][j] for k in range(module.rank))
                for j in range(module.rank)
            ]
            for i in range(module.rank)
        ]
    ident = [[1 if i == j else 0 for j in range(module.rank)] for i in range(module.rank)]
    t_minus_1 = [[t_mat[i][j] - ident[i][j] for j in range(module.rank)] for i in range(module.rank)]
    if degree % 2 == 0:
        ker_mat, im_mat = t_minus_1, norm
    else:
        ker_mat, im_mat = norm, t_minus_1
    kernel = [x for x in module.elements() if all(v == 0 for v in module.apply(ker_mat, x))]
    image = {module.apply(im_mat, x) for x in module.elements()}
    quotient_order = len(kernel) // len(image)
    # Invariants from the p^k-torsion filtration of the quotient.
    torsion_sizes = []
    k = 1
    while True:
        tk = sum(1 for x in kernel if module.scale(p**k, x) in image) // len(image)
        torsion_sizes.append(tk)
        if tk == quotient_order:
            break
        k += 1
        if k > 60:
            raise RuntimeError("runaway torsion filtration")
    counts = []
    prev = 1
    for tk in torsion_sizes:
        counts.append(padic_valuation(p, tk // prev) if tk != prev else 0)
        prev = tk
    # counts[k-1] = number of invariant factors with exponent >= k
    invariants = []
    for exp in range(len(counts), 0, -1):
        have = counts[exp - 1]
        need = have - len(invariants)
        invariants.extend([exp] * need)
    return sorted(invariants, reverse=True)
