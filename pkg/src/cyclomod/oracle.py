"""Isomorphism testing for small presented modules, by direct search.

The hom space between two presented modules is a finitely generated
Zp-module, and a spanning set of it mod p^N can be computed outright:
unknown matrix entries are rescaled so that the annihilator constraints
disappear, leaving a single linear system for sigma-equivariance.  Once
a spanning set is in hand, deciding isomorphism reduces to finding one
member that is invertible, and invertibility over a local ring only
depends on the matrix mod p.  That gives the search its shape:

  * cheap invariant comparisons first (underlying group, cohomology),
    any mismatch being a definitive negative;
  * candidate matrices drawn from the spanning set, each verified by an
    honest two-sided inverse check;
  * when the mod-p image of the hom space is low-dimensional, full
    enumeration of it, making a negative answer definitive as well;
  * otherwise seeded random sampling, with Undecided on exhaustion.

Stable isomorphism pads both sides with free modules of matching rank.
Krull-Schmidt holds for finitely generated modules over the complete
local ring Zp[G], so free summands cancel: one definitive answer at the
minimal compatible padding settles every larger padding too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import random

import numpy as np

from . import linalg
from .cohomology import tate
from .config import IsoSearchConfig
from .errors import IllDefinedHom, NotAUnit, PreconditionViolated
from .modules import ModuleHom, PresentedModule, direct_sum, free_module, kernel_of
from .verdicts import NotIsomorphic, NotStablyIsomorphic, Undecided

__all__ = [
    "Iso",
    "StableIso",
    "FreeSummandReport",
    "hom_space_basis",
    "modules_isomorphic",
    "stably_isomorphic",
    "krull_schmidt_note",
]


@dataclass(frozen=True)
class Iso:
    """A verified isomorphism with its verified inverse."""

    forward: ModuleHom
    inverse: ModuleHom

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class StableIso:
    """Isomorphism after padding: first + pad_first free = second + pad_second free."""

    pad_first: int
    pad_second: int
    iso: Iso

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class FreeSummandReport:
    """How many free rank-one summands split off, and what remains."""

    free_rank: int
    complement: PresentedModule


def _hom_exponents(module: PresentedModule) -> list:
    """Annihilator exponent of each model coordinate (precision if free)."""
    n = module.cfg.precision
    p = module.cfg.p
    out = []
    for q in module.moduli:
        if q is None:
            out.append(n)
        else:
            e = 0
            while p**e < q:
                e += 1
            out.append(e)
    return out


def hom_space_basis(source: PresentedModule, target: PresentedModule) -> list:
    """Matrices spanning Hom(source, target) as a module mod p^N.

    Entry (r, c) of a hom matrix is constrained to the multiples of
    p^max(0, e_r - f_c), with f and e the coordinate annihilator
    exponents of source and target.  Substituting that scaling leaves
    only the sigma-equivariance equations, solved as a congruence
    kernel at guard 0: hom matrices are used mod p^N only, so residues
    of any valuation are legitimate here.
    """
    if source.cfg != target.cfg:
        raise PreconditionViolated("hom spaces need matching group parameters")
    cfg = source.cfg
    m1, m2 = source.model_dim, target.model_dim
    if m1 == 0 or m2 == 0:
        return []
    p, n = cfg.p, cfg.precision
    ctx = linalg.Context(p, n, 0)
    f = _hom_exponents(source)
    e = _hom_exponents(target)
    gap = [[max(0, e[r] - f[c]) for c in range(m1)] for r in range(m2)]
    s1 = source.sigma_matrix
    s2 = target.sigma_matrix
    unknowns = m1 * m2

    def slot(r, c):
        return r * m1 + c

    rows = []
    for r in range(m2):
        scale = p ** (n - e[r])
        for c in range(m1):
            row = [0] * unknowns
            for k in range(m1):
                row[slot(r, k)] += p ** gap[r][k] * int(s1[k, c])
            for k in range(m2):
                row[slot(k, c)] -= p ** gap[k][c] * int(s2[r, k])
            rows.append([(v * scale) % ctx.modulus for v in row])
    sys_mat = linalg.mat(ctx, rows) if rows else linalg.zeros(ctx, 1, unknowns)
    ker = linalg.kernel_cols(ctx, sys_mat)
    basis = []
    for j in range(ker.shape[1]):
        x = linalg.zeros(target.ctx, m2, m1)
        col = ker[:, j]
        nonzero = False
        for r in range(m2):
            for c in range(m1):
                v = (p ** gap[r][c] * int(col[slot(r, c)])) % target.ctx.modulus
                x[r, c] = v
                nonzero = nonzero or v != 0
        if nonzero:
            basis.append(x)
    return basis


def _assemble(target_ctx, gap, y, m1, m2, p):
    x = linalg.zeros(target_ctx, m2, m1)
    for r in range(m2):
        for c in range(m1):
            x[r, c] = (p ** gap[r][c] * int(y[r * m1 + c])) % target_ctx.modulus
    return x


def _verify_iso(source, target, x):
    """Promote a candidate matrix to an Iso, or return None.

    The candidate must be a well-defined hom, surjective mod p (which
    by Nakayama makes it surjective, and with equal invariants
    bijective); the inverse residue is computed and both compositions
    are checked against the identity.
    """
    m2 = target.model_dim
    if linalg.rank_mod_p(source.cfg.p, x) != m2:
        return None
    try:
        fwd = ModuleHom(source, target, x)
    except IllDefinedHom:
        return None
    try:
        xi = linalg.invert(target.ctx, np.array(x, dtype=target.ctx.dtype))
    except NotAUnit:
        return None
    try:
        inv = ModuleHom(target, source, xi)
    except IllDefinedHom:
        return None
    ident_s = ModuleHom(source, source, linalg.eye(source.ctx, source.model_dim), check=False)
    ident_t = ModuleHom(target, target, linalg.eye(target.ctx, m2), check=False)
    if not np.array_equal(inv.compose(fwd).matrix, ident_s.matrix):
        return None
    if not np.array_equal(fwd.compose(inv).matrix, ident_t.matrix):
        return None
    return Iso(fwd, inv)


def _independent_mod_p(p, basis, m1, m2, bound):
    """Indices of basis members with independent mod-p images, capped.

    Returns (indices, full_rank_found): the second flag is False when
    more than ``bound`` independent directions exist.
    """
    flat = []
    idx = []
    current = 0
    for j, x in enumerate(basis):
        v = np.array([int(x[r, c]) % p for r in range(m2) for c in range(m1)], dtype=np.int64)
        if not v.any():
            continue
        trial = flat + [v]
        r = linalg.rank_mod_p(p, np.array(trial, dtype=np.int64).T)
        if r > current:
            if r > bound:
                return idx, False
            flat, idx, current = trial, idx + [j], r
    return idx, True


def modules_isomorphic(m1: PresentedModule, m2: PresentedModule, search=None):
    """Iso, NotIsomorphic, or Undecided for two presented modules.

    Invariant screens (underlying abelian group, Tate groups at every
    level and parity) decide most negatives outright.  Otherwise
    candidates from the hom space are tried; if the mod-p image of the
    hom space has dimension at most search.enumeration_bound it is
    enumerated exhaustively, so a negative is again definitive.  Random
    sampling past that point can only produce Iso or Undecided.
    """
    if search is None:
        search = IsoSearchConfig()
    if m1.cfg != m2.cfg:
        return NotIsomorphic("group-ring parameters differ")
    cfg = m1.cfg
    if m1.invariant_summary() != m2.invariant_summary():
        return NotIsomorphic(
            f"underlying groups differ: {m1.invariant_summary()} vs "
            f"{m2.invariant_summary()}"
        )
    for level in range(1, cfg.n + 1):
        for degree in (0, 1):
            t1 = tate(m1, degree, level)
            t2 = tate(m2, degree, level)
            if sorted(t1.invariants) != sorted(t2.invariants):
                return NotIsomorphic(
                    f"cohomology differs at level {level}, degree {degree}: "
                    f"{t1.invariants} vs {t2.invariants}"
                )
    m = m1.model_dim
    if m == 0:
        empty = linalg.zeros(m1.ctx, 0, 0)
        h = ModuleHom(m1, m2, empty, check=False)
        hi = ModuleHom(m2, m1, empty, check=False)
        return Iso(h, hi)
    basis = hom_space_basis(m1, m2)
    if not basis:
        return NotIsomorphic("hom space is zero")
    if m1.model_dim == m2.model_dim:
        found = _verify_iso(m1, m2, linalg.eye(m1.ctx, m))
        if found:
            return found
    for x in basis:
        found = _verify_iso(m1, m2, x)
        if found:
            return found
    p = cfg.p
    idx, complete = _independent_mod_p(p, basis, m1.model_dim, m2.model_dim, search.enumeration_bound)
    if complete:
        for coeffs in product(range(p), repeat=len(idx)):
            if not any(coeffs):
                continue
            x = linalg.zeros(m2.ctx, m2.model_dim, m1.model_dim)
            for c, j in zip(coeffs, idx):
                x = (x + c * basis[j]) % m2.ctx.modulus
            found = _verify_iso(m1, m2, x)
            if found:
                return found
        return NotIsomorphic(
            "no member of the hom space is invertible mod p "
            f"(enumerated all {p}**{len(idx)} mod-p classes)"
        )
    rng = random.Random(search.seed)
    modulus = m2.ctx.modulus
    for _ in range(search.max_samples):
        x = linalg.zeros(m2.ctx, m2.model_dim, m1.model_dim)
        for b in basis:
            c = rng.randrange(modulus)
            if c:
                x = (x + c * b) % modulus
        found = _verify_iso(m1, m2, x)
        if found:
            return found
    return Undecided(
        f"no isomorphism found in {search.max_samples} samples over a hom "
        f"space with more than {search.enumeration_bound} mod-p directions"
    )


def _padded(module: PresentedModule, copies: int) -> PresentedModule:
    if copies == 0:
        return module
    return direct_sum(module, free_module(module.cfg, copies)).module


def stably_isomorphic(m1: PresentedModule, m2: PresentedModule, search=None):
    """StableIso, NotStablyIsomorphic, or Undecided for torsion-free modules.

    Padding cannot change cohomology or the rank mod the group order,
    so mismatches there are definitive negatives.  Otherwise the
    minimal compatible padding is tested with modules_isomorphic; by
    Krull-Schmidt cancellation its definitive answers (either way)
    transfer to all larger paddings.
    """
    if search is None:
        search = IsoSearchConfig()
    if not m1.is_torsion_free() or not m2.is_torsion_free():
        raise PreconditionViolated("stable comparison is defined for torsion-free modules")
    if m1.cfg != m2.cfg:
        return NotStablyIsomorphic("group-ring parameters differ")
    cfg = m1.cfg
    d = cfg.order
    r1, r2 = m1.zp_rank(), m2.zp_rank()
    if (r1 - r2) % d != 0:
        return NotStablyIsomorphic(
            f"rank difference {r1 - r2} is not a multiple of the group order {d}"
        )
    for level in range(1, cfg.n + 1):
        for degree in (0, 1):
            t1 = tate(m1, degree, level)
            t2 = tate(m2, degree, level)
            if sorted(t1.invariants) != sorted(t2.invariants):
                return NotStablyIsomorphic(
                    f"cohomology differs at level {level}, degree {degree}; "
                    "free padding cannot change it"
                )
    pads = sorted(
        (
            (a, b)
            for a in range(search.max_free_rank + 1)
            for b in range(search.max_free_rank + 1)
            if r1 + a * d == r2 + b * d
        ),
        key=lambda ab: (ab[0] + ab[1], ab[0]),
    )
    if not pads:
        return Undecided(
            f"rank gap {abs(r1 - r2)} exceeds the padding budget "
            f"max_free_rank={search.max_free_rank}"
        )
    last = None
    for a, b in pads:
        res = modules_isomorphic(_padded(m1, a), _padded(m2, b), search)
        if isinstance(res, Iso):
            return StableIso(a, b, res)
        if isinstance(res, NotIsomorphic):
            return NotStablyIsomorphic(
                f"padding ({a}, {b}) gives non-isomorphic modules ({res.reason}); "
                "by Krull-Schmidt cancellation of free summands no other "
                "padding can succeed"
            )
        last = res
    return Undecided(f"all paddings up to {search.max_free_rank} inconclusive: {last.reason}")


def krull_schmidt_note(module: PresentedModule) -> FreeSummandReport:
    """Split off free rank-one summands until none remain.

    A hom rho to the group ring splits off a free summand exactly when
    it is surjective, which by Nakayama happens exactly when the
    composite with the residue map Zp[G] -> Z/p (augmentation mod p) is
    nonzero.  That composite is linear in rho, so scanning a spanning
    set of the hom space decides existence outright; the scan is
    deterministic and a negative answer is definitive.
    """
    cfg = module.cfg
    lam = free_module(cfg, 1, names=["f"])
    p = cfg.p
    free_rank = 0
    current = module
    while True:
        found = None
        for x in hom_space_basis(current, lam):
            aug = [sum(int(x[r, c]) for r in range(x.shape[0])) % p for c in range(x.shape[1])]
            if any(aug):
                found = x
                break
        if found is None:
            return FreeSummandReport(free_rank, current)
        rho = ModuleHom(current, lam, found)
        current = kernel_of(rho).module
        free_rank += 1
