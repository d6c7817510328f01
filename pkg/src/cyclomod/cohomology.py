"""Tate cohomology of Zp[G]-modules along the subgroup tower.

For the subgroup of order p^i generated by tau = sigma^(p^(n-i)), the
periodicity of cyclic groups leaves two groups per level:

  even degree:  ker(tau - 1) / image(subgroup norm)
  odd degree:   ker(subgroup norm) / image(tau - 1)

Both are finite.  All lattice work happens at the module's own
precision N, where the kernel of the boundary operator is a congruence
kernel: it picks up shadow directions of valuation N - g (the classic
symptom: a rank-one trivial module acquiring a fake class killed by
the norm).  Instead of chasing exactness, the denominator carries an
explicit noise-floor block p^(N-g) * identity that swallows every
shadow, and a margin check N - g >= level guarantees the block cannot
swallow a genuine class, since those all have order dividing p^level.
This stays correct even when the model's structure constants are
residues of p-adic numbers with no exact integer lift.

Restriction and corestriction are realized on representatives.  With
nu(j, i) the sum of sigma^(t * p^(n-j)) over 0 <= t < p^(j-i), i.e. the
coset sum of the level-i subgroup inside the level-j one:

  even:  res = identity on representatives, cor = multiply by nu
  odd:   res = multiply by nu,               cor = identity

These satisfy cor after res = p^(j-i) and res after cor = action of nu.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .arith import GroupRingElement, subgroup_norm
from .config import GroupConfig
from .errors import CyclomodError, PrecisionExhausted, PreconditionViolated
from .modules import ElementVector, ModuleHom, PresentedModule

__all__ = [
    "TateGroup",
    "CohomMap",
    "tate",
    "restriction",
    "corestriction",
    "induced_map",
    "connecting_iso",
    "coset_sum",
    "is_cohomologically_trivial",
]


class TateGroup:
    """A Tate cohomology group with explicit generators and reduction.

    invariants lists the exponents e of the Z/p^e cyclic summands,
    largest first; generators[k] is a module element representing the
    k-th summand's generator; reduce() rewrites any representative that
    lies in the numerator as coordinates with respect to the summands.
    """

    def __init__(self, module: PresentedModule, degree: int, level: int):
        self.module = module
        self.degree = degree
        self.level = level
        cfg = module.cfg
        if level == 0:
            self.invariants = ()
            self.generators = []
            self._slots = []
            self._solve_mat = None
            return
        # Model matrices are canonical residues mod p^N, so an entry of
        # true valuation >= N is indistinguishable from zero and every
        # lattice below is a congruence lattice.  The subquotient is exact
        # anyway, for two reasons.  The congruence kernel of the boundary
        # operator differs from the true kernel only in directions scaled
        # by p^(N-g), where g is the largest elementary divisor of the
        # kernel system; a p^(N-g) identity block in the denominator
        # swallows those shadows.  And that block cannot kill a genuine
        # class while N - g >= level, because denominator columns lie in
        # the (saturated) true kernel and every class already has order
        # dividing p^level.  Below that margin the computation refuses
        # rather than guesses.  Guard zero: pivot decisions at any
        # valuation below N are taken at face value, since the honesty
        # question is settled by the margin check, not by the pivot guard.
        ctx = linalg.Context(cfg.p, cfg.precision, 0)
        self._ctx = ctx
        m = module.model_dim
        step = cfg.p ** (cfg.n - level)
        tau = module.act_matrix(_sigma_elt(cfg, step))
        nm = module.act_matrix(subgroup_norm(cfg, level))
        ident = linalg.eye(ctx, m)
        if degree % 2 == 0:
            a_mat, b_mat = (_lift(ctx, tau) - ident) % ctx.modulus, _lift(ctx, nm)
        else:
            a_mat, b_mat = _lift(ctx, nm), (_lift(ctx, tau) - ident) % ctx.modulus
        tc = _lift(ctx, module.torsion_column_matrix())
        ksys = linalg.hstack(ctx, [a_mat, (-tc) % ctx.modulus])
        ksm = linalg.smith(ctx, ksys)
        floor = cfg.precision - max(ksm.dvals, default=0)
        if floor < level:
            raise PrecisionExhausted(
                f"boundary kernel has an elementary divisor of valuation "
                f"{cfg.precision - floor} at precision {cfg.precision}, "
                f"leaving no room below the noise floor for classes of "
                f"order up to p^{level}; raise the working precision"
            )
        ker = linalg.kernel_cols(ctx, ksys, sm=ksm)[:m, :]
        noise = linalg.eye(ctx, m) * (cfg.p**floor)
        nu = linalg.hstack(ctx, [ker, tc, b_mat])
        de = linalg.hstack(ctx, [b_mat, tc, noise])
        q = nu.shape[1]
        rel = linalg.kernel_cols(
            ctx, linalg.hstack(ctx, [nu, (-de) % ctx.modulus])
        )[:q, :]
        sm = linalg.smith(ctx, rel)
        if len(sm.dvals) < q:
            raise CyclomodError(
                "cohomology subquotient came out infinite; this indicates "
                "an internal inconsistency"
            )
        slots = [(k, v) for k, v in enumerate(sm.dvals) if v > 0]
        if any(v > level for _, v in slots):
            raise CyclomodError(
                "cohomology invariant exceeds the subgroup order; "
                "working precision is too low for this module"
            )
        slots.sort(key=lambda kv: -kv[1])
        self.invariants = tuple(v for _, v in slots)
        self.generators = []
        for k, _ in slots:
            col = linalg.matmul(ctx, nu, sm.left_inv[:, k : k + 1])
            self.generators.append(module.element_from_model_coords(col.ravel()))
        self._slots = [k for k, _ in slots]
        self._left = sm.left
        self._solve_mat = linalg.hstack(ctx, [nu, de])
        self._solve_smith = linalg.smith(ctx, self._solve_mat)
        self._q = q

    @property
    def parity(self) -> int:
        return self.degree % 2

    def is_trivial(self) -> bool:
        return not self.invariants

    def order_exponent(self) -> int:
        return sum(self.invariants)

    def reduce(self, elt: ElementVector) -> tuple:
        """Coordinates of a numerator element with respect to the summands.

        Raises PreconditionViolated if the element does not represent a
        class (is not killed by the relevant operator).
        """
        if self.level == 0:
            return ()
        if elt.module is not self.module:
            raise ValueError("element belongs to a different module")
        ctx = self._ctx
        sol = linalg.solve(
            ctx, self._solve_mat, _lift(ctx, elt.column()), sm=self._solve_smith
        )
        if sol is None:
            raise PreconditionViolated(
                "element is not in the numerator of this cohomology group"
            )
        z = sol[: self._q, :]
        y = linalg.matmul(ctx, self._left, z)
        p = self.module.cfg.p
        return tuple(
            int(y[k, 0]) % (p**f) for k, f in zip(self._slots, self.invariants)
        )

    def classes_equal(self, a: ElementVector, b: ElementVector) -> bool:
        return self.reduce(a) == self.reduce(b)

    def __repr__(self) -> str:
        p = self.module.cfg.p
        parts = " + ".join(f"Z/{p}^{e}" if e > 1 else f"Z/{p}" for e in self.invariants)
        return (
            f"TateGroup(degree {self.degree}, level {self.level}: "
            f"{parts if parts else '0'})"
        )


def _lift(ctx: linalg.Context, a: np.ndarray) -> np.ndarray:
    """Recast canonical residues into another context's dtype."""
    return np.array(a, dtype=ctx.dtype) % ctx.modulus


def _sigma_elt(cfg: GroupConfig, power: int) -> GroupRingElement:
    vals = [0] * cfg.order
    vals[power % cfg.order] = 1
    return GroupRingElement(cfg, vals)


def coset_sum(cfg: GroupConfig, upper: int, lower: int) -> GroupRingElement:
    """Sum of sigma^(t * p^(n-upper)) over t < p^(upper-lower).

    One group-ring element per coset of the level-``lower`` subgroup in
    the level-``upper`` one; multiplying by it realizes corestriction in
    even degree and restriction in odd degree.
    """
    if not 0 <= lower <= upper <= cfg.n:
        raise PreconditionViolated(
            f"need 0 <= lower <= upper <= {cfg.n}, got {lower}, {upper}"
        )
    vals = [0] * cfg.order
    step = cfg.p ** (cfg.n - upper)
    for t in range(cfg.p ** (upper - lower)):
        vals[(t * step) % cfg.order] += 1
    return GroupRingElement(cfg, vals)


def tate(module: PresentedModule, degree: int, level: int | None = None) -> TateGroup:
    """Tate cohomology of the level subgroup (default: the whole group).

    Cohomology of a cyclic group is periodic with period 2, so only the
    parity of the degree matters; results are cached per module, which
    also makes repeated map constructions composable.
    """
    if level is None:
        level = module.cfg.n
    if not 0 <= level <= module.cfg.n:
        raise ValueError(f"subgroup level {level} outside [0, {module.cfg.n}]")
    key = (degree % 2, level)
    cached = module._tate_cache.get(key)
    if cached is None:
        cached = TateGroup(module, degree % 2, level)
        module._tate_cache[key] = cached
    return cached


class CohomMap:
    """A homomorphism between Tate groups, stored on summand coordinates."""

    def __init__(self, source: TateGroup, target: TateGroup, matrix: np.ndarray):
        self.source = source
        self.target = target
        self.matrix = _canon_map_matrix(matrix, target)

    @classmethod
    def from_representative_matrix(
        cls, source: TateGroup, target: TateGroup, rep_matrix: np.ndarray
    ) -> "CohomMap":
        """Build the induced map from a matrix acting on module models.

        The matrix must send the source numerator into the target
        numerator; reduce() raises otherwise.
        """
        ctx = target.module.ctx
        cols = []
        for gen in source.generators:
            img_col = linalg.matmul(ctx, rep_matrix, gen.column())
            img = target.module.element_from_model_coords(img_col.ravel())
            cols.append(target.reduce(img))
        mat = np.zeros((len(target.invariants), len(source.invariants)), dtype=np.int64)
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                mat[i, j] = v
        return cls(source, target, mat)

    @classmethod
    def scalar(cls, group: TateGroup, c: int) -> "CohomMap":
        size = len(group.invariants)
        mat = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            mat[i, i] = c
        return cls(group, group, mat)

    def apply(self, coords) -> tuple:
        coords = tuple(coords)
        if len(coords) != len(self.source.invariants):
            raise ValueError("coordinate tuple has wrong length")
        p = self.target.module.cfg.p
        out = []
        for i, f in enumerate(self.target.invariants):
            total = sum(int(self.matrix[i, j]) * c for j, c in enumerate(coords))
            out.append(total % (p**f))
        return tuple(out)

    def compose(self, inner: "CohomMap") -> "CohomMap":
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        prod = self.matrix.astype(object) @ inner.matrix.astype(object)
        return CohomMap(inner.source, self.target, prod)

    def is_isomorphism(self) -> bool:
        if sorted(self.source.invariants) != sorted(self.target.invariants):
            return False
        size = len(self.source.invariants)
        if size == 0:
            return True
        return linalg.rank_mod_p(self.target.module.cfg.p, self.matrix) == size

    def __eq__(self, other):
        return (
            isinstance(other, CohomMap)
            and other.source is self.source
            and other.target is self.target
            and np.array_equal(other.matrix, self.matrix)
        )

    def __repr__(self) -> str:
        return f"CohomMap({self.source} -> {self.target})"


def _canon_map_matrix(matrix, target: TateGroup) -> np.ndarray:
    p = target.module.cfg.p
    mat = np.array(matrix, dtype=np.int64)
    if mat.ndim != 2 or mat.shape[0] != len(target.invariants):
        raise ValueError("map matrix has wrong shape")
    for i, f in enumerate(target.invariants):
        mat[i, :] %= p**f
    return mat


def restriction(
    module: PresentedModule, degree: int, from_level: int, to_level: int
) -> CohomMap:
    """Restriction from the level-j group down to a level-i subgroup."""
    cfg = module.cfg
    if not 0 <= to_level <= from_level <= cfg.n:
        raise PreconditionViolated("restriction goes from a group to a subgroup")
    src = tate(module, degree, from_level)
    tgt = tate(module, degree, to_level)
    if degree % 2 == 0:
        rep = linalg.eye(module.ctx, module.model_dim)
    else:
        rep = module.act_matrix(coset_sum(cfg, from_level, to_level))
    return CohomMap.from_representative_matrix(src, tgt, rep)


def corestriction(
    module: PresentedModule, degree: int, from_level: int, to_level: int
) -> CohomMap:
    """Corestriction (transfer) from a level-i subgroup up to level j."""
    cfg = module.cfg
    if not 0 <= from_level <= to_level <= cfg.n:
        raise PreconditionViolated("corestriction goes from a subgroup to a group")
    src = tate(module, degree, from_level)
    tgt = tate(module, degree, to_level)
    if degree % 2 == 0:
        rep = module.act_matrix(coset_sum(cfg, to_level, from_level))
    else:
        rep = linalg.eye(module.ctx, module.model_dim)
    return CohomMap.from_representative_matrix(src, tgt, rep)


def induced_map(hom: ModuleHom, degree: int, level: int | None = None) -> CohomMap:
    """The map on Tate groups induced by a module homomorphism."""
    if level is None:
        level = hom.source.cfg.n
    src = tate(hom.source, degree, level)
    tgt = tate(hom.target, degree, level)
    return CohomMap.from_representative_matrix(src, tgt, hom.matrix)


def is_cohomologically_trivial(module: PresentedModule) -> bool:
    """True when every Tate group at every level vanishes.

    For a cyclic p-group both parities at each subgroup level are
    checked outright.
    """
    for level in range(1, module.cfg.n + 1):
        for degree in (0, 1):
            if not tate(module, degree, level).is_trivial():
                return False
    return True


def connecting_iso(
    inc: ModuleHom, proj: ModuleHom, degree: int, level: int | None = None
) -> CohomMap:
    """Degree-raising connecting map of a short exact sequence.

    For 0 -> A -> B -> C -> 0 with B having trivial cohomology at the
    requested level, the long exact sequence collapses and the
    connecting map is an isomorphism from the degree-d group of C to
    the degree-(d+1) group of A.  It is computed on representatives:
    lift a cocycle along proj, apply the boundary operator of the
    target parity (tau - 1 into odd degree, the subgroup norm into
    even), pull the result back along inc.

    The caller is responsible for exactness of the sequence; proj o inc
    is checked to vanish, and the middle term's cohomology must vanish
    at the level in both parities or PreconditionViolated is raised.
    Lifts are exact only mod p^N, so a headroom check refuses
    configurations where solve denominators could reach the class
    coordinates; PrecisionExhausted then asks for a higher precision.
    """
    mid = proj.source
    if inc.target is not mid:
        raise ValueError("inc and proj do not share the middle module")
    cfg = mid.cfg
    if level is None:
        level = cfg.n
    if not proj.compose(inc).is_zero_map():
        raise PreconditionViolated("proj o inc does not vanish")
    for parity in (0, 1):
        if not tate(mid, parity, level).is_trivial():
            raise PreconditionViolated(
                "middle module has nontrivial cohomology at this level; "
                "the connecting map need not be an isomorphism"
            )
    a_mod, c_mod = inc.source, proj.target
    src = tate(c_mod, degree, level)
    tgt = tate(a_mod, degree + 1, level)
    ctx = mid.ctx
    step = cfg.p ** (cfg.n - level)
    if degree % 2 == 0:
        op = (mid.act_matrix(_sigma_elt(cfg, step)) - linalg.eye(ctx, mid.model_dim)) % ctx.modulus
    else:
        op = mid.act_matrix(subgroup_norm(cfg, level))
    lift_sys = linalg.hstack(ctx, [proj.matrix, c_mod.torsion_column_matrix()])
    pull_sys = linalg.hstack(ctx, [inc.matrix, mid.torsion_column_matrix()])
    sm_lift = linalg.smith(ctx, lift_sys)
    sm_pull = linalg.smith(ctx, pull_sys)
    worst = max([0, *sm_lift.dvals, *sm_pull.dvals])
    if worst + level + ctx.guard >= cfg.precision:
        raise PrecisionExhausted(
            "solve denominators leave too little headroom for the class "
            "coordinates; raise the working precision"
        )
    cols = []
    for gen in src.generators:
        lifted = linalg.solve(ctx, lift_sys, gen.column(), sm=sm_lift)
        if lifted is None:
            raise PreconditionViolated("proj misses a cohomology representative")
        moved = linalg.matmul(ctx, op, lifted[: mid.model_dim, :])
        pulled = linalg.solve(ctx, pull_sys, moved, sm=sm_pull)
        if pulled is None:
            raise PreconditionViolated(
                "boundary of a lifted representative escapes the image of inc"
            )
        elt = a_mod.element_from_model_coords(pulled[: a_mod.model_dim, :].ravel())
        cols.append(tgt.reduce(elt))
    mat = np.zeros((len(tgt.invariants), len(src.invariants)), dtype=np.int64)
    for j, red in enumerate(cols):
        for i, v in enumerate(red):
            mat[i, j] = v
    return CohomMap(src, tgt, mat)
