"""Tate groups, restriction and corestriction, induced maps."""

import random

import pytest

from cyclomod.arith import sigma_power
from cyclomod.cohomology import (
    CohomMap,
    coset_sum,
    corestriction,
    induced_map,
    is_cohomologically_trivial,
    restriction,
    tate,
)
from cyclomod.config import GroupConfig
from cyclomod.errors import PreconditionViolated
from cyclomod.modules import (
    ModuleHom,
    PresentedModule,
    augmentation_ideal,
    free_module,
    scalar_action_hom,
    trivial_module,
    zp_trivial,
)

from _oracles import FiniteModule, brute_tate_invariants


def cfg(p=3, n=1, precision=8):
    return GroupConfig(p=p, n=n, precision=precision)


def test_trivial_coefficients_even_degree():
    # Fixed points are everything, the level-i norm is p^i: Z/p^i.
    c = cfg(n=2, precision=9)
    z = zp_trivial(c)
    for level in (0, 1, 2):
        h0 = tate(z, 0, level)
        assert h0.invariants == ((level,) if level else ())


def test_trivial_coefficients_odd_degree():
    c = cfg(n=2, precision=9)
    z = zp_trivial(c)
    for level in (0, 1, 2):
        assert tate(z, 1, level).is_trivial()


def test_finite_trivial_coefficients_both_parities():
    c = cfg(n=2, precision=9)
    for e in (1, 2, 3):
        m = trivial_module(c, exponent=e)
        for level in (1, 2):
            expected = (min(e, level),)
            assert tate(m, 0, level).invariants == expected
            assert tate(m, 1, level).invariants == expected


def test_group_ring_is_cohomologically_trivial():
    c = cfg(n=2, precision=9)
    assert is_cohomologically_trivial(free_module(c, 1))
    assert is_cohomologically_trivial(free_module(c, 2))
    assert not is_cohomologically_trivial(zp_trivial(c))


def test_finite_quotient_of_group_ring_is_trivial():
    c = cfg()
    lam = free_module(c, 1)
    mod_p = PresentedModule(c, ["e"], [([3, 0, 0],)])
    assert mod_p.invariant_summary() == (0, (1, 1, 1))
    assert is_cohomologically_trivial(mod_p)
    assert is_cohomologically_trivial(lam)


def test_augmentation_ideal_cohomology():
    # Dimension shift along 0 -> I -> group ring -> Zp -> 0 moves the
    # even-degree Z/p^i of Zp into odd degree for the ideal.
    for n in (1, 2):
        c = cfg(n=n, precision=9)
        ideal = augmentation_ideal(c)
        for level in range(1, n + 1):
            assert tate(ideal, 0, level).is_trivial()
            assert tate(ideal, 1, level).invariants == (level,)


def test_tate_generators_reduce_to_unit_vectors():
    c = cfg(n=2, precision=9)
    z = zp_trivial(c)
    h = tate(z, 0, 2)
    assert h.invariants == (2,)
    assert h.reduce(h.generators[0]) == (1,)
    assert h.reduce(9 * h.generators[0]) == (0,)
    assert h.classes_equal(h.generators[0], 10 * h.generators[0])


def test_reduce_rejects_elements_outside_numerator():
    c = cfg(n=1, precision=8)
    ideal = augmentation_ideal(c)
    h0 = tate(ideal, 0, 1)  # trivial group, numerator = ker(sigma - 1)
    g = ideal.generator(0)
    assert not g.act(sigma_power(c, 1) - sigma_power(c, 0)).is_zero()
    with pytest.raises(PreconditionViolated):
        h0.reduce(g)


def test_random_finite_modules_match_brute_force():
    c = cfg(p=3, n=2, precision=9)
    rng = random.Random(41)
    checked = 0
    for _ in range(12):
        rel0 = [rng.randrange(-6, 7) for _ in range(c.order)]
        mod = PresentedModule(
            c,
            ["g"],
            [([9] + [0] * (c.order - 1),), (rel0,)],
        )
        if mod.model_dim == 0 or not mod.is_finite():
            continue
        total = 1
        for m in mod.moduli:
            total *= m
        if total > 3000:
            continue
        fm = FiniteModule(list(mod.moduli), [[int(x) for x in row] for row in mod.sigma_matrix])
        for level in (1, 2):
            for degree in (0, 1):
                got = tate(mod, degree, level).invariants
                want = tuple(
                    brute_tate_invariants(c.p, c.order, fm, degree, subgroup_order=c.p**level)
                )
                assert got == want, (level, degree, mod.describe())
        checked += 1
    assert checked >= 3


def test_restriction_then_corestriction_is_index_scale():
    c = cfg(n=2, precision=9)
    for module in (zp_trivial(c), augmentation_ideal(c), trivial_module(c, exponent=2)):
        for degree in (0, 1):
            for i, j in ((1, 2), (0, 2), (1, 1)):
                res = restriction(module, degree, j, i)
                cor = corestriction(module, degree, i, j)
                expect = CohomMap.scalar(tate(module, degree, j), c.p ** (j - i))
                assert cor.compose(res) == expect


def test_corestriction_then_restriction_is_coset_sum_action():
    c = cfg(n=2, precision=9)
    for module in (zp_trivial(c), augmentation_ideal(c)):
        for degree in (0, 1):
            i, j = 1, 2
            res = restriction(module, degree, j, i)
            cor = corestriction(module, degree, i, j)
            low = tate(module, degree, i)
            expect = CohomMap.from_representative_matrix(
                low, low, module.act_matrix(coset_sum(c, j, i))
            )
            assert res.compose(cor) == expect


def test_coset_sum_values():
    c = cfg(n=2, precision=9)
    assert coset_sum(c, 2, 1).values == (1, 1, 1, 0, 0, 0, 0, 0, 0)
    assert coset_sum(c, 1, 0).values == (1, 0, 0, 1, 0, 0, 1, 0, 0)
    assert coset_sum(c, 1, 1).values == (1, 0, 0, 0, 0, 0, 0, 0, 0)


def test_induced_map_of_scalar_multiplication():
    c = cfg(n=2, precision=9)
    z = zp_trivial(c)
    hom = scalar_action_hom(z, 3)
    ind = induced_map(hom, 0, 2)
    assert ind.matrix.tolist() == [[3]]
    assert not ind.is_isomorphism()
    unit = induced_map(scalar_action_hom(z, 2), 0, 2)
    assert unit.is_isomorphism()


def test_induced_map_into_trivial_target():
    c = cfg()
    ideal = augmentation_ideal(c)
    lam = free_module(c, 1)
    one = sigma_power(c, 0)
    inc = ModuleHom.from_generator_images(
        ideal,
        lam,
        [lam.element([sigma_power(c, a) - one]) for a in (1, 2)],
    )
    ind = induced_map(inc, 1, 1)
    assert ind.target.is_trivial()
    assert ind.matrix.shape == (0, 1)
