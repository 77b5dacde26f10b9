import pytest

from mulhopf.algebra import InvariantViolation, regular_module
from mulhopf.fields import QQ
from mulhopf.gallery import kfin_Z, kfun_cyclic, rowalg2
from mulhopf.multiplier import (Multiplier, MultiplierSpace, act_on_module,
                                iota, iota_preimage, make_multiplier,
                                multiplier_eq, multiplier_violation, one)


def test_multiplier_space_of_function_algebra_has_dimension_n():
    # K(Z/n) is unital, so M(A) = A: dimension n, all of it reached by iota
    for n in (2, 3, 4):
        MS = MultiplierSpace(kfun_cyclic(n).algebra)
        assert MS.dim == n
        assert MS.iota_rank() == n


def test_iota_is_multiplicative():
    A = kfun_cyclic(3).algebra
    for i in range(3):
        for j in range(3):
            x = iota(A, A.basis_element(i)) * iota(A, A.basis_element(j))
            y = iota(A, A.basis_element(i) * A.basis_element(j))
            assert multiplier_eq(x, y, range(3)).ok


def test_iota_preimage_roundtrip_finite():
    A = kfun_cyclic(3).algebra
    x = A.basis_element(0) + A.basis_element(2).scale(QQ.coerce(5))
    assert iota_preimage(A, iota(A, x)) == x


def test_identity_multiplier_of_unital_algebra():
    A = kfun_cyclic(2).algebra
    u = iota_preimage(A, one(A))
    assert u == A.basis_element(0) + A.basis_element(1)


def test_identity_multiplier_outside_iota_for_rowalg2():
    # rowalg2 has no unit, so 1 in M(A) has no preimage; the solve proves it
    A = rowalg2().algebra
    assert iota_preimage(A, one(A)) is None


def test_even_indicator_multiplier_on_kz():
    KZ = kfin_Z().algebra

    def keep_even(n):
        return KZ.basis_element(n) if n % 2 == 0 else KZ.zero()

    ind = Multiplier(KZ, keep_even, keep_even, name="even")
    # window-relative contraction sees only the truncation
    local = iota_preimage(KZ, ind, window=3)
    assert local == KZ.element({-2: QQ.one, 0: QQ.one, 2: QQ.one})
    # a probe outside the window exposes the mismatch
    assert iota_preimage(KZ, ind, window=3, probe_ids=(4,)) is None


def test_product_applies_factor_by_factor():
    KZ = kfin_Z().algebra
    x = iota(KZ, KZ.element({0: QQ.one, 1: QQ.coerce(2)}))
    y = iota(KZ, KZ.element({1: QQ.one, 2: QQ.one}))
    p = x * y
    probe = KZ.element({1: QQ.one, 2: QQ.coerce(3)})
    assert p.apply_left(probe) == x.apply_left(y.apply_left(probe))
    assert p.apply_right(probe) == y.apply_right(x.apply_right(probe))
    # per-basis lambda agrees with whole-element application
    assert p.lam_basis(1) == p.apply_left(KZ.basis_element(1))


def test_sum_and_scale_of_multipliers():
    A = kfun_cyclic(2).algebra
    x, y = iota(A, A.basis_element(0)), iota(A, A.basis_element(1))
    s = x + y
    assert multiplier_eq(s, one(A), (0, 1)).ok
    doubled = x.scale(QQ.coerce(2))
    assert doubled.apply_left(A.basis_element(0)) == A.basis_element(0).scale(QQ.coerce(2))


def test_make_multiplier_rejects_incompatible_pair():
    A = kfun_cyclic(2).algebra
    lam = lambda b: A.basis_element(0) * A.basis_element(b)
    rho = lambda b: A.basis_element(b) * A.basis_element(1)
    pairs = [(i, j) for i in (0, 1) for j in (0, 1)]
    assert multiplier_violation(A, lam, rho, pairs) is not None
    with pytest.raises(InvariantViolation):
        make_multiplier(A, lam, rho)


def test_make_multiplier_accepts_compatible_pair():
    A = kfun_cyclic(2).algebra
    a = A.basis_element(1)
    m = make_multiplier(A, lambda b: a * A.basis_element(b),
                        lambda b: A.basis_element(b) * a)
    assert multiplier_eq(m, iota(A, a), (0, 1)).ok


def test_act_on_module_through_iota_matches_product():
    A = kfun_cyclic(3).algebra
    m = regular_module(A)
    for i in range(3):
        probe = A.basis_element(i) + A.basis_element((i + 1) % 3)
        moved = act_on_module(m, probe, iota(A, A.basis_element(i)))
        assert moved == probe * A.basis_element(i)


def test_multiplier_eq_reports_witness():
    A = kfun_cyclic(2).algebra
    v = multiplier_eq(iota(A, A.basis_element(0)), iota(A, A.basis_element(1)), (0, 1))
    assert v.status == "failed"
    assert v.witness is not None
