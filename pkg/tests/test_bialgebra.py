"""Coproducts as extensions into M(A(x)A): slices, coassociativity, counits."""

import pytest

from mulhopf.algebra import (Element, WindowInsufficiency, regular_module,
                             check_module, tensor_algebra, tensor_elem)
from mulhopf.bialgebra import (SliceUndefined, Slicer, check_coassociative,
                               check_counit, check_fons,
                               check_monoidal_instance, counit_extension,
                               epsilon_module, eps_value, sweedler_slice,
                               synthesize_counit, tensor_module_action)
from mulhopf.extension import Extension
from mulhopf.fields import QQ
from mulhopf.gallery import kfin_Z, kfun_cyclic, nand_delta_bundle
from mulhopf.multiplier import Multiplier, iota


def right_projection_delta(n=3):
    """Delta(d_k) = 1 (x) d_k on K(Z/n), the coproduct dual to (x, y) -> y.

    Coassociative, but the counit equations only pin the sum of the
    eps values, so synthesis must report the window as insufficient.
    """
    A = kfun_cyclic(n).algebra
    AA = tensor_algebra(A, A)
    unit = A.element({i: QQ.one for i in range(n)})

    def rule(k):
        return iota(AA, tensor_elem(unit, A.basis_element(k), into=AA))

    return Extension(A, AA, rule, name="proj2")


# --- slices ---------------------------------------------------------------


def test_slices_of_cyclic_function_algebra_follow_the_group_law():
    # Delta dual to addition on Z/3: Delta(d_k) = sum_{i+j=k} d_i (x) d_j,
    # so the framed slices are single terms read off by subtraction
    n = 3
    b = kfun_cyclic(n)
    sl = b.bialgebra.slicer()
    for a in range(n):
        for c in range(n):
            assert sl.right(a, c).coeffs == {((a - c) % n, c): QQ.one}
            assert sl.left(a, c).coeffs == {(a, (c - a) % n): QQ.one}


def test_slices_on_kz_window():
    sl = Slicer(kfin_Z().bialgebra.delta, window=4)
    assert sl.right(3, 1).coeffs == {(2, 1): QQ.one}
    assert sl.left(-1, 2).coeffs == {(-1, 3): QQ.one}
    # arguments beyond the base window are re-sliced on a doubled one
    assert sl.right(6, 1).coeffs == {(5, 1): QQ.one}


def test_slice_beyond_every_retry_raises():
    sl = Slicer(kfin_Z().bialgebra.delta, window=4)
    with pytest.raises(WindowInsufficiency):
        sl.right(10 ** 9, 0)


def test_sweedler_slice_is_bilinear():
    b = kfun_cyclic(3)
    A = b.algebra
    delta = b.bialgebra.delta
    x = A.basis_element(0) + A.basis_element(1)
    y = A.basis_element(2).scale(QQ.coerce(3))
    got = sweedler_slice(delta, x, y)
    want = (sweedler_slice(delta, A.basis_element(0), y)
            + sweedler_slice(delta, A.basis_element(1), y))
    assert got == want
    assert got == sweedler_slice(delta, x, A.basis_element(2)).scale(QQ.coerce(3))


def test_undefined_slice_is_detected():
    # left and right contractions of this "coproduct" never agree, so
    # the slicer must refuse to call the framed product an element
    KZ = kfin_Z().algebra
    AA = tensor_algebra(KZ, KZ)

    def keep(parity, n):
        def act(pair):
            u, v = pair
            if u % 2 != parity:
                return AA.zero()
            w = KZ.basis_element(n) * KZ.basis_element(v)
            return tensor_elem(KZ.basis_element(u), w, into=AA)

        return act

    bad = Extension(KZ, AA,
                    lambda n: Multiplier(AA, keep(0, n), keep(1, n)),
                    name="bad")
    sl = Slicer(bad, window=2)
    with pytest.raises(SliceUndefined):
        sl.right(0, 0)


# --- the coproduct axioms -------------------------------------------------


def test_fons_and_coassociativity_finite():
    b = kfun_cyclic(4).bialgebra
    assert check_fons(b.delta).ok
    v = check_coassociative(b.delta)
    assert v.status == "proven"


def test_fons_and_coassociativity_oracle():
    b = kfin_Z().bialgebra
    sl = b.slicer()
    assert check_fons(b.delta, window=4).ok
    v = check_coassociative(b.delta, slicer=sl)
    assert v.status == "holds_on_window"


def test_right_projection_delta_is_coassociative():
    assert check_coassociative(right_projection_delta()).ok


def test_nand_delta_fails_coassociativity_with_witness():
    b = nand_delta_bundle()
    v = check_coassociative(b.delta)
    assert v.status == "failed"
    A = b.algebra
    assert v.witness == (A.basis_element(0), A.basis_element(0),
                         A.basis_element(1))


# --- counits --------------------------------------------------------------


def test_counit_synthesis_on_cyclic():
    for n in (2, 3, 5):
        b = kfun_cyclic(n)
        syn = synthesize_counit(b.bialgebra.delta)
        assert syn is not None
        assert syn.table == {k: (QQ.one if k == 0 else QQ.zero) for k in range(n)}
        assert syn.witness == b.algebra.basis_element(0)
        assert syn.detail == f"solved on {n} ids"
        assert check_counit(b.bialgebra.delta, syn.extension).status == "proven"


def test_counit_synthesis_on_kz_pins_scaled_window():
    b = kfin_Z()
    syn = synthesize_counit(b.bialgebra.delta, window=3)
    assert syn is not None
    # slices reach ids out to twice the window, and every one is pinned
    assert set(syn.table) == set(range(-6, 7))
    assert all(v == (QQ.one if n == 0 else QQ.zero)
               for n, v in syn.table.items())


def test_counit_synthesis_inconsistent_returns_none():
    assert synthesize_counit(nand_delta_bundle().delta) is None


def test_right_projection_delta_has_no_counit():
    # diagonal right slices want the eps values to sum to one, but the
    # left slices force each of them to zero: no counit exists
    assert synthesize_counit(right_projection_delta()) is None


def test_wrong_counit_table_fails_with_witness():
    b = kfun_cyclic(3)
    eps_all_one = counit_extension(b.algebra, {k: QQ.one for k in range(3)})
    v = check_counit(b.bialgebra.delta, eps_all_one)
    assert v.status == "failed"
    assert v.witness == (b.algebra.basis_element(0), b.algebra.basis_element(1))


def test_counit_extension_raises_outside_its_table():
    b = kfun_cyclic(2)
    eps = counit_extension(b.algebra, {0: QQ.one})
    with pytest.raises(WindowInsufficiency):
        eps_value(eps, b.algebra.basis_element(1))


def test_eps_value_is_linear():
    b = kfun_cyclic(3).bialgebra
    A = b.algebra
    x = A.basis_element(0).scale(QQ.coerce(5)) + A.basis_element(1)
    assert eps_value(b.epsilon, x) == QQ.coerce(5)


def test_epsilon_module_is_a_module():
    b = kfun_cyclic(3).bialgebra
    m = epsilon_module(b.epsilon)
    assert all(v.ok for v in check_module(m).values())


# --- the monoidal structure on modules ------------------------------------


def test_monoidal_instances_for_regular_and_tensor_square():
    b = kfun_cyclic(2).bialgebra
    reg = regular_module(b.algebra)
    sq = tensor_module_action(b.delta, reg, reg)
    verdicts = check_monoidal_instance(b.delta, b.epsilon, b.counit_witness,
                                       [reg, sq])
    assert [v.axiom for v in verdicts] == [
        "monoidal associator", "monoidal right unit", "monoidal left unit",
        "tensor extension instance"]
    assert all(v.status == "proven" for v in verdicts)


def test_scaled_counit_breaks_the_unit_constraints():
    b = kfun_cyclic(2).bialgebra
    reg = regular_module(b.algebra)
    doubled = counit_extension(b.algebra, {0: QQ.coerce(2), 1: QQ.zero})
    verdicts = check_monoidal_instance(b.delta, doubled, b.counit_witness, [reg])
    by_axiom = {v.axiom: v for v in verdicts}
    assert by_axiom["monoidal left unit"].status == "failed"
    assert by_axiom["monoidal left unit"].witness is not None
    assert by_axiom["monoidal right unit"].status == "failed"


def test_bundle_slicer_is_cached_per_window():
    b = kfun_cyclic(3).bialgebra
    assert b.slicer() is b.slicer()
    assert b.slicer(window=None) is b.slicer()
