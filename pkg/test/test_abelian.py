import numpy as np
import pydantic as pyd
import pytest
from numpy.testing import assert_allclose

from spectra.abelian import (
    FiniteAbelianGroup,
    GroupSignal,
    character_eigenspaces,
    character_eval,
    character_table,
    character_values,
    crt_reindex,
    dual_group,
    ell2_inner,
    factor_into_prime_powers,
    fourier_transform,
    group_inverse,
    group_op,
    inverse_transform,
    is_character,
    plancherel_gap,
    product_character,
    product_dual_iso,
    translate,
    translation_matrix,
)
from spectra.errors import CapExceeded, DimensionMismatch
from spectra.utils import random_vector

Z2xZ3 = FiniteAbelianGroup(factor_orders=(2, 3))


# ----------------------------------------------------------------------
# group model
# ----------------------------------------------------------------------
def test_group_properties():
    g = FiniteAbelianGroup(factor_orders=(4, 6))
    assert g.order == 24
    assert g.exponent == 12
    assert g.rank == 2
    assert str(g) == "Z_4 × Z_6"
    assert g.elements().shape == (24, 2)
    assert g.index_of((1, 0)) == 6


def test_trivial_group():
    g = FiniteAbelianGroup()
    assert g.order == 1
    assert str(g) == "Z_1"
    assert_allclose(character_table(g), [[1.0]])
    f = GroupSignal(group=g, values=[3.0])
    assert_allclose(fourier_transform(g, f).values, [3.0])


def test_invalid_factor_order():
    with pytest.raises(pyd.ValidationError):
        FiniteAbelianGroup(factor_orders=(1, 3))


def test_signal_length_must_match_order():
    with pytest.raises(pyd.ValidationError):
        GroupSignal(group=Z2xZ3, values=np.ones(5))


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        FiniteAbelianGroup(factor_orders=(101, 101)).elements(cap=10**4)


@pytest.mark.parametrize("orders", [(1001, 1001), (1000003, 1000033)])
def test_group_order_cap(orders):
    with pytest.raises(pyd.ValidationError, match="exceeds the group cap"):
        FiniteAbelianGroup(factor_orders=orders)


# ----------------------------------------------------------------------
# group law and characters
# ----------------------------------------------------------------------
def test_group_law():
    assert group_op(Z2xZ3, (1, 2), (1, 2)) == (0, 1)
    assert group_inverse(Z2xZ3, (1, 1)) == (1, 2)
    assert group_op(Z2xZ3, (1, 1), group_inverse(Z2xZ3, (1, 1))) == Z2xZ3.identity
    with pytest.raises(DimensionMismatch):
        group_op(Z2xZ3, (1,), (0, 1))


@pytest.mark.parametrize(
    "orders, m, a, expected",
    [
        ((4,), (1,), (1,), 1j),
        ((4,), (2,), (1,), -1.0),
        ((2, 3), (1, 1), (1, 1), np.exp(2j * np.pi * 5 / 6)),
        ((2, 3), (0, 0), (1, 2), 1.0),
    ],
)
def test_character_eval(orders, m, a, expected):
    g = FiniteAbelianGroup(factor_orders=orders)
    assert_allclose(character_eval(g, m, a), expected, atol=1e-15)


def test_dual_group_has_order_of_group():
    g = FiniteAbelianGroup(factor_orders=(4, 9))
    assert dual_group(g).shape == (36, 2)


def test_characters_are_orthonormal():
    for orders in [(5,), (2, 3), (2, 2, 2), (4, 9)]:
        g = FiniteAbelianGroup(factor_orders=orders)
        table = character_table(g)
        assert_allclose(table @ table.conj().T / g.order, np.eye(g.order), atol=1e-12)


def test_ell2_inner_of_characters():
    z = [character_values(Z2xZ3, m) for m in [(0, 0), (1, 2)]]
    assert_allclose(ell2_inner(Z2xZ3, z[1], z[1]), 1.0, atol=1e-15)
    assert_allclose(ell2_inner(Z2xZ3, z[0], z[1]), 0.0, atol=1e-15)


def test_is_character():
    g = FiniteAbelianGroup.cyclic(4)
    assert is_character(g, character_values(g, (3,)).values)
    assert not is_character(g, [1, 1, 1, 2])
    assert not is_character(g, [1, 0, 1, 0])
    with pytest.raises(DimensionMismatch):
        is_character(g, [1, 1, 1])


# ----------------------------------------------------------------------
# Fourier transform
# ----------------------------------------------------------------------
def test_transform_of_delta():
    delta = np.zeros(6)
    delta[0] = 1.0
    fhat = fourier_transform(Z2xZ3, GroupSignal(group=Z2xZ3, values=delta))
    assert fhat.domain == "dual"
    assert_allclose(fhat.values, np.full(6, 1 / 6), atol=1e-15)


def test_transform_of_constant():
    fhat = fourier_transform(Z2xZ3, GroupSignal(group=Z2xZ3, values=np.ones(6)))
    expected = np.zeros(6)
    expected[0] = 1.0
    assert_allclose(fhat.values, expected, atol=1e-15)


def test_transform_of_character():
    g = FiniteAbelianGroup.cyclic(8)
    fhat = fourier_transform(g, character_values(g, (3,)))
    expected = np.zeros(8)
    expected[3] = 1.0
    assert_allclose(fhat.values, expected, atol=1e-14)


def test_round_trip_and_plancherel(rng):
    for orders in [(2,), (5,), (8,), (2, 3), (4, 9), (2, 2, 2)]:
        g = FiniteAbelianGroup(factor_orders=orders)
        for _ in range(10):
            values = random_vector(rng, g.order).ravel()
            f = GroupSignal(group=g, values=values)
            back = inverse_transform(g, fourier_transform(g, f))
            assert_allclose(back.values, values, atol=1e-12)
            assert abs(plancherel_gap(g, f)) <= 1e-12 * f.norm_squared()


def test_transform_cap():
    g = FiniteAbelianGroup(factor_orders=(101, 101))
    with pytest.raises(CapExceeded):
        fourier_transform(g, GroupSignal(group=g, values=np.zeros(g.order)))


def test_transform_rejects_foreign_signal():
    f = GroupSignal(group=FiniteAbelianGroup.cyclic(6), values=np.ones(6))
    with pytest.raises(DimensionMismatch):
        fourier_transform(Z2xZ3, f)


# ----------------------------------------------------------------------
# translations
# ----------------------------------------------------------------------
def test_translate():
    g = FiniteAbelianGroup.cyclic(4)
    f = GroupSignal(group=g, values=[0, 1, 2, 3])
    assert_allclose(translate(g, (1,), f).values, [1, 2, 3, 0])


@pytest.mark.parametrize("orders", [(5,), (2, 3), (4, 9), (2, 2, 2)])
def test_characters_are_translation_eigenvectors(orders):
    g = FiniteAbelianGroup(factor_orders=orders)
    elements = [tuple(int(c) for c in row) for row in g.elements()]
    for m in [tuple(int(c) for c in row) for row in dual_group(g)]:
        zeta = character_values(g, m)
        for a in elements:
            shifted = translate(g, a, zeta).values
            assert_allclose(shifted, character_eval(g, m, a) * zeta.values, atol=1e-14)


def test_translation_adjoint_is_inverse_translation():
    for a in [(0, 0), (1, 1), (1, 2)]:
        t = translation_matrix(Z2xZ3, a)
        assert np.array_equal(t.conj().T, translation_matrix(Z2xZ3, group_inverse(Z2xZ3, a)))
        assert np.array_equal(t @ t.conj().T, np.eye(6))


def test_character_eigenspaces_are_characters():
    for g in [FiniteAbelianGroup.cyclic(5), Z2xZ3]:
        dec = character_eigenspaces(g, rng=np.random.default_rng(7))
        assert dec.multiplicities == [1] * g.order
        table = character_table(g)
        lines = [np.outer(row, row.conj()) / g.order for row in table]
        for p in dec.projections:
            assert min(np.linalg.norm(p - q) for q in lines) <= 1e-8


# ----------------------------------------------------------------------
# products and CRT
# ----------------------------------------------------------------------
def test_product_dual_iso():
    z2, z3 = FiniteAbelianGroup.cyclic(2), FiniteAbelianGroup.cyclic(3)
    assert product_dual_iso(z2, z3, (1, 2)) == ((1,), (2,))
    assert product_dual_iso(z2, z3, (0, 0)) == ((0,), (0,))
    assert product_character(z2, z3, (1,), (2,)) == (1, 2)


def test_product_dual_iso_is_bijective():
    g, h = FiniteAbelianGroup.cyclic(4), FiniteAbelianGroup(factor_orders=(3, 3))
    gh = FiniteAbelianGroup.product(g, h)
    images = {product_dual_iso(g, h, m) for m in dual_group(gh)}
    assert len(images) == gh.order


@pytest.mark.parametrize(
    "n, powers",
    [(2, [2]), (6, [2, 3]), (8, [8]), (12, [4, 3]), (360, [8, 9, 5]), (97, [97])],
)
def test_factor_into_prime_powers(n, powers):
    assert factor_into_prime_powers(n) == powers


def test_factor_rejects_small_orders():
    with pytest.raises(ValueError):
        factor_into_prime_powers(1)


@pytest.mark.parametrize("n", [6, 12, 360])
def test_crt_character_tables_agree_exactly(n):
    cyclic = character_table(FiniteAbelianGroup.cyclic(n))
    product, elem_map, char_map = crt_reindex(n)
    table = character_table(product)
    rows, cols = product.index_of(char_map), product.index_of(elem_map)
    assert np.array_equal(cyclic, table[np.ix_(rows, cols)])


def test_crt_maps_for_six():
    product, elem_map, char_map = crt_reindex(6)
    assert product.factor_orders == (2, 3)
    assert elem_map.tolist() == [[0, 0], [1, 1], [0, 2], [1, 0], [0, 1], [1, 2]]
    assert char_map.tolist() == [[0, 0], [1, 2], [0, 1], [1, 0], [0, 2], [1, 1]]
