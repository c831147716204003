import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spin7cells import groups
from spin7cells.cayley import basis, mul
from spin7cells.charts import char_map, chart_product, sample_disc, sample_interior
from spin7cells.errors import DomainError
from spin7cells.groups import generator_matrix


def disc_point(dim):
    """Points of the closed unit disc, boundary included."""
    vec = st.lists(st.floats(-1, 1), min_size=dim, max_size=dim).map(np.array)
    return vec.filter(lambda v: v @ v <= 1.0)


def test_generator_special_values():
    assert np.array_equal(generator_matrix("A", [1, 0, 0]), np.eye(8))
    assert np.array_equal(generator_matrix("B", [1, 0]), np.eye(8))
    assert np.array_equal(generator_matrix("A", [0, 0, 0]), np.diag([1.0] * 4 + [-1.0] * 4))


def test_generator_domain():
    with pytest.raises(DomainError):
        generator_matrix("A", [1, 1, 0])
    with pytest.raises(DomainError):
        generator_matrix("B", [0.5])
    with pytest.raises(DomainError):
        generator_matrix("E", [0.0])


@pytest.mark.parametrize("kind", ["A", "B", "C", "D", "Dprime"])
@given(data=st.data())
def test_generators_orthogonal(kind, data):
    p = data.draw(disc_point(groups.GENERATOR_DIMS[kind]))
    assert groups.is_special_orthogonal(generator_matrix(kind, p), 1e-12)


@pytest.mark.parametrize("kind", ["A", "B", "C"])
@given(data=st.data())
def test_abc_are_automorphisms(kind, data):
    p = data.draw(disc_point(groups.GENERATOR_DIMS[kind]))
    assert groups.is_g2(generator_matrix(kind, p), nsamples=8)


def test_d_is_not_g2_but_spin7():
    d = generator_matrix("D", [0.3, 0.4])
    assert not groups.is_g2(d)
    assert groups.is_spin7(d)


def test_dprime_is_vector_rep_of_d():
    rng = np.random.default_rng(2)
    for _ in range(20):
        w = sample_disc(rng, 2)
        assert np.allclose(groups.vector_rep(generator_matrix("D", w)), generator_matrix("Dprime", w), atol=1e-12)


def test_reflection_is_not_spin7():
    bad = groups.spin7_violations(np.diag([1.0] * 7 + [-1.0]))
    assert "SO(8)" in bad
    assert not groups.is_spin7(np.diag([1.0] * 7 + [-1.0]))


def test_so8_element_outside_spin7():
    # a rotation in the (e1, e2) plane fixes e0 but is not an automorphism
    M = np.eye(8)
    M[1:3, 1:3] = [[0.6, -0.8], [0.8, 0.6]]
    assert groups.is_special_orthogonal(M)
    assert "g(x)gt(y) = gt(xy)" in groups.spin7_violations(M)


def test_minus_identity():
    assert groups.is_spin7(-np.eye(8))
    assert np.array_equal(groups.vector_rep(-np.eye(8)), np.eye(8))


def test_spin7_closed_under_products_and_inverses():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g, h = groups.random_spin7(rng), groups.random_spin7(rng)
        assert groups.is_spin7(g @ h)
        assert groups.is_spin7(g.T)
        assert np.allclose(groups.vector_rep(g @ h), groups.vector_rep(g) @ groups.vector_rep(h), atol=1e-12)


def test_vector_rep_is_two_to_one():
    rng = np.random.default_rng(5)
    g = groups.random_spin7(rng)
    assert np.allclose(groups.vector_rep(g), groups.vector_rep(-g), atol=1e-14)
    assert not np.allclose(g, -g)


def test_su4_charts():
    rng = np.random.default_rng(6)
    for k in (3, 5, 7):
        assert groups.is_su4(char_map(k, sample_interior(k, rng)))
    assert not groups.is_su4(char_map(6, sample_interior(6, rng)))


def test_su4_fixes_e1_under_vector_rep():
    rng = np.random.default_rng(7)
    g = chart_product((7, 5, 3), [sample_interior(k, rng) for k in (7, 5, 3)])
    assert np.allclose(groups.vector_rep(g)[:, 1], basis(1), atol=1e-12)


def test_projections_at_special_points():
    assert np.allclose(groups.proj_p0(char_map(7, np.zeros(7))), -basis(0))
    for z in (1.0, -1.0):
        v = np.array([0.1, 0.2, 0.3, 0.4, 0.1, z])
        assert np.allclose(groups.proj_p(char_map(6, v)), basis(1), atol=1e-12)


def test_proj_p_is_fixed_by_left_multiplication_rule():
    rng = np.random.default_rng(8)
    g = groups.random_spin7(rng)
    assert np.allclose(groups.proj_p(g), groups.vector_rep(g)[:, 1], atol=1e-12)


def test_matrix_text_round_trip():
    rng = np.random.default_rng(9)
    g = groups.random_spin7(rng)
    assert np.array_equal(groups.parse_matrix(groups.format_matrix(g)), g)


@pytest.mark.parametrize("text", ["1 2 3\n", "x " * 8 + "\n" * 8, ("nan " * 8 + "\n") * 8],
                         ids=["short", "words", "nan"])
def test_matrix_text_rejects_garbage(text):
    with pytest.raises(DomainError):
        groups.parse_matrix(text)


def test_mul_is_equivariant_for_random_element():
    rng = np.random.default_rng(10)
    gt = groups.random_spin7(rng)
    g = groups.vector_rep(gt)
    x, y = rng.normal(size=(2, 8))
    assert np.allclose(mul(g @ x, gt @ y), gt @ mul(x, y), atol=1e-12)
