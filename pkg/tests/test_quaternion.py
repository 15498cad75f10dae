import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qqdyn.errors import ZeroDivisor
from qqdyn.quaternion import (
    I, J, K, ONE, Quaternion, quat_conj, quat_from_pair, quat_inverse, quat_mul, quat_norm, quat_to_pair,
)

from conftest import random_quaternion

# basis products e_a * e_b = sign * e_c for the basis (1, i, j, k), written out
# from i^2 = j^2 = k^2 = -1 and ij = -ji = k, jk = -kj = i, ki = -ik = j
TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def table_mul(a, b):
    out = np.zeros(4)
    for (p, q), (sign, r) in TABLE.items():
        out[r] += sign * a[p] * b[q]
    return out


def comps(q):
    return np.array(q.components())


finite = st.floats(-1e3, 1e3, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_basis_products():
    assert quat_mul(I, J) == K
    assert quat_mul(J, I) == -K
    for u in (I, J, K):
        assert quat_mul(u, u) == -ONE
    assert quat_mul(J, K) == I and quat_mul(K, I) == J


def test_identity(rng):
    for _ in range(100):
        q = random_quaternion(rng)
        assert quat_mul(q, ONE) == q and quat_mul(ONE, q) == q


def test_product_matches_table(rng):
    for _ in range(1000):
        a, b = random_quaternion(rng), random_quaternion(rng)
        np.testing.assert_allclose(comps(quat_mul(a, b)), table_mul(comps(a), comps(b)), atol=1e-14)


def test_associativity(rng):
    for _ in range(1000):
        a, b, c = (random_quaternion(rng) for _ in range(3))
        lhs = comps(quat_mul(quat_mul(a, b), c))
        rhs = table_mul(comps(a), table_mul(comps(b), comps(c)))
        assert np.linalg.norm(lhs - rhs) <= 1e-14 * max(1.0, np.linalg.norm(rhs)) * 10
        assert np.linalg.norm(lhs - comps(quat_mul(a, quat_mul(b, c)))) <= 1e-14 * np.linalg.norm(lhs) * 10


def test_non_commutative():
    assert quat_mul(I, J) != quat_mul(J, I)


def test_conj():
    assert quat_conj(Quaternion(1, 2, 3, 4)) == Quaternion(1, -2, -3, -4)


def test_conj_reverses_products(rng):
    for _ in range(1000):
        a, b = random_quaternion(rng), random_quaternion(rng)
        ca, cb = comps(quat_conj(a)), comps(quat_conj(b))
        expected = table_mul(cb, ca)
        np.testing.assert_allclose(comps(quat_conj(quat_mul(a, b))), expected, atol=1e-13)


@given(quats)
def test_conj_involution(q):
    assert quat_conj(quat_conj(q)) == q


@given(quats)
def test_norm_is_real_part_of_q_conj_q(q):
    prod = quat_mul(q, quat_conj(q))
    assert prod.q0 == pytest.approx(quat_norm(q) ** 2, rel=1e-12, abs=1e-300)
    assert quat_norm(q) ** 2 == pytest.approx(sum(c * c for c in q.components()), rel=1e-12, abs=1e-300)


def test_pair_basis_cases():
    assert quat_to_pair(J) == (0, 1)
    assert quat_to_pair(K) == (0, -1j)
    # k = j (-i): expand with the table
    np.testing.assert_array_equal(table_mul(comps(J), comps(Quaternion(0, -1))), comps(K))


def test_pair_round_trip_exact(rng):
    for _ in range(1000):
        q = random_quaternion(rng)
        assert quat_from_pair(*quat_to_pair(q)).components() == q.components()


def test_pair_decomposition_is_alpha_plus_j_beta(rng):
    for _ in range(200):
        q = random_quaternion(rng)
        a, b = quat_to_pair(q)
        rebuilt = Quaternion(a.real, a.imag) + quat_mul(J, Quaternion(b.real, b.imag))
        assert rebuilt.isclose(q, 1e-15)


def test_z_times_j_is_j_times_conj_z(rng):
    for _ in range(500):
        x, y = rng.standard_normal(2)
        z, zc = Quaternion(x, y), Quaternion(x, -y)
        assert quat_mul(z, J).isclose(quat_mul(J, zc), 1e-15)


def test_inverse():
    assert quat_inverse(I) == -I
    assert quat_inverse(Quaternion(2)) == Quaternion(0.5)
    with pytest.raises(ZeroDivisor):
        quat_inverse(Quaternion())


def test_inverse_random(rng):
    for _ in range(1000):
        q = random_quaternion(rng)
        assert quat_mul(q, quat_inverse(q)).isclose(ONE, 1e-14)
        assert quat_mul(quat_inverse(q), q).isclose(ONE, 1e-14)


def test_no_quaternion_division():
    with pytest.raises(TypeError):
        I / J
