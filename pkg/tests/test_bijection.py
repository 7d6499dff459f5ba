import cmath
import math

import numpy as np
import pytest

from sqnormal.bijection import (
    f_forward,
    f_inverse,
    polar_decomp,
    principal_sqrt,
    solve_modulus,
    witness_S,
)
from sqnormal.blocks import BlockS1, BlockS2
from sqnormal.exceptions import MismatchedPair

SQRT5 = math.sqrt(5)
# rho = 1: s^2 + s - 1 = 0, s = (sqrt5 - 1)/2, chi = s^2 = (3 - sqrt5)/2, tau = 1/(1 - chi) = (1 + sqrt5)/2
NU_GOLD = (3 - SQRT5) / 2
TAU_GOLD = (1 + SQRT5) / 2


def bisect_modulus(rho, iters=200):
    """Independent oracle: bisection on the increasing map s -> s / (1 - s^2) over [0, 1)."""
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = (lo + hi) / 2
        if mid / (1 - mid * mid) < rho:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_golden_constants_solve_the_equations():
    # tau sqrt(nu) = mu = 1 and tau (1 - nu) = r = 1
    assert TAU_GOLD * math.sqrt(NU_GOLD) == pytest.approx(1, abs=1e-15)
    assert TAU_GOLD * (1 - NU_GOLD) == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize(
    "z, expected",
    [
        (4, 2),
        (-NU_GOLD, 1j * math.sqrt(NU_GOLD)),
        (1j, cmath.exp(1j * math.pi / 4)),
        (0, 0),
        (-1, 1j),
        (complex(-1, -0.0), 1j),
        (-1j, cmath.exp(3j * math.pi / 4)),
    ],
)
def test_principal_sqrt(z, expected):
    w = principal_sqrt(z)
    assert w == pytest.approx(expected, abs=1e-15)
    assert w * w == pytest.approx(z, abs=1e-15)


def test_principal_sqrt_argument_range(rng):
    for z in rng.standard_normal(500) + 1j * rng.standard_normal(500):
        w = principal_sqrt(z)
        arg = cmath.phase(w)
        assert 0 <= arg < math.pi
        assert abs(w * w - z) <= 1e-14 * max(1, abs(z))


def test_forward_examples():
    assert f_forward(BlockS2(0, 3)) == BlockS1(0, 3)
    b = f_forward(BlockS2(NU_GOLD, TAU_GOLD))
    assert b.mu == pytest.approx(1, abs=1e-15) and b.r == pytest.approx(1, abs=1e-15)
    b = f_forward(BlockS2(-NU_GOLD, TAU_GOLD))
    assert b.mu == pytest.approx(1j, abs=1e-15) and b.r == pytest.approx(1, abs=1e-15)


def test_inverse_examples():
    assert f_inverse(BlockS1(0, 3)) == BlockS2(0, 3)
    b = f_inverse(BlockS1(1, 1))
    assert abs(b.nu - NU_GOLD) <= 1e-15 and abs(b.tau - TAU_GOLD) <= 1e-15
    b = f_inverse(BlockS1(1j, 1))
    assert abs(b.nu + NU_GOLD) <= 1e-15 and abs(b.tau - TAU_GOLD) <= 1e-15


def test_polar_relations():
    s1 = BlockS1(2 * cmath.exp(0.7j), 0.5)
    s2 = f_inverse(s1)
    p = polar_decomp(s1, s2)
    assert p.rho == pytest.approx(math.sqrt(p.chi) / (1 - p.chi), rel=1e-13)
    assert p.phi == pytest.approx(p.psi / 2, abs=1e-14)


@pytest.mark.parametrize("rho", [0.0, 1e-12, 1e-3, 0.5, 1.0, 7.0, 1e3, 1e6])
def test_solve_modulus_matches_bisection(rho):
    s = solve_modulus(rho)
    assert 0 <= s < 1
    assert s == pytest.approx(bisect_modulus(rho), abs=1e-14)
    assert abs(rho * (1 - s * s) - s) <= 1e-10 * max(1.0, rho)


def test_solve_modulus_rejects_negative():
    with pytest.raises(ValueError):
        solve_modulus(-1)


def _random_s2(rng):
    chi = rng.uniform(0, 1 - 1e-6)
    return BlockS2(chi * cmath.exp(1j * rng.uniform(0, 2 * math.pi)), rng.uniform(0.01, 10))


def _random_s1(rng):
    mu = rng.uniform(0, 10) * cmath.exp(1j * rng.uniform(0, math.pi))
    return BlockS1(mu, rng.uniform(0.01, 10))


def _close(x, y, tol=1e-12):
    return abs(x - y) <= tol * max(1.0, abs(y))


def test_round_trips(rng):
    for _ in range(2000):
        m = _random_s2(rng)
        back = f_inverse(f_forward(m))
        assert _close(back.nu, m.nu) and _close(back.tau, m.tau)
        n = _random_s1(rng)
        fwd = f_forward(f_inverse(n))
        assert _close(fwd.mu, n.mu) and _close(fwd.r, n.r)


def test_forward_output_constraints(rng):
    for _ in range(1000):
        b = f_forward(_random_s2(rng))
        assert 0 <= cmath.phase(b.mu) < math.pi or b.mu == 0
        assert b.r > 0


def test_witness_examples():
    np.testing.assert_allclose(witness_S(BlockS1(0, 3), BlockS2(0, 3)), np.eye(2), atol=1e-15)
    c = 1 / math.sqrt(TAU_GOLD**2 + 1)
    S = witness_S(BlockS1(1, 1), BlockS2(NU_GOLD, TAU_GOLD))
    np.testing.assert_allclose(S, c * np.array([[TAU_GOLD, 1], [-1, TAU_GOLD]]), atol=1e-15)
    S = witness_S(BlockS1(1j, 1), BlockS2(-NU_GOLD, TAU_GOLD))
    np.testing.assert_allclose(S, c * np.array([[TAU_GOLD, -1j], [-1j, TAU_GOLD]]), atol=1e-15)


def test_witness_intertwines(rng):
    for _ in range(500):
        m = _random_s2(rng)
        n = f_forward(m)
        S = witness_S(n, m)
        assert np.linalg.norm(S.conj().T @ S - np.eye(2)) <= 1e-12
        assert np.linalg.norm(n.matrix() @ S - S @ m.matrix()) <= 1e-12 * max(1, m.tau)


def test_witness_rejects_mismatch():
    with pytest.raises(MismatchedPair):
        witness_S(BlockS1(1, 2), BlockS2(NU_GOLD, TAU_GOLD))
