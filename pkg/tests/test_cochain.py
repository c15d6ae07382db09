import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fluxlab.cochain import (
    CONVENTIONS, Coefficients, GroupCochain, GroupOps, REAL_COEFFS,
    canonical_connection, coboundary, connection_curvature_basic,
    cyclic_coeffs, delta1, delta2, extension_from_cocycle, verify_basic,
)
from fluxlab.errors import NotACocycle, NotConnection

Z2 = GroupOps(mul=lambda a, b: (a + b) % 2, inverse=lambda a: (-a) % 2,
              identity=0)
Z5 = GroupOps(mul=lambda a, b: (a + b) % 5, inverse=lambda a: (-a) % 5,
              identity=0)


def test_conventions_ledger_is_complete():
    assert set(CONVENTIONS) == {"coboundary", "hamiltonian_sign",
                                "wedge_order"}
    assert "c(h) - c(gh) + c(g)" in CONVENTIONS["coboundary"]


def test_coboundary_of_trivial_zero_cochain_vanishes():
    c0 = GroupCochain(0, lambda: 3.5)
    d = coboundary(c0, Z5)
    assert all(d(g) == 0.0 for g in range(5))


@settings(max_examples=30, deadline=None)
@given(vals=st.lists(st.integers(-50, 50), min_size=5, max_size=5))
def test_delta_squared_is_zero(vals):
    c1 = GroupCochain(1, lambda g: float(vals[g]))
    dd = coboundary(coboundary(c1, Z5), Z5)
    for g, h, k in itertools.product(range(5), repeat=3):
        assert dd(g, h, k) == 0.0


def test_delta1_delta2_helpers_match_coboundary():
    c1 = GroupCochain(1, lambda g: float(g * g))
    d = coboundary(c1, Z5)
    assert delta1(c1, 2, 4, Z5.mul) == d(2, 4)
    c2 = GroupCochain(2, lambda g, h: float(g * 7 + h))
    dd = coboundary(c2, Z5)
    assert delta2(c2, 1, 2, 3, Z5.mul) == dd(1, 2, 3)


def _z4_from_z2():
    # the nontrivial extension of Z/2 by Z/2 is Z/4
    sigma = lambda g, h: (g * h) % 2
    return extension_from_cocycle(Z2, cyclic_coeffs(2), sigma,
                                  elements=(0, 1))


def test_z4_round_trip_is_exact():
    ext = _z4_from_z2()
    x = (1, 0)
    # (1,0) has order 4, so the extension is cyclic, not Z/2 x Z/2
    e = ext.identity()
    powers = [e]
    for _ in range(4):
        powers.append(ext.mul(powers[-1], x))
    assert powers[1] != e and powers[2] != e and powers[3] != e
    assert powers[4] == e
    assert ext.mul(x, ext.inverse(x)) == e
    # centrality of the fiber
    a = ext.embed_fiber(1)
    for g in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        assert ext.mul(a, g) == ext.mul(g, a)


def test_curvature_descends_to_minus_sigma_exhaustively():
    ext = _z4_from_z2()
    conn = canonical_connection(ext)
    pairs = list(itertools.product((0, 1), repeat=2))
    basic = connection_curvature_basic(ext, conn, pairs, fiber_shifts=(0, 1))
    fib = cyclic_coeffs(2)
    for g, h in pairs:
        assert basic(g, h) == fib.neg(ext.sigma(g, h))


def test_real_extension_curvature():
    sigma = lambda g, h: float((g + h >= 5) * 1.0)  # carry cocycle on Z/5
    ext = extension_from_cocycle(Z5, REAL_COEFFS, sigma,
                                 elements=range(5), tol=1e-12)
    conn = canonical_connection(ext)
    pairs = list(itertools.product(range(5), repeat=2))
    basic = connection_curvature_basic(ext, conn, pairs,
                                       fiber_shifts=(0.5, -1.25))
    assert max(abs(basic(g, h) + sigma(g, h)) for g, h in pairs) == 0.0


def test_non_cocycle_is_rejected():
    bad = lambda g, h: float(g)  # delta(bad) != 0 on Z/5
    with pytest.raises(NotACocycle):
        extension_from_cocycle(Z5, REAL_COEFFS, bad, elements=range(5))
    with pytest.raises(NotACocycle):
        extension_from_cocycle(Z5, REAL_COEFFS, lambda g, h: 0.0)


def test_non_connection_is_rejected():
    ext = extension_from_cocycle(Z5, REAL_COEFFS, lambda g, h: 0.0,
                                 elements=range(5))
    flat = lambda x: 0.0  # ignores the fiber coordinate
    with pytest.raises(NotConnection):
        connection_curvature_basic(ext, flat, [(1, 2)], fiber_shifts=(1.0,))


def test_verify_basic_flags_coset_dependence():
    mul = lambda a, b: a + b
    good = lambda g, h: 1.0
    rep = verify_basic(good, [(0.0, 1.0)], [0.3, -0.7], mul)
    assert rep["verdict"] and rep["max_residual"] == 0.0
    bad = lambda g, h: g
    rep = verify_basic(bad, [(0.0, 1.0)], [0.3, -0.7], mul)
    assert not rep["verdict"] and rep["max_residual"] >= 0.3


def test_cyclic_coefficients():
    z3 = cyclic_coeffs(3)
    assert z3.add(2, 2) == 1
    assert z3.neg(1) == 2
    assert z3.sub(0, 2) == 1
