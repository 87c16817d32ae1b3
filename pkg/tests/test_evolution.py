import random
from fractions import Fraction as F

import pytest

from freeconv.coeffs import formal_t
from freeconv.convolutions import free_convolve, free_power
from freeconv.evolution import (
    CATALOG,
    belinschi_nica,
    bercovici_pata,
    bercovici_pata_inverse,
    cauchy_evolution_residual,
    maassen_semigroup,
    pde_residual,
    phi_map,
    phi_two,
    strip,
    subordination,
    subordination_inverse,
    triple_from_semigroup,
    two_state_semigroup,
    verify,
)
from freeconv.functionals import (
    CanonicalTriple,
    MomentFunctional,
    ZeroVarianceError,
    bernoulli_sym,
    free_meixner,
    jacobi_from_moments,
    point_mass,
    semicircular,
)
from freeconv.transforms import cauchy_g, f_at_infinity, voiculescu_phi


def rand_functional(rng, order, span=3):
    return MomentFunctional(
        order, [F(rng.randint(-span, span), rng.randint(1, 3))
                for _ in range(order)])


def rand_triple(rng, order):
    g = 0
    while g == 0:
        g = F(rng.randint(-3, 3), rng.randint(1, 3))
    return CanonicalTriple(F(rng.randint(-3, 3), rng.randint(1, 3)), g,
                           rand_functional(rng, order))


def test_phi_map_examples():
    assert phi_map(MomentFunctional(6, ())) == bernoulli_sym(8)
    assert phi_map(semicircular(0, 1, 8)) == semicircular(0, 1, 10)
    assert phi_map(point_mass(1, 6)).mean_var() == (0, 1)


def test_phi_jacobi_right_shift():
    mu = free_meixner(F(1, 2), F(1, 3), F(-1), F(2), 12)
    out = phi_map(mu)
    j_in = jacobi_from_moments(mu, 5)
    j_out = jacobi_from_moments(out, 6)
    assert j_out.levels(6) == [(F(0), F(1))] + j_in.levels(5)


def test_strip_examples():
    rng = random.Random(1)
    rho = rand_functional(rng, 8)
    assert strip(phi_map(rho)) == rho
    mu = free_meixner(1, 2, F(1, 2), F(3), 12)
    assert strip(mu) == semicircular(F(3, 2), F(5), 10)
    assert strip(bernoulli_sym(8)) == MomentFunctional(6, ())
    with pytest.raises(ZeroVarianceError):
        strip(point_mass(2, 6))


def test_phi_strip_roundtrip_on_normalized():
    rng = random.Random(2)
    mu = rand_functional(rng, 8)
    normalized = phi_map(mu)  # mean 0 variance 1 by construction
    assert phi_map(strip(normalized)) == normalized


def test_bp_examples():
    assert bercovici_pata(bernoulli_sym(10)) == semicircular(0, 1, 10)
    assert bercovici_pata(point_mass(F(-2, 3), 8)) == point_mass(F(-2, 3), 8)
    rng = random.Random(3)
    mu = rand_functional(rng, 10)
    assert bercovici_pata_inverse(bercovici_pata(mu)) == mu
    assert bercovici_pata(bercovici_pata_inverse(mu)) == mu


def test_belinschi_nica_meixner_action():
    t = formal_t()
    b, c, beta, gamma = F(1, 2), F(-1, 3), F(1), F(2)
    lhs = belinschi_nica(free_meixner(b, c, beta, gamma, 10), t)
    rhs = free_meixner(b + beta * t, c + gamma * t, beta, gamma, 10)
    assert lhs == rhs


def test_belinschi_nica_b1_is_bp():
    rng = random.Random(4)
    mu = rand_functional(rng, 10)
    assert belinschi_nica(mu, 1) == bercovici_pata(mu)
    assert belinschi_nica(mu, 0) == mu


def test_subordination_examples():
    rng = random.Random(5)
    mu, nu = rand_functional(rng, 10), rand_functional(rng, 10)
    d0 = MomentFunctional(10, ())
    assert subordination(mu, d0) == mu
    assert subordination(point_mass(F(5), 10), mu) == point_mass(F(5), 10)
    assert subordination(mu, mu) == bercovici_pata(mu)
    sigma = semicircular(0, 1, 10)
    assert subordination(sigma, mu) == bercovici_pata(phi_map(mu.truncate(8)))
    got = subordination(sigma, sigma)
    assert got == free_meixner(0, 1, 0, 1, 10)
    assert got.m(2) == 1 and got.m(4) == 3


def test_subordination_composition_lemma():
    rng = random.Random(6)
    mu, nu = rand_functional(rng, 10), rand_functional(rng, 10)
    lhs = voiculescu_phi(subordination(mu, nu))
    rhs = voiculescu_phi(mu).compose_descending(f_at_infinity(nu))
    assert lhs == rhs
    # the semicircular instance: phi_sigma = 1/z composed into F_sigma
    sigma = semicircular(0, 1, 10)
    lhs = voiculescu_phi(subordination(sigma, sigma))
    rhs = voiculescu_phi(sigma).compose_descending(f_at_infinity(sigma))
    assert lhs == rhs
    assert [rhs.coeff(k) for k in range(4)] == [F(0), F(1), F(0), F(1)]


def test_subordination_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(5):
        mu, nu = rand_functional(rng, 10), rand_functional(rng, 10)
        assert subordination_inverse(subordination(mu, nu), nu) == mu
    mu = rand_functional(rng, 10)
    assert subordination_inverse(mu, MomentFunctional(10, ())) == mu
    assert subordination_inverse(bercovici_pata(mu), mu) == mu


def test_phi_two_examples():
    rng = random.Random(8)
    mu, nu = rand_functional(rng, 10), rand_functional(rng, 10)
    d0 = MomentFunctional(10, ())
    assert phi_two(mu, d0) == bercovici_pata_inverse(mu)
    assert phi_two(mu, mu) == mu
    sigma = semicircular(0, 1, 10)
    assert phi_two(sigma, nu) == phi_map(nu.truncate(8))


def test_maassen_semigroup_examples():
    t = formal_t()
    st = maassen_semigroup(CanonicalTriple(0, 1, MomentFunctional(8, ())), t, 10)
    assert st.m(2) == t and st.m(4) == 2 * t * t
    d = maassen_semigroup(CanonicalTriple(F(1, 2), 0, None), t, 8)
    assert d == point_mass(F(1, 2) * t, 8)
    rng = random.Random(9)
    rho = rand_functional(rng, 8)
    one = maassen_semigroup(CanonicalTriple(0, 1, rho), 1, 10)
    assert one == bercovici_pata(phi_map(rho))


def test_normalized_free_evolution_specialization():
    """For the triple (0, 1, rho): J[mu_t] = rho boxplus sigma^{boxplus t}."""
    rng = random.Random(16)
    rho = rand_functional(rng, 8)
    t = formal_t()
    mu_t = maassen_semigroup(CanonicalTriple(0, 1, rho), t, 10)
    assert strip(mu_t) == free_convolve(rho, free_power(semicircular(0, 1, 8), t))


def test_triple_from_semigroup_roundtrip():
    rng = random.Random(10)
    tri = rand_triple(rng, 8)
    mu1 = maassen_semigroup(tri, 1, 10)
    back = triple_from_semigroup(mu1)
    assert back.beta == tri.beta and back.gamma == tri.gamma
    assert back.rho == tri.rho
    assert triple_from_semigroup(point_mass(F(3, 2), 8)).rho is None
    with pytest.raises(ZeroVarianceError):
        triple_from_semigroup(MomentFunctional(6, (0, 0, 1, 0, 0, 0)))


def test_two_state_semigroup_boolean_case():
    # rel = (0,1,delta_0), base gamma = 0: the tilde family is the Boolean
    # semigroup of the symmetric Bernoulli (eta = t w^2)
    t = formal_t()
    rel = CanonicalTriple(0, 1, MomentFunctional(8, ()))
    base = CanonicalTriple(0, 0, None)
    pair = two_state_semigroup(rel, base, t, 10)
    assert pair.base == point_mass(0, 10)
    assert pair.tilde.m(2) == t and pair.tilde.m(4) == t * t


def test_two_state_semigroup_zero_relative_variance():
    # gamma~ = 0: the tilde family is the point-mass flow delta_{beta~ t}
    rng = random.Random(17)
    base = rand_triple(rng, 8)
    t = formal_t()
    pair = two_state_semigroup(CanonicalTriple(F(2, 3), 0, None), base, t, 10)
    assert pair.tilde == point_mass(F(2, 3) * t, 10)


def test_two_state_semigroup_diagonal_case():
    rng = random.Random(11)
    tri = rand_triple(rng, 8)
    pair = two_state_semigroup(tri, tri, F(2, 3), 10)
    assert pair.tilde == pair.base


def test_two_state_strip_is_monotone():
    from freeconv.convolutions import monotone_convolve
    rng = random.Random(12)
    rel, base = rand_triple(rng, 8), rand_triple(rng, 8)
    t = formal_t()
    pair = two_state_semigroup(rel, base, t, 10)
    assert strip(pair.tilde) == monotone_convolve(rel.rho, pair.base.truncate(8))


def test_stripped_tilde_families_worked_examples():
    """Three special relative triples with closed-form J[mu~_t]."""
    rng = random.Random(18)
    t = formal_t()
    rho = rand_functional(rng, 8)
    beta, gamma = F(1, 2), F(2)
    base = CanonicalTriple(beta, gamma, rho)
    # rho~ = rho: J[mu~_t] = rho boxplus sigma_{beta,gamma}^{boxplus t}
    rel = CanonicalTriple(F(-1), F(3), rho)
    pair = two_state_semigroup(rel, base, t, 10)
    assert strip(pair.tilde) == free_convolve(
        rho, free_power(semicircular(beta, gamma, 8), t))
    # rho~ = delta_0: J[mu~_t] = mu_t (two-state free Brownian motions)
    rel = CanonicalTriple(F(0), F(1), MomentFunctional(8, ()))
    pair = two_state_semigroup(rel, base, t, 10)
    assert strip(pair.tilde) == pair.base.truncate(8)
    # gamma = 0 (mu_t = delta_{beta t}): J[mu~_t] = rho~ boxplus delta_{beta t}
    rho_t = rand_functional(rng, 8)
    rel = CanonicalTriple(F(1), F(1, 2), rho_t)
    pair = two_state_semigroup(rel, CanonicalTriple(beta, 0, None), t, 10)
    assert strip(pair.tilde) == free_convolve(rho_t, point_mass(beta * t, 8))


def test_pde_residuals_vanish():
    rng = random.Random(13)
    rel = rand_triple(rng, 10)
    base = rand_triple(rng, 10)
    res1, res2 = pde_residual(rel, base, 8)
    assert res1.is_zero() and res2.is_zero()


def test_pde_second_equation_alone():
    base = CanonicalTriple(0, 1, MomentFunctional(10, ()))
    rel = CanonicalTriple(0, 1, MomentFunctional(10, ()))
    res1, res2 = pde_residual(rel, base, 8)
    assert res2.is_zero()
    assert res1.is_zero()  # rel = base reduces the first equation to the second


def test_cauchy_residual_and_sign():
    rng = random.Random(14)
    rel = rand_triple(rng, 12)
    base = rand_triple(rng, 12)
    assert cauchy_evolution_residual(rel, base, 8).is_zero()
    assert not cauchy_evolution_residual(rel, base, 8, printed_sign=True).is_zero()


def test_cauchy_residual_consistent_with_pde():
    """The G-equation residual equals -G~^2 times the F-equation residual."""
    rng = random.Random(15)
    rel = rand_triple(rng, 12)
    base = rand_triple(rng, 12)
    order = 6
    res_g = cauchy_evolution_residual(rel, base, order)
    t = formal_t()
    work = order + 4
    pair_t = two_state_semigroup(rel, base, t, work)
    res_f, _ = pde_residual(rel, base, work - 2)
    g_tilde = cauchy_g(pair_t.tilde)
    product = (g_tilde * g_tilde) * res_f
    assert res_g == -product


def test_verify_unknown_name():
    with pytest.raises(ValueError):
        verify("no-such-identity")


def test_verify_catalog_all_entries():
    for name in CATALOG:
        rep = verify(name, seed=99)
        assert rep.verified, (name, [(c.label, c.detail)
                                     for c in rep.checks if not c.ok])


def test_verify_accepts_explicit_params():
    rep = verify("meixner-subord", params={"b": F(1), "c": F(1), "beta": F(0),
                                           "gamma": F(1), "beta2": F(0),
                                           "gamma2": F(1)}, seed=0)
    assert rep.verified
    rep = verify("subord-linear", params={"mu": bernoulli_sym(10)}, seed=0)
    assert rep.verified
    rep = verify("free-evolution", params={"beta": F(1, 2), "gamma": F(1),
                                           "rho": "bernoulli_sym"}, seed=0)
    assert rep.verified


def test_check_eq_reports_residual():
    from freeconv.evolution import check_eq
    chk = check_eq("label", point_mass(1, 4), point_mass(2, 4))
    assert not chk.ok
    assert "m_1" in chk.detail and "1" in chk.detail
    chk = check_eq("label", point_mass(1, 4), point_mass(1, 4))
    assert chk.ok and chk.detail == ""
