#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "focaldec/dynamics.hpp"
#include "focaldec/potentials.hpp"
#include "oracles.hpp"

using namespace focaldec;

TEST_CASE("pendulum equilibrium data against finite differences") {
    const PotentialSpec p = PotentialSpec::pendulum();
    CHECK(p.q_star() == 0.0);
    CHECK(p.ell() == -1);

    auto phys = [](double q) { return 1.0 - std::cos(q); };
    const double v2 = oracles::finite_difference(phys, 0.0, 2, 0.01);
    const double v4 = oracles::finite_difference(phys, 0.0, 4, 0.02);
    CHECK(p.omega() == doctest::Approx(std::sqrt(v2 / p.mass())).epsilon(1e-8));
    CHECK(p.mu() ==
          doctest::Approx(std::sqrt(6.0 * v2 / std::fabs(v4))).epsilon(1e-5));
    CHECK(v4 < 0.0);  // ell = -1
    CHECK(p.mu() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
    CHECK(p.omega() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quartic potentials") {
    const PotentialSpec qp = PotentialSpec::quartic(1);
    const PotentialSpec qm = PotentialSpec::quartic(-1);
    CHECK(qp.eval(1.0, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(qm.eval(1.0, 1) == doctest::Approx(0.0).epsilon(1e-15));  // barrier top
    CHECK(std::isinf(qp.v_max()));
    CHECK(qm.v_max() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    // normalized-form invariants
    for (const PotentialSpec& p : {qp, qm}) {
        CHECK(p.eval(0.0, 0) == 0.0);
        CHECK(p.eval(0.0, 1) == 0.0);
        CHECK(p.eval(0.0, 2) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.eval(0.0, 4) == doctest::Approx(6.0 * p.ell()).epsilon(1e-12));
    }
}

TEST_CASE("pendulum normalized potential matches the closed form") {
    const PotentialSpec p = PotentialSpec::pendulum();
    const double s6 = std::sqrt(6.0);
    for (double x = -0.5; x <= 0.5; x += 0.01)
        CHECK(p.eval(x, 0) ==
              doctest::Approx((1.0 - std::cos(s6 * x)) / 6.0).epsilon(1e-12));
    CHECK(p.eval(0.0, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.eval(0.0, 4) == doctest::Approx(-6.0).epsilon(1e-14));
}

TEST_CASE("to_physical and round trip") {
    const PotentialSpec p = PotentialSpec::pendulum();
    const PhysicalPoint o = p.to_physical(0.0, 0.0, 0.0);
    CHECK(o.q == 0.0);
    CHECK(o.tau == 0.0);
    CHECK(o.nu == 0.0);

    const double s6 = std::sqrt(6.0);
    const PhysicalPoint a = p.to_physical(0.1, std::numbers::pi, 0.2);
    CHECK(a.q == doctest::Approx(s6 * 0.1).epsilon(1e-15));
    CHECK(a.tau == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(a.nu == doctest::Approx(s6 * 0.2).epsilon(1e-15));

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng), t = dist(rng), v = dist(rng);
        const PhysicalPoint ph = p.to_physical(x, t, v);
        const auto back = p.from_physical(ph.q, ph.tau, ph.nu);
        CHECK(back[0] == doctest::Approx(x).epsilon(1e-14));
        CHECK(back[1] == doctest::Approx(t).epsilon(1e-14));
        CHECK(back[2] == doctest::Approx(v).epsilon(1e-14));
    }
}

TEST_CASE("periodic bands") {
    CHECK(periodic_band(PotentialSpec::quartic(-1)) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::isinf(periodic_band(PotentialSpec::quartic(1))));
    const PotentialSpec pend = PotentialSpec::pendulum();
    CHECK(periodic_band(pend) == doctest::Approx(2.0 / std::sqrt(6.0)).epsilon(1e-15));
    // physical band: nu = mu*omega*v = 2
    CHECK(pend.mu() * pend.omega() * pend.v_max() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("perturbed quartic keeps the normal form and finds its barrier") {
    const PotentialSpec p = PotentialSpec::perturbed_quartic(1, 0.1);
    CHECK(p.eval(0.0, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.eval(0.0, 4) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(p.eval(0.2, 0) ==
          doctest::Approx(0.5 * 0.04 + 0.25 * 0.0016 + 0.1 * 0.00032).epsilon(1e-14));
    // the x^5 term opens the left side: a finite barrier must exist
    CHECK(std::isfinite(p.v_max()));
    const double xb = p.barrier_position(-1);
    CHECK(xb < 0.0);
    CHECK(p.eval(xb, 1) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p.v_max() == doctest::Approx(std::sqrt(2.0 * p.eval(xb, 0))).epsilon(1e-12));
}

TEST_CASE("normalization property |V - x^2/2 - ell x^4/4| = O(|x|^5)") {
    for (const PotentialSpec& p :
         {PotentialSpec::pendulum(), PotentialSpec::perturbed_quartic(-1, 0.1),
          PotentialSpec::polynomial({0.0, 0.0, 2.0, 0.0, 1.0, 0.3})}) {
        auto gap = [&](double x) {
            return std::fabs(p.eval(x, 0) - 0.5 * x * x -
                             0.25 * p.ell() * x * x * x * x);
        };
        const double C = gap(0.3) / std::pow(0.3, 5);
        for (double x = 0.02; x <= 0.3; x += 0.02) {
            CHECK(gap(x) <= std::max(1.5 * C, 1.0) * std::pow(x, 5) + 1e-14);
            CHECK(gap(-x) <= std::max(1.5 * C, 1.0) * std::pow(x, 5) + 1e-14);
        }
    }
}

TEST_CASE("polynomial potential with a shifted equilibrium") {
    // physical V(q) = 2 (q-1)^2 + (q-1)^4, expanded: equilibrium at q*=1
    // coefficients of 2q^2-4q+2 + (q^4-4q^3+6q^2-4q+1)
    const PotentialSpec p =
        PotentialSpec::polynomial({3.0, -8.0, 8.0, -4.0, 1.0}, 2.0);
    CHECK(p.q_star() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.ell() == 1);
    // V''=4, m=2 -> omega = sqrt(2); mu = sqrt(6*4/24) = 1
    CHECK(p.omega() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(p.mu() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.eval(0.0, 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.eval(0.0, 4) == doctest::Approx(6.0).epsilon(1e-8));
    // derivatives against finite differences of the normalized potential
    auto f = [&](double x) { return p.eval(x, 0); };
    CHECK(p.eval(0.2, 1) ==
          doctest::Approx(oracles::finite_difference(f, 0.2, 1, 1e-3)).epsilon(1e-8));
    CHECK(p.eval(0.2, 2) ==
          doctest::Approx(oracles::finite_difference(f, 0.2, 2, 1e-3)).epsilon(1e-6));
}

TEST_CASE("physical flow equals the mapped dimensionless flow") {
    // integrate m q'' = -P'(q) from (q*, nu) directly and compare with
    // q = mu * x(nu/(mu omega); omega tau) + q*
    const std::vector<double> coeffs{3.0, -8.0, 8.0, -4.0, 1.0};  // 2(q-1)^2+(q-1)^4
    const double mass = 2.0;
    const PotentialSpec p = PotentialSpec::polynomial(coeffs, mass);
    auto dP = [&](double q) {
        // exact derivative of the physical polynomial
        double r = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;)
            r = r * q + coeffs[i] * static_cast<double>(i);
        return r;
    };
    auto acc = [&](double q) { return -dP(q) / mass; };
    for (double nu : {0.2, 0.45}) {
        for (double tau : {1.0, 3.0, 7.5}) {
            const double q_direct =
                oracles::ck_position_generic(acc, p.q_star(), nu, tau, 1e-13);
            const auto norm = p.from_physical(0.0, tau, nu);  // (x0, t, v)
            const double x = trajectory_position(p, norm[2], norm[1], 1e-12);
            const double q_mapped = p.mu() * x + p.q_star();
            CHECK(q_direct == doctest::Approx(q_mapped).epsilon(1e-9));
        }
    }
    // the pendulum too: qdd = -sin q against the normalized route
    const PotentialSpec pend = PotentialSpec::pendulum();
    auto acc_pend = [](double q) { return -std::sin(q); };
    for (double nu : {0.5, 1.4}) {
        const double tau = 5.0;
        const double q_direct = oracles::ck_position_generic(acc_pend, 0.0, nu, tau, 1e-13);
        const auto norm = pend.from_physical(0.0, tau, nu);
        const double q_mapped =
            pend.mu() * trajectory_position(pend, norm[2], norm[1], 1e-12);
        CHECK(q_direct == doctest::Approx(q_mapped).epsilon(1e-9));
    }
}

TEST_CASE("ell sign matches the normalized quartic term") {
    // physical double-well-ish shape with negative quartic at the origin
    const PotentialSpec p = PotentialSpec::polynomial({0.0, 0.0, 1.0, 0.0, -0.25});
    CHECK(p.ell() == -1);
    CHECK(p.eval(0.0, 4) < 0.0);
    const PotentialSpec q = PotentialSpec::polynomial({0.0, 0.0, 1.0, 0.0, 0.5});
    CHECK(q.ell() == 1);
    CHECK(q.eval(0.0, 4) > 0.0);
}

TEST_CASE("degenerate potentials are rejected") {
    // pure quartic: V''(0) = 0
    CHECK_THROWS_AS(PotentialSpec::polynomial({0.0, 0.0, 0.0, 0.0, 1.0}),
                    std::domain_error);
    // harmonic: V'''' = 0 everywhere
    CHECK_THROWS_AS(PotentialSpec::polynomial({0.0, 0.0, 0.5}), std::domain_error);
    // no minimum at all
    CHECK_THROWS_AS(PotentialSpec::polynomial({0.0, 1.0, 0.0, 0.1}),
                    std::domain_error);
    // cubic term at the equilibrium breaks the quartic normal form
    CHECK_THROWS_AS(PotentialSpec::polynomial({0.0, 0.0, 2.0, 0.5, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(PotentialSpec::quartic(0), std::domain_error);
    CHECK_THROWS_AS(PotentialSpec::pendulum().eval(0.0, 6), std::domain_error);
}

TEST_CASE("descriptor parsing") {
    CHECK(make_potential("pendulum").kind() == PotentialKind::Pendulum);
    CHECK(make_potential("quartic:+1").ell() == 1);
    CHECK(make_potential("quartic:-1").ell() == -1);
    const PotentialSpec p = make_potential("perturbed:+1:c5=0.1");
    CHECK(p.kind() == PotentialKind::PerturbedQuartic);
    CHECK(p.eval(0.1, 0) ==
          doctest::Approx(PotentialSpec::perturbed_quartic(1, 0.1).eval(0.1, 0))
              .epsilon(1e-15));
    const PotentialSpec poly = make_potential("poly:0,0,0.5,0,0.25");
    CHECK(poly.ell() == 1);
    CHECK_THROWS_AS(make_potential("nope"), std::domain_error);
    CHECK_THROWS_AS(make_potential("quartic:2"), std::domain_error);
    CHECK_THROWS_AS(make_potential("perturbed:+1:c9=1"), std::domain_error);
    CHECK_THROWS_AS(make_potential("poly:abc"), std::domain_error);
    // canonical descriptors round-trip
    CHECK(make_potential(p.descriptor()).descriptor() == p.descriptor());
}
