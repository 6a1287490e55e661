#include <doctest.h>

#include <numbers>
#include <random>

#include "qgt/oracle.hpp"

using namespace qgt;

namespace {
constexpr double kPi = std::numbers::pi;
const auto kSphere = HamiltonianFamily::bloch_sphere();

ParameterPoint random_safe_point(std::mt19937_64& rng, const HamiltonianFamily& fam) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (;;) {
        ParameterPoint p{u(rng), u(rng)};
        if (fam.kind() == FamilyKind::bloch_sphere) p.lambda1 = 0.1 + (u(rng) / (2.0 * kPi)) * (kPi - 0.2);
        if (fam.control_vector(p).norm() > 0.05) return p;
    }
}
} // namespace

TEST_CASE("sphere closed forms from all routes") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> up(0.0, 2.0 * kPi);
    for (int i = 0; i < 50; ++i) {
        const double theta = u(rng), phi = up(rng);
        const ParameterPoint p{theta, phi};
        for (Band b : {Band::ground, Band::excited}) {
            const double fsign = b == Band::ground ? -1.0 : 1.0;
            for (const QGTValue q : {qgt_spectral(kSphere, p, b), bloch_qgt(kSphere, p, b)}) {
                CHECK(std::abs(q.g11 - 0.25) < 1e-12);
                CHECK(std::abs(q.g22 - std::pow(std::sin(theta), 2) / 4.0) < 1e-12);
                CHECK(std::abs(q.g12) < 1e-12);
                CHECK(std::abs(q.f12 - fsign * 0.5 * std::sin(theta)) < 1e-12);
                // monopole relation: |F| = 2 sqrt(det g)
                CHECK(std::abs(std::abs(q.f12) - 2.0 * q.sqrt_det_g()) < 1e-9);
            }
        }
    }
}

TEST_CASE("overlap route converges to the closed form") {
    const MetricEstimate m = metric_overlap_fd(kSphere, {kPi / 2.0, 0.3}, Band::ground, 1e-4);
    CHECK(std::abs(m.g11 - 0.25) < 1e-6);
    CHECK(std::abs(m.g22 - 0.25) < 1e-6);
    CHECK(std::abs(m.g12) < 1e-6);

    // metric vanishes along phi at the pole
    const MetricEstimate pole = metric_overlap_fd(kSphere, {1e-6, 0.0}, Band::ground, 1e-4);
    CHECK(std::abs(pole.g22) < 1e-9);
}

TEST_CASE("three-route agreement on random points") {
    std::mt19937_64 rng(2024);
    for (const auto& fam : {HamiltonianFamily::bloch_sphere(), HamiltonianFamily::trs_band(0.5),
                            HamiltonianFamily::trs_band(2.0), HamiltonianFamily::trs_band(-1.5)}) {
        for (int i = 0; i < 30; ++i) {
            const ParameterPoint p = random_safe_point(rng, fam);
            for (Band b : {Band::ground, Band::excited}) {
                const QGTValue qs = qgt_spectral(fam, p, b);
                const QGTValue qb = bloch_qgt(fam, p, b);
                const MetricEstimate qf = metric_overlap_fd(fam, p, b, 1e-4);
                CHECK(std::abs(qs.g11 - qb.g11) < 1e-5);
                CHECK(std::abs(qs.g22 - qb.g22) < 1e-5);
                CHECK(std::abs(qs.g12 - qb.g12) < 1e-5);
                CHECK(std::abs(qs.f12 - qb.f12) < 1e-5);
                CHECK(std::abs(qf.g11 - qs.g11) < 1e-5);
                CHECK(std::abs(qf.g22 - qs.g22) < 1e-5);
                CHECK(std::abs(qf.g12 - qs.g12) < 1e-5);
            }
        }
    }
}

TEST_CASE("band symmetry: equal metric, opposite curvature") {
    std::mt19937_64 rng(77);
    for (const auto& fam : {HamiltonianFamily::bloch_sphere(), HamiltonianFamily::trs_band(0.3)}) {
        for (int i = 0; i < 25; ++i) {
            const ParameterPoint p = random_safe_point(rng, fam);
            const QGTValue g = qgt_spectral(fam, p, Band::ground);
            const QGTValue e = qgt_spectral(fam, p, Band::excited);
            CHECK(std::abs(g.g11 - e.g11) < 1e-12);
            CHECK(std::abs(g.g12 - e.g12) < 1e-12);
            CHECK(std::abs(g.g22 - e.g22) < 1e-12);
            CHECK(std::abs(g.f12 + e.f12) < 1e-12);
        }
    }
}

TEST_CASE("gauge invariance of the spectral contraction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    const auto fam = HamiltonianFamily::trs_band(0.5);
    const ParameterPoint p{1.2, 0.8};
    const EigenSystem es = eigensystem(fam, p);
    const auto grad = fam.control_gradient(p);
    const Eigen::Matrix2cd dH1 = pauli_combination(grad[0]);
    const Eigen::Matrix2cd dH2 = pauli_combination(grad[1]);
    const QGTValue ref = qgt_from_states(es.state_minus, es.state_plus, dH1, dH2, es.gap());
    for (int i = 0; i < 20; ++i) {
        const double a1 = u(rng), a2 = u(rng);
        const std::complex<double> ph1(std::cos(a1), std::sin(a1));
        const std::complex<double> ph2(std::cos(a2), std::sin(a2));
        const QGTValue q =
            qgt_from_states(ph1 * es.state_minus, ph2 * es.state_plus, dH1, dH2, es.gap());
        CHECK(std::abs(q.g11 - ref.g11) < 1e-12);
        CHECK(std::abs(q.g12 - ref.g12) < 1e-12);
        CHECK(std::abs(q.g22 - ref.g22) < 1e-12);
        CHECK(std::abs(q.f12 - ref.f12) < 1e-12);
    }
}

TEST_CASE("qgt positivity invariants") {
    std::mt19937_64 rng(55);
    for (const auto& fam : {HamiltonianFamily::bloch_sphere(), HamiltonianFamily::trs_band(0.5),
                            HamiltonianFamily::trs_band(1.7)}) {
        for (int i = 0; i < 40; ++i) {
            const ParameterPoint p = random_safe_point(rng, fam);
            const QGTValue q = qgt_spectral(fam, p, Band::ground);
            CHECK(q.g11 >= 0.0);
            CHECK(q.g22 >= 0.0);
            CHECK(q.det_g() >= -1e-12);
            CHECK(q.det_g() >= 0.25 * q.f12 * q.f12 - 1e-9);
        }
    }
}

TEST_CASE("trs curvature antisymmetry under k -> -k") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    const auto fam = HamiltonianFamily::trs_band(0.5);
    for (int i = 0; i < 40; ++i) {
        const double kx = u(rng), ky = u(rng);
        if (fam.control_vector({kx, ky}).norm() < 0.05) continue;
        const double f = bloch_qgt(fam, {kx, ky}, Band::ground).f12;
        const double f_neg = bloch_qgt(fam, {-kx, -ky}, Band::ground).f12;
        CHECK(std::abs(f + f_neg) < 1e-10);
    }
}

TEST_CASE("trs closed-form sqrt det g") {
    SUBCASE("matches the derived value at the half-filled point") {
        CHECK(trs_sqrt_det_g_closed_form(0.0, 0.5, kPi / 2.0) == doctest::Approx(0.5));
        // ky independence: compare against the Bloch route at several ky
        for (double ky : {0.0, 1.0, 4.4}) {
            const QGTValue q = bloch_qgt(HamiltonianFamily::trs_band(0.0, 0.5),
                                         {kPi / 2.0, ky}, Band::ground);
            CHECK(q.sqrt_det_g() == doctest::Approx(0.5).epsilon(1e-10));
        }
    }
    SUBCASE("vanishes where sin kx = 0") {
        CHECK(trs_sqrt_det_g_closed_form(0.3, 0.5, 0.0) == 0.0);
        CHECK(trs_sqrt_det_g_closed_form(0.3, 0.5, kPi) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("agrees with the Bloch route everywhere") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
        for (double h : {0.0, 0.5, -0.7, 1.5, 2.0}) {
            const auto fam = HamiltonianFamily::trs_band(h, 0.5);
            for (int i = 0; i < 25; ++i) {
                const double kx = u(rng);
                if (fam.control_vector({kx, 0.0}).norm() < 0.05) continue;
                const QGTValue q = bloch_qgt(fam, {kx, 1.3}, Band::ground);
                CHECK(std::abs(q.sqrt_det_g() - trs_sqrt_det_g_closed_form(h, 0.5, kx)) <
                      1e-10);
            }
        }
    }
    SUBCASE("kx quadrature at h = 0 integrates to 1") {
        const int n = 4096;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += trs_sqrt_det_g_closed_form(0.0, 0.5, (i + 0.5) * 2.0 * kPi / n);
        }
        acc *= 2.0 * kPi / n;
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("degenerate gap throws") {
        CHECK_THROWS_AS(trs_sqrt_det_g_closed_form(1.0, 0.5, kPi), DegeneratePointError);
    }
}

TEST_CASE("custom family with off-diagonal metric") {
    // sheared sphere: (l1, l2) -> (theta = l1, phi = l1 + l2) pulls back to
    // g11 = 1/4 + sin^2/4, g12 = g22 = sin^2/4
    const auto sheared = HamiltonianFamily::custom([](ParameterPoint p) {
        const double theta = p.lambda1, phi = p.lambda1 + p.lambda2;
        const double st = std::sin(theta);
        return ControlVector{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    });
    const double theta = 1.1;
    const double s2 = std::pow(std::sin(theta), 2) / 4.0;
    for (const QGTValue q : {qgt_spectral(sheared, {theta, 0.4}, Band::ground),
                             bloch_qgt(sheared, {theta, 0.4}, Band::ground)}) {
        CHECK(q.g11 == doctest::Approx(0.25 + s2).epsilon(1e-7));
        CHECK(q.g12 == doctest::Approx(s2).epsilon(1e-7));
        CHECK(q.g22 == doctest::Approx(s2).epsilon(1e-7));
    }
    const MetricEstimate m = metric_overlap_fd(sheared, {theta, 0.4}, Band::ground);
    CHECK(m.g12 == doctest::Approx(s2).epsilon(1e-4));
}
