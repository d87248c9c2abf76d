#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "adtheta/stencil.hpp"

using namespace adtheta;

TEST_CASE("derivative weights match the hand-differentiated quadratic basis") {
    // Basis through offsets {1,2,3}; first derivative at offset 0.
    const auto t1 = lagrange_derivative_weights(2, DerivPoint::base);
    CHECK(t1[0][0] == -2.5);
    CHECK(t1[0][1] == 4.0);
    CHECK(t1[0][2] == -1.5);

    // Second derivative of a quadratic is constant, so both points agree.
    const auto t2 = lagrange_derivative_weights(2, DerivPoint::first_node);
    for (const auto& m : {t1, t2}) {
        CHECK(m[1][0] == 1.0);
        CHECK(m[1][1] == -2.0);
        CHECK(m[1][2] == 1.0);
    }
}

TEST_CASE("every derivative row annihilates constants") {
    for (int q = 1; q <= kMaxStencilOrder; ++q) {
        for (DerivPoint point : {DerivPoint::base, DerivPoint::first_node}) {
            const auto m = lagrange_derivative_weights(q, point);
            REQUIRE(m.size() == static_cast<std::size_t>(q));
            for (int k = 0; k < q; ++k) {
                REQUIRE(m[k].size() == static_cast<std::size_t>(q + 1));
                double sum = 0.0;
                double scale = 0.0;
                for (double v : m[k]) {
                    sum += v;
                    scale = std::max(scale, std::abs(v));
                }
                CHECK(std::abs(sum) <= 1e-10 * std::max(1.0, scale));
            }
        }
    }
}

TEST_CASE("stencil order outside 1..8 is rejected") {
    CHECK_THROWS_AS(lagrange_derivative_weights(0, DerivPoint::base), std::out_of_range);
    CHECK_THROWS_AS(lagrange_derivative_weights(9, DerivPoint::base), std::out_of_range);
    CHECK_THROWS_AS(theta_weights(0), std::out_of_range);
    CHECK_THROWS_AS(theta_weights(9), std::out_of_range);
}

TEST_CASE("reduced weights for q = 1 are (-1/2, 1/2) with r + s = (-1, 1)") {
    const StencilWeights& w = theta_weights(1);
    CHECK(w.r[0] == -0.5);
    CHECK(w.r[1] == 0.5);
    CHECK(w.rs[0] == -1.0);
    CHECK(w.rs[1] == 1.0);
}

TEST_CASE("reduced weights reproduce the tabulated closed-form ratios") {
    // The tabulated ratios clear the denominators; the canonical weights are
    // those ratios scaled by one common constant per order.
    const auto check = [](int q, std::initializer_list<double> r_num, double r_den,
                          std::initializer_list<double> rs_expected) {
        const StencilWeights& w = theta_weights(q);
        std::size_t j = 0;
        for (double num : r_num) {
            CHECK(w.r[j] == doctest::Approx(num / r_den).epsilon(1e-14));
            ++j;
        }
        j = 0;
        for (double v : rs_expected) {
            CHECK(w.rs[j] == v);  // integers, exactly representable
            ++j;
        }
    };
    check(2, {-11.0, 16.0, -5.0}, 12.0, {-2.0, 3.0, -1.0});
    check(3, {-31.0, 59.0, -37.0, 9.0}, 24.0, {-3.0, 6.0, -4.0, 1.0});
    check(4, {-1181.0, 2774.0, -2616.0, 1274.0, -251.0}, 720.0,
          {-4.0, 10.0, -10.0, 5.0, -1.0});
}

TEST_CASE("r and s follow their defining sums over the derivative weights") {
    for (int q = 1; q <= kMaxStencilOrder; ++q) {
        const StencilWeights& w = theta_weights(q);
        double fact = 1.0;  // (k+1)!
        std::vector<double> r(q + 1, 0.0), s(q + 1, 0.0);
        for (int k = 1; k <= q; ++k) {
            fact = 1.0;
            for (int i = 2; i <= k + 1; ++i) fact *= i;
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            for (int j = 0; j <= q; ++j) {
                r[j] += sign * w.t2[k - 1][j] / fact;
                s[j] += w.t1[k - 1][j] / fact;
            }
        }
        for (int j = 0; j <= q; ++j) {
            CHECK(w.r[j] == doctest::Approx(r[j]).epsilon(1e-12));
            CHECK(w.s[j] == doctest::Approx(s[j]).epsilon(1e-12));
            CHECK(w.rs[j] == doctest::Approx(r[j] + s[j]).epsilon(1e-12));
        }
    }
}
