#include <cmath>
#include <vector>

#include "doctest.h"
#include "sattrack/errors.hpp"
#include "sattrack/metrics.hpp"
#include "sattrack/noise.hpp"

using namespace sattrack;

TEST_CASE("error collection takes elementwise absolute differences") {
    const std::vector<Vector4> truth = {Vector4{{1, 2, 3, 4}}, Vector4{{0, 0, 0, 0}}};
    const std::vector<Vector4> a = {Vector4{{1.5, 1, 3, 6}}, Vector4{{-1, 0.25, 0, 0}}};
    const std::vector<Vector4> b = {Vector4{{1, 2, 3, 4}}, Vector4{{0, 0, -2, 1}}};
    const ErrorTrace t = collect_errors(truth, a, b);
    REQUIRE(t.beta.size() == 2);
    REQUIRE(t.gamma.size() == 2);
    CHECK(t.beta[0][0] == 0.5);
    CHECK(t.beta[0][1] == 1.0);
    CHECK(t.beta[0][3] == 2.0);
    CHECK(t.beta[1][0] == 1.0);
    CHECK(t.gamma[0][2] == 0.0);
    CHECK(t.gamma[1][2] == 2.0);
    CHECK(t.gamma[1][3] == 1.0);

    CHECK_THROWS_AS((void)collect_errors(truth, a, {Vector4{}}), LengthMismatch);
    CHECK_THROWS_AS((void)collect_errors({}, truth, truth), LengthMismatch);
    CHECK(collect_errors({}, {}, {}).beta.empty());
}

TEST_CASE("per-run mean square error") {
    ErrorTrace t;
    t.beta = {Vector4{{1, 0, 2, 0}}, Vector4{{3, 0, 2, 1}}};
    t.gamma = {Vector4{{2, 1, 0, 0}}, Vector4{{0, 1, 0, 2}}};
    const MseeRecord r = msee(t);
    CHECK(r.kappa[0] == doctest::Approx(5.0));   // (1 + 9) / 2
    CHECK(r.kappa[1] == doctest::Approx(0.0));
    CHECK(r.kappa[2] == doctest::Approx(4.0));
    CHECK(r.kappa[3] == doctest::Approx(0.5));
    CHECK(r.Gamma[0] == doctest::Approx(2.0));
    CHECK(r.Gamma[1] == doctest::Approx(1.0));
    CHECK(r.Gamma[3] == doctest::Approx(2.0));

    CHECK_THROWS_AS((void)msee(ErrorTrace{}), EmptyTrace);
    ErrorTrace ragged;
    ragged.beta = {Vector4{}};
    CHECK_THROWS_AS((void)msee(ragged), EmptyTrace);
}

TEST_CASE("averaging across runs") {
    MseeRecord a, b;
    a.kappa = Vector4{{1, 2, 3, 4}};
    a.Gamma = Vector4{{2, 2, 2, 2}};
    b.kappa = Vector4{{3, 2, 1, 0}};
    b.Gamma = Vector4{{0, 4, 2, 6}};
    const AmseeRecord avg = amsee({a, b});
    CHECK(avg.phi == 2);
    CHECK(avg.Xi_kappa[0] == doctest::Approx(2.0));
    CHECK(avg.Xi_kappa[3] == doctest::Approx(2.0));
    CHECK(avg.Xi_Gamma[0] == doctest::Approx(1.0));
    CHECK(avg.Xi_Gamma[3] == doctest::Approx(4.0));

    const AmseeRecord single = amsee({a});
    CHECK(single.phi == 1);
    CHECK(max_abs_diff(single.Xi_kappa, a.kappa) == 0.0);
    CHECK(max_abs_diff(single.Xi_Gamma, a.Gamma) == 0.0);

    CHECK_THROWS_AS((void)amsee({}), EmptySequence);
}

TEST_CASE("autocorrelation on hand-checked series") {
    // {1,2,3,4}: centered (-1.5,-0.5,0.5,1.5), variance sum 5.
    const std::vector<double> ramp = {1, 2, 3, 4};
    const std::vector<double> rho = innovation_autocorr(ramp, 3);
    REQUIRE(rho.size() == 3);
    CHECK(rho[0] == doctest::Approx(0.25));
    CHECK(rho[1] == doctest::Approx(-0.3));
    CHECK(rho[2] == doctest::Approx(-0.45));

    const std::vector<double> with0 = innovation_autocorr(ramp, 2, true);
    REQUIRE(with0.size() == 3);
    CHECK(with0[0] == 1.0);
    CHECK(with0[1] == doctest::Approx(0.25));

    // Alternating series: lag-1 autocorrelation is -(n-1)/n.
    std::vector<double> alt;
    for (int i = 0; i < 10; ++i) alt.push_back(i % 2 ? 1.0 : -1.0);
    CHECK(innovation_autocorr(alt, 1)[0] == doctest::Approx(-0.9));
}

TEST_CASE("autocorrelation input validation") {
    const std::vector<double> s = {1, 2, 3, 4};
    CHECK_THROWS_AS((void)innovation_autocorr(s, 0), ValidationError);
    CHECK_THROWS_AS((void)innovation_autocorr(s, -2), ValidationError);
    CHECK_THROWS_AS((void)innovation_autocorr(s, 4), ValidationError);
    CHECK_THROWS_AS((void)innovation_autocorr({}, 1), ValidationError);
    CHECK_THROWS_AS((void)innovation_autocorr({5.5, 5.5, 5.5, 5.5}, 1), DegenerateSeries);
}

TEST_CASE("white noise has no significant autocorrelation") {
    SeededRng rng(99);
    std::vector<double> white;
    white.reserve(10000);
    for (int i = 0; i < 10000; ++i) white.push_back(gaussian(rng, 0.0, 1.0));
    for (double r : innovation_autocorr(white, 5)) CHECK(std::abs(r) < 0.03);
}
