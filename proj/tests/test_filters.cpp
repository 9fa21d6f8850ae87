#include <cmath>
#include <vector>

#include "doctest.h"
#include "sattrack/errors.hpp"
#include "sattrack/filters.hpp"
#include "sattrack/noise.hpp"
#include "sattrack/orbit.hpp"

using namespace sattrack;

namespace {

// Random well-behaved model for equivalence sweeps: F scaled to spectral
// radius 0.95, PSD Q, R in [0.5, 2.5].
FilterModel random_model(SeededRng& rng) {
    Matrix4 f;
    for (double& x : f.e) x = 2.0 * rng.next_unit() - 1.0;
    const double rho = spectral_radius(f);
    if (rho > 1e-6) f = scale(f, 0.95 / rho);
    Matrix4 g;
    for (double& x : g.e) x = rng.next_unit() - 0.5;
    const Matrix4 q = mat_add(scale(mat_mul(g, transpose(g)), 0.01),
                              scale(Matrix4::identity(), 1e-8));
    RowVector4 h;
    for (double& x : h.e) x = 2.0 * rng.next_unit() - 1.0;
    const double r = 0.5 + 2.0 * rng.next_unit();
    return make_filter_model(f, h, symmetrize(q), r);
}

Matrix4 random_spd(SeededRng& rng, double ridge) {
    Matrix4 l;
    for (double& x : l.e) x = rng.next_unit() - 0.5;
    return mat_add(mat_mul(l, transpose(l)), scale(Matrix4::identity(), ridge));
}

FilterModel satellite_model(MeasurementType t, const Matrix4& q) {
    const OrbitParams orbit = make_orbit(1.0, 1.0, 0.01);
    const Matrix4 f = discretize(build_A(orbit), orbit.h);
    const Measurement m = measurement_matrix(t);
    return make_filter_model(f, m.H, q, m.variance);
}

}  // namespace

TEST_CASE("model factory validates its inputs") {
    const Matrix4 f = Matrix4::identity();
    const RowVector4 h{{1, 0, 0, 0}};
    CHECK_THROWS_AS((void)make_filter_model(f, h, Matrix4::zero(), 0.0), ValidationError);
    CHECK_THROWS_AS((void)make_filter_model(f, h, Matrix4::zero(), -1.0), ValidationError);
    CHECK_THROWS_AS((void)make_filter_model(f, h, Matrix4::diag(1, 1, 1, -1), 1.0),
                    ValidationError);
    Matrix4 asym = Matrix4::zero();
    asym.at(0, 1) = 1.0;
    CHECK_THROWS_AS((void)make_filter_model(f, h, asym, 1.0), ValidationError);
    Matrix4 badf = f;
    badf.at(0, 0) = std::nan("");
    CHECK_THROWS_AS((void)make_filter_model(badf, h, Matrix4::zero(), 1.0), ValidationError);
    CHECK(make_filter_model(f, h, Matrix4::zero(), 1.0).R == 1.0);
}

TEST_CASE("time update arithmetic") {
    FilterModel m = make_filter_model(Matrix4::diag(2, 1, 1, 1), RowVector4{{1, 0, 0, 0}},
                                      Matrix4::identity(), 1.0);
    m.u_s = Vector4{{0.5, 0, 0, -1}};
    const auto [x, p] = ckf_predict(Vector4{{1, 2, 3, 4}}, Matrix4::identity(), m);
    CHECK(x[0] == doctest::Approx(2.5));
    CHECK(x[1] == doctest::Approx(2.0));
    CHECK(x[3] == doctest::Approx(3.0));
    CHECK(max_abs_diff(p, Matrix4::diag(5, 2, 2, 2)) < 1e-15);
    CHECK(max_abs_diff(p, transpose(p)) == 0.0);
}

TEST_CASE("measurement update against a hand-worked scalar case") {
    // Only the first state participates: P = diag(1,0,0,0), R = 1, y = 2,
    // predicted mean zero. Then T = 2, K = [0.5,0,0,0], posterior mean 1,
    // posterior variance 0.5.
    const FilterModel m = make_filter_model(Matrix4::identity(), RowVector4{{1, 0, 0, 0}},
                                            Matrix4::zero(), 1.0);
    const FilterEstimate e =
        ckf_update(Vector4{{0, 0, 0, 0}}, Matrix4::diag(1, 0, 0, 0), m, 2.0);
    CHECK(e.innovation == doctest::Approx(2.0));
    CHECK(e.gain[0] == doctest::Approx(0.5));
    CHECK(e.gain[1] == 0.0);
    CHECK(e.x_post[0] == doctest::Approx(1.0));
    CHECK(e.x_post[2] == 0.0);
    CHECK(e.P_post.at(0, 0) == doctest::Approx(0.5));
    CHECK(e.P_post.at(1, 1) == 0.0);

    // The measurement offset shifts the innovation.
    FilterModel mo = m;
    mo.u_o = 0.75;
    const FilterEstimate eo =
        ckf_update(Vector4{{0, 0, 0, 0}}, Matrix4::diag(1, 0, 0, 0), mo, 2.0);
    CHECK(eo.innovation == doctest::Approx(1.25));
}

TEST_CASE("vanishing innovation variance is rejected") {
    const FilterModel m = make_filter_model(Matrix4::identity(), RowVector4{{1, 0, 0, 0}},
                                            Matrix4::zero(), 1e-20);
    CHECK_THROWS_AS((void)ckf_update(Vector4{}, Matrix4::zero(), m, 1.0),
                    DegenerateInnovation);
}

TEST_CASE("information form reproduces the covariance form step for step") {
    SeededRng rng(314159);
    for (int trial = 0; trial < 5; ++trial) {
        const FilterModel m = random_model(rng);
        const Matrix4 p0 = random_spd(rng, 0.1);
        Vector4 x0;
        for (double& v : x0.e) v = 2.0 * rng.next_unit() - 1.0;

        Vector4 x_post = x0;
        Matrix4 p_post = p0;
        auto [xb, pb] = ckf_predict(x_post, p_post, m);

        double worst_state = 0.0, worst_cov = 0.0, worst_pred = 0.0;
        for (int k = 0; k < 300; ++k) {
            const double y = gaussian(rng, 0.0, 1.0);

            const auto [xp, pp] = ckf_predict(x_post, p_post, m);
            worst_pred = std::max({worst_pred, max_abs_diff(xb, xp), max_abs_diff(pb, pp)});
            const FilterEstimate est = ckf_update(xp, pp, m, y);
            x_post = est.x_post;
            p_post = est.P_post;

            const MukfStep mu = mukf_step(xb, pb, m, y);
            xb = mu.x_bar_plus;
            pb = mu.P_plus;

            worst_state = std::max(worst_state, max_abs_diff(est.x_post, mu.x_m));
            worst_cov = std::max(worst_cov, max_abs_diff(est.P_post, mu.M));
        }
        CHECK(worst_state < 1e-9);
        CHECK(worst_cov < 1e-9);
        CHECK(worst_pred < 1e-9);
    }
}

TEST_CASE("information step formulas on a single worked update") {
    const FilterModel m = satellite_model(MeasurementType::Type1, Matrix4::zero());
    const Vector4 xb{{0.2, -0.1, 0.05, 0.3}};
    const Matrix4 p = Matrix4::diag(0.4, 0.3, 0.2, 0.1);
    const double y = 0.17;
    const MukfStep mu = mukf_step(xb, p, m, y);

    // Recompute from the definition with independent arithmetic.
    const Matrix4 s = scale(outer(col_of(m.H), col_of(m.H)), 1.0 / m.R);
    const Matrix4 mm = invert(mat_add(invert(p), s));
    const Vector4 z = vec_scale(col_of(m.H), y / m.R);
    const Vector4 xm = vec_add(xb, mat_vec(mm, vec_sub(z, mat_vec(s, xb))));
    CHECK(max_abs_diff(mu.x_m, xm) < 1e-12);
    CHECK(max_abs_diff(mu.M, symmetrize(mm)) < 1e-12);
    CHECK(max_abs_diff(mu.x_bar_plus, mat_vec(m.F, xm)) < 1e-12);
    CHECK(max_abs_diff(mu.P_plus, symmetrize(mat_mul(mat_mul(m.F, mm), transpose(m.F)))) <
          1e-12);
}

TEST_CASE("information form needs an invertible prediction covariance") {
    const FilterModel m = satellite_model(MeasurementType::Type1, Matrix4::zero());
    CHECK_THROWS_AS((void)mukf_step(Vector4{}, Matrix4::zero(), m, 0.1), SingularMatrix);
}

TEST_CASE("riccati fixed point on a decoupled scalar mode") {
    // First mode: f = 0.5, q = 1, r = 1. The fixed point solves
    // p^2 - 0.25 p - 1 = 0, so p = (0.25 + sqrt(4.0625)) / 2.
    const FilterModel m = make_filter_model(Matrix4::diag(0.5, 0, 0, 0), RowVector4{{1, 0, 0, 0}},
                                            Matrix4::diag(1, 0, 0, 0), 1.0);
    const SteadyState ss = solve_are(m, Matrix4::identity());
    const double expected = (0.25 + std::sqrt(4.0625)) / 2.0;
    CHECK(ss.P_inf.at(0, 0) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(ss.P_inf.at(1, 1) == doctest::Approx(0.0));
    CHECK(ss.rho < 1.0);
    CHECK(ss.iterations > 0);
    // Gain: K = f p / (p + r).
    CHECK(ss.K_inf[0] == doctest::Approx(0.5 * expected / (expected + 1.0)).epsilon(1e-9));
}

TEST_CASE("riccati fixed point vanishes for a stable model without process noise") {
    const FilterModel m = make_filter_model(Matrix4::diag(0.5, 0.3, -0.2, 0.1),
                                            RowVector4{{1, 1, 0, 0}}, Matrix4::zero(), 1.0);
    const SteadyState ss = solve_are(m, Matrix4::identity());
    CHECK(max_abs(ss.P_inf) < 1e-8);
    CHECK(max_abs(ss.K_inf) < 1e-8);
    CHECK(ss.rho == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("range-only channel leaves the along-track state unsteered") {
    // The transition matrix fixes e3 and the range row never sees it, so
    // every gain leaves the closed loop with a unit eigenvalue. No budget
    // can make the fixed-point iteration converge to a stabilizing solution.
    const FilterModel m = satellite_model(MeasurementType::Type1, Matrix4::zero());
    const Vector4 e3{{0, 0, 1, 0}};
    for (const Vector4& k :
         {Vector4{{0.3, -0.2, 0.5, 0.1}}, Vector4{{1, 1, 1, 1}}, Vector4{{-2, 0.4, 0, 3}}}) {
        const Matrix4 closed = mat_sub(m.F, outer(k, col_of(m.H)));
        CHECK(max_abs_diff(mat_vec(closed, e3), e3) == 0.0);
        CHECK(spectral_radius(closed, 1e-7) >= 1.0 - 1e-7);
    }
    CHECK_THROWS_AS((void)solve_are(m, Matrix4::diag(0.1, 0.1, 0.1, 0.1), 1e-10, 50000),
                    NoConvergence);
    try {
        (void)solve_are(m, Matrix4::diag(0.1, 0.1, 0.1, 0.1), 1e-10, 50000);
    } catch (const NoConvergence& e) {
        CHECK(e.last_residual > 0.0);
    }
}

TEST_CASE("angle channel admits a stabilizing steady state with process noise") {
    const Matrix4 q = scale(Matrix4::identity(), 1e-5);
    const FilterModel m = satellite_model(MeasurementType::Type2, q);
    const Matrix4 tau = Matrix4::diag(0.1, 0.1, 0.1, 0.1);
    const SteadyState ss = solve_are(m, tau, 1e-12, 500000);
    CHECK(ss.rho < 1.0);
    CHECK(max_abs_diff(ss.P_inf, transpose(ss.P_inf)) < 1e-12);
    CHECK(is_psd(ss.P_inf));

    // Verify it is a genuine fixed point of the one-step map.
    const Vector4 ph = mat_vec(ss.P_inf, col_of(m.H));
    const double t = row_dot(m.H, ph) + m.R;
    const Matrix4 inner = mat_sub(ss.P_inf, scale(outer(ph, ph), 1.0 / t));
    const Matrix4 mapped = mat_add(mat_mul(mat_mul(m.F, inner), transpose(m.F)), q);
    CHECK(max_abs_diff(mapped, ss.P_inf) < 1e-8);

    // Tolerance robustness: looser stops land near the same fixed point.
    // The iteration contracts at rate rho^2 ~= 0.990, so the distance left
    // at a stop with tolerance t is about t / (1 - rho^2) ~= 100 * t.
    const SteadyState mid = solve_are(m, tau, 1e-10, 500000);
    CHECK(max_abs_diff(mid.P_inf, ss.P_inf) < 1e-7);
    const SteadyState loose = solve_are(m, tau, 1e-8, 500000);
    CHECK(max_abs_diff(loose.P_inf, ss.P_inf) < 1e-5);
}

TEST_CASE("constant-gain predictor arithmetic") {
    FilterModel m = make_filter_model(Matrix4::diag(2, 1, 1, 1), RowVector4{{1, 0, 0, 0}},
                                      Matrix4::zero(), 1.0);
    m.u_s = Vector4{{0, 0, 0, 1}};
    m.u_o = 0.25;
    const auto [x_next, y_next] =
        steady_predict(Vector4{{1, 0, 2, 0}}, Vector4{{0.5, 0, 0, 0.5}}, 0.4, m);
    CHECK(x_next[0] == doctest::Approx(2.2));   // 2*1 + 0.5*0.4
    CHECK(x_next[3] == doctest::Approx(1.2));   // 0 + 0.5*0.4 + 1
    CHECK(x_next[2] == doctest::Approx(2.0));
    CHECK(y_next == doctest::Approx(2.45));     // x_next[0] + u_o
}
