#pragma once

#include <cstdint>
#include <utility>

#include "sattrack/matrix.hpp"

namespace sattrack {

// Discrete linear-Gaussian model shared by all three estimators:
//   x_k = F x_{k-1} + u_s + B q,   q ~ N(0, Q)
//   y_k = H x_k + u_o + v,         v ~ N(0, R)
// Q must be symmetric PSD and R strictly positive. u_s, u_o default to zero
// and B to identity; they stay in the model for completeness.
struct FilterModel {
    Matrix4 F;
    RowVector4 H;
    Matrix4 Q;
    double R = 1.0;
    Vector4 u_s{};
    double u_o = 0.0;
    Matrix4 B = Matrix4::identity();
};

// Validating constructor; throws ValidationError on a non-PSD Q or R <= 0.
FilterModel make_filter_model(const Matrix4& F, const RowVector4& H, const Matrix4& Q, double R);

// One filter step's full bookkeeping.
struct FilterEstimate {
    Vector4 x_pred;
    Matrix4 P_pred;
    Vector4 x_post;
    Matrix4 P_post;
    Vector4 gain;       // K_k column
    double innovation;  // e = y - (H x_pred + u_o)
};

// Steady-state predictor data.
struct SteadyState {
    Matrix4 P_inf;   // Riccati fixed point (prediction covariance)
    Vector4 K_inf;   // steady gain
    double rho;      // spectral radius of F - K_inf*H
    int iterations;  // fixed-point iterations used
};

// Time update: x <- F x + u_s, P <- F P F^T + Q (symmetrized).
std::pair<Vector4, Matrix4> ckf_predict(const Vector4& x_post, const Matrix4& P_post,
                                        const FilterModel& m);

// Measurement update with innovation variance T = H P H^T + R.
// Throws DegenerateInnovation if T <= 1e-14.
FilterEstimate ckf_update(const Vector4& x_pred, const Matrix4& P_pred, const FilterModel& m,
                          double y);

// Information-form step. Consumes the predicted pair (x_bar, P), absorbs the
// measurement through the information matrix S = H^T R^-1 H and information
// vector z = H^T R^-1 y, and emits both the posterior and the next
// prediction:
//   M = (P^-1 + S)^-1,  x_m = x_bar + M (z - S x_bar)
//   P_plus = F M F^T + B Q B^T,  x_bar_plus = F x_m + u_s
// Throws SingularMatrix (from invert) when P is numerically singular.
struct MukfStep {
    Vector4 x_m;       // posterior state
    Matrix4 M;         // posterior covariance
    Matrix4 P_plus;    // next prediction covariance
    Vector4 x_bar_plus;  // next prediction state
};
MukfStep mukf_step(const Vector4& x_bar, const Matrix4& P, const FilterModel& m, double y);

// Fixed-point iteration of the one-step Riccati map
//   P <- F [P - P H^T (H P H^T + R)^-1 H P] F^T + Q
// from P = tau, stopping when consecutive iterates differ by < tol in
// max-norm. Returns the iterate with its gain and closed-loop spectral
// radius. Throws NoConvergence (carrying the last residual) once max_iter
// iterations are exhausted.
SteadyState solve_are(const FilterModel& m, const Matrix4& tau, double tol = 1e-10,
                      int max_iter = 200000);

// Constant-gain one-step predictor built on a SteadyState gain:
//   x_next = F x_hat + K_inf e + u_s,   y_next = H x_next + u_o.
std::pair<Vector4, double> steady_predict(const Vector4& x_hat, const Vector4& K_inf, double e,
                                          const FilterModel& m);

}  // namespace sattrack
