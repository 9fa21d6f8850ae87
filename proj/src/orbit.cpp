#include "sattrack/orbit.hpp"

#include <cmath>
#include <string>

#include "sattrack/errors.hpp"

namespace sattrack {

namespace {
void check_orbit(double R, double omega, double h) {
    if (!(R > 0.0)) throw ValidationError("orbit: R must be > 0");
    if (omega == 0.0) throw ValidationError("orbit: omega must be nonzero");
    if (!(h > 0.0)) throw ValidationError("orbit: h must be > 0");
}
}  // namespace

OrbitParams make_orbit(double R, double omega, double h) {
    check_orbit(R, omega, h);
    return OrbitParams{R, omega, R * R * R * omega * omega, h};
}

OrbitParams make_orbit_with_g0(double R, double omega, double h, double G0) {
    check_orbit(R, omega, h);
    const double expected = R * R * R * omega * omega;
    if (std::fabs(G0 - expected) > 1e-9 * std::max(1.0, std::fabs(expected)))
        throw ValidationError("orbit: G0 inconsistent with circular nominal (need R^3*omega^2 = " +
                              std::to_string(expected) + ")");
    return OrbitParams{R, omega, G0, h};
}

PolarDerivative nonlinear_derivative(const PolarState& s, const OrbitParams& p) {
    if (!(s.r > 0.0)) throw DomainError("nonlinear_derivative: r must be > 0");
    return PolarDerivative{
        s.r_dot,
        s.r * s.theta_dot * s.theta_dot - p.G0 / (s.r * s.r),
        s.theta_dot,
        -2.0 * s.theta_dot * s.r_dot / s.r,
    };
}

PolarState rk4_step(const PolarState& s, const OrbitParams& p, double dt) {
    if (dt < 0.0) throw DomainError("rk4_step: dt must be >= 0");
    if (dt == 0.0) return s;
    auto advance = [](const PolarState& base, const PolarDerivative& d, double step) {
        return PolarState{base.r + step * d.r_dot, base.r_dot + step * d.r_ddot,
                          base.theta + step * d.theta_dot, base.theta_dot + step * d.theta_ddot};
    };
    const PolarDerivative k1 = nonlinear_derivative(s, p);
    const PolarDerivative k2 = nonlinear_derivative(advance(s, k1, dt / 2.0), p);
    const PolarDerivative k3 = nonlinear_derivative(advance(s, k2, dt / 2.0), p);
    const PolarDerivative k4 = nonlinear_derivative(advance(s, k3, dt), p);
    return PolarState{
        s.r + dt / 6.0 * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot),
        s.r_dot + dt / 6.0 * (k1.r_ddot + 2.0 * k2.r_ddot + 2.0 * k3.r_ddot + k4.r_ddot),
        s.theta + dt / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot),
        s.theta_dot + dt / 6.0 * (k1.theta_ddot + 2.0 * k2.theta_ddot + 2.0 * k3.theta_ddot + k4.theta_ddot),
    };
}

Vector4 to_deviation(const PolarState& s, double t, const OrbitParams& p) {
    return Vector4{{s.r - p.R, s.r_dot, p.R * (s.theta - p.omega * t), p.R * (s.theta_dot - p.omega)}};
}

PolarState from_deviation(const Vector4& x, double t, const OrbitParams& p) {
    PolarState s{p.R + x[0], x[1], p.omega * t + x[2] / p.R, p.omega + x[3] / p.R};
    if (!(s.r > 0.0)) throw DomainError("from_deviation: deviation drives r <= 0");
    return s;
}

Matrix4 build_A(const OrbitParams& p) {
    const double w = p.omega;
    return Matrix4::of({0.0, 1.0,        0.0, 0.0,
                        3.0 * w * w, 0.0, 0.0, 2.0 * w,
                        0.0, 0.0,        0.0, 1.0,
                        0.0, -2.0 * w,   0.0, 0.0});
}

Matrix4 discretize(const Matrix4& A, double h) {
    if (h < 0.0) throw DomainError("discretize: h must be >= 0");
    return expm(scale(A, h));
}

Measurement measurement_matrix(MeasurementType t, double phi_var, double psi_var) {
    if (t == MeasurementType::Type1) return Measurement{RowVector4{{1.0, 0.0, 0.0, 0.0}}, phi_var};
    return Measurement{RowVector4{{0.0, 0.0, 1.0, 0.0}}, psi_var};
}

}  // namespace sattrack
