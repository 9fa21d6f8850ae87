#pragma once

#include "sattrack/matrix.hpp"

namespace sattrack {

// Nominal circular-orbit parameters. G0 is tied to R and omega by the
// circular-orbit condition G0 = R^3 * omega^2; the factory derives it, and
// the explicit-G0 variant rejects an inconsistent value.
struct OrbitParams {
    double R = 1.0;      // nominal radius
    double omega = 1.0;  // nominal angular rate
    double G0 = 1.0;     // gravitational constant, R^3 * omega^2
    double h = 0.01;     // sample period
};

OrbitParams make_orbit(double R, double omega, double h);
OrbitParams make_orbit_with_g0(double R, double omega, double h, double G0);

// Full polar state of the vehicle.
struct PolarState {
    double r = 1.0;
    double r_dot = 0.0;
    double theta = 0.0;
    double theta_dot = 0.0;
};

struct PolarDerivative {
    double r_dot;
    double r_ddot;
    double theta_dot;
    double theta_ddot;
};

enum class MeasurementType { Type1, Type2 };

struct Measurement {
    RowVector4 H;     // observation row
    double variance;  // channel noise variance
};

// Inverse-square-law dynamics: r'' = r*theta_dot^2 - G0/r^2,
// theta'' = -2*theta_dot*r_dot/r. Throws DomainError if r <= 0.
PolarDerivative nonlinear_derivative(const PolarState& s, const OrbitParams& p);

// Classic fourth-order Runge-Kutta advance of the coupled system.
// dt == 0 returns the state unchanged; dt < 0 is a DomainError.
PolarState rk4_step(const PolarState& s, const OrbitParams& p, double dt);

// Deviation coordinates about the nominal circular solution:
// [r - R, r_dot, R*(theta - omega*t), R*(theta_dot - omega)].
Vector4 to_deviation(const PolarState& s, double t, const OrbitParams& p);
PolarState from_deviation(const Vector4& x, double t, const OrbitParams& p);

// Continuous-time deviation dynamics matrix.
Matrix4 build_A(const OrbitParams& p);

// Discrete transition F = expm(A*h).
Matrix4 discretize(const Matrix4& A, double h);

// Observation row and channel variance for a measurement type.
// Type1 observes the range deviation x1, Type2 the scaled angle deviation x3.
Measurement measurement_matrix(MeasurementType t, double phi_var = 0.1, double psi_var = 0.5);

}  // namespace sattrack
