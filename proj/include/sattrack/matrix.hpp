#pragma once

#include <array>
#include <cstddef>

namespace sattrack {

// Fixed-size dense kernel: 4x4 matrices, 4-vectors and 1x4 rows of doubles.
// Everything the filters need lives here; no general n-by-n machinery.

struct Vector4 {
    std::array<double, 4> e{};

    double& operator[](std::size_t i) { return e[i]; }
    double operator[](std::size_t i) const { return e[i]; }
};

struct RowVector4 {
    std::array<double, 4> e{};

    double& operator[](std::size_t i) { return e[i]; }
    double operator[](std::size_t i) const { return e[i]; }
};

struct Matrix4 {
    // Row-major storage.
    std::array<double, 16> e{};

    double& at(std::size_t r, std::size_t c) { return e[4 * r + c]; }
    double at(std::size_t r, std::size_t c) const { return e[4 * r + c]; }

    static Matrix4 zero();
    static Matrix4 identity();
    // Row-major construction; handy for literal matrices in tests and models.
    static Matrix4 of(const std::array<double, 16>& rows);
    static Matrix4 diag(double a, double b, double c, double d);
};

// ---- arithmetic suite ----
Matrix4 mat_mul(const Matrix4& a, const Matrix4& b);
Matrix4 mat_add(const Matrix4& a, const Matrix4& b);
Matrix4 mat_sub(const Matrix4& a, const Matrix4& b);
Matrix4 transpose(const Matrix4& m);
Vector4 mat_vec(const Matrix4& m, const Vector4& v);
Matrix4 outer(const Vector4& a, const Vector4& b);  // a * b^T
Matrix4 scale(const Matrix4& m, double c);

Vector4 vec_add(const Vector4& a, const Vector4& b);
Vector4 vec_sub(const Vector4& a, const Vector4& b);
Vector4 vec_scale(const Vector4& v, double c);

// Row-vector helpers for the 1x4 observation row H.
double row_dot(const RowVector4& r, const Vector4& v);       // H * x
RowVector4 row_mat(const RowVector4& r, const Matrix4& m);   // H * M
Vector4 col_of(const RowVector4& r);                         // H^T as a column

// ---- reductions / predicates ----
double max_abs(const Matrix4& m);
double max_abs(const Vector4& v);
double max_abs_diff(const Matrix4& a, const Matrix4& b);
double max_abs_diff(const Vector4& a, const Vector4& b);
bool is_finite(const Matrix4& m);
bool is_finite(const Vector4& v);
Matrix4 symmetrize(const Matrix4& m);  // (M + M^T) / 2

// ---- decompositions ----

// Inverse by Gauss-Jordan elimination with partial pivoting.
// Throws SingularMatrix when a pivot magnitude falls below 1e-12 after
// pivoting; the round-trip ||m * invert(m) - I||_max stays below 1e-10 for
// the well-conditioned matrices this model produces.
Matrix4 invert(const Matrix4& m);

// Determinant via LU with partial pivoting (0 for singular input).
double determinant(const Matrix4& m);

// Matrix exponential by scaled Taylor series with repeated squaring.
// The argument is halved until its max-abs norm is below 0.5, the series is
// truncated once the next term's max-abs entry drops under 1e-16, and the
// result is squared back up. Always converges for finite input at this size.
Matrix4 expm(const Matrix4& m);

// Spectral radius estimate via repeated squaring with norm renormalization:
// rho ~ ||m^(2^k)||^(1/2^k). Squaring doubles the implicit power each round;
// renormalizing keeps entries representable and a log-scale accumulator
// recovers the magnitude. Stops when consecutive estimates differ by < tol.
// Throws NoConvergence if 64 squarings do not settle.
double spectral_radius(const Matrix4& m, double tol = 1e-9);

// Pivoted Cholesky factorization of a PSD matrix: cov = P L L^T P^T where
// P permutes the pivot order. rank counts the positive pivots; trailing
// dimensions with residual diagonal below the zero floor are dropped.
// Throws NotPSD when a residual diagonal falls below -1e-10.
struct PsdFactor {
    Matrix4 L;                 // lower triangular, columns 0..rank-1 populated
    std::array<int, 4> perm;   // perm[i] = original index of pivoted row i
    int rank;
};
PsdFactor chol_psd(const Matrix4& cov, double neg_floor = 1e-10);

// Convenience PSD test built on chol_psd.
bool is_psd(const Matrix4& m, double neg_floor = 1e-10);

// ---- thin operator sugar over the named suite ----
inline Matrix4 operator*(const Matrix4& a, const Matrix4& b) { return mat_mul(a, b); }
inline Vector4 operator*(const Matrix4& m, const Vector4& v) { return mat_vec(m, v); }
inline Matrix4 operator+(const Matrix4& a, const Matrix4& b) { return mat_add(a, b); }
inline Matrix4 operator-(const Matrix4& a, const Matrix4& b) { return mat_sub(a, b); }
inline Matrix4 operator*(double c, const Matrix4& m) { return scale(m, c); }
inline Vector4 operator+(const Vector4& a, const Vector4& b) { return vec_add(a, b); }
inline Vector4 operator-(const Vector4& a, const Vector4& b) { return vec_sub(a, b); }
inline Vector4 operator*(double c, const Vector4& v) { return vec_scale(v, c); }

}  // namespace sattrack
