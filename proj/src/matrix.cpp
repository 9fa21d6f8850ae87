#include "sattrack/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sattrack/errors.hpp"

namespace sattrack {

namespace {
constexpr double kPivotFloor = 1e-12;   // below this a pivot declares singularity
constexpr double kSeriesFloor = 1e-16;  // Taylor truncation threshold
}  // namespace

Matrix4 Matrix4::zero() { return Matrix4{}; }

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix4 Matrix4::of(const std::array<double, 16>& rows) {
    Matrix4 m;
    m.e = rows;
    return m;
}

Matrix4 Matrix4::diag(double a, double b, double c, double d) {
    Matrix4 m;
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    m.at(3, 3) = d;
    return m;
}

Matrix4 mat_mul(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double aik = a.at(i, k);
            for (std::size_t j = 0; j < 4; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    }
    return r;
}

Matrix4 mat_add(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

Matrix4 mat_sub(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

Matrix4 transpose(const Matrix4& m) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.at(i, j) = m.at(j, i);
    return r;
}

Vector4 mat_vec(const Matrix4& m, const Vector4& v) {
    Vector4 r;
    for (std::size_t i = 0; i < 4; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 4; ++j) s += m.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Matrix4 outer(const Vector4& a, const Vector4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.at(i, j) = a[i] * b[j];
    return r;
}

Matrix4 scale(const Matrix4& m, double c) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = m.e[i] * c;
    return r;
}

Vector4 vec_add(const Vector4& a, const Vector4& b) {
    return Vector4{{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}};
}

Vector4 vec_sub(const Vector4& a, const Vector4& b) {
    return Vector4{{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}};
}

Vector4 vec_scale(const Vector4& v, double c) {
    return Vector4{{v[0] * c, v[1] * c, v[2] * c, v[3] * c}};
}

double row_dot(const RowVector4& r, const Vector4& v) {
    return r[0] * v[0] + r[1] * v[1] + r[2] * v[2] + r[3] * v[3];
}

RowVector4 row_mat(const RowVector4& r, const Matrix4& m) {
    RowVector4 out;
    for (std::size_t j = 0; j < 4; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += r[i] * m.at(i, j);
        out[j] = s;
    }
    return out;
}

Vector4 col_of(const RowVector4& r) { return Vector4{{r[0], r[1], r[2], r[3]}}; }

double max_abs(const Matrix4& m) {
    double v = 0.0;
    for (double x : m.e) v = std::max(v, std::fabs(x));
    return v;
}

double max_abs(const Vector4& v) {
    double r = 0.0;
    for (double x : v.e) r = std::max(r, std::fabs(x));
    return r;
}

double max_abs_diff(const Matrix4& a, const Matrix4& b) {
    double v = 0.0;
    for (std::size_t i = 0; i < 16; ++i) v = std::max(v, std::fabs(a.e[i] - b.e[i]));
    return v;
}

double max_abs_diff(const Vector4& a, const Vector4& b) {
    double v = 0.0;
    for (std::size_t i = 0; i < 4; ++i) v = std::max(v, std::fabs(a[i] - b[i]));
    return v;
}

bool is_finite(const Matrix4& m) {
    for (double x : m.e)
        if (!std::isfinite(x)) return false;
    return true;
}

bool is_finite(const Vector4& v) {
    for (double x : v.e)
        if (!std::isfinite(x)) return false;
    return true;
}

Matrix4 symmetrize(const Matrix4& m) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
    return r;
}

Matrix4 invert(const Matrix4& m) {
    if (!is_finite(m)) throw ValidationError("invert: matrix has non-finite entries");
    // Gauss-Jordan on the augmented [m | I] block.
    double aug[4][8] = {};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) aug[i][j] = m.at(i, j);
        aug[i][4 + i] = 1.0;
    }
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
        if (std::fabs(aug[piv][col]) < kPivotFloor)
            throw SingularMatrix("invert: pivot below 1e-12 at column " + std::to_string(col));
        if (piv != col)
            for (std::size_t j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
        const double d = aug[col][col];
        for (std::size_t j = 0; j < 8; ++j) aug[col][j] /= d;
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < 8; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    Matrix4 inv;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) inv.at(i, j) = aug[i][4 + j];
    return inv;
}

double determinant(const Matrix4& m) {
    double a[4][4];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a[i][j] = m.at(i, j);
    double det = 1.0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

Matrix4 expm(const Matrix4& m) {
    if (!is_finite(m)) throw ValidationError("expm: matrix has non-finite entries");
    // Halve until the norm is small enough for fast Taylor convergence.
    int squarings = 0;
    double nrm = max_abs(m);
    while (nrm > 0.5 && squarings < 64) {
        nrm *= 0.5;
        ++squarings;
    }
    const Matrix4 t = scale(m, std::ldexp(1.0, -squarings));
    Matrix4 sum = Matrix4::identity();
    Matrix4 term = Matrix4::identity();
    for (int n = 1; n <= 64; ++n) {
        term = scale(mat_mul(term, t), 1.0 / n);
        sum = mat_add(sum, term);
        if (max_abs(term) < kSeriesFloor) break;
    }
    for (int s = 0; s < squarings; ++s) sum = mat_mul(sum, sum);
    return sum;
}

double spectral_radius(const Matrix4& m, double tol) {
    if (!is_finite(m)) throw ValidationError("spectral_radius: matrix has non-finite entries");
    Matrix4 b = m;
    double log_scale = 0.0;  // log of the factors divided out so far
    double prev = -1.0;
    for (int k = 0; k <= 64; ++k) {
        const double nrm = max_abs(b);
        if (nrm == 0.0) return 0.0;  // nilpotent: some power vanished exactly
        const double est = std::exp((log_scale + std::log(nrm)) * std::ldexp(1.0, -k));
        if (k > 0 && std::fabs(est - prev) < tol) return est;
        prev = est;
        const Matrix4 c = scale(b, 1.0 / nrm);
        b = mat_mul(c, c);
        log_scale = 2.0 * (log_scale + std::log(nrm));
    }
    throw NoConvergence("spectral_radius: estimate did not settle within 64 squarings", prev);
}

PsdFactor chol_psd(const Matrix4& cov, double neg_floor) {
    // Outer-product Cholesky with diagonal pivoting; tolerates semidefinite
    // input by truncating once the residual diagonal is numerically zero.
    double w[4][4];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) w[i][j] = cov.at(i, j);
    PsdFactor f;
    f.perm = {0, 1, 2, 3};
    f.rank = 0;
    double max_diag0 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) max_diag0 = std::max(max_diag0, std::fabs(w[i][i]));
    const double zero_floor = 1e-14 * std::max(1.0, max_diag0);
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t p = k;
        double dmin = w[k][k];
        for (std::size_t j = k + 1; j < 4; ++j) {
            if (w[j][j] > w[p][p]) p = j;
            dmin = std::min(dmin, w[j][j]);
        }
        if (dmin < -neg_floor)
            throw NotPSD("chol_psd: residual diagonal " + std::to_string(dmin) + " below -" +
                         std::to_string(neg_floor));
        if (w[p][p] <= zero_floor) break;  // remaining block is numerically zero
        if (p != k) {
            for (std::size_t j = 0; j < 4; ++j) std::swap(w[k][j], w[p][j]);
            for (std::size_t i = 0; i < 4; ++i) std::swap(w[i][k], w[i][p]);
            std::swap(f.perm[k], f.perm[p]);
        }
        w[k][k] = std::sqrt(w[k][k]);
        for (std::size_t i = k + 1; i < 4; ++i) w[i][k] /= w[k][k];
        // Update the whole trailing block, keeping it symmetric; the pivot
        // swaps above exchange full rows and columns, so both triangles of
        // the residual must stay current.
        for (std::size_t j = k + 1; j < 4; ++j)
            for (std::size_t i = k + 1; i < 4; ++i) w[i][j] -= w[i][k] * w[j][k];
        ++f.rank;
    }
    f.L = Matrix4::zero();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j <= i && j < static_cast<std::size_t>(f.rank); ++j)
            f.L.at(i, j) = w[i][j];
    return f;
}

bool is_psd(const Matrix4& m, double neg_floor) {
    try {
        chol_psd(m, neg_floor);
        return true;
    } catch (const NotPSD&) {
        return false;
    }
}

}  // namespace sattrack
