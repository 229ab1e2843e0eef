#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mge {

using Vector = std::vector<double>;

/// Small dense row-major square matrix. Sized for q up to a handful of
/// parameters; nothing here is tuned for large dimensions.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix outer(std::span<const double> a, std::span<const double> b);

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
Vector matvec(const Matrix& m, std::span<const double> x);

/// Determinant by partial-pivot LU (closed form for n <= 3).
double determinant(const Matrix& m);

/// Transposed cofactor matrix, so that adj(M) M = det(M) I. Defined for
/// singular matrices too.
Matrix adjugate(const Matrix& m);

/// Largest |m(i,j) - m(j,i)| relative to max(1, max |m(i,j)|).
double asymmetry(const Matrix& m);

/// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi sweeps until
/// the off-diagonal Frobenius norm drops below 1e-12 (relative to the matrix
/// norm) or 100 sweeps have run.
Vector symmetric_eigenvalues(const Matrix& m);

}  // namespace mge
