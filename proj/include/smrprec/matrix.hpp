#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace smrprec {

using cx = std::complex<double>;

/// Dense row-major complex matrix. Column vectors are N x 1 matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<double>& values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }

    cx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cx>& entries() const { return entries_; }
    std::vector<cx>& entries() { return entries_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cx scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cx scalar, ComplexMatrix m);

/// OpenMP-parallel product; falls back to the serial kernel for small sizes.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
/// Plain triple-loop product, kept as the reference kernel for testing.
ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

double frobenius_norm_sq(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

/// j-th column as an N x 1 matrix.
ComplexMatrix column(const ComplexMatrix& a, std::size_t j);

/// Ordered eigensystem of a Hermitian matrix: values sorted by descending
/// magnitude, basis columns permuted to match.
struct Spectrum {
    std::vector<double> values;
    ComplexMatrix basis;
};

/// Cyclic two-sided Jacobi rotations, iterated until the off-diagonal
/// Frobenius norm drops below 1e-12 * ||A||_F.
Spectrum hermitian_eig(const ComplexMatrix& a);

/// Gauss-Jordan elimination with partial pivoting.
ComplexMatrix direct_inverse(const ComplexMatrix& a);

/// Text format: first line "rows cols", then row-major "re im" pairs.
void write_matrix(std::ostream& os, const ComplexMatrix& a);
void write_matrix_file(const std::string& path, const ComplexMatrix& a);
ComplexMatrix read_matrix(std::istream& is);
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace smrprec
