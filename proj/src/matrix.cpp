#include "smrprec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace smrprec {

namespace {

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
            << "x" << b.cols();
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cx{}) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: zero dimension");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: zero dimension");
    if (entries_.size() != rows * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    for (const cx& v : entries_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    check_same_shape(*this, rhs, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    check_same_shape(*this, rhs, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx scalar) {
    for (cx& v : entries_) v *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cx scalar, ComplexMatrix m) { return m *= scalar; }

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "matmul: inner dimensions differ, " << a.rows() << "x" << a.cols() << " times "
            << b.rows() << "x" << b.cols();
        throw std::invalid_argument(msg.str());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "matmul: inner dimensions differ, " << a.rows() << "x" << a.cols() << " times "
            << b.rows() << "x" << b.cols();
        throw std::invalid_argument(msg.str());
    }
    if (a.rows() * a.cols() * b.cols() < 32768) return matmul_serial(a, b);
    ComplexMatrix out(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(a.rows()); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

double frobenius_norm_sq(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cx& v : a.entries()) s += std::norm(v);
    return s;
}

double frobenius_norm(const ComplexMatrix& a) { return std::sqrt(frobenius_norm_sq(a)); }

ComplexMatrix column(const ComplexMatrix& a, std::size_t j) {
    if (j >= a.cols()) throw std::invalid_argument("column: index out of range");
    ComplexMatrix out(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, 0) = a(i, j);
    return out;
}

namespace {

double offdiag_norm_sq(const ComplexMatrix& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (i != j) s += std::norm(w(i, j));
    return s;
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    const std::size_t n = a.rows();
    const double anorm = frobenius_norm(a);
    {
        ComplexMatrix asym = a - adjoint(a);
        if (frobenius_norm(asym) > 1e-9 * std::max(anorm, 1e-300))
            throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
    }

    // Symmetrize once to kill representation noise, then rotate.
    ComplexMatrix w = a;
    {
        ComplexMatrix ah = adjoint(a);
        for (std::size_t k = 0; k < w.entries().size(); ++k)
            w.entries()[k] = 0.5 * (w.entries()[k] + ah.entries()[k]);
    }
    ComplexMatrix u = ComplexMatrix::identity(n);

    const double target = 1e-12 * std::max(anorm, 1e-300);
    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (std::sqrt(offdiag_norm_sq(w)) < target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = w(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;
                const cx phase = apq / g;  // a_pq = g * phase
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary V: V(p,p)=c, V(p,q)=s, V(q,p)=-s*conj(phase),
                // V(q,q)=c*conj(phase). W <- V^H W V, U <- U V.
                const cx vqp = -s * std::conj(phase);
                const cx vqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const cx wip = w(i, p), wiq = w(i, q);
                    w(i, p) = wip * c + wiq * vqp;
                    w(i, q) = wip * s + wiq * vqq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cx wpj = w(p, j), wqj = w(q, j);
                    w(p, j) = c * wpj + std::conj(vqp) * wqj;
                    w(q, j) = s * wpj + std::conj(vqq) * wqj;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                w(p, p) = cx{w(p, p).real(), 0.0};
                w(q, q) = cx{w(q, q).real(), 0.0};
                for (std::size_t i = 0; i < n; ++i) {
                    const cx uip = u(i, p), uiq = u(i, q);
                    u(i, p) = uip * c + uiq * vqp;
                    u(i, q) = uip * s + uiq * vqq;
                }
            }
        }
    }
    const double off = std::sqrt(offdiag_norm_sq(w));
    if (off >= target && sweep == max_sweeps) {
        std::ostringstream msg;
        msg << "hermitian_eig: no convergence after " << max_sweeps
            << " sweeps, off-diagonal residual " << off;
        throw std::runtime_error(msg.str());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = w(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return std::abs(d[l]) > std::abs(d[r]);
    });

    Spectrum spec;
    spec.values.resize(n);
    spec.basis = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        spec.values[j] = d[order[j]];
        for (std::size_t i = 0; i < n; ++i) spec.basis(i, j) = u(i, order[j]);
    }
    return spec;
}

ComplexMatrix direct_inverse(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("direct_inverse: matrix not square");
    const std::size_t n = a.rows();
    const double pivot_floor = 1e-14 * std::max(frobenius_norm(a), 1e-300);

    ComplexMatrix w = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(w(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double m = std::abs(w(i, col));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best < pivot_floor) {
            std::ostringstream msg;
            msg << "direct_inverse: numerically singular, pivot " << best << " at column " << col;
            throw std::runtime_error(msg.str());
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(col, j), w(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        const cx d = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const cx f = w(i, col);
            if (f == cx{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

void write_matrix(std::ostream& os, const ComplexMatrix& a) {
    os.precision(17);
    os << a.rows() << " " << a.cols() << "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) os << " ";
            os << a(i, j).real() << " " << a(i, j).imag();
        }
        os << "\n";
    }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& a) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_matrix_file: cannot open " + path);
    write_matrix(os, a);
}

ComplexMatrix read_matrix(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw std::runtime_error("read_matrix: missing header");
    if (rows == 0 || cols == 0) throw std::runtime_error("read_matrix: zero dimension");
    std::vector<cx> entries;
    entries.reserve(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        double re = 0.0, im = 0.0;
        if (!(is >> re >> im)) throw std::runtime_error("read_matrix: truncated entry list");
        entries.emplace_back(re, im);
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_matrix_file: cannot open " + path);
    return read_matrix(is);
}

}  // namespace smrprec
