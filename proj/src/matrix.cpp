#include "opmod/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace opmod {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw invalid_input("ComplexMatrix: entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) r.data_[i] = std::conj(data_[i]);
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix sum: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "matrix difference: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double ComplexMatrix::hermitian_defect() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require(lhs.cols() == rhs.rows(), "matrix product: size mismatch");
    ComplexMatrix r(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const cplx a = lhs(i, k);
            if (a == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) r(i, j) += a * rhs(k, j);
        }
    }
    return r;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= cplx(s, 0.0); }
ComplexMatrix operator-(ComplexMatrix m) { return m *= cplx(-1.0, 0.0); }

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require(m_.is_square(), "HermitianMatrix: matrix must be square");
    require(m_.all_finite(), "HermitianMatrix: entries must be finite");
    const double tol = 1e-12 * (1.0 + m_.max_abs());
    if (m_.hermitian_defect() > tol)
        throw invalid_input("HermitianMatrix: matrix is not Hermitian within tolerance");
    // Snap to exact Hermitian symmetry so downstream arithmetic never sees
    // the sub-tolerance defect.
    for (std::size_t i = 0; i < m_.rows(); ++i) {
        m_(i, i) = cplx(m_(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m_.cols(); ++j) {
            const cplx v = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& m) {
    require(m.is_square(), "symmetrize: matrix must be square");
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    return HermitianMatrix(std::move(h));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(s * a.matrix());
}

} // namespace opmod
