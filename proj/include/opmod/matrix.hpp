#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace opmod {

using cplx = std::complex<double>;

/// Thrown when an operation receives matrices of incompatible shape,
/// a non-Hermitian matrix where a Hermitian one is required, etc.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown for out-of-domain scalar parameters (p <= 0, bad index bounds, ...).
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense complex matrix, row-major.  Values are immutable in spirit: all
// library operations take const refs and return fresh matrices.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<double>& d);
    static ComplexMatrix diag(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    /// Largest entry modulus.
    double max_abs() const;
    double frobenius_norm() const;

    /// True if every entry is finite (no NaN/Inf in either component).
    bool all_finite() const;

    /// max |A - A^*| entrywise; 0 for the empty matrix.
    double hermitian_defect() const;

private:
    std::size_t rows_, cols_;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx s);
ComplexMatrix operator*(double s, ComplexMatrix m);
ComplexMatrix operator-(ComplexMatrix m);

// Square matrix certified Hermitian at construction:
// max|A - A^*| <= 1e-12 * (1 + max|entry|), entries finite.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(ComplexMatrix m);

    std::size_t size() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// (M + M^*)/2 of an arbitrary square matrix; the canonical way to build
    /// random Hermitian instances.
    static HermitianMatrix symmetrize(const ComplexMatrix& m);

private:
    ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input(msg);
}

} // namespace opmod
