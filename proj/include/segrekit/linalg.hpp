#pragma once

#include "segrekit/series.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace segrekit {

// Dense matrices over the Gaussian rationals, row-major.
using Matrix = std::vector<std::vector<GaussianRational>>;
using Vector = std::vector<GaussianRational>;

Matrix zero_matrix(int rows, int cols);
Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& a);
int rank(Matrix a);
GaussianRational determinant(Matrix a);
std::optional<Matrix> inverse(Matrix a);
// Some solution of a x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
// Basis of the right kernel.
std::vector<Vector> kernel(const Matrix& a);

struct Inertia {
    int plus = 0;
    int minus = 0;
    int zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};
// Sylvester inertia of a Hermitian matrix via exact congruence (LDL*).
Inertia hermitian_inertia(Matrix h);

// ------------------------------------------------------------ SeriesMatrix

class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(int rows, int cols, const Truncation& t);
    static SeriesMatrix identity(int n, const Truncation& t);
    static SeriesMatrix from_constant(const Matrix& m, const Truncation& t);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Truncation& truncation() const { return trunc_; }
    TruncatedSeries& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const TruncatedSeries& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix constant_part() const;
    std::vector<TruncatedSeries> apply(const std::vector<TruncatedSeries>& v) const;

    friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    Truncation trunc_;
    std::vector<TruncatedSeries> e_;
};

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const TruncatedSeries& s, const SeriesMatrix& a);

struct DetAdj {
    TruncatedSeries det;
    SeriesMatrix adj;
};
DetAdj det_adjugate(const SeriesMatrix& m);
TruncatedSeries series_determinant(const SeriesMatrix& m);

// (I + B)^{-1} = sum (-B)^j; requires M(0) = I.
SeriesMatrix neumann_inverse(const SeriesMatrix& m);
// Any M with M(0) invertible: (M0^{-1} M)^{-1} M0^{-1}.
SeriesMatrix series_inverse(const SeriesMatrix& m);

}  // namespace segrekit
