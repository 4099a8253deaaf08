#include "segrekit/linalg.hpp"

#include <map>
#include <stdexcept>

namespace segrekit {

Matrix zero_matrix(int rows, int cols) { return Matrix(rows, Vector(cols)); }

Matrix identity_matrix(int n) {
    Matrix m = zero_matrix(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = a.front().size();
    if (b.size() != inner) throw std::invalid_argument("matmul: shape mismatch");
    const std::size_t cols = b.empty() ? 0 : b.front().size();
    Matrix c(a.size(), Vector(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j) c[i][j].add_product(a[i][k], b[k][j]);
        }
    return c;
}

std::vector<int> rref(Matrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a.front().size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        GaussianRational inv = a[r][c].inverse();
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c];
            for (int j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Matrix a) { return static_cast<int>(rref(a).size()); }

GaussianRational determinant(Matrix a) {
    const int n = static_cast<int>(a.size());
    GaussianRational det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return {};
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        GaussianRational inv = a[c][c].inverse();
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            GaussianRational f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::optional<Matrix> inverse(Matrix a) {
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = 1;
    }
    auto piv = rref(a);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) return std::nullopt;
    Matrix inv = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    if (a.empty()) return Vector{};
    const int cols = static_cast<int>(a.front().size());
    Matrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    Vector x(cols);
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

std::vector<Vector> kernel(const Matrix& a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a.front().size());
    Matrix r = a;
    auto piv = rref(r);
    std::vector<bool> is_pivot(cols, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

Inertia hermitian_inertia(Matrix h) {
    const int n = static_cast<int>(h.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (h[i][j] != h[j][i].conj()) throw std::invalid_argument("hermitian_inertia: matrix is not Hermitian");
    Inertia out;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n && p < 0; ++i)
            if (!done[i] && !h[i][i].is_zero()) p = i;
        if (p < 0) {
            // zero diagonal: rotate an off-diagonal entry onto it, v = e_i + conj(h_ij) e_j
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && !h[i][j].is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) break;
            GaussianRational c = h[pi][pj].conj();
            for (int k = 0; k < n; ++k) h[pi][k] += c.conj() * h[pj][k];
            for (int k = 0; k < n; ++k) h[k][pi] += h[k][pj] * c;
            p = pi;
        }
        // h[p][p] is real and nonzero
        const mpq_class piv = h[p][p].re();
        if (sgn(piv) > 0) ++out.plus;
        else ++out.minus;
        done[p] = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] || h[i][p].is_zero()) continue;
            GaussianRational f = h[i][p] / GaussianRational(piv);
            for (int k = 0; k < n; ++k) h[i][k] -= f * h[p][k];
        }
        for (int k = 0; k < n; ++k) {
            if (done[k] || h[p][k].is_zero()) continue;
            GaussianRational f = h[p][k] / GaussianRational(piv);
            for (int i = 0; i < n; ++i) h[i][k] -= h[i][p] * f;
        }
    }
    out.zero = n - out.plus - out.minus;
    return out;
}

// ------------------------------------------------------------ SeriesMatrix

SeriesMatrix::SeriesMatrix(int rows, int cols, const Truncation& t)
    : rows_(rows), cols_(cols), trunc_(t), e_(static_cast<std::size_t>(rows) * cols, TruncatedSeries(t)) {}

SeriesMatrix SeriesMatrix::identity(int n, const Truncation& t) {
    SeriesMatrix m(n, n, t);
    for (int i = 0; i < n; ++i) m.at(i, i) = TruncatedSeries::constant(t, 1);
    return m;
}

SeriesMatrix SeriesMatrix::from_constant(const Matrix& c, const Truncation& t) {
    const int rows = static_cast<int>(c.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(c.front().size());
    SeriesMatrix m(rows, cols, t);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = TruncatedSeries::constant(t, c[i][j]);
    return m;
}

Matrix SeriesMatrix::constant_part() const {
    Matrix c = zero_matrix(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) c[i][j] = at(i, j).constant_term();
    return c;
}

std::vector<TruncatedSeries> SeriesMatrix::apply(const std::vector<TruncatedSeries>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("SeriesMatrix::apply: shape mismatch");
    std::vector<TruncatedSeries> out(rows_, TruncatedSeries(trunc_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("SeriesMatrix product: shape mismatch");
    SeriesMatrix c(a.rows(), b.cols(), a.truncation());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!b.at(k, j).is_zero()) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("SeriesMatrix sum: shape mismatch");
    SeriesMatrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) += b.at(i, j);
    return c;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("SeriesMatrix sum: shape mismatch");
    SeriesMatrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) -= b.at(i, j);
    return c;
}

SeriesMatrix operator*(const TruncatedSeries& s, const SeriesMatrix& a) {
    SeriesMatrix c = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!c.at(i, j).is_zero()) c.at(i, j) = s * c.at(i, j);
    return c;
}

namespace {

// Laplace expansion along the first remaining row with memo on (rows, cols)
// bitmasks; matrices here are small (n <= 8) so this beats fraction-free
// elimination, which would need exact series division.
struct MinorTable {
    const SeriesMatrix& m;
    std::map<std::pair<unsigned, unsigned>, TruncatedSeries> memo;

    TruncatedSeries det(unsigned rows, unsigned cols) {
        if (rows == 0) return TruncatedSeries::constant(m.truncation(), 1);
        auto key = std::make_pair(rows, cols);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        int r = __builtin_ctz(rows);
        TruncatedSeries acc(m.truncation());
        int sign = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (!(cols >> c & 1u)) continue;
            const TruncatedSeries& e = m.at(r, c);
            if (!e.is_zero()) {
                TruncatedSeries sub = det(rows & ~(1u << r), cols & ~(1u << c));
                if (!sub.is_zero()) {
                    if (sign % 2 == 0) acc += e * sub;
                    else acc -= e * sub;
                }
            }
            ++sign;
        }
        memo.emplace(key, acc);
        return acc;
    }
};

}  // namespace

DetAdj det_adjugate(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_adjugate: matrix is not square");
    const int n = m.rows();
    if (n > 16) throw std::invalid_argument("det_adjugate: matrix too large");
    MinorTable table{m, {}};
    const unsigned all = n == 0 ? 0u : ((1u << n) - 1u);
    DetAdj out{table.det(all, all), SeriesMatrix(n, n, m.truncation())};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // adj(i,j) = (-1)^{i+j} minor(j,i)
            TruncatedSeries minor = table.det(all & ~(1u << j), all & ~(1u << i));
            out.adj.at(i, j) = (i + j) % 2 == 0 ? minor : -minor;
        }
    return out;
}

TruncatedSeries series_determinant(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
    MinorTable table{m, {}};
    const unsigned all = m.rows() == 0 ? 0u : ((1u << m.rows()) - 1u);
    return table.det(all, all);
}

SeriesMatrix neumann_inverse(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("neumann_inverse: matrix is not square");
    const int n = m.rows();
    if (m.constant_part() != identity_matrix(n)) throw std::invalid_argument("neumann_inverse: constant term is not I");
    SeriesMatrix id = SeriesMatrix::identity(n, m.truncation());
    SeriesMatrix nb = id - m;  // -B
    SeriesMatrix sum = id, p = id;
    for (;;) {
        p = p * nb;
        bool zero = true;
        for (int i = 0; i < n && zero; ++i)
            for (int j = 0; j < n && zero; ++j) zero = p.at(i, j).is_zero();
        if (zero) break;
        sum = sum + p;
    }
    return sum;
}

SeriesMatrix series_inverse(const SeriesMatrix& m) {
    auto c = inverse(m.constant_part());
    if (!c) throw std::domain_error("series_inverse: constant part is singular");
    SeriesMatrix ci = SeriesMatrix::from_constant(*c, m.truncation());
    return neumann_inverse(ci * m) * ci;
}

}  // namespace segrekit
