#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "infhecke/exactnum.hpp"

namespace infhecke {

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<Cyclotomic> e; // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Cyclotomic::one();
        return m;
    }
    static Matrix scalar(int n, const Cyclotomic& v) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = v;
        return m;
    }

    Cyclotomic& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const Cyclotomic& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& x : e)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows == cols; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= b.e[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.e) x = -x;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i) {
            for (int k = 0; k < a.cols; ++k) {
                const Cyclotomic& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols; ++j) {
                    const Cyclotomic& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        }
        return r;
    }
    Matrix scaled(const Cyclotomic& c) const {
        Matrix r = *this;
        for (auto& x : r.e) x *= c;
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows != b.rows || a.cols != b.cols) return false;
        for (size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] != b.e[i]) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    Cyclotomic trace() const {
        Cyclotomic t;
        for (int i = 0; i < rows && i < cols; ++i) t += at(i, i);
        return t;
    }
    Matrix apply_galois(long k) const {
        Matrix r = *this;
        for (auto& x : r.e) x = x.galois(k);
        return r;
    }
    Matrix embedded(int N) const {
        Matrix r = *this;
        for (auto& x : r.e) x = x.embedded(N);
        return r;
    }
    void append_key(std::string& out) const {
        out += std::to_string(rows);
        out += 'x';
        out += std::to_string(cols);
        out += ':';
        for (const auto& x : e) x.append_key(out);
    }
};

inline Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

namespace detail {

// Gaussian elimination to RREF in place; returns pivot columns. Pivot rows
// are chosen by smallest coefficient size to slow bigint growth.
inline std::vector<int> rref_in_place(std::vector<std::vector<Cyclotomic>>& m) {
    std::vector<int> piv;
    if (m.empty()) return piv;
    const int nc = static_cast<int>(m[0].size());
    int row = 0;
    for (int col = 0; col < nc && row < static_cast<int>(m.size()); ++col) {
        int sel = -1;
        size_t best = 0;
        for (int r = row; r < static_cast<int>(m.size()); ++r) {
            if (m[r][col].is_zero()) continue;
            const size_t sz = m[r][col].size_metric();
            if (sel < 0 || sz < best) {
                sel = r;
                best = sz;
            }
        }
        if (sel < 0) continue;
        std::swap(m[row], m[sel]);
        const Cyclotomic inv = m[row][col].inverse();
        for (int k = col; k < nc; ++k)
            if (!m[row][k].is_zero()) m[row][k] *= inv;
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const Cyclotomic f = m[r][col];
            for (int k = col; k < nc; ++k) {
                if (m[row][k].is_zero()) continue;
                m[r][k] -= f * m[row][k];
            }
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

} // namespace detail

// Row space in reduced row-echelon form: pivots strictly increasing, leading
// coefficient 1, pivot columns cleared above and below.
class SpanBasis {
  public:
    explicit SpanBasis(int ambient) : ambient_(ambient) {}

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<Cyclotomic>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Reduces v against the basis in place; returns the pivot position of the
    // residual or -1 if v lies in the span.
    int reduce(std::vector<Cyclotomic>& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const int p = pivots_[r];
            if (v[p].is_zero()) continue;
            const Cyclotomic f = v[p];
            const auto& row = rows_[r];
            for (int k = p; k < ambient_; ++k) {
                if (row[k].is_zero()) continue;
                v[k] -= f * row[k];
            }
        }
        for (int k = 0; k < ambient_; ++k)
            if (!v[k].is_zero()) return k;
        return -1;
    }

    bool contains(std::vector<Cyclotomic> v) const { return reduce(v) < 0; }

    // Returns true when the span grew.
    bool insert(std::vector<Cyclotomic> v) {
        const int p = reduce(v);
        if (p < 0) return false;
        const Cyclotomic inv = v[p].inverse();
        for (int k = p; k < ambient_; ++k)
            if (!v[k].is_zero()) v[k] *= inv;
        for (size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r][p].is_zero()) continue;
            const Cyclotomic f = rows_[r][p];
            for (int k = p; k < ambient_; ++k) {
                if (v[k].is_zero()) continue;
                rows_[r][k] -= f * v[k];
            }
        }
        size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    // Coordinates of v over the canonical rows, if v is in the span.
    std::optional<std::vector<Cyclotomic>> coordinates(std::vector<Cyclotomic> v) const {
        std::vector<Cyclotomic> coef(rows_.size());
        for (size_t r = 0; r < rows_.size(); ++r) {
            const int p = pivots_[r];
            if (v[p].is_zero()) continue;
            const Cyclotomic f = v[p];
            coef[r] = f;
            const auto& row = rows_[r];
            for (int k = p; k < ambient_; ++k) {
                if (row[k].is_zero()) continue;
                v[k] -= f * row[k];
            }
        }
        for (const auto& x : v)
            if (!x.is_zero()) return std::nullopt;
        return coef;
    }

  private:
    int ambient_;
    std::vector<std::vector<Cyclotomic>> rows_;
    std::vector<int> pivots_;
};

// Basis of { x : row . x = 0 for every equation row }.
inline std::vector<std::vector<Cyclotomic>> nullspace(std::vector<std::vector<Cyclotomic>> eqs,
                                                      int ncols) {
    SpanBasis rowspace(ncols);
    for (auto& r : eqs) rowspace.insert(std::move(r));
    std::vector<bool> is_pivot(ncols, false);
    for (int p : rowspace.pivots()) is_pivot[p] = true;
    std::vector<std::vector<Cyclotomic>> basis;
    for (int j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<Cyclotomic> x(ncols);
        x[j] = Cyclotomic::one();
        for (int r = 0; r < rowspace.dim(); ++r)
            x[rowspace.pivots()[r]] = -rowspace.rows()[r][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

inline int rank_of(const Matrix& m) {
    SpanBasis s(m.cols);
    for (int i = 0; i < m.rows; ++i) {
        std::vector<Cyclotomic> row(m.e.begin() + static_cast<size_t>(i) * m.cols,
                                    m.e.begin() + static_cast<size_t>(i + 1) * m.cols);
        s.insert(std::move(row));
    }
    return s.dim();
}

// Solve sum_i c_i columns[i] = rhs exactly; columns need not be independent.
inline std::optional<std::vector<Cyclotomic>> solve_in_span(
    const std::vector<std::vector<Cyclotomic>>& columns, const std::vector<Cyclotomic>& rhs) {
    const int k = static_cast<int>(columns.size());
    const int n = static_cast<int>(rhs.size());
    std::vector<std::vector<Cyclotomic>> m(n, std::vector<Cyclotomic>(k + 1));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) m[i][j] = columns[j][i];
    for (int i = 0; i < n; ++i) m[i][k] = rhs[i];
    const auto piv = detail::rref_in_place(m);
    std::vector<Cyclotomic> sol(k);
    int row = 0;
    for (int p : piv) {
        if (p == k) return std::nullopt; // rhs outside the column span
        sol[p] = m[row][k];
        ++row;
    }
    return sol;
}

inline Matrix matrix_inverse(const Matrix& a) {
    if (!a.is_square()) throw PreconditionError("inverse needs a square matrix");
    const int n = a.rows;
    std::vector<std::vector<Cyclotomic>> m(n, std::vector<Cyclotomic>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
        m[i][n + i] = Cyclotomic::one();
    }
    const auto piv = detail::rref_in_place(m);
    if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
        throw PreconditionError("matrix is singular");
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = m[i][n + j];
    return r;
}

inline Cyclotomic determinant(const Matrix& a) {
    if (!a.is_square()) throw PreconditionError("determinant needs a square matrix");
    const int n = a.rows;
    std::vector<std::vector<Cyclotomic>> m(n, std::vector<Cyclotomic>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    Cyclotomic det = Cyclotomic::one();
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r)
            if (!m[r][col].is_zero()) { sel = r; break; }
        if (sel < 0) return Cyclotomic::zero();
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        const Cyclotomic inv = m[col][col].inverse();
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            const Cyclotomic f = m[r][col] * inv;
            for (int k = col; k < n; ++k) {
                if (m[col][k].is_zero()) continue;
                m[r][k] -= f * m[col][k];
            }
        }
    }
    return det;
}

// Basis of { P : A_i P = P B_i for all i }; P maps the B-side space into the
// A-side space (rows = dim A ambient, cols = dim B ambient).
inline std::vector<Matrix> intertwiners(const std::vector<Matrix>& as,
                                        const std::vector<Matrix>& bs) {
    if (as.size() != bs.size()) throw PreconditionError("intertwiners need matching generator lists");
    if (as.empty()) throw PreconditionError("intertwiners need at least one generator");
    const int m = as[0].rows, n = bs[0].rows;
    std::vector<std::vector<Cyclotomic>> eqs;
    eqs.reserve(as.size() * static_cast<size_t>(m) * n);
    for (size_t i = 0; i < as.size(); ++i) {
        const Matrix& A = as[i];
        const Matrix& B = bs[i];
        for (int r = 0; r < m; ++r) {
            for (int s = 0; s < n; ++s) {
                std::vector<Cyclotomic> row(static_cast<size_t>(m) * n);
                for (int t = 0; t < m; ++t) row[static_cast<size_t>(t) * n + s] += A.at(r, t);
                for (int t = 0; t < n; ++t) row[static_cast<size_t>(r) * n + t] -= B.at(t, s);
                eqs.push_back(std::move(row));
            }
        }
    }
    std::vector<Matrix> out;
    for (auto& v : nullspace(std::move(eqs), m * n)) {
        Matrix P(m, n);
        P.e.assign(v.begin(), v.end());
        out.push_back(std::move(P));
    }
    return out;
}

// Basis of { B : X^T B + B X = 0 for every X }.
inline std::vector<Matrix> invariant_bilinear_forms(const std::vector<Matrix>& xs) {
    if (xs.empty()) throw PreconditionError("invariant forms need at least one matrix");
    const int n = xs[0].rows;
    std::vector<std::vector<Cyclotomic>> eqs;
    for (const Matrix& X : xs) {
        for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
                std::vector<Cyclotomic> row(static_cast<size_t>(n) * n);
                for (int t = 0; t < n; ++t) {
                    row[static_cast<size_t>(t) * n + s] += X.at(t, r);
                    row[static_cast<size_t>(r) * n + t] += X.at(t, s);
                }
                eqs.push_back(std::move(row));
            }
        }
    }
    std::vector<Matrix> out;
    for (auto& v : nullspace(std::move(eqs), n * n)) {
        Matrix B(n, n);
        B.e.assign(v.begin(), v.end());
        out.push_back(std::move(B));
    }
    return out;
}

enum class FormSymmetry { symmetric, skew, neither };

inline FormSymmetry form_symmetry(const Matrix& b) {
    const Matrix t = b.transpose();
    if (b == t) return FormSymmetry::symmetric;
    if (b == -t) return FormSymmetry::skew;
    return FormSymmetry::neither;
}

inline bool nondegenerate(const Matrix& b) { return rank_of(b) == b.rows; }

} // namespace infhecke
