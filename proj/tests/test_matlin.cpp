#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "infhecke/matlin.hpp"

using namespace infhecke;

namespace {

Cyclotomic q(long num, long den = 1) { return Cyclotomic(Rational(num, den)); }

Matrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

Matrix from_ints(const std::vector<std::vector<long>>& rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = q(rows[i][j]);
    return m;
}

// Independent nullity count for rational systems: plain fraction elimination,
// first-nonzero pivoting, no reuse of the library's span machinery.
int naive_rational_nullity(std::vector<std::vector<Rational>> m, int ncols) {
    int rank = 0;
    for (int col = 0; col < ncols; ++col) {
        int sel = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[rank], m[sel]);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[rank][col];
            for (int k = col; k < ncols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return ncols - rank;
}

// Equations for A_i P = P B_i with rational entries, one row per (i, r, s).
std::vector<std::vector<Rational>> sylvester_rows(const std::vector<Matrix>& as,
                                                  const std::vector<Matrix>& bs) {
    const int m = as[0].rows, n = bs[0].rows;
    std::vector<std::vector<Rational>> eqs;
    for (size_t i = 0; i < as.size(); ++i) {
        for (int r = 0; r < m; ++r) {
            for (int s = 0; s < n; ++s) {
                std::vector<Rational> row(static_cast<size_t>(m) * n, Rational(0));
                for (int t = 0; t < m; ++t)
                    row[static_cast<size_t>(t) * n + s] += as[i].at(r, t).rational_value();
                for (int t = 0; t < n; ++t)
                    row[static_cast<size_t>(r) * n + t] -= bs[i].at(t, s).rational_value();
                eqs.push_back(std::move(row));
            }
        }
    }
    return eqs;
}

Cyclotomic sample_entry(std::mt19937_64& rng) {
    static const std::vector<Cyclotomic> pool = {
        Cyclotomic::zero(),  Cyclotomic::one(),          q(-1),
        q(2),                q(1, 2),                    Cyclotomic::root(4, 1),
        Cyclotomic::root(3, 1), -Cyclotomic::root(3, 2), q(-3, 2),
    };
    return pool[rng() % pool.size()];
}

} // namespace

TEST_CASE("matrix algebra basics", "[matlin]") {
    const Matrix a = from_ints({{1, 2}, {3, 4}});
    const Matrix b = from_ints({{0, 1}, {1, 0}});
    CHECK(a * b == from_ints({{2, 1}, {4, 3}}));
    CHECK(a + b == from_ints({{1, 3}, {4, 4}}));
    CHECK(a - a == Matrix(2, 2));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.trace() == q(5));
    CHECK(Matrix::identity(3) * Matrix::identity(3) == Matrix::identity(3));
    CHECK(Matrix::scalar(2, Cyclotomic::root(3, 1)).trace() ==
          Cyclotomic::root(3, 1) + Cyclotomic::root(3, 1));
    CHECK(bracket(a, b) == a * b - b * a);
    CHECK(bracket(a, a).is_zero());
}

TEST_CASE("determinant and inverse", "[matlin]") {
    const Cyclotomic z3 = Cyclotomic::root(3, 1);
    const Matrix m = from_rows({{Cyclotomic::one(), z3}, {z3, Cyclotomic::one()}});
    CHECK(determinant(m) == Cyclotomic::one() - z3 * z3);
    CHECK(determinant(from_ints({{1, 2}, {2, 4}})).is_zero());
    CHECK(determinant(Matrix::identity(4)) == Cyclotomic::one());

    const Matrix inv = matrix_inverse(m);
    CHECK(m * inv == Matrix::identity(2));
    CHECK(inv * m == Matrix::identity(2));
    CHECK_THROWS_AS(matrix_inverse(from_ints({{1, 2}, {2, 4}})), PreconditionError);

    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 6; ++trial) {
        Matrix r(3, 3);
        for (auto& x : r.e) x = sample_entry(rng);
        Matrix s(3, 3);
        for (auto& x : s.e) x = sample_entry(rng);
        CHECK(determinant(r * s) == determinant(r) * determinant(s));
        while (determinant(r).is_zero()) r = r + Matrix::identity(3).scaled(q(2));
        CHECK(r * matrix_inverse(r) == Matrix::identity(3));
    }
}

TEST_CASE("span basis keeps reduced echelon discipline", "[matlin]") {
    SpanBasis s(4);
    CHECK(s.insert({q(0), q(2), q(4), q(0)}));
    CHECK(s.insert({q(1), q(1), q(0), q(3)}));
    CHECK_FALSE(s.insert({q(2), q(4), q(4), q(6)})); // 2*first + second
    REQUIRE(s.dim() == 2);
    REQUIRE(s.pivots() == std::vector<int>{0, 1});
    for (int r = 0; r < s.dim(); ++r) {
        CHECK(s.rows()[r][s.pivots()[r]] == Cyclotomic::one());
        for (int other = 0; other < s.dim(); ++other)
            if (other != r) CHECK(s.rows()[other][s.pivots()[r]].is_zero());
    }
    CHECK(s.contains({q(3), q(5), q(4), q(9)}));
    CHECK_FALSE(s.contains({q(0), q(0), q(0), q(1)}));

    const auto coords = s.coordinates({q(3), q(5), q(4), q(9)});
    REQUIRE(coords.has_value());
    std::vector<Cyclotomic> rebuilt(4);
    for (int r = 0; r < s.dim(); ++r)
        for (int k = 0; k < 4; ++k) rebuilt[k] += (*coords)[r] * s.rows()[r][k];
    CHECK(rebuilt == std::vector<Cyclotomic>{q(3), q(5), q(4), q(9)});
    CHECK_FALSE(s.coordinates({q(0), q(0), q(1), q(1)}).has_value());
}

TEST_CASE("span basis is canonical under insertion order", "[matlin]") {
    const std::vector<std::vector<Cyclotomic>> vs = {
        {q(1), q(2), q(3), q(4), q(5)},
        {q(0), q(1), q(1), q(0), q(2)},
        {q(2), q(5), q(7), q(8), q(12)}, // dependent
        {q(1), q(0), q(0), q(1), Cyclotomic::root(4, 1)},
    };
    SpanBasis fwd(5), rev(5);
    for (const auto& v : vs) fwd.insert(v);
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) rev.insert(*it);
    REQUIRE(fwd.dim() == 3);
    CHECK(fwd.pivots() == rev.pivots());
    CHECK(fwd.rows() == rev.rows());
}

TEST_CASE("rank and nullspace satisfy rank-nullity", "[matlin]") {
    std::mt19937_64 rng(40913);
    for (int trial = 0; trial < 8; ++trial) {
        Matrix m(4, 6);
        for (auto& x : m.e) x = sample_entry(rng);
        std::vector<std::vector<Cyclotomic>> eqs;
        for (int i = 0; i < m.rows; ++i) {
            std::vector<Cyclotomic> row(m.cols);
            for (int j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
            eqs.push_back(std::move(row));
        }
        const auto null = nullspace(eqs, m.cols);
        CHECK(rank_of(m) + static_cast<int>(null.size()) == m.cols);
        for (const auto& x : null) {
            for (int i = 0; i < m.rows; ++i) {
                Cyclotomic dot;
                for (int j = 0; j < m.cols; ++j) dot += m.at(i, j) * x[j];
                CHECK(dot.is_zero());
            }
        }
    }
    CHECK(rank_of(Matrix(3, 3)) == 0);
    CHECK(rank_of(Matrix::identity(5)) == 5);
}

TEST_CASE("solve_in_span handles dependent columns", "[matlin]") {
    const std::vector<Cyclotomic> v1 = {q(1), q(0), q(2)};
    const std::vector<Cyclotomic> v2 = {q(0), q(1), q(1)};
    std::vector<Cyclotomic> v3(3);
    for (int i = 0; i < 3; ++i) v3[i] = v1[i] + v2[i];
    std::vector<Cyclotomic> rhs(3);
    for (int i = 0; i < 3; ++i) rhs[i] = q(2) * v1[i] - q(3) * v2[i];

    const auto sol = solve_in_span({v1, v2, v3}, rhs);
    REQUIRE(sol.has_value());
    std::vector<Cyclotomic> back(3);
    const std::vector<std::vector<Cyclotomic>> cols = {v1, v2, v3};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) back[i] += (*sol)[j] * cols[j][i];
    CHECK(back == rhs);

    CHECK_FALSE(solve_in_span({v1, v2}, {q(0), q(0), q(1)}).has_value());
}

TEST_CASE("intertwiner spaces match Schur expectations", "[matlin]") {
    // Symmetric group on three letters, reflection representation in the
    // simple-root basis, against the sum of the two linear characters.
    const Matrix s1 = from_ints({{-1, 1}, {0, 1}});
    const Matrix s2 = from_ints({{1, 0}, {1, -1}});
    const Matrix d1 = from_ints({{-1, 0}, {0, 1}});
    const Matrix d2 = from_ints({{-1, 0}, {0, 1}});

    const auto none = intertwiners({s1, s2}, {d1, d2});
    CHECK(none.empty());

    const auto self = intertwiners({s1, s2}, {s1, s2});
    REQUIRE(self.size() == 1);
    CHECK(self[0] == Matrix::identity(2));

    const auto diag = intertwiners({d1, d2}, {d1, d2});
    CHECK(diag.size() == 2);

    for (const auto& [as, bs] :
         std::vector<std::pair<std::vector<Matrix>, std::vector<Matrix>>>{
             {{s1, s2}, {d1, d2}}, {{s1, s2}, {s1, s2}}, {{d1, d2}, {d1, d2}}}) {
        const auto found = intertwiners(as, bs);
        for (const auto& P : found)
            for (size_t i = 0; i < as.size(); ++i) CHECK((as[i] * P - P * bs[i]).is_zero());
        CHECK(static_cast<int>(found.size()) ==
              naive_rational_nullity(sylvester_rows(as, bs), as[0].rows * bs[0].rows));
    }
}

TEST_CASE("invariant bilinear forms detect orthogonal versus symplectic", "[matlin]") {
    const Matrix e = from_ints({{0, 1}, {0, 0}});
    const Matrix f = from_ints({{0, 0}, {1, 0}});
    const Matrix h = from_ints({{1, 0}, {0, -1}});
    const auto sp = invariant_bilinear_forms({e, f, h});
    REQUIRE(sp.size() == 1);
    CHECK(form_symmetry(sp[0]) == FormSymmetry::skew);
    CHECK(nondegenerate(sp[0]));

    const Matrix l1 = from_ints({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    const Matrix l2 = from_ints({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}});
    const Matrix l3 = from_ints({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});
    const auto so = invariant_bilinear_forms({l1, l2, l3});
    REQUIRE(so.size() == 1);
    CHECK(form_symmetry(so[0]) == FormSymmetry::symmetric);
    CHECK(nondegenerate(so[0]));
    for (const Matrix& X : {l1, l2, l3}) CHECK((X.transpose() * so[0] + so[0] * X).is_zero());

    CHECK(form_symmetry(from_ints({{1, 2}, {3, 4}})) == FormSymmetry::neither);
    CHECK_FALSE(nondegenerate(from_ints({{1, 1}, {1, 1}})));
}

TEST_CASE("entrywise galois action is a ring map", "[matlin]") {
    const Cyclotomic z12 = Cyclotomic::root(12, 1);
    const Matrix a = from_rows({{z12, q(1)}, {q(0), z12 * z12}});
    const Matrix b = from_rows({{q(1, 2), z12.inverse()}, {z12, q(3)}});
    CHECK((a * b).apply_galois(5) == a.apply_galois(5) * b.apply_galois(5));
    CHECK((a + b).apply_galois(7) == a.apply_galois(7) + b.apply_galois(7));
}
