#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "infhecke/errors.hpp"

namespace infhecke {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw UsageError("bad rational literal: " + s);
    if (r.get_den() == 0) throw UsageError("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {

// Dense integer polynomials, lowest degree first.
using IPoly = std::vector<Int>;

inline IPoly ipoly_xn_minus_1(int n) {
    IPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    return p;
}

// Exact division, caller guarantees divisibility and monic divisor.
inline IPoly ipoly_div_exact(IPoly num, const IPoly& den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    IPoly q(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        Int c = num[k + dd]; // den is monic
        q[k] = c;
        if (c == 0) continue;
        for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
    }
    for (const Int& c : num)
        if (c != 0) throw ConsistencyError("cyclotomic polynomial division left a remainder");
    return q;
}

} // namespace detail

// Per-conductor tables: Phi_n and the reductions of x^j mod Phi_n for
// 0 <= j < n (exponents are taken mod n first, since Phi_n | x^n - 1).
struct CycloTable {
    int n = 1;
    int phi = 1;
    std::vector<Int> min_poly;                 // Phi_n, degree phi, monic
    std::vector<std::vector<Rational>> pow;    // pow[j] = x^j mod Phi_n, length phi
};

namespace detail {

inline detail::IPoly cyclotomic_poly(int n, std::map<int, detail::IPoly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    detail::IPoly p = detail::ipoly_xn_minus_1(n);
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = detail::ipoly_div_exact(std::move(p), cyclotomic_poly(d, memo));
    memo[n] = p;
    return p;
}

} // namespace detail

// Populate-once cache; concurrent reads are safe after construction.
inline const CycloTable& cyclo_table(int n) {
    static std::map<int, CycloTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw PreconditionError("conductor must be >= 1");
    CycloTable t;
    t.n = n;
    t.phi = euler_phi(n);
    static std::map<int, detail::IPoly> poly_memo;
    t.min_poly = detail::cyclotomic_poly(n, poly_memo);
    if (static_cast<int>(t.min_poly.size()) != t.phi + 1)
        throw ConsistencyError("Phi_n degree differs from euler_phi(n)");
    t.pow.resize(n);
    for (int j = 0; j < n && j < t.phi; ++j) {
        t.pow[j].assign(t.phi, Rational(0));
        t.pow[j][j] = 1;
    }
    for (int j = t.phi; j < n; ++j) {
        // x^j = x * x^(j-1), then reduce the x^phi term via Phi_n.
        const auto& prev = t.pow[j - 1];
        std::vector<Rational> cur(t.phi, Rational(0));
        for (int i = 0; i + 1 < t.phi; ++i) cur[i + 1] = prev[i];
        const Rational lead = prev[t.phi - 1];
        if (lead != 0)
            for (int i = 0; i < t.phi; ++i) cur[i] -= lead * Rational(t.min_poly[i]);
        t.pow[j] = std::move(cur);
    }
    return cache.emplace(n, std::move(t)).first->second;
}

// Element of Q(zeta_N) in the canonical power basis zeta^0..zeta^(phi(N)-1),
// reduced mod Phi_N; equality of same-conductor elements is coefficient
// equality. Values carry their own conductor; mixed-conductor arithmetic
// lifts to the lcm.
class Cyclotomic {
  public:
    Cyclotomic() : cond_(1), c_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& r) : cond_(1), c_(1, r) {}
    explicit Cyclotomic(long v) : cond_(1), c_(1, Rational(v)) {}

    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(Rational(1)); }

    // zeta_n^k
    static Cyclotomic root(int n, long k) {
        if (n < 1) throw PreconditionError("root of unity needs order >= 1");
        const CycloTable& t = cyclo_table(n);
        long kk = ((k % n) + n) % n;
        Cyclotomic z;
        z.cond_ = n;
        z.c_ = t.pow[static_cast<size_t>(kk)];
        return z;
    }

    static Cyclotomic from_coeffs(int n, std::vector<Rational> coeffs) {
        const CycloTable& t = cyclo_table(n);
        if (static_cast<int>(coeffs.size()) != t.phi)
            throw UsageError("cyclotomic coefficient vector must have length phi(N)");
        Cyclotomic z;
        z.cond_ = n;
        z.c_ = std::move(coeffs);
        return z;
    }

    int conductor() const { return cond_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_value() const {
        if (!is_rational()) throw PreconditionError("value is not rational");
        return c_[0];
    }
    bool is_one() const { return is_rational() && c_[0] == 1; }

    Cyclotomic embedded(int N) const {
        if (N == cond_) return *this;
        if (N % cond_ != 0) throw PreconditionError("embedding target must be a conductor multiple");
        const CycloTable& t = cyclo_table(N);
        const int d = N / cond_;
        Cyclotomic out;
        out.cond_ = N;
        out.c_.assign(t.phi, Rational(0));
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& row = t.pow[(j * d) % N];
            for (int i = 0; i < t.phi; ++i) out.c_[i] += c_[j] * row[i];
        }
        return out;
    }

    static int merged_conductor(const Cyclotomic& a, const Cyclotomic& b) {
        return std::lcm(a.cond_, b.cond_);
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.cond_ == b.cond_) {
            Cyclotomic r = a;
            for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
            return r;
        }
        int N = merged_conductor(a, b);
        return a.embedded(N) + b.embedded(N);
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.cond_ == b.cond_) {
            Cyclotomic r = a;
            for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
            return r;
        }
        int N = merged_conductor(a, b);
        return a.embedded(N) - b.embedded(N);
    }
    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.cond_ != b.cond_) {
            int N = merged_conductor(a, b);
            return a.embedded(N) * b.embedded(N);
        }
        const int n = a.cond_;
        const CycloTable& t = cyclo_table(n);
        const int phi = t.phi;
        // raw convolution, then fold exponents >= phi through the pow rows
        std::vector<Rational> conv(2 * phi - 1, Rational(0));
        for (int i = 0; i < phi; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < phi; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        Cyclotomic out;
        out.cond_ = n;
        out.c_.assign(phi, Rational(0));
        for (int e = 0; e < phi; ++e) out.c_[e] = std::move(conv[e]);
        for (int e = phi; e <= 2 * phi - 2; ++e) {
            if (conv[e] == 0) continue;
            const int em = e % n;
            if (em < phi) {
                out.c_[em] += conv[e];
            } else {
                const auto& row = t.pow[em];
                for (int i = 0; i < phi; ++i) out.c_[i] += conv[e] * row[i];
            }
        }
        return out;
    }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    Cyclotomic scaled(const Rational& r) const {
        Cyclotomic out = *this;
        for (auto& x : out.c_) x *= r;
        return out;
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw PreconditionError("division by zero");
        if (is_rational()) {
            Cyclotomic r = *this;
            r.c_[0] = 1 / r.c_[0];
            return r;
        }
        // Solve (mult-by-*this) x = 1 in the power basis.
        const CycloTable& t = cyclo_table(cond_);
        const int phi = t.phi;
        // columns of M: *this * zeta^j
        std::vector<std::vector<Rational>> M(phi, std::vector<Rational>(phi + 1, Rational(0)));
        for (int j = 0; j < phi; ++j) {
            Cyclotomic col = *this * root(cond_, j);
            for (int i = 0; i < phi; ++i) M[i][j] = col.c_[i];
        }
        M[0][phi] = 1; // rhs e_0
        // Gaussian elimination with partial (first nonzero) pivoting.
        std::vector<int> piv_col(phi, -1);
        int row = 0;
        for (int col = 0; col < phi && row < phi; ++col) {
            int sel = -1;
            for (int r = row; r < phi; ++r)
                if (M[r][col] != 0) { sel = r; break; }
            if (sel < 0) continue;
            std::swap(M[row], M[sel]);
            const Rational inv = 1 / M[row][col];
            for (int k = col; k <= phi; ++k) M[row][k] *= inv;
            for (int r = 0; r < phi; ++r) {
                if (r == row || M[r][col] == 0) continue;
                const Rational f = M[r][col];
                for (int k = col; k <= phi; ++k) M[r][k] -= f * M[row][k];
            }
            piv_col[row] = col;
            ++row;
        }
        Cyclotomic x;
        x.cond_ = cond_;
        x.c_.assign(phi, Rational(0));
        for (int r = 0; r < phi; ++r) {
            if (piv_col[r] >= 0) x.c_[piv_col[r]] = M[r][phi];
            else if (M[r][phi] != 0) throw ConsistencyError("nonzero cyclotomic has singular multiplication matrix");
        }
        return x;
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.cond_ == b.cond_) return a.c_ == b.c_;
        int N = merged_conductor(a, b);
        return a.embedded(N).c_ == b.embedded(N).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Galois automorphism zeta_N -> zeta_N^k, gcd(k, N) = 1.
    Cyclotomic galois(long k) const {
        long kk = ((k % cond_) + cond_) % cond_;
        if (std::gcd(static_cast<long>(cond_), kk) != 1)
            throw PreconditionError("galois exponent must be coprime to the conductor");
        const CycloTable& t = cyclo_table(cond_);
        Cyclotomic out;
        out.cond_ = cond_;
        out.c_.assign(t.phi, Rational(0));
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& row = t.pow[(j * static_cast<size_t>(kk)) % cond_];
            for (int i = 0; i < t.phi; ++i) out.c_[i] += c_[j] * row[i];
        }
        return out;
    }

    // Complex conjugation zeta -> zeta^-1.
    Cyclotomic conjugate() const { return galois(cond_ - 1); }

    // Minimal (n, k) with *this = zeta_n^k, 0 <= k < n, if *this is a root
    // of unity. Roots of unity in Q(zeta_N) all lie in mu_m, m = lcm(2, N).
    std::optional<std::pair<int, int>> as_root_of_unity() const {
        if (is_zero()) return std::nullopt;
        const int m = (cond_ % 2 == 0) ? cond_ : 2 * cond_;
        const Cyclotomic self = embedded(m);
        Cyclotomic p = Cyclotomic::one().embedded(m);
        const Cyclotomic z = root(m, 1);
        for (int j = 0; j < m; ++j) {
            if (self.c_ == p.c_) {
                const int g = std::gcd(j, m);
                return std::make_pair(m / g, (j / g) % (m / g));
            }
            p = p * z;
        }
        return std::nullopt;
    }

    // Total bigint size, used as a growth heuristic for pivot choices.
    size_t size_metric() const {
        size_t s = 0;
        for (const auto& x : c_) {
            s += mpz_sizeinbase(x.get_num().get_mpz_t(), 2);
            s += mpz_sizeinbase(x.get_den().get_mpz_t(), 2);
        }
        return s;
    }

    // Copy at the minimal conductor representing the same value. Equal values
    // then have identical (conductor, coefficients) pairs.
    Cyclotomic canonicalized() const {
        Cyclotomic v = *this;
        v.reduce_conductor_();
        return v;
    }

    // Stable key for hashing/dedup, canonical across arithmetic paths.
    void append_key(std::string& out) const {
        const Cyclotomic v = canonicalized();
        out += std::to_string(v.cond_);
        for (const auto& x : v.c_) {
            out += '|';
            out += rational_to_string(x);
        }
        out += ';';
    }

    std::string to_string() const {
        if (is_rational()) return rational_to_string(c_[0]);
        std::ostringstream os;
        bool first = true;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            Rational v = c_[j];
            if (!first) {
                os << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            } else if (v < 0 && j > 0) {
                os << "-";
                v = -v;
            }
            if (j == 0) {
                os << v;
            } else {
                if (v != 1) os << v << "*";
                os << "z" << cond_;
                if (j > 1) os << "^" << j;
            }
            first = false;
        }
        if (first) return "0";
        return os.str();
    }

  private:
    int cond_;
    std::vector<Rational> c_;

    // Coefficients over the embedded power basis of Q(zeta_M) inside
    // Q(zeta_N), M | N, if the value lies in the subfield.
    static std::optional<std::vector<Rational>> subfield_coeffs_(int N,
                                                                 const std::vector<Rational>& c,
                                                                 int M) {
        const CycloTable& tn = cyclo_table(N);
        const int phi_m = euler_phi(M);
        const int d = N / M;
        std::vector<std::vector<Rational>> aug(tn.phi, std::vector<Rational>(phi_m + 1, Rational(0)));
        for (int j = 0; j < phi_m; ++j) {
            const auto& col = tn.pow[(static_cast<size_t>(j) * d) % N];
            for (int i = 0; i < tn.phi; ++i) aug[i][j] = col[i];
        }
        for (int i = 0; i < tn.phi; ++i) aug[i][phi_m] = c[i];
        std::vector<int> piv_col(tn.phi, -1);
        int row = 0;
        for (int col = 0; col < phi_m && row < tn.phi; ++col) {
            int sel = -1;
            for (int r = row; r < tn.phi; ++r)
                if (aug[r][col] != 0) { sel = r; break; }
            if (sel < 0) continue;
            std::swap(aug[row], aug[sel]);
            const Rational inv = 1 / aug[row][col];
            for (int k = col; k <= phi_m; ++k) aug[row][k] *= inv;
            for (int r = 0; r < tn.phi; ++r) {
                if (r == row || aug[r][col] == 0) continue;
                const Rational f = aug[r][col];
                for (int k = col; k <= phi_m; ++k) aug[r][k] -= f * aug[row][k];
            }
            piv_col[row] = col;
            ++row;
        }
        for (int r = row; r < tn.phi; ++r)
            if (aug[r][phi_m] != 0) return std::nullopt;
        std::vector<Rational> sol(phi_m, Rational(0));
        for (int r = 0; r < row; ++r) sol[piv_col[r]] = aug[r][phi_m];
        return sol;
    }

    void reduce_conductor_() {
        while (cond_ > 1) {
            if (is_rational()) {
                c_.resize(1);
                cond_ = 1;
                return;
            }
            bool reduced = false;
            int m = cond_;
            for (int p = 2; p <= m; ++p) {
                if (m % p != 0) continue;
                while (m % p == 0) m /= p;
                auto sub = subfield_coeffs_(cond_, c_, cond_ / p);
                if (sub) {
                    cond_ /= p;
                    c_ = std::move(*sub);
                    reduced = true;
                    break;
                }
            }
            if (!reduced) return;
        }
    }
};

inline Cyclotomic operator*(const Rational& r, const Cyclotomic& a) { return a.scaled(r); }

} // namespace infhecke
