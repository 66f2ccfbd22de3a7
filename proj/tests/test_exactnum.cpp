#include <catch2/catch_amalgamated.hpp>

#include "infhecke/exactnum.hpp"

using namespace infhecke;

namespace {

Cyclotomic zeta(int n, long k = 1) { return Cyclotomic::root(n, k); }

// A deterministic sample of values across several conductors, including
// rationals, pure roots, and mixed sums.
std::vector<Cyclotomic> sample_values() {
    std::vector<Cyclotomic> v;
    v.push_back(Cyclotomic::zero());
    v.push_back(Cyclotomic::one());
    v.push_back(Cyclotomic(rational_from_string("-7/3")));
    v.push_back(zeta(3));
    v.push_back(zeta(3, 2).scaled(rational_from_string("1/2")));
    v.push_back(zeta(4));
    v.push_back(Cyclotomic::one() + zeta(4));
    v.push_back(zeta(5, 2) - zeta(5, 3));
    v.push_back(zeta(8) + zeta(8, 3).scaled(rational_from_string("2/7")));
    v.push_back(zeta(12, 5) - Cyclotomic(Rational(3)));
    return v;
}

} // namespace

TEST_CASE("euler phi small values", "[exactnum]") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(3) == 2);
    CHECK(euler_phi(4) == 2);
    CHECK(euler_phi(6) == 2);
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(36) == 12);
}

TEST_CASE("cyclotomic polynomials match known values", "[exactnum]") {
    // Phi_12 = x^4 - x^2 + 1
    const auto& t12 = cyclo_table(12);
    REQUIRE(t12.min_poly.size() == 5);
    CHECK(t12.min_poly[0] == 1);
    CHECK(t12.min_poly[1] == 0);
    CHECK(t12.min_poly[2] == -1);
    CHECK(t12.min_poly[3] == 0);
    CHECK(t12.min_poly[4] == 1);
    // Phi_1 = x - 1, Phi_2 = x + 1, Phi_6 = x^2 - x + 1
    CHECK(cyclo_table(2).min_poly == std::vector<Int>{1, 1});
    CHECK(cyclo_table(6).min_poly == (std::vector<Int>{1, -1, 1}));

    // Independent identity: prod over d | n of Phi_d = x^n - 1, via degrees
    // and an evaluation away from roots (x = 2).
    for (int n : {6, 8, 12, 15, 24}) {
        int degsum = 0;
        Int prod_at_2 = 1;
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            const auto& t = cyclo_table(d);
            degsum += t.phi;
            Int val = 0, p = 1;
            for (const Int& c : t.min_poly) {
                val += c * p;
                p *= 2;
            }
            prod_at_2 *= val;
        }
        CHECK(degsum == n);
        Int expect = 1;
        for (int i = 0; i < n; ++i) expect *= 2;
        CHECK(prod_at_2 == expect - 1);
    }
}

TEST_CASE("roots of unity satisfy their minimal relations", "[exactnum]") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        Cyclotomic p = Cyclotomic::one();
        const Cyclotomic z = zeta(n);
        for (int k = 1; k <= n; ++k) p = p * z;
        CHECK(p == Cyclotomic::one());
        // primitive: z^k != 1 for 0 < k < n
        Cyclotomic q = z;
        for (int k = 1; k < n; ++k) {
            CHECK_FALSE(q == Cyclotomic::one());
            q = q * z;
        }
    }
}

TEST_CASE("field laws on a deterministic sample", "[exactnum]") {
    const auto vals = sample_values();
    for (size_t i = 0; i < vals.size(); ++i) {
        for (size_t j = 0; j < vals.size(); ++j) {
            const auto& a = vals[i];
            const auto& b = vals[j];
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            for (size_t k = j; k < vals.size(); ++k) {
                const auto& c = vals[k];
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
            }
            CHECK(a - b == a + (-b));
        }
    }
}

TEST_CASE("division is exact and inverse works across conductors", "[exactnum]") {
    const auto vals = sample_values();
    for (const auto& a : vals) {
        for (const auto& b : vals) {
            if (b.is_zero()) continue;
            CHECK((a / b) * b == a);
        }
    }
    CHECK_THROWS_AS(Cyclotomic::one() / Cyclotomic::zero(), PreconditionError);
}

TEST_CASE("1/(1+i) equals (1-i)/2", "[exactnum]") {
    const Cyclotomic i = zeta(4);
    const Cyclotomic lhs = Cyclotomic::one() / (Cyclotomic::one() + i);
    const Cyclotomic rhs = (Cyclotomic::one() - i).scaled(rational_from_string("1/2"));
    CHECK(lhs == rhs);
}

TEST_CASE("galois maps are ring automorphisms fixing rationals", "[exactnum]") {
    const auto vals = sample_values();
    const long ks[] = {1, 7, 11, 13}; // coprime to every sample conductor lcm
    for (long k : ks) {
        for (const auto& a : vals) {
            for (const auto& b : vals) {
                const int N = std::lcm(12, std::lcm(a.conductor(), b.conductor()));
                const auto x = a.embedded(N), y = b.embedded(N);
                CHECK((x + y).galois(k) == x.galois(k) + y.galois(k));
                CHECK((x * y).galois(k) == x.galois(k) * y.galois(k));
            }
        }
    }
    const Cyclotomic r(rational_from_string("22/7"));
    CHECK(r.galois(1) == r);
    // composition: galois_5 after galois_5 on conductor 12 = galois_25 = galois_1
    const Cyclotomic a = zeta(12) + zeta(12, 7).scaled(Rational(3));
    CHECK(a.galois(5).galois(5) == a);
    CHECK_THROWS_AS(zeta(12).galois(3), PreconditionError);
}

TEST_CASE("galois permutes primitive roots", "[exactnum]") {
    CHECK(zeta(12).galois(5) == zeta(12, 5));
    CHECK(zeta(3).galois(2) == zeta(3, 2));
    CHECK(zeta(5, 2).galois(3) == zeta(5, 6 % 5));
}

TEST_CASE("conjugation composes with itself to identity", "[exactnum]") {
    for (const auto& a : sample_values()) {
        CHECK(a.conjugate().conjugate() == a);
    }
    CHECK(zeta(3).conjugate() == zeta(3, 2));
}

TEST_CASE("embedding is compatible with known coincidences", "[exactnum]") {
    CHECK(zeta(6, 2) == zeta(3));
    CHECK(zeta(4, 2) == Cyclotomic(Rational(-1)));
    CHECK(zeta(12, 4) == zeta(3));
    CHECK(zeta(12, 3) == zeta(4));
    // zeta_6 = -zeta_3^2
    CHECK(zeta(6) == -zeta(3, 2));
    // mixed-conductor arithmetic lands in the lcm
    const Cyclotomic s = zeta(3) + zeta(4);
    CHECK(s.conductor() == 12);
}

TEST_CASE("root of unity detection returns minimal order", "[exactnum]") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        for (int k = 0; k < n; ++k) {
            const auto r = zeta(n, k).as_root_of_unity();
            REQUIRE(r.has_value());
            const int g = std::gcd(k, n);
            CHECK(r->first == (k == 0 ? 1 : n / g));
            CHECK(r->second == (k == 0 ? 0 : k / g));
        }
    }
    CHECK(Cyclotomic(Rational(-1)).as_root_of_unity() == std::make_pair(2, 1));
    CHECK((-zeta(3)).as_root_of_unity() == std::make_pair(6, 5));
    CHECK_FALSE(Cyclotomic(Rational(2)).as_root_of_unity().has_value());
    CHECK_FALSE((Cyclotomic::one() + zeta(4)).as_root_of_unity().has_value());
    CHECK_FALSE(Cyclotomic::zero().as_root_of_unity().has_value());
}

TEST_CASE("rational string round trip", "[exactnum]") {
    CHECK(rational_to_string(rational_from_string("-6/4")) == "-3/2");
    CHECK(rational_to_string(rational_from_string("5")) == "5");
    CHECK_THROWS_AS(rational_from_string("1/0"), UsageError);
    CHECK_THROWS_AS(rational_from_string("abc"), UsageError);
}

TEST_CASE("canonicalization finds the minimal conductor", "[exactnum]") {
    const Cyclotomic z3 = Cyclotomic::root(3, 1);
    const Cyclotomic one_at_3 = z3 * z3 * z3;
    CHECK(one_at_3.conductor() == 3);
    CHECK(one_at_3.canonicalized().conductor() == 1);
    CHECK(one_at_3.canonicalized() == Cyclotomic::one());

    std::string a, b;
    one_at_3.append_key(a);
    Cyclotomic::one().append_key(b);
    CHECK(a == b);

    // zeta_12^2 = zeta_6 = 1 + zeta_3 lives at conductor 3.
    const Cyclotomic z6 = Cyclotomic::root(12, 2);
    CHECK(z6.canonicalized().conductor() == 3);
    CHECK(z6.canonicalized() == z6);
    std::string k1, k2, k3;
    z6.append_key(k1);
    Cyclotomic::root(6, 1).append_key(k2);
    (Cyclotomic::one() + z3).append_key(k3);
    CHECK(k1 == k2);
    CHECK(k2 == k3);

    CHECK((Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1)).canonicalized().conductor() == 1);
    CHECK(Cyclotomic::root(12, 1).canonicalized().conductor() == 12);
    CHECK((z3 + Cyclotomic::root(4, 1)).canonicalized().conductor() == 12);
    CHECK(Cyclotomic::zero().canonicalized().conductor() == 1);

    // Values survive the rewrite.
    for (const Cyclotomic& v : {Cyclotomic::root(8, 2), Cyclotomic::root(12, 3) + Cyclotomic::one(),
                                Cyclotomic::root(5, 1) * Cyclotomic::root(5, 4)})
        CHECK(v.canonicalized() == v);
}
