#pragma once

#include <string>
#include <vector>

#include "infhecke/groupkit.hpp"

namespace infhecke {

// Unitary reflection models over Q(zeta_3) for the three exceptional groups
// used here. Orders, class counts, and reflection counts are pinned by tests.
inline std::vector<Matrix> g4_generators() {
    const Cyclotomic z = Cyclotomic::root(3, 1);
    Matrix a(2, 2), b(2, 2);
    a.at(0, 0) = z;
    a.at(1, 0) = Cyclotomic::one();
    a.at(1, 1) = Cyclotomic::one();
    b.at(0, 0) = Cyclotomic::one();
    b.at(0, 1) = -z;
    b.at(1, 1) = z;
    return {a, b};
}

namespace detail {

// I - ((1 - z)/3) J, the order-3 reflection with root (1,1,1).
inline Matrix hessian_triple_reflection() {
    const Cyclotomic z = Cyclotomic::root(3, 1);
    const Cyclotomic off = (Cyclotomic(Rational(-1)) + z).scaled(Rational(1, 3));
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = (i == j) ? Cyclotomic::one() + off : off;
    return m;
}

inline Matrix diag_root3(int pos) {
    Matrix m = Matrix::identity(3);
    m.at(pos, pos) = Cyclotomic::root(3, 1);
    return m;
}

} // namespace detail

inline std::vector<Matrix> g25_generators() {
    return {detail::diag_root3(0), detail::hessian_triple_reflection(), detail::diag_root3(1)};
}

inline std::vector<Matrix> g26_generators() {
    Matrix swap23(3, 3);
    swap23.at(0, 0) = Cyclotomic::one();
    swap23.at(1, 2) = Cyclotomic::one();
    swap23.at(2, 1) = Cyclotomic::one();
    return {swap23, detail::hessian_triple_reflection(), detail::diag_root3(1)};
}

// G(de, e, r): r x r monomial matrices with de-th root entries whose product
// is a (de/e)-th root. Generators are pseudo-reflections throughout.
inline std::vector<Matrix> imprimitive_generators(int de, int e, int r) {
    if (de < 1 || e < 1 || r < 1 || de % e != 0)
        throw PreconditionError("imprimitive family needs de, e, r >= 1 with e dividing de");
    Matrix t = Matrix::identity(r);
    t.at(0, 0) = Cyclotomic::root(de, 1);
    std::vector<Matrix> swaps;
    for (int i = 0; i + 1 < r; ++i) {
        Matrix s = Matrix::identity(r);
        s.at(i, i) = Cyclotomic::zero();
        s.at(i + 1, i + 1) = Cyclotomic::zero();
        s.at(i, i + 1) = Cyclotomic::one();
        s.at(i + 1, i) = Cyclotomic::one();
        swaps.push_back(std::move(s));
    }
    std::vector<Matrix> gens;
    if (de > e) {
        Matrix te = Matrix::identity(r);
        te.at(0, 0) = Cyclotomic::root(de, e);
        gens.push_back(std::move(te));
    }
    if (e > 1 && de > 1 && r >= 2) gens.push_back(matrix_inverse(t) * swaps[0] * t);
    for (Matrix& s : swaps) gens.push_back(std::move(s));
    if (gens.empty()) throw PreconditionError("imprimitive parameters give the trivial group");
    return gens;
}

inline std::vector<Matrix> builtin_generators(const std::string& name) {
    if (name == "g4") return g4_generators();
    if (name == "g25") return g25_generators();
    if (name == "g26") return g26_generators();
    throw UsageError("unknown builtin group: " + name);
}

} // namespace infhecke
