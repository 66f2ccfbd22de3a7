#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "infhecke/matlin.hpp"

namespace infhecke {

// Finite matrix group closed by breadth-first right multiplication.
// Element 0 is the identity; ordering is BFS layer, then generator index,
// so indices are deterministic for a fixed generator list.
struct FiniteMatrixGroup {
    std::vector<Matrix> generators;
    std::vector<Matrix> elements;
    std::vector<std::vector<int>> words; // generator indices; evaluates to the element
    std::vector<std::vector<int>> succ;  // succ[i][j] = index of elements[i] * generators[j]
    std::vector<int> parent_of;          // BFS tree: elements[i] = elements[parent_of[i]] * generators[via_gen[i]]
    std::vector<int> via_gen;            // -1 at the identity
    std::vector<int> inverse_of;
    std::vector<int> generator_element;  // element index of each generator
    std::unordered_map<std::string, int> index_by_key;
    int identity = 0;

    int order() const { return static_cast<int>(elements.size()); }
    int degree() const { return generators[0].rows; }

    int lookup(const Matrix& m) const {
        std::string key;
        m.append_key(key);
        const auto it = index_by_key.find(key);
        if (it == index_by_key.end()) throw ConsistencyError("matrix is not a group element");
        return it->second;
    }

    // Product of two elements by walking j's factorization word.
    int product(int i, int j) const {
        int cur = i;
        for (int g : words[j]) cur = succ[cur][g];
        return cur;
    }

    int conjugate(int g, int x) const { return product(product(inverse_of[g], x), g); }

    int power(int i, int k) const {
        int cur = identity;
        for (int t = 0; t < k; ++t) cur = product(cur, i);
        return cur;
    }

    int element_order(int i) const {
        int cur = i, n = 1;
        while (cur != identity) {
            cur = product(cur, i);
            ++n;
        }
        return n;
    }
};

inline FiniteMatrixGroup generate(const std::vector<Matrix>& gens, int cap = 20000) {
    if (gens.empty()) throw PreconditionError("group generation needs at least one generator");
    const int n = gens[0].rows;
    for (const Matrix& g : gens) {
        if (!g.is_square() || g.rows != n)
            throw PreconditionError("generators must be square matrices of equal size");
        if (determinant(g).is_zero()) throw PreconditionError("generators must be invertible");
    }
    FiniteMatrixGroup G;
    G.generators = gens;
    G.elements.push_back(Matrix::identity(n));
    G.words.push_back({});
    G.parent_of.push_back(-1);
    G.via_gen.push_back(-1);
    {
        std::string key;
        G.elements[0].append_key(key);
        G.index_by_key.emplace(std::move(key), 0);
    }
    for (size_t i = 0; i < G.elements.size(); ++i) {
        G.succ.emplace_back(gens.size(), -1);
        for (size_t j = 0; j < gens.size(); ++j) {
            Matrix m = G.elements[i] * gens[j];
            std::string key;
            m.append_key(key);
            const auto it = G.index_by_key.find(key);
            if (it != G.index_by_key.end()) {
                G.succ[i][j] = it->second;
                continue;
            }
            if (static_cast<int>(G.elements.size()) >= cap)
                throw ResourceCapError("group too large for the configured element cap");
            const int idx = static_cast<int>(G.elements.size());
            G.index_by_key.emplace(std::move(key), idx);
            G.elements.push_back(std::move(m));
            std::vector<int> w = G.words[i];
            w.push_back(static_cast<int>(j));
            G.words.push_back(std::move(w));
            G.parent_of.push_back(static_cast<int>(i));
            G.via_gen.push_back(static_cast<int>(j));
            G.succ[i][j] = idx;
        }
    }
    G.inverse_of.resize(G.elements.size());
    for (size_t i = 0; i < G.elements.size(); ++i)
        G.inverse_of[i] = G.lookup(matrix_inverse(G.elements[i]));
    for (const Matrix& g : gens) G.generator_element.push_back(G.lookup(g));
    return G;
}

struct ConjugacyClasses {
    std::vector<int> class_of;
    std::vector<std::vector<int>> members; // each sorted ascending; classes ordered by minimum
};

inline ConjugacyClasses conjugacy_classes(const FiniteMatrixGroup& G) {
    ConjugacyClasses cc;
    cc.class_of.assign(G.order(), -1);
    for (int x = 0; x < G.order(); ++x) {
        if (cc.class_of[x] >= 0) continue;
        const int id = static_cast<int>(cc.members.size());
        std::vector<int> orbit = {x};
        cc.class_of[x] = id;
        for (size_t k = 0; k < orbit.size(); ++k) {
            for (int gidx : G.generator_element) {
                const int y = G.conjugate(gidx, orbit[k]);
                if (cc.class_of[y] >= 0) continue;
                cc.class_of[y] = id;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cc.members.push_back(std::move(orbit));
    }
    return cc;
}

struct ReflectionData {
    int element = -1;
    std::vector<std::vector<Cyclotomic>> hyperplane; // canonical kernel basis of s - 1
    int hyperplane_id = -1;
    int order_e = 0;
    Cyclotomic nontrivial_eigenvalue;                // det(s)
    bool is_distinguished = false;
    int reflection_class_id = -1;
    int hyperplane_class_id = -1;
};

struct ReflectionCatalog {
    std::vector<ReflectionData> reflections;  // ascending element index
    std::vector<int> reflection_of_element;   // -1 when the element is not a reflection
    std::vector<std::vector<std::vector<Cyclotomic>>> hyperplane_basis;
    std::vector<int> fixer_order;                     // e_H per hyperplane
    std::vector<int> distinguished_of_hyperplane;     // element index per hyperplane
    std::vector<int> hyperplane_class_of;             // hyperplane -> class
    std::vector<std::vector<int>> hyperplane_classes; // class -> hyperplanes
    std::vector<int> class_e;                         // e_c per hyperplane class
    std::vector<int> R;                               // all reflections, element indices
    std::vector<int> S, S0, Splus;                    // distinguished reflections
    std::vector<int> reflection_classes;              // conjugacy class ids meeting R
};

inline ReflectionCatalog reflection_catalog(const FiniteMatrixGroup& G,
                                            const ConjugacyClasses& cc) {
    ReflectionCatalog cat;
    cat.reflection_of_element.assign(G.order(), -1);
    const int n = G.degree();
    std::map<std::string, int> hyperplane_by_key;
    for (int x = 1; x < G.order(); ++x) {
        Matrix d = G.elements[x] - Matrix::identity(n);
        if (rank_of(d) != 1) continue;
        ReflectionData rd;
        rd.element = x;
        std::vector<std::vector<Cyclotomic>> eqs;
        for (int i = 0; i < n; ++i)
            eqs.emplace_back(d.e.begin() + static_cast<size_t>(i) * n,
                             d.e.begin() + static_cast<size_t>(i + 1) * n);
        rd.hyperplane = nullspace(std::move(eqs), n);
        std::string key;
        for (const auto& v : rd.hyperplane)
            for (const auto& c : v) c.append_key(key);
        const auto it = hyperplane_by_key.find(key);
        if (it == hyperplane_by_key.end()) {
            rd.hyperplane_id = static_cast<int>(cat.hyperplane_basis.size());
            hyperplane_by_key.emplace(key, rd.hyperplane_id);
            cat.hyperplane_basis.push_back(rd.hyperplane);
        } else {
            rd.hyperplane_id = it->second;
        }
        rd.order_e = G.element_order(x);
        rd.nontrivial_eigenvalue = determinant(G.elements[x]);
        rd.reflection_class_id = cc.class_of[x];
        cat.reflection_of_element[x] = static_cast<int>(cat.reflections.size());
        cat.reflections.push_back(std::move(rd));
        cat.R.push_back(x);
    }

    const int nh = static_cast<int>(cat.hyperplane_basis.size());
    cat.fixer_order.assign(nh, 1); // identity
    for (const auto& rd : cat.reflections) ++cat.fixer_order[rd.hyperplane_id];

    // The fixer of each hyperplane must be cyclic: its nontrivial eigenvalues
    // are then exactly the e_H - 1 nontrivial e_H-th roots of unity.
    cat.distinguished_of_hyperplane.assign(nh, -1);
    std::vector<std::vector<std::pair<int, int>>> seen(nh);
    for (auto& rd : cat.reflections) {
        const int e = cat.fixer_order[rd.hyperplane_id];
        const auto root = rd.nontrivial_eigenvalue.as_root_of_unity();
        if (!root || e % root->first != 0)
            throw ConsistencyError("hyperplane fixer is not cyclic");
        for (const auto& p : seen[rd.hyperplane_id])
            if (p == *root) throw ConsistencyError("hyperplane fixer is not cyclic");
        seen[rd.hyperplane_id].push_back(*root);
        if (rd.nontrivial_eigenvalue == Cyclotomic::root(e, 1)) {
            rd.is_distinguished = true;
            if (cat.distinguished_of_hyperplane[rd.hyperplane_id] >= 0)
                throw ConsistencyError("two distinguished reflections over one hyperplane");
            cat.distinguished_of_hyperplane[rd.hyperplane_id] = rd.element;
        }
    }
    for (int h = 0; h < nh; ++h)
        if (cat.distinguished_of_hyperplane[h] < 0)
            throw ConsistencyError("hyperplane without a distinguished reflection");

    // Hyperplane classes: orbits of the W-action, tracked by conjugating the
    // distinguished reflections.
    cat.hyperplane_class_of.assign(nh, -1);
    for (int h = 0; h < nh; ++h) {
        if (cat.hyperplane_class_of[h] >= 0) continue;
        const int id = static_cast<int>(cat.hyperplane_classes.size());
        std::vector<int> orbit = {h};
        cat.hyperplane_class_of[h] = id;
        for (size_t k = 0; k < orbit.size(); ++k) {
            const int s = cat.distinguished_of_hyperplane[orbit[k]];
            for (int gidx : G.generator_element) {
                const int t = G.conjugate(gidx, s);
                const int h2 = cat.reflections[cat.reflection_of_element[t]].hyperplane_id;
                if (cat.hyperplane_class_of[h2] >= 0) continue;
                cat.hyperplane_class_of[h2] = id;
                orbit.push_back(h2);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cat.hyperplane_classes.push_back(std::move(orbit));
    }
    cat.class_e.assign(cat.hyperplane_classes.size(), 0);
    for (size_t c = 0; c < cat.hyperplane_classes.size(); ++c) {
        cat.class_e[c] = cat.fixer_order[cat.hyperplane_classes[c][0]];
        for (int h : cat.hyperplane_classes[c])
            if (cat.fixer_order[h] != cat.class_e[c])
                throw ConsistencyError("fixer orders differ within a hyperplane class");
    }
    for (auto& rd : cat.reflections) rd.hyperplane_class_id = cat.hyperplane_class_of[rd.hyperplane_id];

    for (const auto& rd : cat.reflections) {
        if (!rd.is_distinguished) continue;
        cat.S.push_back(rd.element);
        (cat.class_e[rd.hyperplane_class_id] == 2 ? cat.S0 : cat.Splus).push_back(rd.element);
    }
    // The distinguished set is stable under conjugation.
    for (int s : cat.S)
        for (int gidx : G.generator_element) {
            const int t = G.conjugate(gidx, s);
            if (!cat.reflections[cat.reflection_of_element[t]].is_distinguished)
                throw ConsistencyError("distinguished set is not conjugation-stable");
        }
    for (const auto& rd : cat.reflections) {
        if (cat.reflection_classes.empty() || cat.reflection_classes.back() != rd.reflection_class_id)
            if (std::find(cat.reflection_classes.begin(), cat.reflection_classes.end(),
                          rd.reflection_class_id) == cat.reflection_classes.end())
                cat.reflection_classes.push_back(rd.reflection_class_id);
    }
    std::sort(cat.reflection_classes.begin(), cat.reflection_classes.end());
    return cat;
}

struct LinearCharacter {
    std::vector<int> exponents;     // m_C, one per hyperplane class
    std::vector<Cyclotomic> values; // one per group element
};

// All homomorphisms W -> C^*: one per tuple in prod_C Z/e_C, sending each
// distinguished reflection over class C to zeta_{e_C}^{m_C}.
inline std::vector<LinearCharacter> linear_characters(const FiniteMatrixGroup& G,
                                                      const ReflectionCatalog& cat) {
    const int nc = static_cast<int>(cat.hyperplane_classes.size());
    // Each generator must be a reflection: record (class, power of distinguished).
    std::vector<std::pair<int, int>> gen_pos;
    for (int gidx : G.generator_element) {
        const int ri = cat.reflection_of_element[gidx];
        if (ri < 0) throw PreconditionError("linear characters need pseudo-reflection generators");
        const auto& rd = cat.reflections[ri];
        const int s0 = cat.distinguished_of_hyperplane[rd.hyperplane_id];
        int cur = s0, r = 1;
        while (cur != gidx) {
            cur = G.product(cur, s0);
            if (++r > cat.fixer_order[rd.hyperplane_id])
                throw ConsistencyError("generator escapes its cyclic fixer");
        }
        gen_pos.emplace_back(rd.hyperplane_class_id, r);
    }

    std::vector<LinearCharacter> out;
    std::vector<int> m(nc, 0);
    while (true) {
        LinearCharacter chi;
        chi.exponents = m;
        std::vector<Cyclotomic> genval;
        for (const auto& [c, r] : gen_pos)
            genval.push_back(Cyclotomic::root(cat.class_e[c], (m[c] * r) % cat.class_e[c]));
        chi.values.reserve(G.order());
        for (int x = 0; x < G.order(); ++x) {
            Cyclotomic v = Cyclotomic::one();
            for (int j : G.words[x]) v *= genval[j];
            chi.values.push_back(std::move(v));
        }
        // Multiplicativity over every Cayley edge proves it for all pairs.
        for (int x = 0; x < G.order(); ++x)
            for (size_t j = 0; j < genval.size(); ++j)
                if (chi.values[G.succ[x][j]] != chi.values[x] * genval[j])
                    throw ConsistencyError("linear character fails multiplicativity");
        out.push_back(std::move(chi));
        int c = nc - 1;
        while (c >= 0 && ++m[c] == cat.class_e[c]) m[c--] = 0;
        if (c < 0) break;
    }
    return out;
}

// Permutation matrix of left multiplication on the group-element basis.
inline Matrix regular_image(const FiniteMatrixGroup& G, int element) {
    Matrix m(G.order(), G.order());
    for (int h = 0; h < G.order(); ++h) m.at(G.product(element, h), h) = Cyclotomic::one();
    return m;
}

struct GroupAlgebraElement {
    std::map<int, Cyclotomic> coeff;

    static GroupAlgebraElement basis(int g) {
        GroupAlgebraElement x;
        x.coeff.emplace(g, Cyclotomic::one());
        return x;
    }
    void add(int g, const Cyclotomic& c) {
        auto [it, fresh] = coeff.try_emplace(g, c);
        if (fresh) {
            if (c.is_zero()) coeff.erase(it);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) coeff.erase(it);
    }
    bool is_zero() const { return coeff.empty(); }
    GroupAlgebraElement scaled(const Cyclotomic& c) const {
        GroupAlgebraElement r;
        if (c.is_zero()) return r;
        for (const auto& [g, a] : coeff) r.coeff.emplace(g, a * c);
        return r;
    }
    friend GroupAlgebraElement operator+(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
        GroupAlgebraElement r = x;
        for (const auto& [g, a] : y.coeff) r.add(g, a);
        return r;
    }
    friend GroupAlgebraElement operator-(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
        GroupAlgebraElement r = x;
        for (const auto& [g, a] : y.coeff) r.add(g, -a);
        return r;
    }
    friend bool operator==(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
        return (x - y).is_zero();
    }
};

inline GroupAlgebraElement ga_mul(const FiniteMatrixGroup& G, const GroupAlgebraElement& x,
                                  const GroupAlgebraElement& y) {
    GroupAlgebraElement r;
    for (const auto& [g, a] : x.coeff)
        for (const auto& [h, b] : y.coeff) r.add(G.product(g, h), a * b);
    return r;
}

inline GroupAlgebraElement ga_bracket(const FiniteMatrixGroup& G, const GroupAlgebraElement& x,
                                      const GroupAlgebraElement& y) {
    return ga_mul(G, x, y) - ga_mul(G, y, x);
}

inline GroupAlgebraElement class_sum(const ConjugacyClasses& cc, int class_id) {
    GroupAlgebraElement r;
    for (int g : cc.members[class_id]) r.coeff.emplace(g, Cyclotomic::one());
    return r;
}

// p(x) = (1/|W|) sum_h h x h^{-1}; on a basis element this is T_c / |c|.
inline GroupAlgebraElement class_projection(const FiniteMatrixGroup& G, const ConjugacyClasses& cc,
                                            const GroupAlgebraElement& x) {
    GroupAlgebraElement r;
    for (const auto& [g, a] : x.coeff) {
        const int c = cc.class_of[g];
        const Cyclotomic share = a.scaled(Rational(1, static_cast<long>(cc.members[c].size())));
        for (int h : cc.members[c]) r.add(h, share);
    }
    return r;
}

} // namespace infhecke
