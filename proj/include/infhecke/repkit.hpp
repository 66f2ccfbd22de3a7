#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "infhecke/groupkit.hpp"
#include "infhecke/serialize.hpp"

namespace infhecke {

// A matrix representation pinned to one FiniteMatrixGroup (non-owning pointer;
// the group must outlive the representation). Element images are memoized
// along the BFS tree, so evaluating all of them costs one multiplication per
// element. Copies share the memo.
class Representation {
  public:
    Representation(const FiniteMatrixGroup* group, std::string label, std::vector<Matrix> gen_images,
                   unsigned seed = 0)
        : group_(group), label_(std::move(label)), gens_(std::move(gen_images)) {
        if (gens_.size() != group_->generators.size())
            throw PreconditionError("representation needs one matrix per group generator");
        dim_ = gens_.empty() ? 0 : gens_[0].rows;
        for (const Matrix& m : gens_)
            if (!m.is_square() || m.rows != dim_)
                throw PreconditionError("representation matrices must be square of equal size");
        cache_ = std::make_shared<std::vector<std::optional<Matrix>>>(group_->order());
        (*cache_)[group_->identity] = Matrix::identity(dim_);
        verify_(seed);
    }

    const FiniteMatrixGroup& group() const { return *group_; }
    const std::string& label() const { return label_; }
    int dim() const { return dim_; }
    const std::vector<Matrix>& generator_images() const { return gens_; }

    // Image of an element, filled in along the BFS parent chain.
    const Matrix& at(int element) const {
        auto& cache = *cache_;
        if (cache[element]) return *cache[element];
        std::vector<int> chain;
        int cur = element;
        while (!cache[cur]) {
            chain.push_back(cur);
            cur = group_->parent_of[cur];
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            cache[*it] = *cache[group_->parent_of[*it]] * gens_[group_->via_gen[*it]];
        return *cache[element];
    }

    // Trace on one representative per conjugacy class.
    std::vector<Cyclotomic> character(const ConjugacyClasses& cc) const {
        std::vector<Cyclotomic> chi;
        chi.reserve(cc.members.size());
        for (const auto& members : cc.members) chi.push_back(at(members[0]).trace());
        return chi;
    }

  private:
    void verify_(unsigned seed) const {
        for (size_t j = 0; j < gens_.size(); ++j) {
            const int o = group_->element_order(group_->generator_element[j]);
            Matrix p = Matrix::identity(dim_);
            for (int k = 0; k < o; ++k) p = p * gens_[j];
            if (!(p == Matrix::identity(dim_)))
                throw ConsistencyError("representation matrix violates its generator's order");
        }
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(0, group_->order() - 1);
        for (int trial = 0; trial < 8; ++trial) {
            const int g = pick(rng), h = pick(rng);
            if (!(at(g) * at(h) == at(group_->product(g, h))))
                throw ConsistencyError("representation matrices are not a homomorphism");
        }
    }

    const FiniteMatrixGroup* group_;
    std::string label_;
    int dim_ = 0;
    std::vector<Matrix> gens_;
    std::shared_ptr<std::vector<std::optional<Matrix>>> cache_;
};

inline Representation twist(const Representation& rho, const LinearCharacter& eta, std::string label) {
    std::vector<Matrix> gens;
    gens.reserve(rho.generator_images().size());
    const auto& G = rho.group();
    for (size_t j = 0; j < rho.generator_images().size(); ++j)
        gens.push_back(rho.generator_images()[j].scaled(eta.values[G.generator_element[j]]));
    return Representation(&G, std::move(label), std::move(gens));
}

inline Representation dual(const Representation& rho, std::string label) {
    std::vector<Matrix> gens;
    const auto& G = rho.group();
    for (size_t j = 0; j < rho.generator_images().size(); ++j)
        gens.push_back(rho.at(G.inverse_of[G.generator_element[j]]).transpose());
    return Representation(&G, std::move(label), std::move(gens));
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows * b.rows, a.cols * b.cols);
    for (int i1 = 0; i1 < a.rows; ++i1)
        for (int j1 = 0; j1 < a.cols; ++j1)
            for (int i2 = 0; i2 < b.rows; ++i2)
                for (int j2 = 0; j2 < b.cols; ++j2)
                    m.at(i1 * b.rows + i2, j1 * b.cols + j2) = a.at(i1, j1) * b.at(i2, j2);
    return m;
}

inline Representation tensor(const Representation& a, const Representation& b, std::string label) {
    if (&a.group() != &b.group()) throw PreconditionError("tensor factors must share the group");
    std::vector<Matrix> gens;
    for (size_t j = 0; j < a.generator_images().size(); ++j)
        gens.push_back(kronecker(a.generator_images()[j], b.generator_images()[j]));
    return Representation(&a.group(), std::move(label), std::move(gens));
}

namespace detail {

inline std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline Cyclotomic minor_det(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) sub.at(static_cast<int>(i), static_cast<int>(j)) = m.at(rows[i], cols[j]);
    return determinant(sub);
}

} // namespace detail

// k-th exterior power on the lexicographic wedge basis; entries are k×k minors.
inline Representation exterior_power(const Representation& rho, int k, std::string label) {
    if (k < 0 || k > rho.dim()) throw PreconditionError("exterior power degree out of range");
    const auto idx = detail::subsets_lex(rho.dim(), k);
    const int n = static_cast<int>(idx.size());
    std::vector<Matrix> gens;
    for (const Matrix& g : rho.generator_images()) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = detail::minor_det(g, idx[i], idx[j]);
        gens.push_back(std::move(m));
    }
    return Representation(&rho.group(), std::move(label), std::move(gens));
}

inline bool is_irreducible(const Representation& rho) {
    return intertwiners(rho.generator_images(), rho.generator_images()).size() == 1;
}

// <chi, psi> = (1/|G|) sum over g of chi(g) psi(g^{-1}), class-summed.
inline Cyclotomic character_inner(const FiniteMatrixGroup& G, const ConjugacyClasses& cc,
                                  const std::vector<Cyclotomic>& chi, const std::vector<Cyclotomic>& psi) {
    Cyclotomic acc = Cyclotomic::zero();
    for (size_t c = 0; c < cc.members.size(); ++c) {
        const int inv_class = cc.class_of[G.inverse_of[cc.members[c][0]]];
        acc = acc + chi[c] * psi[inv_class] * Cyclotomic(Rational(static_cast<long>(cc.members[c].size())));
    }
    return acc * Cyclotomic(Rational(1, static_cast<long>(G.order())));
}

// Multiplicity of root(n,k) in the spectrum of A with A^n = 1, via the
// eigenprojector trace; exactness forces an integer.
inline int eigenvalue_multiplicity(const Matrix& a, int n, int k) {
    Matrix acc = Matrix::identity(a.rows);
    Matrix p = Matrix::identity(a.rows);
    for (int j = 1; j < n; ++j) {
        p = p * a;
        acc = acc + p.scaled(Cyclotomic::root(n, -static_cast<long>(k) * j));
    }
    const Cyclotomic t = acc.trace() * Cyclotomic(Rational(1, n));
    if (!t.is_rational()) throw ConsistencyError("eigenvalue multiplicity is not rational");
    const Rational r = t.rational_value();
    if (r.get_den() != 1 || r < 0) throw ConsistencyError("eigenvalue multiplicity is not a nonnegative integer");
    return static_cast<int>(r.get_num().get_si());
}

inline Matrix evaluate_word(const std::vector<Matrix>& gens, const std::vector<int>& word, int dim) {
    Matrix m = Matrix::identity(dim);
    for (int g : word) m = m * gens[g];
    return m;
}

// Restriction to a subgroup presented by words in the parent's generators.
inline Representation restrict_to(const Representation& rho, const FiniteMatrixGroup& subgroup,
                                  const std::vector<std::vector<int>>& words, std::string label) {
    if (words.size() != subgroup.generators.size())
        throw PreconditionError("need one parent word per subgroup generator");
    std::vector<Matrix> gens;
    for (const auto& w : words) gens.push_back(evaluate_word(rho.generator_images(), w, rho.dim()));
    return Representation(&subgroup, std::move(label), std::move(gens));
}

inline Representation regular_representation(const FiniteMatrixGroup& G, std::string label = "regular") {
    std::vector<Matrix> gens;
    gens.reserve(G.generator_element.size());
    for (int gidx : G.generator_element) gens.push_back(regular_image(G, gidx));
    return Representation(&G, std::move(label), std::move(gens));
}

// ---------------------------------------------------------------------------
// Multipartitions and standard multitableaux
// ---------------------------------------------------------------------------

using Partition = std::vector<int>;           // weakly decreasing positive parts
using Multipartition = std::vector<Partition>; // fixed component count

inline int multipartition_size(const Multipartition& mp) {
    int s = 0;
    for (const Partition& p : mp)
        for (int part : p) s += part;
    return s;
}

inline std::vector<Partition> partitions_of(int n, int max_part = -1) {
    if (max_part < 0) max_part = n;
    if (n == 0) return {{}};
    std::vector<Partition> out;
    for (int first = std::min(n, max_part); first >= 1; --first)
        for (const Partition& rest : partitions_of(n - first, first)) {
            Partition p{first};
            p.insert(p.end(), rest.begin(), rest.end());
            out.push_back(std::move(p));
        }
    return out;
}

// All d-component multipartitions of r; first components carry larger weight
// earlier, so the order is deterministic.
inline std::vector<Multipartition> multipartitions(int d, int r) {
    if (d == 0) return r == 0 ? std::vector<Multipartition>{{}} : std::vector<Multipartition>{};
    std::vector<Multipartition> out;
    for (int k = r; k >= 0; --k)
        for (const Partition& head : partitions_of(k))
            for (const Multipartition& tail : multipartitions(d - 1, r - k)) {
                Multipartition mp{head};
                mp.insert(mp.end(), tail.begin(), tail.end());
                out.push_back(std::move(mp));
            }
    return out;
}

inline std::string multipartition_label(const Multipartition& mp) {
    std::string s = "(";
    for (size_t c = 0; c < mp.size(); ++c) {
        if (c) s += ",";
        s += "[";
        for (size_t i = 0; i < mp[c].size(); ++i) {
            if (i) s += ",";
            s += std::to_string(mp[c][i]);
        }
        s += "]";
    }
    s += ")";
    return s;
}

// A standard multitableau, stored as the cell of each entry: cells[v] =
// {component, row, column} for entry v+1. Rows and columns increase.
struct Multitableau {
    std::vector<std::array<int, 3>> cells;
    bool operator<(const Multitableau& o) const { return cells < o.cells; }
    bool operator==(const Multitableau& o) const { return cells == o.cells; }
};

inline std::vector<Multitableau> standard_multitableaux(const Multipartition& mp) {
    const int r = multipartition_size(mp);
    const int d = static_cast<int>(mp.size());
    std::vector<std::vector<int>> fill(d); // fill[c][row] = occupied length
    for (int c = 0; c < d; ++c) fill[c].assign(mp[c].size(), 0);
    std::vector<Multitableau> out;
    Multitableau cur;
    cur.cells.resize(r);
    const auto rec = [&](auto&& self, int v) -> void {
        if (v == r) {
            out.push_back(cur);
            return;
        }
        for (int c = 0; c < d; ++c)
            for (size_t row = 0; row < mp[c].size(); ++row) {
                const int col = fill[c][row];
                if (col >= mp[c][row]) continue;
                if (row > 0 && fill[c][row - 1] <= col) continue;
                cur.cells[v] = {c, static_cast<int>(row), col};
                ++fill[c][row];
                self(self, v + 1);
                --fill[c][row];
            }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Seminormal model for G(d,1,r) on standard multitableaux
// ---------------------------------------------------------------------------
//
// t acts diagonally by zeta_d^(component of entry 1). The transposition
// sigma_i swaps entries i, i+1: fixed rows/columns give +-1; across
// components it is the plain swap; within a component the pair (T+, T-) is
// oriented by the positive content difference a and
//   sigma T+ = (1/a) T+ + (1 - 1/a^2) T-,   sigma T- = T+ - (1/a) T-.
inline Representation ariki_koike_rep(const FiniteMatrixGroup& G, int d, int r, const Multipartition& mp,
                                      unsigned seed = 0) {
    if (static_cast<int>(mp.size()) != d) throw PreconditionError("multipartition needs d components");
    if (multipartition_size(mp) != r) throw PreconditionError("multipartition must have total size r");
    const auto tabs = standard_multitableaux(mp);
    const int n = static_cast<int>(tabs.size());
    if (n == 0) throw PreconditionError("empty multitableau basis");
    std::map<Multitableau, int> index;
    for (int i = 0; i < n; ++i) index.emplace(tabs[i], i);

    std::vector<Matrix> gens;
    if (d > 1) {
        Matrix t(n, n);
        for (int b = 0; b < n; ++b) t.at(b, b) = Cyclotomic::root(d, tabs[b].cells[0][0]);
        gens.push_back(std::move(t));
    }
    for (int i = 1; i < r; ++i) {
        Matrix s(n, n);
        for (int b = 0; b < n; ++b) {
            const auto& c1 = tabs[b].cells[i - 1];
            const auto& c2 = tabs[b].cells[i];
            if (c1[0] == c2[0] && c1[1] == c2[1]) {
                s.at(b, b) = Cyclotomic::one();
                continue;
            }
            if (c1[0] == c2[0] && c1[2] == c2[2]) {
                s.at(b, b) = -Cyclotomic::one();
                continue;
            }
            Multitableau swapped = tabs[b];
            std::swap(swapped.cells[i - 1], swapped.cells[i]);
            const int b2 = index.at(swapped);
            if (c1[0] != c2[0]) {
                s.at(b2, b) = Cyclotomic::one();
                continue;
            }
            const long a = (c2[2] - c2[1]) - (c1[2] - c1[1]);
            s.at(b, b) = Cyclotomic(Rational(a > 0 ? 1 : -1, a > 0 ? a : -a));
            s.at(b2, b) = a > 0 ? Cyclotomic(Rational(a * a - 1, a * a)) : Cyclotomic::one();
        }
        gens.push_back(std::move(s));
    }
    if (gens.size() != G.generators.size())
        throw PreconditionError("group is not G(d,1,r) with the standard generator list");
    return Representation(&G, multipartition_label(mp), std::move(gens), seed);
}

// Words for the generators of G(de,e,r) inside G(de,1,r), matching the
// imprimitive generator order on both sides.
inline std::vector<std::vector<int>> imprimitive_subgroup_words(int de, int e, int r) {
    if (de < 1 || e < 1 || r < 1 || de % e != 0) throw PreconditionError("invalid imprimitive parameters");
    std::vector<std::vector<int>> words;
    if (de == 1) {
        for (int i = 1; i < r; ++i) words.push_back({i - 1});
        return words;
    }
    if (de > e) {
        std::vector<int> w(e, 0); // t^e
        words.push_back(std::move(w));
    }
    if (e > 1 && r >= 2) {
        std::vector<int> w(de - 1, 0); // t^{-1} s_1 t = t^{de-1} s_1 t
        w.push_back(1);
        w.push_back(0);
        words.push_back(std::move(w));
    }
    for (int i = 1; i < r; ++i) words.push_back({i});
    return words;
}

// Shift of components: mp'[i] = mp[(i+shift) mod d].
inline Multipartition shifted_multipartition(const Multipartition& mp, int shift) {
    const int d = static_cast<int>(mp.size());
    Multipartition out(d);
    for (int i = 0; i < d; ++i) out[i] = mp[((i + shift) % d + d) % d];
    return out;
}

// Splits the restriction of a G(de,1,r) seminormal representation to
// G(de,e,r) into the eigenspaces of the component-shift relabeling S, which
// commutes with every subgroup generator. u must be the least positive
// multiple of de/e fixing the shape; b = de/u components come out.
inline std::vector<Representation> split_restriction(const Representation& restricted, const Multipartition& mp,
                                                     int u, unsigned seed = 0) {
    const int de = static_cast<int>(mp.size());
    if (u <= 0 || de % u != 0) throw PreconditionError("shift must divide the component count");
    const int b = de / u;
    const auto tabs = standard_multitableaux(mp);
    const int n = static_cast<int>(tabs.size());
    if (restricted.dim() != n) throw PreconditionError("restriction dimension mismatch");
    std::map<Multitableau, int> index;
    for (int i = 0; i < n; ++i) index.emplace(tabs[i], i);
    // S as a basis permutation: entry at (c,row,col) moves to ((c-u) mod de, row, col).
    std::vector<int> s_image(n);
    for (int i = 0; i < n; ++i) {
        Multitableau t = tabs[i];
        for (auto& cell : t.cells) cell[0] = ((cell[0] - u) % de + de) % de;
        s_image[i] = index.at(t);
    }
    std::vector<Representation> parts;
    for (int k = 0; k < b; ++k) {
        // Columns of the eigenprojector (1/b) sum over zeta_b^{-kj} S^j.
        SpanBasis image(n);
        for (int col = 0; col < n; ++col) {
            std::vector<Cyclotomic> v(n, Cyclotomic::zero());
            int pos = col;
            for (int j = 0; j < b; ++j) {
                v[pos] = v[pos] + Cyclotomic::root(b, -static_cast<long>(k) * j) * Cyclotomic(Rational(1, b));
                pos = s_image[pos];
            }
            image.insert(std::move(v));
        }
        if (image.dim() * b != n) throw ConsistencyError("shift eigenspaces do not split the basis evenly");
        const int m = image.dim();
        std::vector<Matrix> gens;
        for (const Matrix& A : restricted.generator_images()) {
            Matrix block(m, m);
            const Matrix At = A.transpose();
            for (int jcol = 0; jcol < m; ++jcol) {
                std::vector<Cyclotomic> w(n, Cyclotomic::zero());
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) w[y] = w[y] + image.rows()[jcol][x] * At.at(x, y);
                const auto coords = image.coordinates(std::move(w));
                if (!coords) throw ConsistencyError("shift eigenspace is not invariant");
                for (int irow = 0; irow < m; ++irow) block.at(irow, jcol) = (*coords)[irow];
            }
            gens.push_back(std::move(block));
        }
        parts.emplace_back(&restricted.group(), restricted.label() + "#" + std::to_string(k), std::move(gens),
                           seed);
    }
    return parts;
}

// Certifies completeness: dimension sum, distinct characters, irreducibility.
inline void certify_inventory(const FiniteMatrixGroup& G, const ConjugacyClasses& cc,
                              const std::vector<Representation>& reps) {
    long dimsq = 0;
    std::vector<std::string> keys;
    for (const Representation& rho : reps) {
        dimsq += static_cast<long>(rho.dim()) * rho.dim();
        std::string key;
        for (const Cyclotomic& v : rho.character(cc)) {
            v.append_key(key);
            key += ';';
        }
        keys.push_back(std::move(key));
        if (!is_irreducible(rho)) throw ConsistencyError("inventory contains a reducible representation");
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw ConsistencyError("inventory contains repeated characters");
    if (dimsq != G.order()) throw ConsistencyError("inventory dimension sum does not match the group order");
    if (reps.size() != cc.members.size()) throw ConsistencyError("inventory size does not match the class count");
}

// Complete irreducible inventory of G(de,e,r), certified on the way out.
inline std::vector<Representation> imprimitive_inventory(const FiniteMatrixGroup& parent,
                                                         const FiniteMatrixGroup& child, int de, int e, int r,
                                                         unsigned seed = 0) {
    const int d = de / e;
    std::vector<Representation> reps;
    for (const Multipartition& mp : multipartitions(de, r)) {
        // Orbit of the shape under shifting components by d; one representative builds them all.
        Multipartition min_mp = mp;
        int orbit = 1;
        for (Multipartition cur = shifted_multipartition(mp, d); !(cur == mp);
             cur = shifted_multipartition(cur, d)) {
            min_mp = std::min(min_mp, cur);
            ++orbit;
        }
        if (!(min_mp == mp)) continue;
        Representation big = ariki_koike_rep(parent, de, r, mp, seed);
        if (e == 1) {
            reps.push_back(std::move(big));
            continue;
        }
        Representation res = restrict_to(big, child, imprimitive_subgroup_words(de, e, r), big.label());
        if (orbit == e) {
            reps.push_back(std::move(res));
            continue;
        }
        for (Representation& part : split_restriction(res, mp, d * orbit, seed)) reps.push_back(std::move(part));
    }
    const ConjugacyClasses cc = conjugacy_classes(child);
    certify_inventory(child, cc, reps);
    return reps;
}

inline std::vector<Representation> load_inventory(const FiniteMatrixGroup& G, const InventoryFile& file,
                                                  unsigned seed = 0) {
    std::vector<Representation> reps;
    for (const RepFile& r : file.irreducibles) reps.emplace_back(&G, r.label, r.matrices, seed);
    certify_inventory(G, conjugacy_classes(G), reps);
    return reps;
}

inline InventoryFile inventory_of(const std::string& group_name, const std::vector<Representation>& reps) {
    InventoryFile inv;
    inv.group = group_name;
    for (const Representation& rho : reps) inv.irreducibles.push_back({group_name, rho.label(), rho.generator_images()});
    return inv;
}

} // namespace infhecke
