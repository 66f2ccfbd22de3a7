#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infhecke/generic.hpp"
#include "infhecke/liecore.hpp"

namespace infhecke {

// ---------------------------------------------------------------------------
// Generator families
// ---------------------------------------------------------------------------

// Selects a generating family inside the group algebra. H closes all
// reflections, H_s only the distinguished ones, H(lambda) replaces each
// distinguished reflection of a class with e_c > 2 by the weighted power sum
// sum_k lambda_k s^k, H(U) takes a generating subset of distinguished
// reflections, H(U~) additionally closes that subset under powers, and H_st
// uses the plain power sums s + s^2 + ... + s^{e_c - 1}.
struct GeneratorTag {
    enum class Kind { H, Hs, Hlambda, HU, HUtilde, Hst };

    Kind kind = Kind::H;
    ParameterPoint lambda;   // Hlambda only
    std::vector<int> subset; // HU / HUtilde: element indices

    static GeneratorTag h() { return {Kind::H, {}, {}}; }
    static GeneratorTag hs() { return {Kind::Hs, {}, {}}; }
    static GeneratorTag hlambda(ParameterPoint p) { return {Kind::Hlambda, std::move(p), {}}; }
    static GeneratorTag hu(std::vector<int> u) { return {Kind::HU, {}, std::move(u)}; }
    static GeneratorTag hutilde(std::vector<int> u) { return {Kind::HUtilde, {}, std::move(u)}; }
    static GeneratorTag hst() { return {Kind::Hst, {}, {}}; }

    std::string name() const {
        switch (kind) {
            case Kind::H: return "H";
            case Kind::Hs: return "H_s";
            case Kind::Hlambda: return "H(lambda)";
            case Kind::HU: return "H(U)";
            case Kind::HUtilde: return "H(U~)";
            default: return "H_st";
        }
    }
};

// One generator: a fixed linear combination of powers of a single reflection,
// stored as (element, coefficient) terms.
struct AlgebraGenerator {
    int base = -1;
    std::vector<std::pair<int, Cyclotomic>> terms;
};

namespace detail {

inline int cplus_index(const ReflectionGroupContext& ctx, int hyperplane_class) {
    for (int ci = 0; ci < ctx.class_count(); ++ci)
        if (ctx.cplus[ci] == hyperplane_class) return ci;
    throw ConsistencyError("hyperplane class is missing from the parameter blocks");
}

inline int subgroup_order(const FiniteMatrixGroup& G, const std::vector<int>& gens) {
    std::set<int> seen{G.identity};
    std::vector<int> work{G.identity};
    while (!work.empty()) {
        const int cur = work.back();
        work.pop_back();
        for (int g : gens) {
            const int nxt = G.product(cur, g);
            if (seen.insert(nxt).second) work.push_back(nxt);
        }
    }
    return static_cast<int>(seen.size());
}

inline std::vector<int> checked_subset(const ReflectionGroupContext& ctx, const std::vector<int>& u) {
    if (u.empty()) throw PreconditionError("the subset of reflections is empty");
    std::vector<int> out(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    const auto& S = ctx.catalog.S;
    for (int g : out)
        if (std::find(S.begin(), S.end(), g) == S.end())
            throw PreconditionError("subset member is not a distinguished reflection");
    if (subgroup_order(ctx.W(), out) != ctx.W().order())
        throw PreconditionError("the subset does not generate the group");
    return out;
}

// All nontrivial powers of the subset members; each is again a reflection
// for the same hyperplane.
inline std::vector<int> power_closure(const ReflectionGroupContext& ctx, const std::vector<int>& u) {
    std::set<int> out;
    const auto& G = ctx.W();
    for (int g : u) {
        int cur = g;
        while (cur != G.identity) {
            if (ctx.catalog.reflection_of_element[cur] < 0)
                throw ConsistencyError("power of a reflection left the reflection set");
            out.insert(cur);
            cur = G.product(cur, g);
        }
    }
    return {out.begin(), out.end()};
}

} // namespace detail

// Generators in a deterministic order (ascending base element, the plain
// families first), so generator lists of different representations stay
// aligned for joint closures and equivalence tests.
inline std::vector<AlgebraGenerator> generator_scheme(const ReflectionGroupContext& ctx,
                                                      const GeneratorTag& tag) {
    const auto& cat = ctx.catalog;
    std::vector<AlgebraGenerator> out;
    const auto plain = [&](const std::vector<int>& elems) {
        for (int g : elems) out.push_back({g, {{g, Cyclotomic::one()}}});
    };
    const auto weighted = [&](bool unit_weights) {
        plain(cat.S0);
        for (int s : cat.Splus) {
            const auto& rd = cat.reflections[cat.reflection_of_element[s]];
            const int ci = detail::cplus_index(ctx, rd.hyperplane_class_id);
            const int e = ctx.e_at(ci);
            AlgebraGenerator g;
            g.base = s;
            int cur = s;
            for (int k = 1; k < e; ++k) {
                g.terms.emplace_back(cur, unit_weights ? Cyclotomic::one() : tag.lambda.lambda[ci][k - 1]);
                cur = ctx.W().product(cur, s);
            }
            out.push_back(std::move(g));
        }
    };
    switch (tag.kind) {
        case GeneratorTag::Kind::H: plain(cat.R); break;
        case GeneratorTag::Kind::Hs: plain(cat.S); break;
        case GeneratorTag::Kind::HU: plain(detail::checked_subset(ctx, tag.subset)); break;
        case GeneratorTag::Kind::HUtilde:
            plain(detail::power_closure(ctx, detail::checked_subset(ctx, tag.subset)));
            break;
        case GeneratorTag::Kind::Hlambda:
            require_point_shape(ctx, tag.lambda);
            weighted(false);
            break;
        case GeneratorTag::Kind::Hst: weighted(true); break;
    }
    return out;
}

inline std::vector<Matrix> gen_set(const ReflectionGroupContext& ctx, const Representation& rho,
                                   const GeneratorTag& tag) {
    if (&rho.group() != ctx.group)
        throw PreconditionError("representation belongs to a different group");
    std::vector<Matrix> out;
    for (const auto& g : generator_scheme(ctx, tag)) {
        Matrix m(rho.dim(), rho.dim());
        for (const auto& [el, c] : g.terms) m = m + rho.at(el).scaled(c);
        out.push_back(std::move(m));
    }
    return out;
}

inline std::vector<GroupAlgebraElement> gen_set_algebra(const ReflectionGroupContext& ctx,
                                                        const GeneratorTag& tag) {
    std::vector<GroupAlgebraElement> out;
    for (const auto& g : generator_scheme(ctx, tag)) {
        GroupAlgebraElement x;
        for (const auto& [el, c] : g.terms) x.add(el, c);
        out.push_back(std::move(x));
    }
    return out;
}

// T_c for a hyperplane class with e_c = 2, and the weighted sum
// sum_{s} sum_k lambda_k s^k over the distinguished reflections of the class
// otherwise. Conjugation permutes the distinguished reflections of a class
// and preserves powers, so the result is central; this is verified against
// the group generators.
inline GroupAlgebraElement central_element(const ReflectionGroupContext& ctx, int hyperplane_class,
                                           const ParameterPoint& p) {
    const auto& cat = ctx.catalog;
    if (hyperplane_class < 0 || hyperplane_class >= static_cast<int>(cat.hyperplane_classes.size()))
        throw PreconditionError("no such hyperplane class");
    require_point_shape(ctx, p);
    const int e = cat.class_e[hyperplane_class];
    GroupAlgebraElement x;
    for (int h : cat.hyperplane_classes[hyperplane_class]) {
        const int s = cat.distinguished_of_hyperplane[h];
        if (e == 2) {
            x.add(s, Cyclotomic::one());
            continue;
        }
        const int ci = detail::cplus_index(ctx, hyperplane_class);
        int cur = s;
        for (int k = 1; k < e; ++k) {
            x.add(cur, p.lambda[ci][k - 1]);
            cur = ctx.W().product(cur, s);
        }
    }
    for (int gi : ctx.W().generator_element)
        if (!ga_bracket(ctx.W(), x, GroupAlgebraElement::basis(gi)).is_zero())
            throw ConsistencyError("class combination fails to be central");
    return x;
}

// ---------------------------------------------------------------------------
// Shifted images
// ---------------------------------------------------------------------------

// Subtracts the normalized trace from each matrix. On an irreducible
// representation this is the image of s - T/|c| style recentring: the scalar
// part is removed, leaving generators of the derived image.
inline std::vector<Matrix> traceless_images(std::vector<Matrix> mats) {
    for (Matrix& m : mats) {
        if (m.rows == 0) continue;
        const Cyclotomic shift = m.trace() * Cyclotomic(Rational(1, static_cast<long>(m.rows)));
        m = m - Matrix::scalar(m.rows, shift);
    }
    return mats;
}

inline std::vector<Matrix> shifted_images(const Representation& rho, const std::vector<int>& elements) {
    std::vector<Matrix> out;
    out.reserve(elements.size());
    for (int g : elements) out.push_back(rho.at(g));
    return traceless_images(std::move(out));
}

namespace detail {

inline bool same_matrix(const Matrix& a, const Matrix& b) { return (a - b).is_zero(); }

inline bool is_scalar_matrix(const Matrix& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            if (i == j ? !(m.at(i, j) == m.at(0, 0)) : !m.at(i, j).is_zero()) return false;
        }
    return true;
}

// Trace form Gram matrix of a generator list; invariant under simultaneous
// conjugation and under the negated-transpose substitution, so unequal Gram
// matrices rule out both equivalence modes before any intertwiner solve.
inline Matrix gram_matrix(const std::vector<Matrix>& gens) {
    const int k = static_cast<int>(gens.size());
    Matrix g(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            g.at(a, b) = (gens[a] * gens[b]).trace();
            g.at(b, a) = g.at(a, b);
        }
    return g;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    std::vector<std::vector<int>> components() {
        std::map<int, std::vector<int>> by_root;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i) by_root[find(i)].push_back(i);
        std::vector<std::vector<int>> out;
        for (auto& kv : by_root) out.push_back(std::move(kv.second));
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return out;
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Classification of the irreducibles
// ---------------------------------------------------------------------------

struct IrrInfo {
    std::string label;
    int dim = 0;
    bool reflection = false;        // dim >= 2 and every distinguished reflection acts as a pseudo-reflection
    bool reflection_twist = false;  // linear twist of a reflection representation
    bool exterior_twist = false;    // linear twist of some Lambda^k of a reflection representation
    bool selfdual = false;          // shifted distinguished images admit a dual-mode equivalence with themselves
    bool selfdual_ambient = false;  // the same over all reflections
    std::vector<int> invisible_twists; // linear characters nontrivial only where the representation is scalar
    int class_id = -1;              // equivalence class over straight/dual shifted equivalences (distinguished side)
    int class_id_ambient = -1;      // the same over all reflections
};

struct IrrClassification {
    std::vector<IrrInfo> info;
    std::vector<std::vector<int>> classes;         // members per class, distinguished side
    std::vector<std::vector<int>> classes_ambient; // members per class, all reflections

    const IrrInfo& of(const std::string& label) const {
        for (const auto& i : info)
            if (i.label == label) return i;
        throw PreconditionError("no representation labelled " + label);
    }
};

namespace detail {

inline std::string character_key(const std::vector<Cyclotomic>& chi) {
    std::string key;
    for (const Cyclotomic& v : chi) {
        v.append_key(key);
        key += ';';
    }
    return key;
}

// Union-find over straight/dual equivalences of the shifted images on the
// given element list. A Gram prefilter discards pairs that cannot match in
// either mode. Linear representations shift to zero and correctly fall into
// one common class.
inline std::vector<std::vector<int>> shifted_equivalence_classes(
    const std::vector<Representation>& reps, const std::vector<int>& elements,
    std::vector<bool>* selfdual) {
    const int n = static_cast<int>(reps.size());
    std::vector<std::vector<Matrix>> shifted(n);
    std::vector<Matrix> gram(n);
    for (int i = 0; i < n; ++i) {
        shifted[i] = shifted_images(reps[i], elements);
        gram[i] = gram_matrix(shifted[i]);
    }
    if (selfdual) {
        selfdual->assign(n, false);
        for (int i = 0; i < n; ++i)
            (*selfdual)[i] = restriction_iso(shifted[i], shifted[i], RestrictionMode::dual);
    }
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (reps[i].dim() != reps[j].dim()) continue;
            if (uf.find(i) == uf.find(j)) continue;
            if (!same_matrix(gram[i], gram[j])) continue;
            if (restriction_iso(shifted[i], shifted[j], RestrictionMode::straight) ||
                restriction_iso(shifted[i], shifted[j], RestrictionMode::dual))
                uf.unite(i, j);
        }
    return uf.components();
}

} // namespace detail

// Flags every irreducible as reflection / twist of a reflection / twist of an
// exterior power, lists its invisible linear twists, and groups the
// irreducibles under the equivalence generated by straight and dual
// equivalences of the shifted generator images, once over the distinguished
// reflections and once over all reflections.
inline IrrClassification classify_irreps(const ReflectionGroupContext& ctx) {
    const auto& cat = ctx.catalog;
    const auto& reps = ctx.irreducibles;
    const int n = static_cast<int>(reps.size());
    IrrClassification out;
    out.info.resize(n);

    std::vector<std::vector<Cyclotomic>> chi(n);
    for (int i = 0; i < n; ++i) {
        chi[i] = reps[i].character(ctx.classes);
        out.info[i].label = reps[i].label();
        out.info[i].dim = reps[i].dim();
    }

    for (int i = 0; i < n; ++i) {
        if (reps[i].dim() < 2) continue;
        bool ok = true;
        const Matrix id = Matrix::identity(reps[i].dim());
        for (int s : cat.S)
            if (rank_of(reps[i].at(s) - id) > 1) {
                ok = false;
                break;
            }
        out.info[i].reflection = ok;
    }

    // Characters of eta (x) Lambda^k(reflection representation); flag bit 0
    // marks k = 1 matches, bit 1 any k.
    std::map<std::string, int> twist_table;
    const int classes_n = static_cast<int>(ctx.classes.members.size());
    for (int i = 0; i < n; ++i) {
        if (!out.info[i].reflection) continue;
        for (int k = 0; k <= reps[i].dim(); ++k) {
            std::vector<Cyclotomic> psi(classes_n, Cyclotomic::one());
            if (k > 0) psi = exterior_power(reps[i], k, "wedge").character(ctx.classes);
            for (const LinearCharacter& eta : ctx.linear) {
                std::vector<Cyclotomic> twisted(classes_n);
                for (int c = 0; c < classes_n; ++c)
                    twisted[c] = eta.values[ctx.classes.members[c][0]] * psi[c];
                twist_table[detail::character_key(twisted)] |= (k == 1 ? 3 : 2);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const auto it = twist_table.find(detail::character_key(chi[i]));
        if (it == twist_table.end()) continue;
        out.info[i].reflection_twist = (it->second & 1) != 0;
        out.info[i].exterior_twist = true;
    }

    for (int i = 0; i < n; ++i) {
        std::vector<bool> scalar_at;
        scalar_at.reserve(cat.S.size());
        for (int s : cat.S) scalar_at.push_back(detail::is_scalar_matrix(reps[i].at(s)));
        for (int ei = 0; ei < static_cast<int>(ctx.linear.size()); ++ei) {
            bool ok = true;
            for (size_t si = 0; si < cat.S.size(); ++si)
                if (!(ctx.linear[ei].values[cat.S[si]] == Cyclotomic::one()) && !scalar_at[si]) {
                    ok = false;
                    break;
                }
            if (ok) out.info[i].invisible_twists.push_back(ei);
        }
    }

    std::vector<bool> sd;
    out.classes = detail::shifted_equivalence_classes(reps, cat.S, &sd);
    for (int i = 0; i < n; ++i) out.info[i].selfdual = sd[i];
    out.classes_ambient = detail::shifted_equivalence_classes(reps, cat.R, &sd);
    for (int i = 0; i < n; ++i) out.info[i].selfdual_ambient = sd[i];
    for (int c = 0; c < static_cast<int>(out.classes.size()); ++c)
        for (int i : out.classes[c]) out.info[i].class_id = c;
    for (int c = 0; c < static_cast<int>(out.classes_ambient.size()); ++c)
        for (int i : out.classes_ambient[c]) out.info[i].class_id_ambient = c;
    return out;
}

// ---------------------------------------------------------------------------
// Bracket closures inside the group algebra
// ---------------------------------------------------------------------------

// Dense closures cost |W|^2 per product, so they are reserved for small
// groups; larger orders rely on the representation-side decomposition.
inline constexpr int kAlgebraClosureCap = 100;

struct AlgebraClosure {
    const FiniteMatrixGroup* group = nullptr;
    std::vector<GroupAlgebraElement> generators;
    SpanBasis span{0};

    int dim() const { return span.dim(); }
};

inline std::vector<Cyclotomic> ga_dense(const FiniteMatrixGroup& G, const GroupAlgebraElement& x) {
    std::vector<Cyclotomic> v(G.order());
    for (const auto& [g, c] : x.coeff) v[g] = c;
    return v;
}

inline GroupAlgebraElement ga_from_dense(const std::vector<Cyclotomic>& v) {
    GroupAlgebraElement x;
    for (int g = 0; g < static_cast<int>(v.size()); ++g)
        if (!v[g].is_zero()) x.coeff.emplace(g, v[g]);
    return x;
}

// Same worklist as the matrix closure: left-normed brackets of the
// generators span the generated Lie subalgebra of the group algebra.
inline AlgebraClosure algebra_closure(const FiniteMatrixGroup& G,
                                      std::vector<GroupAlgebraElement> gens) {
    if (G.order() > kAlgebraClosureCap)
        throw ResourceCapError("group algebra closure is capped at order " +
                               std::to_string(kAlgebraClosureCap));
    if (gens.empty()) throw PreconditionError("closure needs at least one generator");
    AlgebraClosure C;
    C.group = &G;
    C.generators = std::move(gens);
    C.span = SpanBasis(G.order());
    std::vector<GroupAlgebraElement> work;
    for (const auto& g : C.generators)
        if (C.span.insert(ga_dense(G, g))) work.push_back(g);
    for (size_t head = 0; head < work.size(); ++head) {
        const GroupAlgebraElement x = work[head]; // copy: work may reallocate
        for (const auto& g : C.generators) {
            GroupAlgebraElement b = ga_bracket(G, g, x);
            if (C.span.insert(ga_dense(G, b))) work.push_back(std::move(b));
        }
    }
    return C;
}

inline bool algebra_contains(const AlgebraClosure& C, const GroupAlgebraElement& x) {
    return C.span.contains(ga_dense(*C.group, x));
}

// Dimension of { x in C : [x, generators] = 0 }, the center of the closure.
inline int algebra_center_dim(const AlgebraClosure& C) {
    const int d = C.dim();
    if (d == 0) return 0;
    const auto& G = *C.group;
    const int width = static_cast<int>(C.generators.size()) * G.order();
    SpanBasis probe(width);
    for (int i = 0; i < d; ++i) {
        const GroupAlgebraElement xi = ga_from_dense(C.span.rows()[i]);
        std::vector<Cyclotomic> row;
        row.reserve(width);
        for (const auto& g : C.generators) {
            const auto br = ga_dense(G, ga_bracket(G, xi, g));
            row.insert(row.end(), br.begin(), br.end());
        }
        probe.insert(std::move(row));
    }
    return d - probe.dim();
}

// ---------------------------------------------------------------------------
// Decomposition into simple blocks
// ---------------------------------------------------------------------------

struct DecompositionReport {
    std::string tag_name;
    IdealReport ideals;
    std::vector<int> block_dims;
    std::vector<std::string> block_types;
    int derived_total = 0;
    int center_dim = -1; // -1: not determined
    std::string center_source = "none";
    int algebra_dim = -1; // -1: not determined
    bool model_applies = false;
    bool model_agrees = false;
    bool unresolved = false;

    const IdealEntry& entry(const std::string& label) const {
        for (const auto& e : ideals.entries)
            if (e.label == label) return e;
        throw PreconditionError("no entry labelled " + label);
    }
    // Index of the block the labelled entry belongs to, -1 for dead entries
    // and for entries whose image is a product of several blocks.
    int block_of(const std::string& label) const {
        for (int i = 0; i < static_cast<int>(ideals.entries.size()); ++i)
            if (ideals.entries[i].label == label) {
                for (int b = 0; b < static_cast<int>(ideals.blocks.size()); ++b)
                    for (int m : ideals.blocks[b])
                        if (m == i) return b;
                return -1;
            }
        throw PreconditionError("no entry labelled " + label);
    }
    std::vector<int> sorted_block_dims() const {
        std::vector<int> d = block_dims;
        std::sort(d.begin(), d.end());
        return d;
    }
};

namespace detail {

// A full image: all of sl, or all of so/sp when the closure preserves a
// form. Such an image is simple, so it meets exactly one block.
inline bool is_full_image(int derived, int ambient, DualityClass duality) {
    if (derived == ambient * ambient - 1) return true;
    if (duality == DualityClass::orthogonal && 2 * derived == ambient * (ambient - 1)) return true;
    if (duality == DualityClass::symplectic && 2 * derived == ambient * (ambient + 1)) return true;
    return false;
}

inline bool is_sl_full(int derived, int ambient) { return derived == ambient * ambient - 1; }

} // namespace detail

// Closes the selected generator family inside every irreducible
// representation, partitions the full images into blocks by the shared-ideal
// relation, attaches the remaining images to the blocks they project onto,
// and cross-checks dimension and center against the group algebra closure
// when the order permits. For the families with a structural model (H, H_s,
// H(U~), and generic H(lambda)) the blocks predicted by the classification
// are compared as well.
inline DecompositionReport decompose(const ReflectionGroupContext& ctx, const GeneratorTag& tag,
                                     const IrrClassification* cls = nullptr) {
    const auto scheme = generator_scheme(ctx, tag); // validates the tag
    const auto& reps = ctx.irreducibles;
    const int n = static_cast<int>(reps.size());
    DecompositionReport rep;
    rep.tag_name = tag.name();
    rep.ideals.entries.resize(n);

    std::vector<std::vector<Matrix>> gens(n), shifted(n);
    std::vector<LieClosure> closure(n);
    std::vector<int> derived(n);
    std::vector<DualityClass> duality(n, DualityClass::none);
    for (int i = 0; i < n; ++i) {
        gens[i] = gen_set(ctx, reps[i], tag);
        shifted[i] = traceless_images(gens[i]);
        closure[i] = lie_closure(gens[i]);
        derived[i] = closure[i].dim() - (closure[i].has_traceful ? 1 : 0);
        if (derived[i] > 0) {
            try {
                duality[i] = duality_class(closure[i]);
            } catch (const PreconditionError&) {
                duality[i] = DualityClass::none;
            }
        }
        auto& e = rep.ideals.entries[i];
        e.label = reps[i].label();
        e.image_dim = closure[i].dim();
        e.derived = derived[i];
        e.duality = duality[i];
        e.type_tag = simple_type_tag(derived[i], reps[i].dim(), duality[i]);
    }

    std::vector<int> primaries, secondaries;
    for (int i = 0; i < n; ++i) {
        if (derived[i] == 0) continue;
        if (detail::is_full_image(derived[i], reps[i].dim(), duality[i]))
            primaries.push_back(i);
        else
            secondaries.push_back(i);
    }

    // Shared ideals between two full images. When both are all of sl the
    // diagonal closure is the graph of a Lie algebra isomorphism, and every
    // automorphism of sl_n is a conjugation up to the negated transpose, so
    // the straight/dual equivalence of the shifted generators decides
    // exactly; otherwise the joint closure dimension decides.
    std::vector<Matrix> gram(n);
    for (int i : primaries) gram[i] = detail::gram_matrix(shifted[i]);
    const auto primaries_share = [&](int i, int j) {
        if (detail::is_sl_full(derived[i], reps[i].dim()) &&
            detail::is_sl_full(derived[j], reps[j].dim())) {
            if (!detail::same_matrix(gram[i], gram[j])) return false;
            return restriction_iso(shifted[i], shifted[j], RestrictionMode::straight) ||
                   restriction_iso(shifted[i], shifted[j], RestrictionMode::dual);
        }
        return shared_ideal(closure[i], closure[j]);
    };
    detail::UnionFind uf(n);
    for (size_t a = 0; a < primaries.size(); ++a)
        for (size_t b = a + 1; b < primaries.size(); ++b) {
            const int i = primaries[a], j = primaries[b];
            if (derived[i] != derived[j]) continue;
            if (uf.find(i) == uf.find(j)) continue;
            if (primaries_share(i, j)) uf.unite(i, j);
        }
    std::map<int, int> block_of_root;
    for (int i : primaries) {
        const int root = uf.find(i);
        const auto it = block_of_root.find(root);
        if (it == block_of_root.end()) {
            block_of_root.emplace(root, static_cast<int>(rep.ideals.blocks.size()));
            rep.ideals.blocks.push_back({i});
            rep.block_dims.push_back(derived[i]);
        } else {
            rep.ideals.blocks[it->second].push_back(i);
        }
    }

    // Representative per block for the joint-closure tests: the member with
    // the smallest ambient dimension keeps them cheap.
    const auto block_representative = [&](int b) {
        int best = rep.ideals.blocks[b][0];
        for (int m : rep.ideals.blocks[b])
            if (reps[m].dim() < reps[best].dim()) best = m;
        return best;
    };

    // A non-full image is a sum of blocks: match it against the blocks of
    // dimension at most its derived dimension, then against any blocks that
    // unmatched images create among themselves.
    struct Pending {
        int index;
        std::vector<int> found;
        int matched = 0;
    };
    std::vector<Pending> pending;
    for (int i : secondaries) {
        Pending p{i, {}, 0};
        for (int b = 0; b < static_cast<int>(rep.ideals.blocks.size()); ++b) {
            if (rep.block_dims[b] > derived[i] - p.matched) continue;
            if (shared_ideal(closure[i], closure[block_representative(b)])) {
                p.found.push_back(b);
                p.matched += rep.block_dims[b];
            }
        }
        pending.push_back(std::move(p));
    }
    std::vector<Pending> leftovers;
    const auto settle = [&](Pending& p) {
        if (p.matched != derived[p.index]) return false;
        rep.ideals.entries[p.index].block_ids = p.found;
        if (p.found.size() == 1) rep.ideals.blocks[p.found[0]].push_back(p.index);
        return true;
    };
    for (auto& p : pending)
        if (!settle(p)) leftovers.push_back(p);
    if (!leftovers.empty()) {
        // Images that matched nothing pair up among themselves; each
        // resulting group is a block not seen on any full image.
        detail::UnionFind luf(n);
        std::vector<int> fresh;
        for (const auto& p : leftovers)
            if (p.matched == 0) fresh.push_back(p.index);
        for (size_t a = 0; a < fresh.size(); ++a)
            for (size_t b = a + 1; b < fresh.size(); ++b) {
                const int i = fresh[a], j = fresh[b];
                if (derived[i] != derived[j] || luf.find(i) == luf.find(j)) continue;
                if (shared_ideal(closure[i], closure[j])) luf.unite(i, j);
            }
        std::map<int, int> new_block;
        for (int i : fresh) {
            const int root = luf.find(i);
            const auto it = new_block.find(root);
            if (it == new_block.end()) {
                new_block.emplace(root, static_cast<int>(rep.ideals.blocks.size()));
                rep.ideals.blocks.push_back({i});
                rep.block_dims.push_back(derived[i]);
            } else {
                rep.ideals.blocks[it->second].push_back(i);
            }
        }
        for (auto& p : leftovers) {
            if (p.matched == 0) {
                rep.ideals.entries[p.index].block_ids = {new_block.at(luf.find(p.index))};
                continue;
            }
            for (const auto& kv : new_block) {
                const int b = kv.second;
                if (rep.block_dims[b] > derived[p.index] - p.matched) continue;
                if (shared_ideal(closure[p.index], closure[block_representative(b)])) {
                    p.found.push_back(b);
                    p.matched += rep.block_dims[b];
                }
            }
            if (!settle(p)) {
                rep.ideals.entries[p.index].block_ids = p.found;
                rep.unresolved = true;
            }
        }
    }
    for (int b = 0; b < static_cast<int>(rep.ideals.blocks.size()); ++b) {
        auto& members = rep.ideals.blocks[b];
        std::sort(members.begin(), members.end());
        for (int m : members) rep.ideals.entries[m].block_ids = {b};
    }

    // Block type: prefer a member realizing the block as all of sl, then any
    // full member, then the dimension lookup.
    rep.block_types.assign(rep.ideals.blocks.size(), "");
    for (int b = 0; b < static_cast<int>(rep.ideals.blocks.size()); ++b) {
        int pick = -1;
        for (int m : rep.ideals.blocks[b])
            if (detail::is_sl_full(derived[m], reps[m].dim())) {
                pick = m;
                break;
            }
        if (pick < 0)
            for (int m : rep.ideals.blocks[b])
                if (detail::is_full_image(derived[m], reps[m].dim(), duality[m])) {
                    pick = m;
                    break;
                }
        if (pick < 0) pick = rep.ideals.blocks[b][0];
        rep.block_types[b] = simple_type_tag(derived[pick], reps[pick].dim(), duality[pick]);
    }
    rep.ideals.validate();
    rep.derived_total = 0;
    for (int d : rep.block_dims) rep.derived_total += d;

    // Center: H carries one central class sum per reflection class, H_s and
    // generic H(lambda) one per hyperplane class; the group algebra closure
    // cross-checks both the center and the derived dimension when the order
    // stays under the cap.
    bool generic_point = false;
    if (tag.kind == GeneratorTag::Kind::Hlambda)
        generic_point = membership(ctx, tag.lambda, build_arrangements(ctx)).generic;
    int class_count_center = -1;
    if (tag.kind == GeneratorTag::Kind::H)
        class_count_center = static_cast<int>(ctx.catalog.reflection_classes.size());
    else if (tag.kind == GeneratorTag::Kind::Hs ||
             (tag.kind == GeneratorTag::Kind::Hlambda && generic_point))
        class_count_center = static_cast<int>(ctx.catalog.hyperplane_classes.size());
    int ga_dim = -1, ga_center = -1;
    if (ctx.W().order() <= kAlgebraClosureCap) {
        const AlgebraClosure C = algebra_closure(ctx.W(), gen_set_algebra(ctx, tag));
        ga_dim = C.dim();
        ga_center = algebra_center_dim(C);
        if (ga_dim - ga_center != rep.derived_total)
            throw ConsistencyError("group algebra closure disagrees with the block sum");
        if (class_count_center >= 0 && class_count_center != ga_center)
            throw ConsistencyError("group algebra center disagrees with the class count");
    }
    rep.center_dim = class_count_center >= 0 ? class_count_center : ga_center;
    if (class_count_center >= 0 && ga_center >= 0)
        rep.center_source = "class-count+group-algebra";
    else if (class_count_center >= 0)
        rep.center_source = "class-count";
    else if (ga_center >= 0)
        rep.center_source = "group-algebra";
    rep.algebra_dim =
        ga_dim >= 0 ? ga_dim : (rep.center_dim >= 0 ? rep.derived_total + rep.center_dim : -1);

    // Predicted blocks: one summand per equivalence class that meets the
    // twists of reflection representations or the irreducibles outside the
    // exterior twists, sl-sized unless the class is selfdual outside them.
    rep.model_applies = tag.kind == GeneratorTag::Kind::H || tag.kind == GeneratorTag::Kind::Hs ||
                        tag.kind == GeneratorTag::Kind::HUtilde ||
                        (tag.kind == GeneratorTag::Kind::Hlambda && generic_point);
    if (rep.model_applies) {
        IrrClassification local;
        if (!cls) local = classify_irreps(ctx);
        const IrrClassification& cl = cls ? *cls : local;
        const bool s_side = tag.kind == GeneratorTag::Kind::Hs;
        const auto& classes = s_side ? cl.classes : cl.classes_ambient;
        std::vector<int> member_block(n, -1);
        for (int b = 0; b < static_cast<int>(rep.ideals.blocks.size()); ++b)
            for (int m : rep.ideals.blocks[b]) member_block[m] = b;
        bool ok = true;
        std::vector<int> hit(rep.ideals.blocks.size(), 0);
        int predicted_count = 0;
        for (const auto& members : classes) {
            std::vector<int> keep;
            bool twist = false, outside = false, sd = false;
            int d = -1;
            for (int i : members) {
                const IrrInfo& inf = cl.info[i];
                if (inf.dim < 2) continue;
                if (inf.reflection_twist)
                    twist = true;
                else if (!inf.exterior_twist) {
                    outside = true;
                    sd = sd || (s_side ? inf.selfdual : inf.selfdual_ambient);
                } else
                    continue;
                keep.push_back(i);
                if (d < 0)
                    d = inf.dim;
                else if (d != inf.dim)
                    ok = false;
            }
            if (keep.empty()) continue;
            ++predicted_count;
            if (twist && outside) ok = false;
            if (!ok) break;
            int expected = d * d - 1;
            if (outside && sd) {
                switch (rep.ideals.entries[keep[0]].duality) {
                    case DualityClass::orthogonal: expected = d * (d - 1) / 2; break;
                    case DualityClass::symplectic: expected = d * (d + 1) / 2; break;
                    default: ok = false; break;
                }
            }
            const int b = member_block[keep[0]];
            if (b < 0 || rep.block_dims[b] != expected || ++hit[b] > 1) {
                ok = false;
                break;
            }
            for (int i : keep)
                if (member_block[i] != b) ok = false;
            if (!ok) break;
        }
        if (predicted_count != static_cast<int>(rep.ideals.blocks.size())) ok = false;
        rep.model_agrees = ok;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Compact form
// ---------------------------------------------------------------------------

// With weights satisfying lambda_k = conj(lambda_{e_c - k}) the weighted
// power sums are conjugate-symmetric combinations of group elements, so i
// times each regular-representation generator is skew-adjoint for the
// standard Hermitian form; the check is carried out literally.
inline bool compact_form_check(const ReflectionGroupContext& ctx, const ParameterPoint& p) {
    require_point_shape(ctx, p);
    for (int ci = 0; ci < ctx.class_count(); ++ci) {
        const int e = ctx.e_at(ci);
        for (int k = 1; k < e; ++k)
            if (!(p.lambda[ci][k - 1] == p.lambda[ci][e - k - 1].galois(-1)))
                throw PreconditionError("weights are not conjugate-symmetric");
    }
    const Representation reg = regular_representation(ctx.W());
    const Cyclotomic imag = Cyclotomic::root(4, 1);
    for (const Matrix& m : gen_set(ctx, reg, GeneratorTag::hlambda(p))) {
        const Matrix y = m.scaled(imag);
        if (!(y.apply_galois(-1).transpose() + y).is_zero()) return false;
    }
    return true;
}

} // namespace infhecke
