#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infhecke/repkit.hpp"

namespace infhecke {

// Shared context for the parameter-space and decomposition layers: a group
// with its class data, reflection catalog, linear characters, and a complete
// irreducible inventory. cplus lists the hyperplane classes with e_c > 2, in
// catalog order; only those classes carry parameters.
struct ReflectionGroupContext {
    const FiniteMatrixGroup* group = nullptr;
    ConjugacyClasses classes;
    ReflectionCatalog catalog;
    std::vector<LinearCharacter> linear;
    std::vector<Representation> irreducibles;
    std::vector<int> cplus;

    const FiniteMatrixGroup& W() const { return *group; }
    int class_count() const { return static_cast<int>(cplus.size()); }
    int e_at(int ci) const { return catalog.class_e[cplus[ci]]; }
};

inline ReflectionGroupContext make_context(const FiniteMatrixGroup& G,
                                           std::vector<Representation> irreducibles) {
    ReflectionGroupContext ctx;
    ctx.group = &G;
    ctx.classes = conjugacy_classes(G);
    ctx.catalog = reflection_catalog(G, ctx.classes);
    ctx.linear = linear_characters(G, ctx.catalog);
    for (const Representation& rho : irreducibles)
        if (&rho.group() != &G) throw PreconditionError("inventory belongs to a different group");
    certify_inventory(G, ctx.classes, irreducibles);
    ctx.irreducibles = std::move(irreducibles);
    for (size_t c = 0; c < ctx.catalog.hyperplane_classes.size(); ++c)
        if (ctx.catalog.class_e[c] > 2) ctx.cplus.push_back(static_cast<int>(c));
    return ctx;
}

// A point of the parameter space: one block per cplus class, holding the
// coordinates (lambda_1, ..., lambda_{e_c-1}).
struct ParameterPoint {
    std::vector<std::vector<Cyclotomic>> lambda;
};

// Monodromy weights: per cplus class, one value for each power 0..e_c-1 of a
// distinguished reflection.
struct TauParameters {
    std::vector<std::vector<Cyclotomic>> tau;
};

// Full transform of the tau weights, with the lambda_0 coordinate (dropped by
// the normalization convention) kept separate from the parameter point.
struct SpectralParameters {
    std::vector<Cyclotomic> lambda0;
    ParameterPoint point;
};

inline void require_point_shape(const ReflectionGroupContext& ctx, const ParameterPoint& p) {
    if (static_cast<int>(p.lambda.size()) != ctx.class_count())
        throw PreconditionError("parameter point needs one block per class with e_c > 2");
    for (int ci = 0; ci < ctx.class_count(); ++ci)
        if (static_cast<int>(p.lambda[ci].size()) != ctx.e_at(ci) - 1)
            throw PreconditionError("parameter block length must be e_c - 1");
}

inline void require_tau_shape(const ReflectionGroupContext& ctx, const TauParameters& t) {
    if (static_cast<int>(t.tau.size()) != ctx.class_count())
        throw PreconditionError("tau needs one block per class with e_c > 2");
    for (int ci = 0; ci < ctx.class_count(); ++ci)
        if (static_cast<int>(t.tau[ci].size()) != ctx.e_at(ci))
            throw PreconditionError("tau block length must be e_c");
}

inline void require_spectral_shape(const ReflectionGroupContext& ctx, const SpectralParameters& s) {
    if (static_cast<int>(s.lambda0.size()) != ctx.class_count())
        throw PreconditionError("spectral parameters need one lambda_0 per class");
    require_point_shape(ctx, s.point);
}

enum class ArrangementTag { L1, L2, L3 };

inline const char* arrangement_name(ArrangementTag t) {
    switch (t) {
        case ArrangementTag::L1: return "L1";
        case ArrangementTag::L2: return "L2";
        default: return "L3";
    }
}

struct ArrangementHyperplane {
    ArrangementTag tag;
    int cindex;                     // position in ctx.cplus
    int hyperplane_class;           // catalog class id
    std::vector<Cyclotomic> normal; // length e_c - 1, leading coordinate scaled to 1
    std::vector<int> witness;       // (r, s) for L1, (i, j, k, l) for L2/L3
};

namespace detail {

// Scale so the first nonzero coordinate becomes 1; serialize as a dedup key.
inline std::string normal_key(std::vector<Cyclotomic>& normal) {
    size_t lead = 0;
    while (lead < normal.size() && normal[lead].is_zero()) ++lead;
    if (lead == normal.size()) throw ConsistencyError("arrangement normal vanishes");
    const Cyclotomic inv = normal[lead].inverse();
    for (Cyclotomic& x : normal) x *= inv;
    std::string key;
    for (const Cyclotomic& x : normal) {
        x.append_key(key);
        key += ';';
    }
    return key;
}

} // namespace detail

// The three hyperplane arrangements in the parameter space, deduplicated up
// to scalar within each family. zeta_power replaces the primitive root
// zeta_{e_c} by its zeta_power-th power (must stay primitive); membership is
// provably independent of that choice, which tests exercise.
inline std::vector<ArrangementHyperplane> build_arrangements(const ReflectionGroupContext& ctx,
                                                             int zeta_power = 1) {
    std::vector<ArrangementHyperplane> out;
    for (int ci = 0; ci < ctx.class_count(); ++ci) {
        const int e = ctx.e_at(ci);
        if (std::gcd(((zeta_power % e) + e) % e, e) != 1)
            throw PreconditionError("zeta power must be coprime to e_c");
        std::vector<Cyclotomic> z(e);
        std::vector<std::vector<Cyclotomic>> v(e);
        for (int i = 0; i < e; ++i) {
            z[i] = Cyclotomic::root(e, zeta_power * i);
            for (int m = 1; m < e; ++m) v[i].push_back(Cyclotomic::root(e, zeta_power * i * m));
        }
        std::set<std::string> seen[3];
        auto emit = [&](ArrangementTag tag, std::vector<Cyclotomic> normal, std::vector<int> witness) {
            std::string key = detail::normal_key(normal);
            if (!seen[static_cast<int>(tag)].insert(std::move(key)).second) return;
            out.push_back({tag, ci, ctx.cplus[ci], std::move(normal), std::move(witness)});
        };
        for (int r = 0; r < e; ++r)
            for (int s = 0; s < e; ++s) {
                if (r == s) continue;
                std::vector<Cyclotomic> n(e - 1);
                for (int m = 0; m < e - 1; ++m) n[m] = v[r][m] - v[s][m];
                emit(ArrangementTag::L1, std::move(n), {r, s});
            }
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j)
                for (int k = 0; k < e; ++k)
                    for (int l = 0; l < e; ++l) {
                        if (z[i] + z[j] == z[k] + z[l]) continue;
                        std::vector<Cyclotomic> n(e - 1);
                        for (int m = 0; m < e - 1; ++m) n[m] = v[i][m] + v[j][m] - v[k][m] - v[l][m];
                        emit(ArrangementTag::L2, std::move(n), {i, j, k, l});
                    }
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j)
                for (int k = 0; k < e; ++k)
                    for (int l = 0; l < e; ++l) {
                        if (i == k && j == l) continue;
                        if (i == j && k == l) continue;
                        std::vector<Cyclotomic> n(e - 1);
                        for (int m = 0; m < e - 1; ++m) n[m] = v[i][m] - v[j][m] - v[k][m] + v[l][m];
                        emit(ArrangementTag::L3, std::move(n), {i, j, k, l});
                    }
        for (const std::string& key : seen[0])
            if (!seen[1].count(key) || !seen[2].count(key))
                throw ConsistencyError("L1 must be contained in both L2 and L3");
    }
    return out;
}

struct GenericityReport {
    bool in_L1 = false;
    bool in_L2 = false;
    bool in_L3 = false;
    bool generic = true;
    std::vector<int> containing; // indices into the arrangement list
};

inline GenericityReport membership(const ReflectionGroupContext& ctx, const ParameterPoint& p,
                                   const std::vector<ArrangementHyperplane>& arrangements) {
    require_point_shape(ctx, p);
    GenericityReport rep;
    for (size_t idx = 0; idx < arrangements.size(); ++idx) {
        const ArrangementHyperplane& h = arrangements[idx];
        Cyclotomic pairing;
        for (size_t m = 0; m < h.normal.size(); ++m) pairing += p.lambda[h.cindex][m] * h.normal[m];
        if (!pairing.is_zero()) continue;
        rep.containing.push_back(static_cast<int>(idx));
        switch (h.tag) {
            case ArrangementTag::L1: rep.in_L1 = true; break;
            case ArrangementTag::L2: rep.in_L2 = true; break;
            case ArrangementTag::L3: rep.in_L3 = true; break;
        }
    }
    rep.generic = !(rep.in_L2 || rep.in_L3);
    return rep;
}

// lambda_k^c = sum_j (zeta_c^{-k})^j tau_{c,j}
inline SpectralParameters tau_to_lambda(const ReflectionGroupContext& ctx, const TauParameters& t) {
    require_tau_shape(ctx, t);
    SpectralParameters s;
    s.point.lambda.resize(ctx.class_count());
    for (int ci = 0; ci < ctx.class_count(); ++ci) {
        const int e = ctx.e_at(ci);
        for (int k = 0; k < e; ++k) {
            Cyclotomic acc;
            for (int j = 0; j < e; ++j) acc += Cyclotomic::root(e, -k * j) * t.tau[ci][j];
            if (k == 0)
                s.lambda0.push_back(std::move(acc));
            else
                s.point.lambda[ci].push_back(std::move(acc));
        }
    }
    return s;
}

// Inverse transform: tau_{c,j} = (1/e_c) sum_k zeta_c^{jk} lambda_k^c.
inline TauParameters lambda_to_tau(const ReflectionGroupContext& ctx, const ParameterPoint& p,
                                   const std::vector<Cyclotomic>& lambda0) {
    require_point_shape(ctx, p);
    if (static_cast<int>(lambda0.size()) != ctx.class_count())
        throw PreconditionError("lambda_0 needs one value per class");
    TauParameters t;
    t.tau.resize(ctx.class_count());
    for (int ci = 0; ci < ctx.class_count(); ++ci) {
        const int e = ctx.e_at(ci);
        for (int j = 0; j < e; ++j) {
            Cyclotomic acc = lambda0[ci];
            for (int k = 1; k < e; ++k) acc += Cyclotomic::root(e, j * k) * p.lambda[ci][k - 1];
            t.tau[ci].push_back(acc.scaled(Rational(1, static_cast<long>(e))));
        }
    }
    return t;
}

// Drop lambda_0 per the tensoring convention; the caller keeps the record.
inline ParameterPoint normalize(const SpectralParameters& s) { return s.point; }

// phi(t_H) = (1/e_c) sum_{k=0}^{e_c-1} lambda_k^c rho(s_H)^k
inline Matrix phi_tH(const ReflectionGroupContext& ctx, const Representation& rho,
                     const SpectralParameters& s, int hyperplane) {
    require_spectral_shape(ctx, s);
    if (&rho.group() != ctx.group)
        throw PreconditionError("representation belongs to a different group");
    if (hyperplane < 0 || hyperplane >= static_cast<int>(ctx.catalog.hyperplane_basis.size()))
        throw PreconditionError("hyperplane index out of range");
    const int cls = ctx.catalog.hyperplane_class_of[hyperplane];
    const auto it = std::find(ctx.cplus.begin(), ctx.cplus.end(), cls);
    if (it == ctx.cplus.end())
        throw PreconditionError("hyperplane class carries no parameters (e_c = 2)");
    const int ci = static_cast<int>(it - ctx.cplus.begin());
    const int e = ctx.e_at(ci);
    const Matrix& g = rho.at(ctx.catalog.distinguished_of_hyperplane[hyperplane]);
    Matrix acc = Matrix::scalar(rho.dim(), s.lambda0[ci]);
    Matrix pw = Matrix::identity(rho.dim());
    for (int k = 1; k < e; ++k) {
        pw = pw * g;
        acc = acc + pw.scaled(s.point.lambda[ci][k - 1]);
    }
    return acc.scaled(Cyclotomic(Rational(1, static_cast<long>(e))));
}

} // namespace infhecke
