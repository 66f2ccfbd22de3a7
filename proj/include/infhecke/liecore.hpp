#pragma once

#include <string>
#include <utility>
#include <vector>

#include "infhecke/matlin.hpp"

namespace infhecke {

// Bracket closure of a set of matrices inside gl_n, kept as a span over the
// n^2-dimensional flattening. has_traceful records whether the trace
// functional is nonzero on the closure.
struct LieClosure {
    int ambient = 0;
    std::vector<Matrix> generators;
    SpanBasis span{0};
    bool has_traceful = false;

    int dim() const { return span.dim(); }

    Matrix basis_matrix(int i) const {
        Matrix m(ambient, ambient);
        m.e.assign(span.rows()[i].begin(), span.rows()[i].end());
        return m;
    }
};

// Smallest bracket-closed subspace containing the generators. FIFO worklist:
// every inserted vector is bracketed with every generator. Left-normed
// brackets span the generated subalgebra, so this terminates with the full
// closure; raw inserted vectors and their reduced span rows are related by a
// triangular change of basis, so bracketing the raw vectors loses nothing.
inline LieClosure lie_closure(const std::vector<Matrix>& gens) {
    if (gens.empty()) throw PreconditionError("closure needs at least one matrix");
    const int n = gens[0].rows;
    for (const Matrix& g : gens)
        if (!g.is_square() || g.rows != n)
            throw PreconditionError("closure needs square matrices of equal size");

    LieClosure C;
    C.ambient = n;
    C.generators = gens;
    C.span = SpanBasis(n * n);
    std::vector<Matrix> work;
    for (const Matrix& g : gens)
        if (C.span.insert(g.e)) work.push_back(g);
    for (size_t head = 0; head < work.size(); ++head) {
        const Matrix v = work[head]; // copy: work may reallocate below
        for (const Matrix& g : C.generators) {
            Matrix b = bracket(g, v);
            if (C.span.insert(b.e)) work.push_back(std::move(b));
        }
    }
    for (const auto& row : C.span.rows()) {
        Cyclotomic tr;
        for (int i = 0; i < n; ++i) tr = tr + row[static_cast<size_t>(i) * n + i];
        if (!tr.is_zero()) {
            C.has_traceful = true;
            break;
        }
    }
    return C;
}

// Dimension of { x in C : [x, generators] = 0 }; by Jacobi this kills the
// bracket with all of C, so it is the center.
inline int center_dim(const LieClosure& C) {
    const int d = C.dim();
    if (d == 0) return 0;
    const int n = C.ambient;
    const int width = static_cast<int>(C.generators.size()) * n * n;
    SpanBasis probe(width);
    for (int i = 0; i < d; ++i) {
        const Matrix bi = C.basis_matrix(i);
        std::vector<Cyclotomic> row;
        row.reserve(width);
        for (const Matrix& g : C.generators) {
            const Matrix br = bracket(bi, g);
            row.insert(row.end(), br.e.begin(), br.e.end());
        }
        probe.insert(std::move(row));
    }
    return d - probe.dim();
}

// With an irreducible ambient the image is center (scalars) + derived, so the
// derived part loses exactly one dimension when the trace functional is
// nonzero. Reducible ambients need the structural center.
inline int derived_dim(const LieClosure& C, bool ambient_irreducible = true) {
    if (ambient_irreducible) return C.dim() - (C.has_traceful ? 1 : 0);
    return C.dim() - center_dim(C);
}

// Basis of the traceless part of the closure: eliminate the trace against one
// traceful pivot row.
inline std::vector<Matrix> traceless_part(const LieClosure& C) {
    const int d = C.dim();
    std::vector<Matrix> mats;
    std::vector<Cyclotomic> traces;
    mats.reserve(d);
    for (int i = 0; i < d; ++i) {
        mats.push_back(C.basis_matrix(i));
        traces.push_back(mats.back().trace());
    }
    int pivot = -1;
    for (int i = 0; i < d; ++i)
        if (!traces[i].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot < 0) return mats;
    std::vector<Matrix> out;
    out.reserve(d - 1);
    const Cyclotomic inv = traces[pivot].inverse();
    for (int i = 0; i < d; ++i) {
        if (i == pivot) continue;
        out.push_back(mats[i] - mats[pivot].scaled(traces[i] * inv));
    }
    return out;
}

enum class DualityClass { none, orthogonal, symplectic };

inline const char* duality_name(DualityClass d) {
    switch (d) {
        case DualityClass::orthogonal: return "orthogonal";
        case DualityClass::symplectic: return "symplectic";
        default: return "none";
    }
}

// Bilinear form preserved by the traceless part. Requires the ambient space
// to be irreducible under it, which forces the form space to be a line and
// any form on it to be nondegenerate and (skew-)symmetric.
inline DualityClass duality_class(const LieClosure& C) {
    const auto part = traceless_part(C);
    if (part.empty()) throw PreconditionError("duality needs a nonzero traceless part");
    const auto forms = invariant_bilinear_forms(part);
    if (forms.empty()) return DualityClass::none;
    if (forms.size() >= 2)
        throw PreconditionError("form space is not a line; the restriction cannot be irreducible");
    if (!nondegenerate(forms[0]))
        throw ConsistencyError("invariant form is degenerate on an irreducible restriction");
    switch (form_symmetry(forms[0])) {
        case FormSymmetry::symmetric: return DualityClass::orthogonal;
        case FormSymmetry::skew: return DualityClass::symplectic;
        default: throw ConsistencyError("invariant form is neither symmetric nor skew");
    }
}

// True iff the images on the two representations share a simple ideal. The
// closure of the block-diagonal sums has dimension derived(A) + derived(B)
// plus a center of dimension at most two when the ideals are disjoint; a
// shared simple ideal (dimension at least three) collapses the diagonal, so
// comparing against the derived sum decides without a center solve.
inline bool shared_ideal(const LieClosure& A, const LieClosure& B) {
    if (A.generators.size() != B.generators.size())
        throw PreconditionError("shared-ideal test needs matching generator lists");
    const int m = A.ambient, n = B.ambient;
    std::vector<Matrix> sums;
    sums.reserve(A.generators.size());
    for (size_t i = 0; i < A.generators.size(); ++i) {
        Matrix s(m + n, m + n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) s.at(r, c) = A.generators[i].at(r, c);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) s.at(m + r, m + c) = B.generators[i].at(r, c);
        sums.push_back(std::move(s));
    }
    return lie_closure(sums).dim() < derived_dim(A) + derived_dim(B);
}

enum class RestrictionMode { straight, dual };

// Existence of an invertible P with P B_i P^-1 = A_i (straight) or
// P B_i P^-1 = -A_i^T (dual). For irreducible restrictions any nonzero
// intertwiner is invertible, so checking the basis elements suffices.
inline bool restriction_iso(const std::vector<Matrix>& gens_a, const std::vector<Matrix>& gens_b,
                            RestrictionMode mode) {
    if (gens_a.size() != gens_b.size())
        throw PreconditionError("restriction test needs matching generator lists");
    if (gens_a.empty()) throw PreconditionError("restriction test needs at least one generator");
    if (gens_a[0].rows != gens_b[0].rows) throw PreconditionError("restriction test needs equal dimensions");
    std::vector<Matrix> as = gens_a;
    if (mode == RestrictionMode::dual)
        for (Matrix& a : as) a = -a.transpose();
    for (const Matrix& p : intertwiners(as, gens_b))
        if (!determinant(p).is_zero()) return true;
    return false;
}

// Simple-type tag from the derived dimension, ambient dimension, and duality
// class. Dimensions 3, 8, 11, 35, 63, 80 admit a unique semisimple algebra,
// which resolves images that are not all of sl/so/sp of the ambient space.
inline std::string simple_type_tag(int derived, int ambient, DualityClass duality) {
    if (derived == 0) return "zero";
    if (derived == ambient * ambient - 1) return "sl_" + std::to_string(ambient);
    if (duality == DualityClass::orthogonal && 2 * derived == ambient * (ambient - 1))
        return "so_" + std::to_string(ambient);
    if (duality == DualityClass::symplectic && 2 * derived == ambient * (ambient + 1))
        return "sp_" + std::to_string(ambient);
    switch (derived) {
        case 3: return "sl_2";
        case 8: return "sl_3";
        case 11: return "sl_2 x sl_3";
        case 35: return "sl_6";
        case 63: return "sl_8";
        case 80: return "sl_9";
        default: return "other(" + std::to_string(derived) + ")";
    }
}

// Per-representation image summary plus the partition into shared-ideal
// blocks. Entries whose image is a product of several simple ideals list all
// of them in block_ids and belong to no single block of the partition.
struct IdealEntry {
    std::string label;
    int image_dim = 0;
    int derived = 0;
    DualityClass duality = DualityClass::none;
    std::string type_tag;
    std::vector<int> block_ids;
};

struct IdealReport {
    std::vector<IdealEntry> entries;
    std::vector<std::vector<int>> blocks; // block -> indices of single-ideal entries

    void validate() const {
        std::vector<int> seen(entries.size(), 0);
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b].empty()) throw ConsistencyError("empty ideal block");
            const int d0 = entries[blocks[b][0]].derived;
            for (int i : blocks[b]) {
                if (i < 0 || i >= static_cast<int>(entries.size()))
                    throw ConsistencyError("ideal block references a missing entry");
                if (entries[i].derived != d0)
                    throw ConsistencyError("derived dimensions differ inside an ideal block");
                if (++seen[i] > 1) throw ConsistencyError("entry assigned to two ideal blocks");
            }
        }
    }
};

} // namespace infhecke
