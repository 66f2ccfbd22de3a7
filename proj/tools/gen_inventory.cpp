// Regenerates the bundled data files: group descriptions for g4/g25/g26 and
// complete irreducible inventories for g4 and g25.
//
// The inventory search seeds with the linear characters, the defining
// matrices, and exterior powers, closes under duals and linear twists, then
// walks tensor pairs smallest-first. Known constituents are peeled off the
// tensor character; a remainder of norm one is a fresh irreducible and is cut
// out by its isotypic projector. Matrices are only materialized for the pair
// actually being cut, so the walk stays cheap. Labels are assigned at the end
// from the eigenvalue pattern at one fixed distinguished reflection (all
// distinguished reflections are conjugate in these groups, so the pattern is
// canonical).

#include <infhecke/builtins.hpp>
#include <infhecke/repkit.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

using namespace infhecke;

namespace {

std::string character_key(const std::vector<Cyclotomic>& chi) {
    std::string key;
    for (const auto& v : chi) {
        v.append_key(key);
        key.push_back(';');
    }
    return key;
}

int integer_inner(const FiniteMatrixGroup& G, const ConjugacyClasses& cc,
                  const std::vector<Cyclotomic>& chi, const std::vector<Cyclotomic>& psi) {
    const Cyclotomic v = character_inner(G, cc, chi, psi);
    if (!v.is_rational()) throw ConsistencyError("character pairing is not rational");
    const Rational r = v.rational_value();
    if (r.get_den() != 1) throw ConsistencyError("character pairing is not an integer");
    return static_cast<int>(r.get_num().get_si());
}

// Cuts the chi-isotypic component (multiplicity one) out of T via the
// projector (dim/|G|) sum_g chi(g^-1) T(g).
Representation cut_component(const Representation& T, const ConjugacyClasses& cc,
                             const std::vector<Cyclotomic>& chi, std::string label) {
    const FiniteMatrixGroup& G = T.group();
    const int n = T.dim();
    if (!chi[0].is_rational()) throw ConsistencyError("character degree is not rational");
    const int d = static_cast<int>(chi[0].rational_value().get_num().get_si());
    if (d <= 0 || d > n) throw ConsistencyError("component degree out of range");

    Matrix P(n, n);
    for (int g = 0; g < G.order(); ++g) {
        const Cyclotomic& w = chi[cc.class_of[G.inverse_of[g]]];
        if (w.is_zero()) continue;
        P = P + T.at(g).scaled(w);
    }
    Rational scale(d, static_cast<long>(G.order()));
    scale.canonicalize();
    P = P.scaled(Cyclotomic(scale));

    SpanBasis image(n);
    for (int col = 0; col < n && image.dim() < d; ++col) {
        std::vector<Cyclotomic> v(n, Cyclotomic::zero());
        for (int row = 0; row < n; ++row) v[row] = P.at(row, col);
        image.insert(std::move(v));
    }
    if (image.dim() != d) throw ConsistencyError("projector rank disagrees with the character degree");

    std::vector<Matrix> gens;
    for (const Matrix& A : T.generator_images()) {
        Matrix block(d, d);
        const Matrix At = A.transpose();
        for (int jcol = 0; jcol < d; ++jcol) {
            std::vector<Cyclotomic> w(n, Cyclotomic::zero());
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) w[y] = w[y] + image.rows()[jcol][x] * At.at(x, y);
            const auto coords = image.coordinates(std::move(w));
            if (!coords) throw ConsistencyError("projector image is not invariant");
            for (int irow = 0; irow < d; ++irow) block.at(irow, jcol) = (*coords)[irow];
        }
        gens.push_back(std::move(block));
    }
    return Representation(&G, std::move(label), std::move(gens));
}

struct Search {
    const FiniteMatrixGroup& G;
    const ConjugacyClasses& cc;
    std::vector<Representation> reps;
    std::vector<std::vector<Cyclotomic>> chis;
    std::set<std::string> keys;
    int next_id = 0;

    std::string fresh_label() { return "tmp" + std::to_string(next_id++); }

    bool add(Representation r) {
        auto chi = r.character(cc);
        if (!keys.insert(character_key(chi)).second) return false;
        if (!is_irreducible(r)) throw ConsistencyError("candidate summand is not irreducible");
        reps.push_back(std::move(r));
        chis.push_back(std::move(chi));
        return true;
    }

    int total_square() const {
        int t = 0;
        for (const auto& r : reps) t += r.dim() * r.dim();
        return t;
    }

    bool complete() const {
        return reps.size() == cc.members.size() && total_square() == G.order();
    }

    void close_duals_and_twists(const std::vector<LinearCharacter>& lin) {
        for (size_t i = 0; i < reps.size(); ++i) { // reps grows while we walk it
            add(dual(reps[i], fresh_label()));
            for (const auto& eta : lin) add(twist(reps[i], eta, fresh_label()));
        }
    }
};

std::vector<Representation> find_all_irreducibles(const FiniteMatrixGroup& G,
                                                  const ConjugacyClasses& cc,
                                                  const ReflectionCatalog& cat) {
    const auto lin = linear_characters(G, cat);
    Search s{G, cc, {}, {}, {}, 0};
    for (const auto& eta : lin) {
        std::vector<Matrix> gens;
        for (int ge : G.generator_element) gens.push_back(Matrix::scalar(1, eta.values[ge]));
        s.add(Representation(&G, s.fresh_label(), std::move(gens)));
    }
    s.add(Representation(&G, s.fresh_label(), G.generators));
    for (int k = 2; k < G.degree(); ++k) {
        Representation ext = exterior_power(s.reps.back(), k, s.fresh_label());
        if (is_irreducible(ext)) s.add(std::move(ext));
    }
    s.close_duals_and_twists(lin);

    while (!s.complete()) {
        // Candidate pairs by ascending product dimension; the first pair whose
        // unseen remainder has norm one is materialized and cut.
        std::vector<std::tuple<int, size_t, size_t>> pairs;
        for (size_t i = 0; i < s.reps.size(); ++i)
            for (size_t j = i; j < s.reps.size(); ++j)
                if (s.reps[i].dim() >= 2 && s.reps[j].dim() >= 2)
                    pairs.emplace_back(s.reps[i].dim() * s.reps[j].dim(), i, j);
        std::sort(pairs.begin(), pairs.end());

        bool progress = false;
        for (const auto& [prod, i, j] : pairs) {
            std::vector<Cyclotomic> rem(s.chis[i].size());
            for (size_t c = 0; c < rem.size(); ++c) rem[c] = s.chis[i][c] * s.chis[j][c];
            for (size_t k = 0; k < s.chis.size(); ++k) {
                const int m = integer_inner(G, cc, rem, s.chis[k]);
                if (m < 0) throw ConsistencyError("negative multiplicity in a tensor product");
                if (m == 0) continue;
                const Cyclotomic mc{Rational(m)};
                for (size_t c = 0; c < rem.size(); ++c) rem[c] = rem[c] - mc * s.chis[k][c];
            }
            bool zero = true;
            for (const auto& v : rem) zero = zero && v.is_zero();
            if (zero) continue;
            if (integer_inner(G, cc, rem, rem) != 1) continue;

            Representation T = tensor(s.reps[i], s.reps[j], "tensor");
            s.add(cut_component(T, cc, rem, s.fresh_label()));
            s.close_duals_and_twists(lin);
            progress = true;
            break;
        }
        if (!progress) throw ConsistencyError("tensor walk stalled before completing the inventory");
    }
    return std::move(s.reps);
}

// Eigenvalues of the fixed distinguished reflection, as exponents of zeta_3.
std::array<int, 3> mu3_pattern(const Representation& rho, int s) {
    const Matrix m = rho.at(s);
    std::array<int, 3> mult{};
    for (int k = 0; k < 3; ++k) mult[k] = eigenvalue_multiplicity(m, 3, k);
    if (mult[0] + mult[1] + mult[2] != rho.dim())
        throw ConsistencyError("reflection eigenvalues fall outside mu_3");
    return mult;
}

const char* exponent_name(int k) {
    static const char* names[3] = {"1", "j", "j2"};
    return names[k];
}

int unique_with_multiplicity(const std::array<int, 3>& mult, int m) {
    int found = -1;
    for (int k = 0; k < 3; ++k)
        if (mult[k] == m) {
            if (found >= 0) throw ConsistencyError("eigenvalue pattern is ambiguous");
            found = k;
        }
    if (found < 0) throw ConsistencyError("expected eigenvalue multiplicity is missing");
    return found;
}

std::string g4_label(const Representation& rho, int s) {
    const auto mult = mu3_pattern(rho, s);
    switch (rho.dim()) {
        case 1: return std::string("S_") + exponent_name(unique_with_multiplicity(mult, 1));
        case 2: return std::string("U_") + exponent_name(unique_with_multiplicity(mult, 0));
        case 3: return "Vbar";
        default: throw ConsistencyError("unexpected degree in the g4 inventory");
    }
}

std::string g25_label(const Representation& rho, int s) {
    const auto mult = mu3_pattern(rho, s);
    switch (rho.dim()) {
        case 1: return std::string("S_") + exponent_name(unique_with_multiplicity(mult, 1));
        case 2: {
            std::string out = "U_{";
            bool first = true;
            for (int k = 0; k < 3; ++k)
                if (mult[k] == 1) {
                    if (!first) out += ",";
                    out += exponent_name(k);
                    first = false;
                }
            return out + "}";
        }
        case 3:
            if (mult[0] == 1 && mult[1] == 1 && mult[2] == 1) return "V";
            return std::string("U'_{") + exponent_name(unique_with_multiplicity(mult, 2)) + "," +
                   exponent_name(unique_with_multiplicity(mult, 1)) + "}";
        case 6:
            return std::string("V_{") + exponent_name(unique_with_multiplicity(mult, 3)) + "," +
                   exponent_name(unique_with_multiplicity(mult, 2)) + "}";
        case 8: return std::string("W_") + exponent_name(unique_with_multiplicity(mult, 4));
        case 9: return "X"; // tie broken afterwards
        default: throw ConsistencyError("unexpected degree in the g25 inventory");
    }
}

std::vector<Representation> relabel(const std::string& name, std::vector<Representation> reps,
                                    const ConjugacyClasses& cc, const ReflectionCatalog& cat) {
    const int s = *std::min_element(cat.S.begin(), cat.S.end());
    std::vector<std::string> labels(reps.size());
    std::vector<size_t> nines;
    for (size_t i = 0; i < reps.size(); ++i) {
        labels[i] = name == "g4" ? g4_label(reps[i], s) : g25_label(reps[i], s);
        if (name == "g25" && reps[i].dim() == 9) nines.push_back(i);
    }
    if (name == "g25") {
        // The two degree-9 irreducibles are duals of each other; the one with
        // the smaller character key is X, the other X*.
        if (nines.size() != 2) throw ConsistencyError("expected exactly two degree-9 irreducibles");
        const auto chi_a = reps[nines[0]].character(cc);
        const auto chi_b = reps[nines[1]].character(cc);
        if (character_key(chi_a) > character_key(chi_b)) std::swap(nines[0], nines[1]);
        labels[nines[0]] = "X";
        labels[nines[1]] = "X*";
        if (character_key(dual(reps[nines[0]], "chk").character(cc)) != character_key(reps[nines[1]].character(cc)))
            throw ConsistencyError("the degree-9 irreducibles are not dual to each other");
    }
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second) throw ConsistencyError("duplicate label " + l);

    std::vector<size_t> order(reps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::make_pair(reps[a].dim(), labels[a]) < std::make_pair(reps[b].dim(), labels[b]);
    });
    std::vector<Representation> out;
    out.reserve(reps.size());
    for (size_t i : order)
        out.emplace_back(&reps[i].group(), labels[i], reps[i].generator_images());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string outdir = argc > 1 ? argv[1] : "data";
    try {
        for (const std::string name : {"g4", "g25", "g26"}) {
            const auto gens = builtin_generators(name);
            const auto G = generate(gens);
            const Json gj = group_to_json(GroupFile{name, 1, gens});
            write_text_file(outdir + "/" + name + ".group.json", gj.dump(2) + "\n");
            std::cout << name << ": order " << G.order() << ", group file written\n";
            if (name == "g26") continue; // no bundled inventory; built groups suffice downstream

            const auto cc = conjugacy_classes(G);
            const auto cat = reflection_catalog(G, cc);
            auto reps = relabel(name, find_all_irreducibles(G, cc, cat), cc, cat);
            certify_inventory(G, cc, reps);
            const auto inv = inventory_of(name, reps);
            write_text_file(outdir + "/" + name + ".irreps.json", inventory_to_json(inv).dump(2) + "\n");
            std::cout << name << ": " << reps.size() << " irreducibles, inventory written\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
