#pragma once

// Canonical system of a Z_2^3 cover X -> Y.
//
// H^0(K_X) splits into eigenspaces H^0(K_Y + L_chi), with the trivial
// character contributing H^0(K_Y). The largest subgroup Gamma acting
// trivially on H^0(K_X) is the annihilator of the characters with nonzero
// eigenspace; the canonical map of X factors through Z = X / Gamma, a
// (Z_2^3 / Gamma)-cover of Y whose building data are the L_chi with chi in
// Gamma^perp.
//
// Degree 2 = |Gamma| is certified when (a) some eigenspace of Z is the
// pullback of a very ample system on Y and (b) Z has at least three nonzero
// eigenspaces. This is a certificate, not a decision procedure.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "abcover/cover.hpp"
#include "abcover/group.hpp"
#include "abcover/invariants.hpp"
#include "abcover/picard.hpp"

namespace abcover {

using EigenDims = std::map<Character, std::int64_t>;

/// Dimension of every eigenspace of H^0(K_X), trivial character included.
inline EigenDims eigenspace_dims(const CoverSpec& spec, const CharacterClassMap& L) {
    const auto& s = spec.surface();
    const auto k = canonical_class(s);
    EigenDims out;
    out[Character::zero(spec.rank())] = 0;  // p_g of a rational surface
    for (const auto& [chi, l] : L) out[chi] = h0(s, l + k);
    return out;
}

inline EigenDims eigenspace_dims(const CoverSpec& spec) { return eigenspace_dims(spec, derive_L(spec)); }

/// Largest subgroup acting trivially on H^0(K_X).
inline Subgroup trivial_subgroup(unsigned rank, const EigenDims& dims) {
    std::vector<Character> support;
    for (const auto& [chi, d] : dims)
        if (d > 0) support.push_back(chi);
    return annihilator(rank, support);
}

inline Subgroup trivial_subgroup(const CoverSpec& spec) { return trivial_subgroup(spec.rank(), eigenspace_dims(spec)); }

/// h0 on Z = X / gamma of the pullback of A, via the projection formula:
/// sum over chi in gamma^perp of h0(A - L_chi), with L_0 = 0.
inline std::int64_t pullback_h0(const CoverSpec& spec, const CharacterClassMap& L, const Subgroup& gamma,
                                const DivClass& a) {
    GroupElement::require_same_rank(spec.rank(), gamma.rank());
    std::int64_t total = 0;
    for (const auto& chi : perp(gamma)) {
        if (chi.is_zero())
            total += h0(spec.surface(), a);
        else
            total += h0(spec.surface(), a - L.at(chi));
    }
    return total;
}

inline std::int64_t pullback_h0(const CoverSpec& spec, const Subgroup& gamma, const DivClass& a) {
    return pullback_h0(spec, derive_L(spec), gamma, a);
}

struct RamifiedMarks {
    bool a = false;
    bool b = false;
};

/// Intersection on a cover of degree `cover_degree` of the pullbacks of A and
/// B; a class marked ramified stands for half its pullback (the reduced
/// preimage of a branch curve).
inline std::int64_t half_pullback_pairing(const SurfaceModel& s, std::int64_t cover_degree, const DivClass& a,
                                          const DivClass& b, RamifiedMarks marks) {
    if (cover_degree < 1 || (cover_degree & (cover_degree - 1)) != 0)
        throw DomainError("cover degree must be a power of two");
    const std::int64_t halvings = (marks.a ? 1 : 0) + (marks.b ? 1 : 0);
    const std::int64_t num = cover_degree * intersect(s, a, b);
    const std::int64_t den = std::int64_t{1} << halvings;
    if (num % den != 0) throw DomainError("half-pullback pairing is not integral for this cover degree");
    return num / den;
}

inline bool very_ample_sufficient(const SurfaceModel& s, const DivClass& d) {
    detail::require_on(s, d);
    if (s.blowup_count() == 0) return d.f >= 1 && d.g >= 1;
    if (s.blowup_count() == 1) return d.f >= 1 && d.g >= 1 && d.e[0] == -1;
    return false;
}

/// One branch component C of Z -> Y tested against the fixed-point pattern
/// K_Z = g^*(A) + C~, C~ = (1/2) g^*(C).
struct BasePointCandidate {
    GroupElement sigma;
    DivClass component;
    DivClass residual;  // A
    std::int64_t self_intersection = 0;  // C~^2
    std::int64_t canonical_degree = 0;   // K_Z . C~
    Rational genus;                      // of C~
    std::int64_t pullback_h0 = 0;        // h0(Z, g^*A)
    std::int64_t p_g_quotient = 0;       // h0(Z, K_Z)
    bool matches = false;
};

struct BasePointAnalysis {
    std::vector<BasePointCandidate> candidates;
    std::optional<std::int64_t> on_quotient;
    std::optional<std::int64_t> on_cover;
    std::vector<std::string> notes;
};

/// A lone component C with K_Z = g^*A + C~, C~ elliptic, K_Z.C~ = 1 and C~ not
/// in the fixed part gives one simple base point of |K_Z|; it doubles on X
/// when X -> Z is branched only at points.
inline BasePointAnalysis analyze_base_points(const CoverSpec& spec, const CharacterClassMap& L,
                                             const Subgroup& gamma, std::int64_t p_g_quotient) {
    BasePointAnalysis out;
    const auto& s = spec.surface();
    const QuotientMap q(gamma);
    if (q.quotient_order() != 4) {
        out.notes.push_back("base-point pattern is modeled only for a quotient of order 4");
        return out;
    }
    const auto z_degree = static_cast<std::int64_t>(q.quotient_order());

    auto downstairs = DivClass::zero(s.blowup_count());
    bool gamma_branched = false;
    for (const auto& c : spec.branch()) {
        if (gamma.contains(c.sigma))
            gamma_branched = gamma_branched || !c.cls.is_zero();
        else
            downstairs += c.cls;
    }

    for (const auto& [img, sigmas] : quotient_inertia(spec, gamma)) {
        if (sigmas.size() != 1) continue;
        const auto c = spec.branch_class(sigmas.front());
        if (c.is_zero()) continue;
        const auto rest = downstairs - c;
        if (!detail::even(rest)) continue;

        BasePointCandidate cand;
        cand.sigma = sigmas.front();
        cand.component = c;
        cand.residual = canonical_class(s) + detail::floor_half(rest);
        cand.self_intersection = half_pullback_pairing(s, z_degree, c, c, {true, true});
        cand.canonical_degree =
            half_pullback_pairing(s, z_degree, cand.residual, c, {false, true}) + cand.self_intersection;
        cand.genus = Rational(1) + Rational(cand.self_intersection + cand.canonical_degree, 2);
        cand.pullback_h0 = pullback_h0(spec, L, gamma, cand.residual);
        cand.p_g_quotient = p_g_quotient;
        cand.matches = cand.genus == 1 && cand.canonical_degree == 1 && cand.pullback_h0 < p_g_quotient;
        out.candidates.push_back(std::move(cand));
    }

    if (out.candidates.empty()) {
        out.on_quotient = 0;
        out.on_cover = 0;
        out.notes.push_back("no lone branch component of the quotient enters K_Z; no base points from this pattern");
        return out;
    }
    const auto matching = std::count_if(out.candidates.begin(), out.candidates.end(),
                                        [](const auto& c) { return c.matches; });
    if (out.candidates.size() == 1 && matching == 1 && !gamma_branched) {
        out.on_quotient = 1;
        out.on_cover = static_cast<std::int64_t>(gamma.order());
        out.notes.push_back("|K_Z| has one simple base point on the elliptic curve over D_" +
                            out.candidates.front().sigma.label() + "; X -> Z is branched only at points, so |K_X| has " +
                            std::to_string(*out.on_cover));
        return out;
    }
    out.notes.push_back("candidate components do not match the single elliptic-curve pattern; base points undetermined");
    return out;
}

struct BirationalCertificate {
    bool holds = false;
    std::vector<std::string> reasons;
};

struct CanonicalReport {
    EigenDims eigen_dims;
    Subgroup gamma_triv;
    EigenDims quotient_eigen_dims;
    std::int64_t p_g = 0;
    std::int64_t p_g_quotient = 0;
    std::int64_t nonzero_quotient_eigenspaces = 0;
    std::int64_t degree_factor = 1;
    BirationalCertificate birational_certificate;
    std::optional<std::int64_t> canonical_degree;  // set only when certified
    BasePointAnalysis base_point_analysis;
    std::optional<std::int64_t> base_points;
    std::optional<std::int64_t> image_degree;
    std::vector<std::string> remarks;
    std::vector<std::string> assumptions;
};

inline CanonicalReport canonical_map_report(const CoverSpec& spec) {
    if (spec.rank() != 3) throw UnsupportedConfiguration("canonical-map analysis is modeled for Z_2^3 covers only");
    if (spec.surface().blowup_count() > 1)
        throw UnsupportedConfiguration("canonical-map analysis supports at most one blowup");
    const auto& s = spec.surface();
    const auto L = derive_L(spec);
    const auto inv = numerical_invariants(spec, L);
    const auto k = canonical_class(s);

    CanonicalReport r;
    r.eigen_dims = eigenspace_dims(spec, L);
    r.gamma_triv = trivial_subgroup(spec.rank(), r.eigen_dims);
    for (const auto& [chi, d] : r.eigen_dims) r.p_g += d;
    for (const auto& chi : perp(r.gamma_triv)) {
        const auto d = r.eigen_dims.at(chi);
        r.quotient_eigen_dims[chi] = d;
        r.p_g_quotient += d;
        if (d > 0) ++r.nonzero_quotient_eigenspaces;
    }
    if (r.p_g != inv.p_g) throw ConsistencyError("eigenspace dimensions do not sum to p_g");
    r.degree_factor = static_cast<std::int64_t>(r.gamma_triv.order());

    auto& cert = r.birational_certificate;
    std::optional<Character> ample_chi;
    for (const auto& [chi, d] : r.quotient_eigen_dims) {
        if (chi.is_zero() || d == 0) continue;
        if (very_ample_sufficient(s, L.at(chi) + k)) {
            ample_chi = chi;
            break;
        }
    }
    if (ample_chi)
        cert.reasons.push_back("eigenspace chi_" + ample_chi->label() + " is H^0(" + to_string(L.at(*ample_chi) + k) +
                               "), a very ample system on Y (sufficient condition)");
    else
        cert.reasons.push_back("no quotient eigenspace is a known very ample system on Y");
    const bool enough = r.nonzero_quotient_eigenspaces >= 3;
    cert.reasons.push_back("H^0(K_Z) has " + std::to_string(r.nonzero_quotient_eigenspaces) +
                           " nonzero eigenspaces (need >= 3)");
    cert.holds = ample_chi.has_value() && enough;

    if (cert.holds) r.canonical_degree = r.degree_factor;

    r.base_point_analysis = analyze_base_points(spec, L, r.gamma_triv, r.p_g_quotient);
    r.base_points = r.base_point_analysis.on_cover;

    if (r.canonical_degree && r.base_points) {
        const auto moving = inv.k_squared - *r.base_points;
        if (moving % *r.canonical_degree != 0) throw ConsistencyError("image degree is not an integer");
        r.image_degree = moving / *r.canonical_degree;
    }

    if (r.nonzero_quotient_eigenspaces == 2)
        r.remarks.push_back(
            "only two nonzero eigenspaces: the canonical map of Z factors through a further double quotient with "
            "p_g = 0, so the canonical map of X is expected to be 4:1 onto a rational ruled surface (degree 4 not "
            "certified)");
    if (!cert.holds)
        r.remarks.push_back("birationality of the canonical map of Z not certified; canonical degree >= " +
                            std::to_string(r.degree_factor));

    if (s.blowup_count() == 1)
        r.assumptions.push_back("fF+gG-E with f, g >= 1 is taken as very ample on the one-point blowup");
    r.assumptions.push_back("formula K_Z = g^*(A) + C~ assumes nodes of Z are disjoint from C~");
    for (auto& a : assumption_lines(spec)) r.assumptions.push_back(std::move(a));
    return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json eigen_json(const EigenDims& dims) {
    auto arr = nlohmann::json::array();
    for (const auto& [chi, d] : dims) arr.push_back({{"chi", chi}, {"dim", d}});
    return arr;
}

inline void to_json(nlohmann::json& j, const BasePointCandidate& c) {
    j = {{"sigma", c.sigma},
         {"component", c.component},
         {"A", c.residual},
         {"self_intersection", c.self_intersection},
         {"KZ_degree", c.canonical_degree},
         {"genus", rational_json(c.genus)},
         {"pullback_h0", c.pullback_h0},
         {"pg_Z", c.p_g_quotient},
         {"matches", c.matches}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline void to_json(nlohmann::json& j, const CanonicalReport& r) {
    j = {{"eigen_dims", eigen_json(r.eigen_dims)},
         {"gamma_triv", r.gamma_triv},
         {"quotient_eigen_dims", eigen_json(r.quotient_eigen_dims)},
         {"pg", r.p_g},
         {"pg_Z", r.p_g_quotient},
         {"nonzero_quotient_eigenspaces", r.nonzero_quotient_eigenspaces},
         {"degree_factor", r.degree_factor},
         {"birational_certificate",
          {{"holds", r.birational_certificate.holds}, {"reasons", r.birational_certificate.reasons}}},
         {"base_point_analysis",
          {{"candidates", r.base_point_analysis.candidates},
           {"on_quotient", optional_json(r.base_point_analysis.on_quotient)},
           {"notes", r.base_point_analysis.notes}}},
         {"base_points", optional_json(r.base_points)},
         {"image_degree", optional_json(r.image_degree)},
         {"remarks", r.remarks},
         {"assumptions", r.assumptions}};
    if (r.canonical_degree)
        j["canonical_degree"] = *r.canonical_degree;
    else
        j["canonical_degree"] = ">= " + std::to_string(r.degree_factor) + " (uncertified)";
}

}  // namespace abcover
