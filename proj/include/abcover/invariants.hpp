#pragma once

// Numerical invariants of a smooth Z_2^r cover X -> Y from its building data:
//
//   2 K_X     = f^*(W),  W = 2 K_Y + sum D_sigma
//   K_X^2     = 2^r (W/2)^2 = 2^(r-2) W^2
//   p_g(X)    = p_g(Y) + sum_{chi != 0} h0(L_chi + K_Y)
//   chi(O_X)  = 2^r chi(O_Y) + sum_{chi != 0} L_chi (L_chi + K_Y) / 2
//
// Y is rational: p_g(Y) = 0, chi(O_Y) = 1. q is read off Noether's identity.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "abcover/cover.hpp"
#include "abcover/picard.hpp"

namespace abcover {

inline DivClass bicanonical_class(const CoverSpec& spec) {
    return 2 * canonical_class(spec.surface()) + spec.total_branch();
}

struct MinimalityReport {
    bool nef = false;
    std::optional<DivClass> witness;
    bool big = false;
    std::string verdict;
};

/// K_X is nef and big iff W is (pullback along a finite map).
inline MinimalityReport minimality_report(const CoverSpec& spec) {
    const auto w = bicanonical_class(spec);
    const auto nef = is_nef(spec.surface(), w);
    MinimalityReport r;
    r.nef = nef.nef;
    r.witness = nef.witness;
    r.big = intersect(spec.surface(), w, w) > 0;
    r.verdict = (r.nef && r.big) ? "minimal of general type" : "undetermined";
    return r;
}

struct InvariantReport {
    DivClass two_K_class;
    std::int64_t k_squared = 0;
    std::int64_t p_g = 0;
    std::int64_t chi = 0;
    std::int64_t q = 0;
    bool minimal = false;
    bool general_type = false;
};

inline InvariantReport numerical_invariants(const CoverSpec& spec, const CharacterClassMap& L) {
    const auto& s = spec.surface();
    const auto k = canonical_class(s);
    const auto order = static_cast<std::int64_t>(spec.group_order());

    InvariantReport r;
    r.two_K_class = bicanonical_class(spec);

    const auto scaled = order * intersect(s, r.two_K_class, r.two_K_class);
    if (scaled % 4 != 0) throw ConsistencyError("K_X^2 is not an integer");
    r.k_squared = scaled / 4;

    r.p_g = 0;
    r.chi = order;
    for (const auto& [chi, l] : L) {
        r.p_g += h0(s, l + k);
        const auto twice = intersect(s, l, l + k);
        if (twice % 2 != 0)
            throw ConsistencyError("L(L+K) is odd for chi_" + chi.label() + "; invalid building data");
        r.chi += twice / 2;
    }
    r.q = 1 + r.p_g - r.chi;
    if (r.q < 0)
        throw ConsistencyError("negative irregularity (p_g = " + std::to_string(r.p_g) +
                               ", chi = " + std::to_string(r.chi) + ")");
    if (r.chi != 1 - r.q + r.p_g) throw ConsistencyError("Noether identity violated");

    const auto m = minimality_report(spec);
    r.minimal = m.nef && m.big;
    r.general_type = m.nef && m.big;
    return r;
}

inline InvariantReport numerical_invariants(const CoverSpec& spec) { return numerical_invariants(spec, derive_L(spec)); }

inline void to_json(nlohmann::json& j, const InvariantReport& r) {
    j = {{"K2", r.k_squared},       {"pg", r.p_g},         {"chi", r.chi},
         {"q", r.q},                {"minimal", r.minimal}, {"general_type", r.general_type},
         {"W", r.two_K_class}};
}

inline void to_json(nlohmann::json& j, const MinimalityReport& r) {
    j = {{"nef", r.nef}, {"big", r.big}, {"verdict", r.verdict}};
    if (r.witness) j["witness"] = *r.witness;
}

}  // namespace abcover
