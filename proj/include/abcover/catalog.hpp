#pragma once

// The three Z_2^3 families with canonical map of degree 2, and the table
// of their invariants.
//
//   main  Y = P1 x P1; D_100, D_101 in |2F+2G|, D_110 in |2mF|, D_111 in |2nG|.
//   var1  Y = blowup at P, all four components through P (ordinary quadruple
//         point of B); strict transforms with multiplicities (1,1,1,1).
//   var2  Y = blowup at P, D_100 nodal at P, D_101 and D_110 through P,
//         D_111 not; multiplicities (2,1,1,0) and D_011 = E.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "abcover/canonical.hpp"
#include "abcover/cover.hpp"
#include "abcover/invariants.hpp"
#include "abcover/picard.hpp"

namespace abcover {

enum class Variant { main, var1, var2 };

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::main: return "main";
        case Variant::var1: return "var1";
        case Variant::var2: return "var2";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "main") return Variant::main;
    if (s == "var1") return Variant::var1;
    if (s == "var2") return Variant::var2;
    throw DomainError("unknown variant '" + s + "' (expected main, var1 or var2)");
}

inline constexpr Variant all_variants[] = {Variant::main, Variant::var1, Variant::var2};

inline CoverSpec family(Variant variant, std::int64_t m, std::int64_t n) {
    if (m < 1 || n < 1) throw DomainError("family parameters need m, n >= 1");
    const auto e = [](unsigned i) { return GroupElement::from_bits({int(i >> 2 & 1), int(i >> 1 & 1), int(i & 1)}); };
    const DivClass conic{2, 2, {}};
    const DivClass f_fibers{2 * m, 0, {}};
    const DivClass g_fibers{0, 2 * n, {}};

    CoverAssumptions assume{true, true, {}};
    if (variant == Variant::main) {
        return CoverSpec(SurfaceModel::plane(), 3,
                         {{e(0b100), conic, {}},
                          {e(0b101), conic, {}},
                          {e(0b110), f_fibers, {true, true, "union of 2m fibers of the first ruling"}},
                          {e(0b111), g_fibers, {true, true, "union of 2n fibers of the second ruling"}}},
                         assume);
    }

    const auto surface = SurfaceModel::one_point_blowup("P");
    if (variant == Variant::var1) {
        assume.special_points.push_back("P: ordinary quadruple point of B through D_100, D_101, D_110, D_111");
        return CoverSpec(surface, 3,
                         {{e(0b100), strict_transform(conic, {1}), {true, true, "strict transform, through P"}},
                          {e(0b101), strict_transform(conic, {1}), {true, true, "strict transform, through P"}},
                          {e(0b110), strict_transform(f_fibers, {1}), {true, true, "strict transform, through P"}},
                          {e(0b111), strict_transform(g_fibers, {1}), {true, true, "strict transform, through P"}}},
                         assume);
    }

    assume.special_points.push_back("P: node of D_100, with D_101 and D_110 through P (ordinary quadruple point of B)");
    return CoverSpec(
        surface, 3,
        {{e(0b011), DivClass::exceptional(1, 0), {true, true, "exceptional curve over P"}},
         {e(0b100), strict_transform(conic, {2}), {true, true, "strict transform of a curve with a node at P"}},
         {e(0b101), strict_transform(conic, {1}), {true, true, "strict transform, through P"}},
         {e(0b110), strict_transform(f_fibers, {1}), {true, true, "strict transform, through P"}},
         {e(0b111), strict_transform(g_fibers, {0}), {true, true, "strict transform, avoids P"}}},
        assume);
}

struct FamilyRow {
    Variant variant = Variant::main;
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t K2 = 0;
    std::int64_t pg = 0;
    std::int64_t q = 0;
    std::optional<std::int64_t> image_degree;
    std::optional<bool> base_point_free;
    std::optional<std::int64_t> canonical_degree;
    std::optional<std::string> remark;
};

/// Closed-form row for m, n >= 2.
inline FamilyRow expected_row(Variant v, std::int64_t m, std::int64_t n) {
    FamilyRow r;
    r.variant = v, r.m = m, r.n = n;
    const auto mn = m * n;
    r.q = 0;
    r.canonical_degree = 2;
    switch (v) {
        case Variant::main:
            r.K2 = 16 * mn, r.pg = 2 * mn + 3, r.image_degree = 8 * mn, r.base_point_free = true;
            break;
        case Variant::var1:
            r.K2 = 16 * mn - 8, r.pg = 2 * mn + 2, r.image_degree = 8 * mn - 4, r.base_point_free = true;
            break;
        case Variant::var2:
            r.K2 = 16 * mn - 2, r.pg = 2 * mn + 2, r.image_degree = 8 * mn - 2, r.base_point_free = false;
            break;
    }
    return r;
}

/// Full pipeline for one family member: validate, invariants, canonical map.
inline FamilyRow analyze_family(Variant v, std::int64_t m, std::int64_t n) {
    const auto spec = family(v, m, n);
    const auto check = validate(spec);
    if (!check.ok()) throw TableIntegrityError(to_string(v) + "(" + std::to_string(m) + "," + std::to_string(n) + "): building data invalid");
    const auto inv = numerical_invariants(spec);
    const auto can = canonical_map_report(spec);
    FamilyRow r;
    r.variant = v, r.m = m, r.n = n;
    r.K2 = inv.k_squared, r.pg = inv.p_g, r.q = inv.q;
    r.canonical_degree = can.canonical_degree;
    r.image_degree = can.image_degree;
    if (can.base_points) r.base_point_free = *can.base_points == 0;
    if (!can.canonical_degree && can.nonzero_quotient_eigenspaces == 2)
        r.remark = "degree 4 onto rational ruled surface";
    return r;
}

struct IntRange {
    std::int64_t lo = 2;
    std::int64_t hi = 2;
};

inline std::vector<FamilyRow> theorem_table(IntRange ms, IntRange ns) {
    if (ms.lo > ms.hi || ns.lo > ns.hi) throw DomainError("empty parameter range");
    if (ms.lo < 1 || ns.lo < 1) throw DomainError("family parameters need m, n >= 1");
    std::vector<FamilyRow> rows;
    for (auto v : all_variants) {
        for (auto m = ms.lo; m <= ms.hi; ++m) {
            for (auto n = ns.lo; n <= ns.hi; ++n) {
                auto row = analyze_family(v, m, n);
                const auto cell = to_string(v) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
                if (m >= 2 && n >= 2) {
                    const auto want = expected_row(v, m, n);
                    if (row.K2 != want.K2 || row.pg != want.pg || row.q != want.q ||
                        row.image_degree != want.image_degree || row.base_point_free != want.base_point_free ||
                        row.canonical_degree != want.canonical_degree)
                        throw TableIntegrityError("table cell " + cell + " disagrees with the closed form");
                } else if (!row.remark) {
                    throw TableIntegrityError("table cell " + cell + " should carry the degree-4 remark");
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

inline void to_json(nlohmann::json& j, const FamilyRow& r) {
    j = {{"variant", to_string(r.variant)},
         {"m", r.m},
         {"n", r.n},
         {"K2", r.K2},
         {"pg", r.pg},
         {"q", r.q},
         {"image_degree", optional_json(r.image_degree)},
         {"base_point_free", optional_json(r.base_point_free)},
         {"canonical_degree", optional_json(r.canonical_degree)}};
    if (r.remark) j["remark"] = *r.remark;
}

}  // namespace abcover
