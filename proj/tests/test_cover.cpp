#include <gtest/gtest.h>

#include <random>

#include "abcover/catalog.hpp"
#include "abcover/cover.hpp"

using namespace abcover;

namespace {

GroupElement el(std::vector<int> b) { return GroupElement::from_bits(b); }
Character ch(std::vector<int> b) { return Character::from_bits(b); }
DivClass cls(std::int64_t f, std::int64_t g, std::vector<std::int64_t> e = {}) { return {f, g, std::move(e)}; }

const Subgroup gamma001 = Subgroup::span(3, {el({0, 0, 1})});

}  // namespace

TEST(DeriveL, MainFamily) {
    const auto L = derive_L(family(Variant::main, 2, 2));
    EXPECT_EQ(L.at(ch({1, 0, 0})), cls(4, 4));
    EXPECT_EQ(L.at(ch({0, 1, 0})), cls(2, 2));
    EXPECT_EQ(L.at(ch({0, 0, 1})), cls(1, 3));
    EXPECT_EQ(L.size(), 7u);
}

TEST(DeriveL, MainFamilyTableForAllParameters) {
    for (std::int64_t m = 1; m <= 6; ++m)
        for (std::int64_t n = 1; n <= 6; ++n) {
            const auto L = derive_L(family(Variant::main, m, n));
            EXPECT_EQ(L.at(ch({1, 0, 0})), cls(m + 2, n + 2));
            EXPECT_EQ(L.at(ch({0, 1, 0})), cls(m, n));
            EXPECT_EQ(L.at(ch({1, 1, 0})), cls(2, 2));
            EXPECT_EQ(L.at(ch({0, 0, 1})), cls(1, n + 1));
            EXPECT_EQ(L.at(ch({1, 0, 1})), cls(m + 1, 1));
            EXPECT_EQ(L.at(ch({0, 1, 1})), cls(m + 1, 1));
            EXPECT_EQ(L.at(ch({1, 1, 1})), cls(1, n + 1));
        }
}

TEST(DeriveL, Variation2DropsE) {
    const auto L = derive_L(family(Variant::var2, 2, 2));
    EXPECT_EQ(L.at(ch({0, 1, 0})), cls(2, 2, {0}));
    EXPECT_EQ(L.at(ch({0, 0, 1})), cls(1, 3, {0}));
    EXPECT_EQ(L.at(ch({1, 0, 0})), cls(4, 4, {-2}));
    EXPECT_EQ(L.at(ch({1, 1, 1})), cls(1, 3, {-1}));
}

TEST(DeriveL, SingleComponentIsDegenerate) {
    const CoverSpec spec(SurfaceModel::plane(), 3, {{el({1, 0, 0}), cls(2, 0), {}}});
    EXPECT_THROW(derive_L(spec), DegenerateCover);
}

TEST(DeriveL, OddSumNamesCharacter) {
    const auto spec = family(Variant::main, 2, 2).with_branch_class(el({1, 0, 0}), cls(2, 3));
    try {
        derive_L(spec);
        FAIL() << "expected NotTwoDivisible";
    } catch (const NotTwoDivisible& e) {
        EXPECT_NE(std::string(e.what()).find("chi_100"), std::string::npos);
    }
}

TEST(Validate, CatalogSpecsPass) {
    for (auto v : all_variants)
        for (std::int64_t m = 1; m <= 10; ++m)
            for (std::int64_t n = 1; n <= 10; ++n) {
                const auto rep = validate(family(v, m, n));
                EXPECT_EQ(rep.relations.size(), 7u);
                EXPECT_TRUE(rep.ok()) << to_string(v) << " " << m << " " << n;
                for (const auto& r : rep.relations) EXPECT_TRUE(r.residual.is_zero());
            }
}

TEST(Validate, PerturbedClassFailsWithOddResidual) {
    const auto spec = family(Variant::main, 2, 2).with_branch_class(el({1, 0, 0}), cls(2, 3));
    const auto rep = validate(spec);
    EXPECT_FALSE(rep.ok());
    const auto failing = rep.failing_characters();
    EXPECT_NE(std::find(failing.begin(), failing.end(), ch({1, 0, 0})), failing.end());
    for (const auto& r : rep.relations) {
        if (r.chi == ch({1, 0, 0})) {
            EXPECT_EQ(r.residual, cls(0, 1));
        }
    }
    // Exactly the characters nontrivial on (1,0,0) are affected.
    for (const auto& r : rep.relations) EXPECT_EQ(r.pass, pair(r.chi, el({1, 0, 0})) == 1);
}

TEST(Validate, EmptyBranchIsDegenerateEverywhere) {
    const CoverSpec spec(SurfaceModel::plane(), 3, {});
    const auto rep = validate(spec);
    EXPECT_TRUE(rep.relations_ok());
    EXPECT_FALSE(rep.nontrivial_ok());
    for (const auto& n : rep.nontriviality) EXPECT_FALSE(n.nontrivial);
    EXPECT_THROW(derive_L(spec), DegenerateCover);
}

TEST(Validate, DeclaredLIsChecked) {
    auto L = derive_L(family(Variant::main, 2, 2));
    L[ch({0, 1, 0})] = cls(2, 3);
    const auto base = family(Variant::main, 2, 2);
    const CoverSpec spec(base.surface(), 3, base.branch(), base.assumptions(), L);
    const auto rep = validate(spec);
    EXPECT_EQ(rep.failing_characters(), std::vector<Character>{ch({0, 1, 0})});
}

TEST(Validate, EchoesAssumptions) {
    const auto rep = validate(family(Variant::var1, 2, 2));
    bool quadruple = false;
    for (const auto& a : rep.assumptions) quadruple = quadruple || a.find("quadruple") != std::string::npos;
    EXPECT_TRUE(quadruple);
}

TEST(Validate, RelationSymmetry) {
    // Each D_sigma enters exactly 2^(r-1) relations.
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::int64_t> coef(0, 7);
    for (unsigned r : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<BranchComponent> branch;
            for (const auto& s : GroupElement::all(r))
                if (!s.is_zero() && coef(rng) % 2) branch.push_back({s, cls(coef(rng), coef(rng), {-coef(rng)}), {}});
            const CoverSpec spec(SurfaceModel::one_point_blowup(), r, branch);
            auto lhs = DivClass::zero(1);
            for (const auto& chi : spec.nontrivial_characters()) lhs += relation_sum(spec, chi);
            EXPECT_EQ(lhs, static_cast<std::int64_t>(1u << (r - 1)) * spec.total_branch());
        }
    }
    for (auto v : all_variants) {
        const auto spec = family(v, 3, 4);
        auto lhs = DivClass::zero(spec.surface().blowup_count());
        for (const auto& [chi, l] : derive_L(spec)) lhs += 2 * l;
        EXPECT_EQ(lhs, 4 * spec.total_branch());
    }
}

TEST(CoverSpec, RejectsBadBranchData) {
    const auto p0 = SurfaceModel::plane();
    EXPECT_THROW(CoverSpec(p0, 3, {{el({0, 0, 0}), cls(2, 2), {}}}), DomainError);
    EXPECT_THROW(CoverSpec(p0, 3, {{el({1, 0, 0}), cls(2, 2), {}}, {el({1, 0, 0}), cls(2, 0), {}}}), DomainError);
    EXPECT_THROW(CoverSpec(p0, 3, {{el({1, 0}), cls(2, 2), {}}}), StructuralError);
    EXPECT_THROW(CoverSpec(p0, 3, {{el({1, 0, 0}), cls(2, 2, {-1}), {}}}), StructuralError);
    EXPECT_THROW(CoverSpec(p0, 3, {{el({1, 0, 0}), cls(-1, 2), {}}}), DomainError);
}

TEST(QuotientInertia, Variation2) {
    const auto groups = quotient_inertia(family(Variant::var2, 2, 2), gamma001);
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups.at(el({1, 0})), (std::vector<GroupElement>{el({1, 0, 0}), el({1, 0, 1})}));
    EXPECT_EQ(groups.at(el({1, 1})), (std::vector<GroupElement>{el({1, 1, 0}), el({1, 1, 1})}));
    EXPECT_EQ(groups.at(el({0, 1})), (std::vector<GroupElement>{el({0, 1, 1})}));
}

TEST(QuotientInertia, TrivialAndWholeSubgroup) {
    const auto spec = family(Variant::var2, 2, 2);
    const auto alone = quotient_inertia(spec, Subgroup::trivial(3));
    EXPECT_EQ(alone.size(), spec.branch().size());
    for (const auto& [img, sigmas] : alone) EXPECT_EQ(sigmas.size(), 1u);
    EXPECT_TRUE(quotient_inertia(spec, Subgroup::whole(3)).empty());
}

TEST(QuotientNodes, Examples) {
    EXPECT_EQ(quotient_nodes(family(Variant::var2, 2, 2), gamma001), 44);
    EXPECT_EQ(quotient_nodes(family(Variant::main, 2, 2), gamma001), 48);
    const CoverSpec lonely(SurfaceModel::plane(), 3,
                           {{el({1, 0, 0}), cls(2, 2), {}}, {el({0, 1, 0}), cls(2, 2), {}}, {el({0, 0, 1}), cls(2, 2), {}}},
                           {true, true, {}});
    EXPECT_EQ(quotient_nodes(lonely, gamma001), 0);
}

TEST(QuotientNodes, Variation2ClosedForm) {
    for (std::int64_t m = 2; m <= 10; ++m)
        for (std::int64_t n = 2; n <= 10; ++n)
            EXPECT_EQ(quotient_nodes(family(Variant::var2, m, n), gamma001), 8 * m * n + 12);
}

TEST(QuotientNodes, InvariantUnderRelabelingWithinClass) {
    const auto spec = family(Variant::var2, 3, 2);
    const auto a = spec.branch_class(el({1, 0, 0}));
    const auto b = spec.branch_class(el({1, 0, 1}));
    const auto swapped = spec.with_branch_class(el({1, 0, 0}), b).with_branch_class(el({1, 0, 1}), a);
    EXPECT_EQ(quotient_nodes(swapped, gamma001), quotient_nodes(spec, gamma001));
}

TEST(QuotientNodes, UnsupportedConfigurations) {
    EXPECT_THROW(quotient_nodes(family(Variant::main, 2, 2), Subgroup::trivial(3)), UnsupportedConfiguration);
    const auto base = family(Variant::main, 2, 2);
    const CoverSpec no_flags(base.surface(), 3, base.branch(), {});
    EXPECT_THROW(quotient_nodes(no_flags, gamma001), UnsupportedConfiguration);
}

TEST(Json, SpecRoundTripAndSchema) {
    for (auto v : all_variants) {
        const auto spec = family(v, 2, 3);
        const nlohmann::json j = spec;
        EXPECT_EQ(cover_spec_from_json(j), spec);
    }
    const auto doc = nlohmann::json::parse(R"({"rank":3,"surface":{"blowups":[{"label":"E1","position":"general"}]},
        "branch":[{"sigma":[1,0,0],"class":{"f":2,"g":2,"e":[-2]},"flags":{"smooth":true,"reduced":true}}],
        "assumptions":{"pairwise_transversal":true,"max_two_through_any_point":true}})");
    const auto spec = cover_spec_from_json(doc);
    EXPECT_EQ(spec.surface().blowup_count(), 1u);
    EXPECT_EQ(spec.branch_class(el({1, 0, 0})), cls(2, 2, {-2}));
    EXPECT_TRUE(spec.assumptions().pairwise_transversal);
}

TEST(Json, MalformedSpecs) {
    auto bad = [](const char* text) { return cover_spec_from_json(nlohmann::json::parse(text)); };
    EXPECT_THROW(bad(R"([1,2])"), MalformedInput);
    EXPECT_THROW(bad(R"({"rank":3,"branch":[{"sigma":[1,0],"class":{"f":1,"g":1,"e":[]}}]})"), MalformedInput);
    EXPECT_THROW(bad(R"({"rank":3,"branch":[{"sigma":[1,0,0],"class":{"f":1,"g":1,"e":[1]}}]})"), MalformedInput);
    EXPECT_THROW(bad(R"({"rank":3,"branch":[{"sigma":[1,0,0]}]})"), MalformedInput);
    EXPECT_THROW(bad(R"({"surface":{"blowups":[{"label":"P","position":"weird"}]}})"), MalformedInput);
    EXPECT_THROW(bad(R"({"rank":"three"})"), MalformedInput);
}
