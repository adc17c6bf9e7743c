// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Every check is exact integer equality.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "abcover/abcover.hpp"

using namespace abcover;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && pass) detail << what;
        pass = pass && cond;
    }
};

constexpr std::int64_t lo = 2, hi = 6;
const Subgroup gamma001 = Subgroup::span(3, {GroupElement::from_bits({0, 0, 1})});

std::string cell(Variant v, std::int64_t m, std::int64_t n) {
    return to_string(v) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

Character ch(std::vector<int> b) { return Character::from_bits(b); }

void table_reproduction(Outcome& o) {
    const auto rows = theorem_table({lo, hi}, {lo, hi});
    o.expect(rows.size() == 3 * 25, "wrong row count");
    for (const auto& r : rows) {
        const auto mn = r.m * r.n;
        std::int64_t k2 = 0, pg = 0, deg = 0;
        bool bpf = true;
        switch (r.variant) {
            case Variant::main: k2 = 16 * mn, pg = 2 * mn + 3, deg = 8 * mn, bpf = true; break;
            case Variant::var1: k2 = 16 * mn - 8, pg = 2 * mn + 2, deg = 8 * mn - 4, bpf = true; break;
            case Variant::var2: k2 = 16 * mn - 2, pg = 2 * mn + 2, deg = 8 * mn - 2, bpf = false; break;
        }
        o.expect(r.K2 == k2 && r.pg == pg && r.q == 0 && r.image_degree == deg && r.base_point_free == bpf &&
                     r.canonical_degree == 2,
                 cell(r.variant, r.m, r.n));
    }
}

void relations(Outcome& o) {
    for (auto v : all_variants)
        for (auto m = lo; m <= hi; ++m)
            for (auto n = lo; n <= hi; ++n) {
                const auto spec = family(v, m, n);
                const auto rep = validate(spec);
                o.expect(rep.relations.size() == 7 && rep.ok(), cell(v, m, n) + " relations");
                for (const auto& r : rep.relations) o.expect(r.residual.is_zero(), cell(v, m, n) + " residual");
                o.expect(derive_L(spec).size() == 7, cell(v, m, n) + " derive_L");
                for (const auto& b : spec.branch()) {
                    const auto bumped = b.cls + DivClass::fiber_g(b.cls.blowup_count());
                    const auto mutated = validate(spec.with_branch_class(b.sigma, bumped));
                    o.expect(!mutated.relations_ok(), cell(v, m, n) + " mutation of D_" + b.sigma.label());
                }
            }
}

void chi_consistency(Outcome& o) {
    for (auto v : all_variants)
        for (auto m = lo; m <= hi; ++m)
            for (auto n = lo; n <= hi; ++n) {
                const auto inv = numerical_invariants(family(v, m, n));
                o.expect(inv.q == 1 + inv.p_g - inv.chi && inv.q == 0, cell(v, m, n) + " q");
                if (v == Variant::main) o.expect(inv.chi == 2 * m * n + 4, cell(v, m, n) + " chi");
            }
}

void eigenspaces(Outcome& o) {
    for (auto v : all_variants)
        for (auto m = lo; m <= hi; ++m)
            for (auto n = lo; n <= hi; ++n) {
                const auto r = canonical_map_report(family(v, m, n));
                const auto& q = r.quotient_eigen_dims;
                const auto big = v == Variant::main ? (m + 1) * (n + 1) : (m + 1) * (n + 1) - 1;
                const auto sum = v == Variant::main ? 2 * m * n + 3 : 2 * m * n + 2;
                o.expect(q.size() == 4, cell(v, m, n) + " quotient size");
                o.expect(q.at(ch({1, 1, 0})) == 1 && q.at(ch({0, 1, 0})) == (m - 1) * (n - 1) &&
                             q.at(ch({1, 0, 0})) == big && q.at(ch({0, 0, 0})) == 0,
                         cell(v, m, n) + " eigenspace dims");
                o.expect(r.p_g_quotient == sum && r.p_g == sum, cell(v, m, n) + " eigenspace sum");
            }
}

void trivial_subgroups(Outcome& o) {
    for (auto v : all_variants)
        for (auto m = lo; m <= hi; ++m)
            for (auto n = lo; n <= hi; ++n)
                o.expect(trivial_subgroup(family(v, m, n)) == gamma001, cell(v, m, n));
}

void base_point_chain(Outcome& o) {
    const auto y = SurfaceModel::one_point_blowup();
    const auto e = DivClass::exceptional(1, 0);
    for (auto m = lo; m <= hi; ++m)
        for (auto n = lo; n <= hi; ++n) {
            const auto spec = family(Variant::var2, m, n);
            const auto r = canonical_map_report(spec);
            const auto c = cell(Variant::var2, m, n);
            const DivClass a{m, n, {-1}};
            const auto e2 = half_pullback_pairing(y, 4, e, e, {true, true});
            const auto kz_e = half_pullback_pairing(y, 4, a, e, {false, true}) + e2;
            o.expect(e2 == -1, c + " E~^2");
            o.expect(kz_e == 1, c + " K_Z.E~");
            o.expect(Rational(1) + Rational(e2 + kz_e, 2) == 1, c + " genus");
            const auto ph0 = pullback_h0(spec, gamma001, a);
            o.expect(ph0 == 2 * m * n + 1, c + " pullback_h0");
            o.expect(r.p_g_quotient == 2 * m * n + 2 && ph0 < r.p_g_quotient, c + " p_g(Z)");
            o.expect(r.base_points == 2, c + " base points");
            o.expect(quotient_nodes(spec, gamma001) == 8 * m * n + 12, c + " nodes");
            // The report's own chain agrees.
            o.expect(r.base_point_analysis.candidates.size() == 1, c + " candidate count");
            if (!r.base_point_analysis.candidates.empty()) {
                const auto& k = r.base_point_analysis.candidates.front();
                o.expect(k.self_intersection == -1 && k.canonical_degree == 1 && k.genus == 1 &&
                             k.pullback_h0 == 2 * m * n + 1 && k.matches,
                         c + " report chain");
            }
        }
}

void h0_oracle(Outcome& o) {
    const auto y = SurfaceModel::one_point_blowup();
    for (std::int64_t f = 0; f <= 8; ++f)
        for (std::int64_t g = 0; g <= 8; ++g)
            for (std::int64_t c = 0; c <= 3; ++c) {
                const auto got = h0(y, DivClass{f, g, {-c}});
                const auto where = "(" + std::to_string(f) + "," + std::to_string(g) + "," + std::to_string(c) + ")";
                if (c == 0) o.expect(got == (f + 1) * (g + 1), where + " c=0");
                if (f >= c - 1 && g >= c - 1) {
                    const auto closed = std::max<std::int64_t>(0, (f + 1) * (g + 1) - c * (c + 1) / 2);
                    o.expect(got == closed, where + " closed form");
                } else {
                    // Outside the range only the jets x^a y^b with a <= f, b <= g exist.
                    std::int64_t jets = 0;
                    for (std::int64_t a = 0; a <= f; ++a)
                        for (std::int64_t b = 0; b <= g; ++b) jets += (a + b < c);
                    o.expect(got == (f + 1) * (g + 1) - jets, where + " jet count");
                }
            }
}

void remark_check(Outcome& o) {
    for (auto v : all_variants)
        for (auto [m, n] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}, {1, 5}, {2, 1}, {6, 1}}) {
            const auto r = canonical_map_report(family(v, m, n));
            const auto c = cell(v, m, n);
            o.expect(!r.birational_certificate.holds && !r.canonical_degree, c + " certified");
            o.expect(r.nonzero_quotient_eigenspaces == 2, c + " eigenspace count");
            bool remark = false;
            for (const auto& s : r.remarks) remark = remark || s.find("4:1") != std::string::npos;
            o.expect(remark, c + " remark");
        }
    for (const auto& row : theorem_table({1, 1}, {1, 3}))
        o.expect(row.remark.has_value() && !row.canonical_degree, cell(row.variant, row.m, row.n) + " table remark");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"1 family table reproduction, m,n in 2..6", table_reproduction},
        {"2 building-data relations and +G mutation", relations},
        {"3 chi(O) = 2mn+4 (main) and q = 0", chi_consistency},
        {"4 quotient eigenspace dimensions", eigenspaces},
        {"5 trivially acting subgroup = <(0,0,1)>", trivial_subgroups},
        {"6 var2 base-point chain and 8mn+12 nodes", base_point_chain},
        {"7 h0 interpolation vs closed-form oracle", h0_oracle},
        {"8 m=1 or n=1: degree-4 remark, two eigenspaces", remark_check},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            check(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name;
        if (!o.pass) std::cout << "  [first failure: " << o.detail.str() << "]";
        std::cout << "\n";
        failed += o.pass ? 0 : 1;
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << ms << " ms\n";
    return failed == 0 ? 0 : 1;
}
