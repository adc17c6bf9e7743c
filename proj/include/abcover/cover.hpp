#pragma once

// Building data of Z_2^r covers of a blown-up P1 x P1.
//
// A cover is given by branch classes D_sigma (sigma != 0) and line-bundle
// classes L_chi (chi != 0) subject to
//
//     2 L_chi = sum over { sigma : chi(sigma) = -1 } of D_sigma.
//
// Pic is torsion free here, so the relation is checked coefficientwise and
// L_chi is recovered by halving. Geometric hypotheses (smooth components,
// transversality, at most two components through a point) are declared flags
// and are echoed, never verified.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "abcover/errors.hpp"
#include "abcover/group.hpp"
#include "abcover/picard.hpp"

namespace abcover {

struct BranchFlags {
    bool smooth = true;
    bool reduced = true;
    std::string notes;

    bool operator==(const BranchFlags&) const = default;
};

struct BranchComponent {
    GroupElement sigma;
    DivClass cls;
    BranchFlags flags;

    bool operator==(const BranchComponent&) const = default;
};

struct CoverAssumptions {
    bool pairwise_transversal = false;
    bool max_two_through_any_point = false;
    std::vector<std::string> special_points;

    bool operator==(const CoverAssumptions&) const = default;
};

using CharacterClassMap = std::map<Character, DivClass>;

class CoverSpec {
public:
    CoverSpec(SurfaceModel surface, unsigned rank, std::vector<BranchComponent> branch,
              CoverAssumptions assumptions = {}, std::optional<CharacterClassMap> declared_L = std::nullopt)
        : surface_(std::move(surface)),
          rank_(rank),
          branch_(std::move(branch)),
          assumptions_(std::move(assumptions)),
          declared_L_(std::move(declared_L)) {
        if (rank_ == 0 || rank_ > max_group_rank)
            throw DomainError("cover rank must be in [1, " + std::to_string(max_group_rank) + "]");
        std::sort(branch_.begin(), branch_.end(),
                  [](const auto& a, const auto& b) { return a.sigma < b.sigma; });
        for (std::size_t i = 0; i < branch_.size(); ++i) {
            const auto& c = branch_[i];
            if (c.sigma.rank() != rank_)
                throw StructuralError("branch element " + c.sigma.label() + " has wrong rank");
            if (c.sigma.is_zero()) throw DomainError("branch data is indexed by nonzero group elements");
            if (i > 0 && branch_[i - 1].sigma == c.sigma)
                throw DomainError("branch element " + c.sigma.label() + " listed twice");
            detail::require_on(surface_, c.cls);
            if (c.cls.f < 0 || c.cls.g < 0)
                throw DomainError("branch class " + to_string(c.cls) + " for " + c.sigma.label() +
                                  " is not effective");
        }
        if (declared_L_) {
            for (const auto& [chi, cls] : *declared_L_) {
                if (chi.rank() != rank_) throw StructuralError("declared L has wrong character rank");
                if (chi.is_zero()) throw DomainError("L is indexed by nontrivial characters");
                detail::require_on(surface_, cls);
            }
        }
    }

    const SurfaceModel& surface() const noexcept { return surface_; }
    unsigned rank() const noexcept { return rank_; }
    std::size_t group_order() const noexcept { return std::size_t{1} << rank_; }
    const std::vector<BranchComponent>& branch() const noexcept { return branch_; }
    const CoverAssumptions& assumptions() const noexcept { return assumptions_; }
    const std::optional<CharacterClassMap>& declared_L() const noexcept { return declared_L_; }

    /// D_sigma, or the zero class when sigma carries no branch component.
    DivClass branch_class(const GroupElement& sigma) const {
        for (const auto& c : branch_)
            if (c.sigma == sigma) return c.cls;
        return DivClass::zero(surface_.blowup_count());
    }

    /// B = sum of all D_sigma.
    DivClass total_branch() const {
        auto b = DivClass::zero(surface_.blowup_count());
        for (const auto& c : branch_) b += c.cls;
        return b;
    }

    /// Copy with the class of one component replaced.
    CoverSpec with_branch_class(const GroupElement& sigma, DivClass cls) const {
        auto branch = branch_;
        bool found = false;
        for (auto& c : branch) {
            if (c.sigma == sigma) {
                c.cls = cls;
                found = true;
            }
        }
        if (!found) branch.push_back({sigma, std::move(cls), {}});
        return CoverSpec(surface_, rank_, std::move(branch), assumptions_, declared_L_);
    }

    std::vector<Character> nontrivial_characters() const {
        auto all = Character::all(rank_);
        return {all.begin() + 1, all.end()};
    }

    bool operator==(const CoverSpec&) const = default;

private:
    SurfaceModel surface_;
    unsigned rank_;
    std::vector<BranchComponent> branch_;
    CoverAssumptions assumptions_;
    std::optional<CharacterClassMap> declared_L_;
};

/// S_chi = sum of D_sigma over sigma with chi(sigma) = -1.
inline DivClass relation_sum(const CoverSpec& spec, const Character& chi) {
    auto s = DivClass::zero(spec.surface().blowup_count());
    for (const auto& c : spec.branch())
        if (pair(chi, c.sigma) == -1) s += c.cls;
    return s;
}

namespace detail {

inline std::int64_t floor_half(std::int64_t x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

inline DivClass floor_half(const DivClass& d) {
    DivClass h{floor_half(d.f), floor_half(d.g), {}};
    for (auto x : d.e) h.e.push_back(floor_half(x));
    return h;
}

inline bool even(const DivClass& d) {
    auto ev = [](std::int64_t x) { return x % 2 == 0; };
    return ev(d.f) && ev(d.g) && std::all_of(d.e.begin(), d.e.end(), ev);
}

inline std::string join_labels(const std::vector<Character>& chars) {
    std::string s;
    for (const auto& c : chars) s += (s.empty() ? "chi_" : ", chi_") + c.label();
    return s;
}

}  // namespace detail

/// L_chi = S_chi / 2 for every nontrivial chi.
inline CharacterClassMap derive_L(const CoverSpec& spec) {
    CharacterClassMap out;
    std::vector<Character> odd;
    std::vector<Character> zero;
    for (const auto& chi : spec.nontrivial_characters()) {
        const auto s = relation_sum(spec, chi);
        if (!detail::even(s)) {
            odd.push_back(chi);
            continue;
        }
        auto l = detail::floor_half(s);
        if (l.is_zero()) zero.push_back(chi);
        out.emplace(chi, std::move(l));
    }
    if (!odd.empty())
        throw NotTwoDivisible("relation sum is not divisible by 2 for " + detail::join_labels(odd));
    if (!zero.empty())
        throw DegenerateCover("L is trivial for " + detail::join_labels(zero) +
                              "; nontrivial characters need nontrivial L");
    return out;
}

struct RelationCheck {
    Character chi;
    DivClass sum;       // S_chi
    DivClass L;         // declared, or floor(S_chi / 2)
    DivClass residual;  // S_chi - 2 L
    bool pass = false;
};

struct NontrivialityCheck {
    Character chi;
    bool nontrivial = false;
};

struct ValidationReport {
    std::vector<RelationCheck> relations;
    std::vector<NontrivialityCheck> nontriviality;
    bool branch_reduced_flag = true;
    std::vector<std::string> assumptions;

    std::size_t relations_passed() const {
        return static_cast<std::size_t>(
            std::count_if(relations.begin(), relations.end(), [](const auto& r) { return r.pass; }));
    }
    bool relations_ok() const { return relations_passed() == relations.size(); }
    bool nontrivial_ok() const {
        return std::all_of(nontriviality.begin(), nontriviality.end(), [](const auto& n) { return n.nontrivial; });
    }
    bool ok() const { return relations_ok() && nontrivial_ok(); }

    std::vector<Character> failing_characters() const {
        std::vector<Character> out;
        for (const auto& r : relations)
            if (!r.pass) out.push_back(r.chi);
        return out;
    }
};

inline std::vector<std::string> assumption_lines(const CoverSpec& spec) {
    const auto& a = spec.assumptions();
    std::vector<std::string> out;
    auto yn = [](bool b) { return b ? std::string("declared") : std::string("NOT declared"); };
    out.push_back("branch components pairwise transversal: " + yn(a.pairwise_transversal) + " (unverified)");
    out.push_back("at most two branch components through any point: " + yn(a.max_two_through_any_point) +
                  " (unverified)");
    for (const auto& c : spec.branch()) {
        out.push_back("D_" + c.sigma.label() + " = " + to_string(c.cls) + ": smooth " +
                      (c.flags.smooth ? "declared" : "NOT declared") + ", reduced " +
                      (c.flags.reduced ? "declared" : "NOT declared") + " (unverified)" +
                      (c.flags.notes.empty() ? "" : "; " + c.flags.notes));
    }
    for (const auto& p : a.special_points) out.push_back("special point: " + p + " (unverified)");
    return out;
}

/// Report-style check of every relation; never throws on bad data.
inline ValidationReport validate(const CoverSpec& spec) {
    ValidationReport rep;
    for (const auto& chi : spec.nontrivial_characters()) {
        RelationCheck r{chi, relation_sum(spec, chi), {}, {}, false};
        const auto& declared = spec.declared_L();
        if (declared && declared->contains(chi))
            r.L = declared->at(chi);
        else
            r.L = detail::floor_half(r.sum);
        r.residual = r.sum - 2 * r.L;
        r.pass = r.residual.is_zero();
        rep.nontriviality.push_back({chi, !r.L.is_zero()});
        rep.relations.push_back(std::move(r));
    }
    rep.branch_reduced_flag = std::all_of(spec.branch().begin(), spec.branch().end(),
                                          [](const auto& c) { return c.flags.reduced; });
    rep.assumptions = assumption_lines(spec);
    // Reducedness of B is a property of actual curves; two components sharing
    // a class can only be flagged.
    for (std::size_t i = 0; i < spec.branch().size(); ++i)
        for (std::size_t j = i + 1; j < spec.branch().size(); ++j)
            if (spec.branch()[i].cls == spec.branch()[j].cls)
                rep.assumptions.push_back("D_" + spec.branch()[i].sigma.label() + " and D_" +
                                          spec.branch()[j].sigma.label() +
                                          " share a class; B reduced only if they are distinct curves (unverified)");
    return rep;
}

/// Branch elements grouped by their nonzero image in Z_2^r / gamma.
inline std::map<GroupElement, std::vector<GroupElement>> quotient_inertia(const CoverSpec& spec,
                                                                          const Subgroup& gamma) {
    GroupElement::require_same_rank(spec.rank(), gamma.rank());
    const QuotientMap q(gamma);
    std::map<GroupElement, std::vector<GroupElement>> out;
    for (const auto& c : spec.branch()) {
        const auto img = q.image(c.sigma);
        if (!img.is_zero()) out[img].push_back(c.sigma);
    }
    return out;
}

/// Nodes of X / gamma over the intersection points of branch components with
/// the same inertia image; each base point contributes |quotient| / 2 nodes.
inline std::int64_t quotient_nodes(const CoverSpec& spec, const Subgroup& gamma) {
    const QuotientMap q(gamma);
    if (q.quotient_order() != 4)
        throw UnsupportedConfiguration("node count is modeled only for a quotient of order 4 (got " +
                                       std::to_string(q.quotient_order()) + ")");
    if (!spec.assumptions().pairwise_transversal)
        throw UnsupportedConfiguration("node count requires pairwise transversal branch components");
    const auto per_point = static_cast<std::int64_t>(q.quotient_order() / 2);
    std::int64_t nodes = 0;
    for (const auto& [img, sigmas] : quotient_inertia(spec, gamma)) {
        for (std::size_t i = 0; i < sigmas.size(); ++i) {
            for (std::size_t j = i + 1; j < sigmas.size(); ++j) {
                const auto meet =
                    intersect(spec.surface(), spec.branch_class(sigmas[i]), spec.branch_class(sigmas[j]));
                if (meet < 0)
                    throw ConsistencyError("distinct branch components D_" + sigmas[i].label() + " and D_" +
                                           sigmas[j].label() + " meet negatively");
                nodes += meet * per_point;
            }
        }
    }
    return nodes;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json character_map_json(const CharacterClassMap& m) {
    auto arr = nlohmann::json::array();
    for (const auto& [chi, cls] : m) arr.push_back({{"chi", chi}, {"class", cls}});
    return arr;
}

inline void to_json(nlohmann::json& j, const CoverSpec& s) {
    auto branch = nlohmann::json::array();
    for (const auto& c : s.branch()) {
        nlohmann::json flags = {{"smooth", c.flags.smooth}, {"reduced", c.flags.reduced}};
        if (!c.flags.notes.empty()) flags["notes"] = c.flags.notes;
        branch.push_back({{"sigma", c.sigma}, {"class", c.cls}, {"flags", flags}});
    }
    const auto& a = s.assumptions();
    nlohmann::json assumptions = {{"pairwise_transversal", a.pairwise_transversal},
                                  {"max_two_through_any_point", a.max_two_through_any_point}};
    if (!a.special_points.empty()) assumptions["special_points"] = a.special_points;
    j = {{"rank", s.rank()}, {"surface", s.surface()}, {"branch", branch}, {"assumptions", assumptions}};
    if (s.declared_L()) j["L"] = character_map_json(*s.declared_L());
}

/// Parses the CoverSpec document; any defect becomes MalformedInput.
inline CoverSpec cover_spec_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw MalformedInput("cover spec must be a JSON object");
        const auto rank = j.value("rank", 3u);
        SurfaceModel surface;
        if (j.contains("surface")) surface = j.at("surface").get<SurfaceModel>();
        std::vector<BranchComponent> branch;
        if (j.contains("branch")) {
            for (const auto& b : j.at("branch")) {
                BranchComponent c;
                c.sigma = b.at("sigma").get<GroupElement>();
                c.cls = b.at("class").get<DivClass>();
                if (b.contains("flags")) {
                    const auto& fl = b.at("flags");
                    c.flags.smooth = fl.value("smooth", true);
                    c.flags.reduced = fl.value("reduced", true);
                    c.flags.notes = fl.value("notes", std::string{});
                }
                branch.push_back(std::move(c));
            }
        }
        CoverAssumptions a;
        if (j.contains("assumptions")) {
            const auto& aj = j.at("assumptions");
            a.pairwise_transversal = aj.value("pairwise_transversal", false);
            a.max_two_through_any_point = aj.value("max_two_through_any_point", false);
            if (aj.contains("special_points"))
                a.special_points = aj.at("special_points").get<std::vector<std::string>>();
        }
        std::optional<CharacterClassMap> declared;
        if (j.contains("L")) {
            declared.emplace();
            for (const auto& e : j.at("L")) {
                const auto chi = e.at("chi").get<Character>();
                if (!declared->emplace(chi, e.at("class").get<DivClass>()).second)
                    throw MalformedInput("L declared twice for chi_" + chi.label());
            }
        }
        return CoverSpec(std::move(surface), rank, std::move(branch), std::move(a), std::move(declared));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("cover spec: ") + e.what());
    } catch (const StructuralError& e) {
        throw MalformedInput(e.what());
    } catch (const DomainError& e) {
        throw MalformedInput(e.what());
    }
}

inline void to_json(nlohmann::json& j, const ValidationReport& r) {
    auto rel = nlohmann::json::array();
    for (const auto& c : r.relations)
        rel.push_back({{"chi", c.chi}, {"sum", c.sum}, {"L", c.L}, {"residual", c.residual}, {"pass", c.pass}});
    auto nt = nlohmann::json::array();
    for (const auto& c : r.nontriviality) nt.push_back({{"chi", c.chi}, {"nontrivial", c.nontrivial}});
    j = {{"relations", rel},
         {"relations_passed", r.relations_passed()},
         {"relations_total", r.relations.size()},
         {"nontriviality", nt},
         {"branch_reduced_flag", r.branch_reduced_flag},
         {"assumptions", r.assumptions},
         {"ok", r.ok()}};
}

}  // namespace abcover
