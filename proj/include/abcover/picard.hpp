#pragma once

// Picard lattice of P1 x P1 blown up at k distinct general points.
//
// Basis: F = {0} x P1, G = P1 x {0}, E_1..E_k. Intersection form
// F.G = 1, F^2 = G^2 = 0, E_i^2 = -1, every other pairing 0.
// The lattice is torsion free, so linear equivalence of divisors is
// equality of coefficient vectors.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "abcover/errors.hpp"

namespace abcover {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class PointPosition { general, specified_multiplicity_configuration };

struct PointAnnotation {
    std::string label;
    PointPosition position = PointPosition::general;

    bool operator==(const PointAnnotation&) const = default;
};

/// The base rational surface: P1 x P1 blown up at `blowup_count()` points.
class SurfaceModel {
public:
    SurfaceModel() = default;

    explicit SurfaceModel(std::vector<PointAnnotation> points) : points_(std::move(points)) {
        std::set<std::string> seen;
        for (const auto& p : points_) {
            if (!seen.insert(p.label).second)
                throw DomainError("duplicate blowup label '" + p.label + "'");
        }
    }

    static SurfaceModel plane() { return SurfaceModel{}; }

    static SurfaceModel one_point_blowup(std::string label = "E1") {
        return SurfaceModel({PointAnnotation{std::move(label), PointPosition::general}});
    }

    std::size_t blowup_count() const noexcept { return points_.size(); }
    const std::vector<PointAnnotation>& points() const noexcept { return points_; }

    bool all_general() const noexcept {
        return std::all_of(points_.begin(), points_.end(),
                           [](const PointAnnotation& p) { return p.position == PointPosition::general; });
    }

    bool operator==(const SurfaceModel&) const = default;

private:
    std::vector<PointAnnotation> points_;
};

/// A divisor class f F + g G + sum e_i E_i.
struct DivClass {
    std::int64_t f = 0;
    std::int64_t g = 0;
    std::vector<std::int64_t> e;

    static DivClass zero(std::size_t k) { return {0, 0, std::vector<std::int64_t>(k, 0)}; }
    static DivClass fiber_f(std::size_t k) { return {1, 0, std::vector<std::int64_t>(k, 0)}; }
    static DivClass fiber_g(std::size_t k) { return {0, 1, std::vector<std::int64_t>(k, 0)}; }
    static DivClass exceptional(std::size_t k, std::size_t i) {
        DivClass d = zero(k);
        d.e.at(i) = 1;
        return d;
    }

    std::size_t blowup_count() const noexcept { return e.size(); }

    bool is_zero() const noexcept {
        return f == 0 && g == 0 && std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    }

    DivClass& operator+=(const DivClass& o) {
        check_same_length(o);
        f += o.f;
        g += o.g;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
        return *this;
    }
    DivClass& operator-=(const DivClass& o) {
        check_same_length(o);
        f -= o.f;
        g -= o.g;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
        return *this;
    }
    friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
    friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
    friend DivClass operator-(DivClass a) {
        a.f = -a.f;
        a.g = -a.g;
        for (auto& x : a.e) x = -x;
        return a;
    }
    friend DivClass operator*(std::int64_t s, DivClass a) {
        a.f *= s;
        a.g *= s;
        for (auto& x : a.e) x *= s;
        return a;
    }

    bool operator==(const DivClass&) const = default;
    auto operator<=>(const DivClass&) const = default;

private:
    void check_same_length(const DivClass& o) const {
        if (o.e.size() != e.size())
            throw StructuralError("divisor classes live on surfaces with " + std::to_string(e.size()) +
                                  " and " + std::to_string(o.e.size()) + " blowups");
    }
};

/// Human-readable form, e.g. "2F+2G-E1".
inline std::string to_string(const DivClass& d) {
    std::string out;
    auto term = [&out](std::int64_t c, const std::string& sym) {
        if (c == 0) return;
        if (c > 0 && !out.empty()) out += '+';
        if (c == -1)
            out += '-';
        else if (c != 1)
            out += std::to_string(c);
        out += sym;
    };
    term(d.f, "F");
    term(d.g, "G");
    for (std::size_t i = 0; i < d.e.size(); ++i)
        term(d.e[i], d.e.size() == 1 ? std::string("E") : "E" + std::to_string(i + 1));
    return out.empty() ? "0" : out;
}

namespace detail {

inline void require_on(const SurfaceModel& s, const DivClass& d) {
    if (d.e.size() != s.blowup_count())
        throw StructuralError("class " + to_string(d) + " has " + std::to_string(d.e.size()) +
                              " exceptional coefficients but the surface has " +
                              std::to_string(s.blowup_count()) + " blowups");
}

}  // namespace detail

inline std::int64_t intersect(const SurfaceModel& s, const DivClass& a, const DivClass& b) {
    detail::require_on(s, a);
    detail::require_on(s, b);
    std::int64_t v = a.f * b.g + a.g * b.f;
    for (std::size_t i = 0; i < a.e.size(); ++i) v -= a.e[i] * b.e[i];
    return v;
}

inline DivClass canonical_class(const SurfaceModel& s) {
    return {-2, -2, std::vector<std::int64_t>(s.blowup_count(), 1)};
}

/// Curve class through the blown-up points with multiplicities `mults`.
inline DivClass strict_transform(const DivClass& base, std::span<const std::int64_t> mults) {
    if (!base.e.empty())
        throw StructuralError("strict_transform expects a class on P1 x P1, got " + to_string(base));
    DivClass out{base.f, base.g, {}};
    out.e.reserve(mults.size());
    for (auto m : mults) {
        if (m < 0) throw DomainError("negative multiplicity in strict transform");
        out.e.push_back(-m);
    }
    return out;
}

inline DivClass strict_transform(const DivClass& base, std::initializer_list<std::int64_t> mults) {
    return strict_transform(base, std::span<const std::int64_t>(mults.begin(), mults.size()));
}

/// 1 + (C^2 + K.C)/2. A non-integer value means C is not the class of a
/// reduced irreducible curve.
inline Rational adjunction_genus(const SurfaceModel& s, const DivClass& c) {
    const auto k = canonical_class(s);
    return Rational(1) + Rational(intersect(s, c, c) + intersect(s, k, c), 2);
}

struct NefResult {
    bool nef = true;
    std::optional<DivClass> witness;
};

/// Test curves spanning the relevant part of the cone of curves
/// (k = 0: the two rulings; k = 1: the three (-1)-curves and both rulings).
inline std::vector<DivClass> nef_test_curves(const SurfaceModel& s) {
    const auto k = s.blowup_count();
    if (k == 0) return {DivClass::fiber_f(0), DivClass::fiber_g(0)};
    if (k == 1) {
        const auto e = DivClass::exceptional(1, 0);
        const auto f = DivClass::fiber_f(1);
        const auto g = DivClass::fiber_g(1);
        return {f - e, g - e, e, f, g};
    }
    throw UnsupportedConfiguration("nef test is only modeled for at most one blowup (got " +
                                   std::to_string(k) + ")");
}

inline NefResult is_nef(const SurfaceModel& s, const DivClass& d) {
    detail::require_on(s, d);
    for (const auto& c : nef_test_curves(s)) {
        if (intersect(s, d, c) < 0) return {false, c};
    }
    return {};
}

// ---------------------------------------------------------------------------
// h0 by interpolation
// ---------------------------------------------------------------------------

namespace detail {

/// First `count` primes.
inline std::vector<std::int64_t> primes(std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::int64_t c = 2; out.size() < count; ++c) {
        bool prime = true;
        for (auto p : out) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(c);
    }
    return out;
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Rank over Q by Gaussian elimination. The matrix is consumed.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            const Rational factor = m[r][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j) m[r][j] -= factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Interpolation point assigned to the i-th blowup: (p_i, p_{i+1}) over the primes.
inline std::pair<std::int64_t, std::int64_t> interpolation_point(std::size_t i) {
    const auto ps = detail::primes(i + 2);
    return {ps[i], ps[i + 1]};
}

/// Condition matrix for sections of (f, g) vanishing to order c_i at the
/// interpolation points. Columns are the monomials x^a y^b (a <= f, b <= g);
/// each row is one Taylor coefficient at one point.
inline std::vector<std::vector<Rational>> vanishing_conditions(std::int64_t f, std::int64_t g,
                                                               std::span<const std::int64_t> mults) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < mults.size(); ++i) {
        const auto c = mults[i];
        if (c <= 0) continue;
        const auto [px, py] = interpolation_point(i);
        for (std::int64_t dx = 0; dx < c; ++dx) {
            for (std::int64_t dy = 0; dx + dy < c; ++dy) {
                std::vector<Rational> row;
                row.reserve(static_cast<std::size_t>((f + 1) * (g + 1)));
                for (std::int64_t a = 0; a <= f; ++a) {
                    // coefficient of (x-px)^dx in x^a
                    const Integer cx = a >= dx ? detail::binomial(a, dx) * boost::multiprecision::pow(Integer(px), static_cast<unsigned>(a - dx)) : Integer(0);
                    for (std::int64_t b = 0; b <= g; ++b) {
                        const Integer cy = b >= dy ? detail::binomial(b, dy) * boost::multiprecision::pow(Integer(py), static_cast<unsigned>(b - dy)) : Integer(0);
                        row.emplace_back(cx * cy);
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

/// Dimension of the space of global sections of D on a blowup at general points.
///
/// Positive exceptional coefficients are fixed components and are dropped;
/// a negative coefficient -c imposes vanishing to order c at the matching
/// interpolation point.
inline std::int64_t h0(const SurfaceModel& s, const DivClass& d) {
    detail::require_on(s, d);
    if (!s.all_general())
        throw UnsupportedConfiguration("h0 requires every blown-up point in general position");
    if (d.f < 0 || d.g < 0) return 0;
    std::vector<std::int64_t> mults(d.e.size());
    std::transform(d.e.begin(), d.e.end(), mults.begin(), [](auto x) { return x < 0 ? -x : std::int64_t{0}; });
    const std::int64_t sections = (d.f + 1) * (d.g + 1);
    const auto rank = detail::rational_rank(vanishing_conditions(d.f, d.g, mults));
    return std::max<std::int64_t>(0, sections - static_cast<std::int64_t>(rank));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const DivClass& d) { j = {{"f", d.f}, {"g", d.g}, {"e", d.e}}; }

inline void from_json(const nlohmann::json& j, DivClass& d) {
    if (!j.is_object()) throw MalformedInput("divisor class must be an object {\"f\",\"g\",\"e\"}");
    d.f = j.at("f").get<std::int64_t>();
    d.g = j.at("g").get<std::int64_t>();
    d.e = j.contains("e") ? j.at("e").get<std::vector<std::int64_t>>() : std::vector<std::int64_t>{};
}

inline std::string to_string(PointPosition p) {
    return p == PointPosition::general ? "general" : "specified-multiplicity-configuration";
}

inline void to_json(nlohmann::json& j, const SurfaceModel& s) {
    auto blowups = nlohmann::json::array();
    for (const auto& p : s.points()) blowups.push_back({{"label", p.label}, {"position", to_string(p.position)}});
    j = {{"blowups", blowups}};
}

inline void from_json(const nlohmann::json& j, SurfaceModel& s) {
    std::vector<PointAnnotation> pts;
    if (j.contains("blowups")) {
        for (const auto& b : j.at("blowups")) {
            PointAnnotation p;
            p.label = b.at("label").get<std::string>();
            const auto pos = b.value("position", std::string("general"));
            if (pos == "general")
                p.position = PointPosition::general;
            else if (pos == "specified-multiplicity-configuration")
                p.position = PointPosition::specified_multiplicity_configuration;
            else
                throw MalformedInput("unknown point position '" + pos + "'");
            pts.push_back(std::move(p));
        }
    }
    try {
        s = SurfaceModel(std::move(pts));
    } catch (const DomainError& e) {
        throw MalformedInput(e.what());
    }
}

/// Integers serialize as numbers, everything else as "p/q".
inline nlohmann::json rational_json(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).convert_to<std::int64_t>();
    return r.str();
}

}  // namespace abcover
