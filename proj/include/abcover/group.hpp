#pragma once

// Elementary abelian 2-groups Z_2^r and their characters.
//
// Elements and characters are both bit vectors of length r. The first
// coordinate is stored in the most significant bit, so integer order on
// the mask is lexicographic order on the bit string.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "abcover/errors.hpp"

namespace abcover {

inline constexpr unsigned max_group_rank = 16;

template <class Tag>
class BitVector {
public:
    BitVector() = default;

    BitVector(unsigned rank, std::uint32_t mask) : rank_(rank), mask_(mask) {
        if (rank > max_group_rank) throw DomainError("group rank " + std::to_string(rank) + " too large");
        if (rank < 32 && (mask >> rank) != 0) throw DomainError("bit mask wider than rank");
    }

    static BitVector from_bits(const std::vector<int>& bits) {
        if (bits.size() > max_group_rank) throw DomainError("group rank too large");
        std::uint32_t m = 0;
        for (int b : bits) {
            if (b != 0 && b != 1) throw DomainError("bit vectors take values in {0,1}");
            m = (m << 1) | static_cast<std::uint32_t>(b);
        }
        return {static_cast<unsigned>(bits.size()), m};
    }

    static BitVector zero(unsigned rank) { return {rank, 0}; }

    /// Unit vector with a 1 in coordinate `i` (0-based, left to right).
    static BitVector unit(unsigned rank, unsigned i) { return {rank, 1u << (rank - 1 - i)}; }

    unsigned rank() const noexcept { return rank_; }
    std::uint32_t mask() const noexcept { return mask_; }
    bool is_zero() const noexcept { return mask_ == 0; }

    int bit(unsigned i) const noexcept { return static_cast<int>((mask_ >> (rank_ - 1 - i)) & 1u); }

    std::vector<int> bits() const {
        std::vector<int> out(rank_);
        for (unsigned i = 0; i < rank_; ++i) out[i] = bit(i);
        return out;
    }

    /// "100" style label.
    std::string label() const {
        std::string s;
        for (unsigned i = 0; i < rank_; ++i) s += static_cast<char>('0' + bit(i));
        return s;
    }

    friend BitVector operator+(const BitVector& a, const BitVector& b) {
        require_same_rank(a.rank_, b.rank_);
        return {a.rank_, a.mask_ ^ b.mask_};
    }

    bool operator==(const BitVector&) const = default;
    auto operator<=>(const BitVector&) const = default;

    /// Every vector of the given rank in lexicographic order.
    static std::vector<BitVector> all(unsigned rank) {
        std::vector<BitVector> out;
        out.reserve(std::size_t{1} << rank);
        for (std::uint32_t m = 0; m < (1u << rank); ++m) out.emplace_back(rank, m);
        return out;
    }

    static void require_same_rank(unsigned a, unsigned b) {
        if (a != b)
            throw StructuralError("rank mismatch: Z_2^" + std::to_string(a) + " vs Z_2^" + std::to_string(b));
    }

private:
    unsigned rank_ = 0;
    std::uint32_t mask_ = 0;
};

struct ElementTag {};
struct CharacterTag {};

using GroupElement = BitVector<ElementTag>;
using Character = BitVector<CharacterTag>;

/// chi(sigma) = (-1)^(sum j_k a_k).
inline int pair(const Character& chi, const GroupElement& sigma) {
    GroupElement::require_same_rank(chi.rank(), sigma.rank());
    return (std::popcount(chi.mask() & sigma.mask()) & 1) ? -1 : 1;
}

namespace gf2 {

/// Reduced row echelon form (pivot = highest set bit); zero rows dropped.
inline std::vector<std::uint32_t> rref(std::vector<std::uint32_t> rows) {
    std::vector<std::uint32_t> basis;
    for (auto v : rows) {
        for (auto b : basis)
            if (v & std::bit_floor(b)) v ^= b;
        if (v == 0) continue;
        const auto pivot = std::bit_floor(v);
        for (auto& b : basis)
            if (b & pivot) b ^= v;
        basis.push_back(v);
    }
    std::sort(basis.begin(), basis.end(), std::greater<>());
    return basis;
}

/// Basis (in RREF) of { x in F_2^rank : popcount(row & x) even for all rows }.
inline std::vector<std::uint32_t> kernel(const std::vector<std::uint32_t>& rows, unsigned rank) {
    const auto basis = rref(rows);
    std::uint32_t pivots = 0;
    for (auto b : basis) pivots |= std::bit_floor(b);
    std::vector<std::uint32_t> out;
    for (unsigned i = 0; i < rank; ++i) {
        const std::uint32_t free_bit = 1u << i;
        if (pivots & free_bit) continue;
        // Set the free coordinate, then solve each pivot coordinate from its row.
        std::uint32_t x = free_bit;
        for (auto b : basis)
            if (b & free_bit) x |= std::bit_floor(b);
        out.push_back(x);
    }
    return rref(out);
}

}  // namespace gf2

/// A subgroup of Z_2^r, stored by a reduced echelon basis.
class Subgroup {
public:
    Subgroup() = default;

    static Subgroup trivial(unsigned rank) { return Subgroup(rank, {}); }
    static Subgroup whole(unsigned rank) {
        std::vector<GroupElement> gens;
        for (unsigned i = 0; i < rank; ++i) gens.push_back(GroupElement::unit(rank, i));
        return span(rank, gens);
    }

    static Subgroup span(unsigned rank, const std::vector<GroupElement>& generators) {
        std::vector<std::uint32_t> rows;
        for (const auto& g : generators) {
            GroupElement::require_same_rank(rank, g.rank());
            rows.push_back(g.mask());
        }
        return Subgroup(rank, gf2::rref(rows));
    }

    unsigned rank() const noexcept { return rank_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    std::size_t order() const noexcept { return std::size_t{1} << basis_.size(); }

    std::vector<GroupElement> basis() const {
        std::vector<GroupElement> out;
        for (auto b : basis_) out.emplace_back(rank_, b);
        return out;
    }

    bool contains(const GroupElement& g) const {
        GroupElement::require_same_rank(rank_, g.rank());
        auto v = g.mask();
        for (auto b : basis_)
            if (v & std::bit_floor(b)) v ^= b;
        return v == 0;
    }

    /// All elements in lexicographic order.
    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        for (std::uint32_t combo = 0; combo < (1u << basis_.size()); ++combo) {
            std::uint32_t v = 0;
            for (std::size_t i = 0; i < basis_.size(); ++i)
                if (combo & (1u << i)) v ^= basis_[i];
            out.emplace_back(rank_, v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const Subgroup&) const = default;

    const std::vector<std::uint32_t>& basis_masks() const noexcept { return basis_; }

private:
    Subgroup(unsigned rank, std::vector<std::uint32_t> basis) : rank_(rank), basis_(std::move(basis)) {}

    unsigned rank_ = 0;
    std::vector<std::uint32_t> basis_;
};

/// Elements on which every character in `chars` is trivial.
inline Subgroup annihilator(unsigned rank, const std::vector<Character>& chars) {
    std::vector<std::uint32_t> rows;
    for (const auto& c : chars) {
        Character::require_same_rank(rank, c.rank());
        rows.push_back(c.mask());
    }
    std::vector<GroupElement> gens;
    for (auto k : gf2::kernel(rows, rank)) gens.emplace_back(rank, k);
    return Subgroup::span(rank, gens);
}

/// Reduced echelon basis of the characters trivial on `gamma`.
inline std::vector<Character> perp_basis(const Subgroup& gamma) {
    std::vector<Character> out;
    for (auto k : gf2::kernel(gamma.basis_masks(), gamma.rank())) out.emplace_back(gamma.rank(), k);
    return out;
}

/// Characters trivial on `gamma` (the kernel of restriction to gamma), sorted.
inline std::vector<Character> perp(const Subgroup& gamma) {
    const auto basis = perp_basis(gamma);
    std::vector<Character> out;
    for (std::uint32_t combo = 0; combo < (1u << basis.size()); ++combo) {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (combo & (1u << i)) v ^= basis[i].mask();
        out.emplace_back(gamma.rank(), v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The projection Z_2^r -> Z_2^r / gamma, realized through a basis of perp(gamma):
/// coordinate i of the image is the (additive) value of the i-th basis character.
class QuotientMap {
public:
    explicit QuotientMap(const Subgroup& gamma) : rank_(gamma.rank()), basis_(perp_basis(gamma)) {}

    unsigned quotient_rank() const noexcept { return static_cast<unsigned>(basis_.size()); }
    std::size_t quotient_order() const noexcept { return std::size_t{1} << basis_.size(); }

    GroupElement image(const GroupElement& sigma) const {
        GroupElement::require_same_rank(rank_, sigma.rank());
        std::uint32_t m = 0;
        for (const auto& chi : basis_) m = (m << 1) | (pair(chi, sigma) == -1 ? 1u : 0u);
        return {quotient_rank(), m};
    }

private:
    unsigned rank_;
    std::vector<Character> basis_;
};

template <class Tag>
void to_json(nlohmann::json& j, const BitVector<Tag>& v) {
    j = v.bits();
}

template <class Tag>
void from_json(const nlohmann::json& j, BitVector<Tag>& v) {
    if (!j.is_array()) throw MalformedInput("group elements and characters are arrays of 0/1");
    try {
        v = BitVector<Tag>::from_bits(j.get<std::vector<int>>());
    } catch (const DomainError& e) {
        throw MalformedInput(e.what());
    }
}

inline void to_json(nlohmann::json& j, const Subgroup& s) {
    j = {{"basis", s.basis()}, {"elements", s.elements()}, {"order", s.order()}};
}

}  // namespace abcover
