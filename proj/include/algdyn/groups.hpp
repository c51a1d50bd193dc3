#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "algdyn/util.hpp"

namespace algdyn {

enum class GroupFamily { FreeAbelian, Free, Heisenberg };

struct GroupSpec {
    GroupFamily family = GroupFamily::FreeAbelian;
    int rank = 1;  // d for FreeAbelian, number of generators for Free, 0 otherwise

    static GroupSpec free_abelian(int d);
    static GroupSpec free_group(int k);
    static GroupSpec heisenberg();

    bool operator==(const GroupSpec&) const = default;
    std::string name() const;
};

// Group element in normal form:
//   FreeAbelian(d): coordinate vector of length d;
//   Free(k):        freely reduced word, letters +i / -i for the i-th
//                   generator and its inverse (1-based);
//   Heisenberg:     triple (a, b, c) for x^a y^b z^c with the relation
//                   (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
class GroupElement {
public:
    GroupElement() = default;

    static GroupElement identity(const GroupSpec& spec);
    static GroupElement vector_of(const GroupSpec& spec, std::vector<std::int64_t> coords);
    static GroupElement word_of(const GroupSpec& spec, const std::vector<std::int64_t>& letters);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<std::int64_t>& payload() const { return data_; }
    bool is_identity() const;

    bool operator==(const GroupElement&) const = default;
    // Total order within one family (shorter payload first, then lexicographic);
    // used for map keys and for deterministic iteration everywhere.
    bool operator<(const GroupElement& o) const;

private:
    GroupElement(GroupSpec spec, std::vector<std::int64_t> data)
        : spec_(spec), data_(std::move(data)) {}

    GroupSpec spec_;
    std::vector<std::int64_t> data_;
};

GroupElement element_mul(const GroupElement& g, const GroupElement& h);
GroupElement element_inv(const GroupElement& g);

// Word syntax: "e" for the identity; "(1,0)" / "(1,1,1)" coordinate tuples
// for FreeAbelian and Heisenberg; space-separated letters with optional
// exponents for Free, e.g. "a^2 b^-1".
std::string format_word(const GroupElement& g);
GroupElement parse_word(const GroupSpec& spec, const std::string& text);

// Parameters selecting one finite quotient:
//   FreeAbelian(d): moduli (n_1,...,n_d), quotient by (n_1 Z) x ... x (n_d Z);
//   Heisenberg:     single modulus n, quotient by the congruence subgroup mod n;
//   Free(k):        a permutation representation: degree m and one image
//                   permutation of {0..m-1} per generator; the quotient is by
//                   the kernel, so cosets are the elements of the image group.
struct QuotientParams {
    std::vector<std::int64_t> moduli;
    std::int64_t modulus = 0;
    int degree = 0;
    std::vector<std::vector<int>> generator_images;

    std::string describe(const GroupSpec& spec) const;
};

// A finite coset space Gamma_i \ Gamma with projection and translation maps.
// Cosets are indexed 0..index-1 with the identity coset at index 0.
class FiniteQuotient {
public:
    std::int64_t index() const { return index_; }
    const GroupSpec& spec() const { return spec_; }
    const QuotientParams& params() const { return params_; }
    std::string describe() const { return params_.describe(spec_); }

    // Coset of g.
    int project(const GroupElement& g) const;
    // Right translation C -> C*g; a bijection for every g.
    int translate(int coset, const GroupElement& g) const;
    // Full permutation table for C -> C*g (hot paths).
    std::vector<int> translation_table(const GroupElement& g) const;
    // Left translation C -> g*C. Well-defined because all quotients built
    // here are by normal subgroups.
    int translate_left(int coset, const GroupElement& g) const;

    friend FiniteQuotient build_quotient(const GroupSpec& spec, const QuotientParams& params,
                                         std::int64_t order_cap);

private:
    GroupSpec spec_;
    QuotientParams params_;
    std::int64_t index_ = 1;

    // FreeAbelian: mixed-radix layout over the moduli.
    std::vector<std::int64_t> strides_;
    // Heisenberg: modulus.
    std::int64_t hmod_ = 1;
    // Free: the image group as explicit permutations.
    int degree_ = 0;
    std::vector<std::vector<int>> perms_;                  // coset -> permutation
    std::map<std::vector<int>, int> perm_index_;
    std::vector<std::vector<int>> letter_translate_;       // letter slot -> table C -> C*letter

    int free_letter_slot(std::int64_t letter) const;
    std::vector<int> free_image(const GroupElement& g) const;
};

FiniteQuotient build_quotient(const GroupSpec& spec, const QuotientParams& params,
                              std::int64_t order_cap = 1000000);

}  // namespace algdyn
