#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secat/rational.hpp"

namespace secat {

struct Generator {
    std::string name;      // unique within the algebra
    std::string base_name; // display name inside its tensor slot
    int degree = 1;
    int index = 0; // declaration position
    int slot = 0;  // tensor position
};

// One generator power inside a monomial. `gen` is the generator's canonical
// rank within its algebra (sorted by degree, then declaration index), so
// monomials order themselves without algebra context.
struct VarPow {
    int gen = 0;
    int exp = 1;
    bool operator==(const VarPow&) const = default;
};

struct Monomial {
    int degree = 0;
    std::vector<VarPow> f; // ranks strictly ascending; odd generators have exp 1

    bool is_unit() const { return f.empty(); }
    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const; // graded, then lexicographic
};

class Cdga;
using CdgaRef = std::shared_ptr<const Cdga>;

// Finite linear combination of basis monomials with exact rational
// coefficients. Zero coefficients are never stored.
struct Element {
    const Cdga* owner = nullptr;
    std::map<Monomial, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    bool homogeneous() const;
    std::optional<int> degree() const; // nullopt when zero or mixed
    bool operator==(const Element&) const = default;
};

struct GenDecl {
    std::string name;
    int degree = 1;
};

// Finitely presented graded-commutative differential algebra over Q:
// free generators, optional monomial relations, degree +1 differential.
// Instances are immutable after construction and safe to share.
class Cdga {
public:
    // d = 0 algebra. Relation monomials are given as (declaration index,
    // exponent) factor lists. Validates degrees, name uniqueness and
    // relation well-formedness; identically zero relations (odd squares)
    // are dropped.
    static CdgaRef make(std::string name, std::vector<GenDecl> gens,
                        std::vector<std::vector<std::pair<int, int>>> relations = {});

    // New algebra with the same presentation and the given generator
    // differentials (elements of *this*). Generators absent from the map
    // keep d = 0. Validates: degree +1, d^2 = 0, relation ideal stable
    // under d.
    CdgaRef with_differential(const std::map<std::string, Element>& d) const;

    // --- structure ---
    const std::string& name() const { return name_; }
    int gen_count() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; } // declaration order
    const Generator& gen_by_rank(int r) const { return gens_[static_cast<size_t>(decl_of_rank_[static_cast<size_t>(r)])]; }
    int rank_of_decl(int decl) const { return rank_of_decl_[static_cast<size_t>(decl)]; }
    int degree_of_rank(int r) const { return deg_of_rank_[static_cast<size_t>(r)]; }
    bool odd_rank(int r) const { return deg_of_rank_[static_cast<size_t>(r)] % 2 != 0; }
    std::optional<int> rank_by_name(const std::string& n) const;
    const std::vector<Monomial>& relations() const { return relations_; }
    bool has_zero_differential() const { return zero_diff_; }
    const Element& d_gen(int rank) const { return d_of_rank_[static_cast<size_t>(rank)]; }
    int num_slots() const { return num_slots_; }
    int slot_of_rank(int r) const { return gen_by_rank(r).slot; }
    int max_gen_degree() const { return max_gen_degree_; }

    // Default basis truncation: 8 * (top declared generator degree),
    // capped at 40.
    int default_truncation() const { return default_N_; }

    // --- monomials ---
    bool divisible_by_relation(const Monomial& m) const;
    // Product with Koszul sign; nullopt when the product vanishes (odd
    // square, or relation-divisible when `reduce`).
    std::optional<std::pair<int, Monomial>> mul_mono(const Monomial& a, const Monomial& b,
                                                     bool reduce = true) const;
    Monomial mono_from_decl(const std::vector<std::pair<int, int>>& factors) const;
    Monomial mono_gen(int rank, int exp = 1) const;

    // --- elements ---
    Element zero() const;
    Element unit() const;
    Element gen_elem(const std::string& name) const;
    Element gen_elem_rank(int rank) const;
    Element mono_elem(const Monomial& m, const Rat& c = Rat(1)) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element scale(const Rat& c, const Element& a) const;
    Element mul(const Element& a, const Element& b) const; // graded-commutative product
    Element pow(const Element& a, int e) const;
    Element d(const Element& a) const; // differential, Leibniz extension

    // Enumerates, per degree 0..N, the monomials not divisible by any
    // relation, in canonical order. Deterministic.
    std::vector<std::vector<Monomial>> basis_up_to(int N) const;

    // --- rendering ---
    std::string render(const Element& e) const;
    std::string render_mono(const Monomial& m) const; // tensor slots joined with '@'

    // adopt an element built in a structurally identical algebra (used when
    // attaching a differential or remapping through a tensor construction)
    Element adopt(const Element& e) const;

    bool same_presentation(const Cdga& o) const;

private:
    friend CdgaRef tensor_product(const CdgaRef&, const CdgaRef&);
    Cdga() = default;
    void index_generators();
    void validate_differential() const;
    Element mul_impl(const Element& a, const Element& b, bool reduce) const;
    Element d_mono(const Monomial& m, bool reduce) const;

    std::string name_;
    std::vector<Generator> gens_;     // declaration order
    std::vector<int> rank_of_decl_;
    std::vector<int> decl_of_rank_;
    std::vector<int> deg_of_rank_;
    std::vector<Monomial> relations_; // canonical, sorted, deduplicated
    std::vector<Element> d_of_rank_;
    bool zero_diff_ = true;
    int num_slots_ = 1;
    int max_gen_degree_ = 1;
    int default_N_ = 8;
};

// Tensor product A (x) B: A's generators then B's, relations inherited,
// d(a (x) 1) = da (x) 1, d(1 (x) b) = 1 (x) db. Tensor slots shift.
CdgaRef tensor_product(const CdgaRef& a, const CdgaRef& b);

// Left-associated iterated tensor product; n = 1 returns `a` itself.
CdgaRef tensor_power(const CdgaRef& a, int n);

// Coordinates of the generators of `sub` inside `whole` for the canonical
// embeddings used by tensor_product: returns the map rank-in-sub ->
// rank-in-whole for the left (offset 0) or right (offset = left gen count)
// factor. Exposed for degreewise embedding of subspaces.
std::vector<int> tensor_rank_map(const Cdga& factor, const Cdga& whole, int decl_offset);

// Transport a factor element along a (monotone) generator rank map into a
// containing algebra.
Monomial remap_monomial(const Monomial& m, const std::vector<int>& rank_map);
Element remap_element(const Cdga& dst, const std::vector<int>& rank_map, const Element& e);

} // namespace secat
