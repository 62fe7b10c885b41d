#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "secat/gca.hpp"
#include "secat/linalg.hpp"
#include "secat/morphism.hpp"

namespace secat {

// A graded Q-algebra presented by chosen per-degree bases with an exact
// product on coordinate vectors. Implemented by AlgebraView (monomial
// bases of a Cdga) and CohomologyRing (class bases).
class GradedRing {
public:
    virtual ~GradedRing() = default;
    virtual int truncation() const = 0; // N
    virtual int limit() const = 0;      // largest degree with reliable data
    virtual int dim(int k) const = 0;
    // product landing in degree i + j <= limit()
    virtual Vec mul(int i, const Vec& u, int j, const Vec& v) const = 0;
    // top degree when the ring is certifiably finite-dimensional within the
    // reliable window; nullopt otherwise
    virtual std::optional<int> certified_top() const = 0;
    virtual Element lift(int k, const Vec& u) const = 0; // representative in the Cdga
    virtual std::string render(int k, const Vec& u) const = 0;
};

// Degree-local view of a Cdga up to truncation N: monomial bases for
// degrees 0..N+1, differential matrices d_k : A^k -> A^{k+1} for k <= N,
// and multiplication tables for all degree pairs with i + j <= N.
// Immutable after construction.
class AlgebraView : public GradedRing {
public:
    AlgebraView(CdgaRef a, int n);

    const Cdga& algebra() const { return *alg_; }
    const CdgaRef& algebra_ref() const { return alg_; }

    int truncation() const override { return n_; }
    int limit() const override { return n_; }
    int dim(int k) const override;
    int enumerated_limit() const { return n_ + 1; } // bases exist up to N+1

    const std::vector<Monomial>& basis(int k) const { return basis_[static_cast<size_t>(k)]; }
    int index_of(int k, const Monomial& m) const; // -1 when absent
    Vec coords(int k, const Element& e) const;
    Element element(int k, const Vec& u) const;
    const RationalMatrix& d_matrix(int k) const { return dmat_[static_cast<size_t>(k)]; }

    Vec mul(int i, const Vec& u, int j, const Vec& v) const override;
    // product of the a-th basis monomial of degree i with a vector of degree j
    Vec mul_mono_vec(int i, int a_idx, int j, const Vec& v) const;

    std::optional<int> certified_top() const override { return certified_top_; }
    int top_nonempty() const { return top_nonempty_; }

    Element lift(int k, const Vec& u) const override { return element(k, u); }
    std::string render(int k, const Vec& u) const override;

private:
    struct Entry {
        int32_t idx;  // index in basis(i + j); -1 when the product vanishes
        int8_t sign;
    };
    const Entry* table(int i, int j) const;

    CdgaRef alg_;
    int n_;
    std::vector<std::vector<Monomial>> basis_;        // 0..N+1
    std::vector<std::map<Monomial, int>> index_;      // per degree
    std::vector<RationalMatrix> dmat_;                // 0..N
    std::vector<std::vector<Entry>> tables_;          // flattened by (i, j)
    std::vector<int> table_at_;                       // (i * (N + 1) + j) -> tables_ slot or -1
    std::optional<int> certified_top_;
    int top_nonempty_ = 0;
};

using AlgebraViewRef = std::shared_ptr<const AlgebraView>;
AlgebraViewRef make_view(const CdgaRef& a, int n);

// Degreewise matrices of a morphism, for degrees 0..N.
struct MorphismView {
    CdgaMorphism phi;
    AlgebraViewRef src;
    AlgebraViewRef tgt;
    std::vector<RationalMatrix> mats;

    // first degree k <= N where phi_k fails to be surjective, if any
    std::optional<int> first_nonsurjective_degree() const;
};

MorphismView make_morphism_view(const CdgaMorphism& phi, int n);
MorphismView make_morphism_view(const CdgaMorphism& phi, AlgebraViewRef src, AlgebraViewRef tgt);

} // namespace secat
