#pragma once

#include <memory>
#include <optional>

#include "secat/view.hpp"

namespace secat {

// Cohomology of a cochain complex in degrees 0..limit, from per-degree
// dimensions and differential matrices d_k : C^k -> C^{k+1}.
struct ComplexHomology {
    int limit = 0;
    std::vector<SubspaceBasis> cycles;
    std::vector<SubspaceBasis> boundaries;
    std::vector<QuotientMap> classes; // cycles -> H, echelon representatives

    int hdim(int k) const {
        return (k < 0 || k > limit) ? 0 : classes[static_cast<size_t>(k)].dim();
    }
    // class coordinates of a cycle in ambient coordinates
    Vec class_of(int k, const Vec& cycle) const {
        return classes[static_cast<size_t>(k)].coords(cycle);
    }
};

// dims must cover 0..limit+1 and dmat 0..limit.
ComplexHomology complex_homology(const std::vector<int>& dims,
                                 const std::vector<RationalMatrix>& dmat, int limit);

// Degree-truncated cohomology ring H(A, d). Classes are computed exactly
// for degrees k <= N-1; degree N is excluded from certified results since
// products landing above the truncation are invisible there. Products of
// classes are computed from cycle representatives and reduced modulo
// boundaries.
class CohomologyRing : public GradedRing {
public:
    explicit CohomologyRing(AlgebraViewRef view);

    const AlgebraView& view() const { return *view_; }
    const AlgebraViewRef& view_ref() const { return view_; }
    int truncation() const override { return view_->truncation(); }
    int limit() const override { return view_->truncation() - 1; }
    int dim(int k) const override { return h_.hdim(k); }
    const ComplexHomology& homology() const { return h_; }

    const Element& rep(int k, int i) const;
    Vec rep_coords(int k, int i) const; // in algebra coordinates
    Vec class_coords(int k, const Vec& algebra_cycle) const { return h_.class_of(k, algebra_cycle); }

    // product of classes, via representatives, reduced modulo boundaries
    Vec mul(int i, const Vec& u, int j, const Vec& v) const override;

    // structure constants of the class product H^i (x) H^j -> H^{i+j}:
    // entry a * dim(j) + b holds the coordinates of [rep_a][rep_b]
    std::vector<Vec> product_table(int i, int j) const;

    std::optional<int> certified_top() const override { return certified_top_; }
    int top_nonzero() const { return top_nonzero_; }

    Element lift(int k, const Vec& u) const override;
    std::string render(int k, const Vec& u) const override;

private:
    AlgebraViewRef view_;
    ComplexHomology h_;
    std::vector<std::vector<Element>> reps_;
    std::optional<int> certified_top_;
    int top_nonzero_ = 0;
};

using CohomologyRingRef = std::shared_ptr<const CohomologyRing>;

CohomologyRingRef compute_cohomology(const CdgaRef& a, int n);
CohomologyRingRef compute_cohomology(AlgebraViewRef view);

// Induced graded linear map H(source) -> H(target) of a morphism, given on
// class bases for degrees 0..limit. Well-defined by construction: cycle
// representatives map to cycles (checked) and are reduced mod boundaries.
struct InducedMap {
    CohomologyRingRef source;
    CohomologyRingRef target;
    std::vector<RationalMatrix> mats;
};

InducedMap induced_map(const CdgaMorphism& phi, int n);
InducedMap induced_map(const MorphismView& mv, CohomologyRingRef src, CohomologyRingRef tgt);

// Graded ideal of a graded ring, stored as per-degree echelonized bases
// for degrees 0..limit. For algebra-level kernels a minimal ideal
// generating set is also recorded (used to accelerate powers).
struct GradedIdeal {
    std::shared_ptr<const GradedRing> ring;
    std::vector<SubspaceBasis> deg;  // 0..limit
    std::vector<SubspaceBasis> gens; // minimal ideal generators; may be empty

    int limit() const { return static_cast<int>(deg.size()) - 1; }
    bool is_zero() const;
    int dim_at(int k) const {
        return (k < 0 || k > limit()) ? 0 : deg[static_cast<size_t>(k)].dim();
    }
};

// ker H(phi) as an ideal of H(source).
GradedIdeal kernel_ideal(const InducedMap& im);

// ker phi at the cochain level, as an ideal of the source algebra, with
// minimal ideal generators.
GradedIdeal kernel_ideal_algebra(const MorphismView& mv);

// span of all products u * v, u in I, v in J, degree by degree
GradedIdeal ideal_mul(const GradedIdeal& i, const GradedIdeal& j);

// I^p computed incrementally as I * I^{p-1}; p >= 1
GradedIdeal ideal_power(const GradedIdeal& i, int p);

struct ProductWitness {
    int degree = 0;
    Element product;              // nonzero product of the factors, in order
    std::vector<Element> factors; // each lies in the ideal
};

struct NilpotencyResult {
    int value = 0;
    bool certified = false; // ambient certifiably finite-dimensional in window
    std::optional<ProductWitness> witness;
};

// Greatest m with I^m != 0 (I^0 = ambient ring), so nil(0) = 0. Certified
// exact when every power is fully visible inside the truncation window.
NilpotencyResult nilpotency(const GradedIdeal& i);

} // namespace secat
