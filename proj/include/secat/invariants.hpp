#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secat/cohomology.hpp"

namespace secat {

enum class CertStatus { Exact, LowerBound };

inline const char* cert_str(CertStatus s) {
    return s == CertStatus::Exact ? "certified-exact" : "certified-lower-bound";
}

// A cycle whose class is nonzero in H(A) but maps to a boundary in the
// quotient by K^{m+1}: the reason H(rho_m) fails to be injective.
struct InjectivityFailure {
    int m = 0;
    int degree = 0;
    Element cycle;
};

struct InvariantResult {
    std::string name;     // hsecat, nil-ker, cup-length, htc_n, mtc_n, msecat
    std::string instance; // display identifier of the morphism/algebra
    int value = 0;
    CertStatus status = CertStatus::Exact;
    int truncation = 0;
    CdgaRef owner; // algebra the witness elements live in (keeps them valid)
    std::optional<ProductWitness> product_witness; // surviving product certificate
    std::vector<InjectivityFailure> failures;      // one per level m < value
    std::string note;
};

// A/(ker phi)^{m+1} with the induced differential, together with the
// projection rho_m given degreewise on chosen coset representatives.
struct QuotientCdga {
    CdgaRef parent;
    int m = 0;
    int truncation = 0;
    AlgebraViewRef view;            // of the parent
    GradedIdeal kernel_power;       // K^{m+1}
    std::vector<QuotientMap> proj;  // degrees 0..N
    std::vector<RationalMatrix> dbar; // induced differential, degrees 0..N-1

    int dim(int k) const { return proj[static_cast<size_t>(k)].dim(); }
    // rho_m on degree-k coordinates of the parent
    Vec project(int k, const Vec& v) const { return proj[static_cast<size_t>(k)].coords(v); }
    Element project_element(const Element& e) const; // lift of the class of e
};

// Requires phi surjective in all degrees <= N (error names the first
// failing degree). m = 0 quotients by K itself.
QuotientCdga quotient_rho(const CdgaMorphism& phi, int m, int n);

// Smallest m such that H(rho_m) is injective in all certified degrees
// <= N-1. Exact when the source algebra is certifiably finite-dimensional
// with top degree <= N-1; otherwise a certified lower bound. Injectivity
// failures for every m' < value are recorded; for zero-differential
// sources a surviving kernel-power product is attached as witness.
InvariantResult hsecat(const CdgaMorphism& phi, int n);

// Nilpotency of ker H(phi) as a graded ideal of H(source).
InvariantResult nil_ker_H(const CdgaMorphism& phi, int n);

// Nilpotency of the positive-degree ideal of H(A): nil ker H of the
// augmentation.
InvariantResult cup_length(const CdgaRef& a, int n);

// hsecat of the n-fold multiplication model mu_n : A^{(x)n} -> A; n >= 2.
InvariantResult htc(const CdgaRef& a, int n, int trunc);

struct PoincareDualityReport {
    enum Status { PD, NotPD, Inconclusive } status = Inconclusive;
    int formal_dimension = 0;
    std::optional<Element> fundamental_class;
    struct PairingRank {
        int k = 0;
        int complement = 0;
        int dim_k = 0;
        int dim_complement = 0;
        int rank = 0;
    };
    std::vector<PairingRank> pairings;
    std::string reason;

    bool is_pd() const { return status == PD; }
};

// Decides whether H(A) is a Poincare duality algebra within the certified
// window. Finite-dimensionality comes either from the algebra presentation
// or, failing that, from an empty top third of the window; otherwise the
// verdict is inconclusive.
PoincareDualityReport check_poincare_duality(const CdgaRef& a, int n);

// hsecat relabeled msecat, valid when the source of phi (the model of the
// base) is a Poincare duality algebra. Refuses otherwise.
InvariantResult msecat_pd(const CdgaMorphism& phi, int n);

// htc_n, relabeled mtc_n when the source of mu_n passes the PD check.
InvariantResult tc_invariant(const CdgaRef& a, int n, int trunc);

// Exposed for property tests: is H(rho_m) injective in all certified
// degrees <= N-1?
bool rho_homology_injective(const CdgaMorphism& phi, int m, int n);

// (ker phi)^p at the cochain level, computed through the ideal-generator
// ladder; spans agree with ideal_power degree by degree.
GradedIdeal kernel_power(const MorphismView& mv, int p);

} // namespace secat
