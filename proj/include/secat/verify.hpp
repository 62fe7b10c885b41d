#pragma once

#include <cstdint>

#include "secat/invariants.hpp"

namespace secat {

enum class CheckOutcome { Pass, Fail, Inconclusive };

inline const char* outcome_str(CheckOutcome o) {
    switch (o) {
    case CheckOutcome::Pass: return "pass";
    case CheckOutcome::Fail: return "fail";
    default: return "inconclusive";
    }
}

struct InequalityCheck {
    std::string label;
    std::string relation; // "<=", ">=", "=="
    int lhs = 0;
    int rhs = 0;
    bool lhs_exact = true;
    bool rhs_exact = true;
    CheckOutcome outcome = CheckOutcome::Inconclusive;
    int slack = 0;
};

// One verified instance. A check never reports "pass" off uncertified
// values where the uncertainty could flip the verdict: lower bounds may
// certify >=-claims, exact values are required on the deciding side of
// <=-claims; and uncertified operands never produce "fail".
struct VerificationReport {
    std::string instance;
    int truncation = 0;
    std::vector<InvariantResult> values;
    std::vector<InequalityCheck> checks;

    bool all_pass() const;
    bool conclusive() const;
};

// Decide a claim given interval semantics: an exact value is a point, a
// certified lower bound is [v, infinity).
CheckOutcome evaluate_claim(const std::string& relation, int lhs, bool lhs_exact, int rhs,
                            bool rhs_exact);

// hsecat(phi1 (x) phi2) <= hsecat(phi1) + hsecat(phi2); for zero
// differentials additionally verifies the degreewise kernel decomposition
// L^{m+n+1} inside K1^{m+1} (x) A2 + A1 (x) K2^{n+1} by membership.
VerificationReport verify_subadditivity(const CdgaMorphism& phi1, const CdgaMorphism& phi2, int n);

// hsecat(phi1 (x) phi2) >= hsecat(phi1) + nil ker H(phi2); when all bases
// involved are Poincare duality algebras, also the additivity equality
// hsecat(phi1 (x) phi2) = hsecat(phi1) + hsecat(phi2) at msecat level.
VerificationReport verify_lower_chain(const CdgaMorphism& phi1, const CdgaMorphism& phi2, int n);

// htc_n(A (x) H(S^k)) = htc_n(A) + htc_n(H(S^k)); requires PD for A.
VerificationReport verify_sphere_additivity(const CdgaRef& a, int k, int n, int trunc);

struct FuzzParams {
    int max_gens = 3;    // spec envelope allows up to 4
    int max_degree = 6;
    int max_rel_exp = 4;
    int dim_budget = 12; // total monomial count per factor algebra
    int top_budget = 14; // top degree per factor algebra
};

// minimal sizes: a single generator of degree 1
FuzzParams minimal_fuzz_params();

struct RandomInstance {
    CdgaMorphism phi1;
    CdgaMorphism phi2;
    std::string description;
    int truncation = 0; // large enough to certify every value exactly
};

// Deterministic from the seed: both morphisms are quotient projections
// A -> A/J of zero-differential algebras, hence surjective with every
// invariant certified-exact.
RandomInstance random_instance(uint64_t seed, const FuzzParams& params = {});

// Runs subadditivity, the lower chain, the kernel decomposition
// inclusion, and the d = 0 identity hsecat = nil ker on one seeded pair.
VerificationReport verify_fuzz_instance(uint64_t seed, const FuzzParams& params = {});

// Fan a seed range [lo, hi] out across workers; reports are returned in
// seed order regardless of scheduling.
std::vector<VerificationReport> run_fuzz(uint64_t lo, uint64_t hi, int threads,
                                         const FuzzParams& params = {});

} // namespace secat
