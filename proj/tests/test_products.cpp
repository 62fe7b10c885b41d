#include <doctest.h>

#include "secat/errors.hpp"
#include "secat/models.hpp"
#include "secat/morphism.hpp"
#include "secat/verify.hpp"

using namespace secat;

namespace {

const InequalityCheck& check_by_label(const VerificationReport& rep, const std::string& part) {
    for (const InequalityCheck& c : rep.checks)
        if (c.label.find(part) != std::string::npos) return c;
    throw std::runtime_error("no check matching: " + part);
}

int value_of(const VerificationReport& rep, const std::string& name) {
    for (const InvariantResult& r : rep.values)
        if (r.name == name) return r.value;
    throw std::runtime_error("no value named: " + name);
}

} // namespace

TEST_CASE("claim evaluation semantics") {
    CHECK(evaluate_claim("<=", 2, true, 3, true) == CheckOutcome::Pass);
    CHECK(evaluate_claim("<=", 4, true, 3, true) == CheckOutcome::Fail);
    // a lower-bound left side cannot certify or refute a <=-claim
    CHECK(evaluate_claim("<=", 2, false, 3, true) == CheckOutcome::Inconclusive);
    CHECK(evaluate_claim("<=", 4, false, 3, true) == CheckOutcome::Inconclusive);
    // a lower-bound left side can certify a >=-claim
    CHECK(evaluate_claim(">=", 3, false, 2, true) == CheckOutcome::Pass);
    CHECK(evaluate_claim(">=", 1, false, 2, true) == CheckOutcome::Inconclusive);
    CHECK(evaluate_claim("==", 2, true, 2, true) == CheckOutcome::Pass);
    CHECK(evaluate_claim("==", 2, false, 2, true) == CheckOutcome::Inconclusive);
}

TEST_CASE("subadditivity on named instances") {
    SUBCASE("identity pair") {
        const CdgaMorphism id = identity_morphism(q_algebra());
        const VerificationReport rep = verify_subadditivity(id, id, 4);
        CHECK(rep.all_pass());
        CHECK(value_of(rep, "hsecat(phi1(x)phi2)") == 0);
    }
    SUBCASE("two even spheres: 2 <= 1 + 1 with slack 0") {
        const CdgaMorphism e1 = augmentation(cohomology_sphere(2));
        const CdgaMorphism e2 = augmentation(cohomology_sphere(2));
        const VerificationReport rep = verify_subadditivity(e1, e2, 8);
        CHECK(rep.all_pass());
        CHECK(rep.conclusive());
        CHECK(value_of(rep, "hsecat(phi1(x)phi2)") == 2);
        const InequalityCheck& c = check_by_label(rep, "<= hsecat(phi1) + hsecat(phi2)");
        CHECK(c.slack == 0);
        // the kernel decomposition inclusion was checked (d = 0)
        CHECK(check_by_label(rep, "inside").outcome == CheckOutcome::Pass);
    }
    SUBCASE("mu2(S2) and mu2(S3): 3 <= 2 + 1") {
        const VerificationReport rep = verify_subadditivity(
            mult_model(cohomology_sphere(2), 2), mult_model(cohomology_sphere(3), 2), 12);
        CHECK(rep.all_pass());
        CHECK(value_of(rep, "hsecat(phi1(x)phi2)") == 3);
        CHECK(check_by_label(rep, "<=").slack == 0);
    }
}

TEST_CASE("lower chain and PD additivity") {
    SUBCASE("phi2 = id degenerates to hsecat >= hsecat") {
        const CdgaMorphism phi = augmentation(cohomology_sphere(2));
        const CdgaMorphism id = identity_morphism(q_algebra());
        const VerificationReport rep = verify_lower_chain(phi, id, 8);
        CHECK(rep.all_pass());
        const InequalityCheck& c = check_by_label(rep, ">=");
        CHECK(c.lhs == c.rhs);
    }
    SUBCASE("mu2(S2) (x) mu2(S2): equality 4 = 2 + 2") {
        const CdgaMorphism mu = mult_model(cohomology_sphere(2), 2);
        const VerificationReport rep = verify_lower_chain(mu, mu, 10);
        CHECK(rep.all_pass());
        CHECK(value_of(rep, "hsecat(phi1(x)phi2)") == 4);
        const InequalityCheck& eq = check_by_label(rep, "==");
        CHECK(eq.outcome == CheckOutcome::Pass);
        CHECK(eq.lhs == 4);
        CHECK(eq.rhs == 4);
    }
    SUBCASE("mu2(CP2) (x) mu2(S3): 5 = 4 + 1") {
        const VerificationReport rep = verify_lower_chain(mult_model(cpn_model(2), 2),
                                                          mult_model(cohomology_sphere(3), 2), 22);
        CHECK(rep.all_pass());
        CHECK(value_of(rep, "hsecat(phi1(x)phi2)") == 5);
        CHECK(check_by_label(rep, "==").outcome == CheckOutcome::Pass);
    }
}

TEST_CASE("sphere additivity") {
    SUBCASE("the point: mtc_2(S^k) = mtc_2(S^k)") {
        const VerificationReport rep = verify_sphere_additivity(q_algebra(), 3, 2, 10);
        CHECK(rep.all_pass());
        CHECK(rep.conclusive());
    }
    SUBCASE("S2 x S3 at n = 2: 3 = 2 + 1") {
        const VerificationReport rep = verify_sphere_additivity(cohomology_sphere(2), 3, 2, 12);
        CHECK(rep.all_pass());
        const InequalityCheck& c = check_by_label(rep, "==");
        CHECK(c.lhs == 3);
        CHECK(c.rhs == 3);
    }
    SUBCASE("refused without PD") {
        const CdgaRef wedge =
            Cdga::make("W", {{"x", 2}, {"y", 3}}, {{{0, 2}}, {{0, 1}, {1, 1}}});
        CHECK_THROWS_AS(verify_sphere_additivity(wedge, 2, 2, 10), PreconditionError);
    }
}

TEST_CASE("random instances") {
    SUBCASE("deterministic from the seed") {
        for (uint64_t seed : {0ull, 7ull, 123ull}) {
            const RandomInstance a = random_instance(seed);
            const RandomInstance b = random_instance(seed);
            CHECK(a.phi1.source->same_presentation(*b.phi1.source));
            CHECK(a.phi1.target->same_presentation(*b.phi1.target));
            CHECK(a.phi2.source->same_presentation(*b.phi2.source));
            CHECK(a.phi2.target->same_presentation(*b.phi2.target));
            CHECK(a.truncation == b.truncation);
        }
    }
    SUBCASE("minimal sizes give an augmentation-like projection") {
        const RandomInstance inst = random_instance(0, minimal_fuzz_params());
        CHECK(inst.phi1.source->gen_count() == 1);
        // the quotient kills the generator: the target is the ground field
        const AlgebraViewRef tv = make_view(inst.phi1.target, 4);
        CHECK(tv->dim(0) == 1);
        for (int k = 1; k <= 4; ++k) CHECK(tv->dim(k) == 0);
    }
    SUBCASE("projections are surjective and valid instances") {
        for (uint64_t seed = 0; seed < 10; ++seed) {
            const RandomInstance inst = random_instance(seed);
            const MorphismView mv = make_morphism_view(inst.phi1, inst.truncation);
            CHECK_FALSE(mv.first_nonsurjective_degree().has_value());
            CHECK(inst.phi1.source->has_zero_differential());
        }
    }
}

TEST_CASE("fuzz batch") {
    const auto reports = run_fuzz(0, 24, 2);
    REQUIRE(reports.size() == 25);
    for (const VerificationReport& rep : reports) {
        CHECK(rep.all_pass());
        CHECK(rep.conclusive()); // d = 0 instances are always certified-exact
    }

    SUBCASE("tensor symmetry of the computed values") {
        for (uint64_t seed : {1ull, 5ull, 9ull}) {
            const RandomInstance inst = random_instance(seed);
            const InvariantResult ab =
                hsecat(tensor_morphism(inst.phi1, inst.phi2), inst.truncation);
            const InvariantResult ba =
                hsecat(tensor_morphism(inst.phi2, inst.phi1), inst.truncation);
            CHECK(ab.value == ba.value);
        }
    }
}
