#include <doctest.h>

#include "secat/errors.hpp"
#include "secat/modelio.hpp"
#include "secat/models.hpp"

using namespace secat;

TEST_CASE("parsing the stated examples") {
    SUBCASE("the ground field") {
        const ModelFile m = parse_model("algebra Q {}");
        REQUIRE(m.algebras.size() == 1);
        CHECK(m.algebra("Q")->gen_count() == 0);
    }
    SUBCASE("the S2 Sullivan model") {
        const ModelFile m = parse_model("algebra S2m { gen x:2; gen y:3; d y = x^2; }");
        const CdgaRef a = m.algebra("S2m");
        CHECK(a->gen_count() == 2);
        CHECK_FALSE(a->has_zero_differential());
        CHECK(a->d(a->gen_elem("y")) == a->pow(a->gen_elem("x"), 2));
    }
    SUBCASE("augmentation with default-to-zero images") {
        const ModelFile m = parse_model("algebra CP2 { gen x:2; rel x^3; }\n"
                                        "algebra Q {}\n"
                                        "morphism aug : CP2 -> Q {}\n");
        const CdgaMorphism& aug = m.morphism("aug");
        CHECK(apply_morphism(aug, aug.source->gen_elem("x")).is_zero());
        CHECK(apply_morphism(aug, aug.source->unit()) == aug.target->unit());
    }
    SUBCASE("same-named generators map to themselves by default") {
        const ModelFile m = parse_model("algebra A { gen x:2; }\n"
                                        "algebra B { gen x:2; rel x^2; }\n"
                                        "morphism p : A -> B {}\n");
        const CdgaMorphism& p = m.morphism("p");
        CHECK(apply_morphism(p, p.source->gen_elem("x")) == p.target->gen_elem("x"));
    }
    SUBCASE("rational coefficients, signs and reordering") {
        const ModelFile m = parse_model("algebra E { gen u:1; gen v:1; }\n"
                                        "algebra T { gen u:1; gen v:1; }\n"
                                        "morphism f : E -> T { u |-> 3/2*u - v; v |-> 0; }\n");
        const CdgaMorphism& f = m.morphism("f");
        const Element img = apply_morphism(f, f.source->gen_elem("u"));
        CHECK(f.target->render(img) == "3/2*u - v");
        // v*u parses to the Koszul-reordered element
        const CdgaRef a =
            parse_model("algebra E { gen u:1; gen v:1; gen w:1; d w = v*u; }").algebra("E");
        CHECK(a->render(a->d(a->gen_elem("w"))) == "-u*v");
    }
}

TEST_CASE("parser diagnostics") {
    SUBCASE("syntax error with location") {
        try {
            parse_model("algebra A { gen x: }", "bad.cdga");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("bad.cdga:1:20") != std::string::npos);
            CHECK(e.line == 1);
        }
    }
    SUBCASE("unknown identifier") {
        CHECK_THROWS_WITH_AS(parse_model("algebra A { gen x:2; d x = y; }"),
                             doctest::Contains("unknown identifier 'y'"), ValidationError);
    }
    SUBCASE("degree mismatch in a differential") {
        CHECK_THROWS_WITH_AS(parse_model("algebra A { gen x:2; gen y:5; d y = x^2; }"),
                             doctest::Contains("degree"), ValidationError);
    }
    SUBCASE("d^2 != 0") {
        // d y = x z is degree-correct; d z = w makes d^2 y nonzero
        const char* text = "algebra A { gen x:2; gen z:2; gen w:3; gen y:3;"
                           "  d y = x*z; d z = w; }";
        CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("d^2"), ValidationError);
    }
    SUBCASE("morphism not commuting with d") {
        const char* text = "algebra A { gen x:2; gen y:3; d y = x^2; }\n"
                           "algebra B { gen x:2; gen y:3; }\n"
                           "morphism f : A -> B {}\n";
        CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("commute"), ValidationError);
    }
    SUBCASE("morphism image degree mismatch") {
        const char* text = "algebra A { gen x:2; }\n"
                           "algebra B { gen y:4; }\n"
                           "morphism f : A -> B { x |-> y; }\n";
        CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("degree"), ValidationError);
    }
    SUBCASE("forward references are rejected") {
        CHECK_THROWS_AS(parse_model("morphism f : A -> B {}\nalgebra A {}\nalgebra B {}\n"),
                        ValidationError);
    }
}

TEST_CASE("serialize round-trips") {
    const std::vector<std::string> catalog_refs = {
        "sphere:2",  "sphere:3",  "cohomology-sphere:2", "cohomology-sphere:3", "cpn:2",
        "cpn:4",     "product(cohomology-sphere:2,cohomology-sphere:3)",
        "product(cpn:2,sphere:3)",
    };
    for (const std::string& ref : catalog_refs) {
        CAPTURE(ref);
        const CatalogEntry e = catalog_ref(ref);
        const std::string text = serialize(*e.algebra);
        const ModelFile m1 = parse_model(text);
        REQUIRE(m1.algebras.size() == 1);
        const std::string text2 = serialize(*m1.algebras[0].second);
        const ModelFile m2 = parse_model(text2);
        CHECK(m1.algebras[0].second->same_presentation(*m2.algebras[0].second));
        CHECK(text == text2);
    }

    SUBCASE("morphism round-trip") {
        const CatalogEntry e = catalog_ref("mult-model(cohomology-sphere:2,2)");
        REQUIRE(e.morphism.has_value());
        const std::string text =
            serialize(*e.morphism->source) + serialize(*e.morphism->target) + serialize(*e.morphism);
        const ModelFile m = parse_model(text);
        REQUIRE(m.morphisms.size() == 1);
        const CdgaMorphism& phi = m.morphisms[0].second;
        for (int r = 0; r < phi.source->gen_count(); ++r)
            CHECK(phi.images[static_cast<size_t>(r)].terms ==
                  e.morphism->images[static_cast<size_t>(r)].terms);
    }
}

TEST_CASE("catalog entries") {
    CHECK(catalog_ref("sphere:3").algebra->gen_count() == 1);
    CHECK(catalog_ref("sphere:3").algebra->has_zero_differential());
    CHECK_FALSE(catalog_ref("sphere:2").algebra->has_zero_differential());
    CHECK(catalog_ref("cpn:2").algebra->relations().size() == 1);
    const CatalogEntry mu = catalog_ref("mult-model(cohomology-sphere:2,2)");
    REQUIRE(mu.morphism.has_value());
    CHECK(mu.morphism->source->gen_count() == 2);
    CHECK(mu.morphism->target->gen_count() == 1);
    CHECK_THROWS_AS(catalog_ref("torus:2"), ValidationError);
    CHECK_THROWS_AS(catalog_ref("sphere:many"), ValidationError);
}

TEST_CASE("emit formats") {
    SUBCASE("a certified-exact invariant record") {
        InvariantResult r = hsecat(identity_morphism(cpn_model(2)), 10);
        const std::string rec = emit(r, Format::Records);
        CHECK(rec.find("\"type\":\"invariant\"") != std::string::npos);
        CHECK(rec.find("\"value\":0") != std::string::npos);
        CHECK(rec.find("\"status\":\"certified-exact\"") != std::string::npos);
        CHECK(rec.back() == '\n');
        // single self-delimiting line
        CHECK(std::count(rec.begin(), rec.end(), '\n') == 1);
    }
    SUBCASE("the mtc_2(S^2) witness renders with tensor positions") {
        const InvariantResult r = tc_invariant(cohomology_sphere(2), 2, 8);
        const std::string rec = emit(r, Format::Records);
        CHECK(rec.find("\"witness\":\"(x@1 - 1@x)^2\"") != std::string::npos);
        CHECK(rec.find("\"name\":\"mtc_2\"") != std::string::npos);
    }
    SUBCASE("a lower-bound result carries the failing degree") {
        const InvariantResult r = hsecat(augmentation(sphere_model(2)), 12);
        const std::string rec = emit(r, Format::Records);
        CHECK(rec.find("\"status\":\"certified-lower-bound\"") != std::string::npos);
        CHECK(rec.find("\"failure_degree\":2") != std::string::npos);
    }
    SUBCASE("records are byte-stable across recomputation") {
        auto compute = [] {
            return emit(verify_lower_chain(mult_model(cohomology_sphere(2), 2),
                                           mult_model(cohomology_sphere(3), 2), 12),
                        Format::Records);
        };
        CHECK(compute() == compute());
        auto coh = [] {
            return emit_cohomology(*compute_cohomology(cpn_model(3), 10), "cpn(3)",
                                   Format::Records);
        };
        CHECK(coh() == coh());
    }
    SUBCASE("human output mentions every value") {
        const VerificationReport rep = verify_sphere_additivity(cohomology_sphere(2), 3, 2, 12);
        const std::string text = emit(rep, Format::Human);
        CHECK(text.find("mtc") != std::string::npos);
        CHECK(text.find("pass") != std::string::npos);
    }
}
