#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secat/cohomology.hpp"
#include "secat/invariants.hpp"
#include "secat/morphism.hpp"
#include "secat/verify.hpp"

namespace secat {

// Parsed model file: algebras and morphisms in declaration order. Names
// resolve within the file; a morphism may only reference algebras
// declared before it.
struct ModelFile {
    std::vector<std::pair<std::string, CdgaRef>> algebras;
    std::vector<std::pair<std::string, CdgaMorphism>> morphisms;

    CdgaRef algebra(const std::string& name) const;
    const CdgaMorphism& morphism(const std::string& name) const;
};

// Throws ParseError (syntax, with line/column) or ValidationError
// (semantic: unknown identifier, degree mismatch, d^2 != 0, morphism not
// commuting with d), each carrying a source location in the message.
// Malformed inputs never construct partial algebras.
ModelFile parse_model(const std::string& text, const std::string& filename = "<input>");

// Model-format text for an algebra or morphism; parse(serialize(x)) is
// structurally the identity.
std::string serialize(const Cdga& a);
std::string serialize(const CdgaMorphism& phi);

struct CatalogEntry {
    std::string name; // canonical, e.g. "cpn(2)"
    CdgaRef algebra;
    std::optional<CdgaMorphism> morphism; // mult-model entries
    std::vector<std::pair<std::string, std::string>> known; // documented values
};

// name in {sphere, cohomology-sphere, cpn, product, mult-model}
CatalogEntry catalog(const std::string& name, const std::vector<std::string>& params);

// inline references: "sphere:2", "cpn:3", "product(cohomology-sphere:2,cpn:2)",
// "mult-model(cohomology-sphere:2,2)"
CatalogEntry catalog_ref(const std::string& ref);

enum class Format { Human, Records };
Format format_from_string(const std::string& s);

// Human output is an aligned table; records output is one self-delimiting
// JSON object per line, byte-stable for fixed input and tool version.
std::string emit(const InvariantResult& r, Format f);
std::string emit(const VerificationReport& r, Format f);
std::string emit_cohomology(const CohomologyRing& h, const std::string& instance, Format f);
std::string emit(const PoincareDualityReport& r, const std::string& instance, Format f);

// grouped factor rendering used for witness strings: "(x@1 - 1@x)^2"
std::string witness_string(const Cdga& owner, const ProductWitness& w);

} // namespace secat
