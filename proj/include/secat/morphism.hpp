#pragma once

#include <map>
#include <string>
#include <vector>

#include "secat/gca.hpp"

namespace secat {

// Degree-0 differential-respecting algebra map, given on generators.
struct CdgaMorphism {
    std::string name;
    CdgaRef source;
    CdgaRef target;
    std::vector<Element> images; // per source generator rank

    const Element& image_of_rank(int r) const { return images[static_cast<size_t>(r)]; }
};

// Builds and validates a morphism. Generators absent from `images_by_name`
// default to the same-named generator of equal degree in the target when
// one exists, and to 0 otherwise. Validates degree preservation,
// phi(d a) = d(phi a) on every generator, and phi(rel) = 0 for every
// relation monomial of the source.
CdgaMorphism make_morphism(std::string name, CdgaRef source, CdgaRef target,
                           const std::map<std::string, Element>& images_by_name = {});

// Multiplicative, linear, degree-preserving extension of generator images.
Element apply_morphism(const CdgaMorphism& phi, const Element& u);

// (phi1 (x) phi2)(a (x) b) = phi1(a) (x) phi2(b).
CdgaMorphism tensor_morphism(const CdgaMorphism& phi1, const CdgaMorphism& phi2);

CdgaMorphism identity_morphism(const CdgaRef& a);

// The ground field as an algebra, and the augmentation killing all
// positive-degree generators.
CdgaRef q_algebra();
CdgaMorphism augmentation(const CdgaRef& a);

// The n-fold multiplication mu_n : A^{(x)n} -> A, a1 (x) ... (x) an |-> a1...an.
// This is the surjective model of the n-fold diagonal used for tc_n.
CdgaMorphism mult_model(const CdgaRef& a, int n);

} // namespace secat
