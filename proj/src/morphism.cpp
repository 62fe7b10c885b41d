#include "secat/morphism.hpp"

#include "secat/errors.hpp"

namespace secat {

namespace {

Element apply_images(const Cdga& src, const Cdga& tgt, const std::vector<Element>& images,
                     const Element& u) {
    Element out = tgt.zero();
    for (const auto& [m, c] : u.terms) {
        Element term = tgt.unit();
        for (const VarPow& vp : m.f)
            term = tgt.mul(term, tgt.pow(images[static_cast<size_t>(vp.gen)], vp.exp));
        out = tgt.add(out, tgt.scale(c, term));
    }
    (void)src;
    return out;
}

} // namespace

CdgaMorphism make_morphism(std::string name, CdgaRef source, CdgaRef target,
                           const std::map<std::string, Element>& images_by_name) {
    CdgaMorphism phi;
    phi.name = std::move(name);
    phi.source = source;
    phi.target = target;
    phi.images.assign(static_cast<size_t>(source->gen_count()), target->zero());

    for (const auto& [gname, img] : images_by_name)
        if (!source->rank_by_name(gname))
            throw ValidationError("morphism '" + phi.name + "': image given for unknown generator '" +
                                  gname + "'");

    for (int r = 0; r < source->gen_count(); ++r) {
        const Generator& g = source->gen_by_rank(r);
        Element img = target->zero();
        auto it = images_by_name.find(g.name);
        if (it != images_by_name.end()) {
            img = target->adopt(it->second);
        } else {
            const auto tr = target->rank_by_name(g.name);
            if (tr && target->degree_of_rank(*tr) == g.degree) img = target->gen_elem_rank(*tr);
        }
        if (!img.is_zero()) {
            const auto deg = img.degree();
            if (!deg)
                throw ValidationError("morphism '" + phi.name + "': image of '" + g.name +
                                      "' is not homogeneous");
            if (*deg != g.degree)
                throw ValidationError("morphism '" + phi.name + "': image of '" + g.name +
                                      "' has degree " + std::to_string(*deg) + ", expected " +
                                      std::to_string(g.degree));
        }
        phi.images[static_cast<size_t>(r)] = std::move(img);
    }

    // relations must be killed: phi(rel) = 0
    for (const Monomial& rel : source->relations()) {
        Element v = target->unit();
        for (const VarPow& vp : rel.f)
            v = target->mul(v, target->pow(phi.images[static_cast<size_t>(vp.gen)], vp.exp));
        if (!v.is_zero())
            throw ValidationError("morphism '" + phi.name + "': relation " +
                                  source->render_mono(rel) + " maps to " + target->render(v) +
                                  " != 0");
    }

    // commutes with differentials on every generator
    for (int r = 0; r < source->gen_count(); ++r) {
        const Element lhs = apply_images(*source, *target, phi.images, source->d_gen(r));
        const Element rhs = target->d(phi.images[static_cast<size_t>(r)]);
        if (!(lhs == rhs))
            throw ValidationError("morphism '" + phi.name + "' does not commute with d on '" +
                                  source->gen_by_rank(r).name + "': phi(d x) = " +
                                  target->render(lhs) + ", d(phi x) = " + target->render(rhs));
    }
    return phi;
}

Element apply_morphism(const CdgaMorphism& phi, const Element& u) {
    if (u.owner != nullptr && u.owner != phi.source.get())
        throw ValidationError("apply_morphism: element does not belong to the source algebra");
    return apply_images(*phi.source, *phi.target, phi.images, u);
}

CdgaMorphism tensor_morphism(const CdgaMorphism& phi1, const CdgaMorphism& phi2) {
    const CdgaRef src = tensor_product(phi1.source, phi2.source);
    const CdgaRef tgt = tensor_product(phi1.target, phi2.target);
    const std::vector<int> src1 = tensor_rank_map(*phi1.source, *src, 0);
    const std::vector<int> src2 = tensor_rank_map(*phi2.source, *src, phi1.source->gen_count());
    const std::vector<int> tgt1 = tensor_rank_map(*phi1.target, *tgt, 0);
    const std::vector<int> tgt2 = tensor_rank_map(*phi2.target, *tgt, phi1.target->gen_count());

    std::map<std::string, Element> images;
    for (int r = 0; r < phi1.source->gen_count(); ++r)
        images[src->gen_by_rank(src1[static_cast<size_t>(r)]).name] =
            remap_element(*tgt, tgt1, phi1.images[static_cast<size_t>(r)]);
    for (int r = 0; r < phi2.source->gen_count(); ++r)
        images[src->gen_by_rank(src2[static_cast<size_t>(r)]).name] =
            remap_element(*tgt, tgt2, phi2.images[static_cast<size_t>(r)]);
    return make_morphism(phi1.name + "(x)" + phi2.name, src, tgt, images);
}

CdgaMorphism identity_morphism(const CdgaRef& a) {
    std::map<std::string, Element> images;
    for (const Generator& g : a->generators()) images[g.name] = a->gen_elem(g.name);
    return make_morphism("id", a, a, images);
}

CdgaRef q_algebra() { return Cdga::make("Q", {}, {}); }

CdgaMorphism augmentation(const CdgaRef& a) {
    return make_morphism("aug", a, q_algebra(), {});
}

CdgaMorphism mult_model(const CdgaRef& a, int n) {
    if (n < 1) throw PreconditionError("mult_model: n must be >= 1");
    const CdgaRef src = tensor_power(a, n);
    std::map<std::string, Element> images;
    for (int r = 0; r < src->gen_count(); ++r) {
        const Generator& g = src->gen_by_rank(r);
        const int orig_decl = g.index % a->gen_count();
        images[g.name] = a->gen_elem_rank(a->rank_of_decl(orig_decl));
    }
    return make_morphism("mu_" + std::to_string(n), src, a, images);
}

} // namespace secat
