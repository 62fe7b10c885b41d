#include "secat/cohomology.hpp"

#include "secat/errors.hpp"

namespace secat {

ComplexHomology complex_homology(const std::vector<int>& dims,
                                 const std::vector<RationalMatrix>& dmat, int limit) {
    if (static_cast<int>(dims.size()) < limit + 2 || static_cast<int>(dmat.size()) < limit + 1)
        throw ValidationError("complex_homology: not enough graded data for the requested limit");
    ComplexHomology h;
    h.limit = limit;
    h.cycles.reserve(static_cast<size_t>(limit) + 1);
    h.boundaries.reserve(static_cast<size_t>(limit) + 1);
    h.classes.reserve(static_cast<size_t>(limit) + 1);
    for (int k = 0; k <= limit; ++k) {
        h.cycles.push_back(kernel_basis(dmat[static_cast<size_t>(k)]));
        h.boundaries.push_back(k > 0 ? image_basis(dmat[static_cast<size_t>(k - 1)])
                                     : SubspaceBasis(dims[0]));
        h.classes.push_back(quotient_map(h.cycles.back(), h.boundaries.back()));
    }
    return h;
}

CohomologyRing::CohomologyRing(AlgebraViewRef view) : view_(std::move(view)) {
    const int lim = limit();
    std::vector<int> dims(static_cast<size_t>(lim) + 2);
    for (int k = 0; k <= lim + 1; ++k) dims[static_cast<size_t>(k)] = view_->dim(k);
    std::vector<RationalMatrix> dmat;
    for (int k = 0; k <= lim; ++k) dmat.push_back(view_->d_matrix(k));
    h_ = complex_homology(dims, dmat, lim);

    reps_.resize(static_cast<size_t>(lim) + 1);
    for (int k = 0; k <= lim; ++k) {
        for (const Vec& v : h_.classes[static_cast<size_t>(k)].reps.vecs)
            reps_[static_cast<size_t>(k)].push_back(view_->element(k, v));
        if (h_.hdim(k) > 0) top_nonzero_ = k;
    }
    if (view_->certified_top() && *view_->certified_top() <= lim)
        certified_top_ = top_nonzero_;
}

const Element& CohomologyRing::rep(int k, int i) const {
    return reps_[static_cast<size_t>(k)][static_cast<size_t>(i)];
}

Vec CohomologyRing::rep_coords(int k, int i) const {
    return h_.classes[static_cast<size_t>(k)].reps.vecs[static_cast<size_t>(i)];
}

Vec CohomologyRing::mul(int i, const Vec& u, int j, const Vec& v) const {
    if (i + j > limit())
        throw ValidationError("class product degree exceeds the certified window");
    const Vec a = h_.classes[static_cast<size_t>(i)].lift(u);
    const Vec b = h_.classes[static_cast<size_t>(j)].lift(v);
    return h_.class_of(i + j, view_->mul(i, a, j, b));
}

std::vector<Vec> CohomologyRing::product_table(int i, int j) const {
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(dim(i)) * static_cast<size_t>(dim(j)));
    for (int a = 0; a < dim(i); ++a)
        for (int b = 0; b < dim(j); ++b) {
            Vec u = zero_vec(dim(i)), v = zero_vec(dim(j));
            u[static_cast<size_t>(a)] = 1;
            v[static_cast<size_t>(b)] = 1;
            out.push_back(mul(i, u, j, v));
        }
    return out;
}

Element CohomologyRing::lift(int k, const Vec& u) const {
    return view_->element(k, h_.classes[static_cast<size_t>(k)].lift(u));
}

std::string CohomologyRing::render(int k, const Vec& u) const {
    return view_->algebra().render(lift(k, u));
}

CohomologyRingRef compute_cohomology(AlgebraViewRef view) {
    return std::make_shared<const CohomologyRing>(std::move(view));
}

CohomologyRingRef compute_cohomology(const CdgaRef& a, int n) {
    return compute_cohomology(make_view(a, n));
}

InducedMap induced_map(const MorphismView& mv, CohomologyRingRef src, CohomologyRingRef tgt) {
    if (src->view_ref().get() != mv.src.get() || tgt->view_ref().get() != mv.tgt.get())
        throw ValidationError("induced_map: cohomology rings do not match the morphism view");
    InducedMap im;
    im.source = std::move(src);
    im.target = std::move(tgt);
    const int lim = im.source->limit();
    for (int k = 0; k <= lim; ++k) {
        RationalMatrix m(im.target->dim(k), im.source->dim(k));
        for (int c = 0; c < im.source->dim(k); ++c) {
            const Vec img = mv.mats[static_cast<size_t>(k)].apply(im.source->rep_coords(k, c));
            // phi commutes with d, so the image is a cycle; class_of validates
            const Vec cls = im.target->class_coords(k, img);
            for (size_t r = 0; r < cls.size(); ++r)
                if (!is_zero(cls[r])) m.set(static_cast<int>(r), c, cls[r]);
        }
        im.mats.push_back(std::move(m));
    }
    return im;
}

InducedMap induced_map(const CdgaMorphism& phi, int n) {
    const MorphismView mv = make_morphism_view(phi, n);
    return induced_map(mv, compute_cohomology(mv.src), compute_cohomology(mv.tgt));
}

GradedIdeal kernel_ideal(const InducedMap& im) {
    GradedIdeal ideal;
    ideal.ring = im.source;
    const int lim = im.source->limit();
    ideal.deg.reserve(static_cast<size_t>(lim) + 1);
    for (int k = 0; k <= lim; ++k) ideal.deg.push_back(kernel_basis(im.mats[static_cast<size_t>(k)]));
    return ideal;
}

GradedIdeal kernel_ideal_algebra(const MorphismView& mv) {
    GradedIdeal ideal;
    ideal.ring = mv.src;
    const int lim = mv.src->truncation();
    ideal.deg.reserve(static_cast<size_t>(lim) + 1);
    for (int k = 0; k <= lim; ++k) ideal.deg.push_back(kernel_basis(mv.mats[static_cast<size_t>(k)]));

    // minimal ideal generators: K_k modulo (A^+ . K)_k, degree by degree
    ideal.gens.assign(static_cast<size_t>(lim) + 1, SubspaceBasis());
    for (int k = 0; k <= lim; ++k) {
        ideal.gens[static_cast<size_t>(k)].ambient = mv.src->dim(k);
        if (ideal.deg[static_cast<size_t>(k)].dim() == 0) continue;
        Echelon low(mv.src->dim(k));
        for (int i = 1; i < k; ++i) {
            if (ideal.deg[static_cast<size_t>(k - i)].dim() == 0) continue;
            for (int a = 0; a < mv.src->dim(i); ++a)
                for (const Vec& v : ideal.deg[static_cast<size_t>(k - i)].vecs)
                    low.insert(mv.src->mul_mono_vec(i, a, k - i, v));
        }
        for (const Vec& v : ideal.deg[static_cast<size_t>(k)].vecs)
            if (low.insert(v)) ideal.gens[static_cast<size_t>(k)].vecs.push_back(v);
    }
    return ideal;
}

bool GradedIdeal::is_zero() const {
    for (const SubspaceBasis& b : deg)
        if (b.dim() > 0) return false;
    return true;
}

GradedIdeal ideal_mul(const GradedIdeal& lhs, const GradedIdeal& rhs) {
    if (lhs.ring.get() != rhs.ring.get())
        throw ValidationError("ideal_mul: operands live in different rings");
    const GradedRing& ring = *lhs.ring;
    const int lim = std::min(lhs.limit(), rhs.limit());
    std::vector<Echelon> acc;
    acc.reserve(static_cast<size_t>(lim) + 1);
    for (int k = 0; k <= lim; ++k) acc.emplace_back(ring.dim(k));
    for (int i = 0; i <= lim; ++i) {
        if (lhs.dim_at(i) == 0) continue;
        for (int j = 0; i + j <= lim; ++j) {
            if (rhs.dim_at(j) == 0) continue;
            for (const Vec& u : lhs.deg[static_cast<size_t>(i)].vecs)
                for (const Vec& v : rhs.deg[static_cast<size_t>(j)].vecs)
                    acc[static_cast<size_t>(i + j)].insert(ring.mul(i, u, j, v));
        }
    }
    GradedIdeal out;
    out.ring = lhs.ring;
    out.deg.reserve(static_cast<size_t>(lim) + 1);
    for (int k = 0; k <= lim; ++k) out.deg.push_back(acc[static_cast<size_t>(k)].basis());
    return out;
}

GradedIdeal ideal_power(const GradedIdeal& ideal, int p) {
    if (p < 1) throw ValidationError("ideal_power: exponent must be >= 1");
    GradedIdeal out = ideal;
    out.gens.clear();
    for (int q = 1; q < p; ++q) out = ideal_mul(ideal, out);
    return out;
}

NilpotencyResult nilpotency(const GradedIdeal& ideal) {
    const GradedRing& ring = *ideal.ring;
    const int lim = ideal.limit();
    NilpotencyResult res;
    res.certified = ring.certified_top().has_value();

    if (ideal.dim_at(0) > 0)
        throw ValidationError("nilpotency: the ideal contains the unit degree");
    if (ideal.is_zero()) {
        res.value = 0; // I^0 = ambient ring is nonzero
        return res;
    }

    // power ladder with provenance: each accepted row remembers the ideal
    // basis factor and the row of the previous level it multiplies
    struct Row {
        int deg;
        Vec raw;
        int factor_deg;
        int factor_idx;
        int prev; // row index in the previous level; -1 at level 1
    };
    std::vector<std::vector<Row>> levels;
    levels.emplace_back();
    for (int k = 1; k <= lim; ++k)
        for (int a = 0; a < ideal.dim_at(k); ++a)
            levels.back().push_back(
                Row{k, ideal.deg[static_cast<size_t>(k)].vecs[static_cast<size_t>(a)], k, a, -1});

    while (true) {
        const std::vector<Row>& cur = levels.back();
        if (cur.empty()) break;
        if (static_cast<int>(levels.size()) > lim + 1)
            throw ValidationError("nilpotency: powers do not vanish within the window");
        std::vector<Echelon> acc;
        acc.reserve(static_cast<size_t>(lim) + 1);
        for (int k = 0; k <= lim; ++k) acc.emplace_back(ring.dim(k));
        std::vector<Row> next;
        for (int i = 1; i <= lim; ++i)
            for (int a = 0; a < ideal.dim_at(i); ++a)
                for (size_t r = 0; r < cur.size(); ++r) {
                    const int k = i + cur[r].deg;
                    if (k > lim) continue;
                    Vec prod =
                        ring.mul(i, ideal.deg[static_cast<size_t>(i)].vecs[static_cast<size_t>(a)],
                                 cur[r].deg, cur[r].raw);
                    if (vec_is_zero(prod)) continue;
                    if (acc[static_cast<size_t>(k)].insert(prod))
                        next.push_back(Row{k, std::move(prod), i, a, static_cast<int>(r)});
                }
        levels.push_back(std::move(next));
    }

    res.value = static_cast<int>(levels.size()) - 1;

    // witness from the last nonempty level: lowest degree, first row
    const std::vector<Row>& last = levels[static_cast<size_t>(res.value - 1)];
    size_t best = 0;
    for (size_t r = 1; r < last.size(); ++r)
        if (last[r].deg < last[best].deg) best = r;
    ProductWitness w;
    w.degree = last[best].deg;
    w.product = ring.lift(last[best].deg, last[best].raw);
    int lvl = res.value - 1;
    for (int r = static_cast<int>(best); lvl >= 0; --lvl) {
        const Row& row = levels[static_cast<size_t>(lvl)][static_cast<size_t>(r)];
        w.factors.push_back(ring.lift(
            row.factor_deg,
            ideal.deg[static_cast<size_t>(row.factor_deg)].vecs[static_cast<size_t>(row.factor_idx)]));
        r = row.prev;
    }
    res.witness = std::move(w);
    return res;
}

} // namespace secat
