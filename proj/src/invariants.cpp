#include "secat/invariants.hpp"

#include <deque>

#include "secat/errors.hpp"

namespace secat {

namespace {

std::vector<int> view_dims(const AlgebraView& v, int upto) {
    std::vector<int> out(static_cast<size_t>(upto) + 1);
    for (int k = 0; k <= upto; ++k) out[static_cast<size_t>(k)] = v.dim(k);
    return out;
}

std::vector<RationalMatrix> view_dmats(const AlgebraView& v, int upto) {
    std::vector<RationalMatrix> out;
    out.reserve(static_cast<size_t>(upto) + 1);
    for (int k = 0; k <= upto; ++k) out.push_back(v.d_matrix(k));
    return out;
}

SubspaceBasis full_space(int dim) {
    SubspaceBasis b(dim);
    for (int i = 0; i < dim; ++i) {
        Vec v = zero_vec(dim);
        v[static_cast<size_t>(i)] = 1;
        b.vecs.push_back(std::move(v));
    }
    return b;
}

// Power ladder for an algebra-level kernel ideal. K^p is the ideal
// closure of the span Pi_p of p-fold products of the minimal ideal
// generators; Pi rows carry provenance so a surviving product of p ideal
// generators can be reported as a witness.
class KernelLadder {
public:
    KernelLadder(const AlgebraView& view, const GradedIdeal& kernel)
        : view_(view), kernel_(kernel), lim_(kernel.limit()) {
        for (int r = 0; r < view_.algebra().gen_count(); ++r) {
            const int gd = view_.algebra().degree_of_rank(r);
            if (gd > lim_) continue;
            const int idx = view_.index_of(gd, view_.algebra().mono_gen(r));
            if (idx >= 0) alg_gens_.emplace_back(gd, idx);
        }
        // level 1: Pi_1 = ideal generators, K^1 = K
        pi_.emplace_back();
        for (int k = 1; k <= lim_; ++k)
            for (size_t a = 0; a < kernel_.gens[static_cast<size_t>(k)].vecs.size(); ++a)
                pi_.back().push_back(PiRow{k, kernel_.gens[static_cast<size_t>(k)].vecs[a], k,
                                           static_cast<int>(a), -1});
        pow_.push_back(kernel_.deg);
    }

    // spans of K^p per degree, p >= 1
    const std::vector<SubspaceBasis>& power(int p) {
        while (static_cast<int>(pow_.size()) < p) extend();
        return pow_[static_cast<size_t>(p) - 1];
    }

    bool power_is_zero(int p) {
        for (const SubspaceBasis& b : power(p))
            if (b.dim() > 0) return false;
        return true;
    }

    // a nonzero product of p ideal generators, when one exists
    std::optional<ProductWitness> witness(int p) {
        power(p);
        const std::vector<PiRow>& rows = pi_[static_cast<size_t>(p) - 1];
        if (rows.empty()) return std::nullopt;
        size_t best = 0;
        for (size_t r = 1; r < rows.size(); ++r)
            if (rows[r].deg < rows[best].deg) best = r;
        ProductWitness w;
        w.degree = rows[best].deg;
        w.product = view_.element(rows[best].deg, rows[best].raw);
        int lvl = p - 1;
        for (int r = static_cast<int>(best); lvl >= 0; --lvl) {
            const PiRow& row = pi_[static_cast<size_t>(lvl)][static_cast<size_t>(r)];
            w.factors.push_back(view_.element(
                row.gen_deg,
                kernel_.gens[static_cast<size_t>(row.gen_deg)].vecs[static_cast<size_t>(row.gen_idx)]));
            r = row.prev;
        }
        return w;
    }

private:
    struct PiRow {
        int deg;
        Vec raw;
        int gen_deg;
        int gen_idx;
        int prev;
    };

    void extend() {
        const std::vector<PiRow>& cur = pi_.back();
        std::vector<PiRow> next;
        std::vector<Echelon> indep;
        indep.reserve(static_cast<size_t>(lim_) + 1);
        for (int k = 0; k <= lim_; ++k) indep.emplace_back(view_.dim(k));
        for (int i = 1; i <= lim_; ++i)
            for (size_t a = 0; a < kernel_.gens[static_cast<size_t>(i)].vecs.size(); ++a)
                for (size_t r = 0; r < cur.size(); ++r) {
                    const int k = i + cur[r].deg;
                    if (k > lim_) continue;
                    Vec prod = view_.mul(i, kernel_.gens[static_cast<size_t>(i)].vecs[a],
                                         cur[r].deg, cur[r].raw);
                    if (vec_is_zero(prod)) continue;
                    if (indep[static_cast<size_t>(k)].insert(prod))
                        next.push_back(PiRow{k, std::move(prod), i, static_cast<int>(a),
                                             static_cast<int>(r)});
                }

        // ideal closure of Pi under multiplication by algebra generators
        std::vector<Echelon> acc;
        acc.reserve(static_cast<size_t>(lim_) + 1);
        for (int k = 0; k <= lim_; ++k) acc.emplace_back(view_.dim(k));
        std::deque<std::pair<int, Vec>> work;
        for (const PiRow& row : next)
            if (acc[static_cast<size_t>(row.deg)].insert(row.raw)) work.emplace_back(row.deg, row.raw);
        while (!work.empty()) {
            auto [k, v] = std::move(work.front());
            work.pop_front();
            for (const auto& [gd, gidx] : alg_gens_) {
                const int k2 = k + gd;
                if (k2 > lim_) continue;
                Vec w = view_.mul_mono_vec(gd, gidx, k, v);
                if (vec_is_zero(w)) continue;
                if (acc[static_cast<size_t>(k2)].insert(w)) work.emplace_back(k2, std::move(w));
            }
        }
        std::vector<SubspaceBasis> spans;
        spans.reserve(static_cast<size_t>(lim_) + 1);
        for (int k = 0; k <= lim_; ++k) spans.push_back(acc[static_cast<size_t>(k)].basis());
        pi_.push_back(std::move(next));
        pow_.push_back(std::move(spans));
    }

    const AlgebraView& view_;
    const GradedIdeal& kernel_;
    int lim_;
    std::vector<std::pair<int, int>> alg_gens_; // (degree, basis index) per generator
    std::vector<std::vector<PiRow>> pi_;
    std::vector<std::vector<SubspaceBasis>> pow_;
};

struct QuotientData {
    std::vector<QuotientMap> proj;    // 0..N
    std::vector<RationalMatrix> dbar; // 0..N-1
    std::vector<int> qdims;           // 0..N
};

QuotientData build_quotient(const AlgebraView& view, const std::vector<SubspaceBasis>& kp) {
    const int n = view.truncation();
    QuotientData q;
    q.proj.reserve(static_cast<size_t>(n) + 1);
    q.qdims.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        q.proj.push_back(quotient_map(full_space(view.dim(k)), kp[static_cast<size_t>(k)]));
        q.qdims[static_cast<size_t>(k)] = q.proj.back().dim();
    }
    // the kernel power must be a differential ideal: d(K^p) inside K^p
    for (int k = 0; k < n; ++k) {
        Echelon target(view.dim(k + 1));
        for (const Vec& v : kp[static_cast<size_t>(k + 1)].vecs) target.insert(v);
        for (const Vec& v : kp[static_cast<size_t>(k)].vecs)
            if (!target.contains(view.d_matrix(k).apply(v)))
                throw ValidationError("kernel power is not stable under the differential");
    }
    q.dbar.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        RationalMatrix m(q.qdims[static_cast<size_t>(k + 1)], q.qdims[static_cast<size_t>(k)]);
        for (int c = 0; c < q.qdims[static_cast<size_t>(k)]; ++c) {
            const Vec img = view.d_matrix(k).apply(
                q.proj[static_cast<size_t>(k)].reps.vecs[static_cast<size_t>(c)]);
            const Vec w = q.proj[static_cast<size_t>(k + 1)].coords(img);
            for (size_t r = 0; r < w.size(); ++r)
                if (!is_zero(w[r])) m.set(static_cast<int>(r), c, w[r]);
        }
        q.dbar.push_back(std::move(m));
    }
    return q;
}

// kernel of H^k(rho_m) pulled back to a cycle, when nonzero
std::optional<InjectivityFailure> injectivity_failure(const AlgebraView& view,
                                                      const ComplexHomology& ha,
                                                      const QuotientData& q, int m) {
    const int lim = ha.limit;
    const ComplexHomology hq = complex_homology(q.qdims, q.dbar, lim);
    for (int k = 0; k <= lim; ++k) {
        if (ha.hdim(k) == 0) continue;
        RationalMatrix mat(hq.hdim(k), ha.hdim(k));
        for (int c = 0; c < ha.hdim(k); ++c) {
            const Vec& rep = ha.classes[static_cast<size_t>(k)].reps.vecs[static_cast<size_t>(c)];
            const Vec cls = hq.class_of(k, q.proj[static_cast<size_t>(k)].coords(rep));
            for (size_t r = 0; r < cls.size(); ++r)
                if (!is_zero(cls[r])) mat.set(static_cast<int>(r), c, cls[r]);
        }
        const SubspaceBasis ker = kernel_basis(mat);
        if (ker.dim() > 0) {
            Vec z = zero_vec(view.dim(k));
            for (int c = 0; c < ha.hdim(k); ++c) {
                if (is_zero(ker.vecs[0][static_cast<size_t>(c)])) continue;
                const Vec& rep = ha.classes[static_cast<size_t>(k)].reps.vecs[static_cast<size_t>(c)];
                for (size_t t = 0; t < z.size(); ++t)
                    z[t] += ker.vecs[0][static_cast<size_t>(c)] * rep[t];
            }
            return InjectivityFailure{m, k, view.element(k, z)};
        }
    }
    return std::nullopt;
}

std::string morphism_instance(const CdgaMorphism& phi) {
    return phi.name + ": " + phi.source->name() + " -> " + phi.target->name();
}

void require_surjective(const MorphismView& mv, const std::string& what) {
    if (const auto bad = mv.first_nonsurjective_degree())
        throw PreconditionError(what + ": morphism is not surjective in degree " +
                                std::to_string(*bad));
}

InvariantResult hsecat_impl(const CdgaMorphism& phi, int n, const std::string& name,
                            const std::string& instance) {
    const AlgebraViewRef src = make_view(phi.source, n);
    const AlgebraViewRef tgt = make_view(phi.target, n);
    const MorphismView mv = make_morphism_view(phi, src, tgt);
    require_surjective(mv, name);

    const GradedIdeal kernel = kernel_ideal_algebra(mv);
    const ComplexHomology ha = complex_homology(view_dims(*src, n + 1), view_dmats(*src, n), n - 1);
    KernelLadder ladder(*src, kernel);

    InvariantResult res;
    res.name = name;
    res.instance = instance;
    res.truncation = n;
    res.owner = phi.source;
    res.status = (src->certified_top() && *src->certified_top() <= n - 1) ? CertStatus::Exact
                                                                          : CertStatus::LowerBound;
    for (int m = 0;; ++m) {
        if (m > n)
            throw ValidationError("hsecat: no homology-injective level within the window");
        const QuotientData q = build_quotient(*src, ladder.power(m + 1));
        auto failure = injectivity_failure(*src, ha, q, m);
        if (!failure) {
            res.value = m;
            break;
        }
        res.failures.push_back(std::move(*failure));
    }
    if (phi.source->has_zero_differential() && res.value >= 1)
        res.product_witness = ladder.witness(res.value);
    return res;
}

} // namespace

Element QuotientCdga::project_element(const Element& e) const {
    const auto deg = e.degree();
    if (!deg) {
        if (e.is_zero()) return parent->zero();
        throw ValidationError("project_element: element is not homogeneous");
    }
    const Vec v = view->coords(*deg, e);
    return view->element(*deg, proj[static_cast<size_t>(*deg)].lift(project(*deg, v)));
}

QuotientCdga quotient_rho(const CdgaMorphism& phi, int m, int n) {
    if (m < 0) throw PreconditionError("quotient_rho: m must be >= 0");
    const AlgebraViewRef src = make_view(phi.source, n);
    const AlgebraViewRef tgt = make_view(phi.target, n);
    const MorphismView mv = make_morphism_view(phi, src, tgt);
    require_surjective(mv, "quotient_rho");

    GradedIdeal kernel = kernel_ideal_algebra(mv);
    KernelLadder ladder(*src, kernel);
    QuotientCdga out;
    out.parent = phi.source;
    out.m = m;
    out.truncation = n;
    out.view = src;
    out.kernel_power.ring = src;
    out.kernel_power.deg = ladder.power(m + 1);
    QuotientData q = build_quotient(*src, out.kernel_power.deg);
    out.proj = std::move(q.proj);
    out.dbar = std::move(q.dbar);
    return out;
}

GradedIdeal kernel_power(const MorphismView& mv, int p) {
    if (p < 1) throw ValidationError("kernel_power: exponent must be >= 1");
    const GradedIdeal kernel = kernel_ideal_algebra(mv);
    KernelLadder ladder(*mv.src, kernel);
    GradedIdeal out;
    out.ring = mv.src;
    out.deg = ladder.power(p);
    return out;
}

bool rho_homology_injective(const CdgaMorphism& phi, int m, int n) {
    const AlgebraViewRef src = make_view(phi.source, n);
    const AlgebraViewRef tgt = make_view(phi.target, n);
    const MorphismView mv = make_morphism_view(phi, src, tgt);
    require_surjective(mv, "rho_homology_injective");
    const GradedIdeal kernel = kernel_ideal_algebra(mv);
    const ComplexHomology ha = complex_homology(view_dims(*src, n + 1), view_dmats(*src, n), n - 1);
    KernelLadder ladder(*src, kernel);
    const QuotientData q = build_quotient(*src, ladder.power(m + 1));
    return !injectivity_failure(*src, ha, q, m).has_value();
}

InvariantResult hsecat(const CdgaMorphism& phi, int n) {
    return hsecat_impl(phi, n, "hsecat", morphism_instance(phi));
}

InvariantResult nil_ker_H(const CdgaMorphism& phi, int n) {
    const InducedMap im = induced_map(phi, n);
    const GradedIdeal ideal = kernel_ideal(im);
    const NilpotencyResult nil = nilpotency(ideal);
    InvariantResult res;
    res.name = "nil-ker";
    res.instance = morphism_instance(phi);
    res.value = nil.value;
    res.status = nil.certified ? CertStatus::Exact : CertStatus::LowerBound;
    res.truncation = n;
    res.owner = phi.source;
    res.product_witness = nil.witness;
    return res;
}

InvariantResult cup_length(const CdgaRef& a, int n) {
    InvariantResult res = nil_ker_H(augmentation(a), n);
    res.name = "cup-length";
    res.instance = "H^+(" + a->name() + ")";
    return res;
}

InvariantResult htc(const CdgaRef& a, int n, int trunc) {
    if (n < 2) throw PreconditionError("htc: n must be >= 2");
    const CdgaMorphism mu = mult_model(a, n);
    return hsecat_impl(mu, trunc, "htc_" + std::to_string(n), morphism_instance(mu));
}

PoincareDualityReport check_poincare_duality(const CdgaRef& a, int n) {
    const CohomologyRingRef h = compute_cohomology(a, n);
    const int window = h->limit();
    PoincareDualityReport rep;
    const int top = h->top_nonzero();

    if (!h->certified_top().has_value()) {
        if (3 * top > 2 * window) {
            rep.status = PoincareDualityReport::Inconclusive;
            rep.reason = "cannot certify finite-dimensionality: classes appear in the top "
                         "third of the certified window";
            return rep;
        }
        rep.reason = "finite-dimensionality inferred from an empty top third of the window";
    }
    rep.formal_dimension = top;

    if (h->dim(top) != 1) {
        rep.status = PoincareDualityReport::NotPD;
        rep.reason = "top degree " + std::to_string(top) + " has dimension " +
                     std::to_string(h->dim(top));
        return rep;
    }
    Vec fund = zero_vec(1);
    fund[0] = 1;
    rep.fundamental_class = h->lift(top, fund);

    bool perfect = true;
    for (int k = 0; 2 * k <= top; ++k) {
        const int dk = h->dim(k), dc = h->dim(top - k);
        RationalMatrix pairing(dk, dc);
        for (int i = 0; i < dk; ++i)
            for (int j = 0; j < dc; ++j) {
                Vec u = zero_vec(dk), v = zero_vec(dc);
                u[static_cast<size_t>(i)] = 1;
                v[static_cast<size_t>(j)] = 1;
                const Vec p = h->mul(k, u, top - k, v);
                if (!is_zero(p[0])) pairing.set(i, j, p[0]);
            }
        const int r = rank(pairing);
        rep.pairings.push_back(PoincareDualityReport::PairingRank{k, top - k, dk, dc, r});
        if (dk != dc || r != dk) perfect = false;
    }
    if (perfect) {
        rep.status = PoincareDualityReport::PD;
    } else {
        rep.status = PoincareDualityReport::NotPD;
        rep.reason = "multiplication pairing is not perfect";
    }
    return rep;
}

InvariantResult msecat_pd(const CdgaMorphism& phi, int n) {
    const PoincareDualityReport pd = check_poincare_duality(phi.source, n);
    if (!pd.is_pd())
        throw PreconditionError("msecat not computable by this tool without PD" +
                                (pd.reason.empty() ? "" : " (" + pd.reason + ")"));
    InvariantResult res = hsecat_impl(phi, n, "msecat", morphism_instance(phi));
    res.note = "msecat = hsecat over a Poincare duality base (formal dimension " +
               std::to_string(pd.formal_dimension) + ")";
    return res;
}

InvariantResult tc_invariant(const CdgaRef& a, int n, int trunc) {
    if (n < 2) throw PreconditionError("tc: n must be >= 2");
    const CdgaMorphism mu = mult_model(a, n);
    const PoincareDualityReport pd = check_poincare_duality(mu.source, trunc);
    InvariantResult res = hsecat_impl(mu, trunc, "htc_" + std::to_string(n), morphism_instance(mu));
    if (pd.is_pd()) {
        res.name = "mtc_" + std::to_string(n);
        res.note = "htc = mtc over a Poincare duality base (formal dimension " +
                   std::to_string(pd.formal_dimension) + ")";
    }
    return res;
}

} // namespace secat
