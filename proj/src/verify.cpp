#include "secat/verify.hpp"

#include <atomic>
#include <random>
#include <thread>

#include "secat/errors.hpp"
#include "secat/models.hpp"

namespace secat {

bool VerificationReport::all_pass() const {
    for (const InequalityCheck& c : checks)
        if (c.outcome == CheckOutcome::Fail) return false;
    return true;
}

bool VerificationReport::conclusive() const {
    for (const InequalityCheck& c : checks)
        if (c.outcome == CheckOutcome::Inconclusive) return false;
    return true;
}

CheckOutcome evaluate_claim(const std::string& relation, int lhs, bool lhs_exact, int rhs,
                            bool rhs_exact) {
    if (relation == "<=") {
        if (lhs_exact && lhs <= rhs) return CheckOutcome::Pass; // true rhs only grows
        if (lhs_exact && rhs_exact && lhs > rhs) return CheckOutcome::Fail;
        return CheckOutcome::Inconclusive;
    }
    if (relation == ">=") {
        if (rhs_exact && lhs >= rhs) return CheckOutcome::Pass; // true lhs only grows
        if (lhs_exact && rhs_exact && lhs < rhs) return CheckOutcome::Fail;
        return CheckOutcome::Inconclusive;
    }
    if (relation == "==") {
        if (lhs_exact && rhs_exact) return lhs == rhs ? CheckOutcome::Pass : CheckOutcome::Fail;
        return CheckOutcome::Inconclusive;
    }
    throw ValidationError("evaluate_claim: unknown relation '" + relation + "'");
}

namespace {

InequalityCheck make_check(std::string label, std::string relation, int lhs, bool lhs_exact,
                           int rhs, bool rhs_exact) {
    InequalityCheck c;
    c.label = std::move(label);
    c.relation = std::move(relation);
    c.lhs = lhs;
    c.rhs = rhs;
    c.lhs_exact = lhs_exact;
    c.rhs_exact = rhs_exact;
    c.outcome = evaluate_claim(c.relation, lhs, lhs_exact, rhs, rhs_exact);
    c.slack = c.relation == "<=" ? rhs - lhs : lhs - rhs;
    return c;
}

bool exact(const InvariantResult& r) { return r.status == CertStatus::Exact; }

// degreewise span of K1^{m+1} (x) A2 + A1 (x) K2^{n+1} inside the tensor
// algebra, then membership of every basis vector of L^{m+n+1}
InequalityCheck kernel_decomposition_check(const CdgaMorphism& phi1, const CdgaMorphism& phi2,
                                           const CdgaMorphism& tensor, int n, int m1, int m2) {
    const MorphismView mv1 = make_morphism_view(phi1, n);
    const MorphismView mv2 = make_morphism_view(phi2, n);
    const MorphismView mvt = make_morphism_view(tensor, n);
    const AlgebraView& tv = *mvt.src;

    const GradedIdeal k1p = kernel_power(mv1, m1 + 1);
    const GradedIdeal k2p = kernel_power(mv2, m2 + 1);
    const GradedIdeal lp = kernel_power(mvt, m1 + m2 + 2);

    const std::vector<int> map1 = tensor_rank_map(*phi1.source, tv.algebra(), 0);
    const std::vector<int> map2 =
        tensor_rank_map(*phi2.source, tv.algebra(), phi1.source->gen_count());

    // embed a factor-algebra subspace vector into the tensor algebra
    auto embed = [&](const AlgebraView& fv, const std::vector<int>& map, int deg, const Vec& v) {
        Vec out = zero_vec(tv.dim(deg));
        for (size_t i = 0; i < v.size(); ++i) {
            if (is_zero(v[i])) continue;
            const Monomial m = remap_monomial(fv.basis(deg)[i], map);
            const int idx = tv.index_of(deg, m);
            if (idx < 0) throw ValidationError("tensor embedding left the enumerated basis");
            out[static_cast<size_t>(idx)] += v[i];
        }
        return out;
    };

    const AlgebraView& v1 = *mv1.src;
    const AlgebraView& v2 = *mv2.src;
    std::vector<Echelon> rhs;
    rhs.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) rhs.emplace_back(tv.dim(k));

    for (int i = 0; i <= n; ++i) {
        for (const Vec& u : k1p.deg[static_cast<size_t>(i)].vecs) {
            const Vec eu = embed(v1, map1, i, u);
            for (int j = 0; i + j <= n; ++j)
                for (int b = 0; b < v2.dim(j); ++b) {
                    const Monomial mb = remap_monomial(v2.basis(j)[static_cast<size_t>(b)], map2);
                    const int idx = tv.index_of(j, mb);
                    rhs[static_cast<size_t>(i + j)].insert(tv.mul_mono_vec(j, idx, i, eu));
                }
        }
        for (const Vec& u : k2p.deg[static_cast<size_t>(i)].vecs) {
            const Vec eu = embed(v2, map2, i, u);
            for (int j = 0; i + j <= n; ++j)
                for (int b = 0; b < v1.dim(j); ++b) {
                    const Monomial mb = remap_monomial(v1.basis(j)[static_cast<size_t>(b)], map1);
                    const int idx = tv.index_of(j, mb);
                    rhs[static_cast<size_t>(i + j)].insert(tv.mul_mono_vec(j, idx, i, eu));
                }
        }
    }

    bool included = true;
    for (int k = 0; k <= n && included; ++k)
        for (const Vec& v : lp.deg[static_cast<size_t>(k)].vecs)
            if (!rhs[static_cast<size_t>(k)].contains(v)) {
                included = false;
                break;
            }

    InequalityCheck c;
    c.label = "L^" + std::to_string(m1 + m2 + 2) + " inside K1^" + std::to_string(m1 + 1) +
              "(x)A2 + A1(x)K2^" + std::to_string(m2 + 1);
    c.relation = "<=";
    c.lhs = included ? 0 : 1;
    c.rhs = 0;
    c.lhs_exact = c.rhs_exact = true;
    c.outcome = included ? CheckOutcome::Pass : CheckOutcome::Fail;
    c.slack = 0;
    return c;
}

std::string pair_instance(const CdgaMorphism& phi1, const CdgaMorphism& phi2) {
    return "(" + phi1.name + ": " + phi1.source->name() + " -> " + phi1.target->name() + ") x (" +
           phi2.name + ": " + phi2.source->name() + " -> " + phi2.target->name() + ")";
}

struct PairOptions {
    bool subadditivity = false;
    bool lower_chain = false;
    bool d0_oracle = false;
};

VerificationReport product_pair_report(const CdgaMorphism& phi1, const CdgaMorphism& phi2, int n,
                                       const PairOptions& opt) {
    VerificationReport rep;
    rep.instance = pair_instance(phi1, phi2);
    rep.truncation = n;

    const CdgaMorphism tensor = tensor_morphism(phi1, phi2);
    InvariantResult r1 = hsecat(phi1, n);
    InvariantResult r2 = hsecat(phi2, n);
    InvariantResult rt = hsecat(tensor, n);
    r1.name = "hsecat(phi1)";
    r2.name = "hsecat(phi2)";
    rt.name = "hsecat(phi1(x)phi2)";

    const bool d0 = phi1.source->has_zero_differential() && phi2.source->has_zero_differential();

    if (opt.subadditivity) {
        rep.checks.push_back(make_check("hsecat(phi1(x)phi2) <= hsecat(phi1) + hsecat(phi2)", "<=",
                                        rt.value, exact(rt), r1.value + r2.value,
                                        exact(r1) && exact(r2)));
        if (d0)
            rep.checks.push_back(
                kernel_decomposition_check(phi1, phi2, tensor, n, r1.value, r2.value));
    }

    if (opt.lower_chain) {
        InvariantResult nk2 = nil_ker_H(phi2, n);
        nk2.name = "nil-ker(phi2)";
        rep.checks.push_back(make_check("hsecat(phi1(x)phi2) >= hsecat(phi1) + nil-ker(phi2)",
                                        ">=", rt.value, exact(rt), r1.value + nk2.value,
                                        exact(r1) && exact(nk2)));
        const PoincareDualityReport pd1 = check_poincare_duality(phi1.source, n);
        const PoincareDualityReport pd2 = check_poincare_duality(phi2.source, n);
        const PoincareDualityReport pdt = check_poincare_duality(tensor.source, n);
        if (pd1.is_pd() && pd2.is_pd() && pdt.is_pd()) {
            InequalityCheck eq = make_check(
                "msecat(phi1(x)phi2) == msecat(phi1) + msecat(phi2)   [PD bases]", "==", rt.value,
                exact(rt), r1.value + r2.value, exact(r1) && exact(r2));
            rep.checks.push_back(std::move(eq));
        }
        rep.values.push_back(std::move(nk2));
    }

    if (opt.d0_oracle && d0) {
        auto oracle = [&](const CdgaMorphism& phi, const InvariantResult& h, const char* tag) {
            const MorphismView mv = make_morphism_view(phi, n);
            const NilpotencyResult nil = nilpotency(kernel_ideal_algebra(mv));
            rep.checks.push_back(make_check(std::string("hsecat == nil ker   [d=0, ") + tag + "]",
                                            "==", h.value, exact(h), nil.value, nil.certified));
        };
        oracle(phi1, r1, "phi1");
        oracle(phi2, r2, "phi2");
        oracle(tensor, rt, "phi1(x)phi2");
    }

    rep.values.insert(rep.values.begin(), {std::move(r1), std::move(r2), std::move(rt)});
    return rep;
}

} // namespace

VerificationReport verify_subadditivity(const CdgaMorphism& phi1, const CdgaMorphism& phi2,
                                        int n) {
    PairOptions opt;
    opt.subadditivity = true;
    return product_pair_report(phi1, phi2, n, opt);
}

VerificationReport verify_lower_chain(const CdgaMorphism& phi1, const CdgaMorphism& phi2, int n) {
    PairOptions opt;
    opt.lower_chain = true;
    return product_pair_report(phi1, phi2, n, opt);
}

VerificationReport verify_sphere_additivity(const CdgaRef& a, int k, int n, int trunc) {
    const PoincareDualityReport pd = check_poincare_duality(a, trunc);
    if (!pd.is_pd())
        throw PreconditionError("sphere additivity requires a Poincare duality algebra: " +
                                (pd.reason.empty() ? a->name() : pd.reason));
    const CdgaRef sk = cohomology_sphere(k);
    const CdgaRef prod = tensor_product(a, sk);

    InvariantResult lhs = tc_invariant(prod, n, trunc);
    InvariantResult ra = tc_invariant(a, n, trunc);
    InvariantResult rs = tc_invariant(sk, n, trunc);

    VerificationReport rep;
    rep.instance = "tc_" + std::to_string(n) + " additivity: " + a->name() + " x S^" +
                   std::to_string(k);
    rep.truncation = trunc;
    rep.checks.push_back(make_check("mtc_n(X x S^k) == mtc_n(X) + mtc_n(S^k)", "==", lhs.value,
                                    exact(lhs), ra.value + rs.value, exact(ra) && exact(rs)));
    rep.values = {std::move(lhs), std::move(ra), std::move(rs)};
    return rep;
}

FuzzParams minimal_fuzz_params() {
    FuzzParams p;
    p.max_gens = 1;
    p.max_degree = 1;
    p.max_rel_exp = 2;
    p.dim_budget = 2;
    p.top_budget = 1;
    return p;
}

namespace {

// uniform draw in [lo, hi] using raw engine output only (portable)
int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

struct BuiltAlgebra {
    CdgaRef alg;
    int top = 0;
    std::vector<std::vector<Monomial>> basis;
};

BuiltAlgebra random_algebra(std::mt19937_64& rng, const FuzzParams& p, const std::string& name) {
    for (;;) {
        const int gens = pick(rng, 1, p.max_gens);
        std::vector<GenDecl> decls;
        for (int i = 0; i < gens; ++i)
            decls.push_back(GenDecl{"g" + std::to_string(i), pick(rng, 1, p.max_degree)});
        std::vector<std::vector<std::pair<int, int>>> rels;
        for (int i = 0; i < gens; ++i)
            if (decls[static_cast<size_t>(i)].degree % 2 == 0)
                rels.push_back({{i, pick(rng, 2, p.max_rel_exp)}});
        // occasionally one extra mixed monomial relation
        if (gens >= 2 && pick(rng, 0, 2) == 0) {
            const int a = pick(rng, 0, gens - 2);
            const int b = pick(rng, a + 1, gens - 1);
            auto cap = [&](int g) {
                return decls[static_cast<size_t>(g)].degree % 2 != 0 ? 1 : pick(rng, 1, 2);
            };
            rels.push_back({{a, cap(a)}, {b, cap(b)}});
        }
        CdgaRef alg = Cdga::make(name, decls, rels);
        const int bound = std::min(40, 2 + 4 * alg->max_gen_degree() * gens);
        const auto basis = alg->basis_up_to(bound);
        int total = 0, top = 0;
        for (int d = 0; d <= bound; ++d) {
            total += static_cast<int>(basis[static_cast<size_t>(d)].size());
            if (!basis[static_cast<size_t>(d)].empty()) top = d;
        }
        // reject presentations that are too large to fuzz quickly, and
        // presentations the window cannot certify (top too close to bound)
        if (total > p.dim_budget || top > p.top_budget || bound - top < alg->max_gen_degree())
            continue;
        return BuiltAlgebra{alg, top, basis};
    }
}

CdgaMorphism random_projection(std::mt19937_64& rng, const BuiltAlgebra& built,
                               const std::string& name) {
    // quotient by a random monomial ideal J: always surjective
    std::vector<std::pair<int, Monomial>> positive;
    for (int d = 1; d <= built.top; ++d)
        for (const Monomial& m : built.basis[static_cast<size_t>(d)]) positive.emplace_back(d, m);
    std::vector<std::vector<std::pair<int, int>>> rels;
    for (const Monomial& m : built.alg->relations()) {
        std::vector<std::pair<int, int>> fs;
        for (const VarPow& vp : m.f) fs.emplace_back(built.alg->gen_by_rank(vp.gen).index, vp.exp);
        rels.push_back(std::move(fs));
    }
    if (!positive.empty()) {
        const int count = pick(rng, 1, 2);
        for (int j = 0; j < count; ++j) {
            const auto& [d, m] = positive[static_cast<size_t>(pick(
                rng, 0, static_cast<int>(positive.size()) - 1))];
            std::vector<std::pair<int, int>> fs;
            for (const VarPow& vp : m.f) fs.emplace_back(built.alg->gen_by_rank(vp.gen).index, vp.exp);
            rels.push_back(std::move(fs));
        }
    }
    std::vector<GenDecl> decls;
    for (const Generator& g : built.alg->generators()) decls.push_back(GenDecl{g.name, g.degree});
    const CdgaRef target = Cdga::make(name, decls, rels);
    return make_morphism("proj", built.alg, target, {});
}

} // namespace

RandomInstance random_instance(uint64_t seed, const FuzzParams& params) {
    std::mt19937_64 rng(seed);
    const BuiltAlgebra a1 = random_algebra(rng, params, "F1");
    const BuiltAlgebra a2 = random_algebra(rng, params, "F2");
    RandomInstance inst;
    inst.phi1 = random_projection(rng, a1, "B1");
    inst.phi2 = random_projection(rng, a2, "B2");
    inst.description = "fuzz(seed=" + std::to_string(seed) + ")";
    // wide enough that finite-dimensionality of the tensor algebra is
    // certified: an empty gap of max generator degree above the top
    const int maxgen = std::max(a1.alg->max_gen_degree(), a2.alg->max_gen_degree());
    inst.truncation = std::min(40, a1.top + a2.top + std::max(2, maxgen));
    return inst;
}

VerificationReport verify_fuzz_instance(uint64_t seed, const FuzzParams& params) {
    const RandomInstance inst = random_instance(seed, params);
    PairOptions opt;
    opt.subadditivity = true;
    opt.lower_chain = true;
    opt.d0_oracle = true;
    VerificationReport rep = product_pair_report(inst.phi1, inst.phi2, inst.truncation, opt);
    rep.instance = inst.description;
    return rep;
}

std::vector<VerificationReport> run_fuzz(uint64_t lo, uint64_t hi, int threads,
                                         const FuzzParams& params) {
    if (hi < lo) throw ValidationError("run_fuzz: empty seed range");
    const size_t count = static_cast<size_t>(hi - lo + 1);
    std::vector<VerificationReport> out(count);
    if (threads < 1) threads = 1;
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                out[i] = verify_fuzz_instance(lo + i, params);
            }
        });
    for (std::thread& th : pool) th.join();
    return out;
}

} // namespace secat
