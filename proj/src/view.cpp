#include "secat/view.hpp"

#include "secat/errors.hpp"

namespace secat {

AlgebraView::AlgebraView(CdgaRef a, int n) : alg_(std::move(a)), n_(n) {
    if (n_ < 1) throw ValidationError("truncation degree must be >= 1");
    basis_ = alg_->basis_up_to(n_ + 1);
    index_.resize(basis_.size());
    for (size_t k = 0; k < basis_.size(); ++k)
        for (size_t i = 0; i < basis_[k].size(); ++i)
            index_[k].emplace(basis_[k][i], static_cast<int>(i));

    for (int k = 0; k <= n_ + 1; ++k)
        if (!basis_[static_cast<size_t>(k)].empty()) top_nonempty_ = k;
    if (alg_->gen_count() == 0) {
        certified_top_ = 0;
    } else if (n_ + 1 - top_nonempty_ >= alg_->max_gen_degree()) {
        // any surviving monomial above the window would have a surviving
        // divisor in the empty gap (top, top + max generator degree]
        certified_top_ = top_nonempty_;
    }

    dmat_.reserve(static_cast<size_t>(n_) + 1);
    for (int k = 0; k <= n_; ++k) {
        RationalMatrix m(dim(k + 1), dim(k));
        for (int c = 0; c < dim(k); ++c) {
            const Element de = alg_->d(alg_->mono_elem(basis_[static_cast<size_t>(k)][static_cast<size_t>(c)]));
            for (const auto& [mono, coeff] : de.terms) {
                const int r = index_of(k + 1, mono);
                if (r < 0)
                    throw ValidationError("internal: differential left the enumerated basis");
                m.set(r, c, coeff);
            }
        }
        dmat_.push_back(std::move(m));
    }

    table_at_.assign(static_cast<size_t>(n_ + 1) * static_cast<size_t>(n_ + 1), -1);
    for (int i = 0; i <= n_; ++i)
        for (int j = 0; i + j <= n_; ++j) {
            const int di = dim(i), dj = dim(j);
            if (di == 0 || dj == 0) continue;
            std::vector<Entry> tab(static_cast<size_t>(di) * static_cast<size_t>(dj), Entry{-1, 0});
            for (int x = 0; x < di; ++x)
                for (int y = 0; y < dj; ++y) {
                    const auto p = alg_->mul_mono(basis_[static_cast<size_t>(i)][static_cast<size_t>(x)],
                                                  basis_[static_cast<size_t>(j)][static_cast<size_t>(y)]);
                    if (!p) continue;
                    const int idx = index_of(i + j, p->second);
                    if (idx < 0)
                        throw ValidationError("internal: product left the enumerated basis");
                    tab[static_cast<size_t>(x) * static_cast<size_t>(dj) + static_cast<size_t>(y)] =
                        Entry{idx, static_cast<int8_t>(p->first)};
                }
            table_at_[static_cast<size_t>(i) * static_cast<size_t>(n_ + 1) + static_cast<size_t>(j)] =
                static_cast<int>(tables_.size());
            tables_.push_back(std::move(tab));
        }
}

int AlgebraView::dim(int k) const {
    if (k < 0 || k >= static_cast<int>(basis_.size())) return 0;
    return static_cast<int>(basis_[static_cast<size_t>(k)].size());
}

int AlgebraView::index_of(int k, const Monomial& m) const {
    if (k < 0 || k >= static_cast<int>(index_.size())) return -1;
    const auto it = index_[static_cast<size_t>(k)].find(m);
    return it == index_[static_cast<size_t>(k)].end() ? -1 : it->second;
}

Vec AlgebraView::coords(int k, const Element& e) const {
    Vec v(static_cast<size_t>(dim(k)));
    for (const auto& [m, c] : e.terms) {
        if (m.degree != k)
            throw ValidationError("coords: element is not homogeneous of degree " + std::to_string(k));
        const int i = index_of(k, m);
        if (i < 0) throw ValidationError("coords: monomial outside the enumerated basis");
        v[static_cast<size_t>(i)] = c;
    }
    return v;
}

Element AlgebraView::element(int k, const Vec& u) const {
    if (static_cast<int>(u.size()) != dim(k))
        throw ValidationError("element: coordinate dimension mismatch");
    Element e = alg_->zero();
    for (size_t i = 0; i < u.size(); ++i)
        if (!is_zero(u[i])) e.terms.emplace(basis_[static_cast<size_t>(k)][i], u[i]);
    return e;
}

const AlgebraView::Entry* AlgebraView::table(int i, int j) const {
    if (i < 0 || j < 0 || i + j > n_) return nullptr;
    const int slot = table_at_[static_cast<size_t>(i) * static_cast<size_t>(n_ + 1) + static_cast<size_t>(j)];
    return slot < 0 ? nullptr : tables_[static_cast<size_t>(slot)].data();
}

Vec AlgebraView::mul(int i, const Vec& u, int j, const Vec& v) const {
    if (i + j > n_) throw ValidationError("product degree exceeds the truncation");
    Vec out(static_cast<size_t>(dim(i + j)));
    const Entry* tab = table(i, j);
    if (!tab) return out;
    const int dj = dim(j);
    for (int x = 0; x < dim(i); ++x) {
        if (is_zero(u[static_cast<size_t>(x)])) continue;
        const Entry* row = tab + static_cast<size_t>(x) * static_cast<size_t>(dj);
        for (int y = 0; y < dj; ++y) {
            if (row[y].idx < 0 || is_zero(v[static_cast<size_t>(y)])) continue;
            if (row[y].sign > 0)
                out[static_cast<size_t>(row[y].idx)] += u[static_cast<size_t>(x)] * v[static_cast<size_t>(y)];
            else
                out[static_cast<size_t>(row[y].idx)] -= u[static_cast<size_t>(x)] * v[static_cast<size_t>(y)];
        }
    }
    return out;
}

Vec AlgebraView::mul_mono_vec(int i, int a_idx, int j, const Vec& v) const {
    if (i + j > n_) throw ValidationError("product degree exceeds the truncation");
    Vec out(static_cast<size_t>(dim(i + j)));
    const Entry* tab = table(i, j);
    if (!tab) return out;
    const int dj = dim(j);
    const Entry* row = tab + static_cast<size_t>(a_idx) * static_cast<size_t>(dj);
    for (int y = 0; y < dj; ++y) {
        if (row[y].idx < 0 || is_zero(v[static_cast<size_t>(y)])) continue;
        if (row[y].sign > 0)
            out[static_cast<size_t>(row[y].idx)] += v[static_cast<size_t>(y)];
        else
            out[static_cast<size_t>(row[y].idx)] -= v[static_cast<size_t>(y)];
    }
    return out;
}

std::string AlgebraView::render(int k, const Vec& u) const { return alg_->render(element(k, u)); }

AlgebraViewRef make_view(const CdgaRef& a, int n) {
    return std::make_shared<const AlgebraView>(a, n);
}

MorphismView make_morphism_view(const CdgaMorphism& phi, AlgebraViewRef src, AlgebraViewRef tgt) {
    if (src->algebra_ref().get() != phi.source.get() || tgt->algebra_ref().get() != phi.target.get())
        throw ValidationError("morphism view: views do not match the morphism");
    if (src->truncation() != tgt->truncation())
        throw ValidationError("morphism view: source and target truncations differ");
    MorphismView mv;
    mv.phi = phi;
    mv.src = std::move(src);
    mv.tgt = std::move(tgt);
    const int n = mv.src->truncation();
    mv.mats.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        RationalMatrix m(mv.tgt->dim(k), mv.src->dim(k));
        for (int c = 0; c < mv.src->dim(k); ++c) {
            const Element img = apply_morphism(phi, mv.src->algebra().mono_elem(mv.src->basis(k)[static_cast<size_t>(c)]));
            const Vec v = mv.tgt->coords(k, img);
            for (size_t r = 0; r < v.size(); ++r)
                if (!is_zero(v[r])) m.set(static_cast<int>(r), c, v[r]);
        }
        mv.mats.push_back(std::move(m));
    }
    return mv;
}

MorphismView make_morphism_view(const CdgaMorphism& phi, int n) {
    return make_morphism_view(phi, make_view(phi.source, n), make_view(phi.target, n));
}

std::optional<int> MorphismView::first_nonsurjective_degree() const {
    for (int k = 0; k <= src->truncation(); ++k) {
        if (tgt->dim(k) == 0) continue;
        if (rank(mats[static_cast<size_t>(k)]) < tgt->dim(k)) return k;
    }
    return std::nullopt;
}

} // namespace secat
