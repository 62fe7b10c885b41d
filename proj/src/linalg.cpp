#include "secat/linalg.hpp"

#include <algorithm>

#include "secat/errors.hpp"

namespace secat {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.row[i].emplace_back(i, Rat(1));
    return m;
}

void RationalMatrix::set(int r, int c, const Rat& v0) {
    Rat v = v0;
    v.canonicalize();
    auto& rw = row[static_cast<size_t>(r)];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != rw.end() && it->first == c) {
        if (is_zero(v))
            rw.erase(it);
        else
            it->second = v;
    } else if (!is_zero(v)) {
        rw.insert(it, {c, v});
    }
}

Rat RationalMatrix::at(int r, int c) const {
    const auto& rw = row[static_cast<size_t>(r)];
    auto it = std::lower_bound(rw.begin(), rw.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != rw.end() && it->first == c) return it->second;
    return Rat(0);
}

Vec RationalMatrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw ValidationError("matrix apply: dimension mismatch");
    Vec y(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[static_cast<size_t>(r)])
            y[static_cast<size_t>(r)] += v * x[static_cast<size_t>(c)];
    return y;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[static_cast<size_t>(r)])
            t.row[static_cast<size_t>(c)].emplace_back(r, v);
    return t;
}

RrefResult rref(const RationalMatrix& m) {
    const int nr = m.rows, nc = m.cols;
    // dense integer workspace: clear denominators per row
    std::vector<std::vector<mpz_class>> a(static_cast<size_t>(nr),
                                          std::vector<mpz_class>(static_cast<size_t>(nc)));
    for (int r = 0; r < nr; ++r) {
        mpz_class lcm = 1;
        for (const auto& [c, v] : m.row[static_cast<size_t>(r)])
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
        for (const auto& [c, v] : m.row[static_cast<size_t>(r)]) {
            mpz_class t = v.get_num() * (lcm / v.get_den());
            a[static_cast<size_t>(r)][static_cast<size_t>(c)] = t;
        }
    }

    // fraction-free (Bareiss) forward elimination
    std::vector<int> pivots;
    mpz_class prev = 1;
    int prow = 0;
    for (int pc = 0; pc < nc && prow < nr; ++pc) {
        int sel = -1;
        for (int r = prow; r < nr; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(pc)] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[static_cast<size_t>(prow)], a[static_cast<size_t>(sel)]);
        const mpz_class piv = a[static_cast<size_t>(prow)][static_cast<size_t>(pc)];
        for (int r = prow + 1; r < nr; ++r) {
            const mpz_class f = a[static_cast<size_t>(r)][static_cast<size_t>(pc)];
            for (int c = pc; c < nc; ++c) {
                mpz_class t = piv * a[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                              f * a[static_cast<size_t>(prow)][static_cast<size_t>(c)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] = t;
            }
        }
        prev = piv;
        pivots.push_back(pc);
        ++prow;
    }

    // normalize to reduced fractions: unit pivots, back-eliminate
    const int nrank = static_cast<int>(pivots.size());
    std::vector<Vec> rows(static_cast<size_t>(nrank));
    for (int i = 0; i < nrank; ++i) {
        Vec v(static_cast<size_t>(nc));
        const Rat piv(a[static_cast<size_t>(i)][static_cast<size_t>(pivots[static_cast<size_t>(i)])]);
        for (int c = pivots[static_cast<size_t>(i)]; c < nc; ++c) {
            Rat q(a[static_cast<size_t>(i)][static_cast<size_t>(c)]);
            q /= piv;
            q.canonicalize();
            v[static_cast<size_t>(c)] = q;
        }
        rows[static_cast<size_t>(i)] = std::move(v);
    }
    for (int i = nrank - 1; i >= 0; --i)
        for (int j = 0; j < i; ++j) {
            const Rat f = rows[static_cast<size_t>(j)][static_cast<size_t>(pivots[static_cast<size_t>(i)])];
            if (is_zero(f)) continue;
            for (int c = pivots[static_cast<size_t>(i)]; c < nc; ++c)
                rows[static_cast<size_t>(j)][static_cast<size_t>(c)] -=
                    f * rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
        }

    RrefResult out;
    out.mat = RationalMatrix(nr, nc);
    for (int i = 0; i < nrank; ++i)
        for (int c = 0; c < nc; ++c)
            if (!is_zero(rows[static_cast<size_t>(i)][static_cast<size_t>(c)]))
                out.mat.row[static_cast<size_t>(i)].emplace_back(c, rows[static_cast<size_t>(i)][static_cast<size_t>(c)]);
    out.pivots = std::move(pivots);
    return out;
}

int rank(const RationalMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

bool Echelon::insert(Vec v) {
    if (static_cast<int>(v.size()) != amb_)
        throw ValidationError("echelon insert: dimension mismatch");
    size_t k = 0;
    int piv = -1;
    for (int c = 0; c < amb_; ++c) {
        while (k < rows_.size() && pivots_[k] < c) ++k;
        if (k < rows_.size() && pivots_[k] == c && !is_zero(v[static_cast<size_t>(c)])) {
            const Rat f = v[static_cast<size_t>(c)];
            const Vec& rw = rows_[k];
            for (int j = c; j < amb_; ++j)
                if (!is_zero(rw[static_cast<size_t>(j)]))
                    v[static_cast<size_t>(j)] -= f * rw[static_cast<size_t>(j)];
        } else if (!is_zero(v[static_cast<size_t>(c)])) {
            piv = c;
            break;
        }
    }
    if (piv < 0) return false;
    const Rat lead = v[static_cast<size_t>(piv)];
    for (int j = piv; j < amb_; ++j)
        if (!is_zero(v[static_cast<size_t>(j)])) v[static_cast<size_t>(j)] /= lead;
    // eliminate the new pivot column from existing rows
    for (size_t i = 0; i < rows_.size(); ++i) {
        const Rat f = rows_[i][static_cast<size_t>(piv)];
        if (is_zero(f)) continue;
        for (int j = piv; j < amb_; ++j)
            if (!is_zero(v[static_cast<size_t>(j)]))
                rows_[i][static_cast<size_t>(j)] -= f * v[static_cast<size_t>(j)];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
    const size_t idx = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, piv);
    rows_.insert(rows_.begin() + static_cast<long>(idx), std::move(v));
    return true;
}

Vec Echelon::reduce(Vec v) const {
    if (static_cast<int>(v.size()) != amb_)
        throw ValidationError("echelon reduce: dimension mismatch");
    for (size_t i = 0; i < rows_.size(); ++i) {
        const Rat f = v[static_cast<size_t>(pivots_[i])];
        if (is_zero(f)) continue;
        const Vec& rw = rows_[i];
        for (int j = pivots_[i]; j < amb_; ++j)
            if (!is_zero(rw[static_cast<size_t>(j)]))
                v[static_cast<size_t>(j)] -= f * rw[static_cast<size_t>(j)];
    }
    return v;
}

SubspaceBasis Echelon::basis() const {
    SubspaceBasis b(amb_);
    b.vecs = rows_;
    return b;
}

SubspaceBasis kernel_basis(const RationalMatrix& m) {
    const RrefResult r = rref(m);
    std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
    for (int p : r.pivots) is_piv[static_cast<size_t>(p)] = true;
    Echelon e(m.cols);
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[static_cast<size_t>(f)]) continue;
        Vec v(static_cast<size_t>(m.cols));
        v[static_cast<size_t>(f)] = 1;
        for (size_t i = 0; i < r.pivots.size(); ++i)
            v[static_cast<size_t>(r.pivots[i])] = -r.mat.at(static_cast<int>(i), f);
        e.insert(std::move(v));
    }
    return e.basis();
}

SubspaceBasis image_basis(const RationalMatrix& m) {
    Echelon e(m.rows);
    const RationalMatrix t = m.transpose();
    for (int c = 0; c < t.rows; ++c) {
        Vec v(static_cast<size_t>(m.rows));
        for (const auto& [r, val] : t.row[static_cast<size_t>(c)])
            v[static_cast<size_t>(r)] = val;
        e.insert(std::move(v));
    }
    return e.basis();
}

bool membership(const Vec& v, const SubspaceBasis& w) {
    if (static_cast<int>(v.size()) != w.ambient)
        throw ValidationError("membership: ambient dimension mismatch");
    Echelon e(w.ambient);
    for (const Vec& b : w.vecs) e.insert(b);
    return e.contains(v);
}

QuotientMap quotient_map(const SubspaceBasis& v, const SubspaceBasis& w) {
    if (v.ambient != w.ambient)
        throw ValidationError("quotient_map: ambient dimension mismatch");
    Echelon vspan(v.ambient);
    for (const Vec& b : v.vecs) vspan.insert(b);
    for (const Vec& b : w.vecs)
        if (!vspan.contains(b))
            throw ValidationError("quotient_map: W is not contained in V");

    QuotientMap q;
    q.ambient = v.ambient;
    q.sub = w;

    // augmented echelon over [ambient | rep coordinates]; W rows carry zero
    // tails, each accepted representative carries a unit tail.
    const int reps_cap = v.dim();
    const int width = v.ambient + reps_cap;
    Echelon aug(width);
    auto widen = [&](const Vec& x, int rep_idx) {
        Vec y(static_cast<size_t>(width));
        std::copy(x.begin(), x.end(), y.begin());
        if (rep_idx >= 0) y[static_cast<size_t>(v.ambient + rep_idx)] = 1;
        return y;
    };
    for (const Vec& b : w.vecs) aug.insert(widen(b, -1));
    int nreps = 0;
    for (const Vec& b : v.vecs) {
        Vec cand = widen(b, nreps);
        // decide independence against ambient part only
        Vec probe = cand;
        Vec red = aug.reduce(probe);
        bool indep = false;
        for (int c = 0; c < v.ambient; ++c)
            if (!is_zero(red[static_cast<size_t>(c)])) { indep = true; break; }
        if (indep) {
            aug.insert(std::move(cand));
            q.reps.vecs.push_back(b);
            ++nreps;
        }
    }
    q.reps.ambient = v.ambient;
    q.red_rows_ = aug.rows();
    q.red_pivots_ = aug.pivots();
    return q;
}

Vec QuotientMap::coords(const Vec& v) const {
    if (static_cast<int>(v.size()) != ambient)
        throw ValidationError("quotient coords: dimension mismatch");
    const int width = ambient + static_cast<int>(red_rows_.empty() ? 0 : red_rows_[0].size() - static_cast<size_t>(ambient));
    Vec x(static_cast<size_t>(std::max(width, ambient)));
    std::copy(v.begin(), v.end(), x.begin());
    for (size_t i = 0; i < red_rows_.size(); ++i) {
        if (red_pivots_[i] >= ambient) break;
        const Rat f = x[static_cast<size_t>(red_pivots_[i])];
        if (is_zero(f)) continue;
        const Vec& rw = red_rows_[i];
        for (size_t j = static_cast<size_t>(red_pivots_[i]); j < rw.size(); ++j)
            if (!is_zero(rw[j])) x[j] -= f * rw[j];
    }
    for (int c = 0; c < ambient; ++c)
        if (!is_zero(x[static_cast<size_t>(c)]))
            throw ValidationError("quotient coords: vector not in V");
    Vec out(static_cast<size_t>(reps.dim()));
    for (int i = 0; i < reps.dim(); ++i)
        out[static_cast<size_t>(i)] = -x[static_cast<size_t>(ambient + i)];
    return out;
}

Vec QuotientMap::lift(const Vec& q) const {
    if (static_cast<int>(q.size()) != reps.dim())
        throw ValidationError("quotient lift: dimension mismatch");
    Vec v(static_cast<size_t>(ambient));
    for (int i = 0; i < reps.dim(); ++i) {
        if (is_zero(q[static_cast<size_t>(i)])) continue;
        for (int c = 0; c < ambient; ++c)
            v[static_cast<size_t>(c)] += q[static_cast<size_t>(i)] * reps.vecs[static_cast<size_t>(i)][static_cast<size_t>(c)];
    }
    return v;
}

SubspaceBasis span_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient)
        throw ValidationError("span_sum: ambient dimension mismatch");
    Echelon e(a.ambient);
    for (const Vec& v : a.vecs) e.insert(v);
    for (const Vec& v : b.vecs) e.insert(v);
    return e.basis();
}

} // namespace secat
