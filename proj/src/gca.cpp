#include "secat/gca.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "secat/errors.hpp"

namespace secat {

bool Monomial::operator<(const Monomial& o) const {
    if (degree != o.degree) return degree < o.degree;
    const size_t n = std::min(f.size(), o.f.size());
    for (size_t i = 0; i < n; ++i) {
        if (f[i].gen != o.f[i].gen) return f[i].gen < o.f[i].gen;
        if (f[i].exp != o.f[i].exp) return f[i].exp > o.f[i].exp; // x^3 before x^2*y
    }
    return f.size() < o.f.size();
}

bool Element::homogeneous() const {
    if (terms.empty()) return true;
    const int d = terms.begin()->first.degree;
    for (const auto& [m, c] : terms)
        if (m.degree != d) return false;
    return true;
}

std::optional<int> Element::degree() const {
    if (terms.empty() || !homogeneous()) return std::nullopt;
    return terms.begin()->first.degree;
}

void Cdga::index_generators() {
    const int n = gen_count();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return gens_[static_cast<size_t>(a)].degree < gens_[static_cast<size_t>(b)].degree;
    });
    decl_of_rank_ = order;
    rank_of_decl_.assign(static_cast<size_t>(n), 0);
    deg_of_rank_.assign(static_cast<size_t>(n), 0);
    for (int r = 0; r < n; ++r) {
        rank_of_decl_[static_cast<size_t>(order[static_cast<size_t>(r)])] = r;
        deg_of_rank_[static_cast<size_t>(r)] = gens_[static_cast<size_t>(order[static_cast<size_t>(r)])].degree;
    }
    max_gen_degree_ = 1;
    for (const Generator& g : gens_) max_gen_degree_ = std::max(max_gen_degree_, g.degree);
    default_N_ = std::min(40, 8 * max_gen_degree_);
}

CdgaRef Cdga::make(std::string name, std::vector<GenDecl> gens,
                   std::vector<std::vector<std::pair<int, int>>> relations) {
    auto a = std::shared_ptr<Cdga>(new Cdga());
    a->name_ = std::move(name);
    std::set<std::string> seen;
    for (size_t i = 0; i < gens.size(); ++i) {
        const GenDecl& g = gens[i];
        if (g.degree < 1)
            throw ValidationError("generator '" + g.name + "' has degree " +
                                  std::to_string(g.degree) + "; degrees must be >= 1");
        if (!seen.insert(g.name).second)
            throw ValidationError("duplicate generator name '" + g.name + "'");
        a->gens_.push_back(Generator{g.name, g.name, g.degree, static_cast<int>(i), 0});
    }
    a->index_generators();
    for (const auto& factors : relations) {
        std::map<int, int> by_decl;
        for (const auto& [decl, exp] : factors) {
            if (decl < 0 || decl >= a->gen_count())
                throw ValidationError("relation references unknown generator");
            if (exp < 1) throw ValidationError("relation exponent must be >= 1");
            by_decl[decl] += exp;
        }
        bool zero = false;
        std::vector<std::pair<int, int>> acc;
        for (const auto& [decl, exp] : by_decl) {
            if (a->gens_[static_cast<size_t>(decl)].degree % 2 != 0 && exp > 1) zero = true;
            acc.emplace_back(decl, exp);
        }
        if (zero) continue; // odd square: already 0, nothing to declare
        Monomial m = a->mono_from_decl(acc);
        if (m.is_unit())
            throw ValidationError("the unit monomial cannot be declared as a relation");
        a->relations_.push_back(std::move(m));
    }
    std::sort(a->relations_.begin(), a->relations_.end());
    a->relations_.erase(std::unique(a->relations_.begin(), a->relations_.end()),
                        a->relations_.end());
    a->d_of_rank_.assign(static_cast<size_t>(a->gen_count()), Element{a.get(), {}});
    a->zero_diff_ = true;
    return a;
}

CdgaRef Cdga::with_differential(const std::map<std::string, Element>& d) const {
    auto a = std::shared_ptr<Cdga>(new Cdga(*this));
    a->d_of_rank_.assign(static_cast<size_t>(gen_count()), Element{a.get(), {}});
    a->zero_diff_ = true;
    for (const auto& [gname, img] : d) {
        const auto r = rank_by_name(gname);
        if (!r) throw ValidationError("differential given for unknown generator '" + gname + "'");
        Element e = a->adopt(img);
        if (!e.is_zero()) {
            const auto deg = e.degree();
            if (!deg)
                throw ValidationError("d(" + gname + ") is not homogeneous");
            if (*deg != degree_of_rank(*r) + 1)
                throw ValidationError("d(" + gname + ") has degree " + std::to_string(*deg) +
                                      ", expected " + std::to_string(degree_of_rank(*r) + 1));
            a->zero_diff_ = false;
        }
        a->d_of_rank_[static_cast<size_t>(*r)] = std::move(e);
    }
    a->validate_differential();
    return a;
}

void Cdga::validate_differential() const {
    for (int r = 0; r < gen_count(); ++r) {
        const Element dd = d(d_of_rank_[static_cast<size_t>(r)]);
        if (!dd.is_zero())
            throw ValidationError("d^2 != 0 on generator '" + gen_by_rank(r).name +
                                  "': d(d(" + gen_by_rank(r).name + ")) = " + render(dd));
    }
    // relation ideal must be stable under d: every monomial of d(rel),
    // computed without the relation kill, stays divisible by a relation
    for (const Monomial& rel : relations_) {
        const Element drel = d_mono(rel, /*reduce=*/false);
        for (const auto& [m, c] : drel.terms)
            if (!divisible_by_relation(m))
                throw ValidationError("relation ideal not stable under d: d(" + render_mono(rel) +
                                      ") has term " + render_mono(m) +
                                      " outside the relation ideal");
    }
}

std::optional<int> Cdga::rank_by_name(const std::string& n) const {
    for (const Generator& g : gens_)
        if (g.name == n) return rank_of_decl_[static_cast<size_t>(g.index)];
    return std::nullopt;
}

bool Cdga::divisible_by_relation(const Monomial& m) const {
    for (const Monomial& rel : relations_) {
        if (rel.degree > m.degree) break; // relations sorted by degree first
        size_t i = 0;
        bool div = true;
        for (const VarPow& rf : rel.f) {
            while (i < m.f.size() && m.f[i].gen < rf.gen) ++i;
            if (i == m.f.size() || m.f[i].gen != rf.gen || m.f[i].exp < rf.exp) {
                div = false;
                break;
            }
        }
        if (div) return true;
    }
    return false;
}

std::optional<std::pair<int, Monomial>> Cdga::mul_mono(const Monomial& a, const Monomial& b,
                                                       bool reduce) const {
    Monomial out;
    out.degree = a.degree + b.degree;
    out.f.reserve(a.f.size() + b.f.size());
    // suffix counts of odd factors in a, for the Koszul sign
    std::vector<int> odd_suffix(a.f.size() + 1, 0);
    for (size_t i = a.f.size(); i-- > 0;)
        odd_suffix[i] = odd_suffix[i + 1] + (odd_rank(a.f[i].gen) ? 1 : 0);
    int sign = 1;
    size_t i = 0, j = 0;
    while (i < a.f.size() && j < b.f.size()) {
        if (a.f[i].gen < b.f[j].gen) {
            out.f.push_back(a.f[i++]);
        } else if (a.f[i].gen > b.f[j].gen) {
            if (odd_rank(b.f[j].gen) && (odd_suffix[i] & 1)) sign = -sign;
            out.f.push_back(b.f[j++]);
        } else {
            if (odd_rank(a.f[i].gen)) return std::nullopt; // odd square
            out.f.push_back(VarPow{a.f[i].gen, a.f[i].exp + b.f[j].exp});
            ++i;
            ++j;
        }
    }
    for (; i < a.f.size(); ++i) out.f.push_back(a.f[i]);
    for (; j < b.f.size(); ++j) out.f.push_back(b.f[j]);
    if (reduce && divisible_by_relation(out)) return std::nullopt;
    return std::make_pair(sign, std::move(out));
}

Monomial Cdga::mono_from_decl(const std::vector<std::pair<int, int>>& factors) const {
    std::map<int, int> by_rank;
    for (const auto& [decl, exp] : factors) {
        if (decl < 0 || decl >= gen_count())
            throw ValidationError("monomial references unknown generator");
        by_rank[rank_of_decl_[static_cast<size_t>(decl)]] += exp;
    }
    Monomial m;
    for (const auto& [r, e] : by_rank) {
        if (e < 1) throw ValidationError("monomial exponent must be >= 1");
        if (odd_rank(r) && e > 1)
            throw ValidationError("odd generator '" + gen_by_rank(r).name +
                                  "' cannot carry exponent " + std::to_string(e));
        m.f.push_back(VarPow{r, e});
        m.degree += e * degree_of_rank(r);
    }
    return m;
}

Monomial Cdga::mono_gen(int rank, int exp) const {
    Monomial m;
    m.f.push_back(VarPow{rank, exp});
    m.degree = exp * degree_of_rank(rank);
    return m;
}

Element Cdga::zero() const { return Element{this, {}}; }

Element Cdga::unit() const {
    Element e{this, {}};
    e.terms.emplace(Monomial{}, Rat(1));
    return e;
}

Element Cdga::gen_elem(const std::string& name) const {
    const auto r = rank_by_name(name);
    if (!r) throw ValidationError("unknown generator '" + name + "'");
    return gen_elem_rank(*r);
}

Element Cdga::gen_elem_rank(int rank) const { return mono_elem(mono_gen(rank)); }

Element Cdga::mono_elem(const Monomial& m, const Rat& c) const {
    Element e{this, {}};
    if (!is_zero(c) && !divisible_by_relation(m)) e.terms.emplace(m, c);
    return e;
}

static void check_owner(const Cdga* self, const Element& e, const char* what) {
    if (e.owner != nullptr && e.owner != self)
        throw ValidationError(std::string(what) + ": element belongs to a different algebra");
}

Element Cdga::add(const Element& a, const Element& b) const {
    check_owner(this, a, "add");
    check_owner(this, b, "add");
    Element out = a;
    out.owner = this;
    for (const auto& [m, c] : b.terms) {
        auto [it, fresh] = out.terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) out.terms.erase(it);
        }
    }
    return out;
}

Element Cdga::sub(const Element& a, const Element& b) const { return add(a, scale(Rat(-1), b)); }

Element Cdga::scale(const Rat& c, const Element& a) const {
    check_owner(this, a, "scale");
    Element out{this, {}};
    if (is_zero(c)) return out;
    for (const auto& [m, v] : a.terms) out.terms.emplace(m, c * v);
    return out;
}

Element Cdga::mul_impl(const Element& a, const Element& b, bool reduce) const {
    Element out{this, {}};
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            const auto p = mul_mono(ma, mb, reduce);
            if (!p) continue;
            Rat c = ca * cb;
            if (p->first < 0) c = -c;
            auto [it, fresh] = out.terms.emplace(p->second, c);
            if (!fresh) {
                it->second += c;
                if (is_zero(it->second)) out.terms.erase(it);
            }
        }
    return out;
}

Element Cdga::mul(const Element& a, const Element& b) const {
    check_owner(this, a, "multiply");
    check_owner(this, b, "multiply");
    return mul_impl(a, b, true);
}

Element Cdga::pow(const Element& a, int e) const {
    check_owner(this, a, "pow");
    if (e < 0) throw ValidationError("negative power of an algebra element");
    Element out = unit();
    for (int i = 0; i < e; ++i) out = mul(out, a);
    return out;
}

Element Cdga::d_mono(const Monomial& m, bool reduce) const {
    Element acc{this, {}};
    int prefix_deg = 0;
    for (size_t i = 0; i < m.f.size(); ++i) {
        const VarPow vp = m.f[i];
        const Element& dg = d_of_rank_[static_cast<size_t>(vp.gen)];
        if (!dg.is_zero()) {
            Monomial prefix, suffix;
            for (size_t j = 0; j < i; ++j) {
                prefix.f.push_back(m.f[j]);
                prefix.degree += m.f[j].exp * degree_of_rank(m.f[j].gen);
            }
            for (size_t j = i + 1; j < m.f.size(); ++j) {
                suffix.f.push_back(m.f[j]);
                suffix.degree += m.f[j].exp * degree_of_rank(m.f[j].gen);
            }
            Element term{this, {}};
            term.terms.emplace(prefix, Rat(vp.exp));
            term = mul_impl(term, adopt(dg), reduce);
            if (vp.exp > 1) {
                Element rest{this, {}};
                rest.terms.emplace(mono_gen(vp.gen, vp.exp - 1), Rat(1));
                term = mul_impl(term, rest, reduce);
            }
            Element suf{this, {}};
            suf.terms.emplace(suffix, Rat(1));
            term = mul_impl(term, suf, reduce);
            if (prefix_deg % 2 != 0) term = scale(Rat(-1), term);
            acc = add(acc, term);
        }
        prefix_deg += vp.exp * degree_of_rank(vp.gen);
    }
    return acc;
}

Element Cdga::d(const Element& a) const {
    check_owner(this, a, "differential");
    Element acc{this, {}};
    for (const auto& [m, c] : a.terms) acc = add(acc, scale(c, d_mono(m, true)));
    return acc;
}

std::vector<std::vector<Monomial>> Cdga::basis_up_to(int N) const {
    if (N < 0) throw ValidationError("basis_up_to: negative truncation");
    std::vector<std::vector<Monomial>> out(static_cast<size_t>(N) + 1);
    Monomial cur;
    // extend cur by generators of rank >= r, ascending
    auto rec = [&](auto&& self, int r) -> void {
        out[static_cast<size_t>(cur.degree)].push_back(cur);
        for (int g = r; g < gen_count(); ++g) {
            const int gd = degree_of_rank(g);
            const int cap = std::min(odd_rank(g) ? 1 : N, (N - cur.degree) / gd);
            for (int e = 1; e <= cap; ++e) {
                cur.f.push_back(VarPow{g, e});
                cur.degree += e * gd;
                const bool div = divisible_by_relation(cur);
                if (!div) self(self, g + 1);
                cur.degree -= e * gd;
                cur.f.pop_back();
                if (div) break; // larger exponents stay divisible
            }
        }
    };
    rec(rec, 0);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}

Element Cdga::adopt(const Element& e) const {
    Element out = e;
    out.owner = this;
    return out;
}

std::string Cdga::render_mono(const Monomial& m) const {
    auto factor_str = [&](const VarPow& vp, bool base) {
        const Generator& g = gen_by_rank(vp.gen);
        std::string s = base ? g.base_name : g.name;
        if (vp.exp > 1) s += "^" + std::to_string(vp.exp);
        return s;
    };
    if (num_slots_ <= 1) {
        if (m.is_unit()) return std::string("1");
        std::string s;
        for (size_t i = 0; i < m.f.size(); ++i) {
            if (i) s += "*";
            s += factor_str(m.f[i], false);
        }
        return s;
    }
    std::vector<std::string> slots(static_cast<size_t>(num_slots_));
    for (const VarPow& vp : m.f) {
        std::string& s = slots[static_cast<size_t>(slot_of_rank(vp.gen))];
        if (!s.empty()) s += "*";
        s += factor_str(vp, true);
    }
    std::string out;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (i) out += "@";
        out += slots[i].empty() ? "1" : slots[i];
    }
    return out;
}

std::string Cdga::render(const Element& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        const bool neg = sgn(c) < 0;
        Rat a = abs(c);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (a != 1 || m.is_unit()) {
            out += rat_str(a);
            if (!m.is_unit()) out += "*";
        }
        if (!m.is_unit()) out += render_mono(m);
    }
    return out;
}

bool Cdga::same_presentation(const Cdga& o) const {
    if (gens_.size() != o.gens_.size() || relations_ != o.relations_) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree)
            return false;
    for (int r = 0; r < gen_count(); ++r)
        if (d_of_rank_[static_cast<size_t>(r)].terms != o.d_of_rank_[static_cast<size_t>(r)].terms)
            return false;
    return true;
}

std::vector<int> tensor_rank_map(const Cdga& factor, const Cdga& whole, int decl_offset) {
    std::vector<int> map(static_cast<size_t>(factor.gen_count()));
    for (int r = 0; r < factor.gen_count(); ++r) {
        const int decl = factor.gen_by_rank(r).index;
        map[static_cast<size_t>(r)] = whole.rank_of_decl(decl + decl_offset);
    }
    return map;
}

Monomial remap_monomial(const Monomial& m, const std::vector<int>& rank_map) {
    Monomial out;
    out.degree = m.degree;
    out.f.reserve(m.f.size());
    for (const VarPow& vp : m.f) out.f.push_back(VarPow{rank_map[static_cast<size_t>(vp.gen)], vp.exp});
    // rank maps from tensor embeddings are monotone, so order is preserved
    for (size_t i = 1; i < out.f.size(); ++i)
        if (out.f[i - 1].gen >= out.f[i].gen)
            throw ValidationError("internal: non-monotone rank map in tensor embedding");
    return out;
}

Element remap_element(const Cdga& dst, const std::vector<int>& rank_map, const Element& e) {
    Element out{&dst, {}};
    for (const auto& [m, c] : e.terms) out.terms.emplace(remap_monomial(m, rank_map), c);
    return out;
}

namespace {
Element remap_elem(const Element& e, const std::vector<int>& rank_map, const Cdga* owner) {
    return remap_element(*owner, rank_map, e);
}
} // namespace

CdgaRef tensor_product(const CdgaRef& a, const CdgaRef& b) {
    std::map<std::string, int> name_count;
    for (const Generator& g : a->generators()) ++name_count[g.name];
    for (const Generator& g : b->generators()) ++name_count[g.name];
    std::set<std::string> taken;
    auto unique_name = [&](const Generator& g, int slot) {
        std::string n = g.name;
        if (name_count[g.name] > 1) n = g.base_name + "_" + std::to_string(slot);
        while (!taken.insert(n).second) n += "_";
        return n;
    };

    std::vector<GenDecl> gens;
    for (const Generator& g : a->generators())
        gens.push_back(GenDecl{unique_name(g, g.slot), g.degree});
    for (const Generator& g : b->generators())
        gens.push_back(GenDecl{unique_name(g, g.slot + a->num_slots()), g.degree});

    std::vector<std::vector<std::pair<int, int>>> rels;
    const int offs = a->gen_count();
    for (const Monomial& m : a->relations()) {
        std::vector<std::pair<int, int>> fs;
        for (const VarPow& vp : m.f) fs.emplace_back(a->gen_by_rank(vp.gen).index, vp.exp);
        rels.push_back(std::move(fs));
    }
    for (const Monomial& m : b->relations()) {
        std::vector<std::pair<int, int>> fs;
        for (const VarPow& vp : m.f) fs.emplace_back(b->gen_by_rank(vp.gen).index + offs, vp.exp);
        rels.push_back(std::move(fs));
    }

    CdgaRef shell = Cdga::make(a->name() + "*" + b->name(), gens, rels);
    // fix up slots and base names on a private copy
    auto t = std::shared_ptr<Cdga>(new Cdga(*shell));
    {
        size_t i = 0;
        for (const Generator& g : a->generators()) {
            t->gens_[i].base_name = g.base_name;
            t->gens_[i].slot = g.slot;
            ++i;
        }
        for (const Generator& g : b->generators()) {
            t->gens_[i].base_name = g.base_name;
            t->gens_[i].slot = g.slot + a->num_slots();
            ++i;
        }
        t->num_slots_ = a->num_slots() + b->num_slots();
    }

    const std::vector<int> map_a = tensor_rank_map(*a, *t, 0);
    const std::vector<int> map_b = tensor_rank_map(*b, *t, offs);
    bool zero_diff = true;
    for (int r = 0; r < a->gen_count(); ++r) {
        Element img = remap_elem(a->d_gen(r), map_a, t.get());
        if (!img.is_zero()) zero_diff = false;
        t->d_of_rank_[static_cast<size_t>(map_a[static_cast<size_t>(r)])] = std::move(img);
    }
    for (int r = 0; r < b->gen_count(); ++r) {
        Element img = remap_elem(b->d_gen(r), map_b, t.get());
        if (!img.is_zero()) zero_diff = false;
        t->d_of_rank_[static_cast<size_t>(map_b[static_cast<size_t>(r)])] = std::move(img);
    }
    t->zero_diff_ = zero_diff;
    t->validate_differential();
    return t;
}

CdgaRef tensor_power(const CdgaRef& a, int n) {
    if (n < 1) throw ValidationError("tensor_power: exponent must be >= 1");
    CdgaRef out = a;
    for (int i = 1; i < n; ++i) out = tensor_product(out, a);
    return out;
}

} // namespace secat
