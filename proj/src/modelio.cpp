#include "secat/modelio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "secat/errors.hpp"
#include "secat/models.hpp"

namespace secat {

namespace {

// ------------------------------------------------------------------ lexer

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0;
    int col = 0;
};

std::vector<Token> lex(const std::string& text, const std::string& filename) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Tok::Ident;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            t.kind = Tok::Number;
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (c == '|' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
            t.kind = Tok::Punct;
            t.text = "|->";
            advance(3);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Tok::Punct;
            t.text = "->";
            advance(2);
        } else if (std::string("{};:^*+-/=,").find(c) != std::string::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(filename + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                 ": unexpected character '" + std::string(1, c) + "'",
                             line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// ----------------------------------------------------------------- parser

class Parser {
public:
    Parser(const std::string& text, std::string filename)
        : file_(std::move(filename)), toks_(lex(text, file_)) {}

    ModelFile parse() {
        ModelFile out;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind == Tok::Ident && t.text == "algebra") {
                auto [name, alg] = parse_algebra(out);
                out.algebras.emplace_back(name, alg);
            } else if (t.kind == Tok::Ident && t.text == "morphism") {
                auto [name, phi] = parse_morphism(out);
                out.morphisms.emplace_back(name, std::move(phi));
            } else {
                fail(t, "expected 'algebra' or 'morphism'");
            }
        }
        return out;
    }

private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(where(t) + ": " + msg, t.line, t.col);
    }
    std::string where(const Token& t) const {
        return file_ + ":" + std::to_string(t.line) + ":" + std::to_string(t.col);
    }
    const Token& peek(size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool accept_punct(const std::string& p) {
        if (peek().kind == Tok::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        return false;
    }
    const Token& expect_punct(const std::string& p) {
        if (peek().kind != Tok::Punct || peek().text != p)
            fail(peek(), "expected '" + p + "'");
        return next();
    }
    const Token& expect_ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(peek(), std::string("expected ") + what);
        return next();
    }
    int expect_nat(const char* what) {
        if (peek().kind != Tok::Number) fail(peek(), std::string("expected ") + what);
        return std::stoi(next().text);
    }

    static bool reserved(const std::string& s) {
        return s == "algebra" || s == "morphism" || s == "gen" || s == "d" || s == "rel";
    }

    // body items are collected first so differentials may reference
    // generators declared later in the same block
    struct RawItem {
        enum Kind { Gen, Diff, Rel } kind;
        Token head;
        std::string name; // generator name for Gen/Diff
        int degree = 0;
        size_t poly_begin = 0, poly_end = 0; // token slice for Diff/Rel
    };

    std::pair<std::string, CdgaRef> parse_algebra(const ModelFile&) {
        next(); // 'algebra'
        const Token name_tok = expect_ident("algebra name");
        expect_punct("{");
        std::vector<RawItem> items;
        while (!accept_punct("}")) {
            const Token& head = peek();
            if (head.kind != Tok::Ident) fail(head, "expected 'gen', 'd' or 'rel'");
            RawItem item;
            item.head = head;
            if (head.text == "gen") {
                next();
                item.kind = RawItem::Gen;
                const Token& g = expect_ident("generator name");
                if (reserved(g.text)) fail(g, "'" + g.text + "' cannot be used as a name");
                item.name = g.text;
                expect_punct(":");
                item.degree = expect_nat("a degree");
                expect_punct(";");
            } else if (head.text == "d") {
                next();
                item.kind = RawItem::Diff;
                item.name = expect_ident("generator name").text;
                expect_punct("=");
                item.poly_begin = pos_;
                skip_to_semicolon();
                item.poly_end = pos_ - 1;
            } else if (head.text == "rel") {
                next();
                item.kind = RawItem::Rel;
                item.poly_begin = pos_;
                skip_to_semicolon();
                item.poly_end = pos_ - 1;
            } else {
                fail(head, "expected 'gen', 'd' or 'rel'");
            }
            items.push_back(std::move(item));
        }

        std::vector<GenDecl> gens;
        std::map<std::string, int> decl_of;
        for (const RawItem& it : items)
            if (it.kind == RawItem::Gen) {
                if (decl_of.count(it.name))
                    semantic_fail(it.head, "duplicate generator '" + it.name + "'");
                decl_of[it.name] = static_cast<int>(gens.size());
                gens.push_back(GenDecl{it.name, it.degree});
            }

        std::vector<std::vector<std::pair<int, int>>> rels;
        for (const RawItem& it : items)
            if (it.kind == RawItem::Rel)
                rels.push_back(parse_mono_factors(it.poly_begin, it.poly_end, decl_of));

        CdgaRef shell;
        try {
            shell = Cdga::make(name_tok.text, gens, rels);
        } catch (const ValidationError& e) {
            semantic_fail(name_tok, e.what());
        }

        std::map<std::string, Element> diff;
        for (const RawItem& it : items)
            if (it.kind == RawItem::Diff) {
                if (!decl_of.count(it.name))
                    semantic_fail(it.head, "unknown identifier '" + it.name + "'");
                if (diff.count(it.name))
                    semantic_fail(it.head, "duplicate differential for '" + it.name + "'");
                diff[it.name] = parse_poly_slice(it.poly_begin, it.poly_end, *shell);
            }
        try {
            return {name_tok.text, shell->with_differential(diff)};
        } catch (const ValidationError& e) {
            semantic_fail(name_tok, e.what());
        }
    }

    std::pair<std::string, CdgaMorphism> parse_morphism(const ModelFile& file) {
        next(); // 'morphism'
        const Token name_tok = expect_ident("morphism name");
        expect_punct(":");
        const Token src_tok = expect_ident("source algebra name");
        expect_punct("->");
        const Token tgt_tok = expect_ident("target algebra name");
        CdgaRef src, tgt;
        for (const auto& [n, a] : file.algebras) {
            if (n == src_tok.text) src = a;
            if (n == tgt_tok.text) tgt = a;
        }
        if (!src) semantic_fail(src_tok, "unknown algebra '" + src_tok.text + "'");
        if (!tgt) semantic_fail(tgt_tok, "unknown algebra '" + tgt_tok.text + "'");
        expect_punct("{");
        std::map<std::string, Element> images;
        while (!accept_punct("}")) {
            const Token g = expect_ident("generator name");
            if (!src->rank_by_name(g.text))
                semantic_fail(g, "unknown identifier '" + g.text + "' in the source algebra");
            if (images.count(g.text)) semantic_fail(g, "duplicate image for '" + g.text + "'");
            expect_punct("|->");
            const size_t begin = pos_;
            skip_to_semicolon();
            images[g.text] = parse_poly_slice(begin, pos_ - 1, *tgt);
        }
        try {
            return {name_tok.text, make_morphism(name_tok.text, src, tgt, images)};
        } catch (const ValidationError& e) {
            semantic_fail(name_tok, e.what());
        }
    }

    [[noreturn]] void semantic_fail(const Token& t, const std::string& msg) const {
        throw ValidationError(where(t) + ": " + msg);
    }

    void skip_to_semicolon() {
        const Token& start = peek();
        while (peek().kind != Tok::End && !(peek().kind == Tok::Punct && peek().text == ";"))
            ++pos_;
        if (peek().kind == Tok::End) fail(start, "missing ';'");
        ++pos_; // consume ';'
    }

    // mono as a factor list (for relations): IDENT [^NAT] (* IDENT [^NAT])*
    std::vector<std::pair<int, int>> parse_mono_factors(size_t begin, size_t end,
                                                        const std::map<std::string, int>& decl_of) {
        size_t save = pos_;
        pos_ = begin;
        std::vector<std::pair<int, int>> factors;
        for (;;) {
            const Token g = expect_ident("generator name");
            const auto it = decl_of.find(g.text);
            if (it == decl_of.end()) semantic_fail(g, "unknown identifier '" + g.text + "'");
            int exp = 1;
            if (accept_punct("^")) exp = expect_nat("an exponent");
            factors.emplace_back(it->second, exp);
            if (!accept_punct("*")) break;
        }
        if (pos_ != end) fail(peek(), "unexpected token in monomial");
        pos_ = save;
        return factors;
    }

    Rat parse_rational() {
        bool neg = false;
        if (accept_punct("-")) neg = true;
        const int num = expect_nat("a number");
        long den = 1;
        if (accept_punct("/")) den = expect_nat("a denominator");
        Rat q = frac(neg ? -num : num, den);
        return q;
    }

    Element parse_mono_elem(const Cdga& a) {
        Element acc = a.unit();
        for (;;) {
            const Token g = expect_ident("generator name");
            const auto rank = a.rank_by_name(g.text);
            if (!rank) semantic_fail(g, "unknown identifier '" + g.text + "'");
            int exp = 1;
            if (accept_punct("^")) exp = expect_nat("an exponent");
            acc = a.mul(acc, a.pow(a.gen_elem_rank(*rank), exp));
            if (!accept_punct("*")) break;
            if (peek().kind != Tok::Ident) {
                // allow coefficient-in-the-middle? no: next factor must be a name
                fail(peek(), "expected a generator name after '*'");
            }
        }
        return acc;
    }

    Element parse_poly_slice(size_t begin, size_t end, const Cdga& a) {
        const size_t save = pos_;
        pos_ = begin;
        Element acc = a.zero();
        int sign = 1;
        if (accept_punct("-")) sign = -1;
        for (;;) {
            Element term;
            if (peek().kind == Tok::Number) {
                const Rat c = parse_rational();
                if (accept_punct("*"))
                    term = a.scale(c, parse_mono_elem(a));
                else
                    term = a.scale(c, a.unit());
            } else {
                term = parse_mono_elem(a);
            }
            acc = a.add(acc, sign < 0 ? a.scale(Rat(-1), term) : term);
            if (accept_punct("+"))
                sign = 1;
            else if (accept_punct("-"))
                sign = -1;
            else
                break;
        }
        if (pos_ != end) fail(peek(), "unexpected token in polynomial");
        pos_ = save;
        return acc;
    }

    std::string file_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

} // namespace

CdgaRef ModelFile::algebra(const std::string& name) const {
    for (const auto& [n, a] : algebras)
        if (n == name) return a;
    throw ValidationError("no algebra named '" + name + "' in the model file");
}

const CdgaMorphism& ModelFile::morphism(const std::string& name) const {
    for (const auto& [n, m] : morphisms)
        if (n == name) return m;
    throw ValidationError("no morphism named '" + name + "' in the model file");
}

ModelFile parse_model(const std::string& text, const std::string& filename) {
    return Parser(text, filename).parse();
}

// ------------------------------------------------------------- serializer

namespace {

std::string ident_safe(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "A_" + out;
    return out;
}

std::string model_mono(const Cdga& a, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string s;
    for (size_t i = 0; i < m.f.size(); ++i) {
        if (i) s += "*";
        s += a.gen_by_rank(m.f[i].gen).name;
        if (m.f[i].exp > 1) s += "^" + std::to_string(m.f[i].exp);
    }
    return s;
}

std::string model_poly(const Cdga& a, const Element& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : e.terms) {
        const bool neg = sgn(c) < 0;
        const Rat mag = abs(c);
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1 || m.is_unit()) {
            out += rat_str(mag);
            if (!m.is_unit()) out += "*";
        }
        if (!m.is_unit()) out += model_mono(a, m);
    }
    return out;
}

} // namespace

std::string serialize(const Cdga& a) {
    std::string out = "algebra " + ident_safe(a.name()) + " {\n";
    for (const Generator& g : a.generators())
        out += "    gen " + g.name + ": " + std::to_string(g.degree) + ";\n";
    for (const Monomial& m : a.relations()) out += "    rel " + model_mono(a, m) + ";\n";
    for (const Generator& g : a.generators()) {
        const Element& d = a.d_gen(a.rank_of_decl(g.index));
        if (!d.is_zero()) out += "    d " + g.name + " = " + model_poly(a, d) + ";\n";
    }
    out += "}\n";
    return out;
}

std::string serialize(const CdgaMorphism& phi) {
    std::string out = "morphism " + ident_safe(phi.name) + " : " +
                      ident_safe(phi.source->name()) + " -> " + ident_safe(phi.target->name()) +
                      " {\n";
    for (const Generator& g : phi.source->generators()) {
        const Element& img = phi.images[static_cast<size_t>(phi.source->rank_of_decl(g.index))];
        out += "    " + g.name + " |-> " + model_poly(*phi.target, img) + ";\n";
    }
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------- catalog

namespace {

int param_int(const std::vector<std::string>& params, size_t i, const std::string& name) {
    if (i >= params.size())
        throw ValidationError("catalog '" + name + "': missing parameter " + std::to_string(i + 1));
    try {
        return std::stoi(params[i]);
    } catch (...) {
        throw ValidationError("catalog '" + name + "': parameter '" + params[i] +
                              "' is not an integer");
    }
}

} // namespace

CatalogEntry catalog(const std::string& name, const std::vector<std::string>& params) {
    CatalogEntry e;
    if (name == "sphere") {
        const int k = param_int(params, 0, name);
        e.name = "sphere(" + std::to_string(k) + ")";
        e.algebra = sphere_model(k);
        e.known = {{"cat", "1"}, {"tc_2", k % 2 == 0 ? "2" : "1"}};
    } else if (name == "cohomology-sphere") {
        const int k = param_int(params, 0, name);
        e.name = "cohomology-sphere(" + std::to_string(k) + ")";
        e.algebra = cohomology_sphere(k);
        e.known = {{"cat", "1"}, {"tc_2", k % 2 == 0 ? "2" : "1"}};
    } else if (name == "cpn") {
        const int n = param_int(params, 0, name);
        e.name = "cpn(" + std::to_string(n) + ")";
        e.algebra = cpn_model(n);
        e.known = {{"cup-length", std::to_string(n)}, {"tc_2", std::to_string(2 * n)}};
    } else if (name == "product") {
        if (params.size() != 2)
            throw ValidationError("catalog 'product' takes two entry references");
        const CatalogEntry a = catalog_ref(params[0]);
        const CatalogEntry b = catalog_ref(params[1]);
        if (a.morphism || b.morphism)
            throw ValidationError("catalog 'product' expects algebra entries");
        e.name = "product(" + a.name + "," + b.name + ")";
        e.algebra = tensor_product(a.algebra, b.algebra);
    } else if (name == "mult-model") {
        if (params.size() != 2)
            throw ValidationError("catalog 'mult-model' takes an entry reference and n");
        const CatalogEntry base = catalog_ref(params[0]);
        if (base.morphism)
            throw ValidationError("catalog 'mult-model' expects an algebra entry");
        const int n = param_int(params, 1, name);
        e.name = "mult-model(" + base.name + "," + std::to_string(n) + ")";
        e.morphism = mult_model(base.algebra, n);
        e.algebra = e.morphism->source;
    } else {
        throw ValidationError("unknown catalog entry '" + name + "'");
    }
    return e;
}

CatalogEntry catalog_ref(const std::string& ref) {
    const size_t paren = ref.find('(');
    const size_t colon = ref.find(':');
    if (paren != std::string::npos && (colon == std::string::npos || paren < colon)) {
        if (ref.back() != ')')
            throw ValidationError("malformed catalog reference '" + ref + "'");
        const std::string head = ref.substr(0, paren);
        const std::string inner = ref.substr(paren + 1, ref.size() - paren - 2);
        std::vector<std::string> params;
        int depth = 0;
        std::string cur;
        for (char c : inner) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                params.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) params.push_back(cur);
        return catalog(head, params);
    }
    if (colon != std::string::npos) {
        std::vector<std::string> params;
        std::string cur;
        for (size_t i = colon + 1; i <= ref.size(); ++i) {
            if (i == ref.size() || ref[i] == ':') {
                params.push_back(cur);
                cur.clear();
            } else {
                cur += ref[i];
            }
        }
        return catalog(ref.substr(0, colon), params);
    }
    return catalog(ref, {});
}

// ------------------------------------------------------------------- emit

Format format_from_string(const std::string& s) {
    if (s == "human") return Format::Human;
    if (s == "records") return Format::Records;
    throw ValidationError("unknown format '" + s + "' (expected human or records)");
}

std::string witness_string(const Cdga& owner, const ProductWitness& w) {
    std::string out;
    size_t i = 0;
    while (i < w.factors.size()) {
        size_t j = i;
        while (j < w.factors.size() && w.factors[j] == w.factors[i]) ++j;
        if (!out.empty()) out += "*";
        out += "(" + owner.render(w.factors[i]) + ")";
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson invariant_json(const InvariantResult& r) {
    ojson j;
    j["type"] = "invariant";
    j["name"] = r.name;
    j["instance"] = r.instance;
    j["value"] = r.value;
    j["status"] = cert_str(r.status);
    j["truncation"] = r.truncation;
    if (r.product_witness && r.owner) {
        j["witness"] = witness_string(*r.owner, *r.product_witness);
        j["witness_degree"] = r.product_witness->degree;
    } else {
        j["witness"] = nullptr;
        j["witness_degree"] = nullptr;
    }
    ojson fails = ojson::array();
    for (const InjectivityFailure& f : r.failures) {
        ojson jf;
        jf["m"] = f.m;
        jf["degree"] = f.degree;
        jf["cycle"] = r.owner ? r.owner->render(f.cycle) : std::string("?");
        fails.push_back(std::move(jf));
    }
    j["failures"] = std::move(fails);
    if (!r.failures.empty())
        j["failure_degree"] = r.failures.back().degree; // the m = value-1 level
    else
        j["failure_degree"] = nullptr;
    j["note"] = r.note;
    return j;
}

ojson check_json(const InequalityCheck& c) {
    ojson j;
    j["label"] = c.label;
    j["relation"] = c.relation;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["lhs_exact"] = c.lhs_exact;
    j["rhs_exact"] = c.rhs_exact;
    j["outcome"] = outcome_str(c.outcome);
    j["slack"] = c.slack;
    return j;
}

} // namespace

std::string emit(const InvariantResult& r, Format f) {
    if (f == Format::Records) return invariant_json(r).dump() + "\n";
    std::string out;
    out += fmt::format("{:<12} {:>5}   {}\n", r.name, r.value, cert_str(r.status));
    out += fmt::format("  instance    {}\n", r.instance);
    out += fmt::format("  truncation  N = {}\n", r.truncation);
    if (r.product_witness && r.owner)
        out += fmt::format("  witness     {}   (degree {})\n",
                           witness_string(*r.owner, *r.product_witness), r.product_witness->degree);
    for (const InjectivityFailure& fl : r.failures)
        out += fmt::format("  level m={}  injectivity fails in degree {}: {}\n", fl.m, fl.degree,
                           r.owner ? r.owner->render(fl.cycle) : "?");
    if (!r.note.empty()) out += fmt::format("  note        {}\n", r.note);
    return out;
}

std::string emit(const VerificationReport& r, Format f) {
    if (f == Format::Records) {
        ojson j;
        j["type"] = "verification";
        j["instance"] = r.instance;
        j["truncation"] = r.truncation;
        ojson vals = ojson::array();
        for (const InvariantResult& v : r.values) {
            ojson jv;
            jv["name"] = v.name;
            jv["value"] = v.value;
            jv["status"] = cert_str(v.status);
            vals.push_back(std::move(jv));
        }
        j["values"] = std::move(vals);
        ojson checks = ojson::array();
        for (const InequalityCheck& c : r.checks) checks.push_back(check_json(c));
        j["checks"] = std::move(checks);
        j["pass"] = r.all_pass();
        return j.dump() + "\n";
    }
    std::string out;
    out += fmt::format("instance: {}   (N = {})\n", r.instance, r.truncation);
    for (const InvariantResult& v : r.values)
        out += fmt::format("  {:<24} {:>4}   {}\n", v.name, v.value, cert_str(v.status));
    for (const InequalityCheck& c : r.checks)
        out += fmt::format("  [{}] {}   ({} {} {}, slack {})\n", outcome_str(c.outcome), c.label,
                           c.lhs, c.relation, c.rhs, c.slack);
    out += fmt::format("  => {}\n", r.all_pass() ? (r.conclusive() ? "pass" : "pass (with inconclusive checks)")
                                                 : "FAIL");
    return out;
}

std::string emit_cohomology(const CohomologyRing& h, const std::string& instance, Format f) {
    const int lim = h.limit();
    if (f == Format::Records) {
        ojson j;
        j["type"] = "cohomology";
        j["instance"] = instance;
        j["truncation"] = h.truncation();
        j["certified_max_degree"] = lim;
        ojson dims = ojson::array();
        for (int k = 0; k <= lim; ++k) dims.push_back(h.dim(k));
        j["dims"] = std::move(dims);
        ojson basis = ojson::object();
        for (int k = 0; k <= lim; ++k) {
            if (h.dim(k) == 0) continue;
            ojson names = ojson::array();
            for (int i = 0; i < h.dim(k); ++i)
                names.push_back(h.view().algebra().render(h.rep(k, i)));
            basis[std::to_string(k)] = std::move(names);
        }
        j["basis"] = std::move(basis);
        ojson products = ojson::array();
        for (int i = 1; i <= lim; ++i)
            for (int j2 = i; i + j2 <= lim; ++j2) {
                if (h.dim(i) == 0 || h.dim(j2) == 0) continue;
                const std::vector<Vec> table = h.product_table(i, j2);
                for (int a = 0; a < h.dim(i); ++a)
                    for (int b = 0; b < h.dim(j2); ++b) {
                        const Vec& p = table[static_cast<size_t>(a * h.dim(j2) + b)];
                        if (vec_is_zero(p)) continue;
                        ojson entry;
                        entry["lhs"] = h.view().algebra().render(h.rep(i, a));
                        entry["rhs"] = h.view().algebra().render(h.rep(j2, b));
                        entry["product"] = h.render(i + j2, p);
                        products.push_back(std::move(entry));
                    }
            }
        j["products"] = std::move(products);
        return j.dump() + "\n";
    }
    std::string out = fmt::format("cohomology of {}   (N = {}, certified degrees 0..{})\n",
                                  instance, h.truncation(), lim);
    for (int k = 0; k <= lim; ++k) {
        if (h.dim(k) == 0) continue;
        std::string names;
        for (int i = 0; i < h.dim(k); ++i) {
            if (i) names += ", ";
            names += "[" + h.view().algebra().render(h.rep(k, i)) + "]";
        }
        out += fmt::format("  H^{:<3} dim {:>2}   {}\n", k, h.dim(k), names);
    }
    bool any = false;
    for (int i = 1; i <= lim; ++i)
        for (int j2 = i; i + j2 <= lim; ++j2) {
            if (h.dim(i) == 0 || h.dim(j2) == 0) continue;
            const std::vector<Vec> table = h.product_table(i, j2);
            for (int a = 0; a < h.dim(i); ++a)
                for (int b = 0; b < h.dim(j2); ++b) {
                    const Vec& p = table[static_cast<size_t>(a * h.dim(j2) + b)];
                    if (vec_is_zero(p)) continue;
                    if (!any) {
                        out += "  nonzero products:\n";
                        any = true;
                    }
                    out += fmt::format("    [{}] * [{}] = [{}]\n",
                                       h.view().algebra().render(h.rep(i, a)),
                                       h.view().algebra().render(h.rep(j2, b)),
                                       h.render(i + j2, p));
                }
        }
    return out;
}

std::string emit(const PoincareDualityReport& r, const std::string& instance, Format f) {
    const char* status = r.status == PoincareDualityReport::PD          ? "pd"
                         : r.status == PoincareDualityReport::NotPD     ? "not-pd"
                                                                        : "inconclusive";
    if (f == Format::Records) {
        ojson j;
        j["type"] = "poincare-duality";
        j["instance"] = instance;
        j["status"] = status;
        j["formal_dimension"] = r.formal_dimension;
        ojson pairs = ojson::array();
        for (const auto& p : r.pairings)
            pairs.push_back(ojson::array({p.k, p.complement, p.dim_k, p.dim_complement, p.rank}));
        j["pairings"] = std::move(pairs);
        j["reason"] = r.reason;
        return j.dump() + "\n";
    }
    std::string out = fmt::format("Poincare duality for {}: {}\n", instance, status);
    if (r.status == PoincareDualityReport::PD)
        out += fmt::format("  formal dimension {}\n", r.formal_dimension);
    for (const auto& p : r.pairings)
        out += fmt::format("  pairing H^{} x H^{}: dims {} x {}, rank {}\n", p.k, p.complement,
                           p.dim_k, p.dim_complement, p.rank);
    if (!r.reason.empty()) out += fmt::format("  note: {}\n", r.reason);
    return out;
}

} // namespace secat
