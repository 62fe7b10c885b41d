#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "secat/errors.hpp"
#include "secat/modelio.hpp"

using namespace secat;

namespace {

struct NamedAlgebra {
    CdgaRef alg;
    std::string display;
};

struct NamedMorphism {
    CdgaMorphism phi;
    std::string display;
};

bool looks_like_file(const std::string& ref) {
    return ref.find('/') != std::string::npos || ref.find(".cdga") != std::string::npos;
}

ModelFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), path);
}

NamedAlgebra resolve_algebra(const std::string& ref) {
    if (looks_like_file(ref)) {
        const size_t hash = ref.find('#');
        const std::string path = hash == std::string::npos ? ref : ref.substr(0, hash);
        const ModelFile file = parse_file(path);
        if (file.algebras.empty())
            throw ValidationError("'" + path + "' declares no algebras");
        if (hash == std::string::npos)
            return {file.algebras.front().second, file.algebras.front().first};
        const std::string name = ref.substr(hash + 1);
        return {file.algebra(name), name};
    }
    const CatalogEntry e = catalog_ref(ref);
    if (e.morphism)
        throw ValidationError("'" + ref + "' names a morphism where an algebra is expected");
    return {e.algebra, e.name};
}

// head(args) splitting at top-level commas
static std::pair<std::string, std::vector<std::string>> split_call(const std::string& ref) {
    const size_t paren = ref.find('(');
    if (paren == std::string::npos || ref.back() != ')') return {ref, {}};
    std::vector<std::string> args;
    std::string cur;
    int depth = 0;
    for (size_t i = paren + 1; i + 1 < ref.size(); ++i) {
        const char c = ref[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            args.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) args.push_back(cur);
    return {ref.substr(0, paren), args};
}

NamedMorphism resolve_morphism(const std::string& ref) {
    if (looks_like_file(ref)) {
        const size_t hash = ref.find('#');
        const std::string path = hash == std::string::npos ? ref : ref.substr(0, hash);
        const ModelFile file = parse_file(path);
        if (file.morphisms.empty())
            throw ValidationError("'" + path + "' declares no morphisms");
        if (hash == std::string::npos)
            return {file.morphisms.front().second, file.morphisms.front().first};
        const std::string name = ref.substr(hash + 1);
        return {file.morphism(name), name};
    }
    if (ref == "id") return {identity_morphism(q_algebra()), "id(Q)"};
    const auto [head, args] = split_call(ref);
    if (head == "id" && args.size() == 1) {
        const NamedAlgebra a = resolve_algebra(args[0]);
        return {identity_morphism(a.alg), "id(" + a.display + ")"};
    }
    if (head == "aug" && args.size() == 1) {
        const NamedAlgebra a = resolve_algebra(args[0]);
        return {augmentation(a.alg), "aug(" + a.display + ")"};
    }
    if ((head == "mu" || head == "mult-model") && args.size() == 2) {
        const CatalogEntry e = catalog("mult-model", args);
        return {*e.morphism, e.name};
    }
    throw ValidationError("cannot resolve morphism reference '" + ref +
                          "' (expected id, id(A), aug(A), mu(A,n), mult-model(A,n) or a file)");
}

Format output_format(const std::string& flag) {
    if (!flag.empty()) return format_from_string(flag);
    if (const char* env = std::getenv("SECAT_FORMAT")) return format_from_string(env);
    return Format::Human;
}

int run(int argc, char** argv) {
    CLI::App app{"exact sectional-category invariants of rational commutative dg algebras"};
    app.require_subcommand(1);

    std::string catalog_arg, file_arg, format_arg, morphism_arg, algebra_arg;
    std::string invariant_arg, mode_arg, left_arg, right_arg, seeds_arg;
    int trunc = -1, tc_n = 2, sphere_k = 3;

    auto add_common = [&](CLI::App* cmd, bool with_algebra) {
        cmd->add_option("-N,--truncation", trunc, "basis truncation degree (default per algebra)");
        cmd->add_option("--format", format_arg, "output format: human | records (env SECAT_FORMAT)");
        if (with_algebra) {
            cmd->add_option("--catalog", catalog_arg,
                            "catalog reference, e.g. sphere:2, cpn:3, product(a,b)");
            cmd->add_option("--file", file_arg, "model file path, optionally path#name");
        }
    };
    auto algebra_from_flags = [&]() {
        if (!catalog_arg.empty() && !file_arg.empty())
            throw ValidationError("give either --catalog or --file, not both");
        if (!catalog_arg.empty()) return resolve_algebra(catalog_arg);
        if (!file_arg.empty()) return resolve_algebra(file_arg);
        throw ValidationError("an algebra is required: --catalog or --file");
    };

    CLI::App* coh = app.add_subcommand("cohomology", "graded dimensions and product table");
    add_common(coh, true);

    CLI::App* inv = app.add_subcommand("invariant", "compute a sectional-category invariant");
    add_common(inv, true);
    inv->add_option("--invariant", invariant_arg, "hsecat | nil-ker | cup-length | msecat-pd")
        ->required();
    inv->add_option("--morphism", morphism_arg, "morphism reference, e.g. aug(cpn:2), mu(A,2)");
    inv->add_option("--algebra", algebra_arg, "algebra reference (cup-length)");

    CLI::App* tc = app.add_subcommand("tc", "higher topological complexity of an algebra");
    add_common(tc, true);
    tc->add_option("-n", tc_n, "diagonal arity (n >= 2)")->required();

    CLI::App* ver = app.add_subcommand("verify", "verify product (in)equalities");
    add_common(ver, true);
    ver->add_option("--mode", mode_arg, "product | sphere-additivity | fuzz")->required();
    ver->add_option("--left", left_arg, "left morphism (mode product)");
    ver->add_option("--right", right_arg, "right morphism (mode product)");
    ver->add_option("--k", sphere_k, "sphere dimension (mode sphere-additivity)");
    ver->add_option("-n", tc_n, "diagonal arity (modes product/sphere-additivity)");
    ver->add_option("--seeds", seeds_arg, "seed range a..b (mode fuzz)");

    CLI11_PARSE(app, argc, argv);
    const Format fmt_out = output_format(format_arg);

    if (coh->parsed()) {
        const NamedAlgebra a = algebra_from_flags();
        const int n = trunc > 0 ? trunc : a.alg->default_truncation();
        const CohomologyRingRef h = compute_cohomology(a.alg, n);
        std::cout << emit_cohomology(*h, a.display, fmt_out);
        return 0;
    }

    if (inv->parsed()) {
        InvariantResult res;
        if (invariant_arg == "cup-length") {
            NamedAlgebra a = !algebra_arg.empty()
                                 ? resolve_algebra(algebra_arg)
                                 : (!catalog_arg.empty() || !file_arg.empty())
                                       ? algebra_from_flags()
                                       : NamedAlgebra{resolve_morphism(morphism_arg).phi.source, ""};
            const int n = trunc > 0 ? trunc : a.alg->default_truncation();
            res = cup_length(a.alg, n);
        } else {
            if (morphism_arg.empty())
                throw ValidationError("--morphism is required for invariant " + invariant_arg);
            const NamedMorphism m = resolve_morphism(morphism_arg);
            const int n = trunc > 0 ? trunc : m.phi.source->default_truncation();
            if (invariant_arg == "hsecat")
                res = hsecat(m.phi, n);
            else if (invariant_arg == "nil-ker")
                res = nil_ker_H(m.phi, n);
            else if (invariant_arg == "msecat-pd")
                res = msecat_pd(m.phi, n);
            else
                throw ValidationError("unknown invariant '" + invariant_arg + "'");
            res.instance = m.display;
        }
        std::cout << emit(res, fmt_out);
        return 0;
    }

    if (tc->parsed()) {
        const NamedAlgebra a = algebra_from_flags();
        const int n = trunc > 0 ? trunc : a.alg->default_truncation();
        InvariantResult res = tc_invariant(a.alg, tc_n, n);
        res.instance = "tc_" + std::to_string(tc_n) + "(" + a.display + ")";
        std::cout << emit(res, fmt_out);
        return 0;
    }

    if (ver->parsed()) {
        std::vector<VerificationReport> reports;
        std::optional<RandomInstance> failing_instance;
        if (mode_arg == "product") {
            if (left_arg.empty() || right_arg.empty())
                throw ValidationError("mode product requires --left and --right");
            const NamedMorphism l = resolve_morphism(left_arg);
            const NamedMorphism r = resolve_morphism(right_arg);
            const int n = trunc > 0
                              ? trunc
                              : std::max(l.phi.source->default_truncation(),
                                         r.phi.source->default_truncation());
            reports.push_back(verify_subadditivity(l.phi, r.phi, n));
            reports.push_back(verify_lower_chain(l.phi, r.phi, n));
        } else if (mode_arg == "sphere-additivity") {
            const NamedAlgebra a = algebra_from_flags();
            const int n = trunc > 0 ? trunc : a.alg->default_truncation();
            reports.push_back(verify_sphere_additivity(a.alg, sphere_k, tc_n, n));
        } else if (mode_arg == "fuzz") {
            if (seeds_arg.empty()) throw ValidationError("mode fuzz requires --seeds a..b");
            const size_t dots = seeds_arg.find("..");
            if (dots == std::string::npos)
                throw ValidationError("--seeds expects a range like 0..199");
            const uint64_t lo = std::stoull(seeds_arg.substr(0, dots));
            const uint64_t hi = std::stoull(seeds_arg.substr(dots + 2));
            const int threads =
                std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
            reports = run_fuzz(lo, hi, threads);
            for (size_t i = 0; i < reports.size(); ++i)
                if (!reports[i].all_pass()) failing_instance = random_instance(lo + i);
        } else {
            throw ValidationError("unknown verify mode '" + mode_arg + "'");
        }

        int pass = 0, fail = 0, inconclusive = 0;
        for (const VerificationReport& rep : reports) {
            std::cout << emit(rep, fmt_out);
            if (!rep.all_pass())
                ++fail;
            else if (!rep.conclusive())
                ++inconclusive;
            else
                ++pass;
        }
        if (fmt_out == Format::Human)
            std::cout << fmt::format("summary: {} pass, {} fail, {} inconclusive\n", pass, fail,
                                     inconclusive);
        if (failing_instance) {
            std::cerr << "# failing instance, reproducible model:\n"
                      << serialize(*failing_instance->phi1.source)
                      << serialize(*failing_instance->phi1.target)
                      << serialize(failing_instance->phi1)
                      << serialize(*failing_instance->phi2.source)
                      << serialize(*failing_instance->phi2.target)
                      << serialize(failing_instance->phi2);
        }
        return fail > 0 ? 4 : 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
