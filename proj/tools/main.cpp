// flagcalc command-line interface: enumeration, densities, expression
// evaluation, flattening, downward transfer, certificate checking/search,
// and the built-in Mantel/Goodman proofs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flagcalc/certificate.hpp"
#include "flagcalc/density.hpp"
#include "flagcalc/downward.hpp"
#include "flagcalc/errors.hpp"
#include "flagcalc/expr.hpp"
#include "flagcalc/graphon.hpp"
#include "flagcalc/parser.hpp"
#include "flagcalc/prover.hpp"

using namespace flagcalc;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;   // certificate rejected / search not found
constexpr int kExitUsage = 2;     // usage or parse errors

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_json(const nlohmann::ordered_json& j) {
    std::cout << j.dump(2) << "\n";
}

void print_form_table(const LinearForm& form) {
    std::vector<std::string> atoms;
    if (form.labelled())
        for (const Flag& f : basis_flags(form)) atoms.push_back(f.str());
    else
        for (const CanonicalGraph& g : basis_graphs(form)) atoms.push_back(g.str());
    size_t width = 0;
    for (const auto& a : atoms) width = std::max(width, a.size());
    for (size_t i = 0; i < atoms.size(); ++i)
        std::cout << atoms[i] << std::string(width - atoms[i].size() + 2, ' ')
                  << form.coefficients[i].str() << "\n";
}

void print_verdict(const Verdict& verdict, bool as_json, bool with_trace) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["accepted"] = verdict.accepted;
        j["message"] = verdict.message;
        j["residual"] = form_to_json(verdict.residual);
        nlohmann::ordered_json trace = nlohmann::ordered_json::array();
        for (const TraceStep& step : verdict.trace)
            trace.push_back({{"kind", step.kind}, {"detail", step.detail}});
        j["trace"] = std::move(trace);
        print_json(j);
        return;
    }
    std::cout << (verdict.accepted ? "accepted" : "rejected") << ": " << verdict.message << "\n";
    if (with_trace) {
        int i = 1;
        for (const TraceStep& step : verdict.trace)
            std::cout << "  step " << i++ << " (" << step.kind << "): " << step.detail << "\n";
    }
    if (verdict.accepted) std::cout << "residual: " << form_to_string(verdict.residual) << "\n";
}

struct Options {
    bool json = false;
    int threads = 1;
};

int run(int argc, char** argv) {
    CLI::App app{"exact flag-algebra calculus for small graphs"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--json", opts.json, "machine-readable output");
    app.add_option("--threads", opts.threads, "worker threads for certificate search")
        ->check(CLI::PositiveNumber);

    // enum
    auto* cmd_enum = app.add_subcommand("enum", "list graphs or flags up to isomorphism");
    int enum_n = 0;
    int enum_cap = 7;
    std::string enum_type;
    cmd_enum->add_option("--n", enum_n, "number of vertices")->required();
    cmd_enum->add_option("--type", enum_type, "type for flag enumeration, e.g. t:1:{}");
    cmd_enum->add_option("--cap", enum_cap, "enumeration cap (default 7)")
        ->check(CLI::Range(0, 7));

    // density
    auto* cmd_density = app.add_subcommand("density", "induced density of a pattern in a host");
    std::string density_pattern, density_host;
    cmd_density->add_option("--pattern", density_pattern, "pattern graph or flag")->required();
    cmd_density->add_option("--host", density_host, "host graph or flag")->required();

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate an expression on a host or graphon");
    std::string eval_expr, eval_host, eval_graphon;
    cmd_eval->add_option("--expr", eval_expr, "density expression")->required();
    cmd_eval->add_option("--host", eval_host, "host graph");
    cmd_eval->add_option("--graphon", eval_graphon, "step graphon JSON file");

    // flatten
    auto* cmd_flatten = app.add_subcommand("flatten", "flatten an expression to a linear form");
    std::string flatten_expr, flatten_type;
    int flatten_level = 0;
    cmd_flatten->add_option("--expr", flatten_expr, "density expression")->required();
    cmd_flatten->add_option("--level", flatten_level, "basis level")->required();
    cmd_flatten->add_option("--type", flatten_type, "basis type for constant expressions");

    // downward
    auto* cmd_downward = app.add_subcommand("downward", "downward transfer of a labelled form");
    std::string downward_file;
    cmd_downward->add_option("--form", downward_file, "linear form JSON file")->required();

    // check-cert
    auto* cmd_check = app.add_subcommand("check-cert", "verify a certificate exactly");
    std::string check_file;
    bool check_trace = false;
    cmd_check->add_option("file", check_file, "certificate JSON file")->required();
    cmd_check->add_flag("--trace", check_trace, "print the verification steps");

    // search
    auto* cmd_search = app.add_subcommand("search", "search for a certificate");
    std::string search_target;
    int search_level = 3;
    std::vector<std::string> search_types;
    int search_iterations = 3000;
    cmd_search->add_option("--target", search_target, "target assertion")->required();
    cmd_search->add_option("--level", search_level, "certificate level")->required();
    cmd_search->add_option("--type", search_types, "block type(s), default t:1:{}");
    cmd_search->add_option("--iterations", search_iterations, "numeric stage budget");

    // prove
    auto* cmd_prove = app.add_subcommand("prove", "run a built-in proof");
    std::string prove_problem;
    bool prove_trace = false;
    cmd_prove->add_option("problem", prove_problem, "mantel or goodman")
        ->required()
        ->check(CLI::IsMember({"mantel", "goodman"}));
    cmd_prove->add_flag("--trace", prove_trace, "print the derivation steps");

    // let the global --json/--threads flags appear after a subcommand too
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (*cmd_enum) {
            if (enum_type.empty()) {
                auto graphs = enumerate_graphs(enum_n, enum_cap);
                if (opts.json) {
                    nlohmann::ordered_json items = nlohmann::ordered_json::array();
                    for (const auto& g : graphs) items.push_back(g.str());
                    print_json({{"count", graphs.size()}, {"items", items}});
                } else {
                    for (const auto& g : graphs) std::cout << g.str() << "\n";
                }
            } else {
                auto flags = enumerate_flags(TypeGraph::parse(enum_type), enum_n, enum_cap);
                if (opts.json) {
                    nlohmann::ordered_json items = nlohmann::ordered_json::array();
                    for (const auto& f : flags) items.push_back(f.str());
                    print_json({{"count", flags.size()}, {"items", items}});
                } else {
                    for (const auto& f : flags) std::cout << f.str() << "\n";
                }
            }
            return kExitSuccess;
        }

        if (*cmd_density) {
            Rational value;
            if (density_pattern.substr(0, 2) == "f:" || density_host.substr(0, 2) == "f:")
                value = labelled_density(Flag::parse(density_pattern), Flag::parse(density_host));
            else
                value = density(Graph::parse(density_pattern), Graph::parse(density_host));
            if (opts.json)
                print_json({{"value", value.str()}});
            else
                std::cout << value.str() << "\n";
            return kExitSuccess;
        }

        if (*cmd_eval) {
            if (eval_host.empty() == eval_graphon.empty())
                throw std::invalid_argument("eval: exactly one of --host/--graphon is required");
            ExprPtr e = parse_expr(eval_expr);
            Rational value = eval_host.empty()
                                 ? eval_on_graphon(e, StepGraphon::parse(read_file(eval_graphon)))
                                 : eval_on_host(e, Graph::parse(eval_host));
            if (opts.json)
                print_json({{"value", value.str()}});
            else
                std::cout << value.str() << "\n";
            return kExitSuccess;
        }

        if (*cmd_flatten) {
            ExprPtr e = parse_expr(flatten_expr);
            std::optional<TypeGraph> type;
            if (!flatten_type.empty()) type = TypeGraph::parse(flatten_type);
            LinearForm form = to_linear_form(e, flatten_level, type);
            if (opts.json)
                print_json(form_to_json(form));
            else
                print_form_table(form);
            return kExitSuccess;
        }

        if (*cmd_downward) {
            LinearForm labelled = form_from_json(nlohmann::json::parse(read_file(downward_file)));
            LinearForm image = downward_transfer(labelled);
            if (opts.json)
                print_json(form_to_json(image));
            else
                print_form_table(image);
            return kExitSuccess;
        }

        if (*cmd_check) {
            Certificate cert = Certificate::parse(read_file(check_file));
            Verdict verdict = verify_certificate(cert);
            print_verdict(verdict, opts.json, check_trace);
            return verdict.accepted ? kExitSuccess : kExitFailure;
        }

        if (*cmd_search) {
            TargetShape target = parse_target(search_target);
            std::vector<TypeGraph> types;
            for (const std::string& t : search_types) types.push_back(TypeGraph::parse(t));
            if (types.empty()) types.push_back(TypeGraph::parse("t:1:{}"));
            SearchOptions options;
            options.threads = opts.threads;
            options.iterations = search_iterations;
            auto cert = search_certificate(target, search_level, types, options);
            if (!cert) {
                std::cerr << "not found: no certificate within the search budget\n";
                return kExitFailure;
            }
            print_json(cert->to_json());
            return kExitSuccess;
        }

        if (*cmd_prove) {
            Verdict verdict = prove_problem == "mantel" ? prove_mantel() : prove_goodman();
            std::string bound = prove_problem == "mantel" ? "1/2" : "1/4";
            if (opts.json) {
                print_verdict(verdict, true, true);
            } else {
                std::cout << prove_problem << ": " << (verdict.accepted ? "accepted" : "REJECTED")
                          << ", bound " << bound << "\n";
                if (prove_trace) {
                    int i = 1;
                    for (const TraceStep& step : verdict.trace)
                        std::cout << "  step " << i++ << " (" << step.kind << "): " << step.detail
                                  << "\n";
                }
            }
            return verdict.accepted ? kExitSuccess : kExitFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
