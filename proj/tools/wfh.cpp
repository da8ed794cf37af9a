#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wfh/cli/run.hpp"

using namespace wfh;
using namespace wfh::cli;

namespace {

Json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("$", "cannot read manifest '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw SchemaError("$", std::string("invalid JSON: ") + e.what());
    }
}

int report_error(const char* kind, const std::exception& e, int code) {
    std::cerr << "error (" << kind << "): " << e.what() << "\n";
    return code;
}

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const SchemaError& e) {
        return report_error("schema", e, exit_schema);
    } catch (const SizeBudgetError& e) {
        return report_error("size budget", e, exit_computation);
    } catch (const PreconditionError& e) {
        return report_error("precondition", e, exit_computation);
    } catch (const DomainError& e) {
        return report_error("domain", e, exit_computation);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for Witten genus and factorization homology computations"};
    app.require_subcommand(1);

    std::string manifest_path, out_path, convention;
    std::size_t q_order = 0;

    auto* run = app.add_subcommand("run", "Run a manifest and write its JSON report");
    run->add_option("manifest", manifest_path, "Manifest JSON file")->required();
    run->add_option("--out", out_path, "Write the report here instead of stdout");
    auto* q_opt = run->add_option("--q-order", q_order, "Override options.q_order");
    auto* c_opt = run->add_option("--convention", convention, "Override options.convention (distinct or full:L)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a manifest against the schema");
    validate->add_option("manifest", validate_path, "Manifest JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_schema;
    }

    if (validate->parsed()) {
        return guarded([&] {
            const Manifest m = parse_manifest(load(validate_path));
            std::cout << "valid: " << m.task << "\n";
            return 0;
        });
    }

    return guarded([&] {
        Flags flags;
        if (q_opt->count()) flags.q_order = q_order;
        if (c_opt->count()) flags.convention = convention;
        const Manifest m = parse_manifest(load(manifest_path), flags);
        const Outcome out = execute(m);
        const std::string text = render(out.report);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(out_path, std::ios::binary);
            if (!os) throw DomainError("cannot write '" + out_path + "'");
            os << text;
        }
        if (out.exit_code == exit_check) std::cerr << "check failed: see the report\n";
        return out.exit_code;
    });
}
