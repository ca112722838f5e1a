#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "bordism/double_complex.hpp"
#include "bordism/invariants.hpp"
#include "bordism/representations.hpp"
#include "bordism/spectral_sequence.hpp"

namespace bordism::cli {

namespace {

using nlohmann::json;

constexpr int kMaxFormulaN = 7;
constexpr int kMaxBruteN = 4;
constexpr int kMaxStretchN = 5;

const char* command_name(Command c) {
    switch (c) {
        case Command::Dims: return "dims";
        case Command::Homology: return "homology";
        case Command::Spectral: return "spectral";
        case Command::Check: return "check";
        case Command::Verify: return "verify";
    }
    return "?";
}

// Integers that fit stay JSON numbers.
json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void validate(const RunConfig& c) {
    if (c.command == Command::Dims) {
        if (c.n < 1 || c.n > kMaxFormulaN) throw UsageError("dims: --n must be in 1.." + std::to_string(kMaxFormulaN));
        return;
    }
    const int limit = c.stretch ? kMaxStretchN : kMaxBruteN;
    if (c.n < 1 || c.n > limit) {
        throw UsageError(std::string(command_name(c.command)) + ": --n must be in 1.." + std::to_string(limit) +
                         (c.stretch ? "" : " (use --stretch for n = 5)"));
    }
    if (c.n > kMaxBruteN && (c.command == Command::Spectral || c.command == Command::Check)) {
        throw UsageError(std::string(command_name(c.command)) + ": n = 5 is only supported by homology and verify");
    }
    if (c.degree && (*c.degree < -2 || *c.degree > c.n - 2)) {
        throw UsageError("--degree must be in -2.." + std::to_string(c.n - 2));
    }
    if (c.page && (*c.page < 0 || *c.page > 3)) throw UsageError("--page must be in 0..3");
    if (c.export_path) {
        if (c.n > kMaxBruteN) throw UsageError("--export supports n <= 4");
        if (c.degree && *c.degree != c.n - 2) {
            throw UsageError("--export needs --degree " + std::to_string(c.n - 2));
        }
    }
    if (c.command == Command::Check && !c.poly_path) throw UsageError("check: --poly is required");
}

int cmd_dims(const RunConfig& c, std::ostream& out) {
    const auto k = constants(c.n);
    const BigInt dim = dimension_formula(c.n);
    switch (c.output) {
        case Output::Json: {
            json j{{"n", c.n}, {"dimension", big_json(dim)}, {"A_n", big_json(k.A_n)}};
            j["f"] = json::array();
            for (const auto& v : k.f) j["f"].push_back(big_json(v));
            j["A_pn"] = json::array();
            for (const auto& v : k.A_pn) j["A_pn"].push_back(big_json(v));
            out << j.dump(2) << '\n';
            break;
        }
        case Output::Csv:
            out << "quantity,index,value\n";
            out << "dimension,," << dim << '\n';
            out << "A_n,," << k.A_n << '\n';
            for (std::size_t p = 0; p < k.f.size(); ++p) out << "f," << p << ',' << k.f[p] << '\n';
            for (std::size_t p = 0; p < k.A_pn.size(); ++p) out << "A_pn," << p << ',' << k.A_pn[p] << '\n';
            break;
        case Output::Text:
            out << "n = " << c.n << "\ndimension = " << dim << "\nA_n = " << k.A_n << '\n';
            for (std::size_t p = 0; p < k.f.size(); ++p) out << "f_" << p << " = " << k.f[p] << '\n';
            for (std::size_t p = 0; p < k.A_pn.size(); ++p) out << "A_{" << p << ",n} = " << k.A_pn[p] << '\n';
            break;
    }
    return kSuccess;
}

RepPolynomial pull_back(const TotalComplex& t, const BitVector& v) {
    RepPolynomial f(t.n());
    for (const auto i : v.indices()) f.toggle(dual_inverse(t.n(), t.element(t.n() - 2, i)));
    return f;
}

// Kernel vectors in the polynomial format: one file per vector, or all of
// them on one stream separated by comment lines.
std::size_t export_kernel(const TotalComplex& t, const std::string& target, std::ostream& out) {
    const auto kernel = kernel_basis(t.boundary(t.n() - 2));
    if (target == "-") {
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            out << "# kernel vector " << k << '\n';
            write_polynomial(out, pull_back(t, kernel[k]));
        }
        return kernel.size();
    }
    namespace fs = std::filesystem;
    const fs::path dir(target);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create export directory " + target + ": " + ec.message());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "kernel_%05zu.poly", k);
        std::ofstream file(dir / name);
        if (!file) throw UsageError("cannot write " + (dir / name).string());
        file << "# kernel vector " << k << " of " << kernel.size() << ", n = " << t.n() << '\n';
        write_polynomial(file, pull_back(t, kernel[k]));
    }
    return kernel.size();
}

int cmd_homology(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const TotalComplex t = build_total_complex(c.n);
    std::vector<std::pair<int, std::size_t>> rows;
    for (int l = t.min_degree(); l <= t.max_degree(); ++l) {
        if (!c.degree || *c.degree == l) rows.emplace_back(l, t.homology_dim(l));
    }
    // With the export on stdout the table moves to stderr.
    const bool to_stdout = c.export_path && *c.export_path == "-";
    std::ostream& table = to_stdout ? err : out;
    std::size_t exported = 0;
    if (c.export_path) exported = export_kernel(t, *c.export_path, out);
    switch (c.output) {
        case Output::Json: {
            json j{{"n", c.n}, {"homology", json::array()}};
            for (const auto& [l, d] : rows) j["homology"].push_back({{"degree", l}, {"dim", d}});
            if (c.export_path) j["exported"] = exported;
            table << j.dump(2) << '\n';
            break;
        }
        case Output::Csv:
            table << "degree,dim\n";
            for (const auto& [l, d] : rows) table << l << ',' << d << '\n';
            break;
        case Output::Text:
            table << "n = " << c.n << '\n';
            for (const auto& [l, d] : rows) table << "H_" << l << " = " << d << '\n';
            if (c.export_path && !to_stdout) {
                table << "exported " << exported << " kernel vectors to " << *c.export_path << '\n';
            }
            break;
    }
    return kSuccess;
}

int cmd_spectral(const RunConfig& c, std::ostream& out) {
    const int r = c.page.value_or(1);
    const auto b = std::make_shared<const DoubleComplex>(build_double_complex(c.n));
    SpectralSequence ss(b);
    const Page& page = ss.page(r);
    switch (c.output) {
        case Output::Json: {
            json j{{"n", c.n}, {"page", r}, {"entries", json::array()}, {"undetermined", json::array()}};
            for (const auto& [pos, d] : page.dims) j["entries"].push_back({{"p", pos.first}, {"q", pos.second}, {"dim", d}});
            for (const auto& [rr, p, q] : page.undetermined) j["undetermined"].push_back({{"r", rr}, {"p", p}, {"q", q}});
            out << j.dump(2) << '\n';
            break;
        }
        case Output::Csv:
            out << "p,q,dim\n";
            for (const auto& [pos, d] : page.dims) out << pos.first << ',' << pos.second << ',' << d << '\n';
            break;
        case Output::Text: {
            out << "E^" << r << ", n = " << c.n << '\n';
            out << std::setw(6) << "q\\p";
            for (int p = -1; p <= c.n - 1; ++p) out << std::setw(8) << p;
            out << '\n';
            for (int q = c.n - 2; q >= -1; --q) {
                out << std::setw(6) << q;
                for (int p = -1; p <= c.n - 1; ++p) out << std::setw(8) << page.dim(p, q);
                out << '\n';
            }
            if (r == 3) {
                out << "undetermined higher differentials: " << page.undetermined.size() << '\n';
            }
            break;
        }
    }
    return kSuccess;
}

int cmd_check(const RunConfig& c, std::istream& in, std::ostream& out) {
    RepPolynomial f(c.n);
    if (*c.poly_path == "-") {
        f = parse_polynomial(in, c.n);
    } else {
        std::ifstream file(*c.poly_path);
        if (!file) throw UsageError("cannot open " + *c.poly_path);
        f = parse_polynomial(file, c.n);
    }
    const TotalComplex t = build_total_complex(c.n);
    const bool dual = in_image_dual(f, t);
    const bool lls = in_image_lls(f);
    const auto verdict = [](bool v) { return v ? "IN_IMAGE" : "NOT_IN_IMAGE"; };
    const bool agree = dual == lls;
    switch (c.output) {
        case Output::Json:
            out << json{{"n", c.n}, {"monomials", f.size()}, {"dual", verdict(dual)}, {"lls", verdict(lls)}, {"agree", agree}}.dump(2)
                << '\n';
            break;
        case Output::Csv:
            out << "n,monomials,dual,lls,agree\n"
                << c.n << ',' << f.size() << ',' << verdict(dual) << ',' << verdict(lls) << ',' << (agree ? "AGREE" : "DISAGREE")
                << '\n';
            break;
        case Output::Text:
            out << verdict(dual) << "\nlls: " << verdict(lls) << '\n' << (agree ? "AGREE" : "DISAGREE") << '\n';
            break;
    }
    return agree ? kSuccess : kInvariantFailure;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const auto results = run_invariants(c.n);
    const bool ok = all_passed(results);
    switch (c.output) {
        case Output::Json: {
            json j{{"n", c.n}, {"passed", ok}, {"checks", json::array()}};
            for (const auto& r : results) {
                j["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"detail", r.detail}});
            }
            out << j.dump(2) << '\n';
            break;
        }
        case Output::Csv:
            out << "name,passed,cases,detail\n";
            for (const auto& r : results) {
                out << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.cases << ',' << csv_field(r.detail) << '\n';
            }
            break;
        case Output::Text:
            for (const auto& r : results) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
                if (!r.detail.empty()) out << ' ' << r.detail;
                out << '\n';
            }
            out << (ok ? "all checks passed" : "some checks FAILED") << " for n = " << c.n << '\n';
            break;
    }
    return ok ? kSuccess : kInvariantFailure;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"GF(2) computations for equivariant bordism of (Z_2)^n actions", "bordism"};
    app.require_subcommand(1, 1);

    RunConfig config;
    std::string output = "text";
    const std::map<std::string, Output> outputs{{"text", Output::Text}, {"json", Output::Json}, {"csv", Output::Csv}};

    struct Spec {
        const char* name;
        Command command;
        const char* help;
    };
    const Spec specs[] = {
        {"dims", Command::Dims, "Closed-form dimension and its constants (n <= 7)"},
        {"homology", Command::Homology, "Homology of the total complex by rank computation"},
        {"spectral", Command::Spectral, "Dimensions of one spectral-sequence page"},
        {"check", Command::Check, "Decide membership of a polynomial in the image"},
        {"verify", Command::Verify, "Run every invariant check for one n"},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--n", config.n, "Rank of the group (Z_2)^n")->required();
        sub->add_option("--output", output, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
        if (s.command != Command::Dims) sub->add_flag("--stretch", config.stretch, "Allow n = 5");
        if (s.command == Command::Homology) {
            sub->add_option("--degree", config.degree, "Only this total degree");
            sub->add_option("--export", config.export_path, "Write the kernel basis as polynomials to DIR or - (stdout)");
        }
        if (s.command == Command::Spectral) sub->add_option("--page", config.page, "Page 0..3 (default 1)");
        if (s.command == Command::Check) sub->add_option("--poly", config.poly_path, "Polynomial file, - for stdin");
        subs.emplace_back(sub, s.command);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << active->help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto& [sub, command] : subs) {
        if (sub->parsed()) config.command = command;
    }
    config.output = outputs.at(output);
    validate(config);
    return config;
}

int execute(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        switch (config.command) {
            case Command::Dims: return cmd_dims(config, out);
            case Command::Homology: return cmd_homology(config, out, err);
            case Command::Spectral: return cmd_spectral(config, out);
            case Command::Check: return cmd_check(config, in, out);
            case Command::Verify: return cmd_verify(config, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const PolyParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NonFaithfulMonomial& e) {
        err << "error: " << e.what() << '\n';
        return kSemanticError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantFailure;
    }
    return kUsageError;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_args(args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kUsageError;
    }
    if (!config) return kSuccess;
    return execute(*config, in, out, err);
}

}  // namespace bordism::cli
