#include <cstdint>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvedeg/enumerate.hpp"
#include "curvedeg/errors.hpp"
#include "curvedeg/io.hpp"

namespace {

using namespace curvedeg;

constexpr int kOk = 0;       // valid / equivalent / success
constexpr int kRejected = 1; // invalid / inequivalent
constexpr int kError = 2;    // usage or internal error

int cmd_validate(const std::string& path) {
    const DegenerationType d = load_degeneration_file(path);
    const Violations v = validate_degeneration(d);
    if (v.empty()) {
        std::cout << "valid\n";
        return kOk;
    }
    for (const auto& viol : v) std::cerr << viol.str() << "\n";
    return kRejected;
}

int require_valid(const DegenerationType& d) {
    const Violations v = validate_degeneration(d);
    for (const auto& viol : v) std::cerr << viol.str() << "\n";
    return v.empty() ? kOk : kRejected;
}

int cmd_invariants(const std::string& path) {
    const DegenerationType d = load_degeneration_file(path);
    if (require_valid(d) != kOk) return kRejected;
    std::cout << invariants_report(d);
    return kOk;
}

int cmd_resolve(const std::string& path) {
    const DegenerationType d = load_degeneration_file(path);
    if (require_valid(d) != kOk) return kRejected;
    std::cout << resolve_report(d);
    return kOk;
}

int cmd_equiv(const std::string& path1, const std::string& path2) {
    const DegenerationType d1 = load_degeneration_file(path1);
    const DegenerationType d2 = load_degeneration_file(path2);
    if (require_valid(d1) != kOk || require_valid(d2) != kOk) return kRejected;
    const auto witness = equivalent(d1, d2);
    if (!witness) {
        std::cout << "inequivalent\n";
        return kRejected;
    }
    std::cout << "equivalent\n";
    auto print_map = [](const char* name, const std::map<Id, Id>& m) {
        std::cout << name << ":";
        for (const auto& [from, to] : m) std::cout << " " << from << "->" << to;
        std::cout << "\n";
    };
    print_map("vertex_map", witness->vertex_map);
    print_map("edge_map", witness->edge_map);
    print_map("flag_map", witness->flag_map);
    return kOk;
}

int cmd_export_dot(const std::string& path) {
    const DegenerationType d = load_degeneration_file(path);
    std::cout << export_dot(d.graph);
    return kOk;
}

TailOrbits parse_tails_spec(const std::string& spec) {
    TailOrbits out;
    if (spec.empty()) return out;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty item in tails spec");
        std::int64_t num = 0, den = 1;
        const auto slash = item.find('/');
        try {
            if (slash == std::string::npos) {
                num = std::stoll(item);
            } else {
                num = std::stoll(item.substr(0, slash));
                den = std::stoll(item.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad rational '" + item + "' in tails spec");
        }
        if (den < 1 || num < 0 || num >= den || std::gcd(num, den) != 1)
            throw std::invalid_argument("tail valency '" + item +
                                        "' must be a reduced rational in [0,1)");
        out.push_back(TailOrbit::of(Rat(num, den)));
    }
    return out;
}

int cmd_enumerate(std::int64_t genus, std::int64_t order, std::int64_t max_edges,
                  bool degenerations, const std::string& tails_spec) {
    if (degenerations) {
        if (!tails_spec.empty())
            throw std::invalid_argument("--tails applies only to realized-pair enumeration");
        for (const auto& d : enumerate_degenerations(genus, order, max_edges))
            std::cout << degeneration_record(d) << "\n";
        return kOk;
    }
    const TailOrbits tails = parse_tails_spec(tails_spec);
    for (const auto& p : enumerate_realized(genus, order, tails))
        std::cout << realized_pair_record(p) << "\n";
    return kOk;
}

int cmd_max_order(std::int64_t genus) {
    const MaxOrderResult res = max_order(genus);
    std::cout << "genus " << res.g << "\n";
    std::cout << "max_order " << res.max_m << "\n";
    std::cout << "witness " << realized_pair_record(res.witness) << "\n";
    if (res.cap_bound)
        std::cerr << "warning: the search cap " << res.cap
                  << " itself admits a realized pair; larger orders were not ruled out\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial invariants of minimal degenerations of curves"};
    app.require_subcommand(1);

    std::string file1, file2, tails_spec;
    std::int64_t genus = 2, order = 1, max_edges = -1;

    auto* validate = app.add_subcommand("validate", "check a degeneration file");
    validate->add_option("file", file1, "degeneration file")->required();

    auto* invariants = app.add_subcommand("invariants", "print derived invariant tables");
    invariants->add_option("file", file1, "degeneration file")->required();

    auto* equiv = app.add_subcommand("equiv", "decide deformation equivalence of two files");
    equiv->add_option("file1", file1, "first degeneration file")->required();
    equiv->add_option("file2", file2, "second degeneration file")->required();

    auto* enumerate = app.add_subcommand("enumerate", "enumerate realized pairs or types");
    enumerate->add_option("--genus", genus, "total genus")->required();
    enumerate->add_option("--order", order, "group order m")->required();
    auto* me_opt =
        enumerate->add_option("--max-edges", max_edges, "enumerate degeneration types instead");
    enumerate->add_option("--tails", tails_spec, "tail orbit valencies, e.g. 1/2,0,2/5");

    auto* resolve = app.add_subcommand("resolve", "report quotient singularities and chains");
    resolve->add_option("file", file1, "degeneration file")->required();

    auto* exportdot = app.add_subcommand("export-dot", "write the dual graph as DOT");
    exportdot->add_option("file", file1, "degeneration file")->required();

    auto* maxorder = app.add_subcommand("max-order", "largest realized order for a genus");
    maxorder->add_option("--genus", genus, "genus")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return kOk;
        }
        std::cerr << e.what() << "\n";
        return kError;
    }

    try {
        if (validate->parsed()) return cmd_validate(file1);
        if (invariants->parsed()) return cmd_invariants(file1);
        if (equiv->parsed()) return cmd_equiv(file1, file2);
        if (enumerate->parsed())
            return cmd_enumerate(genus, order, max_edges, me_opt->count() > 0, tails_spec);
        if (resolve->parsed()) return cmd_resolve(file1);
        if (exportdot->parsed()) return cmd_export_dot(file1);
        if (maxorder->parsed()) return cmd_max_order(genus);
        std::cerr << "no subcommand\n";
        return kError;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
}
