// Command-line front end: graph enumeration, weight tables, star-product
// assembly and the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "formality/graph.hpp"
#include "formality/io.hpp"
#include "formality/linfinity.hpp"
#include "formality/verify.hpp"
#include "formality/weights.hpp"

namespace {

using namespace formality;

struct RunConfig {
    int n = 1, m = 2, edges = -1;
    int dim = 2, order = 2;
    std::uint64_t seed = 1;
    long long samples = 100000;
    std::string normalization = "ordered";
    std::string in_path, out_path;
};

std::ostream& open_out(RunConfig const& cfg, std::ofstream& file) {
    if (cfg.out_path.empty()) return std::cout;
    file.open(cfg.out_path);
    if (!file) throw std::ios_base::failure("cannot open output file: " + cfg.out_path);
    return file;
}

int cmd_graphs(RunConfig const& cfg) {
    int const edges = cfg.edges >= 0 ? cfg.edges : 2 * cfg.n + cfg.m - 2;
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    int count = 0;
    for (auto const& g : enumerate_graphs(cfg.n, cfg.m, edges)) {
        write_graph(os, g);
        ++count;
    }
    std::cerr << count << " graphs (n=" << cfg.n << ", m=" << cfg.m
              << ", edges=" << edges << ")\n";
    return 0;
}

int cmd_weights(RunConfig const& cfg) {
    int const edges = cfg.edges >= 0 ? cfg.edges : 2 * cfg.n + cfg.m - 2;
    Normalization norm = cfg.normalization == "grouped" ? Normalization::Grouped
                                                        : Normalization::Ordered;
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    std::cerr << "seed " << cfg.seed << ", " << cfg.samples << " samples per graph, "
              << cfg.normalization << " normalization\n";
    long long rejected = 0, total = 0;
    double worst_stderr = 0;
    for (auto const& g : enumerate_graphs(cfg.n, cfg.m, edges)) {
        WeightEstimate w = weight_mc(g, cfg.samples, cfg.seed ^ graph_hash(g), norm);
        write_weight_row(os, g, w);
        rejected += w.rejected;
        total += w.samples;
        if (w.stderr_ > worst_stderr) worst_stderr = w.stderr_;
    }
    std::cerr << "rejection rate " << (total ? double(rejected) / total : 0.0)
              << ", worst stderr " << worst_stderr << "\n";
    return 0;
}

int cmd_star(RunConfig const& cfg) {
    std::ifstream in(cfg.in_path);
    if (!in) throw std::ios_base::failure("cannot open input file: " + cfg.in_path);
    MultiVector<double> pi = read_multivector<double>(in);
    if (pi.order() != 2) {
        std::cerr << "error: star-product input must be a bivector\n";
        return 3;
    }
    WeightProvider provider(cfg.samples, cfg.seed);
    auto star = star_product(pi, cfg.order, provider);
    std::ofstream file;
    std::ostream& os = open_out(cfg, file);
    for (int p = 0; p <= cfg.order; ++p) {
        os << "hbar^" << p << '\n';
        write_operator(os, star.at(p).pruned(1e-12));
    }
    return 0;
}

int report(std::vector<verify::CheckResult> const& results) {
    bool all = true;
    for (auto const& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name
                  << "  [" << r.detail << "]\n";
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

int cmd_verify(std::string const& suite, RunConfig const& cfg) {
    std::cout << "verify " << suite << " (seed " << cfg.seed << ")\n";
    if (suite == "algebra") {
        auto r = verify::suite_signs(cfg.seed);
        auto t = verify::suite_tpoly(cfg.seed + 1);
        auto d = verify::suite_dpoly(cfg.seed + 2);
        r.insert(r.end(), t.begin(), t.end());
        r.insert(r.end(), d.begin(), d.end());
        return report(r);
    }
    if (suite == "coalgebra") return report(verify::suite_coalgebra(cfg.seed));
    if (suite == "stokes")
        return report(verify::suite_stokes(cfg.n, cfg.m, cfg.seed, cfg.samples));
    if (suite == "formality") {
        if (cfg.n <= 1) return report(verify::suite_formality_n1(cfg.seed));
        return report(verify::suite_formality_n2(cfg.dim, cfg.seed, cfg.samples));
    }
    if (suite == "associativity")
        return report(verify::suite_associativity(cfg.order, cfg.seed, cfg.samples));
    std::cerr << "unknown suite: " << suite << '\n';
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-weight engine for star products on R^d"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string suite;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--n", cfg.n, "aerial vertices");
        c->add_option("--m", cfg.m, "ground vertices");
        c->add_option("--edges", cfg.edges, "edge count (default 2n+m-2)");
        c->add_option("--dim", cfg.dim, "dimension of R^d");
        c->add_option("--order", cfg.order, "truncation order in hbar");
        c->add_option("--seed", cfg.seed, "random seed");
        c->add_option("--samples", cfg.samples, "Monte-Carlo samples")
            ->check(CLI::PositiveNumber);
        c->add_option("--normalization", cfg.normalization, "ordered | grouped")
            ->check(CLI::IsMember({"ordered", "grouped"}));
        c->add_option("--in", cfg.in_path, "input file");
        c->add_option("--out", cfg.out_path, "output file (default stdout)");
        return c;
    };

    auto* graphs = add_common(app.add_subcommand("graphs", "enumerate admissible graphs"));
    auto* weights = add_common(app.add_subcommand("weights", "Monte-Carlo weight table"));
    auto* star = add_common(app.add_subcommand("star", "assemble a star product"));
    star->get_option("--in")->required();
    auto* verify_cmd = add_common(app.add_subcommand("verify", "run a verification suite"));
    verify_cmd->add_option("suite", suite, "algebra | coalgebra | stokes | formality | associativity")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (graphs->parsed()) return cmd_graphs(cfg);
        if (weights->parsed()) return cmd_weights(cfg);
        if (star->parsed()) return cmd_star(cfg);
        if (verify_cmd->parsed()) return cmd_verify(suite, cfg);
    } catch (std::ios_base::failure const& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
