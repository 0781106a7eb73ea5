#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "congraph/lin_check.hpp"
#include "congraph/workload.hpp"

namespace {

int run_check(const std::vector<std::string>& files, std::uint64_t budget) {
    int rc = 0;
    for (const std::string& f : files) {
        std::ifstream in(f);
        if (!in) {
            std::cerr << f << ": cannot open\n";
            rc = 2;
            continue;
        }
        try {
            congraph::History h = congraph::parse_history(in);
            congraph::CheckResult r = congraph::check_linearizable(h, budget);
            std::cout << f << ": " << congraph::to_string(r.verdict) << " ("
                      << h.size() << " events, " << r.states_explored
                      << " states)\n";
            if (r.verdict == congraph::Verdict::NotLinearizable) {
                std::cout << "  minimal failing prefix ("
                          << r.failing_prefix.size() << " events):\n";
                for (const auto& ev : r.failing_prefix) {
                    std::cout << "    " << ev.to_line() << '\n';
                }
                rc = 1;
            } else if (r.verdict == congraph::Verdict::BudgetExceeded) {
                rc = 3;
            }
        } catch (const std::exception& e) {
            std::cerr << f << ": " << e.what() << '\n';
            rc = 2;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linearizability checker for recorded graph histories"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::uint64_t budget = 5'000'000;
    CLI::App* check = app.add_subcommand(
        "check", "Check history files (format: tid op args result t_inv t_res)");
    check->add_option("files", files, "History files")->required();
    check->add_option("--budget", budget, "State-exploration budget");

    congraph::RecordConfig rcfg;
    std::string out_path;
    unsigned runs = 1;
    CLI::App* rec = app.add_subcommand(
        "record", "Record randomized concurrent histories on the lock-free engine");
    rec->add_option("--threads", rcfg.threads)->check(CLI::PositiveNumber);
    rec->add_option("--ops", rcfg.ops_per_thread, "Ops per thread");
    rec->add_option("--key-lo", rcfg.key_lo);
    rec->add_option("--key-hi", rcfg.key_hi);
    rec->add_option("--seed", rcfg.seed);
    rec->add_option("--scan-cap", rcfg.scan_cap);
    rec->add_option("--runs", runs, "Number of histories to record");
    rec->add_option("--out", out_path, "Output file ('-' or empty: stdout)");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(check)) {
        return run_check(files, budget);
    }

    std::ofstream ofs;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        ofs.open(out_path);
        if (!ofs) {
            std::cerr << out_path << ": cannot open\n";
            return 2;
        }
        out = &ofs;
    }
    for (unsigned i = 0; i < runs; ++i) {
        congraph::RecordConfig c = rcfg;
        c.seed = rcfg.seed + i;
        congraph::History h = congraph::record(c);
        if (i != 0) *out << "#\n";  // history separator for multi-run files
        *out << congraph::serialize_history(h);
    }
    return 0;
}
