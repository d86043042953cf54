#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace burnback::cli {

// Fully resolved command line: one subcommand plus every flag with its
// default filled in.
struct RunSpec {
    std::string command; // "mesh gen", "solve", "star neutral", ...

    // files
    std::string mesh_path;
    std::string field_path;
    std::string rates_path;
    std::string out_path;
    std::string history_path;
    std::string rates_out_path;

    // mesh gen
    std::string shape = "rect"; // rect | annulus | slot | star | bistar
    int nx = 50;
    int ny = 50;
    double width = 1.0;
    double height = 1.0;
    std::string left = "ignition";
    std::string right = "free";
    std::string bottom = "symmetry";
    std::string top = "symmetry";
    double sector_deg = 45.0;
    int nodes = 2500;

    // solver
    double rate = 1.0;
    double cfl = 0.9;
    double tol = 1e-6;
    int quiet = 10;
    long max_steps = 1'000'000;
    std::string diffusion = "local";  // local | global
    std::string free_bc = "linear";   // linear | doubled

    // curves / contours
    std::vector<double> levels;
    double tau_max = 0.0; // 0: use the field maximum
    int tau_steps = 50;
    double rate_ratio = 1.0;
    std::optional<double> grain_length;
    bool show_mesh = false;

    // design
    std::vector<int> n_tips{5};
    double r_c = 1.0;
    double r_f = 0.1;
    double d = 0.5;
    int samples = 21;

    // verify
    double threshold = 0.01;

    bool dump_spec = false;
};

struct ParseOutcome {
    std::optional<RunSpec> spec; // empty when parsing ended the run
    int exit_code = 0;           // meaningful when spec is empty
};

// Usage and parse errors are written to `out`/`err`; they end with exit code 2
// (0 for --help).
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Text form of the spec printed by --dump-spec.
std::string dump(const RunSpec& spec);

// 0 on success, 1 on numeric failure (non-convergence, threshold breach,
// invalid input), 2 on usage errors.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv);

} // namespace burnback::cli
