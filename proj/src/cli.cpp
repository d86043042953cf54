#include "burnback/cli.hpp"

#include "burnback/contour.hpp"
#include "burnback/eikonal.hpp"
#include "burnback/errors.hpp"
#include "burnback/mesh.hpp"
#include "burnback/postproc.hpp"
#include "burnback/problems.hpp"
#include "burnback/star.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace burnback::cli {

using std::numbers::pi;

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double deg(double rad) { return rad * 180.0 / pi; }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

Marker parse_marker(const std::string& name) {
    if (name == "ignition") return Marker::Ignition;
    if (name == "free") return Marker::Free;
    if (name == "symmetry") return Marker::Symmetry;
    if (name == "interior") return Marker::Interior;
    throw DomainError("unknown side marker '" + name + "'");
}

// "node,rate,label"
std::string rates_csv(std::span<const double> rate, std::span<const int> labels) {
    std::string out = "node,rate,label\n";
    for (std::size_t i = 0; i < rate.size(); ++i) {
        out += std::to_string(i) + "," + fmt("%.17g", rate[i]) + "," +
               std::to_string(labels.empty() ? 1 : labels[i]) + "\n";
    }
    return out;
}

struct RateFile {
    std::vector<double> rate;
    std::vector<int> labels;
};

RateFile parse_rates(const std::string& text, int nodes) {
    RateFile r;
    r.rate.assign(nodes, std::nan(""));
    r.labels.assign(nodes, 1);
    std::istringstream in(text);
    std::string row;
    int line = 0, seen = 0;
    while (std::getline(in, row)) {
        ++line;
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        if (line == 1) {
            if (row.rfind("node,rate", 0) != 0) throw ParseError("rates file needs header node,rate[,label]", line);
            continue;
        }
        int idx = -1, label = 1;
        double v = 0.0;
        std::replace(row.begin(), row.end(), ',', ' ');
        std::istringstream cols(row);
        if (!(cols >> idx >> v)) throw ParseError("bad rates row", line);
        if (!(cols >> label)) label = 1;
        if (idx < 0 || idx >= nodes) throw ParseError("node index out of range", line);
        if (label != 1 && label != 2) throw ParseError("label must be 1 or 2", line);
        r.rate[idx] = v;
        r.labels[idx] = label;
        ++seen;
    }
    if (seen != nodes) throw ParseError("rates file covers " + std::to_string(seen) + " of " + std::to_string(nodes) + " nodes", 0);
    return r;
}

eikonal::SolverConfig solver_config(const RunSpec& s) {
    eikonal::SolverConfig c;
    c.cfl_safety = s.cfl;
    c.convergence_tol = s.tol;
    c.quiet_steps = s.quiet;
    c.max_steps = s.max_steps;
    if (s.diffusion == "global") c.diffusion_scale = eikonal::DiffusionScale::Global;
    else if (s.diffusion != "local") throw DomainError("diffusion must be local or global");
    if (s.free_bc == "doubled") c.free_boundary = eikonal::FreeBoundary::Doubled;
    else if (s.free_bc != "linear") throw DomainError("free-bc must be linear or doubled");
    eikonal::check_config(c);
    return c;
}

std::vector<double> tau_grid(const RunSpec& s, std::span<const double> field, bool include_zero) {
    if (!s.levels.empty()) return s.levels;
    double top = s.tau_max;
    if (!(top > 0.0)) top = *std::max_element(field.begin(), field.end());
    if (s.tau_steps < 1) throw DomainError("tau-steps must be >= 1");
    std::vector<double> out;
    for (int k = include_zero ? 0 : 1; k <= s.tau_steps; ++k) out.push_back(top * k / s.tau_steps);
    return out;
}

int cmd_mesh_gen(const RunSpec& s, std::ostream& out) {
    Mesh mesh;
    std::vector<double> rate;
    std::vector<int> labels;
    if (s.shape == "rect") {
        SideMarkers rule{parse_marker(s.left), parse_marker(s.right), parse_marker(s.bottom), parse_marker(s.top)};
        mesh = gen_rect(s.nx, s.ny, s.width, s.height, rule);
    } else if (s.shape == "annulus") {
        mesh = problems::annulus_sector(s.nx, s.ny, s.sector_deg * pi / 180.0).mesh;
    } else if (s.shape == "slot") {
        mesh = problems::slot_mesh({}, s.nodes);
    } else if (s.shape == "star") {
        problems::StarSetup setup;
        setup.n = s.n_tips.front();
        mesh = problems::star_sector(s.nx, s.ny, setup).mesh;
    } else if (s.shape == "bistar") {
        auto b = problems::bistar_sector(star::bistar_design(s.n_tips.front(), s.r_c, s.r_f, s.d), s.nx, s.ny);
        mesh = std::move(b.problem.mesh);
        rate = std::move(b.problem.rate);
        labels = std::move(b.labels);
    } else {
        throw DomainError("unknown shape '" + s.shape + "' (rect, annulus, slot, star, bistar)");
    }
    write_text(s.out_path, save_mesh(mesh));
    if (!s.rates_out_path.empty()) {
        if (rate.empty()) rate.assign(mesh.nodes.size(), s.rate);
        write_text(s.rates_out_path, rates_csv(rate, labels));
    }
    out << "mesh: " << mesh.node_count() << " nodes, " << mesh.triangle_count() << " triangles -> " << s.out_path
        << "\n";
    return 0;
}

int cmd_mesh_info(const RunSpec& s, std::ostream& out) {
    const Mesh mesh = read_mesh_file(s.mesh_path);
    const GeomCache cache = geom_cache(mesh);
    std::map<Marker, int> count;
    for (Marker m : mesh.markers) ++count[m];
    double amin = pi, amax = 0.0;
    for (const auto& a : cache.corner_angle)
        for (double v : a) {
            amin = std::min(amin, v);
            amax = std::max(amax, v);
        }
    out << "nodes          " << mesh.node_count() << "\n";
    out << "triangles      " << mesh.triangle_count() << "\n";
    out << "edges          " << cache.edges.size() << "\n";
    for (Marker m : {Marker::Interior, Marker::Ignition, Marker::Free, Marker::Symmetry}) {
        std::string name = marker_name(m);
        name.resize(15, ' ');
        out << name << count[m] << "\n";
    }
    out << "symmetry lines " << mesh.symmetry_lines.size() << "\n";
    out << "area           " << fmt("%.6g", mesh.total_area()) << "\n";
    out << "min angle      " << fmt("%.2f", deg(amin)) << " deg\n";
    out << "max angle      " << fmt("%.2f", deg(amax)) << " deg\n";
    out << "boundary loops " << boundary_loops(mesh).size() << "\n";
    return 0;
}

int cmd_solve(const RunSpec& s, std::ostream& out, std::ostream& err) {
    const Mesh mesh = read_mesh_file(s.mesh_path);
    std::vector<double> rate = s.rates_path.empty() ? eikonal::uniform_rate(mesh, s.rate)
                                                    : parse_rates(read_text(s.rates_path), mesh.node_count()).rate;
    const auto field = eikonal::solve(mesh, rate, solver_config(s));
    write_text(s.out_path, eikonal::field_csv(mesh, field.s));
    if (!s.history_path.empty()) write_text(s.history_path, eikonal::history_csv(field.history));
    const double smax = *std::max_element(field.s.begin(), field.s.end());
    out << "steps " << field.steps << ", max s " << fmt("%.6g", smax) << (field.converged ? ", converged" : "")
        << " -> " << s.out_path << "\n";
    if (!field.converged) {
        err << "solve: not converged after " << field.steps << " steps\n";
        return 1;
    }
    return 0;
}

int cmd_curves(const RunSpec& s, std::ostream& out) {
    const Mesh mesh = read_mesh_file(s.mesh_path);
    const auto field = eikonal::parse_field_csv(read_text(s.field_path), mesh.node_count());
    post::CurveOptions opt;
    opt.rate_ratio = s.rate_ratio;
    opt.grain_length = s.grain_length;
    std::vector<int> labels;
    if (!s.rates_path.empty()) labels = parse_rates(read_text(s.rates_path), mesh.node_count()).labels;
    const auto tau = tau_grid(s, field, true);
    const auto curves = post::burn_curves(mesh, field, labels, tau, opt);
    write_text(s.out_path, post::curves_csv(curves));
    out << "curves: " << tau.size() << " levels -> " << s.out_path << "\n";
    return 0;
}

int cmd_contours(const RunSpec& s, std::ostream& out) {
    const Mesh mesh = read_mesh_file(s.mesh_path);
    const auto field = eikonal::parse_field_csv(read_text(s.field_path), mesh.node_count());
    post::SvgOptions opt;
    opt.show_mesh = s.show_mesh;
    const auto levels = tau_grid(s, field, false);
    write_text(s.out_path, post::isochrone_svg(mesh, field, levels, opt));
    out << "contours: " << levels.size() << " levels -> " << s.out_path << "\n";
    return 0;
}

int cmd_star_neutral(const RunSpec& s, std::ostream& out) {
    out << "  n   theta/2 [deg]   pi/n [deg]   residual\n";
    for (int n : s.n_tips) {
        const double half = star::neutral_tip_angle(n);
        out << fmt("%3.0f", n) << "   " << fmt("%13.2f", deg(half)) << "   " << fmt("%10.2f", 180.0 / n) << "   "
            << fmt("%8.1e", star::neutral_residual(n, 2.0 * half)) << "\n";
    }
    return 0;
}

int cmd_bistar_design(const RunSpec& s, std::ostream& out, std::ostream& err) {
    const auto b = star::bistar_design(s.n_tips.front(), s.r_c, s.r_f, s.d);
    out << "n     = " << b.n << "\n";
    out << "r_c   = " << fmt("%.4f", b.r_c) << "\n";
    out << "r_f   = " << fmt("%.4f", b.r_f) << "\n";
    out << "d     = " << fmt("%.4f", b.d) << "\n";
    out << "web   = " << fmt("%.4f", b.web) << "\n";
    out << "f     = " << fmt("%.3f", b.rate_ratio) << "\n";
    if (b.degenerate) err << "warning: f < 1, a single propellant reaches the casing first everywhere\n";
    return 0;
}

int cmd_bistar_interface(const RunSpec& s, std::ostream& out) {
    const auto b = star::bistar_design(s.n_tips.front(), s.r_c, s.r_f, s.d);
    std::string csv = "y,r1,theta1,r2,theta2\n";
    for (const auto& p : star::bistar_interface(b, s.samples)) {
        csv += fmt("%.12g", p.y) + "," + fmt("%.12g", p.r1) + "," + fmt("%.12g", p.theta1) + "," +
               fmt("%.12g", p.r2) + "," + fmt("%.12g", p.theta2) + "\n";
    }
    if (s.out_path.empty()) {
        out << csv;
    } else {
        write_text(s.out_path, csv);
        out << "interface: " << s.samples << " samples -> " << s.out_path << "\n";
    }
    return 0;
}

int cmd_verify_slot(const RunSpec& s, std::ostream& out) {
    const auto p = problems::slot(s.nodes);
    const auto field = eikonal::solve(p.mesh, p.rate, solver_config(s));
    const auto e = post::error_field(p.mesh, field.s, p.exact);
    const bool pass = field.converged && e.summary.max_abs < s.threshold;
    out << "slot: " << p.mesh.node_count() << " nodes, " << field.steps << " steps"
        << (field.converged ? "" : " (not converged)") << "\n";
    out << "max |e|  = " << fmt("%.3f", 100.0 * e.summary.max_abs) << " %\n";
    out << "mean |e| = " << fmt("%.3f", 100.0 * e.summary.mean_abs) << " %\n";
    out << "threshold " << fmt("%.3f", 100.0 * s.threshold) << " %: " << (pass ? "PASS" : "FAIL") << "\n";
    if (!s.out_path.empty()) write_text(s.out_path, post::field_csv(p.mesh, field.s, e.error));
    return pass ? 0 : 1;
}

} // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunSpec spec;
    CLI::App app{"Grain burnback: arrival-time solver, star design formulas and burn curves", "burnback"};
    app.require_subcommand(1);
    app.add_flag("--dump-spec", spec.dump_spec, "Print the resolved run specification before running");

    auto solver_flags = [&spec](CLI::App* c) {
        c->add_option("--cfl", spec.cfl, "Fraction of the stable time step")->capture_default_str();
        c->add_option("--tol", spec.tol, "Convergence tolerance on gradient change")->capture_default_str();
        c->add_option("--quiet", spec.quiet, "Consecutive quiet steps required")->capture_default_str();
        c->add_option("--max-steps", spec.max_steps, "Step limit")->capture_default_str();
        c->add_option("--diffusion", spec.diffusion, "local | global")->capture_default_str();
        c->add_option("--free-bc", spec.free_bc, "linear | doubled")->capture_default_str();
    };
    auto design_flags = [&spec](CLI::App* c) {
        c->add_option("--n", spec.n_tips, "Number of star points")->capture_default_str();
        c->add_option("--rc", spec.r_c, "Chamber radius")->capture_default_str();
        c->add_option("--rf", spec.r_f, "Fillet radius")->capture_default_str();
        c->add_option("--d", spec.d, "Fillet centre distance from the axis")->capture_default_str();
    };
    auto level_flags = [&spec](CLI::App* c) {
        c->add_option("--levels", spec.levels, "Explicit pseudotime levels");
        c->add_option("--tau-max", spec.tau_max, "Largest level (default: field maximum)");
        c->add_option("--tau-steps", spec.tau_steps, "Number of levels")->capture_default_str();
    };

    auto* mesh = app.add_subcommand("mesh", "Generate or inspect meshes");
    mesh->require_subcommand(1);
    auto* gen = mesh->add_subcommand("gen", "Generate a mesh");
    gen->add_option("--shape", spec.shape, "rect | annulus | slot | star | bistar")->capture_default_str();
    gen->add_option("--nx", spec.nx, "Cells along x (transverse for patches)")->capture_default_str();
    gen->add_option("--ny", spec.ny, "Cells along y (longitudinal for patches)")->capture_default_str();
    gen->add_option("--width", spec.width)->capture_default_str();
    gen->add_option("--height", spec.height)->capture_default_str();
    gen->add_option("--left", spec.left, "ignition | free | symmetry | interior")->capture_default_str();
    gen->add_option("--right", spec.right)->capture_default_str();
    gen->add_option("--bottom", spec.bottom)->capture_default_str();
    gen->add_option("--top", spec.top)->capture_default_str();
    gen->add_option("--sector", spec.sector_deg, "Annulus sector opening, degrees")->capture_default_str();
    gen->add_option("--nodes", spec.nodes, "Target node count (slot)")->capture_default_str();
    gen->add_option("--rate", spec.rate, "Uniform rate written with --rates-out")->capture_default_str();
    gen->add_option("--rates-out", spec.rates_out_path, "Write node rates and labels");
    gen->add_option("--out", spec.out_path, "Mesh file")->required();
    design_flags(gen);
    auto* info = mesh->add_subcommand("info", "Summarise a mesh");
    info->add_option("--mesh", spec.mesh_path)->required()->check(CLI::ExistingFile);

    auto* solve = app.add_subcommand("solve", "March the arrival-time field to steady state");
    solve->add_option("--mesh", spec.mesh_path)->required()->check(CLI::ExistingFile);
    auto* rate_opt = solve->add_option("--rate", spec.rate, "Uniform recession rate")->capture_default_str();
    solve->add_option("--rates", spec.rates_path, "Per-node rates file")->check(CLI::ExistingFile)->excludes(rate_opt);
    solve->add_option("--out", spec.out_path, "Field CSV")->required();
    solve->add_option("--history", spec.history_path, "Residual history CSV");
    solver_flags(solve);

    auto* curves = app.add_subcommand("curves", "Perimeter and area burn curves");
    curves->add_option("--mesh", spec.mesh_path)->required()->check(CLI::ExistingFile);
    curves->add_option("--field", spec.field_path)->required()->check(CLI::ExistingFile);
    curves->add_option("--rates", spec.rates_path, "Node labels for two propellants")->check(CLI::ExistingFile);
    curves->add_option("--f", spec.rate_ratio, "Fast over slow rate ratio")->capture_default_str();
    curves->add_option("--grain-length", spec.grain_length, "Adds A_b = P_b L");
    curves->add_option("--out", spec.out_path)->required();
    level_flags(curves);

    auto* contours = app.add_subcommand("contours", "Isochrone SVG");
    contours->add_option("--mesh", spec.mesh_path)->required()->check(CLI::ExistingFile);
    contours->add_option("--field", spec.field_path)->required()->check(CLI::ExistingFile);
    contours->add_option("--out", spec.out_path)->required();
    contours->add_flag("--show-mesh", spec.show_mesh);
    level_flags(contours);

    auto* star_cmd = app.add_subcommand("star", "Classic star design");
    star_cmd->require_subcommand(1);
    auto* neutral = star_cmd->add_subcommand("neutral", "Tip semi-angle for neutral burning");
    neutral->add_option("--n", spec.n_tips, "Number of points (several allowed)")->capture_default_str();

    auto* bistar = app.add_subcommand("bistar", "Two-propellant sliverless star");
    bistar->require_subcommand(1);
    auto* design = bistar->add_subcommand("design", "Web and rate ratio");
    design_flags(design);
    auto* iface = bistar->add_subcommand("interface", "Propellant interface as CSV");
    design_flags(iface);
    iface->add_option("--samples", spec.samples)->capture_default_str();
    iface->add_option("--out", spec.out_path, "CSV file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "End-to-end checks against exact solutions");
    verify->require_subcommand(1);
    auto* vslot = verify->add_subcommand("slot", "Slot problem error against the exact distance");
    vslot->add_option("--nodes", spec.nodes)->capture_default_str();
    vslot->add_option("--threshold", spec.threshold, "Pass bound on max normalised error")->capture_default_str();
    vslot->add_option("--out", spec.out_path, "Node error CSV");
    solver_flags(vslot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return {std::nullopt, 0};
        err << app.help();
        return {std::nullopt, 2};
    }

    for (auto* parent : app.get_subcommands()) {
        spec.command = parent->get_name();
        for (auto* child : parent->get_subcommands()) spec.command += " " + child->get_name();
    }
    if (spec.n_tips.empty()) {
        err << "--n needs at least one value\n";
        return {std::nullopt, 2};
    }
    return {spec, 0};
}

std::string dump(const RunSpec& s) {
    nlohmann::ordered_json j;
    j["command"] = s.command;
    auto put_path = [&j](const char* key, const std::string& v) {
        if (!v.empty()) j[key] = v;
    };
    put_path("mesh", s.mesh_path);
    put_path("field", s.field_path);
    put_path("rates", s.rates_path);
    put_path("out", s.out_path);
    put_path("history", s.history_path);
    put_path("rates_out", s.rates_out_path);
    j["shape"] = s.shape;
    j["nx"] = s.nx;
    j["ny"] = s.ny;
    j["width"] = s.width;
    j["height"] = s.height;
    j["sides"] = {{"left", s.left}, {"right", s.right}, {"bottom", s.bottom}, {"top", s.top}};
    j["sector_deg"] = s.sector_deg;
    j["nodes"] = s.nodes;
    j["rate"] = s.rate;
    j["solver"] = {{"cfl", s.cfl},           {"tol", s.tol},           {"quiet", s.quiet},
                   {"max_steps", s.max_steps}, {"diffusion", s.diffusion}, {"free_bc", s.free_bc}};
    j["levels"] = s.levels;
    j["tau_max"] = s.tau_max;
    j["tau_steps"] = s.tau_steps;
    j["f"] = s.rate_ratio;
    if (s.grain_length) j["grain_length"] = *s.grain_length;
    j["show_mesh"] = s.show_mesh;
    j["n"] = s.n_tips;
    j["rc"] = s.r_c;
    j["rf"] = s.r_f;
    j["d"] = s.d;
    j["samples"] = s.samples;
    j["threshold"] = s.threshold;
    return j.dump(2) + "\n";
}

int run(const RunSpec& s, std::ostream& out, std::ostream& err) {
    try {
        if (s.command == "mesh gen") return cmd_mesh_gen(s, out);
        if (s.command == "mesh info") return cmd_mesh_info(s, out);
        if (s.command == "solve") return cmd_solve(s, out, err);
        if (s.command == "curves") return cmd_curves(s, out);
        if (s.command == "contours") return cmd_contours(s, out);
        if (s.command == "star neutral") return cmd_star_neutral(s, out);
        if (s.command == "bistar design") return cmd_bistar_design(s, out, err);
        if (s.command == "bistar interface") return cmd_bistar_interface(s, out);
        if (s.command == "verify slot") return cmd_verify_slot(s, out);
        err << "unknown command '" << s.command << "'\n";
        return 2;
    } catch (const ParseError& e) {
        err << s.command << ": parse error";
        if (e.line() > 0) err << " at line " << e.line();
        err << ": " << e.what() << "\n";
    } catch (const SolverError& e) {
        err << s.command << ": solver failed at node " << e.node() << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << s.command << ": " << e.what() << "\n";
    }
    return 1;
}

int main_entry(int argc, const char* const* argv) {
    const auto parsed = parse_args(argc, argv, std::cout, std::cerr);
    if (!parsed.spec) return parsed.exit_code;
    if (parsed.spec->dump_spec) std::cout << dump(*parsed.spec);
    return run(*parsed.spec, std::cout, std::cerr);
}

} // namespace burnback::cli
