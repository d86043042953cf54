#pragma once

#include "burnback/mesh.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace burnback::eikonal {

// Per-node recession rate, strictly positive.
using RateField = std::vector<double>;

RateField uniform_rate(const Mesh& mesh, double rate);
// Throws DomainError on size mismatch or non-positive/non-finite entries.
void check_rates(const Mesh& mesh, std::span<const double> rate);

enum class DiffusionScale {
    Local,  // largest gradient over the triangles around each node
    Global, // largest gradient over the whole mesh
};

enum class FreeBoundary {
    Doubled,     // D_i <- 2 D_i on the raw one-sided sum
    LinearExact, // remove the one-sided response to the node's own mean gradient, then double
};

struct SolverConfig {
    double cfl_safety = 0.9;
    std::optional<double> gradient_floor; // defaults to 1 / max rate
    double convergence_tol = 1e-6;
    int quiet_steps = 10;
    long max_steps = 1'000'000;
    DiffusionScale diffusion_scale = DiffusionScale::Local;
    FreeBoundary free_boundary = FreeBoundary::LinearExact;
};

void check_config(const SolverConfig& config);

struct StepRecord {
    long step;
    double dt;
    double max_residual; // max |H_i| over updated nodes
};

struct ArrivalField {
    std::vector<double> s;        // per node
    std::vector<Vec2> gradient;   // per triangle, at the final state
    std::vector<StepRecord> history;
    bool converged = false;
    long steps = 0;
};

// Gradient of the linear interpolant of s on every triangle.
std::vector<Vec2> triangle_gradients(const Mesh& mesh, std::span<const double> s);

// H = 1 - rate * |grad|.
double hamiltonian(double rate, Vec2 grad);

// Per-node accumulators assembled by one sweep over the edges.
struct Accumulators {
    std::vector<Vec2> mean_gradient; // angle-weighted, normalised
    std::vector<double> diffusion;
};

// Boundary corrections: FREE nodes double D; SYMMETRY nodes average the mean
// gradient with its mirror image and double D.
void apply_bc(const Mesh& mesh, Accumulators& acc);

// Explicit time stepping on a fixed mesh and rate field.
class Stepper {
public:
    Stepper(const Mesh& mesh, const GeomCache& cache, std::span<const double> rate,
            const SolverConfig& config);

    struct Info {
        double dt;
        double max_residual;
    };

    // One update of s using the supplied triangle gradients of s. IGNITION
    // nodes are left untouched. Throws SolverError on a non-finite value.
    Info advance(std::vector<double>& s, std::span<const Vec2> gradients);

    // Accumulator assembly only, exposed for testing.
    Accumulators assemble(std::span<const Vec2> gradients) const;

    double gradient_floor() const noexcept { return floor_; }

private:
    std::vector<double> diffusion_coefficients(std::span<const Vec2> gradients) const;
    Accumulators assemble(std::span<const Vec2> gradients, std::span<const double> eps) const;

    const Mesh& mesh_;
    const GeomCache& cache_;
    std::span<const double> rate_;
    SolverConfig config_;
    double floor_;
    std::vector<double> edge_weight_sum_; // per node: sum over edges of beta / length
    std::vector<Vec2> boundary_normal_;   // per node: sum over corners of tan(theta/2)(e1 + e2)
};

// One explicit step from s with the default bookkeeping; returns the new field.
std::vector<double> step(const Mesh& mesh, const GeomCache& cache, std::span<const double> rate,
                         std::span<const double> s, const SolverConfig& config);

// March s from 0 (IGNITION nodes pinned to `ignition_values`, default 0) to
// steady state. Returns the last field with converged == false when
// max_steps runs out.
ArrivalField solve(const Mesh& mesh, std::span<const double> rate, const SolverConfig& config = {},
                   std::span<const double> ignition_values = {});

// CSV "node_index,x,y,s" and "step,dt,max_residual".
std::string field_csv(const Mesh& mesh, std::span<const double> s);
std::string history_csv(std::span<const StepRecord> history);
// Reads the node field CSV back; throws ParseError.
std::vector<double> parse_field_csv(std::string_view text, int expected_nodes);

} // namespace burnback::eikonal
