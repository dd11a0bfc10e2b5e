#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "brownian.hpp"
#include "chirp.hpp"
#include "coefficients.hpp"
#include "interp.hpp"

namespace slowsde {

struct OdeCfg {
    int steps = 1024;
};

// Terminal value z(t_end) of the gated clock
//   z' = 1 + g(z) (level + 1),  z(tau1) = tau1
// integrated with classical RK4. `level` is the frozen cosine driving the
// drift, so level >= -1; at level = -1 the gate never fires and z(t) = t.
double solve_gated_clock(const Params& p, double level, double t_end, const OdeCfg& ode = {});

// Tabulated level -> z(T) map for Monte Carlo inner loops. Nodes carry the
// exact RK4 value and the variational derivative dz(T)/dlevel, interpolated
// with a monotone cubic. Queries clamp to [-1, 1], the range of the cosine.
class TerminalClockTable {
  public:
    TerminalClockTable(const Params& p, std::size_t nodes = 513, const OdeCfg& ode = {});

    double operator()(double level) const { return spline_(level); }
    double t_end() const { return t_end_; }

  private:
    MonotoneCubic spline_;
    double t_end_ = 0.0;
};

// Terminal clock for a chirp whose argument was frozen at `frozen_integral`.
double exact_terminal_clock(const Params& p, const ChirpSpec& spec, double frozen_integral,
                            const OdeCfg& ode = {});

struct SimResult;

// Exact terminal state of the limit dynamics: the integral component froze at
// `frozen_integral` before the gate opened, the clock solves the gated ODE.
SimResult oracle_terminal(const Params& p, const ChirpSpec& spec, double frozen_integral,
                          const OdeCfg& ode = {});

// Embedding of the two-dimensional system into R^d: component 1 carries the
// scaled clock, component 2 the stochastic integral, components 3..d stay at
// their initial offsets. `shift` is the initial state (defaults to zero).
struct EmbeddingCfg {
    int dim = 2;
    int brown_dim = 1;
    double scale_c = 1.0;
    std::vector<double> shift;
};

void validate(const EmbeddingCfg& cfg);

struct SimTrace {
    std::vector<double> clock;
    std::vector<double> integral;
};

struct SimResult {
    double clock_T = 0.0;
    double integral_T = 0.0;
    std::vector<double> state_T;
    int steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Euler scheme over [0, T] with `steps` uniform steps. All brown_dim
// coordinate increments are drawn and multiplied through the diffusion
// matrix, whose only nonzero entry couples the integral component to the
// first Brownian coordinate; the zero rows keep the remaining components
// bitwise constant. Coordinate j draws from rng.child(j) by default, or from
// RngStream(seed, coord_streams[j]) when coord_streams (size brown_dim) is
// given, so tests can re-randomize unused coordinates while pinning the
// first.
SimResult euler_maruyama(const Params& p, const ChirpSpec& spec, int steps, std::uint64_t seed,
                         std::uint64_t stream, const EmbeddingCfg& cfg = {},
                         SimTrace* trace = nullptr,
                         std::span<const std::uint64_t> coord_streams = {});

// Same scheme driven by a shared master path (grid size minus one must be a
// multiple of `steps`), for coupled strong-error comparisons. The master path
// is the first Brownian coordinate, so brown_dim must be 1 here.
SimResult euler_maruyama_on_path(const Params& p, const ChirpSpec& spec, const BrownianPath& master,
                                 int steps, const EmbeddingCfg& cfg = {},
                                 SimTrace* trace = nullptr);

struct ErrorRow {
    int steps = 0;
    double mean_error = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Strong error of the Euler terminal clock against the limit value computed
// from the frozen integral of the same master path.
std::vector<ErrorRow> strong_error_experiment(const Params& p, const ChirpSpec& spec,
                                              std::span<const int> step_list,
                                              std::uint64_t samples, std::uint64_t seed,
                                              int master_steps, int threads = 1,
                                              const OdeCfg& ode = {});

}  // namespace slowsde
