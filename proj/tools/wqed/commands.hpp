#pragma once

#include "wqed/scenario.hpp"

#include <iosfwd>

namespace wqed::cli
{

// Exit-code contract: 0 success, 2 input/validation failure, 3 numerical
// quality warning threshold exceeded. No other codes are used.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitQuality = 3;

// Sweeps the scenario model over its grid and writes one CSV row per grid
// point. Returns kExitQuality when more than 10% of the grid hit a
// perfectly reflecting cascade site.
int cmd_spectrum(const Scenario &scenario, std::ostream &out, std::ostream &diag,
                 int threads = 1);

// Regenerates one of the built-in figure datasets from the closed forms:
// lorentzian, lorentzian-loss, crw-band, crw-scatter, detuning-switch,
// chiral-switch, rabi-switch.
int cmd_figure(const std::string &figure_id, std::ostream &out, std::ostream &diag);

// Packet figures of merit for the scenario's on/off switch states.
int cmd_metrics(const Scenario &scenario, std::ostream &out, std::ostream &diag);

// Derivative-free maximization of a switch objective: coarse grid search
// plus golden-section refinement along each axis. Writes the evaluation
// trace; the final row is the argmax.
int cmd_optimize(const Scenario &scenario, std::ostream &out, std::ostream &diag);

// Cross-checks closed forms against the brute-force verifiers and writes
// per-checkpoint comparison rows. Returns kExitQuality when any difference
// exceeds its declared tolerance.
int cmd_oracle(const Scenario &scenario, std::ostream &out, std::ostream &diag);

} // namespace wqed::cli
