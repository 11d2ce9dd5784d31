#pragma once

#include <iosfwd>
#include <random>
#include <vector>

#include "config.hpp"
#include "vortexball/verify.hpp"

namespace vortexball::cli {

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kUsage = 2 };

/// Loads the configured field file or synthesizes one from the vortex list.
ComplexField acquire_field(const RunConfig& cfg);

int cmd_synth(const RunConfig& cfg, std::ostream& log);
int cmd_construct(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_norms(const RunConfig& cfg, std::ostream& log);

/// Seeded lemma instances: disjoint annuli families and radial chains.
std::vector<AnnulusTerm> random_disjoint_annuli(std::mt19937_64& rng, int count);
std::vector<AnnulusTerm> random_annulus_chain(std::mt19937_64& rng, int count, double a);

/// True when some hard, non-vacuous report failed.
bool any_hard_failure(const std::vector<InequalityReport>& reps);

/// Full command line entry; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vortexball::cli
