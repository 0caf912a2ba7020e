#pragma once

#include <string>
#include <vector>

#include "bpbs/sampler.hpp"

namespace bpbs {

/// Full command-line entry point (fit | simulate | summarize). Returns the
/// process exit status; 0 iff every requested output was written.
int run_cli(int argc, const char* const* argv);

/// Convenience overload for in-process invocation.
int run_cli(const std::vector<std::string>& args);

/// Flat key = value model-configuration file; unknown keys are rejected.
ModelConfig load_config_file(const std::string& path, const ModelConfig& base);

/// Versioned text serialization of posterior draws (one length-prefixed row
/// per snapshot), together with everything needed to re-summarize.
void save_draws(const std::string& path, const PosteriorDraws& draws,
                const std::string& method);
struct LoadedDraws {
  PosteriorDraws draws;
  std::string method;
};
LoadedDraws load_draws(const std::string& path);

}  // namespace bpbs
