#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nin/dirac.hpp"
#include "nin/weyl.hpp"

namespace nin {

// Initial-condition specs: "zero", "single:<site>,<value>" (lattice) or
// "single:<site>" (chain), "random:<seed>", "file:<path>", and for chains
// also "string:<+-...>".

struct dirac_config {
  int pairs = 0;
  int transverse = 0;
  double time_step = 1.0;
  int steps = 0;
  int mu = 1;
  bool inverse = false;  // evolve backwards
  std::string init = "zero";
  std::string csv;        // trajectory CSV path ("" = skip)
  std::string pgm;        // spacetime image path
  std::string state_out;  // final state, text format
  std::string bitplane;   // final state, 0/1 plane CSV
  // "" keeps the ambient selection (NIN_KERNEL or best available);
  // "scalar" | "avx2" | "auto" force a switch for this run.
  std::string kernel;
};

struct weyl_config {
  int half_size = 0;
  int steps = 0;
  bool right_handed = false;
  std::string init = "zero";
  std::string csv;        // occupation history CSV path
  std::string chain_out;  // final chain, +- text
};

// Relative paths are placed under $NIN_OUTPUT_DIR when it is set (the
// directory is created); absolute paths and unset env pass through.
std::filesystem::path resolve_output_path(const std::string& path);

necklace_state initial_state(const geometry& g, const std::string& init);
spin_chain initial_chain(int half_size, const std::string& init);

// Run, write the requested artifacts, and log one line per file written.
// Byte-deterministic for a fixed config (and seed).
void run_dirac_experiment(const dirac_config& cfg, std::ostream& log);
void run_weyl_experiment(const weyl_config& cfg, std::ostream& log);

}  // namespace nin
