#include <algorithm>
#include <cstdint>
#include <iostream>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nin/cogwheel.hpp"
#include "nin/dirac.hpp"
#include "nin/experiment.hpp"
#include "nin/kernels.hpp"
#include "nin/serialize.hpp"
#include "nin/verify.hpp"
#include "nin/weyl.hpp"

namespace {

using nlohmann::json;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config overlay: command-line flags win over file values, every file
// key must be recognized, overrides are logged.
class json_overlay {
 public:
  void load(const std::string& path) {
    const std::string text = nin::read_file(path);
    try {
      data_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw usage_error("config '" + path + "': " + e.what());
    }
    if (!data_.is_object()) {
      throw usage_error("config '" + path + "' must be a JSON object");
    }
    loaded_ = true;
  }

  template <typename T>
  void merge(const char* key, const CLI::Option* opt, T& target) {
    consumed_.insert(key);
    if (!loaded_ || !data_.contains(key)) return;
    if (opt != nullptr && opt->count() > 0) {
      overridden_.push_back(key);
      return;
    }
    try {
      target = data_.at(key).get<T>();
    } catch (const json::exception&) {
      throw usage_error(std::string("config key '") + key +
                        "' has the wrong type");
    }
  }

  void finish(std::ostream& log) const {
    if (!loaded_) return;
    for (const auto& item : data_.items()) {
      if (consumed_.find(item.key()) == consumed_.end()) {
        throw usage_error("unknown config key '" + item.key() + "'");
      }
    }
    for (const std::string& key : overridden_) {
      log << "config key '" << key << "' overridden by command-line flag\n";
    }
  }

 private:
  json data_;
  bool loaded_ = false;
  std::set<std::string> consumed_;
  std::vector<std::string> overridden_;
};

std::string quoted_or_dash(const std::string& s) {
  return s.empty() ? "-" : s;
}

void echo_dirac(const nin::dirac_config& cfg, std::ostream& log) {
  log << "resolved config: pairs=" << cfg.pairs
      << " transverse=" << cfg.transverse
      << " time_step=" << nin::format_double(cfg.time_step)
      << " steps=" << cfg.steps << " mu=" << cfg.mu
      << " inverse=" << (cfg.inverse ? "true" : "false")
      << " init=" << cfg.init << " kernel=" << quoted_or_dash(cfg.kernel)
      << " csv=" << quoted_or_dash(cfg.csv)
      << " pgm=" << quoted_or_dash(cfg.pgm)
      << " state_out=" << quoted_or_dash(cfg.state_out)
      << " bitplane=" << quoted_or_dash(cfg.bitplane) << "\n";
}

void echo_weyl(const nin::weyl_config& cfg, std::ostream& log) {
  log << "resolved config: half_size=" << cfg.half_size
      << " steps=" << cfg.steps
      << " right_handed=" << (cfg.right_handed ? "true" : "false")
      << " init=" << cfg.init << " csv=" << quoted_or_dash(cfg.csv)
      << " chain_out=" << quoted_or_dash(cfg.chain_out) << "\n";
}

struct dirac_options {
  nin::dirac_config cfg;
  std::string config_path;
  CLI::Option* pairs = nullptr;
  CLI::Option* transverse = nullptr;
  CLI::Option* time_step = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* mu = nullptr;
  CLI::Option* inverse = nullptr;
  CLI::Option* init = nullptr;
  CLI::Option* csv = nullptr;
  CLI::Option* pgm = nullptr;
  CLI::Option* state_out = nullptr;
  CLI::Option* bitplane = nullptr;
  CLI::Option* kernel = nullptr;
};

void add_dirac_artifact_options(CLI::App* cmd, dirac_options& o) {
  o.steps = cmd->add_option("--steps", o.cfg.steps, "number of ticks");
  o.mu = cmd->add_option("--mu", o.cfg.mu, "mixing exponent scale");
  o.csv = cmd->add_option("--csv", o.cfg.csv, "trajectory CSV path");
  o.pgm = cmd->add_option("--pgm", o.cfg.pgm, "spacetime PGM path");
  o.state_out =
      cmd->add_option("--state-out", o.cfg.state_out, "final state text path");
  o.bitplane = cmd->add_option("--bitplane", o.cfg.bitplane,
                               "final-state 0/1 plane CSV path");
  o.kernel = cmd->add_option(
      "--kernel", o.cfg.kernel,
      "step kernel: scalar, avx2, auto (default: NIN_KERNEL or best)");
  cmd->add_option("--config", o.config_path, "JSON config file");
}

void merge_dirac_artifacts(json_overlay& file, dirac_options& o) {
  file.merge("steps", o.steps, o.cfg.steps);
  file.merge("mu", o.mu, o.cfg.mu);
  file.merge("csv", o.csv, o.cfg.csv);
  file.merge("pgm", o.pgm, o.cfg.pgm);
  file.merge("state_out", o.state_out, o.cfg.state_out);
  file.merge("bitplane", o.bitplane, o.cfg.bitplane);
  file.merge("kernel", o.kernel, o.cfg.kernel);
}

void require_present(bool given, const char* what) {
  if (!given) {
    throw usage_error(std::string(what) +
                      " is required (flag or config key)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic permutation automata: a reversible two-channel lattice, "
      "a two-state mover chain, and exact cyclic-permutation generators."};
  app.set_version_flag("--version", "nin 1.0.0");
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- run dirac ----------------------------------------------------------
  auto* run = app.add_subcommand("run", "evolve an automaton and export it");
  run->require_subcommand(1);
  auto* dirac = run->add_subcommand(
      "dirac", "two-channel lattice automaton on a ring of transverse rings");
  auto d = std::make_shared<dirac_options>();
  d->pairs = dirac->add_option("--pairs", d->cfg.pairs,
                               "longitudinal pair count K (2K sites)");
  d->transverse = dirac->add_option("--transverse", d->cfg.transverse,
                                    "transverse ring size M (odd, >= 3)");
  d->time_step =
      dirac->add_option("--time-step", d->cfg.time_step, "tick length");
  d->inverse =
      dirac->add_flag("--inverse", d->cfg.inverse, "evolve backwards");
  d->init = dirac->add_option(
      "--init", d->cfg.init,
      "zero | single:<site>,<value> | random:<seed> | file:<path>");
  add_dirac_artifact_options(dirac, *d);
  dirac->callback([d]() {
    json_overlay file;
    if (!d->config_path.empty()) file.load(d->config_path);
    file.merge("pairs", d->pairs, d->cfg.pairs);
    file.merge("transverse", d->transverse, d->cfg.transverse);
    file.merge("time_step", d->time_step, d->cfg.time_step);
    file.merge("inverse", d->inverse, d->cfg.inverse);
    file.merge("init", d->init, d->cfg.init);
    merge_dirac_artifacts(file, *d);
    file.finish(std::cout);
    require_present(d->cfg.pairs != 0, "--pairs");
    require_present(d->cfg.transverse != 0, "--transverse");
    echo_dirac(d->cfg, std::cout);
    nin::run_dirac_experiment(d->cfg, std::cout);
  });

  // ---- run weyl ------------------------------------------------------------
  auto* weyl = run->add_subcommand(
      "weyl", "massless two-state mover chain (period S)");
  auto w = std::make_shared<nin::weyl_config>();
  auto wconfig = std::make_shared<std::string>();
  auto* w_half =
      weyl->add_option("--half-size", w->half_size, "mover count S (2S sites)");
  auto* w_steps = weyl->add_option("--steps", w->steps, "number of ticks");
  auto* w_right = weyl->add_flag("--right-handed", w->right_handed,
                                 "swap the mover directions");
  auto* w_init = weyl->add_option(
      "--init", w->init,
      "zero | single:<site> | random:<seed> | string:<+-...> | file:<path>");
  auto* w_csv =
      weyl->add_option("--csv", w->csv, "occupation history CSV path");
  auto* w_chain =
      weyl->add_option("--chain-out", w->chain_out, "final chain text path");
  weyl->add_option("--config", *wconfig, "JSON config file");
  weyl->callback([w, wconfig, w_half, w_steps, w_right, w_init, w_csv,
                  w_chain]() {
    json_overlay file;
    if (!wconfig->empty()) file.load(*wconfig);
    file.merge("half_size", w_half, w->half_size);
    file.merge("steps", w_steps, w->steps);
    file.merge("right_handed", w_right, w->right_handed);
    file.merge("init", w_init, w->init);
    file.merge("csv", w_csv, w->csv);
    file.merge("chain_out", w_chain, w->chain_out);
    file.finish(std::cout);
    require_present(w->half_size != 0, "--half-size");
    echo_weyl(*w, std::cout);
    nin::run_weyl_experiment(*w, std::cout);
  });

  // ---- cogwheel ------------------------------------------------------------
  auto* cog = app.add_subcommand(
      "cogwheel", "exact generators for cyclic permutations");
  cog->require_subcommand(1);

  auto* spectrum = cog->add_subcommand(
      "spectrum", "uniform eigenvalue ladder of an N-state cycle");
  auto sp = std::make_shared<std::tuple<int, double, std::string, std::string>>(
      0, 1.0, std::string(), std::string());
  auto* sp_states =
      spectrum->add_option("--states", std::get<0>(*sp), "cycle length N");
  auto* sp_scale = spectrum->add_option("--time-scale", std::get<1>(*sp),
                                        "tick length T");
  auto* sp_csv =
      spectrum->add_option("--csv", std::get<2>(*sp), "spectrum CSV path");
  spectrum->add_option("--config", std::get<3>(*sp), "JSON config file");
  spectrum->callback([sp, sp_states, sp_scale, sp_csv]() {
    auto& [states, scale, csv, config_path] = *sp;
    json_overlay file;
    if (!config_path.empty()) file.load(config_path);
    file.merge("states", sp_states, states);
    file.merge("time_scale", sp_scale, scale);
    file.merge("csv", sp_csv, csv);
    file.finish(std::cout);
    require_present(states != 0, "--states");
    const nin::cogwheel wheel(states, scale);
    const std::vector<double> eigenvalues = nin::hamiltonian_diagonal(wheel);
    std::cout << "resolved config: states=" << states
              << " time_scale=" << nin::format_double(scale)
              << " csv=" << quoted_or_dash(csv) << "\n";
    if (csv.empty()) {
      for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        std::cout << "E[" << i + 1
                  << "] = " << nin::format_double(eigenvalues[i]) << "\n";
      }
    } else {
      const auto path = nin::resolve_output_path(csv);
      nin::write_file(path.string(),
                      nin::to_spectrum_csv(wheel, eigenvalues));
      std::cout << "wrote spectrum CSV " << path.string() << "\n";
    }
  });

  auto* cogverify = cog->add_subcommand(
      "verify", "check exp(-iH) against the hop matrix for N=1..max");
  auto cv = std::make_shared<std::tuple<int, double, std::string>>(
      16, 1e-9, std::string());
  auto* cv_max = cogverify->add_option("--max-states", std::get<0>(*cv),
                                       "largest cycle length");
  auto* cv_tol =
      cogverify->add_option("--tol", std::get<1>(*cv), "max-entry tolerance");
  cogverify->add_option("--config", std::get<2>(*cv), "JSON config file");
  cogverify->callback([cv, cv_max, cv_tol]() {
    auto& [max_states, tol, config_path] = *cv;
    json_overlay file;
    if (!config_path.empty()) file.load(config_path);
    file.merge("max_states", cv_max, max_states);
    file.merge("tol", cv_tol, tol);
    file.finish(std::cout);
    if (max_states < 1) throw usage_error("--max-states must be >= 1");
    double worst = 0.0;
    for (int n = 1; n <= max_states; ++n) {
      worst = std::max(worst, nin::verify_exponential(nin::cogwheel(n), tol));
    }
    const nin::pauli_report pauli = nin::exchange_pauli_check();
    if (pauli.exchange_deviation > 1e-12) {
      throw nin::verification_error("spin-exchange identity off by " +
                                    std::to_string(pauli.exchange_deviation));
    }
    std::cout << "cogwheel verify: N=1.." << max_states
              << " worst |exp(-iH) - U| = " << nin::format_double(worst)
              << ", exchange identity dev = "
              << nin::format_double(pauli.exchange_deviation)
              << ", neighbor commutator max = "
              << nin::format_double(pauli.commutator_max_entry) << "\n";
  });

  // ---- verify all ----------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "acceptance checks");
  verify->require_subcommand(1);
  auto* verify_all = verify->add_subcommand(
      "all", "run every acceptance criterion and report PASS/FAIL");
  verify_all->callback([&exit_code]() {
    const auto results = nin::run_acceptance_suite();
    nin::print_results(results, std::cout);
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << "acceptance: " << passed << "/" << results.size()
              << " criteria passed\n";
    if (!nin::all_passed(results)) exit_code = 2;
  });

  // ---- invert --------------------------------------------------------------
  auto* invert = app.add_subcommand(
      "invert", "evolve a saved lattice state backwards");
  auto iv = std::make_shared<dirac_options>();
  auto iv_state = std::make_shared<std::string>();
  auto* iv_state_opt = invert->add_option("--state", *iv_state,
                                          "input state text file");
  iv->time_step =
      invert->add_option("--time-step", iv->cfg.time_step, "tick length");
  add_dirac_artifact_options(invert, *iv);
  invert->callback([iv, iv_state, iv_state_opt]() {
    json_overlay file;
    if (!iv->config_path.empty()) file.load(iv->config_path);
    file.merge("state", iv_state_opt, *iv_state);
    file.merge("time_step", iv->time_step, iv->cfg.time_step);
    merge_dirac_artifacts(file, *iv);
    file.finish(std::cout);
    require_present(!iv_state->empty(), "--state");
    const nin::necklace_state s =
        nin::parse_state_text(nin::read_file(*iv_state));
    iv->cfg.pairs = s.geo.pairs;
    iv->cfg.transverse = s.geo.transverse;
    iv->cfg.inverse = true;
    iv->cfg.init = "file:" + *iv_state;
    echo_dirac(iv->cfg, std::cout);
    nin::run_dirac_experiment(iv->cfg, std::cout);
  });

  // ---- blocks ---------------------------------------------------------------
  auto* blocks = app.add_subcommand(
      "blocks", "iterated pairwise-sum variables of a chain state");
  auto bl = std::make_shared<
      std::tuple<int, int, std::string, std::string, bool, std::string>>(
      0, 1, std::string("zero"), std::string(), false, std::string());
  auto* bl_half = blocks->add_option("--half-size", std::get<0>(*bl),
                                     "mover count S (2S sites)");
  auto* bl_levels =
      blocks->add_option("--levels", std::get<1>(*bl), "levels to build");
  auto* bl_init = blocks->add_option(
      "--init", std::get<2>(*bl),
      "zero | single:<site> | random:<seed> | string:<+-...> | file:<path>");
  auto* bl_csv =
      blocks->add_option("--csv", std::get<3>(*bl), "level table CSV path");
  auto* bl_invert = blocks->add_flag("--invert", std::get<4>(*bl),
                                     "invert back down and check exactness");
  blocks->add_option("--config", std::get<5>(*bl), "JSON config file");
  blocks->callback([bl, bl_half, bl_levels, bl_init, bl_csv, bl_invert]() {
    auto& [half_size, levels, init, csv, run_inverse, config_path] = *bl;
    json_overlay file;
    if (!config_path.empty()) file.load(config_path);
    file.merge("half_size", bl_half, half_size);
    file.merge("levels", bl_levels, levels);
    file.merge("init", bl_init, init);
    file.merge("csv", bl_csv, csv);
    file.merge("invert", bl_invert, run_inverse);
    file.finish(std::cout);
    require_present(half_size != 0, "--half-size");
    if (levels < 1) throw usage_error("--levels must be >= 1");
    std::cout << "resolved config: half_size=" << half_size
              << " levels=" << levels << " init=" << init
              << " invert=" << (run_inverse ? "true" : "false")
              << " csv=" << quoted_or_dash(csv) << "\n";
    const nin::spin_chain chain = nin::initial_chain(half_size, init);
    const nin::occupation_field base = nin::occupation(chain);
    std::vector<nin::block_field> table;
    table.push_back(nin::block_transform(base));
    for (int r = 2; r <= levels; ++r) {
      table.push_back(nin::block_transform(table.back()));
    }
    for (const auto& level : table) {
      long long max_value = 0;
      for (long long v : level.values) max_value = std::max(max_value, v);
      std::cout << "level " << level.level << ": max value " << max_value
                << " (bound " << (1LL << level.level) << ")\n";
    }
    if (run_inverse) {
      nin::block_field cur = table.back();
      for (int r = levels; r >= 2; --r) {
        cur = nin::block_inverse(cur);
        if (cur != table[static_cast<std::size_t>(r) - 2]) {
          throw nin::verification_error(
              "inversion missed level " + std::to_string(r - 1));
        }
      }
      if (nin::to_occupation(nin::block_inverse(cur)) != base) {
        throw nin::verification_error(
            "inversion missed the occupation field");
      }
      std::cout << "inversion: exact round trip through level " << levels
                << "\n";
    }
    if (!csv.empty()) {
      const auto path = nin::resolve_output_path(csv);
      nin::write_file(path.string(), nin::to_block_csv(table));
      std::cout << "wrote level table CSV " << path.string() << "\n";
    }
  });

  // ---- dispatch -------------------------------------------------------------
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nin::io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const nin::verification_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const nin::noninvertible_error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const nin::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
