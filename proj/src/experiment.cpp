#include "nin/experiment.hpp"

#include <cstdlib>
#include <ostream>
#include <vector>

#include "nin/kernels.hpp"
#include "nin/rng.hpp"
#include "nin/serialize.hpp"

namespace nin {

namespace {

// "<tag>" or "<tag>:<arg>".
std::pair<std::string, std::string> split_spec(const std::string& init) {
  const std::size_t colon = init.find(':');
  if (colon == std::string::npos) return {init, ""};
  return {init.substr(0, colon), init.substr(colon + 1)};
}

long long spec_int(const std::string& arg, const std::string& init) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(arg, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != arg.size()) {
    throw state_error("bad number in initial condition '" + init + "'");
  }
  return v;
}

void write_artifact(const std::string& path, const std::string& bytes,
                    const char* what, std::ostream& log) {
  const std::filesystem::path resolved = resolve_output_path(path);
  write_file(resolved.string(), bytes);
  log << "wrote " << what << " " << resolved.string() << " (" << bytes.size()
      << " bytes)\n";
}

}  // namespace

std::filesystem::path resolve_output_path(const std::string& path) {
  std::filesystem::path p(path);
  const char* dir = std::getenv("NIN_OUTPUT_DIR");
  if (p.is_absolute() || dir == nullptr || *dir == '\0') {
    return p;
  }
  const std::filesystem::path base(dir);
  std::error_code ec;
  std::filesystem::create_directories(base, ec);
  if (ec) {
    throw io_error("cannot create output directory '" + base.string() +
                   "': " + ec.message());
  }
  return base / p;
}

necklace_state initial_state(const geometry& g, const std::string& init) {
  const auto [tag, arg] = split_spec(init);
  if (tag == "zero") {
    return necklace_state(g);
  }
  if (tag == "single") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) {
      throw state_error("lattice 'single' takes '<site>,<value>'");
    }
    const long long site = spec_int(arg.substr(0, comma), init);
    const long long value = spec_int(arg.substr(comma + 1), init);
    if (site < 1 || site > g.sites()) {
      throw state_error("site " + std::to_string(site) + " outside 1.." +
                        std::to_string(g.sites()));
    }
    necklace_state s(g);
    s.set(site, static_cast<int>(value));
    return s;
  }
  if (tag == "random") {
    return random_state(g, static_cast<std::uint64_t>(spec_int(arg, init)));
  }
  if (tag == "file") {
    necklace_state s = parse_state_text(read_file(arg));
    if (s.geo.pairs != g.pairs || s.geo.transverse != g.transverse) {
      throw state_error("state file is " + std::to_string(s.geo.pairs) + "x" +
                        std::to_string(s.geo.transverse) +
                        ", the run wants " + std::to_string(g.pairs) + "x" +
                        std::to_string(g.transverse));
    }
    s.geo = g;  // adopt the run's time step
    return s;
  }
  throw state_error("unknown initial condition '" + init + "'");
}

spin_chain initial_chain(int half_size, const std::string& init) {
  const auto [tag, arg] = split_spec(init);
  if (tag == "zero") {
    return spin_chain(half_size);
  }
  if (tag == "single") {
    const long long site = spec_int(arg, init);
    if (site < 1 || site > 2LL * half_size) {
      throw state_error("site " + std::to_string(site) + " outside 1.." +
                        std::to_string(2 * half_size));
    }
    spin_chain c(half_size);
    c.set(site, 1);
    return c;
  }
  if (tag == "random") {
    return random_chain(half_size,
                        static_cast<std::uint64_t>(spec_int(arg, init)));
  }
  if (tag == "string") {
    spin_chain c = parse_chain_text(arg);
    if (c.half_size != half_size) {
      throw state_error("spin string has " + std::to_string(c.sites()) +
                        " sites, the run wants " +
                        std::to_string(2 * half_size));
    }
    return c;
  }
  if (tag == "file") {
    spin_chain c = parse_chain_text(read_file(arg));
    if (c.half_size != half_size) {
      throw state_error("chain file has " + std::to_string(c.sites()) +
                        " sites, the run wants " +
                        std::to_string(2 * half_size));
    }
    return c;
  }
  throw state_error("unknown initial condition '" + init + "'");
}

void run_dirac_experiment(const dirac_config& cfg, std::ostream& log) {
  const geometry geo(cfg.pairs, cfg.transverse, cfg.time_step);
  if (cfg.steps < 0) {
    throw state_error("steps must be >= 0");
  }
  if (!cfg.kernel.empty()) kernels::force_backend(cfg.kernel);

  const necklace_state start = initial_state(geo, cfg.init);
  trajectory t{geo, {}};
  t.snapshots.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  necklace_state s = start;
  t.snapshots.push_back(decode(s));
  for (int n = 0; n < cfg.steps; ++n) {
    s = cfg.inverse ? step_inverse(s, cfg.mu) : step(s, cfg.mu);
    t.snapshots.push_back(decode(s));
  }

  log << "dirac run: pairs=" << geo.pairs << " transverse=" << geo.transverse
      << " steps=" << cfg.steps << " mu=" << cfg.mu
      << (cfg.inverse ? " (inverse)" : "") << " kernel="
      << kernels::backend_for(geo.transverse).name << "\n";

  if (!cfg.csv.empty()) {
    write_artifact(cfg.csv, to_trajectory_csv(t), "trajectory CSV", log);
  }
  if (!cfg.pgm.empty()) {
    write_artifact(cfg.pgm, to_spacetime_pgm(t), "spacetime PGM", log);
  }
  if (!cfg.state_out.empty()) {
    write_artifact(cfg.state_out, to_state_text(s), "final state", log);
  }
  if (!cfg.bitplane.empty()) {
    write_artifact(cfg.bitplane, to_bitplane_csv(s), "bit-plane CSV", log);
  }
}

void run_weyl_experiment(const weyl_config& cfg, std::ostream& log) {
  if (cfg.steps < 0) {
    throw state_error("steps must be >= 0");
  }
  const chain_direction dir = cfg.right_handed
                                  ? chain_direction::right_handed
                                  : chain_direction::left_handed;
  spin_chain c = initial_chain(cfg.half_size, cfg.init);
  std::vector<spin_chain> history;
  history.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  history.push_back(c);
  for (int n = 0; n < cfg.steps; ++n) {
    c = chain_step(c, dir);
    history.push_back(c);
  }

  log << "weyl run: half_size=" << cfg.half_size << " steps=" << cfg.steps
      << (cfg.right_handed ? " (right-handed)" : "") << "\n";

  if (!cfg.csv.empty()) {
    write_artifact(cfg.csv, to_chain_history_csv(history),
                   "occupation history CSV", log);
  }
  if (!cfg.chain_out.empty()) {
    write_artifact(cfg.chain_out, to_chain_text(c), "final chain", log);
  }
}

}  // namespace nin
