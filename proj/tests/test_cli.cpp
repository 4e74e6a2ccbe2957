#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "nin/cogwheel.hpp"
#include "nin/dirac.hpp"
#include "nin/serialize.hpp"
#include "nin/state.hpp"
#include "nin/weyl.hpp"

namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
  static const struct dir_holder {
    fs::path path;
    dir_holder()
        : path(fs::temp_directory_path() /
               ("nin-cli-" + std::to_string(::getpid()))) {
      fs::create_directories(path);
    }
    ~dir_holder() {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  } holder;
  return holder.path;
}

struct cli_result {
  int exit_code;
  std::string out;
  std::string err;
};

cli_result run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path out = tmp_dir() / ("stdout" + std::to_string(counter));
  const fs::path err = tmp_dir() / ("stderr" + std::to_string(counter));
  ++counter;
  const std::string cmd = (env.empty() ? "" : env + " ") +
                          std::string(NIN_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, nin::read_file(out.string()), nin::read_file(err.string())};
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version and usage") {
  CHECK(run_cli("--version").exit_code == 0);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);

  const cli_result missing = run_cli("run dirac --transverse 7 --steps 1");
  CHECK(missing.exit_code == 1);
  CHECK(contains(missing.err, "--pairs"));

  CHECK(run_cli("run dirac --pairs 2 --transverse 4 --steps 1").exit_code ==
        1);  // even ring size is a domain error
  CHECK(run_cli("run dirac --pairs 2 --transverse 5 --kernel sse9")
            .exit_code == 1);
}

TEST_CASE("a zero run emits an all-zero trajectory") {
  const fs::path csv = tmp_dir() / "zero.csv";
  const cli_result r = run_cli(
      "run dirac --pairs 2 --transverse 5 --steps 3 --csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "resolved config:"));
  CHECK(contains(r.out, "wrote trajectory CSV"));
  const nin::trajectory t =
      nin::parse_trajectory_csv(nin::read_file(csv.string()));
  REQUIRE(t.snapshots.size() == 4);
  for (const auto& snap : t.snapshots) {
    for (auto v : snap.values) CHECK(v == 0);
  }
}

TEST_CASE("JSON config with command-line override") {
  const fs::path cfg = tmp_dir() / "run.json";
  nin::write_file(cfg.string(),
                  "{\"pairs\": 2, \"transverse\": 7, \"steps\": 2, "
                  "\"init\": \"random:5\"}\n");
  const fs::path csv = tmp_dir() / "cfgrun.csv";
  const cli_result r = run_cli("run dirac --config " + cfg.string() +
                               " --steps 4 --csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "config key 'steps' overridden by command-line flag"));
  CHECK(contains(r.out, "steps=4"));
  const nin::trajectory t =
      nin::parse_trajectory_csv(nin::read_file(csv.string()));
  CHECK(t.geo.pairs == 2);
  CHECK(t.geo.transverse == 7);
  CHECK(t.snapshots.size() == 5);
  CHECK(t.snapshots[0] == nin::random_field(nin::geometry(2, 7), 5));

  const fs::path bad = tmp_dir() / "bad.json";
  nin::write_file(bad.string(), "{\"pair\": 2}\n");
  const cli_result rejected =
      run_cli("run dirac --config " + bad.string() + " --transverse 5");
  CHECK(rejected.exit_code == 1);
  CHECK(contains(rejected.err, "unknown config key 'pair'"));

  const cli_result unreadable =
      run_cli("run dirac --config /nonexistent/run.json");
  CHECK(unreadable.exit_code == 3);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  const std::string base =
      "run dirac --pairs 3 --transverse 7 --steps 12 --init random:99";
  const fs::path c1 = tmp_dir() / "d1.csv", p1 = tmp_dir() / "d1.pgm";
  const fs::path c2 = tmp_dir() / "d2.csv", p2 = tmp_dir() / "d2.pgm";
  REQUIRE(run_cli(base + " --csv " + c1.string() + " --pgm " + p1.string())
              .exit_code == 0);
  REQUIRE(run_cli(base + " --csv " + c2.string() + " --pgm " + p2.string())
              .exit_code == 0);
  CHECK(nin::read_file(c1.string()) == nin::read_file(c2.string()));
  CHECK(nin::read_file(p1.string()) == nin::read_file(p2.string()));
}

TEST_CASE("invert runs a saved state backwards to its origin") {
  const fs::path forward = tmp_dir() / "forward.state";
  const fs::path back = tmp_dir() / "back.state";
  REQUIRE(run_cli("run dirac --pairs 3 --transverse 7 --steps 5 "
                  "--init random:77 --state-out " +
                  forward.string())
              .exit_code == 0);
  const cli_result r = run_cli("invert --state " + forward.string() +
                               " --steps 5 --state-out " + back.string());
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "inverse"));
  const auto recovered = nin::parse_state_text(nin::read_file(back.string()));
  CHECK(recovered == nin::random_state(nin::geometry(3, 7), 77));

  CHECK(run_cli("invert --steps 5").exit_code == 1);           // no state
  CHECK(run_cli("invert --state /nonexistent --steps 1").exit_code == 3);
}

TEST_CASE("cogwheel spectrum prints or exports the ladder") {
  const cli_result printed = run_cli("cogwheel spectrum --states 4");
  REQUIRE(printed.exit_code == 0);
  CHECK(contains(printed.out, "E[1] = 0"));
  CHECK(contains(printed.out, "E[4] ="));

  const fs::path csv = tmp_dir() / "spec.csv";
  REQUIRE(run_cli("cogwheel spectrum --states 4 --csv " + csv.string())
              .exit_code == 0);
  const nin::cogwheel w(4);
  CHECK(nin::read_file(csv.string()) ==
        nin::to_spectrum_csv(w, nin::hamiltonian_diagonal(w)));

  CHECK(run_cli("cogwheel spectrum --states 0").exit_code == 1);
  CHECK(run_cli("cogwheel verify --max-states 12").exit_code == 0);
}

TEST_CASE("block tables build, invert, and reject even sizes") {
  const fs::path csv = tmp_dir() / "blocks.csv";
  const cli_result ok = run_cli(
      "blocks --half-size 5 --levels 3 --init random:3 --invert --csv " +
      csv.string());
  REQUIRE(ok.exit_code == 0);
  CHECK(contains(ok.out, "exact round trip"));
  CHECK(contains(nin::read_file(csv.string()), "level,k,value\n"));

  const cli_result singular =
      run_cli("blocks --half-size 4 --init random:3 --invert");
  CHECK(singular.exit_code == 2);
  CHECK(contains(singular.err, "verification failure"));
}

TEST_CASE("weyl runs return to the start after a whole number of periods") {
  const fs::path csv = tmp_dir() / "weyl.csv";
  const fs::path chain = tmp_dir() / "weyl.chain";
  const cli_result r =
      run_cli("run weyl --half-size 5 --steps 10 --init random:4 --csv " +
              csv.string() + " --chain-out " + chain.string());
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "resolved config:"));
  CHECK(contains(r.out, "wrote occupation history CSV"));
  // One period is S ticks, so 10 ticks close the S=5 walk twice over.
  CHECK(nin::parse_chain_text(nin::read_file(chain.string())) ==
        nin::random_chain(5, 4));

  CHECK(run_cli("run weyl --steps 1").exit_code == 1);  // no --half-size
}

TEST_CASE("relative outputs land in the directory named by the environment") {
  const fs::path dir = tmp_dir() / "outdir";
  const cli_result r =
      run_cli("run dirac --pairs 1 --transverse 3 --steps 1 --csv rel.csv",
              "NIN_OUTPUT_DIR=" + dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "rel.csv"));

  const cli_result forced = run_cli(
      "run dirac --pairs 1 --transverse 3 --steps 1", "NIN_KERNEL=scalar");
  REQUIRE(forced.exit_code == 0);
  CHECK(contains(forced.out, "kernel=scalar"));
  CHECK(run_cli("run dirac --pairs 1 --transverse 3 --steps 1",
                "NIN_KERNEL=bogus")
            .exit_code == 1);
}
