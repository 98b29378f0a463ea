#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("horokit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

int run(const std::string& args) {
  std::string cmd = std::string(HOROKIT_BIN) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  os << content;
}

}  // namespace

TEST_CASE("lie-ident emits the expected sl(2) certificate") {
  Workdir wd;
  auto cert_path = wd / "cert.json";
  REQUIRE(run("lie-ident --algebra sl2 --H h/2 --out " + cert_path.string()) == 0);
  json cert = json::parse(slurp(cert_path));
  CHECK(cert["W_H"] == 2);
  CHECK(cert["verified"] == true);
  // Z_1 = -1 as the only coefficient
  REQUIRE(cert["Z"][1]["terms"].size() == 1);
  CHECK(cert["Z"][1]["terms"][0]["c"] == "-1");
  // P = -ef
  REQUIRE(cert["P"]["terms"].size() == 1);
  CHECK(cert["P"]["terms"][0]["e"] == json::array({1, 0, 1}));
  CHECK(cert["P"]["terms"][0]["c"] == "-1");
  // manifest exists with a config hash
  json manifest = json::parse(slurp(wd / "cert.json.manifest.json"));
  CHECK(manifest["command"] == "lie-ident");
  CHECK(manifest.contains("config_hash"));
}

TEST_CASE("verify accepts the export and rejects single-character damage") {
  Workdir wd;
  auto cert_path = wd / "cert.json";
  REQUIRE(run("lie-ident --algebra sl3 --H 1,1,-2 --out " + cert_path.string()) == 0);
  REQUIRE(run("verify --cert " + cert_path.string()) == 0);

  // perturb a single digit of one P coefficient
  json cert = json::parse(slurp(cert_path));
  std::string coeff = cert["P"]["terms"][0]["c"].get<std::string>();
  std::size_t digit = coeff.find_first_of("123456789");
  REQUIRE(digit != std::string::npos);
  coeff[digit] = coeff[digit] == '9' ? '8' : coeff[digit] + 1;
  cert["P"]["terms"][0]["c"] = coeff;
  auto bad_path = wd / "bad.json";
  spit(bad_path, cert.dump(2));
  CHECK(run("verify --cert " + bad_path.string()) == 1);
}

TEST_CASE("schema violations exit with code 2") {
  Workdir wd;
  SECTION("empty t grid") {
    CHECK(run("horocycle --closed --t '' --psi 1.2,3.0 --out " + (wd / "x.csv").string()) == 2);
  }
  SECTION("unknown config key") {
    auto cfg = wd / "cfg.json";
    spit(cfg, R"({"command":"horocycle","closed":true,"t":"-4:-5:1","psi":"1.2,3.0","banana":1})");
    CHECK(run("horocycle --config " + cfg.string()) == 2);
  }
  SECTION("config for the wrong command") {
    auto cfg = wd / "cfg.json";
    spit(cfg, R"({"command":"count"})");
    CHECK(run("horocycle --config " + cfg.string()) == 2);
  }
  SECTION("malformed psi") {
    CHECK(run("horocycle --closed --t=-4:-5:1 --psi 1.2 --out " + (wd / "x.csv").string()) == 2);
  }
}

TEST_CASE("resource limits exit with code 3") {
  Workdir wd;
  CHECK(run("count --n 3 --H 1,0,-1 --k-max 8 --out " + (wd / "c.csv").string()) == 3);
  CHECK(run("kernels --lambda 0.5 --alpha 1/100 --eta 1 --weights 0.01,0.01 --out " +
            (wd / "k.csv").string()) == 3);
}

TEST_CASE("config file values are applied and flags win") {
  Workdir wd;
  auto cfg = wd / "cfg.json";
  auto out1 = wd / "a.csv";
  auto out2 = wd / "b.csv";
  spit(cfg, json{{"command", "count"},
                 {"n", 2},
                 {"H", "1,-1"},
                 {"k-max", 2},
                 {"out", out1.string()}}
                .dump());
  REQUIRE(run("count --config " + cfg.string()) == 0);
  CHECK(fs::exists(out1));
  // explicit flag overrides the config's output path
  REQUIRE(run("count --config " + cfg.string() + " --out " + out2.string()) == 0);
  CHECK(fs::exists(out2));
  CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("byte-identical reruns") {
  Workdir wd;
  auto out1 = wd / "r1.csv";
  auto out2 = wd / "r2.csv";
  std::string base = "horocycle --closed --t=-3:-5:1 --psi 1.3,2.5 --out ";
  REQUIRE(run(base + out1.string()) == 0);
  REQUIRE(run(base + out2.string()) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);

  auto cert1 = wd / "c1.json";
  auto cert2 = wd / "c2.json";
  REQUIRE(run("lie-ident --algebra sl3 --H 1,0,-1 --out " + cert1.string()) == 0);
  REQUIRE(run("lie-ident --algebra sl3 --H 1,0,-1 --out " + cert2.string()) == 0);
  CHECK(slurp(cert1) == slurp(cert2));
}

TEST_CASE("kernel report flags a mis-specified run via the exit code") {
  Workdir wd;
  // beta above every Re(lambda): fine, no divergence -> exit 0
  CHECK(run("kernels --lambda '0;0.3' --beta 0.5 --grid=-12:0:24 --out " +
            (wd / "ok.csv").string()) == 0);
}

TEST_CASE("algebra export round-trips and rejects damage") {
  Workdir wd;
  auto alg_path = wd / "sl3.json";
  REQUIRE(run("lie-ident --algebra sl3 --H 1,1,-2 --out " + (wd / "c.json").string() +
              " --export-algebra " + alg_path.string()) == 0);
  json j = json::parse(slurp(alg_path));
  // round-trip through the validating importer (header-only, same binary rules)
  CHECK(j["n"] == 3);
  CHECK(j["basis"].size() == 8);
  // tamper with one structure constant and re-import via the verify-style path:
  // no CLI import subcommand exists, so exercise the library directly here
  // through a dedicated unit test in test_lie_core; at the CLI level we only
  // check the export shape.
  CHECK(j.contains("structure_constants"));
  CHECK(j.contains("killing"));
}

TEST_CASE("HOROKIT_MAX_MEM caps the exact solvers") {
  Workdir wd;
  std::string cmd = std::string("HOROKIT_MAX_MEM=640 ") + HOROKIT_BIN +
                    " lie-ident --algebra sl3 --H 1,1,-2 --out " + (wd / "c.json").string() +
                    " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 3);
}

TEST_CASE("fit consumes horocycle output") {
  Workdir wd;
  auto out = wd / "h.csv";
  REQUIRE(run("horocycle --closed --t=-4:-8:1 --psi 1.2,3.0 --out " + out.string()) == 0);
  int code = run("fit --in " + out.string());
  CHECK((code == 0 || code == 1));  // rejection at the noise floor is a valid outcome
}
