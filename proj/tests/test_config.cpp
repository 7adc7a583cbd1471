// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <doctest.h>

#include "hillcert/config.hpp"
#include "hillcert/io.hpp"

using namespace hillcert;

namespace {

// Scoped temp file in the test working directory.
struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& content) : path(name) {
    write_text_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("toml-lite parsing") {
  SUBCASE("values, comments, quotes, arrays") {
    auto kv = parse_toml_lite(
        "# experiment manifest\n"
        "system = \"mathieu\"   # builtin\n"
        "delta = -0.35490\n"
        "N = 46\n"
        "tuple = [4, -1]\n"
        "out = 'report.json'\n"
        "\n");
    CHECK(kv.at("system") == "\"mathieu\"");
    CHECK(kv.at("delta") == "-0.35490");
    CHECK(kv.at("N") == "46");
    CHECK(kv.at("tuple") == "[4, -1]");
    CHECK(kv.at("out") == "'report.json'");
    CHECK(kv.size() == 5);
  }
  SUBCASE("a '#' inside a quoted string is content, not a comment") {
    auto kv = parse_toml_lite("out = \"run#3.csv\"\n");
    CHECK(kv.at("out") == "\"run#3.csv\"");
  }
  SUBCASE("rejects duplicate keys, sections, and junk lines") {
    CHECK_THROWS_AS(parse_toml_lite("N = 4\nN = 5\n"), usage_error);
    CHECK_THROWS_AS(parse_toml_lite("[sweep]\ndelta_count = 4\n"), usage_error);
    CHECK_THROWS_AS(parse_toml_lite("just some words\n"), usage_error);
    CHECK_THROWS_AS(parse_toml_lite("key =\n"), usage_error);
  }
}

TEST_CASE("option application") {
  RunConfig cfg;
  SUBCASE("typed fields land where they belong") {
    apply_option(cfg, "system", "\"scalar\"");
    apply_option(cfg, "beta", "0.01");
    apply_option(cfg, "gamma", "0.8");
    apply_option(cfg, "N", "46");
    apply_option(cfg, "edes", "1e-6");
    apply_option(cfg, "formulation", "direct");
    apply_option(cfg, "circle_samples", "512");
    apply_option(cfg, "tuple", "4,-1");
    apply_option(cfg, "out", "x.json");
    CHECK(cfg.system == "scalar");
    CHECK(cfg.params.at("beta") == doctest::Approx(0.01));
    CHECK(cfg.params.at("gamma") == doctest::Approx(0.8));
    REQUIRE(cfg.N.has_value());
    CHECK(*cfg.N == 46);
    REQUIRE(cfg.E_des.has_value());
    CHECK(*cfg.E_des == doctest::Approx(1e-6));
    CHECK(cfg.formulation == Formulation::Direct);
    CHECK(cfg.circle_samples == 512);
    CHECK(cfg.tuple == std::vector<int>{4, -1});
    CHECK(cfg.out == "x.json");
  }
  SUBCASE("formulation names") {
    apply_option(cfg, "formulation", "subharmonic");
    CHECK(cfg.formulation == Formulation::Subharmonic);
    apply_option(cfg, "formulation", "reference");
    CHECK(cfg.formulation == Formulation::Reference);
    CHECK_THROWS_AS(apply_option(cfg, "formulation", "fast"), usage_error);
  }
  SUBCASE("malformed values and unknown keys are usage errors") {
    CHECK_THROWS_AS(apply_option(cfg, "N", "forty"), usage_error);
    CHECK_THROWS_AS(apply_option(cfg, "edes", "1e-6x"), usage_error);
    CHECK_THROWS_AS(apply_option(cfg, "tuple", "[]"), usage_error);
    CHECK_THROWS_AS(apply_option(cfg, "tuple", "[1, ]"), usage_error);
    CHECK_THROWS_AS(apply_option(cfg, "truncation", "4"), usage_error);
  }
}

TEST_CASE("flag merging") {
  SUBCASE("flags alone, --key value and --key=value forms") {
    RunConfig cfg = parse_run_config(
        {"--system", "mathieu", "--delta", "1.0", "--N=46",
         "--circle-samples", "512", "--axis-samples=128"});
    CHECK(cfg.system == "mathieu");
    CHECK(cfg.params.at("delta") == doctest::Approx(1.0));
    CHECK(*cfg.N == 46);
    CHECK(cfg.circle_samples == 512);
    CHECK(cfg.axis_samples == 128);
  }
  SUBCASE("flags override the config file") {
    TempFile file("merge_test.toml",
                  "system = \"scalar\"\nN = 4\ngamma = 0.5\n");
    RunConfig from_file = parse_run_config({"--config", file.path});
    CHECK(from_file.system == "scalar");
    CHECK(*from_file.N == 4);
    CHECK(from_file.params.at("gamma") == doctest::Approx(0.5));

    RunConfig merged =
        parse_run_config({"--config", file.path, "--N", "6", "--gamma", "0.7"});
    CHECK(merged.system == "scalar");  // file value survives
    CHECK(*merged.N == 6);             // flag wins
    CHECK(merged.params.at("gamma") == doctest::Approx(0.7));
  }
  SUBCASE("usage errors") {
    CHECK_THROWS_AS(parse_run_config({"analyze"}), usage_error);  // not a flag
    CHECK_THROWS_AS(parse_run_config({"--N"}), usage_error);      // no value
    CHECK_THROWS_AS(parse_run_config({"--frobnicate", "1"}), usage_error);
    TempFile file("dup_config.toml", "N = 4\n");
    CHECK_THROWS_AS(
        parse_run_config({"--config", file.path, "--config", file.path}),
        usage_error);
    CHECK_THROWS_AS(parse_run_config({"--config", "no_such_file.toml"}),
                    io_error);
  }
}

TEST_CASE("thread cap from the environment") {
  ::setenv("HILLCERT_THREADS", "3", 1);
  CHECK(threads_from_env() == 3);
  ::setenv("HILLCERT_THREADS", "1", 1);
  CHECK(threads_from_env() == 1);
  ::setenv("HILLCERT_THREADS", "0", 1);  // nonsense: fall back, stay >= 1
  CHECK(threads_from_env() >= 1);
  ::setenv("HILLCERT_THREADS", "many", 1);
  CHECK(threads_from_env() >= 1);
  ::unsetenv("HILLCERT_THREADS");
  CHECK(threads_from_env() >= 1);
}
