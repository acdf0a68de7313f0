#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "branchkit/cli.hpp"

using namespace branchkit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig branch_cfg() {
    RunConfig cfg;
    cfg.subcommand = "branch";
    cfg.algebra = "A1~1";
    cfg.lambda1 = LabelVec{1, 0};
    cfg.lambda2 = LabelVec{1, 0};
    cfg.mu = LabelVec{2, 0};
    cfg.trunc = 6;
    cfg.method = "all";
    cfg.format = "json";
    return cfg;
}

}  // namespace

TEST_CASE("branch with all methods agrees and exits 0") {
    Outcome r = run_cfg(branch_cfg());
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("\"agreement\":\"ok\"") != std::string::npos);
    CHECK(r.out.find("\"method\":\"oracle\"") != std::string::npos);
    CHECK(r.out.find("\"method\":\"sl2-closed-2\"") != std::string::npos);
    // the Ising vacuum shape
    CHECK(r.out.find("[[0,\"1\"],[2,\"1\"],[3,\"1\"],[4,\"2\"],[5,\"2\"],[6,\"3\"]]") !=
          std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    Outcome a = run_cfg(branch_cfg());
    Outcome b = run_cfg(branch_cfg());
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
}

TEST_CASE("level mismatch exits 1 with a one-line diagnostic") {
    RunConfig cfg = branch_cfg();
    cfg.mu = LabelVec{3, 0};
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("level mismatch") != std::string::npos);
}

TEST_CASE("unknown algebra exits 1 naming the argument") {
    RunConfig cfg = branch_cfg();
    cfg.algebra = "Z9~1";
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("Z9~1") != std::string::npos);
}

TEST_CASE("malformed weight length is rejected") {
    RunConfig cfg = branch_cfg();
    cfg.lambda1 = LabelVec{1, 0, 0};
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("labels") != std::string::npos);
}

TEST_CASE("verify sweeps all triples at the given levels") {
    RunConfig cfg;
    cfg.subcommand = "verify";
    cfg.algebra = "A1~1";
    cfg.levels = {1, 1};
    cfg.trunc = 8;
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 0);
    // 2 x 2 x 3 triples, each OK
    size_t ok_count = 0, pos = 0;
    while ((pos = r.out.find(" : OK\n", pos)) != std::string::npos) {
        ++ok_count;
        pos += 5;
    }
    CHECK(ok_count == 12);
    CHECK(r.out.find("12 triples checked") != std::string::npos);
    CHECK(r.out.find("all OK") != std::string::npos);
}

TEST_CASE("weyl prints layer sizes and orbits") {
    RunConfig cfg;
    cfg.subcommand = "weyl";
    cfg.algebra = "A1~1";
    cfg.max_length = 4;
    cfg.format = "json";
    cfg.orbit_of = LabelVec{1, 0};
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"layer_sizes\":[1,2,2,2,2]") != std::string::npos);
    CHECK(r.out.find("\"orbit\"") != std::string::npos);
}

TEST_CASE("char and string subcommands") {
    RunConfig cfg;
    cfg.subcommand = "char";
    cfg.algebra = "A1~1";
    cfg.lambda = LabelVec{1, 0};
    cfg.trunc = 5;
    cfg.format = "json";
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("[[0,\"1\"],[1,\"1\"],[2,\"2\"],[3,\"3\"],[4,\"5\"],[5,\"7\"]]") !=
          std::string::npos);

    cfg.subcommand = "string";
    cfg.nu = LabelVec{0, 1};  // off-lattice for this module
    Outcome s = run_cfg(cfg);
    CHECK(s.code == 0);
    CHECK(s.out.find("\"empty\":true") != std::string::npos);
}

TEST_CASE("cache list and clear through the cache directory") {
    fs::path dir = fs::temp_directory_path() / "branchkit_cli_cache";
    fs::remove_all(dir);
    RunConfig cfg = branch_cfg();
    cfg.cache_dir = dir.string();
    Outcome first = run_cfg(cfg);
    CHECK(first.code == 0);

    RunConfig list;
    list.subcommand = "cache";
    list.cache_op = "list";
    list.cache_dir = dir.string();
    Outcome l = run_cfg(list);
    CHECK(l.code == 0);
    CHECK(l.out.find("A1~1") != std::string::npos);
    CHECK(l.out.find("cached tables") != std::string::npos);

    // warm run is byte-identical
    Outcome warm = run_cfg(cfg);
    CHECK(warm.out == first.out);

    RunConfig clear = list;
    clear.cache_op = "clear";
    Outcome c = run_cfg(clear);
    CHECK(c.code == 0);
    Outcome l2 = run_cfg(list);
    CHECK(l2.out.find("0 cached tables") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("BRANCHKIT_CACHE overrides the configured directory") {
    fs::path env_dir = fs::temp_directory_path() / "branchkit_cli_env";
    fs::path flag_dir = fs::temp_directory_path() / "branchkit_cli_flag";
    fs::remove_all(env_dir);
    fs::remove_all(flag_dir);
    setenv("BRANCHKIT_CACHE", env_dir.c_str(), 1);
    RunConfig cfg = branch_cfg();
    cfg.cache_dir = flag_dir.string();
    Outcome r = run_cfg(cfg);
    unsetenv("BRANCHKIT_CACHE");
    CHECK(r.code == 0);
    CHECK(fs::exists(env_dir));
    CHECK_FALSE(fs::exists(flag_dir));
    fs::remove_all(env_dir);
}

TEST_CASE("cache subcommand requires a directory") {
    RunConfig cfg;
    cfg.subcommand = "cache";
    cfg.cache_op = "list";
    Outcome r = run_cfg(cfg);
    CHECK(r.code == 1);
    CHECK(r.err.find("cache") != std::string::npos);
}
