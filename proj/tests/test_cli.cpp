#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TFHOM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("tfhom_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("oracle --z -1") == 0);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("cell --no-such-flag") == 1);
    CHECK(run_cli("cell --field lumpy") == 1);
    CHECK(run_cli("fine --alpha 1.5") == 1);
    CHECK(run_cli("fine --dt 0.03") == 1);
    CHECK(run_cli("study --eps 1/32,1/8") == 1);
    CHECK(run_cli("cell --config /nonexistent/config.json") == 1);
    const auto out = scratch("numerical");
    CHECK(run_cli("fine --grid-n 8 --dt 0.1 --eps 1/2 --cg-tol 1e-300 --out " + out.string()) == 2);
    fs::remove_all(out);
}

TEST_CASE("snapshot export through the command line") {
    const auto out = scratch("snap");
    CHECK(run_cli("snapshots --grid-n 8 --dt 0.1 --eps 1/2 --out " + out.string()) == 0);
    CHECK_FALSE(fs::exists(out));
    CHECK(run_cli("snapshots --grid-n 8 --dt 0.1 --eps 1/2 --snapshots 1,6,11 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "snapshots" / "fine_k001.csv"));
    CHECK(fs::exists(out / "snapshots" / "fine_k006.csv"));
    CHECK(fs::exists(out / "plots" / "fine_k011.svg"));
    CHECK(run_cli("snapshots --grid-n 8 --dt 0.1 --snapshots 12 --out " + out.string()) == 1);
    fs::remove_all(out);
}

TEST_CASE("config file with flag overrides") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    const auto cfg = dir / "cfg.json";
    {
        FILE* f = std::fopen(cfg.c_str(), "w");
        std::fputs("{\"field\": \"constant:5\", \"cell_n\": 8, \"out\": \"unused\"}", f);
        std::fclose(f);
    }
    CHECK(run_cli("cell --config " + cfg.string() + " --write-chi --out " + (dir / "o").string()) == 0);
    CHECK(fs::exists(dir / "o" / "cell" / "chi_1.csv"));
    CHECK(run_cli("cell --config " + cfg.string() + " --cell-n 12") == 1);
    fs::remove_all(dir);
}
