#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(NANOPTERON_CLI) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("nanopteron_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("exit codes") {
    const fs::path d = scratch("codes");
    CHECK(run("dispersion --points 64 --out " + d.string()) == 0);
    CHECK(fs::exists(d / "dispersion.csv"));
    CHECK(fs::exists(d / "dispersion.json"));
    CHECK(run("periodic --bogus") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("periodic --kappa 0.5 --out " + d.string()) == 2);
    CHECK(run("nanopteron --eps 0.2 --max-iter 2 --out " + d.string()) == 1);
    std::ofstream(d / "bad.cfg") << "kappa = 2\nunknown_key = 1\n";
    CHECK(run("periodic --config " + (d / "bad.cfg").string() + " --out " + d.string()) == 2);
}

TEST_CASE("flags override the config file") {
    const fs::path d = scratch("precedence");
    std::ofstream(d / "run.cfg") << "# reference dimer\nkappa = 3\neps = 0.2\n";
    CHECK(run("periodic --config " + (d / "run.cfg").string() + " --eps 0.1 --no-timings --out " + d.string()) == 0);
    const std::string rec = slurp(d / "periodic.json");
    CHECK(rec.find("\"kappa\": \"3\"") != std::string::npos);
    CHECK(rec.find("\"eps\": \"0.1\"") != std::string::npos);
    CHECK(rec.find("timings") == std::string::npos);
}

TEST_CASE("identical configuration gives bit-identical outputs") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "nanopteron --sweep 0.2,0.1 --threads 2 --no-timings --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files == 6);
}

TEST_CASE("simulate writes a trajectory") {
    const fs::path d = scratch("sim");
    CHECK(run("simulate --init leading --eps 0.2 --sites 128 --T 1 --snap-every 10 --out " + d.string()) == 0);
    std::ifstream in(d / "trajectory.csv");
    std::string schema, header;
    std::getline(in, schema);
    std::getline(in, header);
    CHECK(schema == "# schema nanopteron.csv/1");
    CHECK(header == "t,j,r");
    CHECK(run("simulate --init nothing --out " + d.string()) == 2);
}
