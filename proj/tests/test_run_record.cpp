#include <doctest.h>

#include "nanopteron/run_record.hpp"

using namespace nanopteron;

TEST_CASE("run record layout") {
    RunRecord r("periodic");
    r.config("eps", 0.1);
    r.output("omega", 17.5);
    r.timing("solve", 0.25);
    const auto j = nlohmann::json::parse(r.dump(true));
    CHECK(j["schema"] == kRunRecordSchema);
    CHECK(j["command"] == "periodic");
    CHECK(j["config"]["eps"] == 0.1);
    CHECK(j["outputs"]["omega"] == 17.5);
    CHECK(j["timings"]["solve"] == 0.25);
    CHECK(nlohmann::json::parse(r.dump(false)).contains("timings") == false);
}

TEST_CASE("gates") {
    RunRecord r("validate");
    CHECK(r.all_gates_passed());
    r.gate({"a", true, 0.1, 1.0, "ok"});
    CHECK(r.all_gates_passed());
    r.gate({"b", false, 0.1, 1.0, "bad"});
    CHECK_FALSE(r.all_gates_passed());
    const auto j = nlohmann::json::parse(r.dump(false));
    CHECK(j["gates"].size() == 2);
    CHECK(j["gates"][1]["detail"] == "bad");
}

TEST_CASE("identical records dump identically") {
    auto make = [] {
        RunRecord r("nanopteron");
        r.config("eps", 0.2);
        r.output("a", -3.2602381877e-3);
        r.timing("solve", 0.123);
        return r.dump(false);
    };
    CHECK(make() == make());
}
