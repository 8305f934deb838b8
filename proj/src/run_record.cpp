#include "nanopteron/run_record.hpp"

#include <fstream>

#include "nanopteron/error.hpp"

namespace nanopteron {

RunRecord::RunRecord(const std::string& command) {
    j_["schema"] = kRunRecordSchema;
    j_["command"] = command;
    j_["config"] = nlohmann::json::object();
    j_["outputs"] = nlohmann::json::object();
    j_["gates"] = nlohmann::json::array();
}

void RunRecord::gate(const GateResult& g) {
    j_["gates"].push_back({{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
    timings_["gate:" + g.name] = g.seconds;
}

bool RunRecord::all_gates_passed() const {
    for (const auto& g : j_["gates"])
        if (!g["passed"].get<bool>()) return false;
    return true;
}

std::string RunRecord::dump(bool include_timings) const {
    nlohmann::json out = j_;
    if (include_timings) out["timings"] = timings_;
    return out.dump(2) + "\n";
}

void RunRecord::write(const std::string& path, bool include_timings) const {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << dump(include_timings);
}

} // namespace nanopteron
