#include "actp/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace actp {

namespace {

nlohmann::ordered_json identity_part(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["subcommand"] = m.subcommand;
    nlohmann::ordered_json flags;
    for (const auto& [k, v] : m.flags) flags[k] = v;
    j["flags"] = std::move(flags);
    j["seed"] = m.seed;
    j["version"] = m.version;
    return j;
}

}  // namespace

std::string RunManifest::identity_json() const { return identity_part(*this).dump(2); }

std::string RunManifest::to_json() const {
    auto j = identity_part(*this);
    nlohmann::ordered_json t;
    for (const auto& [k, v] : timings_seconds) t[k] = v;
    j["timings"] = std::move(t);
    return j.dump(2);
}

void RunManifest::save_sidecar(const std::string& output_path) const {
    const std::string path = output_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write manifest: " + path);
    out << to_json() << "\n";
}

}  // namespace actp
