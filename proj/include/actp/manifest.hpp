#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace actp {

// Run provenance attached to every output file (JSON field or .manifest.json
// sidecar next to CSVs). Identical manifests produce byte-identical outputs;
// wall-clock timings live in the separate `timings` block and never feed back
// into any computation.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> flags;  // insertion order
    std::uint64_t seed = 0;
    std::string version = "actp 0.1.0";
    std::vector<std::pair<std::string, double>> timings_seconds;

    void flag(const std::string& name, const std::string& value) { flags.emplace_back(name, value); }
    void timing(const std::string& name, double seconds) {
        timings_seconds.emplace_back(name, seconds);
    }
    std::string to_json() const;
    // The identity portion only: no timings. Equal strings imply outputs match.
    std::string identity_json() const;
    void save_sidecar(const std::string& output_path) const;
};

}  // namespace actp
