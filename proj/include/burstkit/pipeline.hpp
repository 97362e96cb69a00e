#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace burst {

// Everything a run needs; CLI flags map onto these fields one-to-one.
struct RunConfig {
    std::string input;
    std::string out_dir = ".";
    std::int64_t dt_seconds = 604800;
    double theta1 = 2.0;
    double theta2 = -2.0;
    std::uint64_t min_degree = 15;
    double alpha_bin = 0.05;
    double degree_bin = 10.0;
    int n_bootstrap = 1000;
    double ks_level = 0.1;
    // bootstrap the K-S test on at most this many fitted nodes, smallest ids
    // first (0 = no cap); untested nodes keep ks_p = -1 and count as retained
    std::uint64_t ks_cap = 200;
    bool seed_set = false; // randomized stages refuse to run without a seed
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0 = hardware default

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Error with the pipeline stage attached, for machine-readable reporting.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// Subcommands: ingest-check | phases | stats | fit | powerlaw | all.
// (synth is driven separately; see tools/.)  Writes the stage's CSV
// artifacts plus manifest.csv and timings.csv into cfg.out_dir.  All outputs
// except timings.csv are byte-deterministic for a fixed config and input.
void run(const std::string& subcommand, const RunConfig& cfg);

// Reads the config echo back out of a manifest written by run().
RunConfig read_manifest_config(const std::string& path);

// FNV-1a digest of a file's raw bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

} // namespace burst
