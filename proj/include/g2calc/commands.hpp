#pragma once

#include "g2calc/massey_io.hpp"
#include "g2calc/torus.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace g2calc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
    std::uint64_t seed = 1;
    int modes = 0;    // 0 selects the suite default
    int threads = 0;  // 0 reads G2CALC_THREADS
};

// Report document shared by every command.
struct Document {
    Json json;

    bool pass() const;
    std::string text() const;
};

const std::vector<std::string>& verify_suites();
// Throws std::invalid_argument for an unknown suite.
Document run_verify(const std::string& suite, const RunOptions& opt);

Document run_cohomology_mode(const Mode& k);
Document run_cohomology_truncation(int n, const RunOptions& opt);

// With `classes` set, only that triple is evaluated; otherwise the file's
// massey lines, or a sweep of H¹ × H¹ × H¹ when there are none.
Document run_massey(const ModelFile& model, const std::string& source,
                    const std::optional<std::array<std::string, 3>>& classes, const RunOptions& opt);

Document run_obstruct(const ModelFile& model, const std::string& source);

// Arrow constants of ι_B, ι_K, d, 𝓛_B and 𝓛_K.
Json arrow_tables_json();
std::string arrow_tables_csv();

}  // namespace g2calc
