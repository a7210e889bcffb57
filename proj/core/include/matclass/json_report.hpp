#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matclass/assignment.hpp"
#include "matclass/classify.hpp"
#include "matclass/interlacing.hpp"
#include "matclass/search.hpp"

namespace matclass {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kArtifactVersion = "0.1.0";

// Echoed into every emitted report so runs are reproducible from the output
// alone.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  ToleranceConfig tolerances;
  std::optional<std::uint64_t> seed;
  std::string format = "text";  // "json" | "text"
  int jobs = 1;
};

// Serializers produce schema-versioned JSON with stable key order and
// shortest-round-trip numbers; identical values give byte-identical output.
// Non-finite margins appear as "inf" / "-inf" strings, NaN as null.
std::string to_json(const ClassReport& r, int indent = 2);
// Single-certifier report wrapped with its name and manifest.
std::string check_report_to_json(const ClassReport& r, std::string_view name,
                                 const RunManifest* manifest = nullptr);
std::string to_json(const ClassifyReport& r, const RunManifest* manifest = nullptr);
std::string to_json(const SearchResult& r, const RunManifest* manifest = nullptr);
std::string to_json(const StrictGkkApproximation& r, const RunManifest* manifest = nullptr);
std::string to_json(const DispersalProfile& r, const RunManifest* manifest = nullptr);
std::string to_json(const InterlaceReport& r, const RunManifest* manifest = nullptr);
std::string to_json(const std::vector<InterlaceReport>& r, const RunManifest* manifest = nullptr);
std::string to_json(const AssignmentResult& r, const ClassReport& feasibility,
                    const RunManifest* manifest = nullptr);

// Aligned human-readable rendering of the same content.
std::string to_text(const ClassReport& r, std::string_view name);
std::string to_text(const ClassifyReport& r);
std::string to_text(const SearchResult& r);
std::string to_text(const StrictGkkApproximation& r);
std::string to_text(const DispersalProfile& r);
std::string to_text(const InterlaceReport& r);
std::string to_text(const std::vector<InterlaceReport>& r);
std::string to_text(const AssignmentResult& r, const ClassReport& feasibility);

}  // namespace matclass
