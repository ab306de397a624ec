#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "avgmix/analysis.hpp"
#include "avgmix/experiments.hpp"

namespace avgmix {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Shortest round-trip decimal representation; identical doubles format
// identically, keeping artifacts byte-reproducible.
std::string fmt_double(double x);

Json to_json(const SpectralSummary& s);
Json to_json(const BoundReport& r);
Json to_json(const MixingEstimate& e);
Json to_json(const CoveringEstimate& e);
Json to_json(const CornerSweep& s);
Json to_json(const SlowedCompare& c);
Json to_json(const SplitCompare& c);

// "t,mean,stderr,trials" rows on the recording grid.
void write_curve_csv(std::ostream& out, const MixingEstimate& e);

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);

void write_corner_sweep_csv(std::ostream& out, const CornerSweep& s);

void write_slowed_compare_csv(std::ostream& out, const SlowedCompare& c);

void write_split_compare_csv(std::ostream& out, const SplitCompare& c);

} // namespace avgmix
