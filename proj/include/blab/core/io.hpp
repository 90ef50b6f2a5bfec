#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "blab/core/grid.hpp"

namespace blab::io {

// Shortest round-trip is not required; every float is printed with 17
// significant digits so the text is a stable function of the value.
std::string fmt(double v);

void write_csv(std::ostream& os, const SampledSignal& f);
void write_csv(std::ostream& os, const Spectrum& s);

// Reads the three-column CSV back; the grid is rebuilt from the coordinates.
SampledSignal read_signal_csv(std::istream& is);
Spectrum read_spectrum_csv(std::istream& is);

nlohmann::json to_json(const SampledSignal& f);
nlohmann::json to_json(const Spectrum& s);
SampledSignal signal_from_json(const nlohmann::json& j);
Spectrum spectrum_from_json(const nlohmann::json& j);

}  // namespace blab::io
