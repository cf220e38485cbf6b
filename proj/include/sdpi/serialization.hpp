#ifndef SDPI_SERIALIZATION_HPP
#define SDPI_SERIALIZATION_HPP

#include <string>

#include "sdpi/measures.hpp"
#include "sdpi/mixing.hpp"
#include "sdpi/sdpi.hpp"

namespace sdpi {

// Wire formats: measures are {"weights":[...]}, kernels are {"rows":[[...]]}.
// Kernels additionally load from CSV (one row per line, comma-separated).
// Infinite values serialize as the string "inf"; numbers are emitted with 17
// significant digits so outputs are reproducible across implementations.

std::string format_double(double v);  // %.17g, with "inf"/"-inf"/"nan"

std::string measure_to_json(const ProbabilityMeasure& mu);
ProbabilityMeasure measure_from_json(const std::string& text);
ProbabilityMeasure measure_from_file(const std::string& path);

std::string kernel_to_json(const MarkovKernel& kernel);
MarkovKernel kernel_from_json(const std::string& text);
MarkovKernel kernel_from_csv(const std::string& text);
// Dispatches on the file extension (.json or .csv).
MarkovKernel kernel_from_file(const std::string& path);

std::string estimate_to_json(const SdpiEstimate& estimate);
std::string mixing_report_to_json(const MixingReport& report);
std::string mixing_report_to_csv(const MixingReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sdpi

#endif  // SDPI_SERIALIZATION_HPP
