#include "sdpi/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sdpi {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json value_json(double v) {
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  if (std::isnan(v)) return json("nan");
  return json(v);
}

json certificate_json(const SdpiEstimate& e) {
  json c;
  if (std::holds_alternative<std::monostate>(e.certificate)) {
    c["type"] = "none";
  } else if (const auto* pair = std::get_if<RowPair>(&e.certificate)) {
    c["type"] = "row_pair";
    c["x"] = pair->x;
    c["x_prime"] = pair->x_prime;
  } else if (const auto* subset = std::get_if<Subset>(&e.certificate)) {
    c["type"] = "subset";
    c["indices"] = subset->indices;
  } else if (const auto* pom = std::get_if<PairOfMeasures>(&e.certificate)) {
    c["type"] = "pair_of_measures";
    c["nu"] = json{{"weights", pom->nu.weights()}};
    c["mu"] = json{{"weights", pom->mu.weights()}};
  } else if (const auto* bin = std::get_if<BinaryPairLogit>(&e.certificate)) {
    c["type"] = "binary_pair_logit";
    c["x"] = bin->x;
    c["x_prime"] = bin->x_prime;
    c["logit_p"] = value_json(bin->logit_p);
    c["logit_q"] = value_json(bin->logit_q);
  }
  if (e.certificate_kind.has_value()) c["kind"] = e.certificate_kind->name();
  return c;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string measure_to_json(const ProbabilityMeasure& mu) {
  return json{{"weights", mu.weights()}}.dump();
}

ProbabilityMeasure measure_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("weights")) {
    throw ParseError("measure JSON needs a \"weights\" array");
  }
  try {
    return ProbabilityMeasure::from_weights(number_array(j["weights"], "weights"));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid measure: ") + e.what());
  }
}

std::string kernel_to_json(const MarkovKernel& kernel) {
  std::vector<std::vector<double>> rows;
  rows.reserve(kernel.input_size());
  for (std::size_t x = 0; x < kernel.input_size(); ++x) rows.push_back(kernel.row(x));
  return json{{"rows", rows}}.dump();
}

MarkovKernel kernel_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw ParseError("kernel JSON needs a \"rows\" array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["rows"]) rows.push_back(number_array(row, "row"));
  try {
    return MarkovKernel::from_rows(std::move(rows));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid kernel: ") + e.what());
  }
}

MarkovKernel kernel_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() &&
               (cell[used] == ' ' || cell[used] == '\t' || cell[used] == '\r')) {
          ++used;
        }
        if (used != cell.size()) throw ParseError("trailing characters in CSV cell");
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("CSV cell is not a number: " + cell);
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return MarkovKernel::from_rows(std::move(rows));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid kernel: ") + e.what());
  }
}

MarkovKernel kernel_from_file(const std::string& path) {
  const std::string text = read_text_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return kernel_from_csv(text);
  }
  return kernel_from_json(text);
}

ProbabilityMeasure measure_from_file(const std::string& path) {
  return measure_from_json(read_text_file(path));
}

std::string estimate_to_json(const SdpiEstimate& e) {
  json j;
  j["value"] = value_json(e.value);
  j["lower_bound"] = value_json(e.lower_bound);
  j["upper_bound"] = value_json(e.upper_bound);
  j["method"] = method_name(e.method);
  j["certificate"] = certificate_json(e);
  return j.dump();
}

std::string mixing_report_to_json(const MixingReport& r) {
  json j;
  j["pi"] = json{{"weights", r.pi.weights()}};
  j["eta_chi2"] = value_json(r.eta_chi2);
  j["eta_2"] = value_json(r.eta_2);
  j["gamma_alpha"] = value_json(r.gamma_alpha);
  if (r.crossing_index.has_value()) {
    j["crossing_index"] = *r.crossing_index;
  } else {
    j["crossing_index"] = nullptr;
  }
  json steps = json::array();
  for (const auto& s : r.per_step) {
    steps.push_back(json{{"n", s.n},
                         {"true_dev_sq", value_json(s.true_dev_sq)},
                         {"linear_bound", value_json(s.linear_bound)},
                         {"nonlinear_bound", value_json(s.nonlinear_bound)}});
  }
  j["per_step"] = std::move(steps);
  return j.dump();
}

std::string mixing_report_to_csv(const MixingReport& r) {
  std::string out = "n,true_dev_sq,linear_bound,nonlinear_bound\n";
  for (const auto& s : r.per_step) {
    out += std::to_string(s.n);
    out += ',';
    out += format_double(s.true_dev_sq);
    out += ',';
    out += format_double(s.linear_bound);
    out += ',';
    out += format_double(s.nonlinear_bound);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace sdpi
