//
// Copyright 2026 The SDC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sdc/generator.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "sdc/schema_io.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

using json = nlohmann::json;
using Type = Marginal::Type;

constexpr int kMaxOrderedAttempts = 10000;

bool IsNumericType(Type t) {
  return t == Type::kUniform || t == Type::kNormal || t == Type::kZipfBins ||
         t == Type::kDifference;
}

absl::Status SpecError(absl::string_view attr, absl::string_view why) {
  return absl::InvalidArgumentError(
      absl::StrCat("generator spec: '", attr, "': ", why));
}

// Effective [lo, hi] of a numeric marginal.
std::pair<double, double> Bounds(const Marginal& m,
                                 const AttributeSchema& attr) {
  return {m.min.value_or(attr.min), m.max.value_or(attr.max)};
}

absl::StatusOr<Marginal> ParseMarginal(const json& j,
                                       const AttributeSchema& attr,
                                       absl::CivilDay epoch) {
  if (!j.is_object()) return SpecError(attr.name, "marginal must be an object");
  Marginal m;
  m.integer = attr.kind == AttributeKind::kDate;
  const std::string type = j.value("type", "");
  static const auto* kTypes = new absl::flat_hash_map<std::string, Type>{
      {"uniform", Type::kUniform},   {"normal", Type::kNormal},
      {"zipf_bins", Type::kZipfBins}, {"table", Type::kTable},
      {"zipf", Type::kZipf},         {"sequence", Type::kSequence},
      {"difference", Type::kDifference}};
  auto it = kTypes->find(type);
  if (it == kTypes->end()) {
    return SpecError(attr.name, absl::StrCat("unknown type \"", type, "\""));
  }
  m.type = it->second;
  auto number = [&](const json& v, absl::string_view key,
                    bool allow_date) -> absl::StatusOr<double> {
    if (v.is_number()) return v.get<double>();
    if (allow_date && attr.kind == AttributeKind::kDate && v.is_string()) {
      absl::StatusOr<double> d = ParseDate(v.get<std::string>(), epoch);
      if (d.ok()) return d;
    }
    return SpecError(attr.name, absl::StrCat("\"", key, "\" must be a number"));
  };
  auto string = [&](const json& v,
                    absl::string_view key) -> absl::StatusOr<std::string> {
    if (v.is_string()) return v.get<std::string>();
    return SpecError(attr.name, absl::StrCat("\"", key, "\" must be a string"));
  };
  auto integral = [&](const json& v, absl::string_view key) -> absl::StatusOr<int> {
    if (v.is_number_integer()) return v.get<int>();
    return SpecError(attr.name,
                     absl::StrCat("\"", key, "\" must be an integer"));
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "type") continue;
    if (key == "min") {
      SDC_ASSIGN_OR_RETURN(m.min, number(v, key, true));
    } else if (key == "max") {
      SDC_ASSIGN_OR_RETURN(m.max, number(v, key, true));
    } else if (key == "mu") {
      SDC_ASSIGN_OR_RETURN(m.mu, number(v, key, true));
    } else if (key == "sigma") {
      SDC_ASSIGN_OR_RETURN(m.sigma, number(v, key, false));
    } else if (key == "s") {
      SDC_ASSIGN_OR_RETURN(m.s, number(v, key, false));
    } else if (key == "n_bins") {
      SDC_ASSIGN_OR_RETURN(m.n_bins, integral(v, key));
    } else if (key == "width") {
      SDC_ASSIGN_OR_RETURN(m.width, integral(v, key));
    } else if (key == "integer") {
      if (!v.is_boolean()) {
        return SpecError(attr.name, "\"integer\" must be a boolean");
      }
      m.integer = v.get<bool>();
    } else if (key == "prefix") {
      SDC_ASSIGN_OR_RETURN(m.prefix, string(v, key));
    } else if (key == "minuend") {
      SDC_ASSIGN_OR_RETURN(m.minuend, string(v, key));
    } else if (key == "subtrahend") {
      SDC_ASSIGN_OR_RETURN(m.subtrahend, string(v, key));
    } else if (key == "probabilities") {
      if (!v.is_object()) {
        return SpecError(attr.name, "\"probabilities\" must be an object");
      }
      for (const auto& [value, p] : v.items()) {
        if (!p.is_number()) {
          return SpecError(attr.name, "probabilities must be numbers");
        }
        m.table.emplace_back(value, p.get<double>());
      }
    } else {
      return SpecError(attr.name, absl::StrCat("unknown key \"", key, "\""));
    }
  }
  return m;
}

absl::Status ValidateMarginal(const Marginal& m, const AttributeSchema& attr,
                              const GeneratorSpec& spec) {
  if (IsNumericType(m.type) != attr.is_numeric()) {
    return SpecError(attr.name, absl::StrCat("marginal type does not fit a ",
                                             KindName(attr.kind),
                                             " attribute"));
  }
  if (IsNumericType(m.type) && m.type != Type::kDifference) {
    auto [lo, hi] = Bounds(m, attr);
    if (!(attr.min <= lo && lo <= hi && hi <= attr.max)) {
      return SpecError(attr.name, "bounds must satisfy min <= lo <= hi <= max");
    }
    if (m.integer && std::ceil(lo) > std::floor(hi)) {
      return SpecError(attr.name, "no integer inside the bounds");
    }
  }
  switch (m.type) {
    case Type::kUniform:
      break;
    case Type::kNormal:
      if (!std::isfinite(m.mu) || !(m.sigma > 0) || !std::isfinite(m.sigma)) {
        return SpecError(attr.name, "normal needs finite mu and sigma > 0");
      }
      break;
    case Type::kZipfBins: {
      if (m.n_bins < 1 || !(m.s >= 0)) {
        return SpecError(attr.name, "zipf_bins needs n_bins >= 1 and s >= 0");
      }
      auto [lo, hi] = Bounds(m, attr);
      if (m.integer && std::floor(hi) - std::ceil(lo) + 1 < m.n_bins) {
        return SpecError(attr.name, "more bins than integers in range");
      }
      break;
    }
    case Type::kTable: {
      if (m.table.empty()) return SpecError(attr.name, "empty table");
      double sum = 0;
      absl::flat_hash_set<std::string> seen;
      const Schema& schema = *spec.schema;
      size_t index = *schema.IndexOf(attr.name);
      for (const auto& [value, p] : m.table) {
        if (!(p >= 0) || !std::isfinite(p)) {
          return SpecError(attr.name, "negative probability");
        }
        if (!seen.insert(value).second) {
          return SpecError(attr.name,
                           absl::StrCat("duplicate value '", value, "'"));
        }
        if (!schema.InDomain(index, value)) {
          return SpecError(attr.name,
                           absl::StrCat("'", value, "' is outside the domain"));
        }
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        return SpecError(attr.name, absl::StrFormat(
                                        "probabilities sum to %.12g, not 1",
                                        sum));
      }
      break;
    }
    case Type::kZipf:
      if (attr.domain.empty()) {
        return SpecError(attr.name, "zipf needs a closed domain");
      }
      if (!(m.s >= 0)) return SpecError(attr.name, "zipf needs s >= 0");
      break;
    case Type::kSequence:
      if (!attr.domain.empty()) {
        return SpecError(attr.name, "sequence needs an open domain");
      }
      if (m.width < 0 || m.width > 30) {
        return SpecError(attr.name, "sequence width must be in [0, 30]");
      }
      break;
    case Type::kDifference:
      for (const std::string* src : {&m.minuend, &m.subtrahend}) {
        std::optional<size_t> i = spec.schema->IndexOf(*src);
        if (!i.has_value() || !spec.schema->attribute(*i).is_numeric()) {
          return SpecError(attr.name, absl::StrCat("'", *src,
                                                   "' is not a numeric "
                                                   "attribute"));
        }
        auto src_m = spec.marginals.find(*src);
        if (src_m != spec.marginals.end() &&
            src_m->second.type == Type::kDifference) {
          return SpecError(attr.name, "differences cannot be chained");
        }
      }
      break;
  }
  return absl::OkStatus();
}

// Draws one value of a numeric, non-derived marginal.
double DrawNumeric(const Marginal& m, const AttributeSchema& attr,
                   std::discrete_distribution<int>* bins,
                   std::mt19937_64& rng) {
  auto [lo, hi] = Bounds(m, attr);
  switch (m.type) {
    case Type::kUniform:
      if (m.integer) {
        return static_cast<double>(std::uniform_int_distribution<int64_t>(
            static_cast<int64_t>(std::ceil(lo)),
            static_cast<int64_t>(std::floor(hi)))(rng));
      }
      return std::uniform_real_distribution<double>(lo, hi)(rng);
    case Type::kNormal: {
      double x = std::normal_distribution<double>(m.mu, m.sigma)(rng);
      if (m.integer) return std::clamp(std::round(x), std::ceil(lo),
                                       std::floor(hi));
      return std::clamp(x, lo, hi);
    }
    case Type::kZipfBins: {
      int b = (*bins)(rng);
      if (m.integer) {
        int64_t first = static_cast<int64_t>(std::ceil(lo));
        int64_t count = static_cast<int64_t>(std::floor(hi)) - first + 1;
        int64_t start = first + b * count / m.n_bins;
        int64_t end = first + (b + 1) * count / m.n_bins;
        return static_cast<double>(
            std::uniform_int_distribution<int64_t>(start, end - 1)(rng));
      }
      double w = (hi - lo) / m.n_bins;
      double u = std::uniform_real_distribution<double>(0, 1)(rng);
      return std::min(hi, lo + (b + u) * w);
    }
    default:
      return 0;
  }
}

std::vector<double> ZipfWeights(double s, size_t n) {
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -s);
  return w;
}

class NumericSampler {
 public:
  NumericSampler(const Marginal& m, const AttributeSchema& attr)
      : m_(m), attr_(attr) {
    if (m.type == Type::kZipfBins) {
      std::vector<double> w = ZipfWeights(m.s, m.n_bins);
      bins_ = std::discrete_distribution<int>(w.begin(), w.end());
    }
  }
  double operator()(std::mt19937_64& rng) {
    return DrawNumeric(m_, attr_, &bins_, rng);
  }

 private:
  const Marginal& m_;
  const AttributeSchema& attr_;
  std::discrete_distribution<int> bins_;
};

std::vector<size_t> ArgSort(const std::vector<double>& v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&v](size_t a, size_t b) {
    return v[a] < v[b] || (v[a] == v[b] && a < b);
  });
  return order;
}

// Reorders `b` so that its ranks follow a bivariate normal with correlation
// `rho` against the normal scores of `a`. The multiset of `b` is unchanged.
void RankReorder(const std::vector<double>& a, std::vector<double>& b,
                 double rho, std::mt19937_64& rng) {
  const size_t n = a.size();
  std::normal_distribution<double> normal(0, 1);
  std::vector<double> scores(n);
  for (double& z : scores) z = normal(rng);
  std::sort(scores.begin(), scores.end());
  std::vector<size_t> order_a = ArgSort(a);
  std::vector<double> latent(n);
  for (size_t i = 0; i < n; ++i) latent[order_a[i]] = scores[i];
  const double residual = std::sqrt(std::max(0.0, 1 - rho * rho));
  for (size_t i = 0; i < n; ++i) {
    latent[i] = rho * latent[i] + residual * normal(rng);
  }
  std::vector<size_t> order_y = ArgSort(latent);
  std::vector<double> sorted_b = b;
  std::sort(sorted_b.begin(), sorted_b.end());
  for (size_t i = 0; i < n; ++i) b[order_y[i]] = sorted_b[i];
}

}  // namespace

absl::StatusOr<GeneratorSpec> ParseGeneratorSpec(absl::string_view json_text,
                                                 const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "generator spec: syntax error at byte %d: %s", e.byte, e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError(
        "generator spec: document must be an object");
  }
  GeneratorSpec spec;
  for (const auto& [key, v] : doc.items()) {
    if (key != "n_records" && key != "seed" && key != "schema" &&
        key != "marginals" && key != "ordered_pairs" &&
        key != "correlations") {
      return absl::InvalidArgumentError(
          absl::StrCat("generator spec: unknown key \"", key, "\""));
    }
  }
  if (!doc.contains("n_records") || !doc["n_records"].is_number_unsigned()) {
    return absl::InvalidArgumentError(
        "generator spec: \"n_records\" must be a positive integer");
  }
  spec.n_records = doc["n_records"].get<uint64_t>();
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      return absl::InvalidArgumentError(
          "generator spec: \"seed\" must be an unsigned integer");
    }
    spec.seed = doc["seed"].get<uint64_t>();
  }
  if (!doc.contains("schema")) {
    return absl::InvalidArgumentError("generator spec: missing \"schema\"");
  }
  std::string schema_text;
  if (doc["schema"].is_string()) {
    std::filesystem::path path(doc["schema"].get<std::string>());
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    SDC_ASSIGN_OR_RETURN(schema_text, ReadFile(path.string()));
  } else if (doc["schema"].is_object()) {
    schema_text = doc["schema"].dump();
  } else {
    return absl::InvalidArgumentError(
        "generator spec: \"schema\" must be a path or an object");
  }
  SDC_ASSIGN_OR_RETURN(Schema schema, ParseSchema(schema_text));
  spec.schema = std::make_shared<const Schema>(std::move(schema));

  if (!doc.contains("marginals") || !doc["marginals"].is_object()) {
    return absl::InvalidArgumentError(
        "generator spec: \"marginals\" must be an object");
  }
  for (const auto& [name, j] : doc["marginals"].items()) {
    std::optional<size_t> index = spec.schema->IndexOf(name);
    if (!index.has_value()) {
      return SpecError(name, "not a schema attribute");
    }
    SDC_ASSIGN_OR_RETURN(
        Marginal m, ParseMarginal(j, spec.schema->attribute(*index),
                                  spec.schema->epoch()));
    spec.marginals.emplace(name, std::move(m));
  }
  if (doc.contains("ordered_pairs")) {
    for (const json& pair : doc["ordered_pairs"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
          !pair[1].is_string()) {
        return absl::InvalidArgumentError(
            "generator spec: ordered pairs must be [lower, upper] names");
      }
      spec.ordered_pairs.emplace_back(pair[0].get<std::string>(),
                                      pair[1].get<std::string>());
    }
  }
  if (doc.contains("correlations")) {
    for (const json& c : doc["correlations"]) {
      if (!c.is_object() || !c.contains("a") || !c.contains("b") ||
          !c.contains("rho") || !c["a"].is_string() || !c["b"].is_string() ||
          !c["rho"].is_number() || c.size() != 3) {
        return absl::InvalidArgumentError(
            "generator spec: correlations need exactly \"a\", \"b\", \"rho\"");
      }
      spec.correlations.push_back({c["a"].get<std::string>(),
                                   c["b"].get<std::string>(),
                                   c["rho"].get<double>()});
    }
  }
  SDC_RETURN_IF_ERROR(ValidateGeneratorSpec(spec));
  return spec;
}

absl::Status ValidateGeneratorSpec(const GeneratorSpec& spec) {
  if (spec.schema == nullptr) {
    return absl::InvalidArgumentError("generator spec: no schema");
  }
  if (spec.n_records < 1) {
    return absl::InvalidArgumentError("generator spec: n_records must be >= 1");
  }
  const Schema& schema = *spec.schema;
  for (const auto& [name, m] : spec.marginals) {
    if (!schema.IndexOf(name).has_value()) {
      return SpecError(name, "not a schema attribute");
    }
  }
  for (const AttributeSchema& attr : schema.attributes()) {
    auto it = spec.marginals.find(attr.name);
    if (it == spec.marginals.end()) return SpecError(attr.name, "no marginal");
    SDC_RETURN_IF_ERROR(ValidateMarginal(it->second, attr, spec));
  }
  auto plain_numeric = [&](const std::string& name) {
    auto it = spec.marginals.find(name);
    return it != spec.marginals.end() && IsNumericType(it->second.type) &&
           it->second.type != Type::kDifference;
  };
  absl::flat_hash_set<std::string> paired;
  for (const auto& [lower, upper] : spec.ordered_pairs) {
    if (!plain_numeric(lower) || !plain_numeric(upper) || lower == upper) {
      return SpecError(lower, absl::StrCat("ordered pair with '", upper,
                                           "' needs two distinct sampled "
                                           "numeric attributes"));
    }
    if (!paired.insert(lower).second || !paired.insert(upper).second) {
      return SpecError(lower, "attribute appears in more than one ordered pair");
    }
  }
  absl::flat_hash_set<std::string> reordered;
  for (const RankCorrelation& c : spec.correlations) {
    if (!plain_numeric(c.a) || !plain_numeric(c.b) || c.a == c.b) {
      return SpecError(c.a, absl::StrCat("correlation with '", c.b,
                                         "' needs two distinct sampled "
                                         "numeric attributes"));
    }
    if (!(c.rho >= -1 && c.rho <= 1)) {
      return SpecError(c.a, "correlation target outside [-1, 1]");
    }
    if (paired.contains(c.a) || paired.contains(c.b)) {
      return SpecError(c.a, "correlated attributes cannot be ordered pairs");
    }
    if (!reordered.insert(c.b).second) {
      return SpecError(c.b, "attribute is the target of two correlations");
    }
  }
  for (const RankCorrelation& c : spec.correlations) {
    if (reordered.contains(c.a)) {
      return SpecError(c.a, "correlation chains are not supported");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> GenerateSynthetic(const GeneratorSpec& spec) {
  SDC_RETURN_IF_ERROR(ValidateGeneratorSpec(spec));
  const Schema& schema = *spec.schema;
  const size_t n = spec.n_records;
  const size_t width = schema.size();
  std::mt19937_64 rng(spec.seed);

  absl::flat_hash_map<std::string, std::string> upper_of;
  absl::flat_hash_set<std::string> uppers;
  for (const auto& [lower, upper] : spec.ordered_pairs) {
    upper_of[lower] = upper;
    uppers.insert(upper);
  }

  std::vector<std::vector<double>> numeric(width);
  std::vector<std::vector<CellValue>> columns(width);
  for (size_t a = 0; a < width; ++a) {
    const AttributeSchema& attr = schema.attribute(a);
    const Marginal& m = spec.marginals.at(attr.name);
    if (m.type == Type::kDifference || uppers.contains(attr.name)) continue;
    if (attr.is_numeric()) {
      NumericSampler draw(m, attr);
      std::vector<double>& col = numeric[a];
      col.resize(n);
      auto pair = upper_of.find(attr.name);
      if (pair == upper_of.end()) {
        for (double& v : col) v = draw(rng);
        continue;
      }
      size_t b = *schema.IndexOf(pair->second);
      NumericSampler draw_upper(spec.marginals.at(pair->second),
                                schema.attribute(b));
      std::vector<double>& upper = numeric[b];
      upper.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int attempt = 0;
        do {
          if (++attempt > kMaxOrderedAttempts) {
            return SpecError(attr.name,
                             absl::StrCat("could not draw a value <= '",
                                          pair->second, "'"));
          }
          col[i] = draw(rng);
          upper[i] = draw_upper(rng);
        } while (col[i] > upper[i]);
      }
      continue;
    }
    std::vector<CellValue>& col = columns[a];
    col.reserve(n);
    if (m.type == Type::kSequence) {
      for (size_t i = 0; i < n; ++i) {
        std::string digits = absl::StrCat(i + 1);
        if (digits.size() < static_cast<size_t>(m.width)) {
          digits.insert(0, m.width - digits.size(), '0');
        }
        col.push_back(CellValue::Category(absl::StrCat(m.prefix, digits)));
      }
      continue;
    }
    std::vector<std::string> values;
    std::vector<double> weights;
    if (m.type == Type::kTable) {
      for (const auto& [value, p] : m.table) {
        values.push_back(value);
        weights.push_back(p);
      }
    } else {
      values = attr.domain;
      weights = ZipfWeights(m.s, values.size());
    }
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    for (size_t i = 0; i < n; ++i) {
      col.push_back(CellValue::Category(values[pick(rng)]));
    }
  }
  for (const RankCorrelation& c : spec.correlations) {
    RankReorder(numeric[*schema.IndexOf(c.a)], numeric[*schema.IndexOf(c.b)],
                c.rho, rng);
  }
  for (size_t a = 0; a < width; ++a) {
    const Marginal& m = spec.marginals.at(schema.attribute(a).name);
    if (m.type != Type::kDifference) continue;
    const std::vector<double>& x = numeric[*schema.IndexOf(m.minuend)];
    const std::vector<double>& y = numeric[*schema.IndexOf(m.subtrahend)];
    numeric[a].resize(n);
    for (size_t i = 0; i < n; ++i) numeric[a][i] = x[i] - y[i];
  }

  std::vector<std::vector<CellValue>> rows(n);
  for (size_t i = 0; i < n; ++i) {
    rows[i].reserve(width);
    for (size_t a = 0; a < width; ++a) {
      if (schema.attribute(a).is_numeric()) {
        rows[i].push_back(CellValue::Number(numeric[a][i]));
      } else {
        rows[i].push_back(std::move(columns[a][i]));
      }
    }
  }
  Provenance provenance;
  provenance.seed = spec.seed;
  absl::StatusOr<Dataset> ds =
      Dataset::Create(spec.schema, std::move(rows), provenance);
  if (!ds.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("generator produced an invalid value: ",
                     ds.status().message()));
  }
  return ds;
}

}  // namespace sdc
