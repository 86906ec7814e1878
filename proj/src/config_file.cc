//
// Copyright 2026 The DPCov Authors
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

#include "dpcov/config_file.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dpcov/matrix_io.h"
#include "dpcov/status_macros.h"

namespace dpcov {
namespace {

std::string NormalizeKey(absl::string_view key) {
  std::string out(absl::StripAsciiWhitespace(key));
  std::replace(out.begin(), out.end(), '-', '_');
  absl::AsciiStrToLower(&out);
  return out;
}

absl::string_view Unquote(absl::string_view v) {
  v = absl::StripAsciiWhitespace(v);
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

// Drops a trailing '#' comment that is not inside quotes.
absl::string_view StripComment(absl::string_view line) {
  char quote = 0;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quote != 0) {
      if (ch == quote) quote = 0;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
    } else if (ch == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::vector<absl::string_view> SplitList(absl::string_view value) {
  value = absl::StripAsciiWhitespace(value);
  if (!value.empty() && value.front() == '[') value.remove_prefix(1);
  if (!value.empty() && value.back() == ']') value.remove_suffix(1);
  std::vector<absl::string_view> items;
  for (absl::string_view item : absl::StrSplit(value, ',')) {
    item = Unquote(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

absl::StatusOr<int64_t> ParseInt(absl::string_view key, absl::string_view v) {
  int64_t out = 0;
  if (!absl::SimpleAtoi(Unquote(v), &out)) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' expects an integer, got '", v, "'"));
  }
  return out;
}

absl::StatusOr<double> ParseReal(absl::string_view key, absl::string_view v) {
  absl::StatusOr<double> out = ParseDouble(Unquote(v));
  if (!out.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' expects a number, got '", v, "'"));
  }
  return *out;
}

absl::StatusOr<bool> ParseBool(absl::string_view key, absl::string_view v) {
  const std::string s = absl::AsciiStrToLower(Unquote(v));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return absl::InvalidArgumentError(
      absl::StrCat("'", key, "' expects true or false, got '", v, "'"));
}

template <typename T, typename ParseFn>
absl::StatusOr<std::vector<T>> ParseList(absl::string_view key,
                                         absl::string_view v, ParseFn parse) {
  std::vector<T> out;
  for (absl::string_view item : SplitList(v)) {
    DPCOV_ASSIGN_OR_RETURN(auto parsed, parse(key, item));
    out.push_back(static_cast<T>(parsed));
  }
  if (out.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' needs at least one value"));
  }
  return out;
}

std::string JoinReals(const std::vector<double>& values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(FormatDouble(v));
  return absl::StrCat("[", absl::StrJoin(parts, ", "), "]");
}

template <typename T>
std::string JoinInts(const std::vector<T>& values) {
  return absl::StrCat("[", absl::StrJoin(values, ", "), "]");
}

}  // namespace

absl::StatusOr<ConfigEntries> ParseFlatConfig(absl::string_view text) {
  ConfigEntries entries;
  int line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(StripComment(line));
    if (line.empty()) continue;
    if (line.front() == '[' ) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": tables are not supported in the flat format"));
    }
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected 'key = value'"));
    }
    std::string key = NormalizeKey(line.substr(0, eq));
    absl::string_view value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": empty key or value"));
    }
    entries.emplace_back(std::move(key), std::string(Unquote(value)));
  }
  return entries;
}

absl::StatusOr<ConfigEntries> ReadFlatConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<ConfigEntries> entries = ParseFlatConfig(buffer.str());
  if (!entries.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", entries.status().message()));
  }
  return entries;
}

absl::Status SetConfigField(ExperimentConfig& cfg, absl::string_view raw_key,
                            absl::string_view value) {
  const std::string key = NormalizeKey(raw_key);
  if (key == "setting") {
    DPCOV_ASSIGN_OR_RETURN(cfg.setting, ParseSetting(Unquote(value)));
  } else if (key == "algorithm") {
    DPCOV_ASSIGN_OR_RETURN(cfg.algorithm, ParseAlgorithm(Unquote(value)));
  } else if (key == "p") {
    DPCOV_ASSIGN_OR_RETURN(cfg.p, ParseList<int>(key, value, ParseInt));
  } else if (key == "sr") {
    DPCOV_ASSIGN_OR_RETURN(cfg.sr, ParseList<double>(key, value, ParseReal));
  } else if (key == "epsilon") {
    DPCOV_ASSIGN_OR_RETURN(cfg.epsilon,
                           ParseList<double>(key, value, ParseReal));
  } else if (key == "delta" || key == "delta_rule") {
    const absl::string_view v = Unquote(value);
    if (v == "1/n" || v == "one-over-n" || v == "one_over_n") {
      cfg.delta_rule = DeltaRule{};
    } else {
      DPCOV_ASSIGN_OR_RETURN(const double d, ParseReal(key, v));
      cfg.delta_rule = DeltaRule{DeltaRule::Kind::kFixed, d};
    }
  } else if (key == "n_grid" || key == "n") {
    DPCOV_ASSIGN_OR_RETURN(cfg.n_grid,
                           ParseList<int64_t>(key, value, ParseInt));
  } else if (key == "trials") {
    DPCOV_ASSIGN_OR_RETURN(const int64_t t, ParseInt(key, value));
    cfg.trials = static_cast<int>(t);
  } else if (key == "gamma") {
    DPCOV_ASSIGN_OR_RETURN(cfg.gamma, ParseReal(key, value));
  } else if (key == "master_seed" || key == "seed") {
    uint64_t seed = 0;
    if (!absl::SimpleAtoi(Unquote(value), &seed)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "'", key, "' expects a nonnegative integer, got '", value, "'"));
    }
    cfg.master_seed = seed;
  } else if (key == "diagonal_policy") {
    DPCOV_ASSIGN_OR_RETURN(cfg.diagonal_policy,
                           ParseDiagonalPolicy(Unquote(value)));
  } else if (key == "clip_norm") {
    DPCOV_ASSIGN_OR_RETURN(cfg.clip_norm, ParseBool(key, value));
  } else if (key == "lambda") {
    DPCOV_ASSIGN_OR_RETURN(cfg.lambda, ParseReal(key, value));
  } else if (key == "c") {
    DPCOV_ASSIGN_OR_RETURN(cfg.c, ParseReal(key, value));
  } else if (key == "offdiag_min") {
    DPCOV_ASSIGN_OR_RETURN(cfg.base_range.min_magnitude, ParseReal(key, value));
  } else if (key == "offdiag_max") {
    DPCOV_ASSIGN_OR_RETURN(cfg.base_range.max_magnitude, ParseReal(key, value));
  } else if (key == "sensitivity_multiplier") {
    DPCOV_ASSIGN_OR_RETURN(cfg.sensitivity_multiplier, ParseReal(key, value));
  } else if (key == "sigma_override") {
    DPCOV_ASSIGN_OR_RETURN(cfg.sigma_override, ParseReal(key, value));
  } else if (key == "threshold_override") {
    DPCOV_ASSIGN_OR_RETURN(cfg.threshold_override, ParseReal(key, value));
  } else if (key == "workers") {
    DPCOV_ASSIGN_OR_RETURN(const int64_t w, ParseInt(key, value));
    cfg.workers = static_cast<int>(w);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown configuration key '", raw_key, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ResolveExperimentConfig(
    const ConfigEntries& file, const ConfigEntries& overrides) {
  Setting setting = Setting::kSparsitySweep;
  for (const ConfigEntries* entries : {&file, &overrides}) {
    for (const auto& [key, value] : *entries) {
      if (NormalizeKey(key) == "setting") {
        DPCOV_ASSIGN_OR_RETURN(setting, ParseSetting(Unquote(value)));
      }
    }
  }
  ExperimentConfig cfg = DefaultsFor(setting);
  for (const ConfigEntries* entries : {&file, &overrides}) {
    for (const auto& [key, value] : *entries) {
      DPCOV_RETURN_IF_ERROR(SetConfigField(cfg, key, value));
    }
  }
  return cfg;
}

std::string SerializeConfig(const ExperimentConfig& cfg) {
  std::string out;
  auto line = [&out](absl::string_view key, const std::string& value) {
    absl::StrAppend(&out, key, " = ", value, "\n");
  };
  auto quoted = [](absl::string_view v) { return absl::StrCat("\"", v, "\""); };
  line("setting", quoted(SettingName(cfg.setting)));
  line("algorithm", quoted(AlgorithmName(cfg.algorithm)));
  line("p", JoinInts(cfg.p));
  line("sr", JoinReals(cfg.sr));
  line("epsilon", JoinReals(cfg.epsilon));
  line("delta", cfg.delta_rule.kind == DeltaRule::Kind::kOneOverN
                    ? quoted("1/n")
                    : FormatDouble(cfg.delta_rule.value));
  line("n_grid", JoinInts(cfg.n_grid));
  line("trials", absl::StrCat(cfg.trials));
  line("gamma", FormatDouble(cfg.gamma));
  line("master_seed", absl::StrCat(cfg.master_seed));
  line("diagonal_policy", quoted(DiagonalPolicyName(cfg.diagonal_policy)));
  line("clip_norm", cfg.clip_norm ? "true" : "false");
  line("lambda", FormatDouble(cfg.lambda));
  line("c", FormatDouble(cfg.c));
  line("offdiag_min", FormatDouble(cfg.base_range.min_magnitude));
  line("offdiag_max", FormatDouble(cfg.base_range.max_magnitude));
  line("sensitivity_multiplier", FormatDouble(cfg.sensitivity_multiplier));
  if (cfg.sigma_override.has_value()) {
    line("sigma_override", FormatDouble(*cfg.sigma_override));
  }
  if (cfg.threshold_override.has_value()) {
    line("threshold_override", FormatDouble(*cfg.threshold_override));
  }
  return out;
}

}  // namespace dpcov
