// Copyright 2026 The UMAB Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "umab/environment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "umab/errors.h"
#include "umab/rng.h"

namespace umab {

LossSequence::LossSequence(LossMatrix rows, std::string provenance)
    : rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (!rows_.allFinite()) throw DomainError("loss sequence has non-finite entries");
}

double LossSequence::linf() const {
  return rows_.size() == 0 ? 0.0 : rows_.cwiseAbs().maxCoeff();
}

double LossSequence::linf_negative() const {
  return rows_.size() == 0 ? 0.0 : (-rows_.array()).max(0.0).maxCoeff();
}

double LossSequence::min_loss() const { return rows_.size() == 0 ? 0.0 : rows_.minCoeff(); }
double LossSequence::max_loss() const { return rows_.size() == 0 ? 0.0 : rows_.maxCoeff(); }

LossSequence deceptive_sequence(Index horizon) {
  if (horizon < 150) {
    throw UsageError("deceptive sequence needs T >= 150, got " + std::to_string(horizon));
  }
  LossMatrix rows(horizon, 2);
  for (Index i = 0; i < horizon; ++i) {
    const Index t = i + 1;
    if (t < 100) {
      rows.row(i) << 0.0, -0.5;
    } else if (t < 150) {
      rows.row(i) << -10.0, 0.0;
    } else {
      rows.row(i) << -0.05, 0.0;
    }
  }
  return LossSequence(std::move(rows), "deceptive(T=" + std::to_string(horizon) + ")");
}

LossSequence stochastic_sequence(const std::vector<double>& means, double noise_scale,
                                 Index horizon, std::uint64_t seed) {
  if (!(noise_scale >= 0)) throw UsageError("noise scale must be >= 0");
  if (horizon < 1) throw UsageError("horizon must be >= 1");
  if (means.empty()) throw UsageError("stochastic sequence needs at least one arm");
  const Index n = Index(means.size());
  CounterRng rng(seed);
  LossMatrix rows(horizon, n);
  for (Index t = 0; t < horizon; ++t) {
    for (Index k = 0; k < n; ++k) {
      const double u = rng.uniform();
      rows(t, k) = means[k] + noise_scale * (2.0 * u - 1.0);
    }
  }
  std::ostringstream tag;
  tag.precision(17);
  tag << "stochastic(means=";
  for (Index k = 0; k < n; ++k) tag << (k ? ";" : "") << means[k];
  tag << ",noise=" << noise_scale << ",T=" << horizon << ",seed=" << seed << ")";
  return LossSequence(std::move(rows), tag.str());
}

LossSequence uniform_sequence(Index arms, Index horizon, double low, double high,
                              std::uint64_t seed) {
  if (arms < 1 || horizon < 1) throw UsageError("uniform sequence needs arms, T >= 1");
  if (!(high >= low)) throw UsageError("uniform sequence bounds are inverted");
  CounterRng rng(seed);
  LossMatrix rows(horizon, arms);
  for (Index t = 0; t < horizon; ++t) {
    for (Index k = 0; k < arms; ++k) rows(t, k) = low + (high - low) * rng.uniform();
  }
  std::ostringstream tag;
  tag.precision(17);
  tag << "uniform(n=" << arms << ",low=" << low << ",high=" << high << ",T=" << horizon
      << ",seed=" << seed << ")";
  return LossSequence(std::move(rows), tag.str());
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitComma(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// FNV-1a, used only as a provenance digest.
std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

LossSequence parse_csv_losses(std::istream& in, const std::string& source,
                              const CsvOptions& options) {
  if (options.repeat < 1) throw UsageError("repeat factor must be >= 1");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<std::vector<double>> values;
  while (std::getline(lines, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitComma(line);
    if (columns == 0) {
      columns = cells.size();
      continue;  // header
    }
    if (cells.size() != columns) {
      throw ParseError(source, line_no, 0,
                       "expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(cells.size()));
    }
    std::vector<double> row(columns);
    for (std::size_t k = 0; k < columns; ++k) {
      const std::string_view cell = cells[k];
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, row[k]);
      if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(row[k])) {
        throw ParseError(source, line_no, k + 1,
                         "non-numeric cell '" + std::string(cell) + "'");
      }
    }
    values.push_back(std::move(row));
  }
  if (columns == 0) throw ParseError(source, 0, 0, "missing header row");
  if (values.empty()) throw ParseError(source, 0, 0, "no data rows");
  if (options.transform == CsvTransform::kDiff && values.size() < 2) {
    throw ParseError(source, line_no, 0, "diff transform needs at least two data rows");
  }

  const Index n = Index(columns);
  const Index base_rows =
      options.transform == CsvTransform::kDiff ? Index(values.size()) - 1 : Index(values.size());
  LossMatrix base(base_rows, n);
  for (Index t = 0; t < base_rows; ++t) {
    for (Index k = 0; k < n; ++k) {
      switch (options.transform) {
        case CsvTransform::kRaw:
          base(t, k) = values[t][k];
          break;
        case CsvTransform::kNeg:
          base(t, k) = -values[t][k];
          break;
        case CsvTransform::kDiff:
          base(t, k) = values[t + 1][k] - values[t][k];
          break;
      }
    }
  }
  if (!options.share.empty()) {
    if (options.share.size() != 1 && Index(options.share.size()) != n) {
      throw UsageError("share multipliers: expected 1 or " + std::to_string(n) + " values");
    }
    for (Index k = 0; k < n; ++k) {
      base.col(k) *= options.share.size() == 1 ? options.share[0] : options.share[k];
    }
  }
  LossMatrix rows(base_rows * options.repeat, n);
  for (Index t = 0; t < base_rows; ++t) {
    for (int r = 0; r < options.repeat; ++r) rows.row(t * options.repeat + r) = base.row(t);
  }
  std::ostringstream tag;
  tag << "csv(" << source << ",fnv1a=" << std::hex << Fnv1a(content) << std::dec
      << ",transform=" << transform_name(options.transform) << ",repeat=" << options.repeat
      << ")";
  return LossSequence(std::move(rows), tag.str());
}

LossSequence load_csv_losses(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open loss file '" + path + "'");
  return parse_csv_losses(in, path, options);
}

LossSequence scale_sequence(const LossSequence& seq, double factor) {
  if (!(factor > 0) || !std::isfinite(factor)) {
    throw DomainError("scale factor must be positive, got " + std::to_string(factor));
  }
  std::ostringstream tag;
  tag.precision(17);
  tag << "scaled(" << seq.provenance() << ",c=" << factor << ")";
  return LossSequence(seq.rows() * factor, tag.str());
}

std::string transform_name(CsvTransform transform) {
  switch (transform) {
    case CsvTransform::kRaw:
      return "raw";
    case CsvTransform::kDiff:
      return "diff";
    case CsvTransform::kNeg:
      return "neg";
  }
  return "raw";
}

CsvTransform parse_transform(const std::string& name) {
  if (name == "raw") return CsvTransform::kRaw;
  if (name == "diff") return CsvTransform::kDiff;
  if (name == "neg") return CsvTransform::kNeg;
  throw UsageError("unknown transform '" + name + "' (expected raw, diff or neg)");
}

}  // namespace umab
