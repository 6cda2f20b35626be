/*
 * Copyright 2026 The powerindex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Tabular report documents and their json / csv / aligned-table renderings.

#ifndef POWERINDEX_REPORT_H_
#define POWERINDEX_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "powerindex/bounds.h"
#include "powerindex/exact.h"
#include "powerindex/sampling.h"

namespace powerindex {

enum class OutputFormat { kJson, kCsv, kTable };

OutputFormat ParseOutputFormat(const std::string& name);

// Empty monostate renders as null / blank.
using Cell = std::variant<std::monostate, std::string, std::int64_t,
                          std::uint64_t, double, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Document {
  std::string kind;
  // Ordered scalar fields printed before the tables.
  std::vector<std::pair<std::string, Cell>> fields;
  std::vector<Table> tables;
  std::vector<std::string> warnings;
};

// Reals are rounded to `precision` decimals in every format (values >= 17
// keep full precision), so all formats carry the same numbers.
std::string Render(const Document& doc, OutputFormat format, int precision);

Document ExactDocument(const IndexReport& report);

Document ApproxDocument(const EstimateReport& estimate,
                        const std::vector<ConfidenceInterval>& intervals,
                        double epsilon);

Document BoundsDocument(const BoundsReport& report,
                        std::optional<int> player = std::nullopt);

Document ConjectureDocument(const ConjectureReport& report,
                            const ConjectureParams& params, std::uint64_t seed);

}  // namespace powerindex

#endif  // POWERINDEX_REPORT_H_
