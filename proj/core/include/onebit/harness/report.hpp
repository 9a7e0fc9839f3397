// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "onebit/harness/complexity.hpp"
#include "onebit/harness/experiment.hpp"

namespace onebit {

inline constexpr std::string_view kBerCsvHeader =
    "equalizer,eb_n0_db,bit_errors,bits,ber,mean_iters,multiplies";

void write_ber_csv(std::ostream& out, const std::vector<BerPoint>& points);

struct ComplexityRow {
  ComplexityInputs inputs;
  ComplexityReport report;
};

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows);

/// Hex SHA-1 of "blob <size>\0<content>", as git hashes file contents.
[[nodiscard]] std::string git_blob_hash(std::string_view content);

}  // namespace onebit
