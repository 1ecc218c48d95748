// SPDX-License-Identifier: Apache-2.0
//
// File I/O and the command-line front end: Matrix Market parsing, complex
// literals, deterministic JSON/CSV serialization of reports, sweeps and
// campaign summaries. Serialization is hand-rolled so that identical inputs
// produce byte-identical files (17 significant digits, infinity as "inf").

#pragma once

#include <string>
#include <vector>

#include "hrr/bounds.hpp"
#include "hrr/studybench.hpp"
#include "hrr/types.hpp"

namespace hrr {

// Matrix Market reader: array and coordinate formats, real/complex/integer
// fields, general/symmetric/hermitian/skew-symmetric storage. Pattern files
// raise UnsupportedField; malformed input raises ParseError with the line.
Matrix read_matrix_market(const std::string& path);

// "a+bi" literals: "2", "-1.5e-3", "3i", "-i", "1+2i", "2.5-0.5i".
Complex parse_complex(const std::string& text);

// 17-significant-digit decimal; infinities become "inf"/"-inf".
std::string format_scalar(double v);

std::string report_to_json(const BoundReport& report);
std::string report_to_csv(const BoundReport& report);
std::string sweep_to_json(const std::vector<SweepRecord>& records);
std::string sweep_to_csv(const std::vector<SweepRecord>& records);
std::string campaign_to_json(const CampaignSummary& summary);
std::string campaign_to_csv(const CampaignSummary& summary);

// Writes text to path, or to stdout when path is empty. Throws IoError.
void write_output(const std::string& text, const std::string& path);

// Exit codes: 0 success, 2 configuration/parse error, 3 numeric failure.
int cli_main(int argc, char** argv);

}  // namespace hrr
