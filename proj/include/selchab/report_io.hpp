#pragma once

// JSON and text forms of Selmer inputs and verification reports.

#include <string>

#include "selchab/verifier.hpp"

namespace selchab {

/// Schema: {"mode", "generators", "u_override"?, "dimension"?, "exact"?, "provenance"}.
SelmerInput selmer_from_json(const std::string& text);
std::string selmer_to_json(const SelmerInput& s);
/// Throws InvalidInput (with the path) when the file is missing or malformed.
SelmerInput load_selmer_file(const std::string& path);

/// Accepts either a bare array of rows or {"u": rows, ...}; entries are
/// dyadic strings such as "-1/4" or integers.
DyadicMatrix u_matrix_from_json(const std::string& text);
DyadicMatrix load_u_file(const std::string& path);

std::string report_to_json(const VerificationReport& r, int indent = 2);
VerificationReport report_from_json(const std::string& text);
std::string report_to_text(const VerificationReport& r);

std::string lattice_summary_json(const LatticeSummary& s, int indent = 2);
std::string scan_summary_json(const ScanSummary& s, int indent = 2);

std::string read_text_file(const std::string& path);

}  // namespace selchab
