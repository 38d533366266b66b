#pragma once

#include "arveson/config.hpp"
#include "arveson/deform.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace arveson {

ExperimentConfig parse_config(const std::string& text);
/// Normalized JSON form: every field present, complex entries as [re, im].
std::string emit_config(const ExperimentConfig& config);

/// Fixed column order of the report; metadata columns follow.
const std::vector<std::string>& report_columns();

std::string emit_csv(const DeformReport& report);
std::string emit_json(const DeformReport& report);
std::string emit(const DeformReport& report, const std::string& format);

DeformReport parse_report_csv(const std::string& text);
DeformReport parse_report_json(const std::string& text);

/// Entry point of the `arveson` tool; returns the process exit code
/// (0 success, 2 invalid input, 1 numerical failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arveson
