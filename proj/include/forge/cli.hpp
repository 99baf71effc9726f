#pragma once

#include "forge/experiments.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace forge::cli {

/// Fixed column order of the `run` CSV.
const std::string& csv_header();
std::string csv_row(const AuditReport& r);

/// Audit rows, notes and stage errors for `run --ledger`.
std::string ledger_csv(const AuditReport& r);

/// Entry point shared by the binary and the tests. argv[0] is skipped.
/// Exit codes: 0 done, 1 malformed config or failed verification,
/// 2 degenerate instance.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forge::cli
