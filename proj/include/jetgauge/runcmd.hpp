#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetgauge/report.hpp"

namespace jetgauge {

// Oracle overrides from the command line; unset fields keep the problem
// file's [oracle] block (or the defaults).
struct CommandOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> tol;
};

const std::vector<std::string>& command_names();

// Executes one verification command and fills a report for rendering.
// `argument` is a problem file path, except for "example" where it is the
// example number.  Raises input_error for unknown commands, unreadable or
// ill-formed files, and missing blocks.
Report run_command(const std::string& command, const std::string& argument,
                   const CommandOptions& opt = {});

}  // namespace jetgauge
