#pragma once

#include "jetgauge/oracle.hpp"
#include "jetgauge/report.hpp"

namespace jetgauge {

// Scripted reference computations with pinned expected values, numbered
// 1..example_count().  Each appends RESULT lines (computed fields, matrices,
// coefficient tables) and VERDICT lines to the report.  Verdicts noted
// "exact" hold after canonicalization; "numeric" ones hold under the seeded
// oracle.  Where a pinned reference display contained a transcription slip,
// the corrected value is asserted and the verdict note says what changed.
int example_count();
void run_example(int n, const OracleConfig& cfg, Report& out);

}  // namespace jetgauge
