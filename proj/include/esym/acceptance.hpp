#pragma once

#include <iosfwd>

#include <cstdint>

namespace esym::acceptance {

// Runs the full acceptance suite, printing one PASS/FAIL line per criterion
// and a final summary line. Output is byte-stable for a fixed seed (the last
// criterion re-runs the suite and compares the transcripts). Returns true iff
// every criterion passed.
bool run_all(std::uint64_t seed, std::ostream& out);

} // namespace esym::acceptance
