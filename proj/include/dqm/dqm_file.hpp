#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dqm/matrix_core.hpp"

namespace dqm {

// DQM text format:
//
//   # optional comment lines
//   DQM <rows> <cols>
//   st.w st.x st.y st.z in.w in.x in.y in.z     (rows*cols lines, row-major)
//
// Reals are written in shortest round-trip form, so read(write(A)) == A bit for bit.

/// Shortest decimal string that parses back to exactly `v`.
std::string format_real(double v);

void write_dqm(std::ostream& os, const DQMatrix& a);
DQMatrix read_dqm(std::istream& is);

void save_dqm(const std::filesystem::path& path, const DQMatrix& a);
DQMatrix load_dqm(const std::filesystem::path& path);

}  // namespace dqm
