#ifndef SCG_TRACE_IO_HPP
#define SCG_TRACE_IO_HPP

#include <filesystem>
#include <fstream>
#include <string_view>
#include <vector>

#include "scg/solver.hpp"

namespace scg {

inline constexpr std::string_view kTraceHeader =
    "t,lambda,gamma,f_value,penalty,F_value,fw_gap,avg_fw_gap,rate_envelope,wall_nanos";

// Streaming CSV writer for iteration records. Values are written with
// round-trip precision; the stream is flushed every 1000 rows so long runs
// leave a usable prefix behind. Rows are byte-deterministic functions of the
// records, so equal runs produce equal files.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);

  void write(const IterationRecord& rec);
  void finish();
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::size_t rows_ = 0;
};

std::vector<IterationRecord> read_trace_csv(const std::filesystem::path& path);

// Round-trip double formatting shared by the CSV writer and the tests.
std::string format_double(double v);

}  // namespace scg

#endif  // SCG_TRACE_IO_HPP
