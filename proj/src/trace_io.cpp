#include "scg/trace_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <string>

namespace scg {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw ValidationError("trace writer: cannot open '" + path.string() + "'");
  out_ << kTraceHeader << '\n';
}

void TraceWriter::write(const IterationRecord& rec) {
  char buf[400];
  std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%" PRId64 "\n",
                rec.t, rec.lambda, rec.gamma, rec.f_value, rec.penalty, rec.F_value, rec.fw_gap,
                rec.avg_fw_gap, rec.rate_envelope, static_cast<std::int64_t>(rec.wall_nanos));
  out_ << buf;
  if (++rows_ % 1000 == 0) out_.flush();
}

void TraceWriter::finish() {
  out_.flush();
  if (!out_) throw Error("trace writer: write failed");
}

std::vector<IterationRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("trace reader: cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trace reader: empty file");
  if (line != kTraceHeader) throw ValidationError("trace reader: unexpected header");

  std::vector<IterationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    IterationRecord rec;
    auto next = [&]() -> std::string {
      if (!std::getline(ss, field, ',')) throw ValidationError("trace reader: short row");
      return field;
    };
    rec.t = static_cast<std::size_t>(std::stoull(next()));
    rec.lambda = std::stod(next());
    rec.gamma = std::stod(next());
    rec.f_value = std::stod(next());
    rec.penalty = std::stod(next());
    rec.F_value = std::stod(next());
    rec.fw_gap = std::stod(next());
    rec.avg_fw_gap = std::stod(next());
    rec.rate_envelope = std::stod(next());
    rec.wall_nanos = std::stoll(next());
    out.push_back(rec);
  }
  return out;
}

}  // namespace scg
