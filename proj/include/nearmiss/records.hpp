#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "nearmiss/hall.hpp"
#include "nearmiss/nearcurve.hpp"

namespace nearmiss::records {

// One output record; every field already formatted. TSV columns, in order:
// kind, curve, x, y, z, residual, merit, extra.
struct Record {
    std::string kind, curve, x, y, z, residual, merit, extra;
};

std::string fmt6(double v);  // 6 significant digits

Record from_hit(const std::string& curve, const nearcurve::ProjectiveHit& h);
Record from_segment(const std::string& curve,
                    const nearcurve::SegmentReport& s);
Record from_hall(const hall::HallHit& h);

enum class Format { Tsv, Jsonl };
Format parse_format(const std::string& s);

class RecordWriter {
  public:
    // path empty = stdout.
    RecordWriter(const std::string& path, Format fmt, bool append = false);
    ~RecordWriter();
    RecordWriter(const RecordWriter&) = delete;
    RecordWriter& operator=(const RecordWriter&) = delete;
    void write(const Record& r);
    void flush();

  private:
    FILE* f_;
    bool owned_;
    Format fmt_;
};

// Append-only checkpoint of completed chunk ids ("<id> done" lines).
class Checkpoint {
  public:
    explicit Checkpoint(const std::string& path);  // empty path = disabled
    bool enabled() const { return !path_.empty(); }
    bool done(const std::string& id) const;
    void mark(const std::string& id);

  private:
    std::string path_;
    std::vector<std::string> done_;
};

}  // namespace nearmiss::records
