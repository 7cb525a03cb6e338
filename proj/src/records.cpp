#include "nearmiss/records.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nearmiss::records {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Record from_hit(const std::string& curve, const nearcurve::ProjectiveHit& h) {
    Record r;
    r.kind = "hit";
    r.curve = curve;
    r.x = h.x.get_str();
    r.y = h.y.get_str();
    r.z = h.z.get_str();
    r.residual = h.residual;
    r.merit = fmt6(h.merit);
    r.extra = h.patch_index < 0 ? "tail" : "p" + std::to_string(h.patch_index);
    return r;
}

Record from_segment(const std::string& curve,
                    const nearcurve::SegmentReport& s) {
    Record r;
    r.kind = "segment";
    r.curve = curve;
    r.x = std::to_string(s.normal[0]);
    r.y = std::to_string(s.normal[1]);
    r.z = std::to_string(s.normal[2]);
    char buf[96];
    std::snprintf(buf, sizeof buf, "t=[%.9g,%.9g);p%ld", s.t0, s.t1,
                  s.patch_index);
    r.extra = buf;
    return r;
}

Record from_hall(const hall::HallHit& h) {
    Record r;
    r.kind = "hit";
    r.curve = "hall";
    r.x = h.x.get_str();
    r.y = h.y.get_str();
    r.residual = h.k.get_str();
    r.merit = fmt6(h.r);
    r.extra = "raw=" + h.raw_x.get_str() + ":" + h.raw_y.get_str() + ":" +
              h.raw_k.get_str();
    return r;
}

Format parse_format(const std::string& s) {
    if (s == "tsv") return Format::Tsv;
    if (s == "jsonl") return Format::Jsonl;
    throw std::invalid_argument("format must be tsv or jsonl");
}

RecordWriter::RecordWriter(const std::string& path, Format fmt, bool append)
    : fmt_(fmt) {
    if (path.empty()) {
        f_ = stdout;
        owned_ = false;
    } else {
        f_ = std::fopen(path.c_str(), append ? "ab" : "wb");
        if (!f_) throw std::runtime_error("cannot open output: " + path);
        owned_ = true;
    }
}

RecordWriter::~RecordWriter() {
    if (owned_) std::fclose(f_);
}

void RecordWriter::write(const Record& r) {
    if (fmt_ == Format::Tsv) {
        std::fprintf(f_, "%s\t%s\t%s\t%s\t%s\t%s\t%s\t%s\n", r.kind.c_str(),
                     r.curve.c_str(), r.x.c_str(), r.y.c_str(), r.z.c_str(),
                     r.residual.c_str(), r.merit.c_str(), r.extra.c_str());
    } else {
        // All field values are [-0-9a-zA-Z.:,()=\[\)/+e ]: no escaping needed.
        std::fprintf(f_,
                     "{\"kind\":\"%s\",\"curve\":\"%s\",\"x\":\"%s\","
                     "\"y\":\"%s\",\"z\":\"%s\",\"residual\":\"%s\","
                     "\"merit\":\"%s\",\"extra\":\"%s\"}\n",
                     r.kind.c_str(), r.curve.c_str(), r.x.c_str(),
                     r.y.c_str(), r.z.c_str(), r.residual.c_str(),
                     r.merit.c_str(), r.extra.c_str());
    }
}

void RecordWriter::flush() { std::fflush(f_); }

Checkpoint::Checkpoint(const std::string& path) : path_(path) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        auto sp = line.find(' ');
        if (sp != std::string::npos && line.substr(sp + 1) == "done")
            done_.push_back(line.substr(0, sp));
    }
}

bool Checkpoint::done(const std::string& id) const {
    for (const auto& d : done_)
        if (d == id) return true;
    return false;
}

void Checkpoint::mark(const std::string& id) {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << id << " done\n";
    out.flush();
    done_.push_back(id);
}

}  // namespace nearmiss::records
