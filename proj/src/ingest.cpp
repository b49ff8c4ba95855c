#include "densekit/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace densekit {
namespace {

constexpr const char* kModule = "ingest";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& field, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(field, &pos);
        if (pos != field.size())
            fail("trailing characters in numeric field '" + field + "' on line " +
                 std::to_string(line_no));
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        fail("malformed numeric field '" + field + "' on line " + std::to_string(line_no));
    }
}

std::int64_t parse_int(const std::string& field, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(field, &pos);
        if (pos != field.size())
            fail("trailing characters in integer field '" + field + "' on line " +
                 std::to_string(line_no));
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        fail("malformed integer field '" + field + "' on line " + std::to_string(line_no));
    }
}

std::ifstream open_or_fail(const std::string& path, std::ios::openmode mode) {
    std::ifstream in(path, mode);
    if (!in)
        fail("cannot open " + path);
    return in;
}

std::uint32_t read_be32(std::istream& in, const char* what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        fail(std::string("truncated stream while reading ") + what);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

} // namespace

EmbeddingSet parse_embedding_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        fail("empty embedding file");
    auto header = split_fields(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "label")
        fail("malformed header: expected id,label,d0,...");
    const int m = static_cast<int>(header.size()) - 2;
    for (int k = 0; k < m; ++k)
        if (header[static_cast<std::size_t>(k) + 2] != "d" + std::to_string(k))
            fail("malformed header: expected column d" + std::to_string(k));

    std::vector<EmbeddedSample> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto fields = split_fields(line);
        if (fields.size() != header.size())
            fail("row arity mismatch on line " + std::to_string(line_no) + ": got " +
                 std::to_string(fields.size()) + " fields, expected " +
                 std::to_string(header.size()));
        EmbeddedSample s;
        s.id = parse_int(fields[0], line_no);
        std::int64_t label = parse_int(fields[1], line_no);
        if (label < 0)
            fail("negative label on line " + std::to_string(line_no));
        s.label = static_cast<int>(label);
        s.coords.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            double v = parse_double(fields[static_cast<std::size_t>(k) + 2], line_no);
            if (!std::isfinite(v))
                fail("non-finite coordinate on line " + std::to_string(line_no));
            s.coords.push_back(v);
        }
        samples.push_back(std::move(s));
    }
    return EmbeddingSet::create(m, std::move(samples), kModule);
}

EmbeddingSet parse_embedding_csv_file(const std::string& path) {
    auto in = open_or_fail(path, std::ios::in);
    return parse_embedding_csv(in);
}

std::string embedding_set_to_csv(const EmbeddingSet& set) {
    std::ostringstream out;
    out << "id,label";
    for (int k = 0; k < set.dims(); ++k)
        out << ",d" << k;
    out << '\n';
    char buf[64];
    for (const auto& s : set.samples()) {
        out << s.id << ',' << s.label;
        for (double c : s.coords) {
            std::snprintf(buf, sizeof(buf), "%.17g", c);
            out << ',' << buf;
        }
        out << '\n';
    }
    return out.str();
}

RawVectorSet parse_idx(std::istream& images, std::istream& labels) {
    const std::uint32_t image_magic = read_be32(images, "image magic");
    if (image_magic != kIdxImageMagic) {
        std::ostringstream msg;
        msg << "bad magic in image stream: 0x" << std::hex << image_magic;
        fail(msg.str());
    }
    const std::uint32_t count = read_be32(images, "image count");
    const std::uint32_t rows = read_be32(images, "image rows");
    const std::uint32_t cols = read_be32(images, "image cols");
    if (rows == 0 || cols == 0)
        fail("zero image dimensions");

    const std::uint32_t label_magic = read_be32(labels, "label magic");
    if (label_magic != kIdxLabelMagic) {
        std::ostringstream msg;
        msg << "bad magic in label stream: 0x" << std::hex << label_magic;
        fail(msg.str());
    }
    const std::uint32_t label_count = read_be32(labels, "label count");
    if (label_count != count)
        fail("count mismatch: " + std::to_string(count) + " images vs " +
             std::to_string(label_count) + " labels");

    RawVectorSet set;
    set.dim = static_cast<std::size_t>(rows) * cols;
    set.ids.reserve(count);
    set.labels.reserve(count);
    set.vectors.reserve(count);

    std::vector<unsigned char> pixel_buf(set.dim);
    for (std::uint32_t i = 0; i < count; ++i) {
        if (!images.read(reinterpret_cast<char*>(pixel_buf.data()),
                         static_cast<std::streamsize>(set.dim)))
            fail("truncated image stream at image " + std::to_string(i));
        char label_byte;
        if (!labels.read(&label_byte, 1))
            fail("truncated label stream at label " + std::to_string(i));
        set.ids.push_back(static_cast<std::int64_t>(i));
        set.labels.push_back(static_cast<int>(static_cast<unsigned char>(label_byte)));
        std::vector<double> v(set.dim);
        for (std::size_t k = 0; k < set.dim; ++k)
            v[k] = static_cast<double>(pixel_buf[k]) / 255.0;
        set.vectors.push_back(std::move(v));
    }
    return set;
}

RawVectorSet parse_idx_files(const std::string& image_path, const std::string& label_path) {
    auto images = open_or_fail(image_path, std::ios::binary);
    auto labels = open_or_fail(label_path, std::ios::binary);
    return parse_idx(images, labels);
}

void write_idx(const RawVectorSet& set, std::ostream& images, std::ostream& labels) {
    if (set.vectors.size() != set.labels.size() || set.vectors.size() != set.ids.size())
        fail("inconsistent raw vector set");
    // IDX images are 2-D grids; emit dim x 1 so any flat vector round-trips.
    write_be32(images, kIdxImageMagic);
    write_be32(images, static_cast<std::uint32_t>(set.vectors.size()));
    write_be32(images, static_cast<std::uint32_t>(set.dim));
    write_be32(images, 1);
    write_be32(labels, kIdxLabelMagic);
    write_be32(labels, static_cast<std::uint32_t>(set.labels.size()));
    for (std::size_t i = 0; i < set.vectors.size(); ++i) {
        if (set.vectors[i].size() != set.dim)
            fail("vector " + std::to_string(i) + " has wrong dimensionality");
        for (double v : set.vectors[i]) {
            const double scaled = std::round(v * 255.0);
            if (!(scaled >= 0.0 && scaled <= 255.0))
                fail("value outside [0,1] in vector " + std::to_string(i));
            const unsigned char byte = static_cast<unsigned char>(scaled);
            images.write(reinterpret_cast<const char*>(&byte), 1);
        }
        if (set.labels[i] < 0 || set.labels[i] > 255)
            fail("label outside byte range in vector " + std::to_string(i));
        const unsigned char lb = static_cast<unsigned char>(set.labels[i]);
        labels.write(reinterpret_cast<const char*>(&lb), 1);
    }
}

AccuracyTable parse_accuracy_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        fail("empty accuracy file");
    auto header = split_fields(line);
    if (header.size() != 2 || header[0] != "class" || header[1] != "accuracy")
        fail("malformed header: expected class,accuracy");

    AccuracyTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto fields = split_fields(line);
        if (fields.size() != 2)
            fail("row arity mismatch on line " + std::to_string(line_no));
        const std::int64_t cls = parse_int(fields[0], line_no);
        if (cls < 0)
            fail("negative class id on line " + std::to_string(line_no));
        std::string value = fields[1];
        bool percent = false;
        if (!value.empty() && value.back() == '%') {
            percent = true;
            value.pop_back();
        }
        double acc = parse_double(value, line_no);
        if (percent)
            acc /= 100.0;
        if (!(acc >= 0.0 && acc <= 1.0))
            fail("accuracy outside [0,1] on line " + std::to_string(line_no));
        if (!table.rows.emplace(static_cast<int>(cls), acc).second)
            fail("duplicate class row " + std::to_string(cls));
    }
    if (table.rows.empty())
        fail("accuracy table has no rows");
    return table;
}

AccuracyTable parse_accuracy_table_file(const std::string& path) {
    auto in = open_or_fail(path, std::ios::in);
    return parse_accuracy_table(in);
}

TrialTable parse_trials_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        fail("empty trials file");
    auto header = split_fields(line);
    if (header.size() != 4 || header[0] != "target" || header[1] != "mean" ||
        header[2] != "std_pop" || header[3] != "n_trials")
        fail("malformed header: expected target,mean,std_pop,n_trials");

    TrialTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto fields = split_fields(line);
        if (fields.size() != 4)
            fail("row arity mismatch on line " + std::to_string(line_no));
        TrialSummary s;
        s.mean = parse_double(fields[1], line_no);
        s.std_pop = parse_double(fields[2], line_no);
        s.n_trials = static_cast<int>(parse_int(fields[3], line_no));
        if (!(s.mean >= 0.0 && s.mean <= 1.0))
            fail("trial mean outside [0,1] on line " + std::to_string(line_no));
        if (s.std_pop < 0.0)
            fail("negative std on line " + std::to_string(line_no));
        if (s.n_trials < 1)
            fail("non-positive trial count on line " + std::to_string(line_no));
        if (fields[0] == "baseline") {
            if (table.baseline)
                fail("duplicate baseline row");
            table.baseline = s;
        } else {
            const double target = parse_double(fields[0], line_no);
            if (!table.by_target.emplace(target, s).second)
                fail("duplicate target row on line " + std::to_string(line_no));
        }
    }
    return table;
}

TrialTable parse_trials_csv_file(const std::string& path) {
    auto in = open_or_fail(path, std::ios::in);
    return parse_trials_csv(in);
}

TrialSummary parse_trial_summary(const std::string& text) {
    auto fields = split_fields(text);
    if (fields.size() != 3)
        fail("expected mean,std,n in '" + text + "'");
    TrialSummary s;
    s.mean = parse_double(fields[0], 0);
    s.std_pop = parse_double(fields[1], 0);
    s.n_trials = static_cast<int>(parse_int(fields[2], 0));
    if (!(s.mean >= 0.0 && s.mean <= 1.0))
        fail("trial mean outside [0,1]");
    if (s.std_pop < 0.0)
        fail("negative std");
    if (s.n_trials < 1)
        fail("non-positive trial count");
    return s;
}

} // namespace densekit
