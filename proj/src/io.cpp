#include "localmap/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "localmap/error.hpp"

namespace localmap {

namespace {

constexpr char kMagic[4] = {'L', 'M', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Locale-independent numeric parse; the whole token must be consumed.
double parse_cell(const std::string& token, const std::string& path, std::size_t row,
                  std::size_t col) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(path + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                    ": not a number: \"" + token + "\"");
    }
    if (!std::isfinite(value)) {
        throw Error(path + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                    ": non-finite value");
    }
    return value;
}

int parse_label(double value, const std::string& path, std::size_t row, std::size_t col) {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9) {
        throw Error(path + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                    ": label is not an integer");
    }
    return static_cast<int>(rounded);
}

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t offset) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(in[offset + 3])) << 24);
}

}  // namespace

DataMatrix load_csv(const std::string& path, bool has_labels) {
    const std::string text = read_file(path);

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current;
    std::string token;
    for (char ch : text) {
        if (ch == '\r') continue;
        if (ch == ',') {
            current.push_back(token);
            token.clear();
        } else if (ch == '\n') {
            current.push_back(token);
            token.clear();
            rows.push_back(std::move(current));
            current.clear();
        } else {
            token += ch;
        }
    }
    if (!token.empty() || !current.empty()) {  // final line without trailing newline
        current.push_back(token);
        rows.push_back(std::move(current));
    }
    if (rows.empty()) throw Error(path + ": empty file");

    const std::size_t total_cols = rows[0].size();
    if (has_labels && total_cols < 2) {
        throw Error(path + ": need at least 2 columns when labels are expected");
    }
    const std::size_t value_cols = has_labels ? total_cols - 1 : total_cols;
    if (value_cols == 0) throw Error(path + ": no value columns");

    DataMatrix out;
    out.values = Matrix(rows.size(), value_cols);
    if (has_labels) out.labels.emplace();

    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != total_cols) {
            throw Error(path + ": row " + std::to_string(r + 1) + ": expected " +
                        std::to_string(total_cols) + " columns, got " +
                        std::to_string(rows[r].size()));
        }
        for (std::size_t c = 0; c < value_cols; ++c) {
            out.values(r, c) = parse_cell(rows[r][c], path, r + 1, c + 1);
        }
        if (has_labels) {
            const double raw = parse_cell(rows[r][total_cols - 1], path, r + 1, total_cols);
            out.labels->push_back(parse_label(raw, path, r + 1, total_cols));
        }
    }
    return out;
}

namespace {

// 9 significant digits, locale-independent.
void append_value(std::string& line, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    line.append(buf, res.ptr);
}

}  // namespace

void write_csv(const std::string& path, const DataMatrix& m) {
    std::string out;
    out.reserve(m.n() * (m.dim() * 12 + 8));
    for (std::size_t i = 0; i < m.n(); ++i) {
        std::string line;
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j > 0) line += ',';
            append_value(line, m.values(i, j));
        }
        if (m.labels.has_value()) {
            line += ',';
            line += std::to_string((*m.labels)[i]);
        }
        line += '\n';
        out += line;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(path + ": cannot open for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error(path + ": write failed");
}

void write_embedding_csv(const std::string& path, const Matrix& coords,
                         const std::vector<int>* labels) {
    DataMatrix wrapper;
    wrapper.values = coords;
    if (labels != nullptr) wrapper.labels = *labels;
    write_csv(path, wrapper);
}

DataMatrix load_binary(const std::string& path) {
    const std::string raw = read_file(path);
    if (raw.size() < 4 || std::memcmp(raw.data(), kMagic, 4) != 0) {
        throw Error(path + ": bad magic");
    }
    if (raw.size() < 20) throw Error(path + ": truncated header");
    const std::uint32_t version = get_u32(raw, 4);
    if (version != kVersion) {
        throw Error(path + ": unsupported version " + std::to_string(version));
    }
    const std::uint32_t n = get_u32(raw, 8);
    const std::uint32_t dim = get_u32(raw, 12);
    const bool has_labels = static_cast<unsigned char>(raw[16]) != 0;

    const std::size_t payload = static_cast<std::size_t>(n) * dim * 4;
    const std::size_t label_bytes = has_labels ? static_cast<std::size_t>(n) * 4 : 0;
    if (raw.size() < 20 + payload + label_bytes) {
        throw Error(path + ": truncated payload (have " + std::to_string(raw.size() - 20) +
                    " bytes, need " + std::to_string(payload + label_bytes) + ")");
    }
    if (raw.size() > 20 + payload + label_bytes) {
        throw Error(path + ": trailing bytes after payload");
    }

    DataMatrix out;
    out.values = Matrix(n, dim);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * dim; ++i) {
        const std::uint32_t bits = get_u32(raw, 20 + i * 4);
        float f;
        std::memcpy(&f, &bits, 4);
        if (!std::isfinite(f)) {
            throw Error(path + ": non-finite value at element " + std::to_string(i));
        }
        out.values.data()[i] = static_cast<double>(f);
    }
    if (has_labels) {
        out.labels.emplace();
        out.labels->reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t bits = get_u32(raw, 20 + payload + i * 4);
            out.labels->push_back(static_cast<std::int32_t>(bits));
        }
    }
    return out;
}

void write_binary(const std::string& path, const DataMatrix& m) {
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(m.n()));
    put_u32(out, static_cast<std::uint32_t>(m.dim()));
    out.push_back(m.labels.has_value() ? 1 : 0);
    out.append(3, '\0');
    for (double v : m.values.data()) {
        const float f = static_cast<float>(v);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        put_u32(out, bits);
    }
    if (m.labels.has_value()) {
        for (int label : *m.labels) {
            put_u32(out, static_cast<std::uint32_t>(static_cast<std::int32_t>(label)));
        }
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(path + ": cannot open for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error(path + ": write failed");
}

bool sniff_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char head[4] = {0, 0, 0, 0};
    in.read(head, 4);
    return in.gcount() == 4 && std::memcmp(head, kMagic, 4) == 0;
}

}  // namespace localmap
