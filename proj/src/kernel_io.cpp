#include "detequiv/kernel_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace detequiv {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

class LineReader {
public:
    explicit LineReader(std::string_view text) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            lines_.push_back(text.substr(pos, nl - pos));
            pos = nl + 1;
        }
        while (!lines_.empty() && split(lines_.back()).empty()) lines_.pop_back();
    }

    std::vector<Token> next(std::string_view what) {
        if (index_ >= lines_.size()) fail(index_ + 1, 1, "unexpected end of input, expected " + std::string(what));
        return split(lines_[index_++]);
    }

    std::size_t line_number() const { return index_; }
    bool done() const { return index_ >= lines_.size(); }

    [[noreturn]] static void fail(std::size_t line, std::size_t column, const std::string& msg,
                                  ErrorCode code = ErrorCode::ParseError) {
        throw Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t index_ = 0;
};

std::uint64_t parse_count(const Token& t, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
        LineReader::fail(line, t.column, "expected a non-negative integer, got '" + std::string(t.text) + "'");
    }
    return v;
}

FieldSpec parse_field_line(LineReader& in) {
    auto toks = in.next("field line");
    const auto line = in.line_number();
    if (toks.empty() || toks[0].text != "field") LineReader::fail(line, 1, "expected 'field rational' or 'field gf <p>'");
    try {
        if (toks.size() == 2 && toks[1].text == "rational") return FieldSpec::rationals();
        if (toks.size() == 3 && toks[1].text == "gf") return FieldSpec::prime(parse_count(toks[2], line));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        LineReader::fail(line, toks.size() > 2 ? toks[2].column : 1, e.detail(), e.code());
    }
    LineReader::fail(line, toks.size() > 1 ? toks[1].column : 1, "expected 'field rational' or 'field gf <p>'");
}

std::size_t parse_keyed_count(LineReader& in, std::string_view key) {
    auto toks = in.next(key);
    const auto line = in.line_number();
    if (toks.size() != 2 || toks[0].text != key) {
        LineReader::fail(line, 1, "expected '" + std::string(key) + " <value>'");
    }
    return parse_count(toks[1], line);
}

Scalar parse_entry(const Token& t, const FieldSpec& spec, std::size_t line) {
    try {
        return parse_scalar(t.text, spec);
    } catch (const Error& e) {
        LineReader::fail(line, t.column, e.detail(), e.code());
    }
}

std::string field_line(const FieldSpec& spec) {
    return spec.is_prime() ? "field gf " + std::to_string(spec.modulus()) + "\n" : "field rational\n";
}

}  // namespace

Kernel parse_kernel(std::string_view text) {
    LineReader in(text);
    const FieldSpec spec = parse_field_line(in);
    const std::size_t n = parse_keyed_count(in, "n");
    if (n == 0) LineReader::fail(in.line_number(), 3, "n must be at least 1");

    auto label_toks = in.next("labels");
    if (label_toks.size() != n) {
        LineReader::fail(in.line_number(), 1,
                         "expected " + std::to_string(n) + " labels, got " + std::to_string(label_toks.size()));
    }
    std::vector<std::string> labels;
    for (const auto& t : label_toks) labels.emplace_back(t.text);

    const std::string expected = "expected n^2 = " + std::to_string(n * n) + " entries (" + std::to_string(n) + " per row)";
    std::vector<Scalar> entries;
    entries.reserve(n * n);
    for (std::size_t row = 0; row < n; ++row) {
        if (in.done()) {
            LineReader::fail(in.line_number() + 1, 1, expected + ", got " + std::to_string(entries.size()));
        }
        auto toks = in.next("matrix row");
        const auto line = in.line_number();
        if (toks.size() != n) {
            LineReader::fail(line, toks.size() > n ? toks[n].column : 1,
                             expected + ", row " + std::to_string(row + 1) + " has " + std::to_string(toks.size()));
        }
        for (const auto& t : toks) entries.push_back(parse_entry(t, spec, line));
    }
    if (!in.done()) {
        auto extra = in.next("end of input");
        LineReader::fail(in.line_number(), extra.empty() ? 1 : extra[0].column, expected + ", found extra rows");
    }
    try {
        return Kernel(spec, std::move(labels), Matrix(n, std::move(entries)));
    } catch (const Error& e) {
        LineReader::fail(3, 1, e.detail(), e.code());
    }
}

std::string format_kernel(const Kernel& k) {
    std::string out = field_line(k.field());
    out += "n " + std::to_string(k.size()) + "\n";
    for (std::size_t i = 0; i < k.size(); ++i) {
        const auto& label = k.labels()[i];
        if (label.find_first_of(" \t\r\n") != std::string::npos) {
            throw Error(ErrorCode::ParseError, "label '" + label + "' contains whitespace");
        }
        out += (i ? " " : "") + label;
    }
    out += "\n";
    for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j = 0; j < k.size(); ++j) out += (j ? " " : "") + format_scalar(k(i, j));
        out += "\n";
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Kernel read_kernel(const std::filesystem::path& path) {
    const auto text = read_file(path);
    try {
        return parse_kernel(text);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

void write_kernel(const Kernel& k, const std::filesystem::path& path) { write_file_atomic(path, format_kernel(k)); }

std::string format_transformation(const Transformation& t, const FieldSpec& spec) {
    std::string out = field_line(spec);
    out += "n " + std::to_string(t.g.size()) + "\n";
    out += std::string("transpose ") + (t.transpose ? "true" : "false") + "\n";
    out += "base_index " + std::to_string(t.base_index) + "\n";
    out += "g";
    for (const auto& v : t.g) out += " " + format_scalar(v);
    out += "\n";
    return out;
}

Transformation parse_transformation(std::string_view text) {
    LineReader in(text);
    const FieldSpec spec = parse_field_line(in);
    const std::size_t n = parse_keyed_count(in, "n");
    Transformation t;
    auto toks = in.next("transpose");
    if (toks.size() != 2 || toks[0].text != "transpose" || (toks[1].text != "true" && toks[1].text != "false")) {
        LineReader::fail(in.line_number(), 1, "expected 'transpose true|false'");
    }
    t.transpose = toks[1].text == "true";
    t.base_index = parse_keyed_count(in, "base_index");
    toks = in.next("g");
    if (toks.empty() || toks[0].text != "g" || toks.size() != n + 1) {
        LineReader::fail(in.line_number(), 1, "expected 'g' followed by " + std::to_string(n) + " values");
    }
    for (std::size_t i = 1; i < toks.size(); ++i) t.g.push_back(parse_entry(toks[i], spec, in.line_number()));
    if (t.base_index >= n) LineReader::fail(4, 1, "base_index out of range");
    return t;
}

}  // namespace detequiv
