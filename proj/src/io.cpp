#include "tachyon/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tachyon/errors.hpp"

namespace tgr::io {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_row(const std::vector<double>& values) {
    std::string row;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) row += ',';
        row += g17(values[i]);
    }
    return row;
}

std::string write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string text = header;
    text += '\n';
    for (const auto& r : rows) {
        text += csv_row(r);
        text += '\n';
    }
    if (!path.empty()) write_text(path, text);
    return text;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open output file: " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw numerical_error("failed writing output file: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::comma() {
    if (!first_stack_.empty()) {
        if (!first_stack_.back()) out_ += ',';
        first_stack_.back() = false;
    }
}

void JsonWriter::key_prefix(const std::string& key) {
    comma();
    if (!key.empty()) {
        out_ += '"';
        out_ += json_escape(key);
        out_ += "\":";
    }
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    key_prefix(key);
    out_ += '{';
    first_stack_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_stack_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    key_prefix(key);
    out_ += '[';
    first_stack_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_stack_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
    key_prefix(key);
    out_ += g17(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, long long v) {
    key_prefix(key);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int v) {
    key_prefix(key);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
    key_prefix(key);
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
    key_prefix(key);
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* v) {
    return field(key, std::string(v));
}

JsonWriter& JsonWriter::field_raw(const std::string& key, const std::string& raw) {
    key_prefix(key);
    out_ += raw;
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    comma();
    out_ += g17(v);
    return *this;
}

JsonWriter& JsonWriter::element(const std::string& v) {
    comma();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

} // namespace tgr::io
