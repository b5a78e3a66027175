#pragma once

#include <string>
#include <vector>

namespace tgr::io {

// 17-significant-digit decimal form; round-trips exactly at double precision.
std::string g17(double v);

// One CSV row from doubles, g17-serialized, comma-joined, no trailing comma.
std::string csv_row(const std::vector<double>& values);

// Write a CSV document: header line then one row per entry.  Returns the
// full text (also written to path when path is non-empty; "-" = stdout).
std::string write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// Minimal JSON writer with deterministic field order and g17 numerics.
class JsonWriter {
public:
    JsonWriter& begin_object(const std::string& key = "");
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key = "");
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, long long v);
    JsonWriter& field(const std::string& key, int v);
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& field(const std::string& key, const char* v);
    JsonWriter& field_raw(const std::string& key, const std::string& raw);
    JsonWriter& element(double v);
    JsonWriter& element(const std::string& v);
    std::string str() const { return out_; }

private:
    void comma();
    void key_prefix(const std::string& key);
    std::string out_;
    std::vector<bool> first_stack_;
};

std::string json_escape(const std::string& s);

} // namespace tgr::io
