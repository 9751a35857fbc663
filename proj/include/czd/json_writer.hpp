#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "czd/field_io.hpp"

namespace czd {

/// Minimal JSON emitter with fixed key order and 17-significant-digit floats,
/// so identical inputs produce byte-identical reports.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return punct("{"); }
  JsonWriter& end_object() { return close("}"); }
  JsonWriter& begin_array() { return punct("["); }
  JsonWriter& end_array() { return close("]"); }

  JsonWriter& key(const std::string& k) {
    comma();
    out_ << '"' << escape(k) << "\":";
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(format_double(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(long long v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::size_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(const std::string& v) { return raw('"' + escape(v) + '"'); }
  JsonWriter& value(const char* v) { return value(std::string(v)); }

  template <typename T>
  JsonWriter& number_array(const std::vector<T>& vs) {
    begin_array();
    for (const T& v : vs) value(v);
    return end_array();
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  }
  void comma() {
    if (need_comma_) out_ << ',';
    need_comma_ = false;
  }
  JsonWriter& punct(const char* p) {
    if (!pending_value_) comma();
    pending_value_ = false;
    out_ << p;
    need_comma_ = false;
    return *this;
  }
  JsonWriter& close(const char* p) {
    out_ << p;
    need_comma_ = true;
    return *this;
  }
  JsonWriter& raw(const std::string& s) {
    if (!pending_value_) comma();
    pending_value_ = false;
    out_ << s;
    need_comma_ = true;
    return *this;
  }

  std::ostringstream out_;
  bool need_comma_ = false;
  bool pending_value_ = false;
};

}  // namespace czd
