#pragma once

#include <string>
#include <vector>

#include "frax/params.hpp"
#include "frax/verify.hpp"

namespace frax {

/// 17 significant digits, shortest exponent form; non-finite values become null.
std::string format_double(double v);

/// Minimal ordered JSON emitter. Keys appear in call order and numbers use
/// format_double, so identical inputs give identical bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  void separate();
  void append_string(const std::string& v);

  std::string out_;
  std::vector<bool> first_;  // per open container: no element written yet
  bool after_key_ = false;
};

void write_params(JsonWriter& w, const Params& prm);
void write_report(JsonWriter& w, const Report& r);

/// One JSON object on a single line, no trailing newline.
std::string report_to_json(const Report& r);

/// JSON lines, one report per line.
std::string reports_to_jsonl(const std::vector<Report>& reports);

/// CSV summary with header name,ratio,status.
std::string reports_to_csv(const std::vector<Report>& reports);

}  // namespace frax
