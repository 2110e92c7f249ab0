#include "frax/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace frax {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separate();
  append_string(k);
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  append_string(v);
  return *this;
}

void JsonWriter::append_string(const std::string& v) {
  out_ += '"';
  for (unsigned char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\r': out_ += "\\r"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += static_cast<char>(c);
        }
    }
  }
  out_ += '"';
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

void write_params(JsonWriter& w, const Params& prm) {
  w.begin_object();
  w.key("n").value(prm.n);
  w.key("s").value(prm.s);
  w.key("beta").value(prm.beta);
  w.key("gamma").value(prm.gamma);
  w.key("p").value(prm.p);
  w.key("q").value(prm.q);
  w.key("q0").value(prm.q0);
  w.key("alpha").value(prm.alpha);
  w.end_object();
}

void write_report(JsonWriter& w, const Report& r) {
  w.begin_object();
  w.key("name").value(r.name);
  w.key("params");
  write_params(w, r.params);
  w.key("lhs").value(r.lhs);
  w.key("rhs").value(r.rhs);
  w.key("predicted_constant");
  if (r.predicted_constant) {
    w.value(*r.predicted_constant);
  } else {
    w.null();
  }
  w.key("ratio").value(r.ratio);
  w.key("tolerance").value(r.tolerance);
  w.key("status").value(status_name(r.status));
  w.key("values").begin_object();
  for (const auto& [k, v] : r.values) w.key(k).value(v);
  w.end_object();
  w.key("notes").begin_object();
  for (const auto& [k, v] : r.notes) w.key(k).value(v);
  w.end_object();
  w.end_object();
}

std::string report_to_json(const Report& r) {
  JsonWriter w;
  write_report(w, r);
  return w.str();
}

std::string reports_to_jsonl(const std::vector<Report>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += report_to_json(r);
    out += '\n';
  }
  return out;
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::string out = "name,ratio,status\n";
  for (const auto& r : reports) {
    std::string name = r.name;
    if (name.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      name = quoted + "\"";
    }
    out += name + "," + format_double(r.ratio) + "," + status_name(r.status) + "\n";
  }
  return out;
}

}  // namespace frax
