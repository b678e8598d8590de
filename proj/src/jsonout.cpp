#include "nvforge/jsonout.hpp"

#include <cmath>
#include <cstdio>

#include "nvforge/errors.hpp"

namespace nvforge {

Json Json::boolean(bool b) {
  Json j;
  j.type_ = Type::Bool;
  j.bool_ = b;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.type_ = Type::Number;
  j.num_ = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.type_ = Type::Number;
  j.is_int_ = true;
  j.int_ = v;
  j.num_ = static_cast<double>(v);
  return j;
}

Json Json::string(std::string s) {
  Json j;
  j.type_ = Type::String;
  j.str_ = std::move(s);
  return j;
}

Json Json::array() {
  Json j;
  j.type_ = Type::Array;
  return j;
}

Json Json::object() {
  Json j;
  j.type_ = Type::Object;
  return j;
}

Json& Json::set(const std::string& key, Json value) {
  if (type_ != Type::Object) fail(ErrorCode::Internal, "set on non-object json");
  obj_[key] = std::move(value);
  return *this;
}

Json& Json::push(Json value) {
  if (type_ != Type::Array) fail(ErrorCode::Internal, "push on non-array json");
  arr_.push_back(std::move(value));
  return *this;
}

bool Json::as_bool() const { return bool_; }
double Json::as_number() const { return num_; }
const std::string& Json::as_string() const { return str_; }
const std::vector<Json>& Json::items() const { return arr_; }
const std::map<std::string, Json>& Json::fields() const { return obj_; }

bool Json::has(const std::string& key) const {
  return type_ == Type::Object && obj_.count(key) > 0;
}

const Json& Json::at(const std::string& key) const {
  auto it = obj_.find(key);
  if (it == obj_.end()) fail(ErrorCode::Internal, "missing json key " + key);
  return it->second;
}

std::string Json::format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

static void escape_into(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void Json::write(std::string& out, bool pretty, int indent) const {
  auto pad = [&](int n) {
    if (pretty) out.append(static_cast<size_t>(n) * 2, ' ');
  };
  switch (type_) {
    case Type::Null:
      out += "null";
      break;
    case Type::Bool:
      out += bool_ ? "true" : "false";
      break;
    case Type::Number:
      if (is_int_) {
        out += std::to_string(int_);
      } else {
        out += format_number(num_);
      }
      break;
    case Type::String:
      escape_into(out, str_);
      break;
    case Type::Array: {
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += pretty ? "[\n" : "[";
      for (size_t i = 0; i < arr_.size(); ++i) {
        pad(indent + 1);
        arr_[i].write(out, pretty, indent + 1);
        if (i + 1 < arr_.size()) out += ",";
        if (pretty) out += "\n";
      }
      pad(indent);
      out += "]";
      break;
    }
    case Type::Object: {
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += pretty ? "{\n" : "{";
      size_t i = 0;
      for (const auto& [k, v] : obj_) {
        pad(indent + 1);
        escape_into(out, k);
        out += pretty ? ": " : ":";
        v.write(out, pretty, indent + 1);
        if (++i < obj_.size()) out += ",";
        if (pretty) out += "\n";
      }
      pad(indent);
      out += "}";
      break;
    }
  }
}

std::string Json::dump(bool pretty) const {
  std::string out;
  write(out, pretty, 0);
  if (pretty) out += "\n";
  return out;
}

}  // namespace nvforge
