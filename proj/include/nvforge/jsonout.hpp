#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nvforge {

// Minimal JSON document model with deterministic serialization:
// object keys sorted lexicographically, numbers printed to 9 significant
// digits, no insignificant whitespace variation. Output is byte-identical
// across runs for identical inputs.
class Json {
 public:
  enum class Type { Null, Bool, Number, String, Array, Object };

  Json() : type_(Type::Null) {}
  static Json null() { return Json(); }
  static Json boolean(bool b);
  static Json number(double v);
  static Json integer(long long v);
  static Json string(std::string s);
  static Json array();
  static Json object();

  Type type() const { return type_; }

  // Object/array builders.
  Json& set(const std::string& key, Json value);  // object only
  Json& push(Json value);                         // array only

  // Accessors used by tests.
  bool as_bool() const;
  double as_number() const;
  const std::string& as_string() const;
  const std::vector<Json>& items() const;
  const std::map<std::string, Json>& fields() const;
  bool has(const std::string& key) const;
  const Json& at(const std::string& key) const;

  std::string dump(bool pretty = true) const;

  // Canonical number rendering: %.9g, also used for config files.
  static std::string format_number(double v);

 private:

  Type type_;
  bool bool_ = false;
  bool is_int_ = false;
  long long int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<Json> arr_;
  std::map<std::string, Json> obj_;

  void write(std::string& out, bool pretty, int indent) const;
};

}  // namespace nvforge
