#include "eds/numeric.hpp"
#include "eds/variable.hpp"
#include "eds/error.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace eds {

std::string rat_to_string(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Int rat_num(const Rat& r) { return numerator(r); }
Int rat_den(const Rat& r) { return denominator(r); }

Rat rat_pow(const Rat& base, unsigned e) {
  Rat acc{1};
  Rat b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

namespace {

struct VarRegistry {
  std::shared_mutex mutex;
  std::deque<std::string> names;  // stable references under growth
  std::unordered_map<std::string, VarId> ids;
};

VarRegistry& registry() {
  static VarRegistry reg;
  return reg;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

VarId var_intern(std::string_view name) {
  if (!valid_identifier(name))
    throw DomainError("invalid variable name '" + std::string(name) + "'");
  auto& reg = registry();
  std::string key(name);
  {
    std::shared_lock lock(reg.mutex);
    auto it = reg.ids.find(key);
    if (it != reg.ids.end()) return it->second;
  }
  std::unique_lock lock(reg.mutex);
  auto it = reg.ids.find(key);
  if (it != reg.ids.end()) return it->second;
  VarId id = static_cast<VarId>(reg.names.size());
  reg.names.push_back(key);
  reg.ids.emplace(std::move(key), id);
  return id;
}

const std::string& var_name(VarId v) {
  auto& reg = registry();
  std::shared_lock lock(reg.mutex);
  return reg.names.at(static_cast<std::size_t>(v));
}

bool var_less(VarId a, VarId b) {
  if (a == b) return false;
  return var_name(a) < var_name(b);
}

}  // namespace eds
