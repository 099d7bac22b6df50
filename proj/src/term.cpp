#include "elcr/term.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace elcr {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names{std::string()};
  std::unordered_map<std::string_view, std::uint32_t> ids{{std::string_view(), 0}};
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end()) {
      id_ = it->second;
      return;
    }
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end()) {
    id_ = it->second;
    return;
  }
  // deque never relocates elements, so the view key stays valid
  t.names.emplace_back(name);
  id_ = static_cast<std::uint32_t>(t.names.size() - 1);
  t.ids.emplace(std::string_view(t.names.back()), id_);
}

const std::string& Symbol::str() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names[id_];
}

std::strong_ordering operator<=>(Symbol a, Symbol b) {
  if (a.id_ == b.id_) return std::strong_ordering::equal;
  return a.str() <=> b.str();
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  // variables sort before constants, x before y
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_var()) return a.player_ <=> b.player_;
  return a.symbol_ <=> b.symbol_;
}

}  // namespace elcr
