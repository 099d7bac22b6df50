#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace elcr {

enum class Player : std::uint8_t { X = 0, Y = 1 };

inline constexpr Player other(Player p) { return p == Player::X ? Player::Y : Player::X; }
inline constexpr char player_char(Player p) { return p == Player::X ? 'x' : 'y'; }
inline constexpr Player kPlayers[] = {Player::X, Player::Y};

/// Interned identifier. Ids are process-wide and stable for the lifetime of
/// the process; comparison is by id, ordering by spelling.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::uint32_t id() const { return id_; }
  const std::string& str() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b);

 private:
  std::uint32_t id_ = 0;  // 0 is the empty symbol
};

/// A variable (x or y) or a constant symbol.
class Term {
 public:
  static Term var(Player p) { return Term(p); }
  static Term constant(Symbol c) { return Term(c); }
  static Term constant(std::string_view name) { return Term(Symbol(name)); }

  bool is_var() const { return symbol_.id() == 0; }
  bool is_const() const { return !is_var(); }
  Player player() const { return player_; }
  Symbol symbol() const { return symbol_; }
  std::string str() const { return is_var() ? std::string(1, player_char(player_)) : symbol_.str(); }

  friend bool operator==(const Term& a, const Term& b) {
    return a.symbol_ == b.symbol_ && (a.is_const() || a.player_ == b.player_);
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(Player p) : player_(p) {}
  explicit Term(Symbol c) : symbol_(c) {}

  Player player_ = Player::X;
  Symbol symbol_;
};

}  // namespace elcr
