#ifndef SWARMPLAN_FIELDS_HPP_
#define SWARMPLAN_FIELDS_HPP_

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "swarmplan/types.hpp"

namespace swarmplan {

/// Symbolic control fields. Raw: members translate, the rest rotate (letter
/// f). Translate: pose-preserving member translation (letter g). Rotate:
/// bilateral non-member rotation (letter h). Indices are 0-based in memory
/// and printed 1-based.
enum class FieldKind { kRaw, kTranslate, kRotate };

struct FieldRef {
  FieldKind kind = FieldKind::kRaw;
  int index = 0;

  bool operator==(const FieldRef& o) const { return kind == o.kind && index == o.index; }
};

/// Integer-weighted sum of fields, e.g. h1 + h3 - f4.
using LinearCombo = std::vector<std::pair<int, FieldRef>>;

/// Expression tree: a leaf holds a combo, a bracket node holds two subtrees.
/// Nodes are immutable; subtrees are shared on copy.
struct BracketExpr {
  LinearCombo combo;  // meaningful for leaves only
  std::shared_ptr<const BracketExpr> left, right;

  bool is_leaf() const { return left == nullptr; }

  static BracketExpr leaf(LinearCombo c) {
    BracketExpr e;
    e.combo = std::move(c);
    return e;
  }

  static BracketExpr leaf(FieldRef f) { return leaf(LinearCombo{{1, f}}); }

  static BracketExpr bracket(BracketExpr a, BracketExpr b) {
    BracketExpr e;
    e.left = std::make_shared<const BracketExpr>(std::move(a));
    e.right = std::make_shared<const BracketExpr>(std::move(b));
    return e;
  }

  /// Generator count. Within a leaf, the always-available all-rotate field is
  /// free; every other distinct field counts once (a bare leaf still counts 1).
  int order() const {
    if (!is_leaf()) return left->order() + right->order();
    std::vector<FieldRef> seen;
    for (const auto& [c, f] : combo) {
      if (c == 0 || f.kind == FieldKind::kRaw) continue;
      bool dup = false;
      for (const FieldRef& s : seen) dup = dup || s == f;
      if (!dup) seen.push_back(f);
    }
    return seen.empty() ? 1 : static_cast<int>(seen.size());
  }

  std::string str() const {
    if (!is_leaf()) return "[" + left->str() + "," + right->str() + "]";
    std::string out;
    bool first = true;
    for (const auto& [c, f] : combo) {
      if (c == 0) continue;
      if (c < 0)
        out += "-";
      else if (!first)
        out += "+";
      const int mag = c < 0 ? -c : c;
      if (mag != 1) out += std::to_string(mag);
      switch (f.kind) {
        case FieldKind::kRaw: out += "f"; break;
        case FieldKind::kTranslate: out += "g"; break;
        case FieldKind::kRotate: out += "h"; break;
      }
      out += std::to_string(f.index + 1);
      first = false;
    }
    return out.empty() ? "0" : out;
  }
};

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline BracketExpr parse_expr(const std::string& s, std::size_t& i);

inline LinearCombo parse_combo(const std::string& s, std::size_t& i) {
  LinearCombo combo;
  bool first = true;
  while (true) {
    skip_ws(s, i);
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip_ws(s, i);
    } else if (!first) {
      break;  // no joining operator: combo ends
    }
    int mag = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      mag = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        mag = mag * 10 + (s[i++] - '0');
    }
    if (i >= s.size()) throw ParseError("field expression ends inside a term: " + s);
    FieldKind kind;
    switch (s[i]) {
      case 'f': kind = FieldKind::kRaw; break;
      case 'g': kind = FieldKind::kTranslate; break;
      case 'h': kind = FieldKind::kRotate; break;
      default:
        throw ParseError(std::string("expected field letter f/g/h, got '") + s[i] + "' in " + s);
    }
    ++i;
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("field letter must carry a 1-based index: " + s);
    int idx = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      idx = idx * 10 + (s[i++] - '0');
    if (idx < 1) throw ParseError("field indices are 1-based: " + s);
    combo.push_back({sign * mag, FieldRef{kind, idx - 1}});
    first = false;
    skip_ws(s, i);
  }
  if (combo.empty()) throw ParseError("empty field combination in: " + s);
  return combo;
}

inline BracketExpr parse_expr(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i < s.size() && s[i] == '[') {
    ++i;
    BracketExpr a = parse_expr(s, i);
    skip_ws(s, i);
    if (i >= s.size() || s[i] != ',') throw ParseError("bracket needs two comma-separated arguments: " + s);
    ++i;
    BracketExpr b = parse_expr(s, i);
    skip_ws(s, i);
    if (i >= s.size() || s[i] != ']') throw ParseError("unterminated bracket in: " + s);
    ++i;
    return BracketExpr::bracket(std::move(a), std::move(b));
  }
  return BracketExpr::leaf(parse_combo(s, i));
}

}  // namespace detail

inline BracketExpr parse_bracket(const std::string& s) {
  std::size_t i = 0;
  BracketExpr e = detail::parse_expr(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError("trailing characters after expression: " + s);
  return e;
}

}  // namespace swarmplan

#endif  // SWARMPLAN_FIELDS_HPP_
