#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strl/error.hpp"

namespace strl::stl {

/// Axis-aligned box in workspace units. Membership robustness is the signed
/// infinity-norm margin to the boundary.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  bool operator==(const Box&) const = default;
};

using RegionTable = std::map<std::string, Box>;

/// Discrete half-open time interval [lo, hi) with 0 <= lo < hi.
struct Interval {
  int lo = 0;
  int hi = 1;

  bool operator==(const Interval&) const = default;
};

enum class Comparison { less, greater };

class Formula;

namespace node {

struct True {
  bool operator==(const True&) const = default;
};

/// `axis < threshold` (robustness threshold - s[axis]) or
/// `axis > threshold` (robustness s[axis] - threshold).
struct Predicate {
  std::size_t axis = 0;
  Comparison cmp = Comparison::less;
  double threshold = 0.0;

  bool operator==(const Predicate&) const = default;
};

struct Region {
  std::string name;
  std::optional<Box> box;  // filled in by resolve()

  bool operator==(const Region&) const = default;
};

struct Not;
struct And;
struct Or;
struct Until;
struct Eventually;
struct Always;

}  // namespace node

/// Immutable STL formula. Copies share structure.
class Formula {
 public:
  using Node = std::variant<node::True, node::Predicate, node::Region, node::Not,
                            node::And, node::Or, node::Until, node::Eventually,
                            node::Always>;

  static Formula truth();
  static Formula predicate(std::size_t axis, Comparison cmp, double threshold);
  static Formula region(std::string name);
  static Formula resolved_region(std::string name, Box box);
  static Formula negation(Formula child);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula until(Interval iv, Formula lhs, Formula rhs);
  static Formula eventually(Interval iv, Formula child);
  static Formula always(Interval iv, Formula child);

  const Node& node() const;

  template <typename T>
  const T* as() const;

  bool operator==(const Formula& other) const;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

namespace node {

struct Not {
  Formula child;
  bool operator==(const Not&) const = default;
};
struct And {
  Formula lhs;
  Formula rhs;
  bool operator==(const And&) const = default;
};
struct Or {
  Formula lhs;
  Formula rhs;
  bool operator==(const Or&) const = default;
};
struct Until {
  Interval iv;
  Formula lhs;
  Formula rhs;
  bool operator==(const Until&) const = default;
};
struct Eventually {
  Interval iv;
  Formula child;
  bool operator==(const Eventually&) const = default;
};
struct Always {
  Interval iv;
  Formula child;
  bool operator==(const Always&) const = default;
};

}  // namespace node

inline const Formula::Node& Formula::node() const { return *node_; }

template <typename T>
const T* Formula::as() const {
  return std::get_if<T>(node_.get());
}

namespace detail {

inline Interval checked(Interval iv) {
  if (iv.lo < 0 || iv.hi < 0) {
    throw FormulaError("interval bounds must be nonnegative: [" + std::to_string(iv.lo) +
                       "," + std::to_string(iv.hi) + ")");
  }
  if (iv.lo >= iv.hi) {
    throw FormulaError("interval requires a < b: [" + std::to_string(iv.lo) + "," +
                       std::to_string(iv.hi) + ")");
  }
  return iv;
}

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

using detail::overloaded;

inline Formula Formula::truth() { return Formula(std::make_shared<const Node>(node::True{})); }

inline Formula Formula::predicate(std::size_t axis, Comparison cmp, double threshold) {
  return Formula(std::make_shared<const Node>(node::Predicate{axis, cmp, threshold}));
}

inline Formula Formula::region(std::string name) {
  return Formula(std::make_shared<const Node>(node::Region{std::move(name), std::nullopt}));
}

inline Formula Formula::resolved_region(std::string name, Box box) {
  if (box.lo.size() != box.hi.size()) {
    throw FormulaError("region '" + name + "' has mismatched bound dimensions");
  }
  return Formula(std::make_shared<const Node>(node::Region{std::move(name), std::move(box)}));
}

inline Formula Formula::negation(Formula child) {
  return Formula(std::make_shared<const Node>(node::Not{std::move(child)}));
}

inline Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::And{std::move(lhs), std::move(rhs)}));
}

inline Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(node::Or{std::move(lhs), std::move(rhs)}));
}

inline Formula Formula::until(Interval iv, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      node::Until{detail::checked(iv), std::move(lhs), std::move(rhs)}));
}

inline Formula Formula::eventually(Interval iv, Formula child) {
  return Formula(
      std::make_shared<const Node>(node::Eventually{detail::checked(iv), std::move(child)}));
}

inline Formula Formula::always(Interval iv, Formula child) {
  return Formula(
      std::make_shared<const Node>(node::Always{detail::checked(iv), std::move(child)}));
}

inline bool Formula::operator==(const Formula& other) const {
  return node_ == other.node_ || *node_ == *other.node_;
}

inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&(Formula a, Formula b) {
  return Formula::conjunction(std::move(a), std::move(b));
}
inline Formula operator|(Formula a, Formula b) {
  return Formula::disjunction(std::move(a), std::move(b));
}

/// Sample-count horizon: number of samples needed to decide the formula at a
/// single time point (one more than the deepest look-ahead index).
inline int horizon_length(const Formula& phi) {
  struct Lookahead {
    int operator()(const Formula& f) const { return std::visit(*this, f.node()); }
    int operator()(const node::True&) const { return 0; }
    int operator()(const node::Predicate&) const { return 0; }
    int operator()(const node::Region&) const { return 0; }
    int operator()(const node::Not& n) const { return (*this)(n.child); }
    int operator()(const node::And& n) const { return std::max((*this)(n.lhs), (*this)(n.rhs)); }
    int operator()(const node::Or& n) const { return std::max((*this)(n.lhs), (*this)(n.rhs)); }
    int operator()(const node::Until& n) const {
      return (n.iv.hi - 1) + std::max((*this)(n.lhs), (*this)(n.rhs));
    }
    int operator()(const node::Eventually& n) const { return (n.iv.hi - 1) + (*this)(n.child); }
    int operator()(const node::Always& n) const { return (n.iv.hi - 1) + (*this)(n.child); }
  };
  return Lookahead{}(phi) + 1;
}

/// Nesting depth; atoms have depth 0.
inline int depth(const Formula& phi) {
  return std::visit(overloaded{
                        [](const node::True&) { return 0; },
                        [](const node::Predicate&) { return 0; },
                        [](const node::Region&) { return 0; },
                        [](const node::Not& n) { return 1 + depth(n.child); },
                        [](const node::And& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
                        [](const node::Or& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
                        [](const node::Until& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
                        [](const node::Eventually& n) { return 1 + depth(n.child); },
                        [](const node::Always& n) { return 1 + depth(n.child); },
                    },
                    phi.node());
}

/// Returns a copy in which every region predicate carries its box.
inline Formula resolve(const Formula& phi, const RegionTable& regions) {
  return std::visit(
      overloaded{
          [&](const node::True&) { return phi; },
          [&](const node::Predicate&) { return phi; },
          [&](const node::Region& r) {
            auto it = regions.find(r.name);
            if (it == regions.end()) throw FormulaError("unknown region '" + r.name + "'");
            return Formula::resolved_region(r.name, it->second);
          },
          [&](const node::Not& n) { return Formula::negation(resolve(n.child, regions)); },
          [&](const node::And& n) {
            return Formula::conjunction(resolve(n.lhs, regions), resolve(n.rhs, regions));
          },
          [&](const node::Or& n) {
            return Formula::disjunction(resolve(n.lhs, regions), resolve(n.rhs, regions));
          },
          [&](const node::Until& n) {
            return Formula::until(n.iv, resolve(n.lhs, regions), resolve(n.rhs, regions));
          },
          [&](const node::Eventually& n) {
            return Formula::eventually(n.iv, resolve(n.child, regions));
          },
          [&](const node::Always& n) { return Formula::always(n.iv, resolve(n.child, regions)); },
      },
      phi.node());
}

inline const char* axis_name(std::size_t axis) {
  static constexpr const char* names[] = {"x", "y", "z"};
  return axis < 3 ? names[axis] : "?";
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shortbuf[40];
    std::snprintf(shortbuf, sizeof shortbuf, "%.*g", prec, v);
    if (std::strtod(shortbuf, nullptr) == v) return shortbuf;
  }
  return buf;
}

namespace detail {

inline std::string interval_text(Interval iv) {
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + ")";
}

}  // namespace detail

/// Canonical text. Binary nodes are always parenthesized, so the output
/// re-parses to an identical tree.
inline std::string to_string(const Formula& phi) {
  auto operand = [](const Formula& f) {
    auto s = to_string(f);
    if (f.as<node::Predicate>()) return "(" + s + ")";
    return s;
  };
  return std::visit(
      overloaded{
          [](const node::True&) -> std::string { return "true"; },
          [](const node::Predicate& p) -> std::string {
            return std::string(axis_name(p.axis)) + (p.cmp == Comparison::less ? " < " : " > ") +
                   format_number(p.threshold);
          },
          [](const node::Region& r) -> std::string { return "in(" + r.name + ")"; },
          [&](const node::Not& n) -> std::string { return "!" + operand(n.child); },
          [](const node::And& n) -> std::string {
            return "(" + to_string(n.lhs) + " & " + to_string(n.rhs) + ")";
          },
          [](const node::Or& n) -> std::string {
            return "(" + to_string(n.lhs) + " | " + to_string(n.rhs) + ")";
          },
          [](const node::Until& n) -> std::string {
            return "(" + to_string(n.lhs) + " U" + detail::interval_text(n.iv) + " " +
                   to_string(n.rhs) + ")";
          },
          [&](const node::Eventually& n) -> std::string {
            return "F" + detail::interval_text(n.iv) + " " + operand(n.child);
          },
          [&](const node::Always& n) -> std::string {
            return "G" + detail::interval_text(n.iv) + " " + operand(n.child);
          },
      },
      phi.node());
}

}  // namespace strl::stl
