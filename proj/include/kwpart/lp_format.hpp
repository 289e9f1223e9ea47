#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "kwpart/milp_model.hpp"

namespace kwpart {

namespace detail {

// LP-format identifiers may not contain square brackets.
inline std::string lp_name(const std::string& name) {
  std::string out = name;
  for (auto& ch : out) {
    if (ch == '[') ch = '(';
    if (ch == ']') ch = ')';
    if (ch == ' ' || ch == ':') ch = '_';
  }
  return out;
}

inline Integer denominator_lcm(const LinearExpr& expr, const Rational* rhs) {
  Integer scale = 1;
  for (const auto& [v, c] : expr) scale = lcm(scale, c.get_den());
  if (rhs != nullptr) scale = lcm(scale, rhs->get_den());
  return scale;
}

inline bool has_fraction(const LinearExpr& expr) {
  for (const auto& [v, c] : expr) {
    if (!is_integral(c)) return true;
  }
  return false;
}

inline void write_rational_comment(std::ostream& out, const std::string& label, const MilpModel& m,
                                   const LinearExpr& expr, const Rational* rhs) {
  out << "\\ " << label << " exact:";
  for (const auto& [v, c] : expr) out << ' ' << c.get_str() << '*' << lp_name(m.variables()[v].name);
  if (rhs != nullptr) out << " rhs " << rhs->get_str();
  out << '\n';
}

// Terms of `expr * scale`, broken every eight terms onto continuation lines.
inline void write_terms(std::ostream& out, const MilpModel& m, const LinearExpr& expr, const Integer& scale) {
  std::size_t written = 0;
  for (const auto& [v, c] : expr) {
    const Rational scaled = c * scale;
    const Integer coef = scaled.get_num();
    if (written > 0 && written % 8 == 0) out << "\n  ";
    if (written == 0) {
      if (coef < 0) out << "- ";
    } else {
      out << (coef < 0 ? " - " : " + ");
    }
    const Integer mag = abs(coef);
    if (mag != 1) out << mag.get_str() << ' ';
    out << lp_name(m.variables()[v].name);
    ++written;
  }
  if (written == 0) out << "0 " << (m.variables().empty() ? std::string("dummy") : lp_name(m.variables()[0].name));
}

}  // namespace detail

/// Writes m in the textual LP file format. Coefficients stay exact: a row whose
/// coefficients are fractional is multiplied through by the LCM of its
/// denominators, and the original p/q values are recorded in a comment.
inline void write_lp(std::ostream& out, const MilpModel& m) {
  out << "\\ Problem: " << m.name() << '\n';
  out << "\\ " << m.variables().size() << " variables, " << m.rows().size() << " rows\n";
  out << (m.sense() == Sense::Minimize ? "Minimize\n" : "Maximize\n");
  const Integer obj_scale = detail::denominator_lcm(m.objective(), nullptr);
  if (obj_scale != 1) {
    out << "\\ objective scaled by " << obj_scale.get_str() << '\n';
    detail::write_rational_comment(out, "objective", m, m.objective(), nullptr);
  }
  out << " obj: ";
  detail::write_terms(out, m, m.objective(), obj_scale);
  out << "\nSubject To\n";
  for (const auto& row : m.rows()) {
    const Integer scale = detail::denominator_lcm(row.coefficients, &row.rhs);
    if (scale != 1) {
      out << "\\ " << detail::lp_name(row.name) << " scaled by " << scale.get_str() << '\n';
      detail::write_rational_comment(out, detail::lp_name(row.name), m, row.coefficients, &row.rhs);
    }
    out << ' ' << detail::lp_name(row.name) << ": ";
    detail::write_terms(out, m, row.coefficients, scale);
    const Rational rhs = row.rhs * scale;
    out << ' ' << to_string(row.relation) << ' ' << rhs.get_num().get_str() << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : m.variables()) {
    const std::string name = detail::lp_name(v.name);
    if (v.is_free()) {
      out << ' ' << name << " free\n";
    } else if (v.is_nonnegative()) {
      continue;
    } else {
      out << ' ' << (v.lower ? v.lower->get_str() : std::string("-inf")) << " <= " << name;
      if (v.upper) out << " <= " << v.upper->get_str();
      out << '\n';
    }
  }
  bool any_integer = false;
  for (const auto& v : m.variables()) {
    if (!v.integer) continue;
    if (!any_integer) out << "General\n";
    any_integer = true;
    out << ' ' << detail::lp_name(v.name) << '\n';
  }
  out << "End\n";
}

inline std::string to_lp_string(const MilpModel& m) {
  std::ostringstream out;
  write_lp(out, m);
  return out.str();
}

}  // namespace kwpart
