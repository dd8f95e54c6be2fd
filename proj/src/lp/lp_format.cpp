#include "tropbilevel/lp/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::lp {

BigMBound compute_big_m(const SelectorSystem& sys) {
  BigMBound out;
  const Rational range = sys.data_range() ? Rational(sys.data_range()->hi - sys.data_range()->lo + 1) : Rational(1);
  const std::size_t n = std::max<std::size_t>(sys.dimension(), 1);
  out.formula = range * Rational(static_cast<long>(2 * n + 2));
  out.required = 0;
  for (const auto& [key, cs] : sys.all_guarded()) {
    for (const auto& c : cs) {
      const Interval b = bounds(c.normalized(), sys.registry());
      out.required = std::max(out.required, b.hi);
      if (c.rel == Relation::Equal) out.required = std::max(out.required, Rational(-b.lo));
    }
  }
  out.used = std::max(out.formula, out.required);
  return out;
}

namespace {

MilpRow make_row(std::string name, const LinTerm& normalized, RowSense sense) {
  MilpRow row;
  row.name = std::move(name);
  for (const auto& [v, a] : normalized.coeffs) row.coeffs[v] = a;
  row.sense = sense;
  row.rhs = -normalized.constant;
  return row;
}

std::string number(const Rational& v) {
  if (!is_terminating_decimal(v))
    throw UnsupportedInstance("value " + v.get_str() + " has no exact decimal form for LP export");
  return tropbilevel::to_string(v);
}

void write_expr(std::ostream& os, const std::map<std::size_t, Rational>& coeffs, const std::vector<MilpVar>& vars,
                std::size_t fallback_var) {
  bool first = true;
  for (const auto& [v, a] : coeffs) {
    if (a == 0) continue;
    const bool neg = a < 0;
    os << (first ? (neg ? " -" : " ") : (neg ? " - " : " + "));
    const Rational mag = neg ? Rational(-a) : a;
    if (mag != 1) os << number(mag) << " ";
    os << vars[v].name;
    first = false;
  }
  if (first && !vars.empty()) os << " 0 " << vars[fallback_var].name;
}

const char* sense_token(RowSense s) {
  switch (s) {
    case RowSense::LessEq:
      return "<=";
    case RowSense::GreaterEq:
      return ">=";
    case RowSense::Equal:
      return "=";
  }
  return "?";
}

}  // namespace

MilpModel to_bigm_model(const SelectorSystem& sys) {
  MilpModel model;
  const auto& reg = sys.registry();
  for (const auto& v : reg.vars()) model.vars.push_back({v.name, v.lo, v.hi, false});

  const BigMBound m = compute_big_m(sys);
  model.big_m = m.used;

  std::vector<std::vector<std::size_t>> binaries(sys.selectors().size());
  for (std::size_t s = 0; s < sys.selectors().size(); ++s) {
    for (std::size_t k = 0; k < sys.selectors()[s].domain; ++k) {
      binaries[s].push_back(model.vars.size());
      model.vars.push_back({"w_" + sys.selectors()[s].name + "_" + std::to_string(k + 1), 0, 1, true});
    }
  }

  for (std::size_t i = 0; i < sys.fixed().size(); ++i) {
    const auto& c = sys.fixed()[i];
    model.rows.push_back(make_row("f" + std::to_string(i + 1), c.normalized(),
                                  c.rel == Relation::Equal ? RowSense::Equal : RowSense::LessEq));
  }
  for (std::size_t s = 0; s < sys.selectors().size(); ++s) {
    MilpRow sum;
    sum.name = "sel_" + sys.selectors()[s].name;
    for (std::size_t w : binaries[s]) sum.coeffs[w] = 1;
    sum.sense = RowSense::Equal;
    sum.rhs = 1;
    model.rows.push_back(std::move(sum));

    for (std::size_t k = 0; k < sys.selectors()[s].domain; ++k) {
      const auto& cs = sys.guarded(s, k);
      const std::size_t w = binaries[s][k];
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string base = "g_" + sys.selectors()[s].name + "_" + std::to_string(k + 1) + "_" + std::to_string(i + 1);
        const LinTerm d = cs[i].normalized();
        // d <= 0 becomes d + M w <= M
        MilpRow upper = make_row(base + (cs[i].rel == Relation::Equal ? "a" : ""), d, RowSense::LessEq);
        upper.coeffs[w] = m.used;
        upper.rhs += m.used;
        model.rows.push_back(std::move(upper));
        if (cs[i].rel == Relation::Equal) {
          // d >= 0 becomes d - M w >= -M
          MilpRow lower = make_row(base + "b", d, RowSense::GreaterEq);
          lower.coeffs[w] = -m.used;
          lower.rhs -= m.used;
          model.rows.push_back(std::move(lower));
        }
      }
    }
  }
  if (sys.infeasible()) {
    const std::size_t marker = model.vars.size();
    model.vars.push_back({"infeasible_marker", 0, 0, false});
    MilpRow row;
    row.name = "infeasible";
    row.coeffs[marker] = 1;
    row.sense = RowSense::GreaterEq;
    row.rhs = 1;
    model.rows.push_back(std::move(row));
  }

  model.sense = sys.objective().sense;
  if (sys.objective().var) model.objective[*sys.objective().var] = 1;

  const auto fmt = [](const Rational& v) { return tropbilevel::to_string(v); };
  model.header.push_back("tropbilevel big-M export");
  model.header.push_back("M = " + fmt(m.used));
  std::string formula = "M formula: (max datum - min datum + 1) * (2n + 2) = " + fmt(m.formula);
  if (sys.data_range())
    formula += "  [data range " + fmt(sys.data_range()->lo) + " .. " + fmt(sys.data_range()->hi) +
               ", n = " + std::to_string(std::max<std::size_t>(sys.dimension(), 1)) + "]";
  model.header.push_back(formula);
  model.header.push_back("largest guarded-row violation over the box: " + fmt(m.required) +
                         (m.formula < m.required ? "  (formula too small, raised to this)" : ""));
  model.header.push_back("M is a conservative bound derived from the variable boxes below, not a tight one");
  model.header.push_back("variable registry (name lo hi):");
  for (const auto& v : reg.vars()) model.header.push_back("  " + v.name + " " + fmt(v.lo) + " " + fmt(v.hi));
  model.header.push_back("selectors (name domain):");
  for (const auto& s : sys.selectors()) model.header.push_back("  " + s.name + " " + std::to_string(s.domain));
  return model;
}

void write_lp(const MilpModel& model, std::ostream& os) {
  for (const auto& line : model.header) os << "\\ " << line << "\n";
  os << (model.sense == Sense::Minimize ? "Minimize\n" : "Maximize\n");
  os << " obj:";
  if (!model.objective.empty()) write_expr(os, model.objective, model.vars, 0);
  os << "\nSubject To\n";
  for (const auto& row : model.rows) {
    os << " " << row.name << ":";
    write_expr(os, row.coeffs, model.vars, 0);
    os << " " << sense_token(row.sense) << " " << number(row.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : model.vars) {
    if (v.binary) continue;
    os << " " << number(v.lo) << " <= " << v.name << " <= " << number(v.hi) << "\n";
  }
  bool any_binary = std::any_of(model.vars.begin(), model.vars.end(), [](const MilpVar& v) { return v.binary; });
  if (any_binary) {
    os << "Binary\n";
    for (const auto& v : model.vars)
      if (v.binary) os << " " << v.name << "\n";
  }
  os << "End\n";
}

MilpModel export_bigm_milp(const SelectorSystem& sys, const std::filesystem::path& path) {
  MilpModel model = to_bigm_model(sys);
  std::ostringstream text;
  write_lp(model, text);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text.str();
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return model;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

enum class Section { None, Objective, Constraints, Bounds, Binary, General, End };

struct Token {
  enum Kind { Name, Number, Plus, Minus, Colon, Rel } kind;
  std::string text;
  int line;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.[]{}!\"#$%&()/,;?@`'|~").find(c) != std::string_view::npos;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::invalid_argument("LP parse error at line " + std::to_string(line) + ": " + what);
}

void tokenize(const std::string& text, int line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '+') {
      out.push_back({Token::Plus, "+", line});
      ++i;
    } else if (c == '-') {
      out.push_back({Token::Minus, "-", line});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::Colon, ":", line});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string rel(1, c);
      ++i;
      while (i < text.size() && (text[i] == '<' || text[i] == '>' || text[i] == '=')) rel.push_back(text[i++]);
      if (rel == "<" || rel == "=<") rel = "<=";
      if (rel == ">" || rel == "=>") rel = ">=";
      if (rel != "<=" && rel != ">=" && rel != "=") fail(line, "unknown relation '" + rel + "'");
      out.push_back({Token::Rel, rel, line});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      out.push_back({Token::Number, text.substr(i, j - i), line});
      i = j;
    } else if (name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      out.push_back({Token::Name, text.substr(i, j - i), line});
      i = j;
    } else {
      fail(line, std::string("unexpected character '") + c + "'");
    }
  }
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class Reader {
 public:
  MilpModel model;

  std::size_t var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const std::size_t id = model.vars.size();
    model.vars.push_back({name, 0, 0, false});
    has_upper_.push_back(false);
    index_.emplace(name, id);
    return id;
  }

  // [+|-] [number] name, repeated, until a relation or the end.
  std::map<std::size_t, Rational> expression(const std::vector<Token>& t, std::size_t& p) {
    std::map<std::size_t, Rational> coeffs;
    bool first = true;
    while (p < t.size() && t[p].kind != Token::Rel) {
      Rational sign = 1;
      bool had_sign = false;
      while (p < t.size() && (t[p].kind == Token::Plus || t[p].kind == Token::Minus)) {
        if (t[p].kind == Token::Minus) sign = -sign;
        had_sign = true;
        ++p;
      }
      if (!first && !had_sign) break;  // next row starts here
      if (p >= t.size()) fail(t.back().line, "dangling sign");
      Rational coef = 1;
      if (t[p].kind == Token::Number) {
        coef = parse_decimal(t[p].text);
        ++p;
      }
      if (p >= t.size() || t[p].kind != Token::Name) fail(t[p < t.size() ? p : t.size() - 1].line, "expected a variable name");
      coeffs[var(t[p].text)] += sign * coef;
      ++p;
      first = false;
    }
    return coeffs;
  }

  void objective(const std::vector<Token>& t) {
    std::size_t p = 0;
    if (t.size() >= 2 && t[0].kind == Token::Name && t[1].kind == Token::Colon) p = 2;
    model.objective = expression(t, p);
    std::erase_if(model.objective, [](const auto& kv) { return kv.second == 0; });
    if (p != t.size()) fail(t[p].line, "unexpected token in objective");
  }

  void constraints(const std::vector<Token>& t) {
    std::size_t p = 0;
    int counter = 0;
    while (p < t.size()) {
      MilpRow row;
      if (p + 1 < t.size() && t[p].kind == Token::Name && t[p + 1].kind == Token::Colon) {
        row.name = t[p].text;
        p += 2;
      } else {
        row.name = "r" + std::to_string(++counter);
      }
      const int line = t[p < t.size() ? p : t.size() - 1].line;
      row.coeffs = expression(t, p);
      if (p >= t.size() || t[p].kind != Token::Rel) fail(line, "expected a relation in row " + row.name);
      row.sense = t[p].text == "<=" ? RowSense::LessEq : t[p].text == ">=" ? RowSense::GreaterEq : RowSense::Equal;
      ++p;
      row.rhs = signed_number(t, p);
      model.rows.push_back(std::move(row));
    }
  }

  void bounds(const std::vector<Token>& t) {
    std::size_t p = 0;
    while (p < t.size()) {
      const int line = t[p].line;
      if (t[p].kind == Token::Name) {
        const std::size_t v = var(t[p].text);
        ++p;
        if (p < t.size() && t[p].kind == Token::Name && lower(t[p].text) == "free") fail(line, "free variables are not supported");
        if (p >= t.size() || t[p].kind != Token::Rel) fail(line, "expected a relation after " + model.vars[v].name);
        const std::string rel = t[p++].text;
        const Rational value = signed_number(t, p);
        if (rel == "<=" || rel == "=") set_upper(v, value);
        if (rel == ">=" || rel == "=") model.vars[v].lo = value;
      } else {
        const Rational value = signed_number(t, p);
        if (p >= t.size() || t[p].kind != Token::Rel) fail(line, "expected a relation in bound");
        const std::string rel = t[p++].text;
        if (p >= t.size() || t[p].kind != Token::Name) fail(line, "expected a variable in bound");
        const std::size_t v = var(t[p++].text);
        if (rel == "<=" || rel == "=") model.vars[v].lo = value;
        if (rel == ">=" || rel == "=") set_upper(v, value);
        if (p < t.size() && t[p].kind == Token::Rel) {
          const std::string rel2 = t[p++].text;
          const Rational value2 = signed_number(t, p);
          if (rel2 != "<=") fail(line, "expected '<=' in double bound");
          set_upper(v, value2);
        }
      }
    }
  }

  void binaries(const std::vector<Token>& t) {
    for (const auto& tok : t) {
      if (tok.kind != Token::Name) fail(tok.line, "expected a binary variable name");
      const std::size_t v = var(tok.text);
      model.vars[v].binary = true;
      model.vars[v].lo = 0;
      set_upper(v, 1);
    }
  }

  void finish() {
    for (std::size_t v = 0; v < model.vars.size(); ++v)
      if (!model.vars[v].binary && !has_upper_[v])
        throw std::invalid_argument("LP parse error: variable " + model.vars[v].name + " has no finite upper bound");
  }

 private:
  Rational signed_number(const std::vector<Token>& t, std::size_t& p) {
    Rational sign = 1;
    while (p < t.size() && (t[p].kind == Token::Plus || t[p].kind == Token::Minus)) {
      if (t[p].kind == Token::Minus) sign = -sign;
      ++p;
    }
    if (p >= t.size()) fail(t.empty() ? 0 : t.back().line, "expected a number");
    if (t[p].kind == Token::Name && (lower(t[p].text) == "inf" || lower(t[p].text) == "infinity"))
      fail(t[p].line, "infinite bounds are not supported");
    if (t[p].kind != Token::Number) fail(t[p].line, "expected a number, got '" + t[p].text + "'");
    Rational v = parse_decimal(t[p].text);
    ++p;
    return sign * v;
  }

  void set_upper(std::size_t v, const Rational& value) {
    model.vars[v].hi = value;
    has_upper_[v] = true;
  }

  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> has_upper_;
};

Section section_of(const std::string& trimmed_lower) {
  if (trimmed_lower == "minimize" || trimmed_lower == "minimise" || trimmed_lower == "minimum" || trimmed_lower == "min")
    return Section::Objective;
  if (trimmed_lower == "maximize" || trimmed_lower == "maximise" || trimmed_lower == "maximum" || trimmed_lower == "max")
    return Section::Objective;
  if (trimmed_lower == "subject to" || trimmed_lower == "such that" || trimmed_lower == "st" || trimmed_lower == "s.t.")
    return Section::Constraints;
  if (trimmed_lower == "bounds" || trimmed_lower == "bound") return Section::Bounds;
  if (trimmed_lower == "binary" || trimmed_lower == "binaries" || trimmed_lower == "bin") return Section::Binary;
  if (trimmed_lower == "general" || trimmed_lower == "generals" || trimmed_lower == "gen") return Section::General;
  if (trimmed_lower == "end") return Section::End;
  return Section::None;
}

}  // namespace

MilpModel read_lp(std::istream& is) {
  Reader reader;
  std::vector<Token> tokens[7];
  Section current = Section::None;
  bool saw_objective = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    const std::string low = lower(trimmed);
    if (Section s = section_of(low); s != Section::None) {
      if (s == Section::Objective) {
        reader.model.sense = low.starts_with("min") ? Sense::Minimize : Sense::Maximize;
        saw_objective = true;
      }
      if (s == Section::General) fail(lineno, "general integer variables are not supported");
      current = s;
      continue;
    }
    if (current == Section::None) fail(lineno, "content before the objective section");
    if (current == Section::End) fail(lineno, "content after End");
    tokenize(trimmed, lineno, tokens[static_cast<int>(current)]);
  }
  if (!saw_objective) throw std::invalid_argument("LP parse error: missing Minimize/Maximize section");
  if (current != Section::End) throw std::invalid_argument("LP parse error: missing End");

  // Bounds first so continuous variables keep their written order.
  reader.bounds(tokens[static_cast<int>(Section::Bounds)]);
  reader.binaries(tokens[static_cast<int>(Section::Binary)]);
  reader.objective(tokens[static_cast<int>(Section::Objective)]);
  reader.constraints(tokens[static_cast<int>(Section::Constraints)]);
  reader.finish();
  return std::move(reader.model);
}

// ---------------------------------------------------------------------------
// Back to a selector system

SelectorSystem selector_system_from_milp(const MilpModel& model) {
  SelectorSystem sys;
  std::vector<std::size_t> reg_id(model.vars.size(), SIZE_MAX);
  for (std::size_t v = 0; v < model.vars.size(); ++v)
    if (!model.vars[v].binary) reg_id[v] = sys.add_var(model.vars[v].name, model.vars[v].lo, model.vars[v].hi);

  // Sum-to-one rows over binaries define the selectors.
  std::vector<std::pair<std::size_t, std::size_t>> slot(model.vars.size(), {SIZE_MAX, 0});  // (selector, index)
  std::vector<bool> is_group_row(model.rows.size(), false);
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const auto& row = model.rows[r];
    if (row.sense != RowSense::Equal || row.rhs != 1 || row.coeffs.empty()) continue;
    const bool one_hot = std::all_of(row.coeffs.begin(), row.coeffs.end(), [&](const auto& kv) {
      return model.vars[kv.first].binary && kv.second == 1 && slot[kv.first].first == SIZE_MAX;
    });
    if (!one_hot) continue;
    std::string name = row.name.starts_with("sel_") ? row.name.substr(4) : row.name;
    const std::size_t sel = sys.add_selector(name, row.coeffs.size());
    std::size_t k = 0;
    for (const auto& [v, a] : row.coeffs) slot[v] = {sel, k++};
    is_group_row[r] = true;
  }
  for (std::size_t v = 0; v < model.vars.size(); ++v)
    if (model.vars[v].binary && slot[v].first == SIZE_MAX)
      throw UnsupportedInstance("binary " + model.vars[v].name + " belongs to no sum-to-one row");

  auto to_constraints = [](const LinTerm& lhs, RowSense sense, const Rational& rhs) {
    std::vector<LinConstraint> out;
    const LinTerm r = LinTerm::constant_term(rhs);
    switch (sense) {
      case RowSense::LessEq:
        out.push_back(leq(lhs, r));
        break;
      case RowSense::GreaterEq:
        out.push_back(leq(r, lhs));
        break;
      case RowSense::Equal:
        out.push_back(eq(lhs, r));
        break;
    }
    return out;
  };

  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    if (is_group_row[r]) continue;
    const auto& row = model.rows[r];
    LinTerm continuous;
    std::optional<std::size_t> group;
    std::map<std::size_t, Rational> binary_coeffs;  // index within group -> coefficient
    for (const auto& [v, a] : row.coeffs) {
      if (!model.vars[v].binary) {
        continuous += LinTerm::var(reg_id[v], a);
        continue;
      }
      if (group && *group != slot[v].first)
        throw UnsupportedInstance("row " + row.name + " mixes binaries of different selectors");
      group = slot[v].first;
      binary_coeffs[slot[v].second] += a;
    }
    if (!group) {
      for (auto& c : to_constraints(continuous, row.sense, row.rhs)) sys.add_fixed(std::move(c));
      continue;
    }
    for (std::size_t k = 0; k < sys.selectors()[*group].domain; ++k) {
      LinTerm lhs = continuous;
      if (auto it = binary_coeffs.find(k); it != binary_coeffs.end()) lhs.constant += it->second;
      for (auto& c : to_constraints(lhs, row.sense, row.rhs)) sys.add_guarded(*group, k, std::move(c));
    }
  }

  if (model.objective.size() > 1 || (model.objective.size() == 1 && model.objective.begin()->second != 1))
    throw UnsupportedInstance("objective must be a single variable with coefficient 1");
  Objective obj{model.sense, std::nullopt};
  if (!model.objective.empty()) {
    const std::size_t v = model.objective.begin()->first;
    if (model.vars[v].binary) throw UnsupportedInstance("objective on a binary variable");
    obj.var = reg_id[v];
  }
  sys.set_objective(obj);
  return sys;
}

EnumerateResult solve_milp_by_enumeration(const MilpModel& model, const EnumerateOptions& options) {
  return enumerate_solve(selector_system_from_milp(model), options);
}

}  // namespace tropbilevel::lp
