#include "tropbilevel/instance_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "tropbilevel/errors.hpp"

namespace tropbilevel::io {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

// Start offset of every value in an already valid JSON text, keyed by its
// JSON pointer. nlohmann/json keeps no source positions for values.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {
    skip_ws();
    value("");
  }

  std::size_t offset(const std::string& pointer) const {
    auto it = where_.find(pointer);
    return it == where_.end() ? 0 : it->second;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~')
        out += "~0";
      else if (c == '/')
        out += "~1";
      else
        out += c;
    }
    return out;
  }

  void value(const std::string& pointer) {
    where_[pointer] = pos_;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (text_[pos_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(pointer + "/" + escape(key));
        skip_ws();
        if (text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (std::size_t i = 0; text_[pos_] != ']'; ++i) {
        value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ',' &&
             text_[pos_] != ']' && text_[pos_] != '}')
        ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> where_;
};

struct Context {
  std::string_view text;
  std::string source;
  std::optional<Locator> locator;

  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source, line, col, message);
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    fail_at(locator ? locator->offset(pointer) : 0, (pointer.empty() ? "document" : pointer) + ": " + message);
  }
};

TropScalar scalar_from(const json& j, const std::string& pointer, const Context& ctx) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    try {
      return TropScalar::parse(s);
    } catch (const std::invalid_argument&) {
      ctx.fail(pointer, "\"" + s + "\" is not a decimal number or -inf");
    }
  }
  if (j.is_number_integer()) return TropScalar(Rational(j.dump()));
  if (j.is_number_float()) ctx.fail(pointer, "write non-integer coordinates as decimal strings, e.g. \"-0.1\"");
  ctx.fail(pointer, "expected a decimal string");
}

TropVector vector_from(const json& j, const std::string& pointer, std::size_t dim, const Context& ctx) {
  if (!j.is_array()) ctx.fail(pointer, "expected a list of coordinates");
  if (j.size() != dim)
    ctx.fail(pointer, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(j.size()));
  std::vector<TropScalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_from(j[i], pointer + "/" + std::to_string(i), ctx));
  return TropVector(std::move(out));
}

const json& member(const json& obj, const char* key, const std::string& pointer, const Context& ctx) {
  if (!obj.is_object()) ctx.fail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) ctx.fail(pointer, std::string("missing key \"") + key + "\"");
  return *it;
}

TropPolytopeV polytope_from(const json& root, const char* key, std::size_t dim, const Context& ctx) {
  const std::string base = std::string("/") + key;
  const json& gens = member(member(root, key, "", ctx), "generators", base, ctx);
  const std::string gp = base + "/generators";
  if (!gens.is_array() || gens.empty()) ctx.fail(gp, "expected a nonempty list of generators");
  std::vector<TropVector> out;
  for (std::size_t i = 0; i < gens.size(); ++i) out.push_back(vector_from(gens[i], gp + "/" + std::to_string(i), dim, ctx));
  return TropPolytopeV(std::move(out));
}

}  // namespace

BilevelInstance parse_instance(std::string_view text, const std::string& source) {
  Context ctx{text, source, std::nullopt};
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
    ctx.fail_at(e.byte == 0 ? 0 : e.byte - 1, what);
  }
  ctx.locator.emplace(text);

  const json& dim_j = member(root, "dim", "", ctx);
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) ctx.fail("/dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());

  const json& var_j = member(root, "variant", "", ctx);
  std::optional<Variant> variant;
  if (var_j.is_string()) variant = parse_variant(var_j.get<std::string>());
  if (!variant) ctx.fail("/variant", "expected one of min-min, max-min, min-max, max-max");

  auto tp1 = polytope_from(root, "tp1", dim, ctx);
  auto tp2 = polytope_from(root, "tp2", dim, ctx);
  auto a = vector_from(member(root, "a", "", ctx), "/a", dim, ctx);
  auto b = vector_from(member(root, "b", "", ctx), "/b", dim, ctx);
  return BilevelInstance(std::move(tp1), std::move(tp2), std::move(a), std::move(b), *variant);
}

BilevelInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), path.string());
}

ordered_json vector_to_json(const TropVector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& e : v) out.push_back(e.str());
  return out;
}

ordered_json instance_to_json(const BilevelInstance& inst) {
  auto gens = [](const TropPolytopeV& p) {
    ordered_json g = ordered_json::array();
    for (const auto& v : p.generators()) g.push_back(vector_to_json(v));
    return ordered_json{{"generators", g}};
  };
  ordered_json out;
  out["dim"] = inst.dim();
  out["variant"] = to_string(inst.variant);
  out["tp1"] = gens(inst.tp1);
  out["tp2"] = gens(inst.tp2);
  out["a"] = vector_to_json(inst.a);
  out["b"] = vector_to_json(inst.b);
  return out;
}

TropVector parse_vector(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<TropScalar> out;
  for (std::string tok; in >> tok;) out.push_back(TropScalar::parse(tok));
  if (out.empty()) throw std::invalid_argument("empty vector \"" + std::string(text) + "\"");
  return TropVector(std::move(out));
}

namespace {

ordered_json index_set(const std::vector<std::size_t>& s) {
  ordered_json out = ordered_json::array();
  for (auto i : s) out.push_back(i + 1);
  return out;
}

std::string index_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

}  // namespace

ordered_json certificate_to_json(const Certificate& c) {
  return std::visit(
      [](const auto& w) -> ordered_json {
        using W = std::decay_t<decltype(w)>;
        ordered_json out;
        if constexpr (std::is_same_v<W, IterationTrace>) {
          out["kind"] = "iteration-trace";
          out["iterations"] = w.iterations;
          ordered_json cuts = ordered_json::array();
          for (const auto& z : w.cuts) cuts.push_back(vector_to_json(z));
          out["cuts"] = cuts;
        } else if constexpr (std::is_same_v<W, MinimalPointWitness>) {
          out["kind"] = "minimal-point";
          out["y_candidate"] = vector_to_json(w.y_candidate);
          out["candidates"] = w.candidates;
        } else if constexpr (std::is_same_v<W, ClosedFormWitness>) {
          out["kind"] = "closed-form";
          out["x_max"] = vector_to_json(w.x_max);
          out["y_max"] = vector_to_json(w.y_max);
        } else {
          out["kind"] = "partition";
          out["I"] = index_set(w.I);
          out["J"] = index_set(w.J);
          out["pieces_total"] = w.pieces_total;
          out["pieces_feasible"] = w.pieces_feasible;
          out["rejected"] = w.rejected;
        }
        return out;
      },
      c);
}

ordered_json solution_to_json(const BilevelInstance& inst, const BilevelSolution& s) {
  ordered_json out;
  out["status"] = "optimal";
  out["variant"] = to_string(inst.variant);
  out["method"] = to_string(s.method);
  out["x"] = vector_to_json(s.x);
  out["y"] = vector_to_json(s.y);
  out["value"] = s.value.str();
  out["certificate"] = certificate_to_json(s.certificate);
  out["leaves_solved"] = s.leaves_solved;
  return out;
}

std::string describe_certificate(const Certificate& c) {
  return std::visit(
      [](const auto& w) -> std::string {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, IterationTrace>) {
          std::string out = std::to_string(w.iterations) + " relaxed problem(s), cuts:";
          if (w.cuts.empty()) return out + " none";
          for (const auto& z : w.cuts) out += " " + z.str();
          return out;
        } else if constexpr (std::is_same_v<W, MinimalPointWitness>) {
          return "minimal point " + w.y_candidate.str() + " of " + std::to_string(w.candidates) + " candidates";
        } else if constexpr (std::is_same_v<W, ClosedFormWitness>) {
          return "greatest points x_max = " + w.x_max.str() + ", y_max = " + w.y_max.str();
        } else {
          return "partition I = " + index_text(w.I) + ", J = " + index_text(w.J) + " (" +
                 std::to_string(w.pieces_feasible) + " of " + std::to_string(w.pieces_total) + " pieces feasible, " +
                 std::to_string(w.rejected) + " rejected)";
        }
      },
      c);
}

}  // namespace tropbilevel::io
