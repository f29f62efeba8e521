#include "forminv/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace forminv {

namespace {

using json = nlohmann::ordered_json;

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

int require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

Rat parse_coefficient(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": coefficient must be a string \"p\" or \"p/q\"");
}

std::string format_term(MonoKey key, const Rat& c, int n) {
  std::string out = "{\"exp\": [";
  Exponent e = mono::unpack(key, n);
  for (int i = 0; i < n; ++i) out += (i ? ", " : "") + std::to_string(e[i]);
  return out + "], \"c\": \"" + to_string(c) + "\"}";
}

}  // namespace

ParseError::ParseError(const std::string& what, int line, int column)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                     : what),
      line_(line),
      column_(column) {}

MapDocument parse_map_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, column);
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  for (const char* key : {"n", "D", "components"})
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  for (const auto& [key, value] : j.items())
    if (key != "n" && key != "D" && key != "vars" && key != "components" && key != "meta")
      throw ParseError("unknown field \"" + key + "\"");

  MapDocument doc;
  const int n = require_int(j["n"], "n");
  if (n < 1 || n > kMaxVars) throw ParseError("n must be in [1, " + std::to_string(kMaxVars) + "]");
  doc.degree = require_int(j["D"], "D");
  if (doc.degree < 1 || doc.degree > kMaxKeyDegree / 2)
    throw ParseError("D must be in [1, " + std::to_string(kMaxKeyDegree / 2) + "]");

  if (j.contains("vars")) {
    const auto& v = j["vars"];
    if (!v.is_array() || static_cast<int>(v.size()) != n) throw ParseError("vars must list exactly n names");
    for (const auto& name : v) {
      if (!name.is_string() || name.get<std::string>().empty()) throw ParseError("vars entries must be non-empty strings");
      doc.vars.push_back(name.get<std::string>());
    }
  } else {
    doc.vars = default_var_names(n);
  }

  const auto& comps = j["components"];
  if (!comps.is_array() || static_cast<int>(comps.size()) != n)
    throw ParseError("components must hold exactly n = " + std::to_string(n) + " term lists");
  std::vector<MSeries> series;
  for (int i = 0; i < n; ++i) {
    const std::string where = "components[" + std::to_string(i) + "]";
    const auto& list = comps[i];
    if (!list.is_array()) throw ParseError(where + ": expected a list of terms");
    std::vector<std::pair<Exponent, Rat>> terms;
    for (std::size_t t = 0; t < list.size(); ++t) {
      const std::string tw = where + "[" + std::to_string(t) + "]";
      const auto& term = list[t];
      if (!term.is_object() || !term.contains("exp") || !term.contains("c"))
        throw ParseError(tw + ": a term needs \"exp\" and \"c\"");
      const auto& e = term["exp"];
      if (!e.is_array() || static_cast<int>(e.size()) != n)
        throw ParseError(tw + ".exp: expected " + std::to_string(n) + " exponents");
      Exponent ex;
      for (const auto& x : e) {
        int v = require_int(x, tw + ".exp");
        if (v < 0) throw ParseError(tw + ".exp: negative exponent");
        ex.push_back(v);
      }
      try {
        mono::pack(ex);
      } catch (const std::invalid_argument& err) {
        throw ParseError(tw + ".exp: " + err.what());
      }
      terms.emplace_back(std::move(ex), parse_coefficient(term["c"], tw + ".c"));
    }
    MSeries s = MSeries::from_terms(n, kExact, terms);
    if (!is_zero(s.coeff(MonoKey{0}))) throw ParseError(where + ": nonzero constant term");
    series.push_back(std::move(s));
  }
  doc.map = PolyMap(std::move(series));

  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw ParseError("meta must be an object");
    doc.meta = j["meta"].dump();
  }
  return doc;
}

std::string serialize(const MapDocument& doc) {
  const int n = doc.nvars();
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(n) + ",\n";
  out += "  \"D\": " + std::to_string(doc.degree) + ",\n";
  out += "  \"vars\": [";
  for (int i = 0; i < n; ++i) out += (i ? ", " : "") + json(doc.vars.at(i)).dump();
  out += "],\n  \"components\": [\n";
  for (int i = 0; i < n; ++i) {
    out += "    [";
    bool first = true;
    for (const auto& t : doc.map[i].terms()) {
      out += (first ? "" : ", ") + format_term(t.key, t.coeff, n);
      first = false;
    }
    out += i + 1 < n ? "],\n" : "]\n";
  }
  out += "  ],\n  \"meta\": " + doc.meta + "\n}\n";
  return out;
}

MapDocument make_document(const PolyMap& m, int degree) {
  MapDocument doc;
  doc.degree = degree;
  doc.vars = default_var_names(m.nvars());
  doc.map = m;
  json meta = json::object();
  if (auto d = homogeneous_degree(PolyMap::identity(m.nvars()) - m)) meta["homogeneous_degree"] = *d;
  doc.meta = meta.dump();
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace forminv
