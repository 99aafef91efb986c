#include <sstream>

#include "pisupp/module_file.hpp"

namespace pisupp {

namespace {

using nlohmann::json;

[[noreturn]] void syntax(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) syntax(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) syntax(path, "missing key \"" + key + "\"");
  return *it;
}

std::uint64_t unsigned_value(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  syntax(path, "expected a nonnegative integer");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto k : known) ok = ok || it.key() == k;
    if (!ok) syntax(path, "unknown key \"" + it.key() + "\"");
  }
}

std::string compact(const json& j) { return j.dump(); }

}  // namespace

json field_to_json(const Field& field) {
  json j;
  j["characteristic"] = field->characteristic();
  if (field->extension_degree() > 1) j["extension"] = field->modulus();
  if (field->has_transcendentals()) j["variables"] = field->variables();
  return j;
}

Field field_from_json(const json& j) {
  const std::string path = "/algebra/field";
  if (!j.is_object()) syntax(path, "expected an object");
  reject_unknown_keys(j, {"characteristic", "extension", "variables"}, path);
  const auto p = unsigned_value(member(j, "characteristic", path), path + "/characteristic");
  if (p > 0xFFFFFFFFull) syntax(path + "/characteristic", "characteristic out of range");
  std::optional<std::vector<std::uint32_t>> ext;
  if (auto it = j.find("extension"); it != j.end()) {
    if (!it->is_array()) syntax(path + "/extension", "expected an array of coefficients");
    std::vector<std::uint32_t> coeffs;
    for (std::size_t i = 0; i < it->size(); ++i) {
      coeffs.push_back(static_cast<std::uint32_t>(unsigned_value((*it)[i], path + "/extension/" + std::to_string(i))));
    }
    ext = std::move(coeffs);
  }
  std::vector<std::string> vars;
  if (auto it = j.find("variables"); it != j.end()) {
    if (!it->is_array()) syntax(path + "/variables", "expected an array of names");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) syntax(path + "/variables/" + std::to_string(i), "expected a string");
      vars.push_back((*it)[i].get<std::string>());
    }
  }
  return FieldDescriptor::make(static_cast<std::uint32_t>(p), ext, vars);
}

json algebra_to_json(const AlgebraSpec& spec) {
  json alg;
  alg["p"] = spec.p;
  alg["r"] = spec.r;
  alg["field"] = field_to_json(spec.base);
  alg["flavors"] = json::array();
  for (auto f : spec.flavors) alg["flavors"].push_back(to_string(f));
  return alg;
}

AlgebraSpec algebra_from_json(const json& alg) {
  if (!alg.is_object()) syntax("/algebra", "expected an object");
  reject_unknown_keys(alg, {"p", "r", "field", "flavors"}, "/algebra");
  const auto p = unsigned_value(member(alg, "p", "/algebra"), "/algebra/p");
  const auto r = unsigned_value(member(alg, "r", "/algebra"), "/algebra/r");
  const auto field = field_from_json(member(alg, "field", "/algebra"));
  if (field->characteristic() != p) {
    throw Error(ErrorKind::ValidationError, "algebra p = " + std::to_string(p) + " but the field has characteristic " +
                                                std::to_string(field->characteristic()));
  }
  if (r == 0 || r > 16) throw Error(ErrorKind::ValidationError, "r must be between 1 and 16");
  const auto& fl = member(alg, "flavors", "/algebra");
  if (!fl.is_array()) syntax("/algebra/flavors", "expected an array");
  if (fl.size() != r) {
    throw Error(ErrorKind::ValidationError,
                "expected " + std::to_string(r) + " flavors, got " + std::to_string(fl.size()));
  }
  AlgebraSpec spec{static_cast<unsigned>(p), static_cast<unsigned>(r), {}, field};
  for (std::size_t i = 0; i < fl.size(); ++i) {
    if (!fl[i].is_string()) syntax("/algebra/flavors/" + std::to_string(i), "expected a string");
    try {
      spec.flavors.push_back(flavor_from_string(fl[i].get<std::string>()));
    } catch (const Error& e) {
      syntax("/algebra/flavors/" + std::to_string(i), e.what());
    }
  }
  return spec;
}

json module_to_json(const ModuleRep& m) {
  json alg = algebra_to_json(m.spec());
  json mod;
  mod["dim"] = m.dim();
  if (!m.name().empty()) mod["name"] = m.name();
  mod["actions"] = json::array();
  for (const auto& z : m.actions()) {
    json rows = json::array();
    for (std::size_t i = 0; i < z.rows(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < z.cols(); ++k) row.push_back(to_json(z.at(i, k)));
      rows.push_back(std::move(row));
    }
    mod["actions"].push_back(std::move(rows));
  }
  json j;
  j["format"] = kModuleFormatName;
  j["version"] = kModuleFormatVersion;
  j["algebra"] = std::move(alg);
  j["module"] = std::move(mod);
  return j;
}

ModuleRep module_from_json(const json& j) {
  if (!j.is_object()) syntax("", "expected an object");
  reject_unknown_keys(j, {"format", "version", "algebra", "module"}, "");
  const auto& fmt = member(j, "format", "");
  if (!fmt.is_string() || fmt.get<std::string>() != kModuleFormatName) {
    syntax("/format", std::string("expected \"") + kModuleFormatName + "\"");
  }
  const auto version = unsigned_value(member(j, "version", ""), "/version");
  if (version != kModuleFormatVersion) syntax("/version", "unsupported version " + std::to_string(version));

  auto spec = algebra_from_json(member(j, "algebra", ""));
  const Field field = spec.base;
  const unsigned r = spec.r;

  const auto& mod = member(j, "module", "");
  if (!mod.is_object()) syntax("/module", "expected an object");
  reject_unknown_keys(mod, {"dim", "name", "actions"}, "/module");
  const auto dim = unsigned_value(member(mod, "dim", "/module"), "/module/dim");
  std::string name;
  if (auto it = mod.find("name"); it != mod.end()) {
    if (!it->is_string()) syntax("/module/name", "expected a string");
    name = it->get<std::string>();
  }
  const auto& acts = member(mod, "actions", "/module");
  if (!acts.is_array()) syntax("/module/actions", "expected an array of matrices");
  if (acts.size() != r) {
    throw Error(ErrorKind::ValidationError,
                "expected " + std::to_string(r) + " generator matrices, got " + std::to_string(acts.size()));
  }
  std::vector<Matrix> z;
  for (std::size_t g = 0; g < acts.size(); ++g) {
    const std::string gpath = "/module/actions/" + std::to_string(g);
    const auto& rows = acts[g];
    if (!rows.is_array()) syntax(gpath, "expected an array of rows");
    if (rows.size() != dim) {
      throw Error(ErrorKind::ValidationError, "generator " + std::to_string(g + 1) + " has " +
                                                  std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
    }
    Matrix m(field, dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string rpath = gpath + "/" + std::to_string(i);
      if (!rows[i].is_array()) syntax(rpath, "expected a row array");
      if (rows[i].size() != dim) {
        throw Error(ErrorKind::ValidationError, "generator " + std::to_string(g + 1) + " row " + std::to_string(i + 1) +
                                                    " has " + std::to_string(rows[i].size()) + " entries, expected " +
                                                    std::to_string(dim));
      }
      for (std::size_t k = 0; k < dim; ++k) {
        try {
          m.set(i, k, field_element_from_json(field, rows[i][k]));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::SyntaxError) throw;
          syntax(rpath + "/" + std::to_string(k), e.what());
        }
      }
    }
    z.push_back(std::move(m));
  }
  return ModuleRep(std::move(spec), std::move(z), std::move(name));
}

std::string emit_module_file(const ModuleRep& m) {
  // Same content as module_to_json, laid out by hand so matrices keep one row per line.
  const auto j = module_to_json(m);
  const auto& alg = j["algebra"];
  const auto& mod = j["module"];
  std::ostringstream os;
  os << "{\n";
  os << "  \"algebra\": {\n";
  os << "    \"field\": " << compact(alg["field"]) << ",\n";
  os << "    \"flavors\": " << compact(alg["flavors"]) << ",\n";
  os << "    \"p\": " << alg["p"] << ",\n";
  os << "    \"r\": " << alg["r"] << "\n";
  os << "  },\n";
  os << "  \"format\": " << compact(j["format"]) << ",\n";
  os << "  \"module\": {\n";
  os << "    \"actions\": [";
  const auto& acts = mod["actions"];
  for (std::size_t g = 0; g < acts.size(); ++g) {
    os << (g ? ",\n" : "\n") << "      [";
    const auto& rows = acts[g];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << (i ? ",\n" : "\n") << "        [";
      for (std::size_t k = 0; k < rows[i].size(); ++k) os << (k ? ", " : "") << compact(rows[i][k]);
      os << "]";
    }
    os << (rows.empty() ? "]" : "\n      ]");
  }
  os << (acts.empty() ? "]" : "\n    ]") << ",\n";
  os << "    \"dim\": " << mod["dim"];
  if (mod.contains("name")) os << ",\n    \"name\": " << compact(mod["name"]);
  os << "\n  },\n";
  os << "  \"version\": " << j["version"] << "\n";
  os << "}\n";
  return os.str();
}

ModuleRep parse_module_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  return module_from_json(j);
}

}  // namespace pisupp
