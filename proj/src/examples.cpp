#include <charconv>

#include "pisupp/examples.hpp"

namespace pisupp {

namespace {

std::optional<unsigned> parse_count(const std::string& s) {
  unsigned v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

unsigned require_count(const std::string& name, const std::string& digits) {
  auto v = parse_count(digits);
  if (!v) throw Error(ErrorKind::InvalidArgument, "malformed example parameter in '" + name + "'");
  return *v;
}

}  // namespace

AlgebraSpec klein_spec() { return AlgebraSpec::uniform(2, 2, Flavor::Group); }

ModuleRep klein_truncation(unsigned n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Klein truncation needs n >= 1");
  const auto spec = klein_spec();
  Matrix x(spec.base, 2 * n, 2 * n), y(spec.base, 2 * n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    x.set_code(n + i, i, 1);                 // x u_i = v_i
    if (i > 0) y.set_code(n + i - 1, i, 1);  // y u_i = v_{i-1}
  }
  return ModuleRep(spec, {std::move(x), std::move(y)}, "klein-M" + std::to_string(n));
}

std::optional<ModuleRep> make_example(const std::string& name, const AlgebraSpec& spec) {
  if (name == "trivial") return trivial_module(spec);
  if (name.rfind("free:", 0) == 0) return free_module(spec, require_count(name, name.substr(5)));
  if (name.rfind("jordan:", 0) == 0) return jordan_block_module(spec, require_count(name, name.substr(7)));
  if (name.rfind("klein-Mn:", 0) == 0) return klein_truncation(require_count(name, name.substr(9)));
  if (name.rfind("klein-M", 0) == 0) return klein_truncation(require_count(name, name.substr(7)));
  return std::nullopt;
}

std::vector<std::string> example_patterns() {
  return {"trivial", "free:<g>", "jordan:<u>", "klein-M<n>", "klein-Mn:<n>"};
}

}  // namespace pisupp
