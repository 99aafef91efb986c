#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "pisupp/exactfield.hpp"

namespace pisupp {

namespace {

constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 21;
constexpr std::uint64_t kAddTableLimit = 256;

using Coeffs = std::vector<std::uint32_t>;

// Remainder of `a` modulo monic `m` over F_p, in place. Both low-order first.
void reduce_mod(Coeffs& a, const Coeffs& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i < dm; ++i) {
        const std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, Coeffs>, std::shared_ptr<const FiniteField>> registry;
  std::lock_guard lock(mu);
  auto key = std::make_pair(p, modulus);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  std::shared_ptr<const FiniteField> f(new FiniteField(p, modulus));
  registry.emplace(std::move(key), f);
  return f;
}

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), n_(modulus.empty() ? 1 : static_cast<unsigned>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus)) {
  for (unsigned i = 0; i < n_; ++i) q_ *= p_;
  if (q_ > 0x7fffffffULL) {
    throw Error(ErrorKind::ExtensionTooLarge, "field of size " + std::to_string(q_) + " exceeds the encoding range");
  }
  build_tables();
}

void FiniteField::build_tables() {
  if (n_ == 1) return;
  if (p_ != 2 && q_ <= kAddTableLimit) {
    add_table_.resize(q_ * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) add_table_[a * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
  }
  if (q_ > kLogTableLimit) return;
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto f : factors) {
      if (slow_pow(cand, order / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * order, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, g);
  }
}

FiniteField::Elem FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > n_) {
    for (std::size_t i = n_; i < coeffs.size(); ++i) {
      if (coeffs[i] % p_ != 0) {
        throw Error(ErrorKind::InvalidArgument, "coefficient array longer than the extension degree");
      }
    }
  }
  Elem code = 0;
  Elem scale = 1;
  for (std::size_t i = 0; i < std::min<std::size_t>(coeffs.size(), n_); ++i) {
    code += (coeffs[i] % p_) * scale;
    scale *= p_;
  }
  return code;
}

std::vector<std::uint32_t> FiniteField::coefficients(Elem a) const {
  std::vector<std::uint32_t> out(n_);
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

FiniteField::Elem FiniteField::add_digits(Elem a, Elem b) const noexcept {
  Elem code = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < n_; ++i) {
    Elem d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    code += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return code;
}

FiniteField::Elem FiniteField::neg_digits(Elem a) const noexcept {
  Elem code = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < n_; ++i) {
    const Elem d = a % p_;
    code += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return code;
}

FiniteField::Elem FiniteField::mul_slow(Elem a, Elem b) const noexcept {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  Coeffs prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
  }
  reduce_mod(prod, modulus_, p_);
  return from_coefficients(prod);
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
  return pow(a, q_ - 2);
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const std::size_t n = monic.size() - 1;
  if (n == 1) return true;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs divisor(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      Coeffs rem = monic;
      reduce_mod(rem, divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t x) { return x == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned degree) {
  if (degree <= 1) return {};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Coeffs cand(degree + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < degree; ++i) {
      cand[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    cand[degree] = 1;
    if (is_irreducible(p, cand)) return cand;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");  // unreachable
}

FieldEmbedding::FieldEmbedding(std::shared_ptr<const FiniteField> from, std::shared_ptr<const FiniteField> to)
    : from_(std::move(from)), to_(std::move(to)) {
  if (from_->characteristic() != to_->characteristic() || to_->degree() % from_->degree() != 0) {
    throw Error(ErrorKind::NotARefinement, "no embedding of GF(" + std::to_string(from_->size()) + ") into GF(" +
                                               std::to_string(to_->size()) + ")");
  }
  if (from_ == to_ || from_->is_prime_field()) {
    identity_ = true;
    return;
  }

  static std::mutex mu;
  static std::map<std::pair<const FiniteField*, const FiniteField*>, FiniteField::Elem> roots;
  {
    std::lock_guard lock(mu);
    if (auto it = roots.find({from_.get(), to_.get()}); it != roots.end()) {
      root_ = it->second;
    } else {
      const auto& m = from_->modulus();
      bool found = false;
      for (FiniteField::Elem x = 0; x < to_->size() && !found; ++x) {
        FiniteField::Elem acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = to_->add(to_->mul(acc, x), m[i]);
        if (acc == 0) {
          root_ = x;
          found = true;
        }
      }
      roots.emplace(std::make_pair(from_.get(), to_.get()), root_);
    }
  }

  if (from_->size() <= 65536) {
    table_.resize(from_->size());
    for (FiniteField::Elem a = 0; a < from_->size(); ++a) {
      const auto c = from_->coefficients(a);
      FiniteField::Elem acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = to_->add(to_->mul(acc, root_), c[i]);
      table_[a] = acc;
    }
  }
}

FiniteField::Elem FieldEmbedding::operator()(FiniteField::Elem a) const {
  if (identity_) return a;
  if (!table_.empty()) return table_[a];
  const auto c = from_->coefficients(a);
  FiniteField::Elem acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = to_->add(to_->mul(acc, root_), c[i]);
  return acc;
}

std::optional<FiniteField::Elem> FieldEmbedding::preimage(FiniteField::Elem b) const {
  if (identity_) {
    if (b < from_->size()) return b;
    return std::nullopt;
  }
  for (FiniteField::Elem a = 0; a < from_->size(); ++a) {
    if ((*this)(a) == b) return a;
  }
  return std::nullopt;
}

}  // namespace pisupp
