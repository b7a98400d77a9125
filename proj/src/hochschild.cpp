#include "cycform/hochschild.hpp"

#include <functional>
#include <stdexcept>

#include "cycform/text.hpp"

namespace cycform {

namespace {

Tensor slice(const Tensor& t, std::size_t from, std::size_t to) {  // [from, to)
  return Tensor(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(to));
}

Tensor concat(Tensor a, const Tensor& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

HochschildChain HochschildChain::tensor(std::span<const Polynomial> slots) {
  if (slots.empty()) throw std::invalid_argument("a tensor needs at least the slot a_0");
  const int dim = slots.front().dim();
  HochschildChain c(dim);
  std::vector<std::pair<Tensor, Rational>> partial{{Tensor{}, Rational(1)}};
  for (const Polynomial& p : slots) {
    if (p.dim() != dim) throw std::invalid_argument("tensor slots differ in dimension");
    std::vector<std::pair<Tensor, Rational>> next;
    for (const auto& [t, coef] : partial)
      for (const auto& [e, v] : p.terms()) {
        Tensor u = t;
        u.push_back(e);
        next.emplace_back(std::move(u), coef * v);
      }
    partial = std::move(next);
  }
  for (const auto& [t, coef] : partial) c.add_term(t, coef);
  return c;
}

HochschildChain HochschildChain::tensor(std::initializer_list<Polynomial> slots) {
  return tensor(std::span<const Polynomial>(slots.begin(), slots.size()));
}

void HochschildChain::add_term(const Tensor& t, const Rational& c) {
  if (c == 0) return;
  if (t.empty()) throw std::invalid_argument("empty tensor");
  for (const auto& e : t)
    if (static_cast<int>(e.size()) != dim_) throw std::invalid_argument("chain dimension mismatch");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (is_zero_exponent(t[i])) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void HochschildChain::add_with_slot(const Tensor& prefix, const Polynomial& p, const Tensor& suffix,
                                    const Rational& c) {
  if (c == 0) return;
  for (std::size_t i = 0; i < suffix.size(); ++i)
    if (is_zero_exponent(suffix[i])) return;
  for (const auto& [e, v] : p.terms()) {
    Tensor t = prefix;
    t.push_back(e);
    t.insert(t.end(), suffix.begin(), suffix.end());
    add_term(t, c * v);
  }
}

HochschildChain HochschildChain::operator-() const {
  HochschildChain r = *this;
  for (auto& [t, c] : r.terms_) c = -c;
  return r;
}

HochschildChain& HochschildChain::operator+=(const HochschildChain& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("chain dimension mismatch");
  for (const auto& [t, c] : other.terms_) add_term(t, c);
  return *this;
}

HochschildChain& HochschildChain::operator-=(const HochschildChain& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("chain dimension mismatch");
  for (const auto& [t, c] : other.terms_) add_term(t, -c);
  return *this;
}

HochschildChain& HochschildChain::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

HochschildChain boundary_b(const HochschildChain& c) {
  HochschildChain r(c.dim());
  for (const auto& [t, coef] : c.terms()) {
    const std::size_t n = t.size() - 1;
    if (n == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      Tensor u = slice(t, 0, j);
      u.push_back(t[j] + t[j + 1]);
      u = concat(std::move(u), slice(t, j + 2, t.size()));
      r.add_term(u, j % 2 == 0 ? coef : Rational(-coef));
    }
    Tensor u{t[n] + t[0]};
    u = concat(std::move(u), slice(t, 1, n));
    r.add_term(u, n % 2 == 0 ? coef : Rational(-coef));
  }
  return r;
}

HochschildChain connes_B(const HochschildChain& c) {
  HochschildChain r(c.dim());
  for (const auto& [t, coef] : c.terms()) {
    const std::size_t n = t.size() - 1;
    for (std::size_t j = 0; j <= n; ++j) {
      Tensor u{zero_exponent(c.dim())};
      u = concat(std::move(u), slice(t, j, t.size()));
      u = concat(std::move(u), slice(t, 0, j));
      r.add_term(u, (n * j) % 2 == 0 ? coef : Rational(-coef));
    }
  }
  return r;
}

HochschildChain shift_sigma(const HochschildChain& c, int power) {
  HochschildChain r(c.dim());
  for (const auto& [t, coef] : c.terms()) {
    const std::size_t n = t.size() - 1;
    if (n <= 1) {
      r.add_term(t, coef);
      continue;
    }
    const auto p = static_cast<std::size_t>(((power % static_cast<int>(n)) + static_cast<int>(n)) % static_cast<int>(n));
    Tensor u{t[0]};
    u = concat(std::move(u), slice(t, 1 + p, t.size()));
    u = concat(std::move(u), slice(t, 1, 1 + p));
    r.add_term(u, coef);
  }
  return r;
}

HochschildChain stab_s(const HochschildChain& c) {
  HochschildChain r(c.dim());
  for (const auto& [t, coef] : c.terms()) r.add_term(concat(Tensor{zero_exponent(c.dim())}, t), coef);
  return r;
}

// ---------------------------------------------------------------------------

PolyDiffOperator PolyDiffOperator::multiplication(int dim) {
  return term(Polynomial::constant(dim, Rational(1)), {zero_exponent(dim), zero_exponent(dim)});
}

PolyDiffOperator PolyDiffOperator::term(const Polynomial& prefactor, const Key& derivatives) {
  PolyDiffOperator D(prefactor.dim(), static_cast<int>(derivatives.size()));
  D.add_term(derivatives, prefactor);
  return D;
}

void PolyDiffOperator::add_term(const Key& derivatives, const Polynomial& prefactor) {
  if (static_cast<int>(derivatives.size()) != arity_) throw std::invalid_argument("cochain arity mismatch");
  if (prefactor.dim() != dim_) throw std::invalid_argument("cochain dimension mismatch");
  for (const auto& a : derivatives)
    if (static_cast<int>(a.size()) != dim_) throw std::invalid_argument("cochain dimension mismatch");
  if (prefactor.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(derivatives, Polynomial(dim_));
  it->second += prefactor;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial PolyDiffOperator::apply(std::span<const Polynomial> args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("cochain applied to wrong number of arguments");
  Polynomial r(dim_);
  for (const auto& [alpha, p] : terms_) {
    Polynomial prod = p;
    for (std::size_t k = 0; k < args.size() && !prod.is_zero(); ++k) prod *= args[k].derivative(alpha[k]);
    r += prod;
  }
  return r;
}

Polynomial PolyDiffOperator::apply_monomials(std::span<const Exponent> args) const {
  if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("cochain applied to wrong number of arguments");
  Polynomial r(dim_);
  for (const auto& [alpha, p] : terms_) {
    Rational factor(1);
    Exponent e = zero_exponent(dim_);
    for (std::size_t k = 0; k < args.size() && factor != 0; ++k) {
      factor *= derivative_factor(args[k], alpha[k]);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += args[k][i] - alpha[k][i];
    }
    if (factor == 0) continue;
    Polynomial shifted(dim_);
    for (const auto& [pe, pc] : p.terms()) shifted.add_term(pe + e, pc * factor);
    r += shifted;
  }
  return r;
}

PolyDiffOperator PolyDiffOperator::operator-() const {
  PolyDiffOperator r = *this;
  for (auto& [k, p] : r.terms_) p = -p;
  return r;
}

PolyDiffOperator& PolyDiffOperator::operator+=(const PolyDiffOperator& other) {
  if (other.dim_ != dim_ || other.arity_ != arity_) throw std::invalid_argument("cochain shape mismatch");
  for (const auto& [k, p] : other.terms_) add_term(k, p);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator-=(const PolyDiffOperator& other) {
  if (other.dim_ != dim_ || other.arity_ != arity_) throw std::invalid_argument("cochain shape mismatch");
  for (const auto& [k, p] : other.terms_) add_term(k, -p);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

namespace {

// Ways of writing the multi-index alpha as an ordered sum of `parts`
// multi-indices, each with its multinomial coefficient (generalized Leibniz).
std::vector<std::pair<std::vector<Exponent>, Rational>> distribute(const Exponent& alpha, std::size_t parts) {
  const std::size_t dim = alpha.size();
  std::vector<std::pair<std::vector<Exponent>, Rational>> out;
  std::vector<Exponent> current(parts, Exponent(dim, 0));
  std::function<void(std::size_t, std::size_t, int, Rational)> rec = [&](std::size_t axis, std::size_t part,
                                                                          int remaining, Rational coef) {
    if (axis == dim) {
      out.emplace_back(current, coef);
      return;
    }
    if (part + 1 == parts) {
      current[part][axis] = remaining;
      // multinomial: alpha_i! / prod gamma_i!, built incrementally as binomials
      rec(axis + 1, 0, axis + 1 < dim ? alpha[axis + 1] : 0, coef);
      current[part][axis] = 0;
      return;
    }
    for (int g = 0; g <= remaining; ++g) {
      current[part][axis] = g;
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(remaining), static_cast<unsigned long>(g));
      rec(axis, part + 1, remaining - g, coef * Rational(binom));
    }
    current[part][axis] = 0;
  };
  if (parts == 0) return out;
  if (dim == 0) {
    out.emplace_back(current, Rational(1));
    return out;
  }
  rec(0, 0, alpha[0], Rational(1));
  return out;
}

void check_arity(int arity, int max_arity) {
  if (arity > max_arity)
    throw std::length_error("cochain arity " + std::to_string(arity) + " exceeds maximum " + std::to_string(max_arity));
}

}  // namespace

PolyDiffOperator coboundary_dH(const PolyDiffOperator& psi, int max_arity) {
  const int k = psi.arity();
  check_arity(k + 1, max_arity);
  const int d = psi.dim();
  PolyDiffOperator r(d, k + 1);
  for (const auto& [alpha, p] : psi.terms()) {
    PolyDiffOperator::Key first{zero_exponent(d)};
    first.insert(first.end(), alpha.begin(), alpha.end());
    r.add_term(first, (k + 1) % 2 == 0 ? p : -p);
    for (int j = 1; j <= k; ++j) {
      const Exponent& aj = alpha[static_cast<std::size_t>(j - 1)];
      for (const auto& [split, coef] : distribute(aj, 2)) {
        PolyDiffOperator::Key key(alpha.begin(), alpha.begin() + (j - 1));
        key.push_back(split[0]);
        key.push_back(split[1]);
        key.insert(key.end(), alpha.begin() + j, alpha.end());
        Rational s = (j + k + 1) % 2 == 0 ? coef : Rational(-coef);
        r.add_term(key, p * s);
      }
    }
    PolyDiffOperator::Key last = alpha;
    last.push_back(zero_exponent(d));
    r.add_term(last, p);
  }
  return r;
}

PolyDiffOperator compose(const PolyDiffOperator& psi, const PolyDiffOperator& phi, int max_arity) {
  if (psi.dim() != phi.dim()) throw std::invalid_argument("compose: dimension mismatch");
  const int m = psi.arity();
  const int n = phi.arity();
  const int arity = m + n - 1;
  PolyDiffOperator r(psi.dim(), std::max(arity, 0));
  if (m == 0) return r;
  check_arity(arity, max_arity);
  for (int j = 1; j <= m; ++j) {
    const bool negative = ((n - 1) * (j - 1)) % 2 != 0;
    for (const auto& [alpha, p] : psi.terms()) {
      const Exponent& aj = alpha[static_cast<std::size_t>(j - 1)];
      const auto splits = distribute(aj, static_cast<std::size_t>(n + 1));
      for (const auto& [beta, q] : phi.terms()) {
        for (const auto& [split, coef] : splits) {
          Polynomial pre = p * q.derivative(split[0]) * coef;
          if (pre.is_zero()) continue;
          PolyDiffOperator::Key key(alpha.begin(), alpha.begin() + (j - 1));
          for (int l = 0; l < n; ++l) key.push_back(beta[static_cast<std::size_t>(l)] + split[static_cast<std::size_t>(l + 1)]);
          key.insert(key.end(), alpha.begin() + j, alpha.end());
          r.add_term(key, negative ? -pre : pre);
        }
      }
    }
  }
  return r;
}

PolyDiffOperator gerstenhaber(const PolyDiffOperator& psi, const PolyDiffOperator& phi, int max_arity) {
  PolyDiffOperator a = compose(psi, phi, max_arity);
  PolyDiffOperator b = compose(phi, psi, max_arity);
  const int arity = psi.arity() + phi.arity() - 1;
  if (arity < 0) return PolyDiffOperator(psi.dim(), 0);
  // compose returns arity 0 placeholders when the left factor has arity 0
  if (a.arity() != arity) a = PolyDiffOperator(psi.dim(), arity);
  if (b.arity() != arity) b = PolyDiffOperator(psi.dim(), arity);
  const bool negative = ((psi.arity() - 1) * (phi.arity() - 1)) % 2 != 0;
  return negative ? a + b : a - b;
}

HochschildChain cochain_action(const PolyDiffOperator& D, const HochschildChain& c) {
  if (D.dim() != c.dim()) throw std::invalid_argument("cochain_action: dimension mismatch");
  HochschildChain r(c.dim());
  const int k = D.arity();
  for (const auto& [t, coef] : c.terms()) {
    const int n = static_cast<int>(t.size()) - 1;
    if (k > n + 1) continue;
    for (int j = n - k + 1; j <= n; ++j) {
      Tensor args = slice(t, static_cast<std::size_t>(j + 1), t.size());
      Tensor head = slice(t, 0, static_cast<std::size_t>(k + j - n));
      args = concat(std::move(args), head);
      Polynomial value = D.apply_monomials(args);
      Tensor rest = slice(t, static_cast<std::size_t>(k + j - n), static_cast<std::size_t>(j + 1));
      const bool negative = (n * (j + 1)) % 2 != 0;
      r.add_with_slot({}, value, rest, negative ? Rational(-coef) : coef);
    }
    for (int i = 0; i <= n - k; ++i) {
      Tensor prefix = slice(t, 0, static_cast<std::size_t>(i + 1));
      Tensor args = slice(t, static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1 + k));
      Tensor suffix = slice(t, static_cast<std::size_t>(i + 1 + k), t.size());
      Polynomial value = D.apply_monomials(args);
      const bool negative = ((k - 1) * (i + 1)) % 2 != 0;
      r.add_with_slot(prefix, value, suffix, negative ? Rational(-coef) : coef);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

CyclicChain CyclicChain::from_chain(const HochschildChain& c, int u_power) {
  CyclicChain r(c.dim());
  r.add(u_power, c);
  return r;
}

HochschildChain CyclicChain::component(int u_power) const {
  auto it = parts_.find(u_power);
  return it == parts_.end() ? HochschildChain(dim_) : it->second;
}

void CyclicChain::add(int u_power, const HochschildChain& c) {
  if (c.dim() != dim_) throw std::invalid_argument("cyclic chain dimension mismatch");
  if (u_power < 0) throw std::invalid_argument("negative power of u");
  if (c.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(u_power, HochschildChain(dim_));
  it->second += c;
  if (it->second.is_zero()) parts_.erase(it);
}

CyclicChain cyclic_differential(const CyclicChain& c, UAction action) {
  CyclicChain r(c.dim());
  for (const auto& [j, part] : c.components()) {
    r.add(j, boundary_b(part));
    if (action == UAction::polynomial) r.add(j + 1, connes_B(part));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

HochschildChain parse_chain(std::string_view text, int dim) {
  HochschildChain chain(dim);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view term = trim_view(text.substr(start, stop - start));
    start = stop + 1;
    if (term.empty()) continue;
    Rational coef(1);
    if (term.front() == '{') {
      auto close = term.find('}');
      if (close == std::string_view::npos) throw ParseError("unterminated coefficient in chain '" + std::string(text) + "'");
      coef = parse_rational(trim_view(term.substr(1, close - 1)));
      term = trim_view(term.substr(close + 1));
    }
    std::vector<Polynomial> slots;
    std::size_t s = 0;
    for (;;) {
      std::size_t sep = term.find("(x)", s);
      std::string_view slot = trim_view(term.substr(s, sep == std::string_view::npos ? std::string_view::npos : sep - s));
      if (slot.empty()) throw ParseError("empty tensor slot in chain '" + std::string(text) + "'");
      slots.push_back(parse_polynomial(slot, dim));
      if (sep == std::string_view::npos) break;
      s = sep + 3;
    }
    HochschildChain t = HochschildChain::tensor(slots);
    t *= coef;
    chain += t;
  }
  return chain;
}

std::string format(const HochschildChain& c) {
  std::string out;
  for (const auto& [t, coef] : c.terms()) {
    if (!out.empty()) out += "; ";
    if (coef != 1) out += "{" + to_string(coef) + "} ";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += " (x) ";
      out += format(Polynomial::monomial(t[i]));
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace cycform
