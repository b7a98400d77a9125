#include "cycform/wedge.hpp"

#include <algorithm>
#include <stdexcept>

namespace cycform {

int sort_with_sign(std::vector<int>& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

int merge_sign(const IndexSet& a, const IndexSet& b) {
  long inversions = 0;
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    if (j < b.size() && b[j] == x) return 0;
    inversions += static_cast<long>(j);
  }
  return parity_sign(inversions);
}

IndexSet merge(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

namespace {

IndexSet without(const IndexSet& s, std::size_t pos) {
  IndexSet r = s;
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(pos));
  return r;
}

}  // namespace

template <WedgeKind K>
WedgeField<K> WedgeField<K>::term(const Polynomial& coefficient, std::vector<int> indices) {
  WedgeField w(coefficient.dim());
  w.add_term(std::move(indices), coefficient);
  return w;
}

template <WedgeKind K>
std::optional<int> WedgeField<K>::factor_count() const {
  std::optional<int> k;
  for (const auto& [idx, c] : terms_) {
    int n = static_cast<int>(idx.size());
    if (k && *k != n) return std::nullopt;
    k = n;
  }
  return k;
}

template <WedgeKind K>
bool WedgeField<K>::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_constant(); });
}

template <WedgeKind K>
Polynomial WedgeField<K>::component(std::vector<int> indices) const {
  int sign = sort_with_sign(indices);
  if (sign == 0) return Polynomial(dim_);
  auto it = terms_.find(indices);
  if (it == terms_.end()) return Polynomial(dim_);
  return sign > 0 ? it->second : -it->second;
}

template <WedgeKind K>
void WedgeField<K>::add_term(std::vector<int> indices, const Polynomial& coefficient) {
  if (coefficient.dim() != dim_) throw std::invalid_argument("wedge field dimension mismatch");
  for (int i : indices)
    if (i < 0 || i >= dim_) throw std::out_of_range("direction index out of range");
  int sign = sort_with_sign(indices);
  if (sign == 0 || coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(indices, Polynomial(dim_));
  if (sign > 0)
    it->second += coefficient;
  else
    it->second -= coefficient;
  if (it->second.is_zero()) terms_.erase(it);
}

template <WedgeKind K>
WedgeField<K> WedgeField<K>::operator-() const {
  WedgeField r = *this;
  for (auto& [idx, c] : r.terms_) c = -c;
  return r;
}

template <WedgeKind K>
WedgeField<K>& WedgeField<K>::operator+=(const WedgeField& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("wedge field dimension mismatch");
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

template <WedgeKind K>
WedgeField<K>& WedgeField<K>::operator-=(const WedgeField& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("wedge field dimension mismatch");
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

template <WedgeKind K>
WedgeField<K>& WedgeField<K>::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, p] : terms_) p *= c;
  return *this;
}

template <WedgeKind K>
WedgeField<K>& WedgeField<K>::operator*=(const Polynomial& f) {
  WedgeField r(dim_);
  for (const auto& [idx, p] : terms_) r.add_term(idx, p * f);
  return *this = std::move(r);
}

template <WedgeKind K>
WedgeField<K> wedge(const WedgeField<K>& a, const WedgeField<K>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge field dimension mismatch");
  WedgeField<K> r(a.dim());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      int s = merge_sign(ia, ib);
      if (s == 0) continue;
      Polynomial c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(merge(ia, ib), c);
    }
  }
  return r;
}

template class WedgeField<WedgeKind::polyvector>;
template class WedgeField<WedgeKind::form>;
template PolyVector wedge(const PolyVector&, const PolyVector&);
template DiffForm wedge(const DiffForm&, const DiffForm&);

int polyvector_degree(const PolyVector& gamma) {
  auto k = gamma.factor_count();
  if (!k) throw std::invalid_argument("polyvector field is not homogeneous");
  return *k - 1;
}

int form_degree(const DiffForm& omega) {
  auto k = omega.factor_count();
  if (!k) throw std::invalid_argument("differential form is not homogeneous");
  return -*k;
}

PolyVector schouten(const PolyVector& a, const PolyVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("schouten: dimension mismatch");
  const int d = a.dim();
  PolyVector r(d);
  for (const auto& [ia, pa] : a.terms()) {
    for (const auto& [ib, pb] : b.terms()) {
      const std::size_t ka = ia.size();
      // (P <-d/dt_i)(d/dx_i Q)
      for (std::size_t pos = 0; pos < ka; ++pos) {
        const int i = ia[pos];
        Polynomial dq = pb.derivative(i);
        if (dq.is_zero()) continue;
        IndexSet rest = without(ia, pos);
        int s = merge_sign(rest, ib);
        if (s == 0) continue;
        s *= parity_sign(static_cast<long>(ka - 1 - pos));
        Polynomial c = pa * dq;
        r.add_term(merge(rest, ib), s > 0 ? c : -c);
      }
      // -(P <-d/dx_i)(d/dt_i-> Q)
      for (std::size_t pos = 0; pos < ib.size(); ++pos) {
        const int i = ib[pos];
        Polynomial dp = pa.derivative(i);
        if (dp.is_zero()) continue;
        IndexSet rest = without(ib, pos);
        int s = merge_sign(ia, rest);
        if (s == 0) continue;
        s *= -parity_sign(static_cast<long>(pos));
        Polynomial c = dp * pb;
        r.add_term(merge(ia, rest), s > 0 ? c : -c);
      }
    }
  }
  return r;
}

PolyVector lie_derivative_polyvector(const PolyVector& xi, const PolyVector& gamma) {
  if (xi.factor_count().value_or(1) != 1) throw std::invalid_argument("lie_derivative_polyvector: xi must be a vector field");
  const int d = xi.dim();
  PolyVector r(d);
  for (int i = 0; i < d; ++i) {
    Polynomial xi_i = xi.component({i});
    if (xi_i.is_zero()) continue;
    for (const auto& [idx, c] : gamma.terms()) r.add_term(idx, xi_i * c.derivative(i));
  }
  // - sum over factors: d_{j} -> (d_j xi^k) d_k in place of that factor
  for (const auto& [idx, c] : gamma.terms()) {
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      for (int k = 0; k < d; ++k) {
        Polynomial dxi = xi.component({k}).derivative(idx[pos]);
        if (dxi.is_zero()) continue;
        std::vector<int> replaced = idx;
        replaced[pos] = k;
        r.add_term(replaced, -(dxi * c));
      }
    }
  }
  return r;
}

DiffForm de_rham(const DiffForm& omega) {
  DiffForm r(omega.dim());
  for (const auto& [idx, c] : omega.terms()) {
    for (int i = 0; i < omega.dim(); ++i) {
      Polynomial dc = c.derivative(i);
      if (dc.is_zero()) continue;
      std::vector<int> indices{i};
      indices.insert(indices.end(), idx.begin(), idx.end());
      r.add_term(std::move(indices), dc);
    }
  }
  return r;
}

namespace {

// i(d_axis) on a form: left interior derivative.
DiffForm contract_axis(int axis, const DiffForm& omega) {
  DiffForm r(omega.dim());
  for (const auto& [idx, c] : omega.terms()) {
    auto it = std::find(idx.begin(), idx.end(), axis);
    if (it == idx.end()) continue;
    auto pos = static_cast<std::size_t>(it - idx.begin());
    r.add_term(without(idx, pos), parity_sign(static_cast<long>(pos)) > 0 ? c : -c);
  }
  return r;
}

}  // namespace

DiffForm contract(const PolyVector& gamma, const DiffForm& omega) {
  if (gamma.dim() != omega.dim()) throw std::invalid_argument("contract: dimension mismatch");
  DiffForm r(omega.dim());
  for (const auto& [idx, c] : gamma.terms()) {
    DiffForm part = omega;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) part = contract_axis(*it, part);
    part *= c;
    r += part;
  }
  return r;
}

DiffForm lie_derivative(const PolyVector& gamma, const DiffForm& omega) {
  if (gamma.dim() != omega.dim()) throw std::invalid_argument("lie_derivative: dimension mismatch");
  DiffForm r(omega.dim());
  const DiffForm d_omega = de_rham(omega);
  for (const auto& [idx, c] : gamma.terms()) {
    PolyVector part(gamma.dim());
    part.add_term(idx, c);
    const int p = static_cast<int>(idx.size());
    r += de_rham(contract(part, omega));
    DiffForm second = contract(part, d_omega);
    if (p % 2 == 0)
      r -= second;
    else
      r += second;
  }
  return r;
}

Polynomial evaluate(const DiffForm& omega, const PolyVector& xi) {
  if (omega.dim() != xi.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  Polynomial r(omega.dim());
  for (const auto& [idx, c] : omega.terms()) {
    auto it = xi.terms().find(idx);
    if (it != xi.terms().end()) r += c * it->second;
  }
  return r;
}

Polynomial directional_derivative(const PolyVector& constant_field, const Polynomial& f) {
  if (constant_field.factor_count().value_or(1) != 1 || !constant_field.is_constant())
    throw std::invalid_argument("directional_derivative: expected a constant vector field");
  Polynomial r(f.dim());
  for (const auto& [idx, c] : constant_field.terms()) r += c.constant_term() * f.derivative(idx[0]);
  return r;
}

}  // namespace cycform
