#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "norden/scalar.hpp"

namespace norden {

enum class Variance : std::uint8_t { Co, Contra };

using Valence = std::vector<Variance>;

inline Valence covariant(int slots) { return Valence(slots, Variance::Co); }

// Dense tensor over the invariant frame: every slot ranges over 0..dim-1,
// data stored row-major (first slot outermost). Components are constant on
// the frame; there is no point dependence anywhere in this library.
template <class T>
class Tensor {
 public:
  Tensor() : dim_(0) {}
  Tensor(int dim, Valence valence)
      : dim_(dim), valence_(std::move(valence)),
        data_(pow_size(dim, valence_.size()), NumTraits<T>::zero()) {
    if (dim < 2 || dim % 2 != 0)
      throw std::invalid_argument("tensor frame size must be even and >= 2");
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(valence_.size()); }
  const Valence& valence() const { return valence_; }
  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }

  bool same_shape(const Tensor& other) const {
    return dim_ == other.dim_ && valence_ == other.valence_;
  }

  template <class... I>
  T& operator()(I... is) {
    return data_[flat(is...)];
  }
  template <class... I>
  const T& operator()(I... is) const {
    return data_[flat(is...)];
  }

  T& at(std::span<const int> idx) { return data_[flat_span(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[flat_span(idx)]; }

  Tensor& operator+=(const Tensor& other) {
    require_same_shape(other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
    return *this;
  }
  Tensor& operator-=(const Tensor& other) {
    require_same_shape(other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
    return *this;
  }
  Tensor& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const T& s, Tensor a) { return a *= s; }

  void require_same_shape(const Tensor& other) const {
    if (!same_shape(other))
      throw std::invalid_argument("tensor shape mismatch");
  }

 private:
  static std::size_t pow_size(int dim, std::size_t rank) {
    std::size_t n = 1;
    for (std::size_t s = 0; s < rank; ++s) n *= static_cast<std::size_t>(dim);
    return n;
  }

  template <class... I>
  std::size_t flat(I... is) const {
    if (sizeof...(I) != valence_.size())
      throw std::invalid_argument("tensor index rank mismatch");
    std::size_t n = 0;
    ((n = n * dim_ + static_cast<std::size_t>(is)), ...);
    return n;
  }
  std::size_t flat_span(std::span<const int> idx) const {
    if (idx.size() != valence_.size())
      throw std::invalid_argument("tensor index rank mismatch");
    std::size_t n = 0;
    for (int i : idx) n = n * dim_ + static_cast<std::size_t>(i);
    return n;
  }

  int dim_;
  Valence valence_;
  std::vector<T> data_;
};

// Visits every multi-index of the given rank in lexicographic order.
template <class Fn>
void for_each_index(int dim, int rank, Fn&& fn) {
  std::vector<int> idx(rank, 0);
  if (rank == 0) {
    fn(std::span<const int>(idx));
    return;
  }
  while (true) {
    fn(std::span<const int>(idx));
    int slot = rank - 1;
    while (slot >= 0 && ++idx[slot] == dim) idx[slot--] = 0;
    if (slot < 0) break;
  }
}

template <class T>
T max_abs(const Tensor<T>& t) {
  T m = NumTraits<T>::zero();
  for (const T& v : t.data()) {
    T a = NumTraits<T>::abs(v);
    if (a > m) m = a;
  }
  return m;
}

template <class T>
bool is_zero_tensor(const Tensor<T>& t, double tol = kDefaultTol) {
  for (const T& v : t.data())
    if (!NumTraits<T>::is_zero(v, tol)) return false;
  return true;
}

// Entrywise equality under the session scalar equality (exact for rationals,
// |a-b| <= tol for floats). Shape mismatch is an error, not `false`.
template <class T>
bool tensor_equal(const Tensor<T>& a, const Tensor<T>& b,
                  double tol = kDefaultTol) {
  a.require_same_shape(b);
  auto da = a.data();
  auto db = b.data();
  for (std::size_t n = 0; n < da.size(); ++n)
    if (!NumTraits<T>::equal(da[n], db[n], tol)) return false;
  return true;
}

// Contracts slot_a with slot_b. A mixed (covariant, contravariant) pair is a
// plain trace; a covariant pair needs the inverse metric g^{ij} and performs
// the g-trace. A contravariant pair is not supported here.
template <class T>
Tensor<T> contract(const Tensor<T>& t, int slot_a, int slot_b,
                   const Tensor<T>* metric_inverse = nullptr) {
  const int rank = t.rank();
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= rank ||
      slot_b >= rank)
    throw std::invalid_argument("contract: invalid slot pair");
  const Variance va = t.valence()[slot_a];
  const Variance vb = t.valence()[slot_b];
  const bool both_co = va == Variance::Co && vb == Variance::Co;
  if (va == Variance::Contra && vb == Variance::Contra)
    throw std::invalid_argument("contract: contravariant pair not supported");
  if (both_co && metric_inverse == nullptr)
    throw std::invalid_argument(
        "contract: covariant pair requires the inverse metric");
  if (!both_co && metric_inverse != nullptr)
    throw std::invalid_argument(
        "contract: metric_inverse only applies to a covariant pair");
  if (both_co) {
    if (metric_inverse->dim() != t.dim() || metric_inverse->rank() != 2)
      throw std::invalid_argument("contract: inverse metric shape mismatch");
  }

  const int dim = t.dim();
  Valence out_valence;
  for (int s = 0; s < rank; ++s)
    if (s != slot_a && s != slot_b) out_valence.push_back(t.valence()[s]);
  Tensor<T> out(dim, out_valence);

  std::vector<int> full(rank, 0);
  for_each_index(dim, rank - 2, [&](std::span<const int> idx) {
    int n = 0;
    for (int s = 0; s < rank; ++s)
      if (s != slot_a && s != slot_b) full[s] = idx[n++];
    T acc = NumTraits<T>::zero();
    if (both_co) {
      for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) {
          full[slot_a] = p;
          full[slot_b] = q;
          acc += (*metric_inverse)(p, q) * t.at(full);
        }
    } else {
      for (int p = 0; p < dim; ++p) {
        full[slot_a] = p;
        full[slot_b] = p;
        acc += t.at(full);
      }
    }
    out.at(idx) = std::move(acc);
  });
  return out;
}

}  // namespace norden
