#pragma once

#include <array>
#include <cstdint>

#include "norden/linalg.hpp"
#include "norden/tensor.hpp"

namespace norden {

// splitmix64 (Steele/Lea/Flood). Fixed, documented generator so that seeded
// random suites are reproducible across platforms and across --jobs settings.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // value in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // per-sample generator, independent of processing order
  static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    mix.next();
    return mix;
  }

 private:
  std::uint64_t state_;
};

// Nonzero-denominator rational with small entries; float mode receives the
// same rational sample converted, so verdicts agree across modes.
template <class T>
T random_scalar(SplitMix64& rng, long max_num = 9, long max_den = 9) {
  long num = rng.range(-max_num, max_num);
  long den = rng.range(1, max_den);
  return NumTraits<T>::fraction(num, den);
}

template <class T>
std::array<T, 4> random_lambda(SplitMix64& rng, bool require_nonzero) {
  for (;;) {
    std::array<T, 4> l{random_scalar<T>(rng), random_scalar<T>(rng),
                       random_scalar<T>(rng), random_scalar<T>(rng)};
    if (!require_nonzero) return l;
    for (const T& v : l)
      if (!NumTraits<T>::is_zero(v, 0.0)) return l;
  }
}

// (0,3)-tensor skew in the first two slots, dense random entries.
template <class T>
Tensor<T> random_skew_tensor(SplitMix64& rng, int dim) {
  Tensor<T> t(dim, covariant(3));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        T v = random_scalar<T>(rng);
        t(i, j, k) = v;
        t(j, i, k) = -v;
      }
  return t;
}

// Totally skew (0,3)-tensor (a 3-form).
template <class T>
Tensor<T> random_three_form(SplitMix64& rng, int dim) {
  Tensor<T> t(dim, covariant(3));
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = b + 1; c < dim; ++c) {
        T v = random_scalar<T>(rng);
        t(a, b, c) = v;
        t(b, c, a) = v;
        t(c, a, b) = v;
        t(b, a, c) = -v;
        t(a, c, b) = -v;
        t(c, b, a) = -v;
      }
  return t;
}

// Random metric of signature (n,n): congruence P^T diag(1..1,-1..-1) P with P
// a product of unitriangular integer matrices, hence exactly invertible.
template <class T>
Tensor<T> random_metric_nn(SplitMix64& rng, int dim) {
  const int half = dim / 2;
  Matrix<T> p(dim, std::vector<T>(dim, NumTraits<T>::zero()));
  for (int i = 0; i < dim; ++i) p[i][i] = NumTraits<T>::one();
  Matrix<T> lower = p, upper = p;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) {
      lower[i][j] = NumTraits<T>::fraction(rng.range(-3, 3), 1);
      upper[j][i] = NumTraits<T>::fraction(rng.range(-3, 3), 1);
    }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      T acc = NumTraits<T>::zero();
      for (int k = 0; k < dim; ++k) acc += lower[i][k] * upper[k][j];
      p[i][j] = acc;
    }
  Tensor<T> g(dim, covariant(2));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      T acc = NumTraits<T>::zero();
      for (int k = 0; k < dim; ++k) {
        T dk = k < half ? NumTraits<T>::one() : -NumTraits<T>::one();
        acc += p[k][i] * dk * p[k][j];
      }
      g(i, j) = acc;
    }
  return g;
}

}  // namespace norden
