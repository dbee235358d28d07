#pragma once

#include <array>
#include <utility>

#include "norden/levi_civita.hpp"

namespace norden {

// Lowered torsion of a connection: the (0,3)-tensor of
// D'_x y - D'_y x - [x,y] paired with the metric, skew in its first two slots.
template <class T>
Tensor<T> torsion_of(const Manifold<T>& m, const Connection<T>& conn) {
  const int n = m.dim();
  const auto& gamma = conn.gamma;
  const auto& c = m.structure();
  const auto& g = m.g();
  Tensor<T> t(n, covariant(3));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p)
          acc += (gamma(i, j, p) - gamma(j, i, p) - c(i, j, p)) * g(p, k);
        t(i, j, k) = acc;
      }
  return t;
}

template <class T>
bool is_skew_first_two(const Tensor<T>& t, double tol = kDefaultTol) {
  const int n = t.dim();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (!NumTraits<T>::is_zero(t(x, y, z) + t(y, x, z), tol)) return false;
  return true;
}

template <class T>
bool is_three_form(const Tensor<T>& t, double tol = kDefaultTol) {
  const int n = t.dim();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (!NumTraits<T>::is_zero(t(x, y, z) + t(y, x, z), tol) ||
            !NumTraits<T>::is_zero(t(x, y, z) + t(x, z, y), tol))
          return false;
  return true;
}

namespace detail {

// Evaluates a (0,3)-tensor on frame arguments, each optionally J-twisted.
template <class T>
class TwistedEval {
 public:
  TwistedEval(const Tensor<T>& t, const Tensor<T>& j) : t_(t), j_(j) {}

  T operator()(int a, bool ja, int b, bool jb, int c, bool jc) const {
    const int n = t_.dim();
    T acc = NumTraits<T>::zero();
    for (int p = 0; p < n; ++p) {
      T wa = weight(p, a, ja);
      if (NumTraits<T>::is_zero(wa, 0.0)) continue;
      for (int q = 0; q < n; ++q) {
        T wb = weight(q, b, jb);
        if (NumTraits<T>::is_zero(wb, 0.0)) continue;
        for (int r = 0; r < n; ++r) {
          T wc = weight(r, c, jc);
          if (NumTraits<T>::is_zero(wc, 0.0)) continue;
          acc += wa * wb * wc * t_(p, q, r);
        }
      }
    }
    return acc;
  }

 private:
  T weight(int p, int a, bool twisted) const {
    if (twisted) return j_(p, a);
    return p == a ? NumTraits<T>::one() : NumTraits<T>::zero();
  }
  const Tensor<T>& t_;
  const Tensor<T>& j_;
};

}  // namespace detail

template <class T>
struct TorsionProjections {
  Tensor<T> p1, p2, p3, p4;
};

// The four projections of the torsion space, evaluated verbatim from their
// display formulas (including the 4/8 denominators). Their sum reproduces the
// input.
template <class T>
TorsionProjections<T> project_torsion(const Manifold<T>& m,
                                      const Tensor<T>& t) {
  if (t.dim() != m.dim() || t.rank() != 3)
    throw std::invalid_argument("project_torsion: expected a (0,3)-tensor");
  if (!is_skew_first_two(t, m.tol()))
    throw std::invalid_argument(
        "project_torsion: input not skew in its first two slots");
  const int n = m.dim();
  detail::TwistedEval<T> tv(t, m.j());
  const T quarter = NumTraits<T>::fraction(1, 4);
  const T eighth = NumTraits<T>::fraction(1, 8);
  TorsionProjections<T> out{Tensor<T>(n, covariant(3)),
                            Tensor<T>(n, covariant(3)),
                            Tensor<T>(n, covariant(3)),
                            Tensor<T>(n, covariant(3))};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const T txyz = t(x, y, z);
        const T t_jxjy_z = tv(x, true, y, true, z, false);
        const T t_jx_y_jz = tv(x, true, y, false, z, true);
        const T t_x_jy_jz = tv(x, false, y, true, z, true);
        out.p1(x, y, z) = quarter * (txyz - t_jxjy_z - t_jx_y_jz - t_x_jy_jz);
        out.p2(x, y, z) = quarter * (txyz - t_jxjy_z + t_jx_y_jz + t_x_jy_jz);
        const T t_yzx = t(y, z, x);
        const T t_zxy = t(z, x, y);
        const T t_jy_z_jx = tv(y, true, z, false, x, true);
        const T t_z_jx_jy = tv(z, false, x, true, y, true);
        const T t_jy_jz_x = tv(y, true, z, true, x, false);
        const T t_jz_jx_y = tv(z, true, x, true, y, false);
        const T t_y_jz_jx = tv(y, false, z, true, x, true);
        const T t_jz_x_jy = tv(z, true, x, false, y, true);
        out.p3(x, y, z) =
            eighth * (NumTraits<T>::fraction(2, 1) * txyz - t_yzx - t_zxy -
                      t_jy_z_jx - t_z_jx_jy +
                      NumTraits<T>::fraction(2, 1) * t_jxjy_z - t_jy_jz_x -
                      t_jz_jx_y + t_y_jz_jx + t_jz_x_jy);
        out.p4(x, y, z) =
            eighth * (NumTraits<T>::fraction(2, 1) * txyz + t_yzx + t_zxy +
                      t_jy_z_jx + t_z_jx_jy +
                      NumTraits<T>::fraction(2, 1) * t_jxjy_z + t_jy_jz_x +
                      t_jz_jx_y - t_y_jz_jx - t_jz_x_jy);
      }
  return out;
}

// Reconstruction of the transform tensor from a metric connection's torsion:
// Q(x,y,z) = (T(x,y,z) - T(y,z,x) + T(z,x,y)) / 2.
template <class T>
Tensor<T> hayden_transform(const Tensor<T>& t, double tol = kDefaultTol) {
  if (t.rank() != 3)
    throw std::invalid_argument("hayden_transform: expected a (0,3)-tensor");
  if (!is_skew_first_two(t, tol))
    throw std::invalid_argument(
        "hayden_transform: input not skew in its first two slots");
  const int n = t.dim();
  const T half = NumTraits<T>::fraction(1, 2);
  Tensor<T> q(n, covariant(3));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        q(x, y, z) = half * (t(x, y, z) - t(y, z, x) + t(z, x, y));
  return q;
}

template <class T>
struct NaturalityResiduals {
  T j_residual;  // max-norm of the covariant derivative of J
  T g_residual;  // max-norm of the covariant derivative of g
};

// Residuals of the two defining conditions of a natural connection. The
// metric part is accumulated from the transform tensor Q = conn - Levi-Civita.
template <class T>
NaturalityResiduals<T> naturality_residuals(const Manifold<T>& m,
                                            const Connection<T>& conn) {
  const int n = m.dim();
  NaturalityResiduals<T> out{max_abs(nabla_j(m, conn)), NumTraits<T>::zero()};
  Connection<T> lc = levi_civita(m);
  const auto& g = m.g();
  Tensor<T> q(n, covariant(3));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        T acc = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p)
          acc += (conn.gamma(i, j, p) - lc.gamma(i, j, p)) * g(p, k);
        q(i, j, k) = acc;
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T nabla_g = -q(x, y, z) - q(x, z, y);
        T mag = NumTraits<T>::abs(nabla_g);
        if (mag > out.g_residual) out.g_residual = mag;
      }
  return out;
}

template <class T>
struct NaturalTransformResiduals {
  T f_compat;       // F(x,y,z) - Q(x,y,Jz) + Q(x,Jy,z)
  T metric_compat;  // Q(x,y,z) + Q(x,z,y)
};

// The two algebraic conditions a transform tensor Q must satisfy for the
// transformed connection to be natural; both vanish iff it is.
template <class T>
NaturalTransformResiduals<T> natural_transform_residuals(const Manifold<T>& m,
                                                         const Tensor<T>& q) {
  const int n = m.dim();
  Tensor<T> f = fundamental_tensor(m, levi_civita(m)).f;
  const auto& j = m.j();
  NaturalTransformResiduals<T> out{NumTraits<T>::zero(),
                                   NumTraits<T>::zero()};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        T q_x_y_jz = NumTraits<T>::zero();
        T q_x_jy_z = NumTraits<T>::zero();
        for (int p = 0; p < n; ++p) {
          q_x_y_jz += j(p, z) * q(x, y, p);
          q_x_jy_z += j(p, y) * q(x, p, z);
        }
        T r1 = NumTraits<T>::abs(f(x, y, z) - q_x_y_jz + q_x_jy_z);
        if (r1 > out.f_compat) out.f_compat = r1;
        T r2 = NumTraits<T>::abs(q(x, y, z) + q(x, z, y));
        if (r2 > out.metric_compat) out.metric_compat = r2;
      }
  return out;
}

}  // namespace norden
