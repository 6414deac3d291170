#pragma once

#include <array>

#include "nkh/scalar.hpp"

namespace nkh {

/// Quaternion w + xi + yj + zk over Scalars.
struct Quaternion {
  Scalar w, x, y, z;

  Quaternion() = default;
  Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_)
      : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
  static Quaternion real(const Scalar& s) {
    Scalar zero = Scalar::zero_like(s);
    return {s, zero, zero, zero};
  }
  /// Basis unit: 0 -> 1, 1 -> i, 2 -> j, 3 -> k.
  static Quaternion unit(int index, const Scalar& like = Scalar(1));

  Quaternion conj() const { return {w, -x, -y, -z}; }
  Scalar norm2() const { return w * w + x * x + y * y + z * z; }
  bool is_zero() const { return w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero(); }

  Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion operator*(const Quaternion& o) const;
  Quaternion scaled(const Scalar& c) const { return {w * c, x * c, y * c, z * c}; }
  bool operator==(const Quaternion& o) const { return (*this - o).is_zero(); }
};

/// Octonion over Scalars, Cayley-Dickson double of the quaternions with
/// basis e0..e7, e4 = l, e5 = il, e6 = jl, e7 = kl.
struct Octonion {
  std::array<Scalar, 8> c;

  Octonion();
  static Octonion basis(int index, const Scalar& like = Scalar(1));
  static Octonion from_pair(const Quaternion& a, const Quaternion& b);
  Quaternion first() const { return {c[0], c[1], c[2], c[3]}; }
  Quaternion second() const { return {c[4], c[5], c[6], c[7]}; }

  Octonion conj() const;
  Scalar norm2() const;
  bool is_zero() const;
  Octonion operator+(const Octonion& o) const;
  Octonion operator-(const Octonion& o) const;
  Octonion operator-() const;
  Octonion scaled(const Scalar& s) const;
  bool operator==(const Octonion& o) const { return (*this - o).is_zero(); }
};

Octonion octonion_mul(const Octonion& p, const Octonion& q);

struct OctTableEntry {
  int index;  // e_i * e_j = sign * e_index
  int sign;
};

/// The fixed basis multiplication table (computed once from the
/// Cayley-Dickson product).
const std::array<std::array<OctTableEntry, 8>, 8>& octonion_table();

/// Seven-dimensional cross product on the imaginary octonions:
/// u x v = Im(uv) for u, v in span(e1..e7).
std::array<Scalar, 7> cross7(const std::array<Scalar, 7>& u, const std::array<Scalar, 7>& v);

Scalar dot7(const std::array<Scalar, 7>& u, const std::array<Scalar, 7>& v);

}  // namespace nkh
