#include "nkh/quatoct.hpp"

namespace nkh {

Quaternion Quaternion::unit(int index, const Scalar& like) {
  Scalar zero = Scalar::zero_like(like);
  Scalar one = Scalar::one_like(like);
  Quaternion q{zero, zero, zero, zero};
  switch (index) {
    case 0: q.w = one; break;
    case 1: q.x = one; break;
    case 2: q.y = one; break;
    case 3: q.z = one; break;
    default: fail(Errc::InvalidParams, "quaternion unit index");
  }
  return q;
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z,
          w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x,
          w * o.z + x * o.y - y * o.x + z * o.w};
}

Octonion::Octonion() { c.fill(Scalar(0)); }

Octonion Octonion::basis(int index, const Scalar& like) {
  if (index < 0 || index > 7) fail(Errc::InvalidParams, "octonion basis index");
  Octonion o;
  for (auto& x : o.c) x = Scalar::zero_like(like);
  o.c[static_cast<size_t>(index)] = Scalar::one_like(like);
  return o;
}

Octonion Octonion::from_pair(const Quaternion& a, const Quaternion& b) {
  Octonion o;
  o.c = {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z};
  return o;
}

Octonion Octonion::conj() const {
  Octonion o = *this;
  for (size_t i = 1; i < 8; ++i) o.c[i] = -o.c[i];
  return o;
}

Scalar Octonion::norm2() const {
  Scalar s = Scalar::zero_like(c[0]);
  for (const auto& x : c) s += x * x;
  return s;
}

bool Octonion::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

Octonion Octonion::operator+(const Octonion& o) const {
  Octonion r = *this;
  for (size_t i = 0; i < 8; ++i) r.c[i] += o.c[i];
  return r;
}

Octonion Octonion::operator-(const Octonion& o) const {
  Octonion r = *this;
  for (size_t i = 0; i < 8; ++i) r.c[i] -= o.c[i];
  return r;
}

Octonion Octonion::operator-() const {
  Octonion r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Octonion Octonion::scaled(const Scalar& s) const {
  Octonion r = *this;
  for (auto& x : r.c) x = x * s;
  return r;
}

Octonion octonion_mul(const Octonion& p, const Octonion& q) {
  // Cayley-Dickson: (a, b)(c, d) = (ac - d* b, d a + b c*)
  Quaternion a = p.first(), b = p.second();
  Quaternion c = q.first(), d = q.second();
  Quaternion first = a * c - d.conj() * b;
  Quaternion second = d * a + b * c.conj();
  return Octonion::from_pair(first, second);
}

const std::array<std::array<OctTableEntry, 8>, 8>& octonion_table() {
  static const auto table = [] {
    std::array<std::array<OctTableEntry, 8>, 8> t{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        Octonion r = octonion_mul(Octonion::basis(i), Octonion::basis(j));
        int idx = -1, sign = 0;
        for (int k = 0; k < 8; ++k) {
          if (r.c[static_cast<size_t>(k)].is_zero()) continue;
          idx = k;
          sign = r.c[static_cast<size_t>(k)].sign();
        }
        t[static_cast<size_t>(i)][static_cast<size_t>(j)] = {idx, sign};
      }
    return t;
  }();
  return table;
}

std::array<Scalar, 7> cross7(const std::array<Scalar, 7>& u, const std::array<Scalar, 7>& v) {
  Octonion a, b;
  a.c[0] = Scalar::zero_like(u[0]);
  b.c[0] = Scalar::zero_like(u[0]);
  for (size_t i = 0; i < 7; ++i) {
    a.c[i + 1] = u[i];
    b.c[i + 1] = v[i];
  }
  Octonion p = octonion_mul(a, b);
  std::array<Scalar, 7> out;
  for (size_t i = 0; i < 7; ++i) out[i] = p.c[i + 1];
  return out;
}

Scalar dot7(const std::array<Scalar, 7>& u, const std::array<Scalar, 7>& v) {
  Scalar s = Scalar::zero_like(u[0]);
  for (size_t i = 0; i < 7; ++i) s += u[i] * v[i];
  return s;
}

}  // namespace nkh
