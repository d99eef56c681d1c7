#include "qcox/exact.hpp"

namespace qcox {

namespace {

int64_t checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(std::string(what) + ": coefficient overflow");
  return static_cast<int64_t>(v);
}

}  // namespace

Zr2 operator+(Zr2 x, Zr2 y) {
  return {checked(static_cast<__int128>(x.a) + y.a, "zr2 add"),
          checked(static_cast<__int128>(x.b) + y.b, "zr2 add")};
}

Zr2 operator-(Zr2 x, Zr2 y) {
  return {checked(static_cast<__int128>(x.a) - y.a, "zr2 sub"),
          checked(static_cast<__int128>(x.b) - y.b, "zr2 sub")};
}

Zr2 operator*(Zr2 x, Zr2 y) {
  // (a1 + b1 r)(a2 + b2 r) = a1 a2 + 2 b1 b2 + (a1 b2 + b1 a2) r,  r = sqrt(2)
  __int128 a = static_cast<__int128>(x.a) * y.a + 2 * static_cast<__int128>(x.b) * y.b;
  __int128 b = static_cast<__int128>(x.a) * y.b + static_cast<__int128>(x.b) * y.a;
  return {checked(a, "zr2 mul"), checked(b, "zr2 mul")};
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = zr2_int(1);
  return m;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.size() != y.size()) throw Error("matrix size mismatch");
  const int n = x.size();
  ExactMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Zr2 v = x.at(i, k);
      if (v == Zr2{}) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) = out.at(i, j) + v * y.at(k, j);
    }
  }
  return out;
}

bool ExactMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? zr2_int(1) : Zr2{})) return false;
  return true;
}

}  // namespace qcox
