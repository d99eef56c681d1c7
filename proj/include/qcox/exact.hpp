#pragma once

#include <cstdint>
#include <vector>

#include "qcox/errors.hpp"

namespace qcox {

// Element of Z[sqrt(2)], value a + b*sqrt(2).  All arithmetic is exact;
// intermediate products run through 128-bit accumulators and throw on
// overflow of the 64-bit coefficients.
struct Zr2 {
  int64_t a = 0;
  int64_t b = 0;

  friend Zr2 operator+(Zr2 x, Zr2 y);
  friend Zr2 operator-(Zr2 x, Zr2 y);
  friend Zr2 operator*(Zr2 x, Zr2 y);
  Zr2 operator-() const { return {-a, -b}; }
  bool operator==(const Zr2&) const = default;
};

inline Zr2 zr2_int(int64_t v) { return {v, 0}; }
inline Zr2 zr2_sqrt2() { return {0, 1}; }

// Dense square matrix over Z[sqrt(2)].
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}
  static ExactMatrix identity(int n);

  int size() const { return n_; }
  Zr2& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const Zr2& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
  bool operator==(const ExactMatrix&) const = default;
  bool is_identity() const;

 private:
  int n_ = 0;
  std::vector<Zr2> e_;
};

}  // namespace qcox
