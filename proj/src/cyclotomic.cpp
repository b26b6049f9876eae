#include "ramcm/cyclotomic.hpp"

#include <numeric>
#include <vector>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

constexpr int kOrder = 72;

// Reduces a coefficient vector of length < 2*kDegree in place, using
// x^24 = x^12 - 1.
void reduce_tail(std::vector<mpq_class>& v) {
  for (int n = static_cast<int>(v.size()) - 1; n >= CycloElement::kDegree; --n) {
    if (v[n] == 0) continue;
    v[n - 12] += v[n];
    v[n - 24] -= v[n];
    v[n] = 0;
  }
}

}  // namespace

CycloElement::CycloElement(const mpq_class& rational) { c_[0] = rational; }

CycloElement CycloElement::zeta(long long e) {
  long long r = ((e % kOrder) + kOrder) % kOrder;
  std::vector<mpq_class> v(kOrder);
  v[r] = 1;
  reduce_tail(v);
  CycloElement out;
  for (int i = 0; i < kDegree; ++i) out.c_[i] = v[i];
  return out;
}

bool CycloElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycloElement::is_rational() const {
  for (int i = 1; i < kDegree; ++i)
    if (c_[i] != 0) return false;
  return true;
}

CycloElement CycloElement::operator-() const {
  CycloElement r;
  for (int i = 0; i < kDegree; ++i) r.c_[i] = -c_[i];
  return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& rhs) {
  for (int i = 0; i < kDegree; ++i) c_[i] += rhs.c_[i];
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& rhs) {
  for (int i = 0; i < kDegree; ++i) c_[i] -= rhs.c_[i];
  return *this;
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  std::vector<mpq_class> v(2 * CycloElement::kDegree - 1);
  for (int i = 0; i < CycloElement::kDegree; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j < CycloElement::kDegree; ++j) {
      if (b.c_[j] == 0) continue;
      v[i + j] += a.c_[i] * b.c_[j];
    }
  }
  reduce_tail(v);
  CycloElement out;
  for (int i = 0; i < CycloElement::kDegree; ++i) out.c_[i] = v[i];
  return out;
}

bool operator==(const CycloElement& a, const CycloElement& b) { return a.c_ == b.c_; }

CycloElement CycloElement::galois(int a) const {
  if (std::gcd(a, kOrder) != 1)
    throw Error(ErrorKind::InvalidArgument, "galois: exponent must be a unit mod 72");
  std::vector<mpq_class> v(kOrder);
  for (int i = 0; i < kDegree; ++i) {
    if (c_[i] == 0) continue;
    long long e = (static_cast<long long>(a) * i % kOrder + kOrder) % kOrder;
    v[e] += c_[i];
  }
  reduce_tail(v);
  CycloElement out;
  for (int i = 0; i < kDegree; ++i) out.c_[i] = v[i];
  return out;
}

namespace {

// Product of the conjugates of x other than x itself.
CycloElement co_norm(const CycloElement& x) {
  CycloElement prod(mpq_class(1));
  for (int a = 2; a < kOrder; ++a) {
    if (std::gcd(a, kOrder) != 1) continue;
    prod *= x.galois(a);
  }
  return prod;
}

}  // namespace

mpq_class CycloElement::norm() const {
  CycloElement n = *this * co_norm(*this);
  return n.c_[0];
}

CycloElement CycloElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero in Q(zeta72)");
  if (is_rational()) return CycloElement(1 / c_[0]);
  CycloElement conj = co_norm(*this);
  CycloElement n = *this * conj;
  if (!n.is_rational()) throw Error(ErrorKind::MatrixContract, "norm is not rational");
  mpq_class inv = 1 / n.c_[0];
  for (auto& x : conj.c_) x *= inv;
  return conj;
}

ApComplex CycloElement::value(long prec) const {
  ApComplex sum(prec);
  for (int i = 0; i < kDegree; ++i) {
    if (c_[i] == 0) continue;
    sum += ApComplex::root_of_unity(i, kOrder, prec) * ApReal(c_[i], prec);
  }
  return sum;
}

std::string CycloElement::to_string() const {
  std::string s;
  for (int i = 0; i < kDegree; ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].get_str() + ")";
    if (i > 0) s += "*z^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

CycloMatrix6 CycloMatrix6::identity() {
  CycloMatrix6 m;
  for (int i = 0; i < kSize; ++i) m.at(i, i) = CycloElement(mpq_class(1));
  return m;
}

CycloMatrix6 operator*(const CycloMatrix6& a, const CycloMatrix6& b) {
  CycloMatrix6 r;
  for (int i = 0; i < CycloMatrix6::kSize; ++i) {
    for (int k = 0; k < CycloMatrix6::kSize; ++k) {
      const CycloElement& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < CycloMatrix6::kSize; ++j) {
        const CycloElement& y = b.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) += x * y;
      }
    }
  }
  return r;
}

bool operator==(const CycloMatrix6& a, const CycloMatrix6& b) { return a.m_ == b.m_; }

CycloMatrix6 CycloMatrix6::inverse() const {
  CycloMatrix6 left = *this;
  CycloMatrix6 right = identity();
  for (int col = 0; col < kSize; ++col) {
    int pivot = -1;
    for (int row = col; row < kSize; ++row) {
      if (!left.at(row, col).is_zero()) {
        pivot = row;
        break;
      }
    }
    if (pivot < 0) throw Error(ErrorKind::MatrixContract, "singular cyclotomic matrix");
    if (pivot != col) {
      for (int j = 0; j < kSize; ++j) {
        std::swap(left.at(pivot, j), left.at(col, j));
        std::swap(right.at(pivot, j), right.at(col, j));
      }
    }
    CycloElement inv = left.at(col, col).inverse();
    for (int j = 0; j < kSize; ++j) {
      if (!left.at(col, j).is_zero()) left.at(col, j) = left.at(col, j) * inv;
      if (!right.at(col, j).is_zero()) right.at(col, j) = right.at(col, j) * inv;
    }
    for (int row = 0; row < kSize; ++row) {
      if (row == col || left.at(row, col).is_zero()) continue;
      CycloElement factor = left.at(row, col);
      for (int j = 0; j < kSize; ++j) {
        if (!left.at(col, j).is_zero()) left.at(row, j) -= factor * left.at(col, j);
        if (!right.at(col, j).is_zero()) right.at(row, j) -= factor * right.at(col, j);
      }
    }
  }
  return right;
}

CycloMatrix6 CycloMatrix6::pow(long long e) const {
  CycloMatrix6 base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  CycloMatrix6 result = identity();
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

int CycloMatrix6::nonzero_in_row(int i) const {
  int count = 0;
  for (int j = 0; j < kSize; ++j)
    if (!at(i, j).is_zero()) ++count;
  return count;
}

bool CycloMatrix6::is_row_monomial() const {
  for (int i = 0; i < kSize; ++i)
    if (nonzero_in_row(i) != 1) return false;
  return true;
}

}  // namespace ramcm
