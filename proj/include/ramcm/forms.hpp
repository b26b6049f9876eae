#pragma once

// Binary quadratic forms of negative discriminant -D and the N-systems used
// by the eta-quotient families.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace ramcm {

/// Form a x^2 + b xy + c y^2 with b^2 - 4ac = -D.
struct QuadraticForm {
  long long a = 0;
  long long b = 0;
  long long c = 0;

  /// b^2 - 4ac (a negative number for definite forms).
  mpz_class discriminant() const;
  std::string to_string() const;

  auto operator<=>(const QuadraticForm&) const = default;
};

/// Positive D with D = 3 mod 4; -D is the CM discriminant.
class Discriminant {
 public:
  explicit Discriminant(long long D);

  long long value() const { return D_; }
  /// D = 3 mod 8, needed for prime group orders.
  bool prime_order_ok() const { return D_ % 8 == 3; }
  /// D squarefree and D = 11 mod 24.
  bool ramanujan_ok() const;

 private:
  long long D_;
};

bool is_squarefree(long long n);

/// Throws InvalidDiscriminant unless D > 0 and D = 3 mod 4.
void require_discriminant(long long D);

/// All primitive reduced forms, sorted by (a, b); principal form first.
std::vector<QuadraticForm> reduced_forms(long long D);
long class_number(long long D);
QuadraticForm principal_form(long long D);

/// Reduced representative of a positive definite form.
QuadraticForm reduce(QuadraticForm f);

/// Kronecker symbol (a / n), n != 0.
int kronecker(const mpz_class& a, const mpz_class& n);

struct FormSystem {
  std::vector<QuadraticForm> forms;
  long long N = 1;
  long long B0 = 1;
};

/// One representative per class with gcd(A, N) = 1 and B = B0 mod 2N, where
/// B0 is the smallest positive odd solution of B0^2 = -D mod 4N. The i-th
/// entry is equivalent to reduced_forms(D)[i].
FormSystem n_system(long long D, long long N);

}  // namespace ramcm
