#ifndef TOWERLAB_FIELD_HPP
#define TOWERLAB_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace towerlab {

/// Raw encoding of an element of F_{p^k}: the integer sum c_i p^i of its
/// power-basis coordinates.  Prime-field elements encode as 0..p-1 in every
/// extension, so polynomials over F_p can be reinterpreted over F_{p^k}
/// without conversion.
using Residue = std::uint32_t;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
struct FieldData;
}

/// Handle to an immutable finite field F_{p^k}.  Copies share the same
/// tables; the handle is safe to read from several threads.
class Field {
 public:
  /// Largest field order accepted by make(); elements are 32-bit encoded.
  static constexpr std::uint64_t kMaxOrder = 1ull << 31;

  /// Builds F_{p^k} with the lexicographically smallest monic irreducible
  /// modulus (coefficient sequence compared from the constant term up).
  /// Rejects p = 2 and composite p.
  static Field make(std::uint32_t p, unsigned k = 1);

  std::uint32_t characteristic() const;
  unsigned degree() const;
  std::uint64_t order() const;
  bool is_prime_field() const { return degree() == 1; }
  /// Monic modulus, low degree first (length degree()+1).
  std::span<const Residue> modulus() const;
  /// The class of x in F_p[x]/(modulus); equals p for k > 1.
  Residue generator_of_basis() const;

  Residue zero() const { return 0; }
  Residue one() const { return 1; }
  Residue from_int(std::int64_t v) const;
  /// Smallest non-negative integer representative, for prime-field elements.
  bool in_prime_field(Residue a) const { return a < characteristic(); }

  Residue add(Residue a, Residue b) const;
  Residue sub(Residue a, Residue b) const;
  Residue neg(Residue a) const;
  Residue mul(Residue a, Residue b) const;
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue pow(Residue a, std::uint64_t e) const;
  Residue frobenius(Residue a) const;

  bool is_nth_power(Residue a, std::uint64_t n) const;
  /// A root y with y^n = a, minimal in lexicographic coordinate order.
  std::optional<Residue> nth_root(Residue a, std::uint64_t n) const;
  /// Membership in the subfield F_{p^j}: a^{p^j} == a.
  bool in_subfield(Residue a, unsigned j) const;
  /// Smallest j with a^{p^j} == a.
  unsigned definition_degree(Residue a) const;

  std::vector<Residue> coordinates(Residue a) const;
  Residue from_coordinates(std::span<const Residue> c) const;
  /// Lexicographic comparison of coordinate vectors (constant term first).
  bool lex_less(Residue a, Residue b) const;

  /// All q elements in encoding order.
  auto elements() const {
    return std::views::iota(Residue{0}, static_cast<Residue>(order()));
  }

  /// "3" for prime-field elements, "(c0,c1,...)" otherwise.
  std::string format(Residue a) const;

  bool operator==(const Field& o) const {
    return characteristic() == o.characteristic() && degree() == o.degree();
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// Value type pairing a Residue with its field.
class FieldElement {
 public:
  FieldElement(Field f, Residue v) : field_(std::move(f)), value_(v) {}
  static FieldElement from_int(const Field& f, std::int64_t v) {
    return {f, f.from_int(v)};
  }

  const Field& field() const { return field_; }
  Residue value() const { return value_; }
  std::vector<Residue> coeffs() const { return field_.coordinates(value_); }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_.add(value_, o.value_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_.sub(value_, o.value_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_.mul(value_, o.value_)}; }
  FieldElement operator/(const FieldElement& o) const { return {field_, field_.div(value_, o.value_)}; }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }
  bool operator==(const FieldElement& o) const { return value_ == o.value_ && field_ == o.field_; }

  std::string to_string() const { return field_.format(value_); }

 private:
  Field field_;
  Residue value_;
};

inline FieldElement frobenius(const FieldElement& x) {
  return {x.field(), x.field().frobenius(x.value())};
}
inline bool is_nth_power(const FieldElement& x, std::uint64_t n) {
  return x.field().is_nth_power(x.value(), n);
}
inline std::optional<FieldElement> nth_root(const FieldElement& x, std::uint64_t n) {
  auto r = x.field().nth_root(x.value(), n);
  if (!r) return std::nullopt;
  return FieldElement{x.field(), *r};
}

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace towerlab

#endif  // TOWERLAB_FIELD_HPP
