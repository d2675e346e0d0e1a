#ifndef QPERT_SCALED_HPP_
#define QPERT_SCALED_HPP_

#include <complex>
#include <stdexcept>
#include <string>

namespace qpert {

using cplx = std::complex<double>;

//! Length-unit exponent, stored as an integer number of half-units so that
//! half-density weights (n/2) stay exact.
class Weight {
 public:
  constexpr Weight() : halves_(0) {}
  static constexpr Weight integer(int n) { return Weight(2 * n); }
  static constexpr Weight halves(int h) { return Weight(h); }

  constexpr int numerator_halves() const { return halves_; }
  constexpr bool is_integer() const { return halves_ % 2 == 0; }
  constexpr double as_double() const { return 0.5 * halves_; }

  friend constexpr Weight operator+(Weight a, Weight b) { return Weight(a.halves_ + b.halves_); }
  friend constexpr Weight operator-(Weight a, Weight b) { return Weight(a.halves_ - b.halves_); }
  constexpr Weight operator-() const { return Weight(-halves_); }
  friend constexpr bool operator==(Weight a, Weight b) { return a.halves_ == b.halves_; }
  friend constexpr bool operator!=(Weight a, Weight b) { return a.halves_ != b.halves_; }

  std::string str() const {
    if (is_integer()) return std::to_string(halves_ / 2);
    return std::to_string(halves_) + "/2";
  }

 private:
  explicit constexpr Weight(int h) : halves_(h) {}
  int halves_;
};

//! A numeric value tagged with its L-weight. Products add weights; sums
//! require equal weights. All unit checking flows through this type.
struct ScaledQuantity {
  cplx value{0.0, 0.0};
  Weight weight{};

  ScaledQuantity() = default;
  ScaledQuantity(cplx v, Weight w) : value(v), weight(w) {}
  ScaledQuantity(double v, Weight w) : value(v, 0.0), weight(w) {}

  friend ScaledQuantity operator*(const ScaledQuantity& a, const ScaledQuantity& b) {
    return {a.value * b.value, a.weight + b.weight};
  }
  friend ScaledQuantity operator/(const ScaledQuantity& a, const ScaledQuantity& b) {
    return {a.value / b.value, a.weight - b.weight};
  }
  friend ScaledQuantity operator*(cplx s, const ScaledQuantity& a) {
    return {s * a.value, a.weight};
  }
  friend ScaledQuantity operator+(const ScaledQuantity& a, const ScaledQuantity& b) {
    if (a.weight != b.weight)
      throw std::runtime_error("scaled: weight mismatch in sum (" + a.weight.str() + " vs " +
                               b.weight.str() + ")");
    return {a.value + b.value, a.weight};
  }
  friend ScaledQuantity operator-(const ScaledQuantity& a, const ScaledQuantity& b) {
    if (a.weight != b.weight)
      throw std::runtime_error("scaled: weight mismatch in difference (" + a.weight.str() +
                               " vs " + b.weight.str() + ")");
    return {a.value - b.value, a.weight};
  }
};

}  // namespace qpert

#endif  // QPERT_SCALED_HPP_
