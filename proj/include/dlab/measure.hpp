#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dlab {

/// Absolute tolerance for floating comparisons of computed norms.
inline constexpr double kTol = 1e-9;
/// Tolerance for identities that are exact up to rounding.
inline constexpr double kTightTol = 1e-12;

/// Finite-atom measure space: atom i carries mass w_i, with 0 < w_i < inf.
///
/// Weights are shared between copies, so passing a space by value is cheap.
class MeasureSpace {
public:
  explicit MeasureSpace(std::vector<double> weights);

  /// n atoms of mass 1/n each.
  static MeasureSpace uniform(std::size_t n);

  std::size_t size() const noexcept { return weights_->size(); }
  double weight(std::size_t i) const;
  std::span<const double> weights() const noexcept { return *weights_; }
  double total_mass() const noexcept { return total_; }

  bool operator==(const MeasureSpace& other) const noexcept;

private:
  std::shared_ptr<const std::vector<double>> weights_;
  double total_ = 0.0;
};

/// Subset of the atoms {0, ..., n-1} of a space with n atoms.
///
/// Ordering compares sets as binary numbers with atom i contributing 2^i, so
/// {0} < {1} < {0,1} < {2}. This is the order used for witness tie-breaking.
class AtomSet {
public:
  AtomSet() = default;
  explicit AtomSet(std::size_t universe);

  static AtomSet full(std::size_t universe);
  static AtomSet of(std::size_t universe, std::initializer_list<std::size_t> atoms);
  static AtomSet of(std::size_t universe, std::span<const std::size_t> atoms);
  /// Parses "0x0F"-style masks (bit i = atom i). Bits at or above `universe` are an error.
  static AtomSet from_hex(std::size_t universe, std::string_view hex);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool contains(std::size_t atom) const;

  void insert(std::size_t atom);
  void erase(std::size_t atom);

  std::vector<std::size_t> indices() const;
  AtomSet complement() const;
  bool is_subset_of(const AtomSet& other) const;

  AtomSet operator|(const AtomSet& other) const;
  AtomSet operator&(const AtomSet& other) const;
  AtomSet operator-(const AtomSet& other) const;

  /// Upper-case hex, zero padded to max(2, ceil(n/4)) digits, "0x" prefix.
  std::string to_hex() const;

  bool operator==(const AtomSet& other) const noexcept = default;
  std::strong_ordering operator<=>(const AtomSet& other) const noexcept;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

private:
  void check_index(std::size_t atom) const;
  void check_same_universe(const AtomSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple function on a finite-atom space: value f_i on atom i.
class L1Fun {
public:
  L1Fun(MeasureSpace space, std::vector<double> values);

  static L1Fun zero(const MeasureSpace& space);

  const MeasureSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  L1Fun operator+(const L1Fun& other) const;
  L1Fun operator-(const L1Fun& other) const;
  L1Fun scaled(double alpha) const;

private:
  MeasureSpace space_;
  std::vector<double> values_;
};

/// Child-to-parent map produced by refine(). Children of atom i are i*k ... i*k+k-1.
struct Refinement {
  MeasureSpace space;
  std::vector<std::size_t> parent;
  std::size_t factor = 1;

  /// Each child inherits the parent's value.
  L1Fun push_forward(const L1Fun& f) const;
  /// Children of each atom in `set`.
  AtomSet push_forward(const AtomSet& set) const;
};

void require_same_space(const MeasureSpace& a, const MeasureSpace& b);
void require_universe(const MeasureSpace& space, const AtomSet& set);

/// mu(B).
double mass(const MeasureSpace& space, const AtomSet& set);
/// sum_i |f_i| w_i.
double norm1(const L1Fun& f);
/// chi_B / mu(B). Throws Errc::empty_set for B = {}.
L1Fun normalized_indicator(const MeasureSpace& space, const AtomSet& set);
/// chi_B * f.
L1Fun mask(const L1Fun& f, const AtomSet& set);
/// Splits every atom into k equal-mass children.
Refinement refine(const MeasureSpace& space, std::size_t k);

}  // namespace dlab
