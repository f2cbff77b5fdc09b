#include "dlab/measure.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "dlab/error.hpp"

namespace dlab {

namespace {

std::size_t word_count(std::size_t universe) { return (universe + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

// ---------------------------------------------------------------- MeasureSpace

MeasureSpace::MeasureSpace(std::vector<double> weights) {
  if (weights.empty()) throw Error(Errc::model, "measure space needs at least one atom");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0)
      throw Error(Errc::model, "atom masses must be positive and finite");
    total += w;
  }
  if (!std::isfinite(total)) throw Error(Errc::model, "total mass overflows");
  total_ = total;
  weights_ = std::make_shared<const std::vector<double>>(std::move(weights));
}

MeasureSpace MeasureSpace::uniform(std::size_t n) {
  if (n == 0) throw Error(Errc::model, "uniform space needs n >= 1");
  return MeasureSpace(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double MeasureSpace::weight(std::size_t i) const {
  if (i >= size()) throw Error(Errc::model, "atom index out of range");
  return (*weights_)[i];
}

bool MeasureSpace::operator==(const MeasureSpace& other) const noexcept {
  return weights_ == other.weights_ || *weights_ == *other.weights_;
}

void require_same_space(const MeasureSpace& a, const MeasureSpace& b) {
  if (!(a == b)) throw Error(Errc::space_mismatch, "operands live on different measure spaces");
}

void require_universe(const MeasureSpace& space, const AtomSet& set) {
  if (set.universe() != space.size())
    throw Error(Errc::model, "atom set universe does not match the space");
}

// --------------------------------------------------------------------- AtomSet

AtomSet::AtomSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

AtomSet AtomSet::full(std::size_t universe) {
  AtomSet s(universe);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (const std::size_t rem = universe % 64; rem != 0 && !s.words_.empty())
    s.words_.back() = (std::uint64_t{1} << rem) - 1;
  return s;
}

AtomSet AtomSet::of(std::size_t universe, std::initializer_list<std::size_t> atoms) {
  return of(universe, std::span<const std::size_t>(atoms.begin(), atoms.size()));
}

AtomSet AtomSet::of(std::size_t universe, std::span<const std::size_t> atoms) {
  AtomSet s(universe);
  for (std::size_t a : atoms) s.insert(a);
  return s;
}

AtomSet AtomSet::from_hex(std::size_t universe, std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) throw Error(Errc::spec, "empty bitmask");
  AtomSet s(universe);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const int v = hex_value(*it);
    if (v < 0) throw Error(Errc::spec, "bitmask contains a non-hex digit");
    for (int b = 0; b < 4; ++b) {
      if ((v >> b) & 1) {
        if (bit + b >= universe) throw Error(Errc::spec, "bitmask names an atom outside the space");
        s.insert(bit + b);
      }
    }
  }
  return s;
}

std::size_t AtomSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool AtomSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void AtomSet::check_index(std::size_t atom) const {
  if (atom >= universe_) throw Error(Errc::model, "atom index out of range");
}

void AtomSet::check_same_universe(const AtomSet& other) const {
  if (universe_ != other.universe_) throw Error(Errc::space_mismatch, "atom sets over different spaces");
}

bool AtomSet::contains(std::size_t atom) const {
  check_index(atom);
  return (words_[atom / 64] >> (atom % 64)) & 1;
}

void AtomSet::insert(std::size_t atom) {
  check_index(atom);
  words_[atom / 64] |= std::uint64_t{1} << (atom % 64);
}

void AtomSet::erase(std::size_t atom) {
  check_index(atom);
  words_[atom / 64] &= ~(std::uint64_t{1} << (atom % 64));
}

std::vector<std::size_t> AtomSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

AtomSet AtomSet::complement() const { return full(universe_) - *this; }

bool AtomSet::is_subset_of(const AtomSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

AtomSet AtomSet::operator|(const AtomSet& other) const {
  check_same_universe(other);
  AtomSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] |= other.words_[w];
  return r;
}

AtomSet AtomSet::operator&(const AtomSet& other) const {
  check_same_universe(other);
  AtomSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= other.words_[w];
  return r;
}

AtomSet AtomSet::operator-(const AtomSet& other) const {
  check_same_universe(other);
  AtomSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~other.words_[w];
  return r;
}

std::string AtomSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const std::size_t digits = std::max<std::size_t>(2, (universe_ + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t bit = d * 4;
    unsigned v = 0;
    if (bit < words_.size() * 64) v = static_cast<unsigned>((words_[bit / 64] >> (bit % 64)) & 0xF);
    out[digits - 1 - d] = kDigits[v];
  }
  return "0x" + out;
}

std::strong_ordering AtomSet::operator<=>(const AtomSet& other) const noexcept {
  if (auto c = universe_ <=> other.universe_; c != 0) return c;
  for (std::size_t w = words_.size(); w-- > 0;)
    if (auto c = words_[w] <=> other.words_[w]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ----------------------------------------------------------------------- L1Fun

L1Fun::L1Fun(MeasureSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw Error(Errc::model, "function length does not match the atom count");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(Errc::model, "function values must be finite");
}

L1Fun L1Fun::zero(const MeasureSpace& space) {
  return L1Fun(space, std::vector<double>(space.size(), 0.0));
}

L1Fun L1Fun::operator+(const L1Fun& other) const {
  require_same_space(space_, other.space_);
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
  return L1Fun(space_, std::move(v));
}

L1Fun L1Fun::operator-(const L1Fun& other) const {
  require_same_space(space_, other.space_);
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - other.values_[i];
  return L1Fun(space_, std::move(v));
}

L1Fun L1Fun::scaled(double alpha) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= alpha;
  return L1Fun(space_, std::move(v));
}

// ----------------------------------------------------------------- operations

double mass(const MeasureSpace& space, const AtomSet& set) {
  require_universe(space, set);
  double m = 0.0;
  set.for_each([&](std::size_t i) { m += space.weights()[i]; });
  return m;
}

double norm1(const L1Fun& f) {
  const auto w = f.space().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::abs(f[i]) * w[i];
  return s;
}

L1Fun normalized_indicator(const MeasureSpace& space, const AtomSet& set) {
  require_universe(space, set);
  if (set.empty()) throw Error(Errc::empty_set, "normalized indicator of the empty set");
  const double inv = 1.0 / mass(space, set);
  std::vector<double> v(space.size(), 0.0);
  set.for_each([&](std::size_t i) { v[i] = inv; });
  return L1Fun(space, std::move(v));
}

L1Fun mask(const L1Fun& f, const AtomSet& set) {
  require_universe(f.space(), set);
  std::vector<double> v(f.size(), 0.0);
  set.for_each([&](std::size_t i) { v[i] = f[i]; });
  return L1Fun(f.space(), std::move(v));
}

Refinement refine(const MeasureSpace& space, std::size_t k) {
  if (k == 0) throw Error(Errc::parameter, "refinement factor must be >= 1");
  const std::size_t n = space.size();
  std::vector<double> weights;
  std::vector<std::size_t> parent;
  weights.reserve(n * k);
  parent.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    const double child = space.weights()[i] / static_cast<double>(k);
    for (std::size_t c = 0; c < k; ++c) {
      weights.push_back(child);
      parent.push_back(i);
    }
  }
  if (k == 1) return Refinement{space, std::move(parent), 1};
  return Refinement{MeasureSpace(std::move(weights)), std::move(parent), k};
}

L1Fun Refinement::push_forward(const L1Fun& f) const {
  if (f.size() * factor != space.size()) throw Error(Errc::space_mismatch, "function is not on the parent space");
  std::vector<double> v(space.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = f[parent[c]];
  return L1Fun(space, std::move(v));
}

AtomSet Refinement::push_forward(const AtomSet& set) const {
  if (set.universe() * factor != space.size()) throw Error(Errc::space_mismatch, "set is not on the parent space");
  AtomSet out(space.size());
  for (std::size_t c = 0; c < space.size(); ++c)
    if (set.contains(parent[c])) out.insert(c);
  return out;
}

}  // namespace dlab
