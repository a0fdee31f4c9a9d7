#ifndef GIBBSLINE_LATTICE_HPP
#define GIBBSLINE_LATTICE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbsline {

using Symbol = int;

/// Ordered finite symbol set. Labels are user-facing; all kernels work on
/// indices 0..size-1.
struct Alphabet {
  std::vector<std::string> labels;

  Alphabet() : labels{"+1", "-1"} {}
  explicit Alphabet(std::vector<std::string> labs) : labels(std::move(labs)) {
    if (labels.size() < 2) throw std::invalid_argument("alphabet needs at least 2 symbols");
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw std::invalid_argument("duplicate alphabet label: " + labels[i]);
  }

  int size() const { return static_cast<int>(labels.size()); }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown symbol label: " + label);
  }
};

/// Finite sequence of alphabet indices. Length 0 is the empty-cylinder
/// sentinel.
using Word = std::vector<Symbol>;

struct CylinderSpec {
  Word word;
  long offset = 0;  // lattice position of the word's first symbol
};

/// Big-endian base-|A| state index of a length-r word.
inline long word_index(const Word& w, int r, int alphabet_size) {
  if (static_cast<int>(w.size()) != r)
    throw std::invalid_argument("word_index: word length " + std::to_string(w.size()) +
                                " does not match r = " + std::to_string(r));
  long idx = 0;
  for (Symbol s : w) {
    if (s < 0 || s >= alphabet_size) throw std::invalid_argument("word_index: symbol out of range");
    idx = idx * alphabet_size + s;
  }
  return idx;
}

inline long pow_long(int base, int exp) {
  long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

/// Inverse of word_index.
inline Word index_word(long i, int r, int alphabet_size) {
  long dim = pow_long(alphabet_size, r);
  if (i < 0 || i >= dim)
    throw std::invalid_argument("index_word: index " + std::to_string(i) + " out of range [0, " +
                                std::to_string(dim) + ")");
  Word w(r);
  for (int j = r - 1; j >= 0; --j) {
    w[j] = static_cast<Symbol>(i % alphabet_size);
    i /= alphabet_size;
  }
  return w;
}

/// True iff the length-(r-1) suffix of a equals the length-(r-1) prefix of b.
/// For r = 1 the overlap is empty, hence always true.
inline bool overlap_compatible(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("overlap_compatible: unequal lengths " +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  if (a.empty()) throw std::invalid_argument("overlap_compatible: empty words");
  for (std::size_t j = 1; j < a.size(); ++j)
    if (a[j] != b[j - 1]) return false;
  return true;
}

/// Lazy range over all |A|^p period windows. Each yielded word stands for the
/// periodic point obtained by repeating it.
class PeriodicPointRange {
 public:
  PeriodicPointRange(int p, const Alphabet& alphabet, int p_max = 22)
      : p_(p), asize_(alphabet.size()) {
    if (p < 1) throw std::invalid_argument("period must be >= 1");
    if (p > p_max)
      throw std::invalid_argument("period " + std::to_string(p) + " exceeds p_max = " +
                                  std::to_string(p_max));
    count_ = pow_long(asize_, p_);
  }

  class iterator {
   public:
    iterator(long i, int p, int asize) : i_(i), p_(p), asize_(asize) {}
    Word operator*() const { return index_word(i_, p_, asize_); }
    iterator& operator++() { ++i_; return *this; }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }
   private:
    long i_;
    int p_, asize_;
  };

  iterator begin() const { return iterator(0, p_, asize_); }
  iterator end() const { return iterator(count_, p_, asize_); }
  long size() const { return count_; }

 private:
  int p_, asize_;
  long count_;
};

inline PeriodicPointRange enumerate_periodic_points(int p, const Alphabet& alphabet,
                                                    int p_max = 22) {
  return PeriodicPointRange(p, alphabet, p_max);
}

/// Applies f to every word of the given length, reusing one buffer.
template <class F>
void for_each_word(int length, int alphabet_size, F&& f) {
  Word w(length, 0);
  long total = pow_long(alphabet_size, length);
  for (long i = 0; i < total; ++i) {
    long x = i;
    for (int j = length - 1; j >= 0; --j) {
      w[j] = static_cast<Symbol>(x % alphabet_size);
      x /= alphabet_size;
    }
    f(static_cast<const Word&>(w));
  }
}

inline std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol c : w) s += static_cast<char>('0' + c);
  return s;
}

}  // namespace gibbsline

#endif  // GIBBSLINE_LATTICE_HPP
