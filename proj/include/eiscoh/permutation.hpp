#pragma once

// Permutations of {1,...,n} in one-line notation. The matrix convention is
// the one used throughout: the permutation matrix of w has entry 1 at
// position (w(j), j), and composition is (w*u)(i) = w(u(i)).

#include "eiscoh/rational.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

namespace eiscoh {

class Permutation {
public:
  Permutation() = default;

  // images[j-1] = w(j), 1-based values.
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    validate();
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(img_.size()); }

  // w(j), 1-based.
  int operator()(int j) const { return img_[static_cast<size_t>(j - 1)]; }

  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const {
    std::vector<int> inv(img_.size());
    for (int j = 1; j <= size(); ++j) inv[static_cast<size_t>((*this)(j) - 1)] = j;
    return Permutation(std::move(inv));
  }

  // (w*u)(i) = w(u(i))
  friend Permutation operator*(const Permutation& w, const Permutation& u) {
    if (w.size() != u.size()) throw Error("Permutation: size mismatch in composition");
    std::vector<int> v(w.img_.size());
    for (int i = 1; i <= w.size(); ++i) v[static_cast<size_t>(i - 1)] = w(u(i));
    return Permutation(std::move(v));
  }

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  int length() const {
    int n = size(), l = 0;
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if ((*this)(i) > (*this)(j)) ++l;
    return l;
  }

  // Pairs (i,j), i<j, with w(i) > w(j); these label the basis of n_w.
  std::vector<std::pair<int, int>> inversion_set() const {
    std::vector<std::pair<int, int>> inv;
    int n = size();
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if ((*this)(i) > (*this)(j)) inv.emplace_back(i, j);
    return inv;
  }

  int sign() const { return length() % 2 == 0 ? 1 : -1; }

  // Matrix with entry 1 at (w(j), j).
  std::vector<std::vector<int>> matrix() const {
    int n = size();
    std::vector<std::vector<int>> m(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int j = 1; j <= n; ++j) m[static_cast<size_t>((*this)(j) - 1)][static_cast<size_t>(j - 1)] = 1;
    return m;
  }

  static Permutation from_matrix(const std::vector<std::vector<int>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<int> v(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 1) v[static_cast<size_t>(j)] = i + 1;
    return Permutation(std::move(v));
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < img_.size(); ++i) os << (i ? "," : "") << img_[i];
    os << "]";
    return os.str();
  }

private:
  void validate() const {
    int n = size();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : img_) {
      if (v < 1 || v > n || seen[static_cast<size_t>(v - 1)])
        throw Error("Permutation: images are not a bijection of {1,...,n}");
      seen[static_cast<size_t>(v - 1)] = 1;
    }
  }

  std::vector<int> img_;
};

// Calls fn(w) for every w in S_n, in lexicographic one-line order.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace eiscoh
