#pragma once

#include <string>
#include <vector>

#include "sym3b/errors.hpp"

namespace sym3b {

// Permutation of {0,..,n-1}, stored as the image list: image[i] is where i goes.
// Text form uses 1-based cycle notation: "()", "(1,2)", "(1,2,3)".
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int n);
  // 1-based cycle string, e.g. "(1,2)(3,4)"; n fixes the ground set size.
  static Permutation from_cycles(const std::string& text, int n);

  int size() const { return static_cast<int>(image_.size()); }
  int apply(int i) const { return image_[i]; }
  int operator()(int i) const { return image_[i]; }

  // (p * q)(i) = p(q(i)): apply q first.
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;

  bool operator==(const Permutation& other) const { return image_ == other.image_; }
  bool operator!=(const Permutation& other) const { return image_ != other.image_; }

  bool is_identity() const;
  bool is_transposition() const;
  int order() const;
  int sign() const;

  std::string to_cycles() const;  // 1-based, "()" for the identity
  const std::vector<int>& image() const { return image_; }

 private:
  std::vector<int> image_;
};

}  // namespace sym3b
