#include "sym3b/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sym3b {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= size() || seen[v])
      throw PreconditionViolated("not a permutation image list");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(const std::string& text, int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw PreconditionViolated("bad cycle notation: " + text);
    ++pos;
    std::vector<int> cycle;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      size_t next = pos;
      int value = std::stoi(text.substr(pos), &next);
      pos += next;
      if (value < 1 || value > n)
        throw PreconditionViolated("cycle entry out of range: " + text);
      cycle.push_back(value - 1);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip_ws();
      }
    }
    if (pos >= text.size()) throw PreconditionViolated("unterminated cycle: " + text);
    ++pos;  // ')'
    for (size_t i = 0; i < cycle.size(); ++i)
      img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (size() != other.size()) throw DimensionMismatch("permutation sizes differ");
  std::vector<int> img(image_.size());
  for (int i = 0; i < size(); ++i) img[i] = image_[other.image_[i]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(image_.size());
  for (int i = 0; i < size(); ++i) img[image_[i]] = i;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

bool Permutation::is_transposition() const {
  int moved = 0;
  for (int i = 0; i < size(); ++i)
    if (image_[i] != i) ++moved;
  return moved == 2;
}

int Permutation::order() const {
  Permutation p = *this;
  int k = 1;
  while (!p.is_identity()) {
    p = p * *this;
    ++k;
  }
  return k;
}

int Permutation::sign() const {
  std::vector<bool> seen(image_.size(), false);
  int s = 1;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = image_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(image_.size(), false);
  bool any = false;
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || image_[i] == i) {
      seen[i] = true;
      continue;
    }
    any = true;
    out << '(';
    bool first = true;
    for (int j = i; !seen[j]; j = image_[j]) {
      seen[j] = true;
      if (!first) out << ',';
      out << (j + 1);
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace sym3b
