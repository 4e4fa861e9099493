#pragma once

#include <cstddef>
#include <vector>

#include "dover/error.hpp"

namespace dover {

/// Dense (frames x rows x cols x channels) tensor, channels-last row-major,
/// double precision. The shared pixel container for videos, views and model
/// activations.
struct Tensor4 {
  int t = 0, h = 0, w = 0, c = 0;
  std::vector<double> data;

  Tensor4() = default;
  Tensor4(int t_, int h_, int w_, int c_)
      : t(t_), h(h_), w(w_), c(c_),
        data(static_cast<std::size_t>(t_) * h_ * w_ * c_, 0.0) {
    if (t_ < 1 || h_ < 1 || w_ < 1 || c_ < 1)
      throw InvalidArgument("Tensor4: all dimensions must be >= 1");
  }

  std::size_t size() const { return data.size(); }

  std::size_t index(int f, int y, int x, int ch) const {
    return ((static_cast<std::size_t>(f) * h + y) * w + x) * c + ch;
  }

  double& at(int f, int y, int x, int ch) { return data[index(f, y, x, ch)]; }
  double at(int f, int y, int x, int ch) const {
    return data[index(f, y, x, ch)];
  }

  bool same_shape(const Tensor4& o) const {
    return t == o.t && h == o.h && w == o.w && c == o.c;
  }
};

}  // namespace dover
