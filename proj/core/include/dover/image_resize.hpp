#pragma once

#include "dover/tensor.hpp"

namespace dover {

/// Resizes every frame of src to (out_h, out_w) with separable Catmull-Rom
/// bicubic interpolation (a = -0.5), clamp-to-edge borders. Axes whose
/// downscale ratio exceeds 2 get a fractional box (area-average) prefilter
/// down to twice the target size first, which anti-aliases heavy
/// downsampling while keeping linear signals exact away from borders.
/// Output values are clamped to [0,1]. Identity sizes return the input
/// bit-exactly.
Tensor4 resize_bicubic(const Tensor4& src, int out_h, int out_w);

/// Separable bilinear resize, clamp-to-edge. Used for pre-upscaling frames
/// that are too small to fragment.
Tensor4 resize_bilinear(const Tensor4& src, int out_h, int out_w);

}  // namespace dover
