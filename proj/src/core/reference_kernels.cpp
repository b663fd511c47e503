// Copyright 2026 The Trio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trio/kernels/reference.hpp"

#include "accum.hpp"

namespace trio::kernels::reference {

using detail::Accum;

template <typename T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> c, std::int64_t rows,
            std::int64_t inner, std::int64_t cols) {
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      Accum<T> acc{};
      for (std::int64_t p = 0; p < inner; ++p) {
        acc += static_cast<Accum<T>>(a[i * inner + p]) * static_cast<Accum<T>>(b[p * cols + j]);
      }
      c[i * cols + j] = static_cast<T>(acc);
    }
  }
}

template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw ShapeError("matmul: incompatible shapes " + shape_str(a.shape()) + " x " +
                     shape_str(b.shape()));
  }
  Tensor<T> c({a.dim(0), b.dim(1)});
  matmul<T>(a.span(), b.span(), c.span(), a.dim(0), a.dim(1), b.dim(1));
  return c;
}

template <typename T>
Tensor<T> im2col(const Tensor<T>& image, const ConvGeometry& g) {
  Tensor<T> cols({g.num_patches(), g.patch_size()});
  std::int64_t row = 0;
  for (std::int64_t n = 0; n < g.batch; ++n) {
    for (std::int64_t oh = 0; oh < g.out_h; ++oh) {
      for (std::int64_t ow = 0; ow < g.out_w; ++ow, ++row) {
        std::int64_t col = 0;
        for (std::int64_t fh = 0; fh < g.filter_h; ++fh) {
          for (std::int64_t fw = 0; fw < g.filter_w; ++fw) {
            const auto ih = oh * g.stride + fh - g.pad_top;
            const auto iw = ow * g.stride + fw - g.pad_left;
            const bool inside = ih >= 0 && ih < g.in_h && iw >= 0 && iw < g.in_w;
            for (std::int64_t c = 0; c < g.channels; ++c, ++col) {
              cols[row * g.patch_size() + col] =
                  inside ? image[((n * g.in_h + ih) * g.in_w + iw) * g.channels + c] : T{};
            }
          }
        }
      }
    }
  }
  return cols;
}

template <typename T>
Tensor<T> conv2d_direct(const Tensor<T>& image, const Tensor<T>& filter, const ConvGeometry& g) {
  Tensor<T> out(g.output_shape());
  for (std::int64_t n = 0; n < g.batch; ++n) {
    for (std::int64_t oh = 0; oh < g.out_h; ++oh) {
      for (std::int64_t ow = 0; ow < g.out_w; ++ow) {
        for (std::int64_t k = 0; k < g.out_channels; ++k) {
          Accum<T> acc{};
          for (std::int64_t fh = 0; fh < g.filter_h; ++fh) {
            for (std::int64_t fw = 0; fw < g.filter_w; ++fw) {
              const auto ih = oh * g.stride + fh - g.pad_top;
              const auto iw = ow * g.stride + fw - g.pad_left;
              if (ih < 0 || ih >= g.in_h || iw < 0 || iw >= g.in_w) continue;
              for (std::int64_t c = 0; c < g.channels; ++c) {
                const auto x = image[((n * g.in_h + ih) * g.in_w + iw) * g.channels + c];
                const auto w = filter[((fh * g.filter_w + fw) * g.channels + c) * g.out_channels + k];
                acc += static_cast<Accum<T>>(x) * static_cast<Accum<T>>(w);
              }
            }
          }
          out[((n * g.out_h + oh) * g.out_w + ow) * g.out_channels + k] = static_cast<T>(acc);
        }
      }
    }
  }
  return out;
}

template <typename T>
Tensor<T> pool_windows(const Tensor<T>& image, const PoolGeometry& g) {
  Tensor<T> out({g.num_windows(), g.window_size()});
  std::int64_t row = 0;
  for (std::int64_t n = 0; n < g.batch; ++n) {
    for (std::int64_t oh = 0; oh < g.out_h; ++oh) {
      for (std::int64_t ow = 0; ow < g.out_w; ++ow) {
        for (std::int64_t c = 0; c < g.channels; ++c, ++row) {
          std::int64_t col = 0;
          for (std::int64_t wh = 0; wh < g.window; ++wh) {
            for (std::int64_t ww = 0; ww < g.window; ++ww, ++col) {
              const auto ih = oh * g.stride + wh;
              const auto iw = ow * g.stride + ww;
              out[row * g.window_size() + col] =
                  image[((n * g.in_h + ih) * g.in_w + iw) * g.channels + c];
            }
          }
        }
      }
    }
  }
  return out;
}

#define TRIO_INSTANTIATE(T)                                                                  \
  template void matmul<T>(std::span<const T>, std::span<const T>, std::span<T>, std::int64_t, \
                          std::int64_t, std::int64_t);                                        \
  template Tensor<T> matmul<T>(const Tensor<T>&, const Tensor<T>&);                           \
  template Tensor<T> im2col<T>(const Tensor<T>&, const ConvGeometry&);                        \
  template Tensor<T> conv2d_direct<T>(const Tensor<T>&, const Tensor<T>&, const ConvGeometry&); \
  template Tensor<T> pool_windows<T>(const Tensor<T>&, const PoolGeometry&);

TRIO_INSTANTIATE(float)
TRIO_INSTANTIATE(Ring)
#undef TRIO_INSTANTIATE

}  // namespace trio::kernels::reference
