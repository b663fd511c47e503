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

#include "trio/kernels/parallel.hpp"

#include <algorithm>
#include <vector>

#include "accum.hpp"

namespace trio::kernels {

using detail::Accum;

namespace {

// Below this many inner-loop iterations the team start-up dominates.
constexpr std::int64_t kParallelGrain = 1 << 14;

}  // namespace

template <typename T>
void matmul(std::span<const T> a, std::span<const T> b, std::span<T> c, std::int64_t rows,
            std::int64_t inner, std::int64_t cols) {
  const bool go_parallel = rows > 1 && rows * inner * cols >= kParallelGrain;
#pragma omp parallel if (go_parallel)
  {
    std::vector<Accum<T>> acc(static_cast<std::size_t>(cols));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
      std::fill(acc.begin(), acc.end(), Accum<T>{});
      const T* arow = a.data() + i * inner;
      for (std::int64_t p = 0; p < inner; ++p) {
        const auto av = static_cast<Accum<T>>(arow[p]);
        const T* brow = b.data() + p * cols;
        for (std::int64_t j = 0; j < cols; ++j) acc[j] += av * static_cast<Accum<T>>(brow[j]);
      }
      T* crow = c.data() + i * cols;
      for (std::int64_t j = 0; j < cols; ++j) crow[j] = static_cast<T>(acc[j]);
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
  const auto patch = g.patch_size();
  const auto per_image = g.out_h * g.out_w;
#pragma omp parallel for schedule(static) if (g.num_patches() * patch >= kParallelGrain)
  for (std::int64_t row = 0; row < g.num_patches(); ++row) {
    const auto n = row / per_image;
    const auto oh = (row % per_image) / g.out_w;
    const auto ow = row % g.out_w;
    T* dst = cols.data().data() + row * patch;
    for (std::int64_t fh = 0; fh < g.filter_h; ++fh) {
      const auto ih = oh * g.stride + fh - g.pad_top;
      for (std::int64_t fw = 0; fw < g.filter_w; ++fw) {
        const auto iw = ow * g.stride + fw - g.pad_left;
        if (ih < 0 || ih >= g.in_h || iw < 0 || iw >= g.in_w) {
          std::fill(dst, dst + g.channels, T{});
        } else {
          const T* src = image.data().data() + ((n * g.in_h + ih) * g.in_w + iw) * g.channels;
          std::copy(src, src + g.channels, dst);
        }
        dst += g.channels;
      }
    }
  }
  return cols;
}

template <typename T>
Tensor<T> conv2d(const Tensor<T>& image, const Tensor<T>& filter, const ConvGeometry& g) {
  const auto cols = im2col(image, g);
  Tensor<T> out(g.output_shape());
  matmul<T>(cols.span(), filter.span(), out.span(), g.num_patches(), g.patch_size(),
            g.out_channels);
  return out;
}

template <typename T>
Tensor<T> pool_windows(const Tensor<T>& image, const PoolGeometry& g) {
  Tensor<T> out({g.num_windows(), g.window_size()});
  const auto wsize = g.window_size();
#pragma omp parallel for schedule(static) if (g.num_windows() * wsize >= kParallelGrain)
  for (std::int64_t row = 0; row < g.num_windows(); ++row) {
    const auto c = row % g.channels;
    const auto pix = row / g.channels;
    const auto ow = pix % g.out_w;
    const auto oh = (pix / g.out_w) % g.out_h;
    const auto n = pix / (g.out_w * g.out_h);
    T* dst = out.data().data() + row * wsize;
    for (std::int64_t wh = 0; wh < g.window; ++wh) {
      for (std::int64_t ww = 0; ww < g.window; ++ww) {
        const auto ih = oh * g.stride + wh;
        const auto iw = ow * g.stride + ww;
        *dst++ = image[((n * g.in_h + ih) * g.in_w + iw) * g.channels + c];
      }
    }
  }
  return out;
}

void add_inplace(std::span<Ring> dst, std::span<const Ring> src) {
  const auto n = static_cast<std::int64_t>(dst.size());
#pragma omp parallel for simd if (n >= kParallelGrain)
  for (std::int64_t i = 0; i < n; ++i) dst[i] += src[i];
}

void sub_inplace(std::span<Ring> dst, std::span<const Ring> src) {
  const auto n = static_cast<std::int64_t>(dst.size());
#pragma omp parallel for simd if (n >= kParallelGrain)
  for (std::int64_t i = 0; i < n; ++i) dst[i] -= src[i];
}

void mul_inplace(std::span<Ring> dst, std::span<const Ring> src) {
  const auto n = static_cast<std::int64_t>(dst.size());
#pragma omp parallel for simd if (n >= kParallelGrain)
  for (std::int64_t i = 0; i < n; ++i) dst[i] *= src[i];
}

RingTensor add(const RingTensor& a, const RingTensor& b) {
  if (a.size() != b.size()) throw ShapeError("add: size mismatch");
  RingTensor out = a;
  add_inplace(out.span(), b.span());
  return out;
}

RingTensor sub(const RingTensor& a, const RingTensor& b) {
  if (a.size() != b.size()) throw ShapeError("sub: size mismatch");
  RingTensor out = a;
  sub_inplace(out.span(), b.span());
  return out;
}

#define TRIO_INSTANTIATE(T)                                                                  \
  template void matmul<T>(std::span<const T>, std::span<const T>, std::span<T>, std::int64_t, \
                          std::int64_t, std::int64_t);                                        \
  template Tensor<T> matmul<T>(const Tensor<T>&, const Tensor<T>&);                           \
  template Tensor<T> im2col<T>(const Tensor<T>&, const ConvGeometry&);                        \
  template Tensor<T> conv2d<T>(const Tensor<T>&, const Tensor<T>&, const ConvGeometry&);      \
  template Tensor<T> pool_windows<T>(const Tensor<T>&, const PoolGeometry&);

TRIO_INSTANTIATE(float)
TRIO_INSTANTIATE(Ring)
#undef TRIO_INSTANTIATE

}  // namespace trio::kernels
